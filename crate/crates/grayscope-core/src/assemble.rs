//! Reassembling an omega-category from enriched data: a set of objects, a
//! hom omega-category for every ordered pair, designated unit 0-cells, and a
//! level-0 composition across homs. Cells of the total category at dimension
//! d are hom cells at dimension d-1; all higher compositions restrict to a
//! single hom.
//!
//! Used for the enriched cylinder reconstruction, the comma oracle, and the
//! Grothendieck comparison.

use crate::error::{Error, Result};
use crate::omega::{self, CellRef, OmegaCat};
use std::collections::BTreeMap;
use std::sync::Arc;

pub struct HomSpec {
    pub truncation: usize,
    pub objects: Vec<String>,
    /// `(i, j)` maps to the hom from object i to object j; absent means empty.
    pub homs: BTreeMap<(usize, usize), Arc<OmegaCat>>,
    /// The 0-cell of `homs[(i,i)]` playing the identity of object i.
    pub units: BTreeMap<usize, CellRef>,
}

/// `(i, j, k, x, y) -> x *_0 y` for x a stored cell of hom(j,k) and y a
/// stored cell of hom(i,j); must be total and return a cell of hom(i,k).
pub type Comp0<'a> = &'a dyn Fn(usize, usize, usize, &CellRef, &CellRef) -> Result<CellRef>;

pub struct Assembly {
    pub cat: Arc<OmegaCat>,
    pub spec: HomSpec,
    /// stored total cell (dim >= 1) -> (object pair, stored hom cell)
    to_hom: Vec<Vec<((usize, usize), CellRef)>>,
    from_hom: BTreeMap<(usize, usize, CellRef), CellRef>,
}

impl Assembly {
    pub fn object(&self, i: usize) -> CellRef {
        CellRef::stored(0, i)
    }

    /// Total cell corresponding to a hom cell (dimension shifts up by one);
    /// iterated identities of the designated units become identity pads of
    /// the object.
    pub fn total_of(&self, i: usize, j: usize, h: &CellRef) -> CellRef {
        let base = h.base();
        if base.dim == 0 && i == j && base == self.spec.units[&i] {
            return CellRef {
                dim: h.dim + 1,
                index: i,
                pad: h.dim + 1,
            };
        }
        self.from_hom[&(i, j, base)].padded(h.pad)
    }

    /// Hom cell underlying a total cell of dimension >= 1.
    pub fn hom_of(&self, r: &CellRef) -> (usize, usize, CellRef) {
        assert!(r.dim >= 1);
        if r.base_dim() == 0 {
            let i = r.index;
            return (i, i, self.spec.units[&i].padded(r.dim - 1));
        }
        let ((i, j), h) = self.to_hom[r.base_dim() - 1][r.index];
        (i, j, h.padded(r.pad))
    }
}

pub fn assemble(spec: HomSpec, comp0: Comp0) -> Result<Assembly> {
    let n = spec.truncation;
    for (&(i, j), h) in &spec.homs {
        if i >= spec.objects.len() || j >= spec.objects.len() {
            return Err(Error::DanglingReference(format!("hom pair ({i},{j})")));
        }
        if h.truncation + 1 > n {
            return Err(Error::TruncationOverflow(format!(
                "hom ({i},{j}) truncated at {}",
                h.truncation
            )));
        }
    }
    for i in 0..spec.objects.len() {
        let u = spec
            .units
            .get(&i)
            .ok_or_else(|| Error::MalformedSpec(format!("object {i} has no unit")))?;
        let h = spec
            .homs
            .get(&(i, i))
            .ok_or_else(|| Error::DanglingReference(format!("endo hom of object {i}")))?;
        if !h.contains(u) || u.dim != 0 {
            return Err(Error::DanglingReference(format!("unit of object {i}")));
        }
    }
    // Stored total cells: hom cells one dimension down, units excluded.
    let mut to_hom: Vec<Vec<((usize, usize), CellRef)>> = Vec::new();
    let mut from_hom = BTreeMap::new();
    let mut cells: Vec<Vec<String>> = vec![spec.objects.clone()];
    for d in 1..=n {
        let mut layer = Vec::new();
        let mut names = Vec::new();
        for (&(i, j), h) in &spec.homs {
            for hc in h.stored(d - 1) {
                if d == 1 && i == j && hc == spec.units[&i] {
                    continue;
                }
                from_hom.insert((i, j, hc), CellRef::stored(d, layer.len()));
                names.push(format!(
                    "{}->{}:{}",
                    spec.objects[i],
                    spec.objects[j],
                    h.name(&hc)
                ));
                layer.push(((i, j), hc));
            }
        }
        to_hom.push(layer);
        cells.push(names);
    }
    while cells.last().is_some_and(|l| l.is_empty()) && cells.len() > 1 {
        cells.pop();
        to_hom.pop();
    }
    let total_of = |i: usize, j: usize, h: &CellRef| -> CellRef {
        let base = h.base();
        if base.dim == 0 && i == j && base == spec.units[&i] {
            return CellRef {
                dim: h.dim + 1,
                index: i,
                pad: h.dim + 1,
            };
        }
        from_hom[&(i, j, base)].padded(h.pad)
    };
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for (d0, layer) in to_hom.iter().enumerate() {
        let d = d0 + 1;
        for (idx, ((i, j), hc)) in layer.iter().enumerate() {
            if d == 1 {
                src.insert((d, idx), CellRef::stored(0, *i));
                tgt.insert((d, idx), CellRef::stored(0, *j));
            } else {
                let h = &spec.homs[&(*i, *j)];
                src.insert((d, idx), total_of(*i, *j, &h.src(hc)));
                tgt.insert((d, idx), total_of(*i, *j, &h.tgt(hc)));
            }
        }
    }
    let mut comp = BTreeMap::new();
    // level 0: across homs, total on stored pairs by construction
    for (dx0, lx) in to_hom.iter().enumerate() {
        for (dy0, ly) in to_hom.iter().enumerate() {
            for (ix, ((j1, k1), hx)) in lx.iter().enumerate() {
                for (iy, ((i2, j2), hy)) in ly.iter().enumerate() {
                    if j2 != j1 {
                        continue;
                    }
                    let z = comp0(*i2, *j1, *k1, hx, hy)?;
                    comp.insert(
                        (
                            0,
                            CellRef::stored(dx0 + 1, ix),
                            CellRef::stored(dy0 + 1, iy),
                        ),
                        total_of(*i2, *k1, &z).at_dim((dx0 + 1).max(dy0 + 1)),
                    );
                }
            }
        }
    }
    // level >= 1: inside a single hom
    for l in 1..n {
        for (dx0, lx) in to_hom.iter().enumerate().skip(l) {
            for (dy0, ly) in to_hom.iter().enumerate().skip(l) {
                for (ix, (px, hx)) in lx.iter().enumerate() {
                    for (iy, (py, hy)) in ly.iter().enumerate() {
                        if px != py {
                            continue;
                        }
                        let h = &spec.homs[px];
                        if !h.composable(l - 1, hx, hy) {
                            continue;
                        }
                        let z = h.comp(l - 1, hx, hy)?;
                        comp.insert(
                            (
                                l,
                                CellRef::stored(dx0 + 1, ix),
                                CellRef::stored(dy0 + 1, iy),
                            ),
                            total_of(px.0, px.1, &z),
                        );
                    }
                }
            }
        }
    }
    let cat = Arc::new(omega::from_tables(n, cells, src, tgt, comp)?);
    Ok(Assembly {
        cat,
        spec,
        to_hom,
        from_hom,
    })
}
