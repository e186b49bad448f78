//! Binary products and fiber products of truncated omega-categories,
//! with projections and the universal factorization.

use crate::error::{Error, Result};
use crate::omega::{self, CellRef, OmegaCat, OmegaFunctor};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A product or fiber product together with its cone.
#[derive(Clone, Debug)]
pub struct Span {
    pub cat: Arc<OmegaCat>,
    pub p1: OmegaFunctor,
    pub p2: OmegaFunctor,
    /// Stored cell `(dim, index)` -> component pair at that dimension.
    pairs: Vec<Vec<(CellRef, CellRef)>>,
    pair_index: BTreeMap<(CellRef, CellRef), (usize, usize)>,
}

impl Span {
    /// The product cell with the given components (each viewed at the common
    /// effective dimension); strips the shared pad down to a stored pair.
    pub fn pair(&self, x: &CellRef, y: &CellRef) -> CellRef {
        assert_eq!(x.dim, y.dim);
        let m = x.pad.min(y.pad);
        let key = (
            CellRef {
                dim: x.dim - m,
                index: x.index,
                pad: x.pad - m,
            },
            CellRef {
                dim: y.dim - m,
                index: y.index,
                pad: y.pad - m,
            },
        );
        let (d, i) = self.pair_index[&key];
        CellRef {
            dim: x.dim,
            index: i,
            pad: x.dim - d,
        }
    }

    pub fn components(&self, r: &CellRef) -> (CellRef, CellRef) {
        let (x, y) = self.pairs[r.base_dim()][r.index];
        (x.padded(r.pad), y.padded(r.pad))
    }

    /// Universal factorization: the unique functor `T -> P` with
    /// `p1 . h = u` and `p2 . h = v`.
    pub fn factorize(&self, u: &OmegaFunctor, v: &OmegaFunctor) -> Result<OmegaFunctor> {
        if *u.source != *v.source {
            return Err(Error::MismatchedCospan(
                "factorization legs have different sources".into(),
            ));
        }
        let src = u.source.clone();
        let map = (0..src.cells.len())
            .map(|d| {
                src.stored(d)
                    .iter()
                    .map(|x| self.pair(&u.apply(x), &v.apply(x)))
                    .collect()
            })
            .collect();
        let h = OmegaFunctor::from_map(&src, &self.cat, map);
        h.validate()?;
        Ok(h)
    }
}

fn build_span<F>(
    a: &Arc<OmegaCat>,
    b: &Arc<OmegaCat>,
    truncation: usize,
    keep: F,
) -> Result<Span>
where
    F: Fn(&CellRef, &CellRef) -> bool,
{
    let top = a.max_stored_dim().max(b.max_stored_dim()).min(truncation);
    let mut pairs: Vec<Vec<(CellRef, CellRef)>> = Vec::new();
    let mut pair_index = BTreeMap::new();
    let mut cells: Vec<Vec<String>> = Vec::new();
    for d in 0..=top {
        let mut layer = Vec::new();
        for x in a.all_cells(d) {
            for y in b.all_cells(d) {
                if (x.is_pad() && y.is_pad()) || !keep(&x, &y) {
                    continue;
                }
                pair_index.insert((x, y), (d, layer.len()));
                layer.push((x, y));
            }
        }
        cells.push(
            layer
                .iter()
                .map(|(x, y)| format!("({},{})", a.name(x), b.name(y)))
                .collect(),
        );
        pairs.push(layer);
    }
    while pairs.last().is_some_and(|l| l.is_empty()) && pairs.len() > 1 {
        pairs.pop();
        cells.pop();
    }
    let pref = |x: &CellRef, y: &CellRef| -> CellRef {
        let m = x.pad.min(y.pad);
        let key = (
            CellRef {
                dim: x.dim - m,
                index: x.index,
                pad: x.pad - m,
            },
            CellRef {
                dim: y.dim - m,
                index: y.index,
                pad: y.pad - m,
            },
        );
        let (d, i) = pair_index[&key];
        CellRef {
            dim: x.dim,
            index: i,
            pad: x.dim - d,
        }
    };
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for (d, layer) in pairs.iter().enumerate().skip(1) {
        for (i, (x, y)) in layer.iter().enumerate() {
            src.insert((d, i), pref(&a.src(x), &b.src(y)));
            tgt.insert((d, i), pref(&a.tgt(x), &b.tgt(y)));
        }
    }
    let mut comp = BTreeMap::new();
    for i in 0..truncation {
        for (d1, l1) in pairs.iter().enumerate().skip(i + 1) {
            for (d2, l2) in pairs.iter().enumerate().skip(i + 1) {
                for (i1, (x1, y1)) in l1.iter().enumerate() {
                    for (i2, (x2, y2)) in l2.iter().enumerate() {
                        if !a.composable(i, x1, x2) || !b.composable(i, y1, y2) {
                            continue;
                        }
                        let zx = a.comp(i, x1, x2)?;
                        let zy = b.comp(i, y1, y2)?;
                        comp.insert(
                            (i, CellRef::stored(d1, i1), CellRef::stored(d2, i2)),
                            pref(&zx, &zy),
                        );
                    }
                }
            }
        }
    }
    let cat = Arc::new(omega::from_tables(truncation, cells, src, tgt, comp)?);
    let p1 = OmegaFunctor::from_map(
        &cat,
        a,
        pairs.iter().map(|l| l.iter().map(|(x, _)| *x).collect()).collect(),
    );
    let p2 = OmegaFunctor::from_map(
        &cat,
        b,
        pairs.iter().map(|l| l.iter().map(|(_, y)| *y).collect()).collect(),
    );
    p1.validate()?;
    p2.validate()?;
    Ok(Span {
        cat,
        p1,
        p2,
        pairs,
        pair_index,
    })
}

/// Binary product with projections.
pub fn product(a: &Arc<OmegaCat>, b: &Arc<OmegaCat>) -> Result<Span> {
    build_span(a, b, a.truncation.max(b.truncation), |_, _| true)
}

/// The full subcategory of the product spanned by the pairs satisfying
/// `keep`, truncated at the given dimension. The predicate must be closed
/// under faces, units and composition.
pub fn filtered_product<F>(
    a: &Arc<OmegaCat>,
    b: &Arc<OmegaCat>,
    truncation: usize,
    keep: F,
) -> Result<Span>
where
    F: Fn(&CellRef, &CellRef) -> bool,
{
    build_span(a, b, truncation, keep)
}

/// Fiber product of `f: A -> C` and `g: B -> C`: pairs agreeing in `C`.
pub fn fiber_product(f: &OmegaFunctor, g: &OmegaFunctor) -> Result<Span> {
    if *f.target != *g.target {
        return Err(Error::MismatchedCospan(
            "fiber product cospan targets differ".into(),
        ));
    }
    let truncation = f.source.truncation.max(g.source.truncation);
    build_span(&f.source, &g.source, truncation, |x, y| {
        f.apply(x) == g.apply(y)
    })
}
