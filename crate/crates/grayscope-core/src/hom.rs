//! Hom-categories: for objects `a`, `b` of a truncated omega-category `C`,
//! the omega-category `Hom(a,b)` whose k-cells are the (k+1)-cells of `C`
//! with 0-source `a` and 0-target `b`. Kept alongside bidirectional maps to
//! the ambient category, so enriched constructions can move cells back and
//! forth without renaming.

use crate::error::{Error, Result};
use crate::omega::{self, CellRef, OmegaCat};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct HomCat {
    pub cat: Arc<OmegaCat>,
    pub ambient: Arc<OmegaCat>,
    pub a: CellRef,
    pub b: CellRef,
    /// Stored hom cell `(dim, index)` -> ambient cell of dimension `dim + 1`.
    /// For hom 0-cells the ambient ref may be the identity pad `id(a)`.
    to_ambient: Vec<Vec<CellRef>>,
    from_ambient: BTreeMap<CellRef, (usize, usize)>,
}

impl HomCat {
    /// Ambient cell underlying a hom cell (pads shift up by one).
    pub fn to_c(&self, h: &CellRef) -> CellRef {
        let base = self.to_ambient[h.base_dim()][h.index];
        base.padded(h.pad)
    }

    /// Hom cell representing an ambient cell with 0-boundary `(a, b)`.
    pub fn from_c(&self, r: &CellRef) -> CellRef {
        assert!(r.dim >= 1, "objects have no hom counterpart");
        let key = if r.base_dim() == 0 {
            // id^n(a) is id^(n-1) of the hom 0-cell id(a).
            CellRef {
                dim: 1,
                index: r.index,
                pad: 1,
            }
        } else {
            r.base()
        };
        let (d, i) = self.from_ambient[&key];
        CellRef {
            dim: r.dim - 1,
            index: i,
            pad: r.dim - 1 - d,
        }
    }
}

/// Build `Hom(a,b)`, truncated one below the ambient truncation.
pub fn hom_cat(c: &Arc<OmegaCat>, a: CellRef, b: CellRef) -> Result<HomCat> {
    if !c.is_object(&a) || !c.is_object(&b) {
        return Err(Error::NotAnObject(format!(
            "hom boundary {} or {}",
            c.name(&a),
            c.name(&b)
        )));
    }
    let truncation = c.truncation.saturating_sub(1);
    // Hom 0-cells: every 1-cell a -> b, identities included.
    let mut layers: Vec<Vec<CellRef>> = vec![c
        .all_cells(1)
        .into_iter()
        .filter(|f| c.src(f) == a && c.tgt(f) == b)
        .collect()];
    for k in 1..=truncation {
        layers.push(
            c.stored(k + 1)
                .into_iter()
                .filter(|x| c.s_i(0, x) == a && c.t_i(0, x) == b)
                .collect(),
        );
    }
    while layers.last().is_some_and(|l| l.is_empty()) && layers.len() > 1 {
        layers.pop();
    }
    let mut from_ambient = BTreeMap::new();
    let mut cells = Vec::new();
    for (d, layer) in layers.iter().enumerate() {
        cells.push(layer.iter().map(|r| c.name(r)).collect::<Vec<String>>());
        for (i, r) in layer.iter().enumerate() {
            from_ambient.insert(*r, (d, i));
        }
    }
    let hom_of = |r: &CellRef| -> CellRef {
        let key = if r.base_dim() == 0 {
            CellRef {
                dim: 1,
                index: r.index,
                pad: 1,
            }
        } else {
            r.base()
        };
        let (d, i) = from_ambient[&key];
        CellRef {
            dim: r.dim - 1,
            index: i,
            pad: r.dim - 1 - d,
        }
    };
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for (d, layer) in layers.iter().enumerate().skip(1) {
        for (i, r) in layer.iter().enumerate() {
            src.insert((d, i), hom_of(&c.src(r)));
            tgt.insert((d, i), hom_of(&c.tgt(r)));
        }
    }
    let mut comp = BTreeMap::new();
    for i in 0..truncation {
        for (dx, lx) in layers.iter().enumerate().skip(i + 1) {
            for (dy, ly) in layers.iter().enumerate().skip(i + 1) {
                for x in lx {
                    for y in ly {
                        if !c.composable(i + 1, x, y) {
                            continue;
                        }
                        let z = c.comp(i + 1, x, y)?;
                        comp.insert(
                            (
                                i,
                                CellRef::stored(dx, from_ambient[&key_of(x)].1),
                                CellRef::stored(dy, from_ambient[&key_of(y)].1),
                            ),
                            hom_of(&z),
                        );
                    }
                }
            }
        }
    }
    let cat = omega::from_tables(truncation, cells, src, tgt, comp)?;
    Ok(HomCat {
        cat: Arc::new(cat),
        ambient: c.clone(),
        a,
        b,
        to_ambient: layers,
        from_ambient,
    })
}

fn key_of(r: &CellRef) -> CellRef {
    if r.base_dim() == 0 {
        CellRef {
            dim: 1,
            index: r.index,
            pad: 1,
        }
    } else {
        r.base()
    }
}

/// Post-whisker a hom cell by a 1-cell `g: b -> b'` of the ambient category:
/// `Hom(a,b) -> Hom(a,b')`, computed by the ambient `*_0`.
pub fn whisker_post(hom_ab: &HomCat, hom_ab2: &HomCat, g: &CellRef, h: &CellRef) -> Result<CellRef> {
    let c = &hom_ab.ambient;
    let amb = hom_ab.to_c(h);
    let z = c.comp(0, g, &amb)?;
    Ok(hom_ab2.from_c(&z))
}

/// Pre-whisker a hom cell by a 1-cell `e: a' -> a`: `Hom(a,b) -> Hom(a',b)`.
pub fn whisker_pre(hom_ab: &HomCat, hom_a2b: &HomCat, e: &CellRef, h: &CellRef) -> Result<CellRef> {
    let c = &hom_ab.ambient;
    let amb = hom_ab.to_c(h);
    let z = c.comp(0, &amb, e)?;
    Ok(hom_a2b.from_c(&z))
}
