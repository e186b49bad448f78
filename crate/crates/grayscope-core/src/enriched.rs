//! Independent reconstruction of Cyl C from its enriched description:
//! objects are the 1-cells of C, the hom from f to f' is the iterated fiber
//! product of Hom(c,c'), Cyl Hom(c,d') and Hom(d,d') over the two matching
//! equations, and level-0 composition is the enriched formula
//! `(u' *_0 u, (v' l-whisker alpha) conc (alpha' r-whisker u), v' *_0 v)`.
//!
//! Cells and compositions here come from fiber products and the one-hom-
//! deeper cylinder, never from the top-level tuple tables, so agreement with
//! the tuple construction is a genuine cross-check.

use crate::assemble::{self, Assembly, HomSpec};
use crate::cyl::{self, CylCat, CylTuple};
use crate::error::{Error, Result};
use crate::hom::{self, HomCat};
use crate::limits::{self, Span};
use crate::omega::{is_isomorphic, CellRef, OmegaCat, OmegaFunctor};
use std::collections::BTreeMap;
use std::sync::Arc;

struct PairCtx {
    h1: Arc<HomCat>,
    h3: Arc<HomCat>,
    hmid: Arc<HomCat>,
    cylmid: Arc<CylCat>,
    span1: Span,
    span2: Span,
}

impl PairCtx {
    /// Decode a hom cell into its ambient triple (u, tuple, v).
    fn decode(&self, r: &CellRef) -> (CellRef, CylTuple, CellRef) {
        let (p, v) = self.span2.components(r);
        let (u, a) = self.span1.components(&p);
        let t = self.cylmid.tuple_of(&a);
        let amb = |z: &CellRef| self.hmid.to_c(z);
        (
            self.h1.to_c(&u),
            CylTuple {
                x: amb(&t.x),
                y: amb(&t.y),
                minus: t.minus.iter().map(&amb).collect(),
                plus: t.plus.iter().map(&amb).collect(),
                top: amb(&t.top),
            },
            self.h3.to_c(&v),
        )
    }

    /// Encode an ambient triple back into a hom cell.
    fn encode(&self, u: &CellRef, t: &CylTuple, v: &CellRef) -> CellRef {
        let hm = |z: &CellRef| self.hmid.from_c(z);
        let ht = CylTuple {
            x: hm(&t.x),
            y: hm(&t.y),
            minus: t.minus.iter().map(&hm).collect(),
            plus: t.plus.iter().map(&hm).collect(),
            top: hm(&t.top),
        };
        let a = self.cylmid.tuple_ref(&ht);
        let p = self.span1.pair(&self.h1.from_c(u), &a);
        self.span2.pair(&p, &self.h3.from_c(v))
    }
}

/// Build Cyl C through the enriched description.
pub fn enriched_cyl(c: &Arc<OmegaCat>) -> Result<Assembly> {
    let objs = c.all_cells(1);
    let ends: Vec<(CellRef, CellRef)> = objs.iter().map(|f| (c.src(f), c.tgt(f))).collect();
    let mut hom_cache: BTreeMap<(CellRef, CellRef), Arc<HomCat>> = BTreeMap::new();
    let mut cyl_cache: BTreeMap<(CellRef, CellRef), Arc<CylCat>> = BTreeMap::new();
    let mut get_hom = |a: CellRef, b: CellRef| -> Result<Arc<HomCat>> {
        if let Some(h) = hom_cache.get(&(a, b)) {
            return Ok(h.clone());
        }
        let h = Arc::new(hom::hom_cat(c, a, b)?);
        hom_cache.insert((a, b), h.clone());
        Ok(h)
    };
    let mut ctxs: BTreeMap<(usize, usize), PairCtx> = BTreeMap::new();
    for (i, f) in objs.iter().enumerate() {
        for (j, fp) in objs.iter().enumerate() {
            let (ci, di) = ends[i];
            let (cj, dj) = ends[j];
            let h1 = get_hom(ci, cj)?;
            let h3 = get_hom(di, dj)?;
            let hmid = get_hom(ci, dj)?;
            let cylmid = if let Some(cc) = cyl_cache.get(&(ci, dj)) {
                cc.clone()
            } else {
                let cc = Arc::new(cyl::cyl(&hmid.cat)?);
                cyl_cache.insert((ci, dj), cc.clone());
                cc
            };
            // u -> f' *_0 u
            let post = OmegaFunctor::from_map(
                &h1.cat,
                &hmid.cat,
                (0..h1.cat.cells.len())
                    .map(|d| {
                        h1.cat
                            .stored(d)
                            .iter()
                            .map(|u| Ok(hmid.from_c(&c.comp(0, fp, &h1.to_c(u))?)))
                            .collect::<Result<_>>()
                    })
                    .collect::<Result<_>>()?,
            );
            post.validate()?;
            // v -> v *_0 f
            let pre = OmegaFunctor::from_map(
                &h3.cat,
                &hmid.cat,
                (0..h3.cat.cells.len())
                    .map(|d| {
                        h3.cat
                            .stored(d)
                            .iter()
                            .map(|v| Ok(hmid.from_c(&c.comp(0, &h3.to_c(v), f)?)))
                            .collect::<Result<_>>()
                    })
                    .collect::<Result<_>>()?,
            );
            pre.validate()?;
            let span1 = limits::fiber_product(&post, &cylmid.src_f)?;
            let tilde_t = OmegaFunctor::compose(&cylmid.tgt_f, &span1.p2);
            let span2 = limits::fiber_product(&tilde_t, &pre)?;
            ctxs.insert(
                (i, j),
                PairCtx {
                    h1,
                    h3,
                    hmid,
                    cylmid,
                    span1,
                    span2,
                },
            );
        }
    }
    let mut homs = BTreeMap::new();
    let mut units = BTreeMap::new();
    for (i, f) in objs.iter().enumerate() {
        for (j, _) in objs.iter().enumerate() {
            homs.insert((i, j), ctxs[&(i, j)].span2.cat.clone());
        }
        let (ci, di) = ends[i];
        let ctx = &ctxs[&(i, i)];
        let kappa0 = cyl::kappa_tuple(c, 1, f);
        units.insert(
            i,
            ctx.encode(&ci.padded(1), &kappa0, &di.padded(1)),
        );
    }
    let spec = HomSpec {
        truncation: c.truncation,
        objects: objs.iter().map(|f| c.name(f)).collect(),
        homs,
        units,
    };
    let comp0 = |i: usize, j: usize, k: usize, x: &CellRef, y: &CellRef| -> Result<CellRef> {
        // x in hom(f_j, f_k) applied after y in hom(f_i, f_j)
        let (u2, mut a2, v2) = ctxs[&(j, k)].decode(x);
        let (u1, mut a1, v1) = ctxs[&(i, j)].decode(y);
        while a2.degree() < a1.degree() {
            a2 = cyl::tuple_unit(&a2);
        }
        while a1.degree() < a2.degree() {
            a1 = cyl::tuple_unit(&a1);
        }
        let u = c.comp(0, &u2, &u1)?;
        let v = c.comp(0, &v2, &v1)?;
        let beta = cyl::whisker_left(c, 0, &v2, &a1)?;
        let alpha = cyl::whisker_right(c, 0, &a2, &u1)?;
        let a = cyl::conc(c, 1, &beta, &alpha)?;
        Ok(ctxs[&(i, k)].encode(&u, &a, &v))
    };
    assemble::assemble(spec, &comp0)
}

/// Rebuild Cyl C from the enriched description and demand an isomorphism
/// with the tuple construction.
pub fn enriched_cyl_crosscheck(c: &Arc<OmegaCat>) -> Result<OmegaFunctor> {
    let direct = cyl::cyl(c)?;
    let e = enriched_cyl(c)?;
    is_isomorphic(&direct.cat, &e.cat).ok_or_else(|| {
        Error::MismatchWitness(format!(
            "tuple and enriched cylinder categories differ: stored {:?} vs {:?}",
            (0..direct.cat.cells.len())
                .map(|d| direct.cat.stored_count(d))
                .collect::<Vec<_>>(),
            (0..e.cat.cells.len())
                .map(|d| e.cat.stored_count(d))
                .collect::<Vec<_>>()
        ))
    })
}
