//! Functoriality of the comma construction: the action of squares with
//! oplax diagonals on comma categories, its unit/composition laws, the
//! naturality of the projections, the strict sub-slice with cylinder-valued
//! homs, the Grothendieck construction with a low-dimensional oracle, and
//! the cylinder-composition obstruction in the Gray setting.

use crate::assemble::{self, Assembly, HomSpec};
use crate::comma::{self, CommaCat};
use crate::gray::GrayCat;
use crate::cyl::{self, CylCat, CylTuple};
use crate::error::{Error, Result};
use crate::homcart::{self, Fam, HomCart, OplaxCell1};
use crate::limits::{self, Span};
use crate::omega::{self, CellRef, OmegaCat, OmegaFunctor};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A square between cospans `(f: A -> C, g: B -> C)` and `(f', g')` with
/// oplax diagonals: `alpha: f'.u => f` and `beta: g => g'.v`.
#[derive(Clone)]
pub struct BifunctorCell {
    pub u: OmegaFunctor,
    pub alpha: OplaxCell1,
    pub beta: OplaxCell1,
    pub v: OmegaFunctor,
}

fn check_cell_boundary(cc: &CommaCat, cc2: &CommaCat, cell: &BifunctorCell) -> Result<()> {
    if *cell.u.source != *cc.f.source || *cell.u.target != *cc2.f.source {
        return Err(Error::IllFormedSquare("u is not A -> A'".into()));
    }
    if *cell.v.source != *cc.g.source || *cell.v.target != *cc2.g.source {
        return Err(Error::IllFormedSquare("v is not B -> B'".into()));
    }
    if cell.alpha.u.map != OmegaFunctor::compose(&cc2.f, &cell.u).map
        || cell.alpha.v.map != cc.f.map
    {
        return Err(Error::IllFormedSquare("alpha is not f'.u => f".into()));
    }
    if cell.beta.u.map != cc.g.map
        || cell.beta.v.map != OmegaFunctor::compose(&cc2.g, &cell.v).map
    {
        return Err(Error::IllFormedSquare("beta is not g => g'.v".into()));
    }
    Ok(())
}

/// The induced functor between comma categories: a cell `t` with components
/// `(a, lam, b)` maps to `(u(a), beta(b) . lam . alpha(a), v(b))`, the
/// three-fold tube concatenation over the base.
pub fn comma_bifunctor(
    cc: &CommaCat,
    cc2: &CommaCat,
    cell: &BifunctorCell,
) -> Result<OmegaFunctor> {
    check_cell_boundary(cc, cc2, cell)?;
    let c = &cc.f.target;
    let map = (0..cc.total.cells.len())
        .map(|d| {
            cc.total
                .stored(d)
                .iter()
                .map(|t| {
                    let (a, gref, b) = cc.decode(t);
                    let g_t = cc.cylc.tuple_of(&gref);
                    let a_t = cc.cylc.tuple_of(&cell.alpha.witness.apply(&a));
                    let b_t = cc.cylc.tuple_of(&cell.beta.witness.apply(&b));
                    let z = cyl::conc(c, 0, &b_t, &cyl::conc(c, 0, &g_t, &a_t)?)?;
                    Ok(cc2.encode(
                        &cell.u.apply(&a),
                        &cc2.cylc.tuple_ref(&z),
                        &cell.v.apply(&b),
                    ))
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let h = OmegaFunctor::from_map(&cc.total, &cc2.total, map);
    h.validate()?;
    Ok(h)
}

/// The identity square on a cospan.
pub fn bifunctor_identity(cc: &CommaCat) -> BifunctorCell {
    BifunctorCell {
        u: OmegaFunctor::identity(&cc.f.source),
        alpha: homcart::oplax_identity(&cc.cylc, &cc.f),
        beta: homcart::oplax_identity(&cc.cylc, &cc.g),
        v: OmegaFunctor::identity(&cc.g.source),
    }
}

/// Composition of squares: functor legs compose, the diagonals whisker and
/// then concatenate in the matching order.
pub fn bifunctor_compose(
    cylc: &CylCat,
    t2: &BifunctorCell,
    t1: &BifunctorCell,
) -> Result<BifunctorCell> {
    Ok(BifunctorCell {
        u: OmegaFunctor::compose(&t2.u, &t1.u),
        alpha: homcart::oplax_vcomp(
            cylc,
            &t1.alpha,
            &homcart::oplax_whisker_pre(&t2.alpha, &t1.u),
        )?,
        beta: homcart::oplax_vcomp(
            cylc,
            &homcart::oplax_whisker_pre(&t2.beta, &t1.v),
            &t1.beta,
        )?,
        v: OmegaFunctor::compose(&t2.v, &t1.v),
    })
}

/// All oplax cells `u => v` between functors into the shared base, by
/// exhaustive enumeration of witnesses.
pub fn enumerate_oplax(cylc: &CylCat, u: &OmegaFunctor, v: &OmegaFunctor) -> Vec<OplaxCell1> {
    crate::omega::enumerate_functors(&u.source, &cylc.cat)
        .into_iter()
        .filter(|w| {
            OmegaFunctor::compose(&cylc.src_f, w).map == u.map
                && OmegaFunctor::compose(&cylc.tgt_f, w).map == v.map
        })
        .map(|w| homcart::oplax_from_witness(cylc, w).unwrap())
        .collect()
}

/// The functor laws of the comma action over a chain of two squares:
/// unit preservation, compatibility with composition, and both one-sided
/// decompositions through the mixed commas. Returns the number of equations
/// checked.
pub fn bifunctor_law_check(
    cc0: &CommaCat,
    cc1: &CommaCat,
    cc2: &CommaCat,
    t1: &BifunctorCell,
    t2: &BifunctorCell,
) -> Result<usize> {
    let cylc = &cc0.cylc;
    let mut checked = 0;
    // units
    for cc in [cc0, cc1, cc2] {
        let k = comma_bifunctor(cc, cc, &bifunctor_identity(cc))?;
        if k.map != OmegaFunctor::identity(&cc.total).map {
            return Err(Error::law("comma action unit", "identity square"));
        }
        checked += 1;
    }
    // pairing with composition
    let k1 = comma_bifunctor(cc0, cc1, t1)?;
    let k2 = comma_bifunctor(cc1, cc2, t2)?;
    let k21 = comma_bifunctor(cc0, cc2, &bifunctor_compose(cylc, t2, t1)?)?;
    if k21.map != OmegaFunctor::compose(&k2, &k1).map {
        return Err(Error::law(
            "comma action composition",
            "square pair",
        ));
    }
    checked += 1;
    // one-sided decompositions of each square through the mixed cospans
    for (cc, cc_next, t) in [(cc0, cc1, t1), (cc1, cc2, t2)] {
        let k = comma_bifunctor(cc, cc_next, t)?;
        // through (f, g'): first move the g-side, then the f-side
        let mid = comma::comma(&cc.f, &cc_next.g)?;
        let move_g = BifunctorCell {
            u: OmegaFunctor::identity(&cc.f.source),
            alpha: homcart::oplax_identity(cylc, &cc.f),
            beta: t.beta.clone(),
            v: t.v.clone(),
        };
        let move_f = BifunctorCell {
            u: t.u.clone(),
            alpha: t.alpha.clone(),
            beta: homcart::oplax_identity(cylc, &cc_next.g),
            v: OmegaFunctor::identity(&cc_next.g.source),
        };
        let kg = comma_bifunctor(cc, &mid, &move_g)?;
        let kf = comma_bifunctor(&mid, cc_next, &move_f)?;
        if k.map != OmegaFunctor::compose(&kf, &kg).map {
            return Err(Error::law(
                "comma action decomposition",
                "g-side then f-side",
            ));
        }
        checked += 1;
        // through (f', g): the other order
        let mid2 = comma::comma(&cc_next.f, &cc.g)?;
        let move_f2 = BifunctorCell {
            u: t.u.clone(),
            alpha: t.alpha.clone(),
            beta: homcart::oplax_identity(cylc, &cc.g),
            v: OmegaFunctor::identity(&cc.g.source),
        };
        let move_g2 = BifunctorCell {
            u: OmegaFunctor::identity(&cc_next.f.source),
            alpha: homcart::oplax_identity(cylc, &cc_next.f),
            beta: t.beta.clone(),
            v: t.v.clone(),
        };
        let kf2 = comma_bifunctor(cc, &mid2, &move_f2)?;
        let kg2 = comma_bifunctor(&mid2, cc_next, &move_g2)?;
        if k.map != OmegaFunctor::compose(&kg2, &kf2).map {
            return Err(Error::law(
                "comma action decomposition",
                "f-side then g-side",
            ));
        }
        checked += 1;
    }
    Ok(checked)
}

/// The projections are natural in the square: pairing the images of p1' and
/// p2' after the induced functor agrees with the pairing of `u.p1` and
/// `v.p2`, and with the product of `u` and `v` after the pairing of the
/// source projections. Returns the number of total cells compared.
pub fn projection_naturality_check(
    cc: &CommaCat,
    cc2: &CommaCat,
    cell: &BifunctorCell,
) -> Result<usize> {
    let k = comma_bifunctor(cc, cc2, cell)?;
    let prod_src = limits::product(&cc.f.source, &cc.g.source)?;
    let prod_tgt = limits::product(&cc2.f.source, &cc2.g.source)?;
    let p = prod_src.factorize(&cc.p1, &cc.p2)?;
    let uv = prod_tgt.factorize(
        &OmegaFunctor::compose(&cell.u, &prod_src.p1),
        &OmegaFunctor::compose(&cell.v, &prod_src.p2),
    )?;
    let via_product = OmegaFunctor::compose(&uv, &p);
    let direct = prod_tgt.factorize(
        &OmegaFunctor::compose(&cell.u, &cc.p1),
        &OmegaFunctor::compose(&cell.v, &cc.p2),
    )?;
    let via_action = prod_tgt.factorize(
        &OmegaFunctor::compose(&cc2.p1, &k),
        &OmegaFunctor::compose(&cc2.p2, &k),
    )?;
    if via_product.map != direct.map || via_action.map != direct.map {
        return Err(Error::law(
            "projection naturality",
            "pairings disagree",
        ));
    }
    Ok((0..cc.total.cells.len())
        .map(|d| cc.total.stored_count(d))
        .sum())
}

/// Horizontal composite in the cartesian hom: `x` over `B -> C` composed
/// with `y` over `A -> B`, landing in `Hom(A, C)`. On 0-cells this is
/// functor composition; on higher cells the component at an object `o` is
/// `x_(t0 y_o) *_0 u_x(y_o)`.
pub fn hom_hcomp(
    hbc: &HomCart,
    hab: &HomCart,
    hac: &HomCart,
    x: &CellRef,
    y: &CellRef,
) -> Result<CellRef> {
    let m = x.dim.max(y.dim);
    let x = x.padded(m - x.dim);
    let y = y.padded(m - y.dim);
    if m == 0 {
        let gf = OmegaFunctor::compose(&hbc.functors[x.index], &hab.functors[y.index]);
        return hac
            .functor_index(&gf)
            .map(|i| CellRef::stored(0, i))
            .ok_or_else(|| Error::DanglingReference("composite functor not enumerated".into()));
    }
    let fx = hbc.fam_of(&x);
    let fy = hab.fam_of(&y);
    let lookup = |u: usize, v: usize| -> Result<usize> {
        let gu = OmegaFunctor::compose(&hbc.functors[u], &hab.functors[v]);
        hac.functor_index(&gu)
            .ok_or_else(|| Error::DanglingReference("composite functor not enumerated".into()))
    };
    let u = lookup(fx.u, fy.u)?;
    let v = lookup(fx.v, fy.v)?;
    let ux = &hbc.functors[fx.u];
    let components = fy
        .components
        .iter()
        .map(|zy| {
            let pos = hab.b.t_i(0, zy).index;
            hbc.b.comp(0, &fx.components[pos], &ux.apply(zy))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(hac.cell_of(&Fam { u, v, components }))
}

/// The horizontal composition functor out of the product of two cartesian
/// homs, with the pairing it factors through. Validating it checks that
/// `hom_hcomp` is compatible with every face, unit and composition.
pub fn hom_comp_functor(
    hbc: &HomCart,
    hab: &HomCart,
    hac: &HomCart,
) -> Result<(Span, OmegaFunctor)> {
    let prod = limits::product(&hbc.cat, &hab.cat)?;
    let map = (0..prod.cat.cells.len())
        .map(|d| {
            prod.cat
                .stored(d)
                .iter()
                .map(|r| {
                    let (x, y) = prod.components(r);
                    hom_hcomp(hbc, hab, hac, &x, &y)
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let h = OmegaFunctor::from_map(&prod.cat, &hac.cat, map);
    h.validate()?;
    Ok((prod, h))
}

/// The functor `Hom(A, X) -> Hom(A, Y)` induced by `g: X -> Y`, acting on
/// families componentwise.
pub fn hom_post_compose(
    h_src: &HomCart,
    h_tgt: &HomCart,
    g: &OmegaFunctor,
) -> Result<OmegaFunctor> {
    let map0 = h_src
        .functors
        .iter()
        .map(|f| {
            let gf = OmegaFunctor::compose(g, f);
            h_tgt
                .functor_index(&gf)
                .map(|i| CellRef::stored(0, i))
                .ok_or_else(|| {
                    Error::DanglingReference("post-composite functor not enumerated".into())
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = (0..h_src.cat.cells.len())
        .map(|d| {
            if d == 0 {
                return Ok(map0.clone());
            }
            h_src
                .cat
                .stored(d)
                .iter()
                .map(|r| {
                    let f = h_src.fam_of(r);
                    Ok(h_tgt.cell_of(&Fam {
                        u: map0[f.u].index,
                        v: map0[f.v].index,
                        components: f.components.iter().map(|z| g.apply(z)).collect(),
                    }))
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let h = OmegaFunctor::from_map(&h_src.cat, &h_tgt.cat, map);
    h.validate()?;
    Ok(h)
}

/// Pointwise tube concatenation of two cells of `Hom(A, Cyl C)` (first, then
/// second), the vertical composition of the cylinder-valued homs.
pub fn cyl_hom_conc(
    hacyl: &HomCart,
    cylc: &CylCat,
    second: &CellRef,
    first: &CellRef,
) -> Result<CellRef> {
    let c = &cylc.base;
    let m = second.dim.max(first.dim);
    let second = second.padded(m - second.dim);
    let first = first.padded(m - first.dim);
    if m == 0 {
        let fs = &hacyl.functors[second.index];
        let ff = &hacyl.functors[first.index];
        let a = &hacyl.a;
        let map = (0..a.cells.len())
            .map(|d| {
                a.stored(d)
                    .iter()
                    .map(|z| {
                        let z2 = cylc.tuple_of(&fs.apply(z));
                        let z1 = cylc.tuple_of(&ff.apply(z));
                        Ok(cylc.tuple_ref(&conc_pad(c, 0, &z2, &z1)?))
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let g = OmegaFunctor::from_map(a, &cylc.cat, map);
        g.validate()?;
        return hacyl
            .functor_index(&g)
            .map(|i| CellRef::stored(0, i))
            .ok_or_else(|| Error::DanglingReference("concatenated functor not enumerated".into()));
    }
    let fs = hacyl.fam_of(&second);
    let ff = hacyl.fam_of(&first);
    let u = cyl_hom_conc(
        hacyl,
        cylc,
        &CellRef::stored(0, fs.u),
        &CellRef::stored(0, ff.u),
    )?;
    let v = cyl_hom_conc(
        hacyl,
        cylc,
        &CellRef::stored(0, fs.v),
        &CellRef::stored(0, ff.v),
    )?;
    let components = fs
        .components
        .iter()
        .zip(&ff.components)
        .map(|(zs, zf)| {
            let t2 = cylc.tuple_of(zs);
            let t1 = cylc.tuple_of(zf);
            Ok(cylc.tuple_ref(&conc_pad(c, 0, &t2, &t1)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(hacyl.cell_of(&Fam {
        u: u.index,
        v: v.index,
        components,
    }))
}

/// Tube concatenation with degree equalization by identity cylinders.
fn conc_pad(
    c: &crate::omega::OmegaCat,
    shift: usize,
    beta: &CylTuple,
    alpha: &CylTuple,
) -> Result<CylTuple> {
    let mut b = beta.clone();
    let mut a = alpha.clone();
    while a.degree() < b.degree() {
        a = cyl::tuple_unit(&a);
    }
    while b.degree() < a.degree() {
        b = cyl::tuple_unit(&b);
    }
    cyl::conc(c, shift, &b, &a)
}

/// The slice of a base `C` by a family of legs `f_i: A_i -> C`, with homs
/// the fiber products `Hom(A_i,A_j) x_{Hom(A_i,C)} Hom(A_i, Cyl C)` cut out
/// by the side projections of the cylinder, assembled into a strict category
/// one level up.
pub struct WSlice {
    pub base: Arc<OmegaCat>,
    pub cyl_c: Arc<CylCat>,
    pub legs: Vec<OmegaFunctor>,
    pub hom_ac: Vec<HomCart>,
    pub hom_acyl: Vec<HomCart>,
    pub hom_aa: BTreeMap<(usize, usize), HomCart>,
    pub spans: BTreeMap<(usize, usize), Span>,
    pub assembly: Assembly,
}

pub fn wtr_build(c: &Arc<OmegaCat>, legs: &[OmegaFunctor]) -> Result<WSlice> {
    for f in legs {
        if *f.target != **c {
            return Err(Error::MismatchedCospan("slice leg misses the base".into()));
        }
    }
    let cyl_c = Arc::new(cyl::cyl(c)?);
    let n = legs.len();
    let hom_ac = legs
        .iter()
        .map(|f| homcart::hom_cart(&f.source, c))
        .collect::<Result<Vec<_>>>()?;
    let hom_acyl = legs
        .iter()
        .map(|f| homcart::hom_cart(&f.source, &cyl_c.cat))
        .collect::<Result<Vec<_>>>()?;
    let mut hom_aa = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            hom_aa.insert((i, j), homcart::hom_cart(&legs[i].source, &legs[j].source)?);
        }
    }
    let post_s = (0..n)
        .map(|i| hom_post_compose(&hom_acyl[i], &hom_ac[i], &cyl_c.src_f))
        .collect::<Result<Vec<_>>>()?;
    let post_t = (0..n)
        .map(|i| hom_post_compose(&hom_acyl[i], &hom_ac[i], &cyl_c.tgt_f))
        .collect::<Result<Vec<_>>>()?;
    let fid = (0..n)
        .map(|i| {
            hom_ac[i]
                .functor_index(&legs[i])
                .ok_or_else(|| Error::DanglingReference("slice leg not enumerated".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = c.truncation;
    let mut spans = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let pf = hom_post_compose(&hom_aa[&(i, j)], &hom_ac[i], &legs[j])?;
            let (ps, pt, fi) = (&post_s[i], &post_t[i], fid[i]);
            let span = limits::filtered_product(&hom_aa[&(i, j)].cat, &hom_acyl[i].cat, m, |x, y| {
                pf.apply(x) == ps.apply(y)
                    && pt.apply(y) == CellRef::stored(0, fi).padded(y.dim)
            })?;
            spans.insert((i, j), span);
        }
    }
    let mut units = BTreeMap::new();
    for i in 0..n {
        let idid = hom_aa[&(i, i)]
            .functor_index(&OmegaFunctor::identity(&legs[i].source))
            .expect("identity functor is always enumerated");
        let kf = OmegaFunctor::compose(&cyl_c.kappa_f, &legs[i]);
        let ki = hom_acyl[i]
            .functor_index(&kf)
            .ok_or_else(|| Error::DanglingReference("identity cylinder on a leg".into()))?;
        units.insert(
            i,
            spans[&(i, i)].pair(&CellRef::stored(0, idid), &CellRef::stored(0, ki)),
        );
    }
    let spec = HomSpec {
        truncation: m + 1,
        objects: (0..n).map(|i| format!("A{i}")).collect(),
        homs: spans.iter().map(|(&k, s)| (k, s.cat.clone())).collect(),
        units,
    };
    let comp0 = |i: usize, j: usize, k: usize, x: &CellRef, y: &CellRef| -> Result<CellRef> {
        let (u2, a2) = spans[&(j, k)].components(x);
        let (u1, a1) = spans[&(i, j)].components(y);
        let u = hom_hcomp(&hom_aa[&(j, k)], &hom_aa[&(i, j)], &hom_aa[&(i, k)], &u2, &u1)?;
        let w = hom_hcomp(&hom_acyl[j], &hom_aa[&(i, j)], &hom_acyl[i], &a2, &u1)?;
        let mid = cyl_hom_conc(&hom_acyl[i], &cyl_c, &a1, &w)?;
        let d = u.dim.max(mid.dim);
        Ok(spans[&(i, k)].pair(&u.padded(d - u.dim), &mid.padded(d - mid.dim)))
    };
    let assembly = assemble::assemble(spec, &comp0)?;
    Ok(WSlice {
        base: c.clone(),
        cyl_c,
        legs: legs.to_vec(),
        hom_ac,
        hom_acyl,
        hom_aa,
        spans,
        assembly,
    })
}

/// The strict slice sits inside the cylinder-valued slice: for each hom, the
/// fiber product over `Cyl Hom(A_i, C)` maps in through the componentwise
/// inclusion, functorially and injectively. Returns the number of embedded
/// cells.
pub fn wtr_strict_inclusion(w: &WSlice) -> Result<usize> {
    let n = w.legs.len();
    let m = w.base.truncation;
    let mut total = 0;
    for i in 0..n {
        let lam = homcart::lambda_include(&w.legs[i].source, &w.base)?;
        let fi = lam
            .hom_ac
            .functor_index(&w.legs[i])
            .ok_or_else(|| Error::DanglingReference("slice leg not enumerated".into()))?;
        for j in 0..n {
            let pf = hom_post_compose(&w.hom_aa[&(i, j)], &lam.hom_ac, &w.legs[j])?;
            let strict =
                limits::filtered_product(&w.hom_aa[&(i, j)].cat, &lam.cyl_hom.cat, m, |x, y| {
                    pf.apply(x) == lam.cyl_hom.src_f.apply(y)
                        && lam.cyl_hom.tgt_f.apply(y) == CellRef::stored(0, fi).padded(y.dim)
                })?;
            let map = (0..strict.cat.cells.len())
                .map(|d| {
                    strict
                        .cat
                        .stored(d)
                        .iter()
                        .map(|r| {
                            let (x, y) = strict.components(r);
                            let ly = lam.include.apply(&y);
                            Ok(w.spans[&(i, j)].pair(&x, &ly))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            for layer in &map {
                let mut seen = layer.clone();
                seen.sort();
                seen.dedup();
                if seen.len() != layer.len() {
                    return Err(Error::law("strict slice inclusion", "not injective"));
                }
                total += layer.len();
            }
            let h = OmegaFunctor::from_map(&strict.cat, &w.spans[&(i, j)].cat, map);
            h.validate()?;
        }
    }
    Ok(total)
}

/// The 0-cells of every hom of the slice are exactly the oplax cells
/// `f_j . u => f_i` over functors `u: A_i -> A_j`, counted independently.
pub fn wtr_oplax_agreement(w: &WSlice) -> Result<usize> {
    let n = w.legs.len();
    let mut total = 0;
    for i in 0..n {
        for j in 0..n {
            let expected: usize = omega::enumerate_functors(&w.legs[i].source, &w.legs[j].source)
                .iter()
                .map(|u| {
                    enumerate_oplax(
                        &w.cyl_c,
                        &OmegaFunctor::compose(&w.legs[j], u),
                        &w.legs[i],
                    )
                    .len()
                })
                .sum();
            let got = w.spans[&(i, j)].cat.stored_count(0);
            if got != expected {
                return Err(Error::law(
                    "slice 0-cells",
                    format!("hom ({i},{j}) has {got} objects, oplax count {expected}"),
                ));
            }
            total += got;
        }
    }
    Ok(total)
}

/// A 1-cell of the square slice: strict transformations on the functor legs
/// and on both cylinder witnesses.
#[derive(Clone, Debug)]
pub struct WCell1 {
    pub u: CellRef,
    pub alpha: CellRef,
    pub beta: CellRef,
    pub v: CellRef,
}

/// The comma action on a 1-cell of slice data is a strict transformation:
/// the componentwise three-fold concatenation over the objects of the comma
/// category satisfies the naturality equations between the endpoint
/// functors. Returns the number of components checked.
#[allow(clippy::too_many_arguments)]
pub fn bifun_strict_check(
    cc: &CommaCat,
    cc2: &CommaCat,
    haa: &HomCart,
    hacyl: &HomCart,
    hbcyl: &HomCart,
    hbb: &HomCart,
    cell: &WCell1,
) -> Result<usize> {
    for r in [&cell.u, &cell.alpha, &cell.beta, &cell.v] {
        if r.dim != 1 {
            return Err(Error::UnsupportedShape("slice 1-cell expected".into()));
        }
    }
    let cylc = &cc.cylc;
    let fu = haa.fam_of(&cell.u);
    let fa = hacyl.fam_of(&cell.alpha);
    let fb = hbcyl.fam_of(&cell.beta);
    let fv = hbb.fam_of(&cell.v);
    // side constraints of both witnesses, componentwise
    let a_objs = haa.a.stored(0);
    let b_objs = hbb.a.stored(0);
    for (pa, z) in a_objs.iter().enumerate() {
        let t = cylc.tuple_of(&fa.components[pa]);
        if t.x != cc2.f.apply(&fu.components[pa]) || t.y != cc.f.apply(z).padded(1) {
            return Err(Error::IllFormedSquare("alpha side is not f'.u => f".into()));
        }
    }
    for (pb, z) in b_objs.iter().enumerate() {
        let t = cylc.tuple_of(&fb.components[pb]);
        if t.x != cc.g.apply(z).padded(1) || t.y != cc2.g.apply(&fv.components[pb]) {
            return Err(Error::IllFormedSquare("beta side is not g => g'.v".into()));
        }
    }
    let mk = |ui: usize, ai: usize, bi: usize, vi: usize| -> Result<BifunctorCell> {
        Ok(BifunctorCell {
            u: haa.functors[ui].clone(),
            alpha: homcart::oplax_from_witness(cylc, hacyl.functors[ai].clone())?,
            beta: homcart::oplax_from_witness(cylc, hbcyl.functors[bi].clone())?,
            v: hbb.functors[vi].clone(),
        })
    };
    let k_s = comma_bifunctor(cc, cc2, &mk(fu.u, fa.u, fb.u, fv.u)?)?;
    let k_t = comma_bifunctor(cc, cc2, &mk(fu.v, fa.v, fb.v, fv.v)?)?;
    let c = &cc.f.target;
    let objs = cc.total.stored(0);
    let components = objs
        .iter()
        .map(|t| {
            let (a, gref, b) = cc.decode(t);
            let g_t = cylc.tuple_of(&gref);
            let pa = a_objs.iter().position(|o| *o == a).unwrap();
            let pb = b_objs.iter().position(|o| *o == b).unwrap();
            let a_t = cylc.tuple_of(&fa.components[pa]);
            let b_t = cylc.tuple_of(&fb.components[pb]);
            let z = conc_pad(c, 0, &b_t, &conc_pad(c, 0, &g_t, &a_t)?)?;
            Ok(cc2.encode(
                &fu.components[pa],
                &cc2.cylc.tuple_ref(&z),
                &fv.components[pb],
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    homcart::validate_family(&cc.total, &cc2.total, &k_s, &k_t, &components)?;
    Ok(components.len())
}

/// A cylinder over a 1-cell: top and bottom 1-cells, two 0-cell walls, and
/// a 2-cell filler `plus o0 top => bottom o0 minus`.
#[derive(Clone, Debug)]
pub struct OneCylinder {
    pub src: (usize, usize),
    pub tgt: (usize, usize),
    pub top: CellRef,
    pub bottom: CellRef,
    pub minus: CellRef,
    pub plus: CellRef,
    pub filler: CellRef,
}

/// A cylinder over a 2-cell: top and bottom 2-cells, 0-cell walls, the two
/// edge fillers over the 1-cell boundaries, and a 3-cell filler between the
/// pasted boundaries.
#[derive(Clone, Debug)]
pub struct TwoCylinder {
    pub src: (usize, usize),
    pub tgt: (usize, usize),
    pub top: CellRef,
    pub bottom: CellRef,
    pub minus0: CellRef,
    pub plus0: CellRef,
    pub minus1: CellRef,
    pub plus1: CellRef,
    pub filler: CellRef,
}

pub fn validate_one_cylinder(g: &GrayCat, t: &OneCylinder) -> Result<()> {
    let (a, b) = t.src;
    let (ap, bp) = t.tgt;
    let h = g
        .hom(a, bp)
        .ok_or_else(|| Error::DanglingReference("diagonal hom of a 1-cylinder".into()))?;
    if t.top.dim != 0 || t.bottom.dim != 0 || t.minus.dim != 0 || t.plus.dim != 0 {
        return Err(Error::UnsupportedShape("cylinder walls must be 0-cells".into()));
    }
    let s = g.comp0(a, b, bp, &t.plus, &t.top)?;
    let tt = g.comp0(a, ap, bp, &t.bottom, &t.minus)?;
    if t.filler.dim != 1 || h.src(&t.filler) != s || h.tgt(&t.filler) != tt {
        return Err(Error::BoundaryMismatch("1-cylinder filler".into()));
    }
    Ok(())
}

pub fn validate_two_cylinder(g: &GrayCat, t: &TwoCylinder) -> Result<()> {
    let (b, c) = t.src;
    let (bp, cp) = t.tgt;
    let htop = g
        .hom(b, c)
        .ok_or_else(|| Error::DanglingReference("top hom of a 2-cylinder".into()))?;
    let hbot = g
        .hom(bp, cp)
        .ok_or_else(|| Error::DanglingReference("bottom hom of a 2-cylinder".into()))?;
    let h = g
        .hom(b, cp)
        .ok_or_else(|| Error::DanglingReference("diagonal hom of a 2-cylinder".into()))?;
    if t.top.dim != 1 || t.bottom.dim != 1 {
        return Err(Error::UnsupportedShape("2-cylinder lids must be 1-cells".into()));
    }
    for (edge, lid_face, bot_face) in [
        (&t.minus1, htop.src(&t.top), hbot.src(&t.bottom)),
        (&t.plus1, htop.tgt(&t.top), hbot.tgt(&t.bottom)),
    ] {
        let s = g.comp0(b, c, cp, &t.plus0, &lid_face)?;
        let tt = g.comp0(b, bp, cp, &bot_face, &t.minus0)?;
        if edge.dim != 1 || h.src(edge) != s || h.tgt(edge) != tt {
            return Err(Error::BoundaryMismatch("2-cylinder edge filler".into()));
        }
    }
    let s2 = h.comp(0, &t.plus1, &g.comp0(b, c, cp, &t.plus0, &t.top)?)?;
    let t2 = h.comp(0, &g.comp0(b, bp, cp, &t.bottom, &t.minus0)?, &t.minus1)?;
    if t.filler.dim != 2 || h.src(&t.filler) != s2 || h.tgt(&t.filler) != t2 {
        return Err(Error::BoundaryMismatch("2-cylinder filler".into()));
    }
    Ok(())
}

/// The 1-category of 0- and 1-cylinders in a Gray category: objects are the
/// 1-cells, morphisms are squares `(u, v, filler)`, and composition pastes
/// the two whiskered fillers without ever needing an interchanger.
pub struct CylOneCat {
    pub cat: Arc<OmegaCat>,
    pub objects: Vec<(usize, usize, CellRef)>,
    pub arrows: Vec<(usize, usize, (CellRef, CellRef, CellRef))>,
}

pub fn cylinder_cat_1(g: &GrayCat) -> Result<CylOneCat> {
    let n = g.objects.len();
    let mut objects = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if let Some(h) = g.hom(i, j) {
                for x in h.stored(0) {
                    objects.push((i, j, x));
                }
            }
        }
    }
    let mut arrows: Vec<(usize, usize, (CellRef, CellRef, CellRef))> = Vec::new();
    let mut arrow_index: BTreeMap<(usize, usize, CellRef, CellRef, CellRef), usize> =
        BTreeMap::new();
    for (oi, &(i, j, x)) in objects.iter().enumerate() {
        for (oj, &(ip, jp, y)) in objects.iter().enumerate() {
            let (Some(hu), Some(hv), Some(ht)) = (g.hom(i, ip), g.hom(j, jp), g.hom(i, jp))
            else {
                continue;
            };
            for u in hu.stored(0) {
                for v in hv.stored(0) {
                    let s = g.comp0(i, j, jp, &v, &x)?;
                    let t = g.comp0(i, ip, jp, &y, &u)?;
                    for ga in ht.all_cells(1) {
                        if ht.src(&ga) != s || ht.tgt(&ga) != t {
                            continue;
                        }
                        if oi == oj && u == g.units[&i] && v == g.units[&j] && ga == x.padded(1)
                        {
                            continue; // the identity square
                        }
                        arrow_index.insert((oi, oj, u, v, ga), arrows.len());
                        arrows.push((oi, oj, (u, v, ga)));
                    }
                }
            }
        }
    }
    let aref = |oi: usize, oj: usize, u: &CellRef, v: &CellRef, ga: &CellRef| -> CellRef {
        let (i, j, x) = objects[oi];
        if oi == oj && *u == g.units[&i] && *v == g.units[&j] && *ga == x.padded(1) {
            return CellRef {
                dim: 1,
                index: oi,
                pad: 1,
            };
        }
        CellRef::stored(1, arrow_index[&(oi, oj, *u, *v, *ga)])
    };
    let cells = vec![
        objects
            .iter()
            .map(|&(i, j, x)| format!("{i}->{j}:{}", g.homs[&(i, j)].name(&x)))
            .collect(),
        arrows
            .iter()
            .map(|&(oi, oj, (u, v, ga))| {
                let (i, _, _) = objects[oi];
                let (_, jp, _) = objects[oj];
                format!(
                    "[{oi}=>{oj}|{u:?}|{v:?}|{}]",
                    g.homs[&(i, jp)].name(&ga)
                )
            })
            .collect(),
    ];
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for (k, &(oi, oj, _)) in arrows.iter().enumerate() {
        src.insert((1, k), CellRef::stored(0, oi));
        tgt.insert((1, k), CellRef::stored(0, oj));
    }
    let mut comp = BTreeMap::new();
    for (k2, &(o2s, o2t, (u2, v2, g2))) in arrows.iter().enumerate() {
        for (k1, &(o1s, o1t, (u1, v1, g1))) in arrows.iter().enumerate() {
            if o1t != o2s {
                continue;
            }
            let (i1, j1, _) = objects[o1s];
            let (i2, j2, _) = objects[o2s];
            let (i3, j3, _) = objects[o2t];
            let u = g.comp0(i1, i2, i3, &u2, &u1)?;
            let v = g.comp0(j1, j2, j3, &v2, &v1)?;
            let left = g.comp0(i1, j2, j3, &v2, &g1)?;
            let right = g.comp0(i1, i2, j3, &g2, &u1)?;
            let ga = g.homs[&(i1, j3)].comp(0, &right, &left)?;
            comp.insert(
                (0, CellRef::stored(1, k2), CellRef::stored(1, k1)),
                aref(o1s, o2t, &u, &v, &ga),
            );
        }
    }
    let cat = Arc::new(omega::from_tables(1, cells, src, tgt, comp)?);
    Ok(CylOneCat {
        cat,
        objects,
        arrows,
    })
}

/// The outcome of trying to whisker a 2-cylinder by a 1-cylinder: either a
/// filler with the forced boundary exists, or the two whiskered legs both
/// point into the shared middle cell and no gluing is possible.
#[derive(Clone, Debug)]
pub enum CylVerdict {
    Composite(CellRef),
    Obstruction {
        src: CellRef,
        tgt: CellRef,
        left: CellRef,
        right: CellRef,
    },
}

/// Whisker a 2-cylinder on its source side by a 1-cylinder. All lower data
/// of the composite is forced; the filler must mediate between the two
/// pasted boundaries, and the candidate legs route through the interchanger
/// of the bottom lid with the 1-cylinder filler.
pub fn attempt_compose_2cyl(
    g: &GrayCat,
    lm: &TwoCylinder,
    al: &OneCylinder,
) -> Result<CylVerdict> {
    validate_one_cylinder(g, al)?;
    validate_two_cylinder(g, lm)?;
    let (a, b) = al.src;
    let (ap, bp) = al.tgt;
    let (lb, c) = lm.src;
    let (lbp, cp) = lm.tgt;
    if lb != b || lbp != bp || al.plus != lm.minus0 {
        return Err(Error::NotGlueable(
            "1-cylinder target column is not the 2-cylinder source column".into(),
        ));
    }
    let hbot = &g.homs[&(bp, cp)];
    let (up, vp) = (hbot.src(&lm.bottom), hbot.tgt(&lm.bottom));
    let h = &g.homs[&(a, cp)];
    // forced lids and edge fillers of the composite
    let top = g.comp0(a, b, c, &lm.top, &al.top)?;
    let bottom = g.comp0(ap, bp, cp, &lm.bottom, &al.bottom)?;
    let gm1 = h.comp(
        0,
        &g.comp0(a, bp, cp, &up, &al.filler)?,
        &g.comp0(a, b, cp, &lm.minus1, &al.top)?,
    )?;
    let gp1 = h.comp(
        0,
        &g.comp0(a, bp, cp, &vp, &al.filler)?,
        &g.comp0(a, b, cp, &lm.plus1, &al.top)?,
    )?;
    let src_needed = h.comp(0, &gp1, &g.comp0(a, c, cp, &lm.plus0, &top)?)?;
    let tgt_needed = h.comp(0, &g.comp0(a, ap, cp, &bottom, &al.minus)?, &gm1)?;
    // the two legs of the would-be pasting
    let left = h.comp(
        0,
        &g.comp0(a, bp, cp, &vp, &al.filler)?,
        &g.comp0(a, b, cp, &lm.filler, &al.top)?,
    )?;
    let right = h.comp(
        0,
        &g.comp0(a, bp, cp, &lm.bottom, &al.filler)?,
        &g.comp0(a, b, cp, &lm.minus1, &al.top)?,
    )?;
    for z in h.all_cells(2) {
        if h.src(&z) == src_needed && h.tgt(&z) == tgt_needed {
            return Ok(CylVerdict::Composite(z));
        }
    }
    Ok(CylVerdict::Obstruction {
        src: src_needed,
        tgt: tgt_needed,
        left,
        right,
    })
}

/// Whisker a 2-cylinder on its target side by a 1-cylinder; the mirror
/// attempt, routing through the interchanger of the 1-cylinder filler with
/// the top lid.
pub fn attempt_compose_2cyl_right(
    g: &GrayCat,
    be: &OneCylinder,
    lm: &TwoCylinder,
) -> Result<CylVerdict> {
    validate_one_cylinder(g, be)?;
    validate_two_cylinder(g, lm)?;
    let (b, c) = lm.src;
    let (bp, cp) = lm.tgt;
    let (bc, d) = be.src;
    let (bcp, dp) = be.tgt;
    if bc != c || bcp != cp || be.minus != lm.plus0 {
        return Err(Error::NotGlueable(
            "1-cylinder source column is not the 2-cylinder target column".into(),
        ));
    }
    let htop = &g.homs[&(b, c)];
    let (u, v) = (htop.src(&lm.top), htop.tgt(&lm.top));
    let h = &g.homs[&(b, dp)];
    let top = g.comp0(b, c, d, &be.top, &lm.top)?;
    let bottom = g.comp0(bp, cp, dp, &be.bottom, &lm.bottom)?;
    let gm1 = h.comp(
        0,
        &g.comp0(b, cp, dp, &be.bottom, &lm.minus1)?,
        &g.comp0(b, c, dp, &be.filler, &u)?,
    )?;
    let gp1 = h.comp(
        0,
        &g.comp0(b, cp, dp, &be.bottom, &lm.plus1)?,
        &g.comp0(b, c, dp, &be.filler, &v)?,
    )?;
    let src_needed = h.comp(0, &gp1, &g.comp0(b, d, dp, &be.plus, &top)?)?;
    let tgt_needed = h.comp(0, &g.comp0(b, bp, dp, &bottom, &lm.minus0)?, &gm1)?;
    let left = h.comp(
        0,
        &g.comp0(b, cp, dp, &be.bottom, &lm.plus1)?,
        &g.comp0(b, c, dp, &be.filler, &lm.top)?,
    )?;
    let right = h.comp(
        0,
        &g.comp0(b, cp, dp, &be.bottom, &lm.filler)?,
        &g.comp0(b, c, dp, &be.filler, &u)?,
    )?;
    for z in h.all_cells(2) {
        if h.src(&z) == src_needed && h.tgt(&z) == tgt_needed {
            return Ok(CylVerdict::Composite(z));
        }
    }
    Ok(CylVerdict::Obstruction {
        src: src_needed,
        tgt: tgt_needed,
        left,
        right,
    })
}

/// Indexing data for a contravariant diagram of categories over a base `I`
/// of truncation at most 2: a fiber per object, a functor `F(b) -> F(a)` per
/// stored 1-cell `a -> b`, and a strict transformation `F(e') => F(e)` per
/// stored 2-cell `e => e'`, given by its components.
pub struct FData {
    pub base: Arc<OmegaCat>,
    pub fibers: Vec<Arc<OmegaCat>>,
    pub arrows: BTreeMap<usize, OmegaFunctor>,
    pub squares: BTreeMap<usize, Vec<CellRef>>,
}

impl FData {
    /// The functor under any 1-cell of the base, identities included.
    pub fn arrow_functor(&self, f: &CellRef) -> OmegaFunctor {
        assert_eq!(f.dim, 1);
        if f.base_dim() == 0 {
            OmegaFunctor::identity(&self.fibers[f.index])
        } else {
            self.arrows[&f.index].clone()
        }
    }

    /// The component at a target-fiber object of the transformation under
    /// any 2-cell of the base (identity 2-cells give identity components).
    pub fn square_component(&self, g: &CellRef, xp: &CellRef) -> CellRef {
        assert_eq!(g.dim, 2);
        if g.base_dim() <= 1 {
            let f = CellRef {
                dim: 1,
                index: g.index,
                pad: 1 - g.base_dim(),
            };
            self.arrow_functor(&f).apply(xp).padded(1)
        } else {
            self.squares[&g.index][xp.index]
        }
    }

    pub fn validate(&self) -> Result<()> {
        let i_cat = &self.base;
        if i_cat.truncation > 2 {
            // diagram data stops at 2-cells of the base
            return Err(Error::DepthUnsupported {
                k: i_cat.truncation,
                l: 2,
            });
        }
        if self.fibers.len() != i_cat.stored_count(0) {
            return Err(Error::MalformedSpec("one fiber per base object".into()));
        }
        if self.arrows.len() != i_cat.stored_count(1)
            || self.arrows.keys().copied().ne(0..i_cat.stored_count(1))
        {
            return Err(Error::MalformedSpec("one functor per stored 1-cell".into()));
        }
        let n2 = if i_cat.cells.len() > 2 {
            i_cat.stored_count(2)
        } else {
            0
        };
        if self.squares.len() != n2 || self.squares.keys().copied().ne(0..n2) {
            return Err(Error::MalformedSpec(
                "one transformation per stored 2-cell".into(),
            ));
        }
        for (k, f) in &self.arrows {
            let e = CellRef::stored(1, *k);
            let (a, b) = (i_cat.src(&e), i_cat.tgt(&e));
            if *f.source != *self.fibers[b.index] || *f.target != *self.fibers[a.index] {
                return Err(Error::MalformedSpec(format!(
                    "functor of 1-cell {} has the wrong fibers",
                    i_cat.name(&e)
                )));
            }
            f.validate()?;
        }
        for (k, comps) in &self.squares {
            let g = CellRef::stored(2, *k);
            let (a, b) = (i_cat.s_i(0, &g), i_cat.t_i(0, &g));
            homcart::validate_family(
                &self.fibers[b.index],
                &self.fibers[a.index],
                &self.arrow_functor(&i_cat.tgt(&g)),
                &self.arrow_functor(&i_cat.src(&g)),
                comps,
            )?;
        }
        Ok(())
    }
}

/// Apply a cell of a cartesian hom to a cell of its source category: 0-cells
/// act as their functor, higher cells paste the component at the 0-target
/// with the source-functor image.
pub fn act_on(hc: &HomCart, v: &CellRef, z: &CellRef) -> Result<CellRef> {
    let m = v.dim.max(z.dim);
    let v = v.padded(m - v.dim);
    let z = z.padded(m - z.dim);
    if m == 0 {
        return Ok(hc.functors[v.index].apply(&z));
    }
    let fam = hc.fam_of(&v);
    let pos = hc.a.t_i(0, &z).index;
    hc.b.comp(0, &fam.components[pos], &hc.functors[fam.u].apply(&z))
}

/// Push a cylinder tuple along a cell of a cartesian hom: ends and top act
/// by the cell itself, the walls at layer l act by its dimension-l faces
/// (minus walls through the source face, plus walls through the target).
pub fn act_tuple_left(hc: &HomCart, v: &CellRef, t: &CylTuple) -> Result<CylTuple> {
    let mut t = t.clone();
    while t.degree() < v.dim {
        t = cyl::tuple_unit(&t);
    }
    let k = t.degree();
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for l in 0..k {
        let (fm, fp) = if l < v.dim {
            (hc.cat.s_i(l, v), hc.cat.t_i(l, v))
        } else {
            (*v, *v)
        };
        minus.push(act_on(hc, &fm, &t.minus[l])?);
        plus.push(act_on(hc, &fp, &t.plus[l])?);
    }
    Ok(CylTuple {
        x: act_on(hc, v, &t.x)?,
        y: act_on(hc, v, &t.y)?,
        minus,
        plus,
        top: act_on(hc, v, &t.top)?,
    })
}

/// The Grothendieck total category of a diagram, with all the intermediate
/// homs retained for the cross-checks.
pub struct Grothendieck {
    pub io: Arc<OmegaCat>,
    pub objects: Vec<(usize, CellRef)>,
    pub hio: BTreeMap<(usize, usize), crate::hom::HomCat>,
    pub hcart: BTreeMap<(usize, usize), HomCart>,
    pub acts: BTreeMap<(usize, usize), OmegaFunctor>,
    pub cyls: Vec<Arc<CylCat>>,
    pub spans: BTreeMap<(usize, usize), Span>,
    pub assembly: Assembly,
    pub total: Arc<OmegaCat>,
    pub proj: OmegaFunctor,
}

/// Build the total category: objects are pairs of a base object and a fiber
/// object; the hom to `(i', x')` pairs a reversed base arrow `w` with a
/// cylinder in the fiber at `i'` from `x'` to the image of `x` under the
/// functor of `w`; composition pushes the first cylinder along the second
/// arrow's action and concatenates. The assembled category is then fully
/// dualized and the projection to the base extracted.
pub fn integrate(fd: &FData) -> Result<Grothendieck> {
    fd.validate()?;
    let i_cat = &fd.base;
    let ni = i_cat.stored_count(0);
    let io = Arc::new(omega::dual(i_cat, &omega::all_dims(i_cat.truncation)));
    let mut hio = BTreeMap::new();
    let mut hcart = BTreeMap::new();
    let mut acts = BTreeMap::new();
    for i in 0..ni {
        for ip in 0..ni {
            let h = crate::hom::hom_cat(&io, CellRef::stored(0, i), CellRef::stored(0, ip))?;
            let hc = homcart::hom_cart(&fd.fibers[i], &fd.fibers[ip])?;
            let functor_of = |r: &CellRef| -> Result<CellRef> {
                let amb = h.to_c(r);
                let f = fd.arrow_functor(&amb.base().padded(amb.dim - amb.base_dim()));
                hc.functor_index(&f)
                    .map(|k| CellRef::stored(0, k))
                    .ok_or_else(|| {
                        Error::DanglingReference("arrow functor not enumerated".into())
                    })
            };
            let mut map = vec![h
                .cat
                .stored(0)
                .iter()
                .map(functor_of)
                .collect::<Result<Vec<_>>>()?];
            if h.cat.cells.len() > 1 {
                let layer = h
                    .cat
                    .stored(1)
                    .iter()
                    .map(|r| {
                        let amb = h.to_c(r);
                        Ok(hc.cell_of(&Fam {
                            u: map[0][h.cat.src(r).index].index,
                            v: map[0][h.cat.tgt(r).index].index,
                            components: fd.squares[&amb.index].clone(),
                        }))
                    })
                    .collect::<Result<Vec<_>>>()?;
                map.push(layer);
            }
            let act = OmegaFunctor::from_map(&h.cat, &hc.cat, map);
            act.validate()?;
            hio.insert((i, ip), h);
            hcart.insert((i, ip), hc);
            acts.insert((i, ip), act);
        }
    }
    let cyls = fd
        .fibers
        .iter()
        .map(|f| cyl::cyl(f).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let mut objects = Vec::new();
    for (i, f) in fd.fibers.iter().enumerate() {
        for x in f.stored(0) {
            objects.push((i, x));
        }
    }
    let fib_trunc = fd.fibers.iter().map(|f| f.truncation).max().unwrap_or(0);
    let total_trunc = i_cat.truncation.max(fib_trunc + 1);
    let ht = total_trunc - 1;
    let mut spans = BTreeMap::new();
    for (oi, &(i, x)) in objects.iter().enumerate() {
        for (oj, &(ip, xp)) in objects.iter().enumerate() {
            let h = &hio[&(i, ip)];
            let hc = &hcart[&(i, ip)];
            let act = &acts[&(i, ip)];
            let cylc = &cyls[ip];
            let span = limits::filtered_product(&h.cat, &cylc.cat, ht, |w, y| {
                let tu = cylc.tuple_of(y);
                tu.x == xp.padded(y.dim) && tu.y == hc.component(&act.apply(w), x.index)
            })?;
            spans.insert((oi, oj), span);
        }
    }
    let mut units = BTreeMap::new();
    for (oi, &(i, x)) in objects.iter().enumerate() {
        let wid = hio[&(i, i)].from_c(&CellRef::stored(0, i).padded(1));
        let kap = cyls[i].tuple_ref(&cyl::kappa_tuple(&fd.fibers[i], 0, &x));
        units.insert(oi, spans[&(oi, oi)].pair(&wid, &kap));
    }
    let spec = HomSpec {
        truncation: ht + 1,
        objects: objects
            .iter()
            .map(|&(i, x)| format!("{}.{}", i_cat.name(&CellRef::stored(0, i)), fd.fibers[i].name(&x)))
            .collect(),
        homs: spans.iter().map(|(&k, s)| (k, s.cat.clone())).collect(),
        units,
    };
    let comp0 = |oi: usize, oj: usize, ok: usize, x: &CellRef, y: &CellRef| -> Result<CellRef> {
        let (bi, _) = objects[oi];
        let (bj, _) = objects[oj];
        let (bk, _) = objects[ok];
        let (w2, t2) = spans[&(oj, ok)].components(x);
        let (w1, t1) = spans[&(oi, oj)].components(y);
        let wamb = io.comp(0, &hio[&(bj, bk)].to_c(&w2), &hio[&(bi, bj)].to_c(&w1))?;
        let w = hio[&(bi, bk)].from_c(&wamb);
        let v2 = acts[&(bj, bk)].apply(&w2);
        let beta = act_tuple_left(&hcart[&(bj, bk)], &v2, &cyls[bj].tuple_of(&t1))?;
        let mid = conc_pad(&fd.fibers[bk], 0, &beta, &cyls[bk].tuple_of(&t2))?;
        let mref = cyls[bk].tuple_ref(&mid);
        let d = w.dim.max(mref.dim);
        Ok(spans[&(oi, ok)].pair(&w.padded(d - w.dim), &mref.padded(d - mref.dim)))
    };
    let assembly = assemble::assemble(spec, &comp0)?;
    let mut map = vec![objects
        .iter()
        .map(|&(i, _)| CellRef::stored(0, i))
        .collect::<Vec<_>>()];
    for d in 1..assembly.cat.cells.len() {
        let layer = assembly
            .cat
            .stored(d)
            .iter()
            .map(|r| {
                let (oi, oj, hcell) = assembly.hom_of(r);
                let (bi, _) = objects[oi];
                let (bj, _) = objects[oj];
                let (w, _) = spans[&(oi, oj)].components(&hcell);
                hio[&(bi, bj)].to_c(&w.padded(hcell.dim - w.dim))
            })
            .collect();
        map.push(layer);
    }
    let pre = OmegaFunctor::from_map(&assembly.cat, &io, map.clone());
    pre.validate()?;
    let total = Arc::new(omega::dual(
        &assembly.cat,
        &omega::all_dims(assembly.cat.truncation),
    ));
    let proj = OmegaFunctor::from_map(&total, i_cat, map);
    proj.validate()?;
    Ok(Grothendieck {
        io,
        objects,
        hio,
        hcart,
        acts,
        cyls,
        spans,
        assembly,
        total,
        proj,
    })
}

/// The actions are functorial across homs: composing reversed base arrows
/// and then acting equals horizontally composing the actions. Returns the
/// number of pairs checked.
pub fn integrate_functoriality_check(fd: &FData, ig: &Grothendieck) -> Result<usize> {
    let ni = fd.base.stored_count(0);
    let mut checked = 0;
    for i in 0..ni {
        for j in 0..ni {
            for k in 0..ni {
                let (hjk, hij, hik) = (&ig.hio[&(j, k)], &ig.hio[&(i, j)], &ig.hio[&(i, k)]);
                for d2 in 0..hjk.cat.cells.len() {
                    for d1 in 0..hij.cat.cells.len() {
                        for w2 in hjk.cat.all_cells(d2) {
                            for w1 in hij.cat.all_cells(d1) {
                                let wc = hik
                                    .from_c(&ig.io.comp(0, &hjk.to_c(&w2), &hij.to_c(&w1))?);
                                let lhs = ig.acts[&(i, k)].apply(&wc);
                                let rhs = hom_hcomp(
                                    &ig.hcart[&(j, k)],
                                    &ig.hcart[&(i, j)],
                                    &ig.hcart[&(i, k)],
                                    &ig.acts[&(j, k)].apply(&w2),
                                    &ig.acts[&(i, j)].apply(&w1),
                                )?;
                                let m = lhs.dim.max(rhs.dim);
                                if lhs.padded(m - lhs.dim) != rhs.padded(m - rhs.dim) {
                                    return Err(Error::law(
                                        "action functoriality",
                                        format!("homs ({i},{j},{k})"),
                                    ));
                                }
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// Each hom of the total is the pullback of the matching hom of the
/// instance slice (pairs of a cartesian-hom cell and a cylinder) along the
/// action, cell-for-cell. Returns the number of object pairs checked.
pub fn integrate_cartesian_check(fd: &FData, ig: &Grothendieck) -> Result<usize> {
    let fib_trunc = fd.fibers.iter().map(|f| f.truncation).max().unwrap_or(0);
    let ht = fd.base.truncation.max(fib_trunc + 1) - 1;
    let mut checked = 0;
    for (oi, &(i, x)) in ig.objects.iter().enumerate() {
        for (oj, &(ip, xp)) in ig.objects.iter().enumerate() {
            let hc = &ig.hcart[&(i, ip)];
            let cylc = &ig.cyls[ip];
            let slice = limits::filtered_product(&hc.cat, &cylc.cat, ht, |v, y| {
                let tu = cylc.tuple_of(y);
                tu.x == xp.padded(y.dim) && tu.y == hc.component(v, x.index)
            })?;
            let act = &ig.acts[&(i, ip)];
            let pull = limits::filtered_product(&ig.hio[&(i, ip)].cat, &slice.cat, ht, |w, s| {
                act.apply(w) == slice.p1.apply(s)
            })?;
            let span = &ig.spans[&(oi, oj)];
            let map = (0..pull.cat.cells.len())
                .map(|d| {
                    pull.cat
                        .stored(d)
                        .iter()
                        .map(|r| {
                            let (w, s) = pull.components(r);
                            let (_, t) = slice.components(&s.padded(r.dim - s.dim));
                            let m = w.dim.max(t.dim);
                            span.pair(&w.padded(m - w.dim), &t.padded(m - t.dim))
                        })
                        .collect()
                })
                .collect();
            let h = OmegaFunctor::from_map(&pull.cat, &span.cat, map);
            h.validate()?;
            if !h.is_bijective() {
                return Err(Error::MismatchWitness(format!(
                    "hom ({oi},{oj}) is not the pullback of the slice hom"
                )));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Restriction of a category to cells of dimension at most `n` (tables cut,
/// truncation lowered).
pub fn truncate_cat(c: &OmegaCat, n: usize) -> Result<OmegaCat> {
    let keep = (n + 1).min(c.cells.len());
    let cells = c.cells[..keep].to_vec();
    let (src, tgt, comp) = omega::tables(c);
    let src = src
        .iter()
        .filter(|((d, _), _)| *d < keep)
        .map(|(&k, &v)| (k, v))
        .collect();
    let tgt = tgt
        .iter()
        .filter(|((d, _), _)| *d < keep)
        .map(|(&k, &v)| (k, v))
        .collect();
    let comp = comp
        .iter()
        .filter(|((_, x, y), z)| x.dim < keep && y.dim < keep && z.dim < keep)
        .map(|(&k, &v)| (k, v))
        .collect();
    omega::from_tables(n.min(c.truncation), cells, src, tgt, comp)
}

/// Independent low-dimensional construction of the total category, directly
/// from the cell-level description: objects are pairs `(i, x)`, 1-cells are
/// pairs `(f: i -> i', a: x -> F_f(x'))`, 2-cells are pairs `(g: f => f',
/// L: a => sq_g(x') . a')`; compositions are given by closed formulas. Built
/// for bases of truncation at most 2 and compared against `integrate` after
/// truncating the total to dimension 2.
pub fn direct_grothendieck_oracle(fd: &FData) -> Result<Arc<OmegaCat>> {
    fd.validate()?;
    let i_cat = &fd.base;
    let fib_trunc = fd.fibers.iter().map(|f| f.truncation).max().unwrap_or(0);
    let trunc = 2.min(i_cat.truncation.max(fib_trunc + 1));
    // objects
    let mut objects = Vec::new();
    let mut obj_idx: BTreeMap<(usize, CellRef), usize> = BTreeMap::new();
    for (i, fib) in fd.fibers.iter().enumerate() {
        for x in fib.stored(0) {
            obj_idx.insert((i, x), objects.len());
            objects.push((i, x));
        }
    }
    // 1-cells: (source object, target object, base 1-cell, fiber 1-cell)
    let mut ones: Vec<(usize, usize, CellRef, CellRef)> = Vec::new();
    let mut one_idx: BTreeMap<(usize, CellRef, CellRef), usize> = BTreeMap::new();
    for f in i_cat.all_cells(1) {
        let (a, b) = (i_cat.src(&f), i_cat.tgt(&f));
        let ff = fd.arrow_functor(&f);
        for xp in fd.fibers[b.index].stored(0) {
            let toi = obj_idx[&(b.index, xp)];
            for al in fd.fibers[a.index].all_cells(1) {
                if fd.fibers[a.index].tgt(&al) != ff.apply(&xp) {
                    continue;
                }
                if f.base_dim() == 0 && al.base_dim() == 0 {
                    continue; // the identity pair
                }
                let soi = obj_idx[&(a.index, fd.fibers[a.index].src(&al))];
                one_idx.insert((toi, f, al), ones.len());
                ones.push((soi, toi, f, al));
            }
        }
    }
    let one_ref = |toi: usize, f: &CellRef, al: &CellRef| -> CellRef {
        if f.base_dim() == 0 && al.base_dim() == 0 {
            return CellRef {
                dim: 1,
                index: toi,
                pad: 1,
            };
        }
        CellRef::stored(1, one_idx[&(toi, *f, *al)])
    };
    // 2-cells: (source 1-cell ref, target 1-cell ref, base 2-cell, fiber 2-cell)
    let mut twos: Vec<(CellRef, CellRef, CellRef, CellRef)> = Vec::new();
    let mut two_idx: BTreeMap<(CellRef, CellRef, CellRef), usize> = BTreeMap::new();
    if trunc >= 2 {
        for g in i_cat.all_cells(2) {
            let (a, b) = (i_cat.s_i(0, &g), i_cat.t_i(0, &g));
            let (f, fp) = (i_cat.src(&g), i_cat.tgt(&g));
            let fib = &fd.fibers[a.index];
            let ffp = fd.arrow_functor(&fp);
            for xp in fd.fibers[b.index].stored(0) {
                let toi = obj_idx[&(b.index, xp)];
                for alp in fib.all_cells(1) {
                    if fib.tgt(&alp) != ffp.apply(&xp) {
                        continue;
                    }
                    let mid = fib.comp(0, &fd.square_component(&g, &xp), &alp)?;
                    for lam in fib.all_cells(2) {
                        if fib.tgt(&lam) != mid {
                            continue;
                        }
                        if g.base_dim() <= 1 && lam.base_dim() <= 1 {
                            continue; // a unit on a 1-cell pair
                        }
                        let al = fib.src(&lam);
                        let t1 = one_ref(toi, &fp, &alp);
                        two_idx.insert((t1, g, lam), twos.len());
                        twos.push((one_ref(toi, &f, &al), t1, g, lam));
                    }
                }
            }
        }
    }
    let two_ref = |t1: &CellRef, g: &CellRef, lam: &CellRef| -> CellRef {
        if g.base_dim() <= 1 && lam.base_dim() <= 1 {
            return t1.padded(1);
        }
        CellRef::stored(2, two_idx[&(*t1, *g, *lam)])
    };
    // tables
    let mut cells = vec![objects
        .iter()
        .map(|&(i, x)| {
            format!(
                "{}.{}",
                i_cat.name(&CellRef::stored(0, i)),
                fd.fibers[i].name(&x)
            )
        })
        .collect::<Vec<_>>()];
    let fib_of = |oi: usize| -> &Arc<OmegaCat> { &fd.fibers[objects[oi].0] };
    cells.push(
        ones.iter()
            .enumerate()
            .map(|(k, &(soi, _, f, al))| {
                format!("[{k}:{}|{}]", i_cat.name(&f), fib_of(soi).name(&al))
            })
            .collect(),
    );
    if !twos.is_empty() {
        cells.push(
            twos.iter()
                .enumerate()
                .map(|(k, &(s1, _, g, lam))| {
                    let soi = if s1.base_dim() == 0 {
                        objects[s1.index].0
                    } else {
                        ones[s1.index].0
                    };
                    let _ = soi;
                    format!("[[{k}:{}|{}]]", i_cat.name(&g), i_cat.name(&lam.base()))
                })
                .collect(),
        );
    }
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for (k, &(soi, toi, _, _)) in ones.iter().enumerate() {
        src.insert((1, k), CellRef::stored(0, soi));
        tgt.insert((1, k), CellRef::stored(0, toi));
    }
    for (k, &(s1, t1, _, _)) in twos.iter().enumerate() {
        src.insert((2, k), s1);
        tgt.insert((2, k), t1);
    }
    // the pair-data of any 1- or 2-cell reference
    let one_data = |r: &CellRef| -> (usize, usize, CellRef, CellRef) {
        assert_eq!(r.dim, 1);
        if r.base_dim() == 0 {
            let (i, x) = objects[r.index];
            let f = CellRef::stored(0, i).padded(1);
            return (r.index, r.index, f, x.padded(1));
        }
        ones[r.index]
    };
    let two_data = |r: &CellRef| -> (CellRef, CellRef, CellRef, CellRef) {
        assert_eq!(r.dim, 2);
        if r.base_dim() <= 1 {
            let o = CellRef {
                dim: 1,
                index: r.index,
                pad: 1 - r.base_dim(),
            };
            let (_, _, f, al) = one_data(&o);
            return (o, o, f.padded(1), al.padded(1));
        }
        let (s1, t1, g, lam) = twos[r.index];
        (s1, t1, g, lam)
    };
    // composite of two 1-cell pairs (second after first)
    let comp11 = |toi: usize,
                  f2: &CellRef,
                  al2: &CellRef,
                  f1: &CellRef,
                  al1: &CellRef,
                  fib: &Arc<OmegaCat>|
     -> Result<(CellRef, CellRef)> {
        let f = i_cat.comp(0, f2, f1)?;
        let al = fib.comp(0, &fd.arrow_functor(f1).apply(al2), al1)?;
        let _ = toi;
        Ok((f, al))
    };
    let mut comp: BTreeMap<(usize, CellRef, CellRef), CellRef> = BTreeMap::new();
    // level 0: all composable stored pairs among 1- and 2-cells
    let stored_cells: Vec<CellRef> = (0..ones.len())
        .map(|k| CellRef::stored(1, k))
        .chain((0..twos.len()).map(|k| CellRef::stored(2, k)))
        .collect();
    for r2 in &stored_cells {
        for r1 in &stored_cells {
            // 0-boundary objects
            let (mid2, out2) = if r2.dim == 1 {
                let (s, t, _, _) = one_data(r2);
                (s, t)
            } else {
                let (s1, _, _, _) = two_data(r2);
                let (s, t, _, _) = one_data(&s1);
                (s, t)
            };
            let (_in1, mid1) = if r1.dim == 1 {
                let (s, t, _, _) = one_data(r1);
                (s, t)
            } else {
                let (s1, _, _, _) = two_data(r1);
                let (s, t, _, _) = one_data(&s1);
                (s, t)
            };
            if mid1 != mid2 {
                continue;
            }
            let toi = out2;
            let fib = fib_of(if r1.dim == 1 {
                one_data(r1).0
            } else {
                one_data(&two_data(r1).0).0
            });
            let z = match (r2.dim, r1.dim) {
                (1, 1) => {
                    let (_, _, f2, al2) = one_data(r2);
                    let (_, _, f1, al1) = one_data(r1);
                    let (f, al) = comp11(toi, &f2, &al2, &f1, &al1, fib)?;
                    one_ref(toi, &f, &al)
                }
                (2, 1) => {
                    let (s2, t2, g2, lam2) = two_data(r2);
                    let (_, _, f1, al1) = one_data(r1);
                    let g = i_cat.comp(0, &g2, &f1)?;
                    let lam = fib.comp(0, &fd.arrow_functor(&f1).apply(&lam2), &al1)?;
                    let (_, _, fs, als) = one_data(&s2);
                    let (_, _, ft, alt) = one_data(&t2);
                    let (f_s, al_s) = comp11(toi, &fs, &als, &f1, &al1, fib)?;
                    let (f_t, al_t) = comp11(toi, &ft, &alt, &f1, &al1, fib)?;
                    let _ = (f_s, al_s);
                    let t1 = one_ref(toi, &f_t, &al_t);
                    two_ref(&t1, &g, &lam)
                }
                (1, 2) => {
                    let (_, _, f2, al2) = one_data(r2);
                    let (_, t1r, g1, lam1) = two_data(r1);
                    let (_, _, f1t, al1t) = one_data(&t1r);
                    let g = i_cat.comp(0, &f2, &g1)?;
                    let lam = fib.comp(0, &fd.arrow_functor(&i_cat.src(&g1)).apply(&al2), &lam1)?;
                    let (f_t, al_t) = comp11(toi, &f2, &al2, &f1t, &al1t, fib)?;
                    let t1 = one_ref(toi, &f_t, &al_t);
                    two_ref(&t1, &g, &lam)
                }
                (2, 2) => {
                    // paste: (r2 . tgt(r1)) then vertically (src(r2) . r1)
                    let (s2r, _, g2, lam2) = two_data(r2);
                    let (_, t1r, g1, lam1) = two_data(r1);
                    let (_, _, f1t, al1t) = one_data(&t1r);
                    let (_, _, f2s, al2s) = one_data(&s2r);
                    // whisker r2 by the target 1-cell of r1
                    let ga = i_cat.comp(0, &g2, &f1t)?;
                    let la = fib.comp(0, &fd.arrow_functor(&f1t).apply(&lam2), &al1t)?;
                    // whisker r1 by the source 1-cell of r2
                    let gb = i_cat.comp(0, &f2s, &g1)?;
                    let lb =
                        fib.comp(0, &fd.arrow_functor(&i_cat.src(&g1)).apply(&al2s), &lam1)?;
                    // vertical pasting at the shared middle
                    let g = i_cat.comp(1, &ga, &gb)?;
                    let (_, xp) = objects[toi];
                    let lam = fib.comp(
                        1,
                        &fib.comp(0, &fd.square_component(&gb, &xp), &la)?,
                        &lb,
                    )?;
                    let (s2t, t2t, g2t, lam2t) = two_data(r2);
                    let _ = (s2t, g2t, lam2t);
                    let (_, _, f2t, al2t) = one_data(&t2t);
                    let (f_t, al_t) = comp11(toi, &f2t, &al2t, &f1t, &al1t, fib)?;
                    let t1 = one_ref(toi, &f_t, &al_t);
                    two_ref(&t1, &g, &lam)
                }
                _ => unreachable!(),
            };
            comp.insert((0, *r2, *r1), z);
        }
    }
    // level 1: vertically composable stored 2-cells
    for (k2, &(s2, _, g2, lam2)) in twos.iter().enumerate() {
        for (k1, &(_, t1, g1, lam1)) in twos.iter().enumerate() {
            if t1 != s2 {
                continue;
            }
            let (soi, toi, _, _) = one_data(&t1);
            let _ = soi;
            let fib = fib_of(one_data(&t1).0);
            let (_, xp) = objects[toi];
            let g = i_cat.comp(1, &g2, &g1)?;
            let lam = fib.comp(
                1,
                &fib.comp(0, &fd.square_component(&g1, &xp), &lam2)?,
                &lam1,
            )?;
            let t1r = twos[k2].1;
            comp.insert(
                (1, CellRef::stored(2, k2), CellRef::stored(2, k1)),
                two_ref(&t1r, &g, &lam),
            );
        }
    }
    let cat = omega::from_tables(trunc, cells, src, tgt, comp)?;
    Ok(Arc::new(cat))
}

/// Functor data for the Gray-valued total category: one fiber per base
/// object and, for each nonempty mapping hom, the layer-wise images (in the
/// cartesian hom of the fibers) of the cells of the reversed mapping hom.
pub struct GrayFData {
    pub base: GrayCat,
    pub fibers: Vec<Arc<OmegaCat>>,
    /// keyed (i, i'): cells of the full dual of base.hom(i', i), layer by
    /// layer, sent into hom_cart(F(i), F(i')).cat
    pub act_maps: BTreeMap<(usize, usize), Vec<Vec<CellRef>>>,
}

/// View strict Grothendieck input as Gray input over the strict base seen
/// as a Gray category; the action maps are the same functors read through
/// the cell-for-cell identification of the reversed mapping homs.
pub fn gray_fdata_from_strict(fd: &FData) -> Result<GrayFData> {
    let base = crate::gray::gray_from_omega(&fd.base)?;
    let io = Arc::new(omega::dual(&fd.base, &omega::all_dims(fd.base.truncation)));
    let mut act_maps = BTreeMap::new();
    for &(a, b) in base.homs.keys() {
        let (i, ip) = (b, a);
        let h = crate::hom::hom_cat(&io, CellRef::stored(0, i), CellRef::stored(0, ip))?;
        let hc = homcart::hom_cart(&fd.fibers[i], &fd.fibers[ip])?;
        let functor_of = |r: &CellRef| -> Result<CellRef> {
            let amb = h.to_c(r);
            let f = fd.arrow_functor(&amb.base().padded(amb.dim - amb.base_dim()));
            hc.functor_index(&f)
                .map(|k| CellRef::stored(0, k))
                .ok_or_else(|| Error::DanglingReference("arrow functor not enumerated".into()))
        };
        let mut map = vec![h
            .cat
            .stored(0)
            .iter()
            .map(functor_of)
            .collect::<Result<Vec<_>>>()?];
        if h.cat.cells.len() > 1 {
            let layer = h
                .cat
                .stored(1)
                .iter()
                .map(|r| {
                    let amb = h.to_c(r);
                    Ok(hc.cell_of(&Fam {
                        u: map[0][h.cat.src(r).index].index,
                        v: map[0][h.cat.tgt(r).index].index,
                        components: fd.squares[&amb.index].clone(),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            map.push(layer);
        }
        act_maps.insert((i, ip), map);
    }
    Ok(GrayFData {
        base,
        fibers: fd.fibers.clone(),
        act_maps,
    })
}

/// The constant functor at the point: every slot collapses and the total
/// should reproduce the base.
pub fn gray_fdata_const_point(base: &GrayCat) -> Result<GrayFData> {
    let pt = Arc::new(omega::globe(0, 0));
    let fibers: Vec<Arc<OmegaCat>> = (0..base.objects.len()).map(|_| pt.clone()).collect();
    let mut act_maps = BTreeMap::new();
    for &(a, b) in base.homs.keys() {
        let h = &base.homs[&(a, b)];
        let map = (0..h.cells.len())
            .map(|d| {
                h.stored(d)
                    .iter()
                    .map(|_| CellRef::stored(0, 0).padded(d))
                    .collect()
            })
            .collect();
        act_maps.insert((b, a), map);
    }
    Ok(GrayFData {
        base: base.clone(),
        fibers,
        act_maps,
    })
}

pub struct GrayIntegration {
    pub objects: Vec<(usize, CellRef)>,
    pub hio: BTreeMap<(usize, usize), Arc<OmegaCat>>,
    pub hcart: BTreeMap<(usize, usize), HomCart>,
    pub acts: BTreeMap<(usize, usize), OmegaFunctor>,
    pub xcs: Vec<Arc<OmegaCat>>,
    pub cyls: Vec<Arc<CylCat>>,
    pub spans: BTreeMap<(usize, usize), Span>,
    pub pre: GrayCat,
    pub total: GrayCat,
    pub proj: crate::gray::GrayFunctor,
}

/// Gray-valued total category: objects pair a base object with a fiber
/// object; the hom to `(i', x')` pairs a cell of the reversed mapping hom
/// with a lax cylinder (a cylinder in the even-dual of the fiber at `i'`)
/// from `x'` to the image of `x`. Composition composes the reversed-hom
/// parts through the base and pushes-then-concatenates the cylinders. The
/// glued category is anti-oriented; the full dual is returned as the total,
/// with its projection to the base.
pub fn gray_integrate(fd: &GrayFData) -> Result<GrayIntegration> {
    let base = &fd.base;
    let ni = base.objects.len();
    if fd.fibers.len() != ni {
        return Err(Error::MalformedSpec(format!(
            "{} fibers for {ni} base objects",
            fd.fibers.len()
        )));
    }
    let mut hio = BTreeMap::new();
    let mut hcart = BTreeMap::new();
    let mut acts = BTreeMap::new();
    for &(a, b) in base.homs.keys() {
        let (i, ip) = (b, a);
        let h = Arc::new(omega::dual(
            &base.homs[&(a, b)],
            &omega::all_dims(base.truncation.max(1)),
        ));
        let hc = homcart::hom_cart(&fd.fibers[i], &fd.fibers[ip])?;
        let map = fd
            .act_maps
            .get(&(i, ip))
            .ok_or_else(|| Error::MalformedSpec(format!("no action for hom ({a},{b})")))?;
        let act = OmegaFunctor::from_map(&h, &hc.cat, map.clone());
        act.validate()?;
        if i == ip {
            let idref = hc
                .functor_index(&OmegaFunctor::identity(&fd.fibers[i]))
                .map(|k| CellRef::stored(0, k))
                .ok_or_else(|| Error::DanglingReference("identity functor".into()))?;
            if act.apply(&base.units[&i]) != idref {
                return Err(Error::MismatchWitness(format!(
                    "unit of object {i} does not act as the identity"
                )));
            }
        }
        hio.insert((i, ip), h);
        hcart.insert((i, ip), hc);
        acts.insert((i, ip), act);
    }
    let xcs: Vec<Arc<OmegaCat>> = fd
        .fibers
        .iter()
        .map(|f| Arc::new(omega::dual(f, &omega::even_dims(f.truncation.max(1)))))
        .collect();
    let cyls = xcs
        .iter()
        .map(|x| cyl::cyl(x).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let mut objects = Vec::new();
    for (i, f) in fd.fibers.iter().enumerate() {
        for x in f.stored(0) {
            objects.push((i, x));
        }
    }
    let fib_trunc = fd.fibers.iter().map(|f| f.truncation).max().unwrap_or(0);
    let ht = base.truncation.max(fib_trunc);
    let mut spans = BTreeMap::new();
    for (oi, &(i, x)) in objects.iter().enumerate() {
        for (oj, &(ip, xp)) in objects.iter().enumerate() {
            let Some(h) = hio.get(&(i, ip)) else {
                continue;
            };
            let hc = &hcart[&(i, ip)];
            let act = &acts[&(i, ip)];
            let cylc = &cyls[ip];
            let span = limits::filtered_product(h, &cylc.cat, ht, |w, y| {
                let tu = cylc.tuple_of(y);
                tu.x == xp.padded(y.dim) && tu.y == hc.component(&act.apply(w), x.index)
            })?;
            // an empty hom is left absent, matching the Gray convention
            if span.cat.stored_count(0) > 0 {
                spans.insert((oi, oj), span);
            }
        }
    }
    let mut units = BTreeMap::new();
    for (oi, &(i, x)) in objects.iter().enumerate() {
        let kap = cyls[i].tuple_ref(&cyl::kappa_tuple(&xcs[i], 0, &x));
        units.insert(oi, spans[&(oi, oi)].pair(&base.units[&i], &kap));
    }
    let mut comp0 = crate::gray::Comp0Table::new();
    for (oa, &(bi, _)) in objects.iter().enumerate() {
        for (ob, &(bj, _)) in objects.iter().enumerate() {
            for (oc, &(bk, _)) in objects.iter().enumerate() {
                let (Some(sbc), Some(sab), Some(sac)) = (
                    spans.get(&(ob, oc)),
                    spans.get(&(oa, ob)),
                    spans.get(&(oa, oc)),
                ) else {
                    continue;
                };
                for dx in 0..=ht {
                    for dy in 0..=(ht - dx) {
                        for x2 in sbc.cat.stored(dx) {
                            if ob == oc && x2 == units[&ob] {
                                continue;
                            }
                            for y1 in sab.cat.stored(dy) {
                                if oa == ob && y1 == units[&oa] {
                                    continue;
                                }
                                let (w2, t2) = sbc.components(&x2);
                                let (w1, t1) = sab.components(&y1);
                                let w = base.comp0(bk, bj, bi, &w1, &w2)?;
                                let v2 = acts[&(bj, bk)].apply(&w2);
                                let beta = act_tuple_left(
                                    &hcart[&(bj, bk)],
                                    &v2,
                                    &cyls[bj].tuple_of(&t1),
                                )?;
                                let mid =
                                    conc_pad(&xcs[bk], 0, &beta, &cyls[bk].tuple_of(&t2))?;
                                let mref = cyls[bk].tuple_ref(&mid);
                                let d = dx + dy;
                                comp0.insert(
                                    (oa, ob, oc, x2, y1),
                                    sac.pair(&w.padded(d - w.dim), &mref.padded(d - mref.dim)),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    let pre = GrayCat {
        orientation: crate::gray::Orientation::Anti,
        truncation: ht,
        objects: objects
            .iter()
            .map(|&(i, x)| format!("{}.{}", base.objects[i], fd.fibers[i].name(&x)))
            .collect(),
        homs: spans.iter().map(|(&k, s)| (k, s.cat.clone())).collect(),
        units,
        comp0,
    };
    crate::gray::validate_gray(&pre)?;
    let total = crate::gray::gray_dual(&pre, crate::gray::GrayDuality::O);
    crate::gray::validate_gray(&total)?;
    let mut hom_maps = BTreeMap::new();
    for (&(u, v), h) in &total.homs {
        // the total hom (u, v) is the dualized span at (v, u); its reversed
        // base component reads back as a cell of base.hom(i_u, i_v)
        let span = &spans[&(v, u)];
        let (iu, iv) = (objects[u].0, objects[v].0);
        let map = (0..h.cells.len())
            .map(|d| {
                h.stored(d)
                    .iter()
                    .map(|r| {
                        let (w, _) = span.components(r);
                        w.padded(d - w.dim)
                    })
                    .collect()
            })
            .collect();
        let f = OmegaFunctor::from_map(h, &base.homs[&(iu, iv)], map);
        f.validate()?;
        hom_maps.insert((u, v), f);
    }
    let proj = crate::gray::GrayFunctor {
        object_map: objects.iter().map(|&(i, _)| i).collect(),
        hom_maps,
    };
    proj.validate(&total, base)?;
    Ok(GrayIntegration {
        objects,
        hio,
        hcart,
        acts,
        xcs,
        cyls,
        spans,
        pre,
        total,
        proj,
    })
}
