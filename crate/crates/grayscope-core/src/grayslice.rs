//! The right action of a Gray category on cylinders in its homs, the slice
//! Gray category over an object, its forgetful functor, fibers, and dual
//! slices.
//!
//! A degree-k cylinder in homs(b,c) acted by an l-cell of homs(a,b) yields a
//! degree-(k+l) cylinder in homs(a,c). Whiskering by a 1-cell (l = 0) is
//! componentwise; the action of a higher cell on a hom 1-cell (k = 0) has
//! the interchanger as its filler; the mixed shapes are pinned by the
//! boundary equations, with the module-axiom suite as the behavioural
//! oracle.

use crate::cyl::{
    self, conc, enumerate_tuples, kappa_tuple, map_tuple, tuple_unit, validate_tuple, CylCat,
    CylTuple,
};
use crate::error::{Error, Result};
use crate::gray::{gray_dual, GrayCat, GrayDuality, GrayFunctor, Orientation};
use crate::limits::{self, Span};
use crate::omega::{self, CellRef, OmegaCat, OmegaFunctor};
use std::collections::BTreeMap;
use std::sync::Arc;

/// `alpha ∘r u` for alpha a cylinder in homs(b,c) and u a cell of homs(a,b).
pub fn cyl_act_right(
    g: &GrayCat,
    (a, b, c): (usize, usize, usize),
    alpha: &CylTuple,
    u: &CellRef,
) -> Result<CylTuple> {
    let k = alpha.degree();
    let l = u.dim;
    if k + l > 3 {
        return Err(Error::DepthUnsupported { k, l });
    }
    let o0 = |z: &CellRef, w: &CellRef| g.comp0(a, b, c, z, w);
    if l == 0 {
        // whiskering by a 1-cell of G: componentwise
        return Ok(CylTuple {
            x: o0(&alpha.x, u)?,
            y: o0(&alpha.y, u)?,
            minus: alpha.minus.iter().map(|z| o0(z, u)).collect::<Result<_>>()?,
            plus: alpha.plus.iter().map(|z| o0(z, u)).collect::<Result<_>>()?,
            top: o0(&alpha.top, u)?,
        });
    }
    let hab = g
        .hom(a, b)
        .ok_or_else(|| Error::DanglingReference(format!("hom ({a},{b})")))?;
    let hac = g
        .hom(a, c)
        .ok_or_else(|| Error::DanglingReference(format!("hom ({a},{c})")))?;
    // At the truncation boundary the filler lives one dimension above the
    // hom truncation; the top level of a truncated hom composes strictly,
    // so the filler degenerates to an identity on the (then equal) pastings.
    let filler = |t: Result<CellRef>, x: &CellRef, y: &CellRef, minus: &[CellRef], plus: &[CellRef]| -> Result<CellRef> {
        match t {
            Ok(z) => Ok(z),
            Err(Error::TruncationOverflow(_)) => {
                let ls = cyl::left_side(hac, 0, x, plus)?;
                let rs = cyl::right_side(hac, 0, y, minus)?;
                if ls != rs {
                    return Err(Error::BoundaryMismatch(format!(
                        "truncated action filler between distinct pastings \
                         {} and {}",
                        hac.name(&ls),
                        hac.name(&rs)
                    )));
                }
                Ok(ls.padded(1))
            }
            Err(e) => Err(e),
        }
    };
    if k == 0 {
        // the cylinder of the interchanger alpha.top ∘0 u
        let f = &alpha.top;
        let x = o0(&alpha.x, u)?;
        let y = o0(&alpha.y, u)?;
        let minus: Vec<CellRef> = (0..l)
            .map(|j| o0(f, &hab.s_i(j, u)))
            .collect::<Result<_>>()?;
        let plus: Vec<CellRef> = (0..l)
            .map(|j| o0(f, &hab.t_i(j, u)))
            .collect::<Result<_>>()?;
        let top = filler(o0(f, u), &x, &y, &minus, &plus)?;
        let t = CylTuple {
            x,
            y,
            minus,
            plus,
            top,
        };
        validate_tuple(hac, 0, &t)?;
        return Ok(t);
    }
    // mixed shapes: lids and filler are forced, sides are solved against the
    // boundary equations; the solution must be unique
    let x = o0(&alpha.x, u)?;
    let y = o0(&alpha.y, u)?;
    let forced_top = match o0(&alpha.top, u) {
        Ok(z) => Some(z),
        Err(Error::TruncationOverflow(_)) => None,
        Err(e) => return Err(e),
    };
    let n = k + l;
    let mut stack: Vec<(Vec<CellRef>, Vec<CellRef>)> = vec![(vec![], vec![])];
    for j in 0..n {
        let mut next = Vec::new();
        for (minus, plus) in &stack {
            let (sx, sy) = (hac.s_i(j, &x), hac.s_i(j, &y));
            let (tx, ty) = (hac.t_i(j, &x), hac.t_i(j, &y));
            let (Ok(ls_m), Ok(rs_m), Ok(ls_p), Ok(rs_p)) = (
                cyl::left_side(hac, 0, &sx, plus),
                cyl::right_side(hac, 0, &sy, minus),
                cyl::left_side(hac, 0, &tx, plus),
                cyl::right_side(hac, 0, &ty, minus),
            ) else {
                continue;
            };
            for gm in hac.all_cells(j + 1) {
                if hac.src(&gm) != ls_m || hac.tgt(&gm) != rs_m {
                    continue;
                }
                for gp in hac.all_cells(j + 1) {
                    if hac.src(&gp) != ls_p || hac.tgt(&gp) != rs_p {
                        continue;
                    }
                    let mut m2 = minus.clone();
                    m2.push(gm);
                    let mut p2 = plus.clone();
                    p2.push(gp);
                    next.push((m2, p2));
                }
            }
        }
        stack = next;
    }
    let mut found = Vec::new();
    for (minus, plus) in stack {
        let Ok(top) = filler(
            forced_top.ok_or_else(|| Error::TruncationOverflow(String::new())),
            &x,
            &y,
            &minus,
            &plus,
        ) else {
            continue;
        };
        let t = CylTuple {
            x,
            y,
            minus,
            plus,
            top,
        };
        if validate_tuple(hac, 0, &t).is_ok() {
            found.push(t);
        }
    }
    match found.len() {
        0 => Err(Error::BoundaryMismatch(format!(
            "no boundary-valid action of a {l}-cell on a degree-{k} cylinder"
        ))),
        1 => Ok(found.pop().unwrap()),
        _ => Err(Error::AmbiguousCandidate {
            slot: format!("sides of a degree-{n} action cylinder"),
            candidates: format!("{} boundary-valid fillings", found.len()),
        }),
    }
}

/// Exhaustively check the module axioms of ∘r over every composable desk
/// instance within depth and truncation bounds. Returns the number of
/// action instances exercised.
pub fn module_axiom_suite(g: &GrayCat) -> Result<usize> {
    let n = g.objects.len();
    let m = g.truncation;
    let mut checked = 0usize;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (Some(hab), Some(hbc), Some(hac)) = (g.hom(a, b), g.hom(b, c), g.hom(a, c))
                else {
                    continue;
                };
                for k in 0..=m {
                    let cyls = enumerate_tuples(hbc, k);
                    for l in 0..=(m - k) {
                        if k + l > 3 {
                            continue;
                        }
                        for u in hab.all_cells(l) {
                            for alpha in &cyls {
                                let r = cyl_act_right(g, (a, b, c), alpha, &u)?;
                                validate_tuple(hac, 0, &r)?;
                                checked += 1;
                                // side projections commute with the action
                                if r.x != g.comp0(a, b, c, &alpha.x, &u)?
                                    || r.y != g.comp0(a, b, c, &alpha.y, &u)?
                                {
                                    return Err(Error::law(
                                        "action side projection",
                                        format!("alpha {alpha:?} by {u:?}"),
                                    ));
                                }
                                // unit 1-cell acts trivially
                                if a == b && u.base() == g.units[&a] && u.pad == 0 && r != *alpha {
                                    return Err(Error::law(
                                        "action unit",
                                        format!("alpha {alpha:?}"),
                                    ));
                                }
                                // concatenation is equivariant
                                for beta in &cyls {
                                    if beta.x != alpha.y {
                                        continue;
                                    }
                                    let both = cyl_act_right(
                                        g,
                                        (a, b, c),
                                        &conc(hbc, 0, beta, alpha)?,
                                        &u,
                                    )?;
                                    let rb = cyl_act_right(g, (a, b, c), beta, &u)?;
                                    if both != conc(hac, 0, &rb, &r)? {
                                        return Err(Error::law(
                                            "action respects concatenation",
                                            format!("{beta:?} . {alpha:?} by {u:?}"),
                                        ));
                                    }
                                }
                            }
                            // identity cylinders act as identity cylinders
                            for d in 0..=m.saturating_sub(l).min(3usize.saturating_sub(l)) {
                                for z in hbc.stored(d) {
                                    let kz = kappa_tuple(hbc, 0, &z);
                                    let acted = cyl_act_right(g, (a, b, c), &kz, &u)?;
                                    let direct =
                                        kappa_tuple(hac, 0, &g.comp0(a, b, c, &z, &u)?);
                                    if acted != direct {
                                        return Err(Error::law(
                                            "action preserves kappa",
                                            format!("kappa({z:?}) by {u:?}"),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
                // associativity of iterated actions
                for a0 in 0..n {
                    let (Some(ha0a), Some(_)) = (g.hom(a0, a), g.hom(a0, c)) else {
                        continue;
                    };
                    for k in 0..=m {
                        for alpha in enumerate_tuples(hbc, k) {
                            for l in 0..=(m - k) {
                                for u in hab.all_cells(l) {
                                    for l2 in 0..=(m - k - l) {
                                        if k + l + l2 > 3 {
                                            continue;
                                        }
                                        for u2 in ha0a.all_cells(l2) {
                                            let one = cyl_act_right(
                                                g,
                                                (a0, b, c),
                                                &alpha,
                                                &g.comp0(a0, a, b, &u, &u2)?,
                                            )?;
                                            let two = cyl_act_right(
                                                g,
                                                (a0, a, c),
                                                &cyl_act_right(g, (a, b, c), &alpha, &u)?,
                                                &u2,
                                            )?;
                                            if one != two {
                                                return Err(Error::law(
                                                    "action associativity",
                                                    format!("{alpha:?} by {u:?} then {u2:?}"),
                                                ));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// In a Gray category arising from a strict one, ∘r factors through the
/// cartesian product: pairing a cylinder with the identity cylinder on u and
/// pushing through the (strict-only) joint composition functor gives the
/// same cylinder up to unit layers.
pub fn strict_action_agreement(cat: &Arc<OmegaCat>) -> Result<usize> {
    let g = crate::gray::gray_from_omega(cat)?;
    let m = g.truncation;
    let objs = cat.stored(0);
    let mut checked = 0usize;
    for a in 0..g.objects.len() {
        for b in 0..g.objects.len() {
            for c in 0..g.objects.len() {
                let (Some(hab), Some(hbc), Some(hac)) = (g.hom(a, b), g.hom(b, c), g.hom(a, c))
                else {
                    continue;
                };
                let hab_h = crate::hom::hom_cat(cat, objs[a], objs[b])?;
                let hbc_h = crate::hom::hom_cat(cat, objs[b], objs[c])?;
                let hac_h = crate::hom::hom_cat(cat, objs[a], objs[c])?;
                // joint composition as a genuine functor on the cartesian
                // product: only available strictly, at matching dimension
                let span = limits::product(hbc, hab)?;
                let map = (0..span.cat.cells.len())
                    .map(|d| {
                        span.cat
                            .stored(d)
                            .iter()
                            .map(|r| {
                                let (z, w) = span.components(r);
                                Ok(hac_h.from_c(&cat.comp(0, &hbc_h.to_c(&z), &hab_h.to_c(&w))?))
                            })
                            .collect::<Result<_>>()
                    })
                    .collect::<Result<_>>()?;
                let joint = OmegaFunctor::from_map(&span.cat, hac, map);
                joint.validate()?;
                for k in 0..=m {
                    for alpha in enumerate_tuples(hbc, k) {
                        for l in 0..=(m - k) {
                            if k + l > 3 {
                                continue;
                            }
                            for u in hab.all_cells(l) {
                                let acted = cyl_act_right(&g, (a, b, c), &alpha, &u)?;
                                // pair with kappa(u), equalize degrees, push
                                // through the joint functor
                                let deg = k.max(l);
                                let mut at = alpha.clone();
                                while at.degree() < deg {
                                    at = tuple_unit(&at);
                                }
                                let mut ut = kappa_tuple(hab, 0, &u);
                                while ut.degree() < deg {
                                    ut = tuple_unit(&ut);
                                }
                                let paired = CylTuple {
                                    x: span.pair(&at.x, &ut.x),
                                    y: span.pair(&at.y, &ut.y),
                                    minus: at
                                        .minus
                                        .iter()
                                        .zip(&ut.minus)
                                        .map(|(p, q)| span.pair(p, q))
                                        .collect(),
                                    plus: at
                                        .plus
                                        .iter()
                                        .zip(&ut.plus)
                                        .map(|(p, q)| span.pair(p, q))
                                        .collect(),
                                    top: span.pair(&at.top, &ut.top),
                                };
                                validate_tuple(&span.cat, 0, &paired)?;
                                let mut cartesian = map_tuple(&joint, &paired);
                                while cartesian.degree() < acted.degree() {
                                    cartesian = tuple_unit(&cartesian);
                                }
                                if cartesian != acted {
                                    return Err(Error::MismatchWitness(format!(
                                        "strict action disagrees on {alpha:?} by {u:?}: \
                                         {cartesian:?} vs {acted:?}"
                                    )));
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

/// The slice Gray category over an object, with its forgetful functor and
/// the pair/cylinder coding of its hom cells.
pub struct GraySlice {
    /// Index of the base object in the underlying Gray category.
    pub base: usize,
    pub cat: GrayCat,
    /// Slice object i is (d, f) with f a 0-cell of homs(d, base).
    pub objects: Vec<(usize, CellRef)>,
    pub forgetful: GrayFunctor,
    /// Cylinder categories of homs(d, base), keyed by d.
    pub cyls: BTreeMap<usize, CylCat>,
    /// Hom (i, j) as a filtered product of homs(d_i, d_j) and Cyl homs(d_i, base).
    pub spans: BTreeMap<(usize, usize), Span>,
}

impl GraySlice {
    /// The (u, alpha) components of a cell of hom(i, j).
    pub fn decode(&self, i: usize, j: usize, r: &CellRef) -> (CellRef, CylTuple) {
        let (u, w) = self.spans[&(i, j)].components(r);
        (u, self.cyls[&self.objects[i].0].tuple_of(&w))
    }

    pub fn encode(&self, i: usize, j: usize, u: &CellRef, t: &CylTuple) -> CellRef {
        self.spans[&(i, j)].pair(u, &self.cyls[&self.objects[i].0].tuple_ref(t))
    }
}

fn slice_build(
    g: &GrayCat,
    c: usize,
    objects: Vec<(usize, CellRef)>,
    unit_only: Option<usize>,
    truncation: usize,
) -> Result<GraySlice> {
    if g.orientation != Orientation::Gray {
        return Err(Error::OrientationMismatch(
            "slices are taken in the plain orientation; conjugate first".into(),
        ));
    }
    let mut cyls = BTreeMap::new();
    for &(d, _) in &objects {
        if let std::collections::btree_map::Entry::Vacant(e) = cyls.entry(d) {
            let hdc = g
                .hom(d, c)
                .ok_or_else(|| Error::DanglingReference(format!("hom ({d},{c})")))?;
            e.insert(cyl::cyl(hdc)?);
        }
    }
    let mut spans = BTreeMap::new();
    let mut homs = BTreeMap::new();
    for (i, &(d, f)) in objects.iter().enumerate() {
        for (j, &(d2, f2)) in objects.iter().enumerate() {
            let Some(hdd) = g.hom(d, d2) else { continue };
            let cy = &cyls[&d];
            let keep = |u: &CellRef, w: &CellRef| -> bool {
                if let Some(du) = unit_only {
                    if u.base() != g.units[&du] {
                        return false;
                    }
                }
                let Ok(fx) = g.comp0(d, d2, c, &f2, u) else {
                    return false;
                };
                let t = cy.tuple_of(w);
                t.x == fx && t.y == f.padded(w.dim)
            };
            let span = limits::filtered_product(hdd, &cy.cat, truncation, keep)?;
            if span.cat.stored_count(0) == 0 {
                continue;
            }
            homs.insert((i, j), span.cat.clone());
            spans.insert((i, j), span);
        }
    }
    let mut units = BTreeMap::new();
    for (i, &(d, f)) in objects.iter().enumerate() {
        let span = spans
            .get(&(i, i))
            .ok_or_else(|| Error::DanglingReference(format!("endo hom of slice object {i}")))?;
        let kref = cyls[&d].tuple_ref(&kappa_tuple(g.hom(d, c).unwrap(), 0, &f));
        units.insert(i, span.pair(&g.units[&d], &kref));
    }
    let names: Vec<String> = objects
        .iter()
        .map(|&(d, f)| format!("{}/{}", g.objects[d], g.hom(d, c).unwrap().name(&f)))
        .collect();
    let slice = GraySlice {
        base: c,
        cat: GrayCat {
            orientation: Orientation::Gray,
            truncation,
            objects: names,
            homs,
            units,
            comp0: BTreeMap::new(),
        },
        objects,
        forgetful: GrayFunctor {
            object_map: Vec::new(),
            hom_maps: BTreeMap::new(),
        },
        cyls,
        spans,
    };
    let mut comp0 = BTreeMap::new();
    let n = slice.objects.len();
    for ai in 0..n {
        for bi in 0..n {
            for ci in 0..n {
                if !slice.spans.contains_key(&(bi, ci)) || !slice.spans.contains_key(&(ai, bi)) {
                    continue;
                }
                let (da, _) = slice.objects[ai];
                let (db, _) = slice.objects[bi];
                let (dc, _) = slice.objects[ci];
                let hout = &slice.cat.homs[&(bi, ci)].clone();
                let hin = &slice.cat.homs[&(ai, bi)].clone();
                let hac = g.hom(da, c).unwrap();
                for p in 0..=truncation {
                    for q in 0..=(truncation - p) {
                        for x in hout.stored(p) {
                            let (u2, t2) = slice.decode(bi, ci, &x);
                            for y in hin.stored(q) {
                                let (u1, t1) = slice.decode(ai, bi, &y);
                                let act = cyl_act_right(g, (da, db, c), &t2, &u1)?;
                                let mut beta = t1.clone();
                                for _ in 0..p {
                                    beta = tuple_unit(&beta);
                                }
                                let gamma = conc(hac, 0, &beta, &act)?;
                                let u = g.comp0(da, db, dc, &u2, &u1)?;
                                comp0.insert((ai, bi, ci, x, y), slice.encode(ai, ci, &u, &gamma));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut slice = slice;
    slice.cat.comp0 = comp0;
    slice.forgetful = GrayFunctor {
        object_map: slice.objects.iter().map(|&(d, _)| d).collect(),
        hom_maps: slice
            .spans
            .iter()
            .map(|(&k, s)| (k, s.p1.clone()))
            .collect(),
    };
    Ok(slice)
}

/// The slice Gray category G/c: objects are 1-cells f: d -> c of G, and a
/// hom cell over u is a cylinder from f' o0 u to an identity tower on f.
/// Composition pairs the tensor of the underlying cells with the
/// concatenation of the acted cylinder.
pub fn slice_gray(g: &GrayCat, c: usize) -> Result<GraySlice> {
    if c >= g.objects.len() {
        return Err(Error::NotAnObject(format!("object index {c}")));
    }
    let mut objects = Vec::new();
    for d in 0..g.objects.len() {
        if let Some(hdc) = g.hom(d, c) {
            for f in hdc.stored(0) {
                objects.push((d, f));
            }
        }
    }
    slice_build(g, c, objects, None, g.truncation)
}

/// The fiber of the forgetful functor at d: slice cells whose underlying
/// cell is an identity on d. One dimension lower than the slice, since its
/// top-degree cylinders all degenerate to units.
pub fn slice_fiber(g: &GrayCat, c: usize, d: usize) -> Result<GraySlice> {
    let hdc = g
        .hom(d, c)
        .ok_or_else(|| Error::DanglingReference(format!("hom ({d},{c})")))?;
    let objects: Vec<(usize, CellRef)> = hdc.stored(0).iter().map(|&f| (d, f)).collect();
    slice_build(g, c, objects, Some(d), g.truncation.saturating_sub(1))
}

/// The fiber of the forgetful functor at d is the total dual of homs(d, c):
/// each cylinder over an identity maps to its principal cell, and this is an
/// isomorphism of Gray categories compatible with units and composition.
pub fn fiber_iso_check(g: &GrayCat, c: usize, d: usize) -> Result<GrayFunctor> {
    let fib = slice_fiber(g, c, d)?;
    let h = g.hom(d, c).unwrap();
    let ho = Arc::new(omega::dual(h, &omega::all_dims(h.truncation)));
    let expected = crate::gray::gray_from_omega(&ho)?;
    if fib.cat.objects.len() != expected.objects.len()
        || fib.cat.homs.len() != expected.homs.len()
    {
        return Err(Error::MismatchWitness(format!(
            "fiber at {d} has {} objects / {} homs against {} / {}",
            fib.cat.objects.len(),
            fib.cat.homs.len(),
            expected.objects.len(),
            expected.homs.len()
        )));
    }
    let mut hom_maps = BTreeMap::new();
    for (&(i, j), hf) in &fib.cat.homs {
        let (fi, fj) = (fib.objects[i].1, fib.objects[j].1);
        // the dual keeps cell references, so a cell of homs(d,c) is a cell
        // of the dual, one hom dimension down and with the arrow reversed
        let hc = crate::hom::hom_cat(&ho, fi, fj)?;
        let map = (0..hf.cells.len())
            .map(|dim| {
                hf.stored(dim)
                    .iter()
                    .map(|r| hc.from_c(&cyl::principal_cell(&fib.decode(i, j, r).1)))
                    .collect()
            })
            .collect();
        let tgt = expected
            .homs
            .get(&(i, j))
            .ok_or_else(|| Error::MismatchWitness(format!("fiber hom ({i},{j}) is spurious")))?;
        let f = OmegaFunctor::from_map(hf, tgt, map);
        f.validate()?;
        if !f.is_bijective() {
            return Err(Error::MismatchWitness(format!(
                "principal-cell map on fiber hom ({i},{j}) is not a bijection"
            )));
        }
        hom_maps.insert((i, j), f);
    }
    let phi = GrayFunctor {
        object_map: (0..fib.cat.objects.len()).collect(),
        hom_maps,
    };
    phi.validate(&fib.cat, &expected)?;
    Ok(phi)
}

/// The decorated slices: under slices along the co and top dualities, and
/// the over slice along the to duality, each obtained by conjugation with
/// the unique orientation-preserving duality that realizes it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceFlavor {
    Over,
    CoUnder,
    TopUnder,
    ToOver,
}

impl SliceFlavor {
    pub fn conjugator(self) -> Option<GrayDuality> {
        match self {
            SliceFlavor::Over => None,
            SliceFlavor::CoUnder => Some(GrayDuality::Cot),
            SliceFlavor::TopUnder => Some(GrayDuality::Op),
            SliceFlavor::ToOver => Some(GrayDuality::To),
        }
    }
}

/// A decorated slice with its forgetful functor back to g.
pub fn dual_slice(g: &GrayCat, c: usize, flavor: SliceFlavor) -> Result<(GrayCat, GrayFunctor)> {
    let Some(conj) = flavor.conjugator() else {
        let s = slice_gray(g, c)?;
        return Ok((s.cat, s.forgetful));
    };
    let s = slice_gray(&gray_dual(g, conj), c)?;
    let cat = gray_dual(&s.cat, conj);
    // conjugation keeps every cell reference, so the forgetful maps carry
    // over; a transposing conjugator mirrors the hom keys
    let transposes = matches!(conj, GrayDuality::Cot | GrayDuality::Op);
    let mut hom_maps = BTreeMap::new();
    for (&(i, j), hsub) in &cat.homs {
        let key = if transposes { (j, i) } else { (i, j) };
        let orig = &s.forgetful.hom_maps[&key];
        let (oi, oj) = (s.forgetful.object_map[i], s.forgetful.object_map[j]);
        hom_maps.insert(
            (i, j),
            OmegaFunctor::from_map(hsub, &g.homs[&(oi, oj)], orig.map.clone()),
        );
    }
    let forgetful = GrayFunctor {
        object_map: s.forgetful.object_map.clone(),
        hom_maps,
    };
    Ok((cat, forgetful))
}

/// The Gray functor induced between the Gray views of two strict
/// categories by a strict functor between them.
pub fn gray_view_functor(f: &OmegaFunctor, gs: &GrayCat, gt: &GrayCat) -> Result<GrayFunctor> {
    let sobj = f.source.stored(0);
    let tobj = f.target.stored(0);
    let object_map: Vec<usize> = sobj
        .iter()
        .map(|a| {
            let fa = f.apply(a);
            tobj.iter()
                .position(|b| *b == fa)
                .ok_or_else(|| Error::DanglingReference(format!("image of object {a:?}")))
        })
        .collect::<Result<_>>()?;
    let mut hom_maps = BTreeMap::new();
    for (&(i, j), h) in &gs.homs {
        let hs = crate::hom::hom_cat(&f.source, sobj[i], sobj[j])?;
        let (oi, oj) = (object_map[i], object_map[j]);
        let ht = crate::hom::hom_cat(&f.target, tobj[oi], tobj[oj])?;
        let map = (0..h.cells.len())
            .map(|dim| {
                h.stored(dim)
                    .iter()
                    .map(|r| ht.from_c(&f.apply(&hs.to_c(r))))
                    .collect()
            })
            .collect();
        hom_maps.insert((i, j), OmegaFunctor::from_map(h, &gt.homs[&(oi, oj)], map));
    }
    Ok(GrayFunctor {
        object_map,
        hom_maps,
    })
}

/// For a strict ambient category the Gray slice agrees with the comma-built
/// slice: the canonical cell-by-cell comparison is an isomorphism of Gray
/// categories commuting with the two forgetful functors. Returns it.
pub fn strict_slice_agreement(cat: &Arc<OmegaCat>, obj: CellRef) -> Result<GrayFunctor> {
    let g = crate::gray::gray_from_omega(cat)?;
    let ci = cat
        .stored(0)
        .iter()
        .position(|r| *r == obj)
        .ok_or_else(|| Error::NotAnObject(cat.name(&obj)))?;
    let s = slice_gray(&g, ci)?;
    let over = crate::comma::slice(cat, obj, crate::comma::SliceKind::Over)?;
    let go = crate::gray::gray_from_omega(&over.total)?;
    if s.cat.objects.len() != go.objects.len() || s.cat.homs.len() != go.homs.len() {
        return Err(Error::MismatchWitness(format!(
            "gray slice has {} objects / {} homs, comma slice {} / {}",
            s.cat.objects.len(),
            s.cat.homs.len(),
            go.objects.len(),
            go.homs.len()
        )));
    }
    let objs = cat.stored(0);
    let point = CellRef::stored(0, 0);
    // a slice object (d, f) is the comma 0-cell (d, [f], *)
    let ocell: Vec<CellRef> = s
        .objects
        .iter()
        .map(|&(d, fc)| -> Result<CellRef> {
            let hdc = crate::hom::hom_cat(cat, objs[d], obj)?;
            let t = CylTuple {
                x: objs[d],
                y: obj,
                minus: vec![],
                plus: vec![],
                top: hdc.to_c(&fc),
            };
            Ok(over.encode(&objs[d], &over.cylc.tuple_ref(&t), &point))
        })
        .collect::<Result<_>>()?;
    let object_map: Vec<usize> = ocell.iter().map(|r| r.index).collect();
    let mut hom_maps = BTreeMap::new();
    for (&(i, j), h) in &s.cat.homs {
        let (d, fc) = s.objects[i];
        let (d2, fc2) = s.objects[j];
        let hdd = crate::hom::hom_cat(cat, objs[d], objs[d2])?;
        let hdc = crate::hom::hom_cat(cat, objs[d], obj)?;
        let hd2c = crate::hom::hom_cat(cat, objs[d2], obj)?;
        let hover = crate::hom::hom_cat(&over.total, ocell[i], ocell[j])?;
        let map = (0..h.cells.len())
            .map(|dim| {
                h.stored(dim)
                    .iter()
                    .map(|r| -> Result<CellRef> {
                        let (u, t) = s.decode(i, j, r);
                        let au = hdd.to_c(&u);
                        let inner = CylTuple {
                            x: hdc.to_c(&t.x),
                            y: hdc.to_c(&t.y),
                            minus: t.minus.iter().map(|z| hdc.to_c(z)).collect(),
                            plus: t.plus.iter().map(|z| hdc.to_c(z)).collect(),
                            top: hdc.to_c(&t.top),
                        };
                        let amb = cyl::from_inner(
                            au,
                            &inner,
                            obj.padded(dim + 1),
                            hdc.to_c(&fc),
                            hd2c.to_c(&fc2),
                        );
                        let oc = over.encode(
                            &au,
                            &over.cylc.tuple_ref(&amb),
                            &point.padded(dim + 1),
                        );
                        Ok(hover.from_c(&oc))
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let (oi, oj) = (object_map[i], object_map[j]);
        let f = OmegaFunctor::from_map(h, &go.homs[&(oi, oj)], map);
        f.validate()?;
        if !f.is_bijective() {
            return Err(Error::MismatchWitness(format!(
                "slice comparison is not bijective on hom ({i},{j})"
            )));
        }
        hom_maps.insert((i, j), f);
    }
    let phi = GrayFunctor {
        object_map,
        hom_maps,
    };
    phi.validate(&s.cat, &go)?;
    // the comparison commutes with the forgetful functors
    let u_over = gray_view_functor(&over.p1, &go, &g)?;
    let around = GrayFunctor::compose(&u_over, &phi);
    if around.object_map != s.forgetful.object_map {
        return Err(Error::MismatchWitness(
            "comparison moves the underlying objects".into(),
        ));
    }
    for (k, f) in &s.forgetful.hom_maps {
        if around.hom_maps[k].map != f.map {
            return Err(Error::MismatchWitness(format!(
                "comparison does not commute with the forgetful functors at hom {k:?}"
            )));
        }
    }
    Ok(phi)
}
