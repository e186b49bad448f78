//! The cylinder category Cyl C.
//!
//! A k-cylinder between k-cells `x` and `y` is a tuple of side cells
//! `gamma^-_l`, `gamma^+_l` (for l < k) and a top cell, subject to boundary
//! equations pasting the sides onto iterated boundaries of `x` and `y`.
//! Objects of Cyl C are the 1-cells of C; source/target of a tuple restrict
//! to the gamma^- / gamma^+ side.
//!
//! Every operation takes a `shift` parameter: a tuple at shift `s` lives in
//! an s-fold iterated hom of the ambient category, represented directly by
//! ambient cells (a j-cell of the s-fold hom is a (j+s)-cell of C, and the
//! hom `*_j` is the ambient `*_(j+s)`). The top-level category is shift 0;
//! the enriched composition recursion descends one hom at a time.

use crate::error::{Error, Result};
use crate::omega::{self, CellRef, OmegaCat, OmegaFunctor};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CylTuple {
    pub x: CellRef,
    pub y: CellRef,
    pub minus: Vec<CellRef>,
    pub plus: Vec<CellRef>,
    pub top: CellRef,
}

impl CylTuple {
    pub fn degree(&self) -> usize {
        self.minus.len()
    }
}

/// `gamma^+_(l-1) *_(l-1) ( ... (gamma^+_0 *_0 b) ... )` at the given shift.
pub fn left_side(c: &OmegaCat, shift: usize, b: &CellRef, plus: &[CellRef]) -> Result<CellRef> {
    let mut acc = *b;
    for (j, g) in plus.iter().enumerate() {
        acc = c.comp(j + shift, g, &acc)?;
    }
    Ok(acc)
}

/// `( ... (b *_0 gamma^-_0) ... ) *_(l-1) gamma^-_(l-1)` at the given shift.
pub fn right_side(c: &OmegaCat, shift: usize, b: &CellRef, minus: &[CellRef]) -> Result<CellRef> {
    let mut acc = *b;
    for (j, g) in minus.iter().enumerate() {
        acc = c.comp(j + shift, &acc, g)?;
    }
    Ok(acc)
}

/// Check the full set of boundary equations. This is the validator half of
/// the enumerator/validator pair; the enumerator picks candidates one layer
/// at a time and never calls this.
pub fn validate_tuple(c: &OmegaCat, shift: usize, t: &CylTuple) -> Result<()> {
    let k = t.degree();
    if t.plus.len() != k {
        return Err(Error::MalformedSpec("mismatched side lengths".into()));
    }
    let bad = |what: &str| {
        Err(Error::BoundaryMismatch(format!(
            "{what} of cylinder [{} => {}]",
            c.name(&t.x),
            c.name(&t.y)
        )))
    };
    if t.x.dim != k + shift || t.y.dim != k + shift || t.top.dim != k + shift + 1 {
        return bad("dimensions");
    }
    for l in 0..k {
        if t.minus[l].dim != l + shift + 1 || t.plus[l].dim != l + shift + 1 {
            return bad("side dimensions");
        }
        let sl_x = c.s_i(l + shift, &t.x);
        let sl_y = c.s_i(l + shift, &t.y);
        if c.src(&t.minus[l]) != left_side(c, shift, &sl_x, &t.plus[..l])?
            || c.tgt(&t.minus[l]) != right_side(c, shift, &sl_y, &t.minus[..l])?
        {
            return bad("gamma^- boundary");
        }
        let tl_x = c.t_i(l + shift, &t.x);
        let tl_y = c.t_i(l + shift, &t.y);
        if c.src(&t.plus[l]) != left_side(c, shift, &tl_x, &t.plus[..l])?
            || c.tgt(&t.plus[l]) != right_side(c, shift, &tl_y, &t.minus[..l])?
        {
            return bad("gamma^+ boundary");
        }
    }
    if c.src(&t.top) != left_side(c, shift, &t.x, &t.plus)?
        || c.tgt(&t.top) != right_side(c, shift, &t.y, &t.minus)?
    {
        return bad("top boundary");
    }
    Ok(())
}

pub fn principal_cell(t: &CylTuple) -> CellRef {
    t.top
}

pub fn tuple_src(c: &OmegaCat, t: &CylTuple) -> CylTuple {
    let k = t.degree();
    assert!(k >= 1, "objects of Cyl have no source");
    CylTuple {
        x: c.src(&t.x),
        y: c.src(&t.y),
        minus: t.minus[..k - 1].to_vec(),
        plus: t.plus[..k - 1].to_vec(),
        top: t.minus[k - 1],
    }
}

pub fn tuple_tgt(c: &OmegaCat, t: &CylTuple) -> CylTuple {
    let k = t.degree();
    assert!(k >= 1, "objects of Cyl have no target");
    CylTuple {
        x: c.tgt(&t.x),
        y: c.tgt(&t.y),
        minus: t.minus[..k - 1].to_vec(),
        plus: t.plus[..k - 1].to_vec(),
        top: t.plus[k - 1],
    }
}

/// Iterated source/target down to degree `i`.
pub fn tuple_face(c: &OmegaCat, t: &CylTuple, i: usize, target: bool) -> CylTuple {
    let mut out = t.clone();
    while out.degree() > i {
        out = if target && out.degree() == i + 1 {
            tuple_tgt(c, &out)
        } else {
            tuple_src(c, &out)
        };
    }
    out
}

pub fn tuple_unit(t: &CylTuple) -> CylTuple {
    let mut minus = t.minus.clone();
    let mut plus = t.plus.clone();
    minus.push(t.top);
    plus.push(t.top);
    CylTuple {
        x: t.x.padded(1),
        y: t.y.padded(1),
        minus,
        plus,
        top: t.top.padded(1),
    }
}

/// Is this tuple the unit of a lower tuple? If so, peel one layer.
pub fn peel_unit(t: &CylTuple) -> Option<CylTuple> {
    let k = t.degree();
    if k == 0 || !t.x.is_pad() || !t.y.is_pad() {
        return None;
    }
    if t.minus[k - 1] != t.plus[k - 1] || t.top != t.minus[k - 1].padded(1) {
        return None;
    }
    Some(CylTuple {
        x: CellRef {
            dim: t.x.dim - 1,
            index: t.x.index,
            pad: t.x.pad - 1,
        },
        y: CellRef {
            dim: t.y.dim - 1,
            index: t.y.index,
            pad: t.y.pad - 1,
        },
        minus: t.minus[..k - 1].to_vec(),
        plus: t.plus[..k - 1].to_vec(),
        top: t.minus[k - 1],
    })
}

/// The identity cylinder on a cell: all sides are units.
pub fn kappa_tuple(c: &OmegaCat, shift: usize, x: &CellRef) -> CylTuple {
    let k = x.dim - shift;
    CylTuple {
        x: *x,
        y: *x,
        minus: (0..k).map(|l| c.s_i(l + shift, x).padded(1)).collect(),
        plus: (0..k).map(|l| c.t_i(l + shift, x).padded(1)).collect(),
        top: x.padded(1),
    }
}

/// A degree-k tuple at shift s, viewed as a (k-1)-tuple one hom deeper: the
/// enriched triple's middle component. Its x-side is `gamma^+_0 *_0 x` and
/// its y-side is `y *_0 gamma^-_0`; the remaining components shift down.
pub fn to_inner(c: &OmegaCat, shift: usize, t: &CylTuple) -> Result<CylTuple> {
    assert!(t.degree() >= 1);
    Ok(CylTuple {
        x: c.comp(shift, &t.plus[0], &t.x)?,
        y: c.comp(shift, &t.y, &t.minus[0])?,
        minus: t.minus[1..].to_vec(),
        plus: t.plus[1..].to_vec(),
        top: t.top,
    })
}

/// Reassemble a tuple from its enriched triple `(u, inner, v)` and bottom
/// faces `f = gamma^-_0`, `fp = gamma^+_0`.
pub fn from_inner(u: CellRef, inner: &CylTuple, v: CellRef, f: CellRef, fp: CellRef) -> CylTuple {
    let mut minus = vec![f];
    minus.extend_from_slice(&inner.minus);
    let mut plus = vec![fp];
    plus.extend_from_slice(&inner.plus);
    CylTuple {
        x: u,
        y: v,
        minus,
        plus,
        top: inner.top,
    }
}

/// Componentwise composition of two equal-degree tuples, the image of the
/// pair under the cylinder functor of a binary composition.
fn pairwise_comp(c: &OmegaCat, level: usize, a: &CylTuple, b: &CylTuple) -> Result<CylTuple> {
    let mut a = a.clone();
    let mut b = b.clone();
    while a.degree() < b.degree() {
        a = tuple_unit(&a);
    }
    while b.degree() < a.degree() {
        b = tuple_unit(&b);
    }
    Ok(CylTuple {
        x: c.comp(level, &a.x, &b.x)?,
        y: c.comp(level, &a.y, &b.y)?,
        minus: a
            .minus
            .iter()
            .zip(&b.minus)
            .map(|(z, w)| c.comp(level, z, w))
            .collect::<Result<_>>()?,
        plus: a
            .plus
            .iter()
            .zip(&b.plus)
            .map(|(z, w)| c.comp(level, z, w))
            .collect::<Result<_>>()?,
        top: c.comp(level, &a.top, &b.top)?,
    })
}

/// Right whisker `a . u`: componentwise composition with the identity
/// cylinder on `u`. For `u` one dimension above the level this composes
/// every component with `u` itself; for higher cells the side layers pick
/// up the matching faces of `u`.
pub fn whisker_right(c: &OmegaCat, level: usize, a: &CylTuple, u: &CellRef) -> Result<CylTuple> {
    pairwise_comp(c, level, a, &kappa_tuple(c, level + 1, u))
}

/// Left whisker `v . a`: componentwise composition with the identity
/// cylinder on `v` on the other side.
pub fn whisker_left(c: &OmegaCat, level: usize, v: &CellRef, a: &CylTuple) -> Result<CylTuple> {
    pairwise_comp(c, level, &kappa_tuple(c, level + 1, v), a)
}

/// Tube-direction concatenation `beta . alpha` (alpha first): the structure
/// map of the internal cocategory, computed by the enriched recursion. The
/// tuples must have equal degree with `y(alpha) = x(beta)`.
pub fn conc(c: &OmegaCat, shift: usize, beta: &CylTuple, alpha: &CylTuple) -> Result<CylTuple> {
    let k = alpha.degree();
    if beta.degree() != k || alpha.y != beta.x {
        return Err(Error::NotGlueable(format!(
            "cylinders [{} => {}] then [{} => {}]",
            c.name(&alpha.x),
            c.name(&alpha.y),
            c.name(&beta.x),
            c.name(&beta.y)
        )));
    }
    if k == 0 {
        return Ok(CylTuple {
            x: alpha.x,
            y: beta.y,
            minus: vec![],
            plus: vec![],
            top: c.comp(shift, &beta.top, &alpha.top)?,
        });
    }
    let f = c.comp(shift, &beta.minus[0], &alpha.minus[0])?;
    let fp = c.comp(shift, &beta.plus[0], &alpha.plus[0])?;
    let inner_b = whisker_right(c, shift, &to_inner(c, shift, beta)?, &alpha.minus[0])?;
    let inner_a = whisker_left(c, shift, &beta.plus[0], &to_inner(c, shift, alpha)?)?;
    let inner = conc(c, shift + 1, &inner_b, &inner_a)?;
    Ok(from_inner(alpha.x, &inner, beta.y, f, fp))
}

/// `t *_i t2` in Cyl (t2 applied first). Degrees are equalized by padding
/// the lower tuple with identity cylinders; level 0 uses the enriched
/// formula, higher levels recurse one hom deeper.
pub fn comp_tuple(
    c: &OmegaCat,
    shift: usize,
    i: usize,
    t: &CylTuple,
    t2: &CylTuple,
) -> Result<CylTuple> {
    let mut a = t.clone();
    let mut b = t2.clone();
    while a.degree() < b.degree() {
        a = tuple_unit(&a);
    }
    while b.degree() < a.degree() {
        b = tuple_unit(&b);
    }
    let k = a.degree();
    if i >= k || tuple_face(c, &a, i, false) != tuple_face(c, &b, i, true) {
        return Err(Error::NotComposable {
            level: i,
            left: c.name(&a.x),
            right: c.name(&b.x),
        });
    }
    comp_equal(c, shift, i, &a, &b)
}

fn comp_equal(c: &OmegaCat, shift: usize, i: usize, t: &CylTuple, t2: &CylTuple) -> Result<CylTuple> {
    if i == 0 {
        let x = c.comp(shift, &t.x, &t2.x)?;
        let y = c.comp(shift, &t.y, &t2.y)?;
        let beta = whisker_left(c, shift, &t.y, &to_inner(c, shift, t2)?)?;
        let alpha = whisker_right(c, shift, &to_inner(c, shift, t)?, &t2.x)?;
        let inner = conc(c, shift + 1, &beta, &alpha)?;
        Ok(from_inner(x, &inner, y, t2.minus[0], t.plus[0]))
    } else {
        let x = c.comp(i + shift, &t.x, &t2.x)?;
        let y = c.comp(i + shift, &t.y, &t2.y)?;
        let inner = comp_equal(
            c,
            shift + 1,
            i - 1,
            &to_inner(c, shift, t)?,
            &to_inner(c, shift, t2)?,
        )?;
        Ok(from_inner(x, &inner, y, t.minus[0], t.plus[0]))
    }
}

/// Apply a functor to every component of a tuple.
pub fn map_tuple(f: &OmegaFunctor, t: &CylTuple) -> CylTuple {
    CylTuple {
        x: f.apply(&t.x),
        y: f.apply(&t.y),
        minus: t.minus.iter().map(|z| f.apply(z)).collect(),
        plus: t.plus.iter().map(|z| f.apply(z)).collect(),
        top: f.apply(&t.top),
    }
}

/// The cylinder category as an omega-category, with the structure functors
/// s-tilde, t-tilde (component projections) and kappa (identity cylinders).
#[derive(Clone, Debug)]
pub struct CylCat {
    pub base: Arc<OmegaCat>,
    pub cat: Arc<OmegaCat>,
    tuples: Vec<Vec<CylTuple>>,
    index: BTreeMap<CylTuple, (usize, usize)>,
    pub src_f: OmegaFunctor,
    pub tgt_f: OmegaFunctor,
    pub kappa_f: OmegaFunctor,
}

impl CylCat {
    /// The cell of Cyl C holding this tuple; units of lower tuples resolve
    /// to padded references.
    pub fn tuple_ref(&self, t: &CylTuple) -> CellRef {
        let mut cur = t.clone();
        let mut pad = 0;
        while let Some(lower) = peel_unit(&cur) {
            cur = lower;
            pad += 1;
        }
        let (d, i) = *self
            .index
            .get(&cur)
            .unwrap_or_else(|| panic!("tuple not enumerated: {cur:?}"));
        CellRef {
            dim: d + pad,
            index: i,
            pad,
        }
    }

    pub fn tuple_of(&self, r: &CellRef) -> CylTuple {
        let mut t = self.tuples[r.base_dim()][r.index].clone();
        for _ in 0..r.pad {
            t = tuple_unit(&t);
        }
        t
    }

    pub fn stored_tuples(&self, degree: usize) -> &[CylTuple] {
        self.tuples.get(degree).map_or(&[], |v| v)
    }
}

fn tuple_name(c: &OmegaCat, t: &CylTuple) -> String {
    if t.degree() == 0 {
        return c.name(&t.top);
    }
    let side = |v: &[CellRef]| {
        v.iter()
            .map(|z| c.name(z))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "[{}=>{}|{}|{}|{}]",
        c.name(&t.x),
        c.name(&t.y),
        side(&t.minus),
        side(&t.plus),
        c.name(&t.top)
    )
}

/// All boundary-valid tuples of the given degree, by layerwise enumeration.
pub fn enumerate_tuples(c: &OmegaCat, degree: usize) -> Vec<CylTuple> {
    let mut out = Vec::new();
    if degree == 0 {
        for f in c.all_cells(1) {
            out.push(CylTuple {
                x: c.src(&f),
                y: c.tgt(&f),
                minus: vec![],
                plus: vec![],
                top: f,
            });
        }
        return out;
    }
    for x in c.all_cells(degree) {
        for y in c.all_cells(degree) {
            let mut stack: Vec<(Vec<CellRef>, Vec<CellRef>)> = vec![(vec![], vec![])];
            for l in 0..degree {
                let mut next = Vec::new();
                for (minus, plus) in stack {
                    let (sx, sy) = (c.s_i(l, &x), c.s_i(l, &y));
                    let (tx, ty) = (c.t_i(l, &x), c.t_i(l, &y));
                    let (Ok(ls_m), Ok(rs_m), Ok(ls_p), Ok(rs_p)) = (
                        left_side(c, 0, &sx, &plus),
                        right_side(c, 0, &sy, &minus),
                        left_side(c, 0, &tx, &plus),
                        right_side(c, 0, &ty, &minus),
                    ) else {
                        continue;
                    };
                    for gm in c.all_cells(l + 1) {
                        if c.src(&gm) != ls_m || c.tgt(&gm) != rs_m {
                            continue;
                        }
                        for gp in c.all_cells(l + 1) {
                            if c.src(&gp) != ls_p || c.tgt(&gp) != rs_p {
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
            for (minus, plus) in stack {
                let (Ok(ls), Ok(rs)) = (
                    left_side(c, 0, &x, &plus),
                    right_side(c, 0, &y, &minus),
                ) else {
                    continue;
                };
                for top in c.all_cells(degree + 1) {
                    if c.src(&top) != ls || c.tgt(&top) != rs {
                        continue;
                    }
                    out.push(CylTuple {
                        x,
                        y,
                        minus: minus.clone(),
                        plus: plus.clone(),
                        top,
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// Build Cyl C: enumerate tuples, validate each against the independent
/// boundary checker, and synthesize all composition tables through the
/// enriched recursion. The result passes the full omega-category law suite.
pub fn cyl(c: &Arc<OmegaCat>) -> Result<CylCat> {
    let n = c.truncation;
    let mut tuples: Vec<Vec<CylTuple>> = Vec::new();
    let mut index = BTreeMap::new();
    for k in 0..=n {
        let mut layer = Vec::new();
        for t in enumerate_tuples(c, k) {
            validate_tuple(c, 0, &t)?;
            if peel_unit(&t).is_some() {
                continue;
            }
            index.insert(t.clone(), (k, layer.len()));
            layer.push(t);
        }
        tuples.push(layer);
    }
    while tuples.last().is_some_and(|l| l.is_empty()) && tuples.len() > 1 {
        tuples.pop();
    }
    let tref = |t: &CylTuple| -> CellRef {
        let mut cur = t.clone();
        let mut pad = 0;
        while let Some(lower) = peel_unit(&cur) {
            cur = lower;
            pad += 1;
        }
        let (d, i) = index[&cur];
        CellRef {
            dim: d + pad,
            index: i,
            pad,
        }
    };
    let cells: Vec<Vec<String>> = tuples
        .iter()
        .map(|layer| layer.iter().map(|t| tuple_name(c, t)).collect())
        .collect();
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for (k, layer) in tuples.iter().enumerate().skip(1) {
        for (i, t) in layer.iter().enumerate() {
            src.insert((k, i), tref(&tuple_src(c, t)));
            tgt.insert((k, i), tref(&tuple_tgt(c, t)));
        }
    }
    let mut comp = BTreeMap::new();
    for i in 0..n {
        for (d1, l1) in tuples.iter().enumerate().skip(i + 1) {
            for (d2, l2) in tuples.iter().enumerate().skip(i + 1) {
                for (j1, t1) in l1.iter().enumerate() {
                    for (j2, t2) in l2.iter().enumerate() {
                        if tuple_face(c, t1, i, false) != tuple_face(c, t2, i, true) {
                            continue;
                        }
                        let z = comp_tuple(c, 0, i, t1, t2)?;
                        validate_tuple(c, 0, &z)?;
                        comp.insert(
                            (i, CellRef::stored(d1, j1), CellRef::stored(d2, j2)),
                            tref(&z),
                        );
                    }
                }
            }
        }
    }
    let cat = Arc::new(omega::from_tables(n, cells, src, tgt, comp)?);
    let src_map: Vec<Vec<CellRef>> = tuples
        .iter()
        .map(|layer| layer.iter().map(|t| t.x).collect())
        .collect();
    let tgt_map: Vec<Vec<CellRef>> = tuples
        .iter()
        .map(|layer| layer.iter().map(|t| t.y).collect())
        .collect();
    let src_f = OmegaFunctor::from_map(&cat, c, src_map);
    let tgt_f = OmegaFunctor::from_map(&cat, c, tgt_map);
    src_f.validate()?;
    tgt_f.validate()?;
    let kappa_map: Vec<Vec<CellRef>> = (0..c.cells.len())
        .map(|d| {
            c.stored(d)
                .iter()
                .map(|x| tref(&kappa_tuple(c, 0, x)))
                .collect()
        })
        .collect();
    let kappa_f = OmegaFunctor::from_map(c, &cat, kappa_map);
    kappa_f.validate()?;
    Ok(CylCat {
        base: c.clone(),
        cat,
        tuples,
        index,
        src_f,
        tgt_f,
        kappa_f,
    })
}

/// Functoriality of Cyl: a functor A -> B applied componentwise to tuples.
pub fn cyl_functor(f: &OmegaFunctor, cyl_a: &CylCat, cyl_b: &CylCat) -> Result<OmegaFunctor> {
    assert_eq!(*cyl_a.base, *f.source);
    assert_eq!(*cyl_b.base, *f.target);
    let map = (0..cyl_a.cat.cells.len())
        .map(|d| {
            cyl_a
                .stored_tuples(d)
                .iter()
                .map(|t| cyl_b.tuple_ref(&map_tuple(f, t)))
                .collect()
        })
        .collect();
    let out = OmegaFunctor::from_map(&cyl_a.cat, &cyl_b.cat, map);
    out.validate()?;
    Ok(out)
}
