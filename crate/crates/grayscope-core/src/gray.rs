//! Finite Gray and anti-Gray categories: hom omega-categories over an object
//! set, glued by a level-0 composition table on pure cell pairs. The
//! interchange of two positive-dimensional cells is a genuine
//! higher-dimensional cell whose boundary follows the lax-cube typing rule
//! (reversed in the anti orientation).

use crate::error::{Error, Result};
use crate::hom;
use crate::omega::{self, CellRef, OmegaCat, OmegaFunctor};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    Gray,
    Anti,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Gray => Orientation::Anti,
            Orientation::Anti => Orientation::Gray,
        }
    }
}

/// comp0 keys: (a, b, c, x in hom(b,c), y in hom(a,b)), pure cells only.
pub type Comp0Table = BTreeMap<(usize, usize, usize, CellRef, CellRef), CellRef>;

#[derive(Clone, Debug)]
pub struct GrayCat {
    pub orientation: Orientation,
    /// Hom truncation M; comp0 is defined for cell pairs with p + q <= M.
    pub truncation: usize,
    pub objects: Vec<String>,
    /// Absent pair means the empty hom.
    pub homs: BTreeMap<(usize, usize), Arc<OmegaCat>>,
    pub units: BTreeMap<usize, CellRef>,
    pub comp0: Comp0Table,
}

impl GrayCat {
    pub fn hom(&self, a: usize, b: usize) -> Option<&Arc<OmegaCat>> {
        self.homs.get(&(a, b))
    }

    /// Evaluate `x o0 y` for x a cell of hom(b,c) and y a cell of hom(a,b):
    /// unit 1-cells act trivially, identities degenerate to padded table
    /// values, and overflowing pure pairs fail.
    pub fn comp0(&self, a: usize, b: usize, c: usize, x: &CellRef, y: &CellRef) -> Result<CellRef> {
        let (xb, yb) = (x.base(), y.base());
        if b == c && xb == self.units[&b] {
            return Ok(y.padded(x.dim));
        }
        if a == b && yb == self.units[&a] {
            return Ok(x.padded(y.dim));
        }
        if xb.dim + yb.dim > self.truncation {
            return Err(Error::TruncationOverflow(format!(
                "comp0 of a {}-cell and a {}-cell over truncation {}",
                xb.dim, yb.dim, self.truncation
            )));
        }
        let z = self
            .comp0
            .get(&(a, b, c, xb, yb))
            .ok_or_else(|| Error::NotComposable {
                level: 0,
                left: format!("hom({b},{c}) cell {xb:?}"),
                right: format!("hom({a},{b}) cell {yb:?}"),
            })?;
        Ok(z.padded(x.pad + y.pad))
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }
}

/// Hom-level boundary of an interchanger per the lax-cube picture. Returns
/// (source, target) in the Gray orientation; the anti orientation swaps them.
fn interchanger_boundary(
    g: &GrayCat,
    a: usize,
    b: usize,
    c: usize,
    x: &CellRef,
    y: &CellRef,
) -> Result<(CellRef, CellRef)> {
    let hbc = &g.homs[&(b, c)];
    let hab = &g.homs[&(a, b)];
    let hac = &g.homs[&(a, c)];
    let cmp = |i: usize, l: &CellRef, r: &CellRef| hac.comp(i, l, r);
    let o0 = |u: &CellRef, v: &CellRef| g.comp0(a, b, c, u, v);
    match (x.dim, y.dim) {
        (1, 1) => {
            let s = cmp(0, &o0(x, &hab.tgt(y))?, &o0(&hbc.src(x), y)?)?;
            let t = cmp(0, &o0(&hbc.tgt(x), y)?, &o0(x, &hab.src(y))?)?;
            Ok((s, t))
        }
        (1, 2) => {
            let (u, v) = (hab.src(y), hab.tgt(y));
            let (p, q) = (hab.s_i(0, y), hab.t_i(0, y));
            let (f, gg) = (hbc.src(x), hbc.tgt(x));
            let s = cmp(1, &o0(x, &v)?, &cmp(0, &o0(x, &q)?, &o0(&f, y)?)?)?;
            let t = cmp(1, &cmp(0, &o0(&gg, y)?, &o0(x, &p)?)?, &o0(x, &u)?)?;
            Ok((s, t))
        }
        (2, 1) => {
            let (m, n) = (hbc.src(x), hbc.tgt(x));
            let (f, gg) = (hbc.s_i(0, x), hbc.t_i(0, x));
            let (p, q) = (hab.src(y), hab.tgt(y));
            let s = cmp(1, &cmp(0, &o0(&gg, y)?, &o0(x, &p)?)?, &o0(&m, y)?)?;
            let t = cmp(1, &o0(&n, y)?, &cmp(0, &o0(x, &q)?, &o0(&f, y)?)?)?;
            Ok((s, t))
        }
        _ => Err(Error::UnsupportedShape(format!(
            "interchanger of a {}-cell and a {}-cell",
            x.dim, y.dim
        ))),
    }
}

/// The full law suite: hom validity, table purity and completeness, unit
/// behaviour, whisker functoriality, interchanger typing, level-0
/// associativity, and the level-0 decomposition axioms in both arguments.
pub fn validate_gray(g: &GrayCat) -> Result<()> {
    let n = g.objects.len();
    for i in 0..n {
        let h = g
            .homs
            .get(&(i, i))
            .ok_or_else(|| Error::DanglingReference(format!("endo hom of object {i}")))?;
        let u = g
            .units
            .get(&i)
            .ok_or_else(|| Error::MalformedSpec(format!("object {i} has no unit")))?;
        if u.dim != 0 || !h.contains(u) {
            return Err(Error::DanglingReference(format!("unit of object {i}")));
        }
    }
    for ((a, b), h) in &g.homs {
        if *a >= n || *b >= n {
            return Err(Error::DanglingReference(format!("hom pair ({a},{b})")));
        }
        if h.truncation != g.truncation {
            return Err(Error::TruncationOverflow(format!(
                "hom ({a},{b}) truncated at {} instead of {}",
                h.truncation, g.truncation
            )));
        }
        h.validate()?;
    }
    // table purity and membership
    for ((a, b, c, x, y), z) in &g.comp0 {
        let (Some(hbc), Some(hab), Some(hac)) = (g.hom(*b, *c), g.hom(*a, *b), g.hom(*a, *c))
        else {
            return Err(Error::DanglingReference(format!(
                "comp0 entry over missing hom ({a},{b},{c})"
            )));
        };
        if x.is_pad() || y.is_pad() {
            return Err(Error::MalformedSpec(format!(
                "comp0 keyed on identity cells: ({x:?}, {y:?})"
            )));
        }
        if !hbc.contains(x) || !hab.contains(y) || !hac.contains(z) {
            return Err(Error::DanglingReference(format!(
                "comp0 entry ({a},{b},{c},{x:?},{y:?})"
            )));
        }
        if x.dim + y.dim > g.truncation {
            return Err(Error::TruncationOverflow(format!(
                "comp0 entry with p+q = {}",
                x.dim + y.dim
            )));
        }
        if z.dim != x.dim + y.dim {
            return Err(Error::law(
                "comp0 grading",
                format!("({x:?}) o0 ({y:?}) has dimension {}", z.dim),
            ));
        }
        // stored entries keyed on unit cells must agree with the unit law
        if b == c && *x == g.units[b] && *z != y.padded(0) {
            return Err(Error::law("left unit", format!("at {y:?}")));
        }
        if a == b && *y == g.units[a] && *z != *x {
            return Err(Error::law("right unit", format!("at {x:?}")));
        }
    }
    // completeness on pure pairs
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (Some(hbc), Some(hab)) = (g.hom(b, c), g.hom(a, b)) else {
                    continue;
                };
                if hbc.stored_count(0) > 0 && hab.stored_count(0) > 0 && g.hom(a, c).is_none() {
                    return Err(Error::DanglingReference(format!(
                        "hom ({a},{c}) needed by comp0"
                    )));
                }
                for p in 0..=g.truncation {
                    for q in 0..=(g.truncation - p) {
                        for x in hbc.stored(p) {
                            if b == c && x == g.units[&b] {
                                continue;
                            }
                            for y in hab.stored(q) {
                                if a == b && y == g.units[&a] {
                                    continue;
                                }
                                g.comp0(a, b, c, &x, &y)?;
                            }
                        }
                    }
                }
            }
        }
    }
    // whiskering by a 1-cell is a strict functor of homs, in both arguments
    for (&(a, b), hab) in &g.homs {
        for u in hab.stored(0) {
            for c in 0..n {
                if let (Some(hbc), Some(hac)) = (g.hom(b, c), g.hom(a, c)) {
                    let map = (0..hbc.cells.len())
                        .map(|d| {
                            hbc.stored(d)
                                .iter()
                                .map(|x| g.comp0(a, b, c, x, &u))
                                .collect::<Result<_>>()
                        })
                        .collect::<Result<_>>()?;
                    let f = OmegaFunctor::from_map(hbc, hac, map);
                    f.validate().map_err(|e| {
                        Error::law("right whisker functoriality", format!("by {u:?}: {e}"))
                    })?;
                }
                if let (Some(hca), Some(hcb)) = (g.hom(c, a), g.hom(c, b)) {
                    let map = (0..hca.cells.len())
                        .map(|d| {
                            hca.stored(d)
                                .iter()
                                .map(|x| g.comp0(c, a, b, &u, x))
                                .collect::<Result<_>>()
                        })
                        .collect::<Result<_>>()?;
                    let f = OmegaFunctor::from_map(hca, hcb, map);
                    f.validate().map_err(|e| {
                        Error::law("left whisker functoriality", format!("by {u:?}: {e}"))
                    })?;
                }
            }
        }
    }
    // interchanger typing
    for ((a, b, c, x, y), z) in &g.comp0 {
        if x.dim == 0 || y.dim == 0 {
            continue;
        }
        let (mut s, mut t) = interchanger_boundary(g, *a, *b, *c, x, y)?;
        if g.orientation == Orientation::Anti {
            std::mem::swap(&mut s, &mut t);
        }
        let hac = &g.homs[&(*a, *c)];
        if hac.src(z) != s || hac.tgt(z) != t {
            return Err(Error::law(
                "interchanger typing",
                format!(
                    "({x:?}) o0 ({y:?}): boundary ({}, {}), expected ({}, {})",
                    hac.name(&hac.src(z)),
                    hac.name(&hac.tgt(z)),
                    hac.name(&s),
                    hac.name(&t)
                ),
            ));
        }
    }
    // level-0 associativity over all pure triples in range
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (Some(hcd), Some(hbc), Some(hab)) =
                        (g.hom(c, d), g.hom(b, c), g.hom(a, b))
                    else {
                        continue;
                    };
                    for p in 0..=g.truncation {
                        for q in 0..=(g.truncation - p) {
                            for r in 0..=(g.truncation - p - q) {
                                for x in hcd.stored(p) {
                                    for y in hbc.stored(q) {
                                        for z in hab.stored(r) {
                                            let l = g.comp0(
                                                a,
                                                b,
                                                d,
                                                &g.comp0(b, c, d, &x, &y)?,
                                                &z,
                                            )?;
                                            let rr = g.comp0(
                                                a,
                                                c,
                                                d,
                                                &x,
                                                &g.comp0(a, b, c, &y, &z)?,
                                            )?;
                                            if l != rr {
                                                return Err(Error::law(
                                                    "comp0 associativity",
                                                    format!("({x:?},{y:?},{z:?})"),
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
    // level-0 decomposition of comp0 in each argument
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (Some(hbc), Some(hab)) = (g.hom(b, c), g.hom(a, b)) else {
                    continue;
                };
                let hac = &g.homs[&(a, c)];
                // (w2 *_0 w1) o0 u = [(w2 o0 u) *_0 (w1 o0 p)] *_1 [(w2 o0 q) *_0 (w1 o0 u)]
                for pw in 1..=g.truncation {
                    for w2 in hbc.stored(pw) {
                        for w1 in hbc.stored(pw) {
                            if !hbc.composable(0, &w2, &w1) {
                                continue;
                            }
                            let w = hbc.comp(0, &w2, &w1)?;
                            for qu in 1..=g.truncation.saturating_sub(pw) {
                                for u in hab.stored(qu) {
                                    let (p, q) = (hab.s_i(0, &u), hab.t_i(0, &u));
                                    let lhs = g.comp0(a, b, c, &w, &u)?;
                                    let rhs = hac.comp(
                                        1,
                                        &hac.comp(
                                            0,
                                            &g.comp0(a, b, c, &w2, &u)?,
                                            &g.comp0(a, b, c, &w1, &p)?,
                                        )?,
                                        &hac.comp(
                                            0,
                                            &g.comp0(a, b, c, &w2, &q)?,
                                            &g.comp0(a, b, c, &w1, &u)?,
                                        )?,
                                    )?;
                                    let (lhs, rhs) = if g.orientation == Orientation::Anti {
                                        (rhs, lhs)
                                    } else {
                                        (lhs, rhs)
                                    };
                                    if lhs != rhs {
                                        return Err(Error::law(
                                            "comp0 left decomposition",
                                            format!("({w2:?} * {w1:?}) o0 {u:?}"),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
                // x o0 (u2 *_0 u1) = [(g o0 u2) *_0 (x o0 u1)] *_1 [(x o0 u2) *_0 (f o0 u1)]
                for px in 1..=g.truncation {
                    for x in hbc.stored(px) {
                        let (f, gg) = (hbc.s_i(0, &x), hbc.t_i(0, &x));
                        for qu in 1..=g.truncation.saturating_sub(px) {
                            for u2 in hab.stored(qu) {
                                for u1 in hab.stored(qu) {
                                    if !hab.composable(0, &u2, &u1) {
                                        continue;
                                    }
                                    let u = hab.comp(0, &u2, &u1)?;
                                    let lhs = g.comp0(a, b, c, &x, &u)?;
                                    let rhs = hac.comp(
                                        1,
                                        &hac.comp(
                                            0,
                                            &g.comp0(a, b, c, &gg, &u2)?,
                                            &g.comp0(a, b, c, &x, &u1)?,
                                        )?,
                                        &hac.comp(
                                            0,
                                            &g.comp0(a, b, c, &x, &u2)?,
                                            &g.comp0(a, b, c, &f, &u1)?,
                                        )?,
                                    )?;
                                    let (lhs, rhs) = if g.orientation == Orientation::Anti {
                                        (rhs, lhs)
                                    } else {
                                        (lhs, rhs)
                                    };
                                    if lhs != rhs {
                                        return Err(Error::law(
                                            "comp0 right decomposition",
                                            format!("{x:?} o0 ({u2:?} * {u1:?})"),
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
    Ok(())
}

/// A strict omega-category viewed as a Gray category: homs from hom_cat and
/// every interchanger the identity on the (strictly equal) exchanged
/// composite.
pub fn gray_from_omega(c: &Arc<OmegaCat>) -> Result<GrayCat> {
    if c.truncation == 0 {
        return Ok(GrayCat {
            orientation: Orientation::Gray,
            truncation: 0,
            objects: c.stored(0).iter().map(|x| c.name(x)).collect(),
            homs: BTreeMap::new(),
            units: BTreeMap::new(),
            comp0: BTreeMap::new(),
        });
    }
    let m = c.truncation - 1;
    let objs = c.stored(0);
    let mut homs = BTreeMap::new();
    let mut hcs = BTreeMap::new();
    let mut units = BTreeMap::new();
    for (i, a) in objs.iter().enumerate() {
        for (j, b) in objs.iter().enumerate() {
            let h = hom::hom_cat(c, *a, *b)?;
            if h.cat.stored_count(0) == 0 {
                continue;
            }
            homs.insert((i, j), h.cat.clone());
            hcs.insert((i, j), h);
        }
    }
    for (i, a) in objs.iter().enumerate() {
        units.insert(i, hcs[&(i, i)].from_c(&a.padded(1)));
    }
    let mut comp0 = BTreeMap::new();
    for i in 0..objs.len() {
        for j in 0..objs.len() {
            for k in 0..objs.len() {
                let (Some(hbc), Some(hab)) = (hcs.get(&(j, k)), hcs.get(&(i, j))) else {
                    continue;
                };
                let hac = &hcs[&(i, k)];
                for p in 0..=m {
                    for q in 0..=(m - p) {
                        for x in hbc.cat.stored(p) {
                            for y in hab.cat.stored(q) {
                                let z = c.comp(0, &hbc.to_c(&x), &hab.to_c(&y))?;
                                let zh = hac.from_c(&z);
                                comp0.insert(
                                    (i, j, k, x, y),
                                    zh.padded(p + q - zh.dim),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(GrayCat {
        orientation: Orientation::Gray,
        truncation: m,
        objects: objs.iter().map(|x| c.name(x)).collect(),
        homs,
        units,
        comp0,
    })
}

/// The three free interchange shapes: objects a, b, c with globular
/// generators in hom(b,c) and hom(a,b), and hom(a,c) the tensor-of-globes
/// pasting with one non-invertible interchanger.
pub fn free_interchange(p: usize, q: usize) -> Result<GrayCat> {
    match (p, q) {
        (1, 1) | (1, 2) | (2, 1) => {}
        _ => {
            return Err(Error::UnsupportedShape(format!(
                "free interchange of shape ({p},{q})"
            )))
        }
    }
    let m = p + q;
    let hom_bc = Arc::new(omega::globe(p, m));
    let hom_ab = Arc::new(omega::globe(q, m));
    let hom_ac = Arc::new(tensor_of_globes(p, q, m)?);
    let term = Arc::new(omega::terminal(m));
    let mut homs = BTreeMap::new();
    for i in 0..3 {
        homs.insert((i, i), term.clone());
    }
    homs.insert((1, 2), hom_bc.clone());
    homs.insert((0, 1), hom_ab.clone());
    homs.insert((0, 2), hom_ac.clone());
    let units: BTreeMap<usize, CellRef> = (0..3).map(|i| (i, CellRef::stored(0, 0))).collect();
    let mut comp0 = BTreeMap::new();
    // generators of the globes pair off to the named pasting cells
    let lut = |h: &OmegaCat, r: &CellRef| h.name(r);
    for dx in 0..=p {
        for x in hom_bc.stored(dx) {
            for dy in 0..=q {
                if dx + dy > m {
                    continue;
                }
                for y in hom_ab.stored(dy) {
                    let name = format!("{}&{}", lut(&hom_bc, &x), lut(&hom_ab, &y));
                    let z = hom_ac.lookup(dx + dy, &name).ok_or_else(|| {
                        Error::DanglingReference(format!("pasting cell {name}"))
                    })?;
                    comp0.insert((0, 1, 2, x, y), z);
                }
            }
        }
    }
    // unit-keyed pairs against the terminal homs
    for (&(i, j), h) in &homs {
        if i == j {
            continue;
        }
        for d in 0..=m {
            for x in h.stored(d) {
                comp0.insert((i, j, j, units[&j], x), x);
                comp0.insert((i, i, j, x, units[&i]), x);
            }
        }
    }
    Ok(GrayCat {
        orientation: Orientation::Gray,
        truncation: m,
        objects: vec!["a".into(), "b".into(), "c".into()],
        homs,
        units,
        comp0,
    })
}

/// The hom omega-category of the free interchange: cells named `x&y` for the
/// generator pairs, plus the free composites. Encoded directly from the
/// tensor-of-globes picture.
fn tensor_of_globes(p: usize, q: usize, truncation: usize) -> Result<OmegaCat> {
    use omega::{CatBuilder, NamedRef};
    fn r(d: usize, name: &str) -> NamedRef {
        (d, name.to_string(), 0)
    }
    let mut b = CatBuilder::new(truncation);
    for xn in ["s0", "t0"] {
        for yn in ["s0", "t0"] {
            b.object(&format!("{xn}&{yn}"));
        }
    }
    match (p, q) {
        (1, 1) => {
            // the lax square
            b.arrow("e&s0", "s0&s0", "t0&s0")
                .arrow("e&t0", "s0&t0", "t0&t0")
                .arrow("s0&e", "s0&s0", "s0&t0")
                .arrow("t0&e", "t0&s0", "t0&t0")
                .arrow("diag1", "s0&s0", "t0&t0") // e&t0 . s0&e
                .arrow("diag2", "s0&s0", "t0&t0") // t0&e . e&s0
                .comp(0, r(1, "e&t0"), r(1, "s0&e"), r(1, "diag1"))
                .comp(0, r(1, "t0&e"), r(1, "e&s0"), r(1, "diag2"))
                .cell(2, "e&e", ("diag1", 0), ("diag2", 0));
        }
        (1, 2) => {
            // x is the 1-cell e of the first globe; y runs over the 2-globe
            b.arrow("s0&s1", "s0&s0", "s0&t0")
                .arrow("s0&t1", "s0&s0", "s0&t0")
                .arrow("t0&s1", "t0&s0", "t0&t0")
                .arrow("t0&t1", "t0&s0", "t0&t0")
                .arrow("e&s0", "s0&s0", "t0&s0")
                .arrow("e&t0", "s0&t0", "t0&t0")
                .arrow("c1", "s0&s0", "t0&t0") // e&t0 . s0&s1
                .arrow("c2", "s0&s0", "t0&t0") // e&t0 . s0&t1
                .arrow("d1", "s0&s0", "t0&t0") // t0&s1 . e&s0
                .arrow("d2", "s0&s0", "t0&t0") // t0&t1 . e&s0
                .comp(0, r(1, "e&t0"), r(1, "s0&s1"), r(1, "c1"))
                .comp(0, r(1, "e&t0"), r(1, "s0&t1"), r(1, "c2"))
                .comp(0, r(1, "t0&s1"), r(1, "e&s0"), r(1, "d1"))
                .comp(0, r(1, "t0&t1"), r(1, "e&s0"), r(1, "d2"))
                .cell(2, "s0&e", ("s0&s1", 0), ("s0&t1", 0))
                .cell(2, "t0&e", ("t0&s1", 0), ("t0&t1", 0))
                .cell(2, "e&s1", ("c1", 0), ("d1", 0))
                .cell(2, "e&t1", ("c2", 0), ("d2", 0))
                .cell(2, "w1", ("c1", 0), ("c2", 0)) // e&t0 *0 s0&e
                .cell(2, "w2", ("d1", 0), ("d2", 0)) // t0&e *0 e&s0
                .cell(2, "lhs", ("c1", 0), ("d2", 0)) // e&t1 *1 w1
                .cell(2, "rhs", ("c1", 0), ("d2", 0)) // w2 *1 e&s1
                .comp(0, r(1, "e&t0"), r(2, "s0&e"), r(2, "w1"))
                .comp(0, r(2, "t0&e"), r(1, "e&s0"), r(2, "w2"))
                .comp(1, r(2, "e&t1"), r(2, "w1"), r(2, "lhs"))
                .comp(1, r(2, "w2"), r(2, "e&s1"), r(2, "rhs"))
                .cell(3, "e&e", ("lhs", 0), ("rhs", 0));
        }
        (2, 1) => {
            // mirror: x runs over the 2-globe, y is the 1-cell e
            b.arrow("s1&s0", "s0&s0", "t0&s0")
                .arrow("t1&s0", "s0&s0", "t0&s0")
                .arrow("s1&t0", "s0&t0", "t0&t0")
                .arrow("t1&t0", "s0&t0", "t0&t0")
                .arrow("s0&e", "s0&s0", "s0&t0")
                .arrow("t0&e", "t0&s0", "t0&t0")
                .arrow("c1", "s0&s0", "t0&t0") // s1&t0 . s0&e
                .arrow("c2", "s0&s0", "t0&t0") // t1&t0 . s0&e
                .arrow("d1", "s0&s0", "t0&t0") // t0&e . s1&s0
                .arrow("d2", "s0&s0", "t0&t0") // t0&e . t1&s0
                .comp(0, r(1, "s1&t0"), r(1, "s0&e"), r(1, "c1"))
                .comp(0, r(1, "t1&t0"), r(1, "s0&e"), r(1, "c2"))
                .comp(0, r(1, "t0&e"), r(1, "s1&s0"), r(1, "d1"))
                .comp(0, r(1, "t0&e"), r(1, "t1&s0"), r(1, "d2"))
                .cell(2, "e&s0", ("s1&s0", 0), ("t1&s0", 0))
                .cell(2, "e&t0", ("s1&t0", 0), ("t1&t0", 0))
                .cell(2, "s1&e", ("c1", 0), ("d1", 0))
                .cell(2, "t1&e", ("c2", 0), ("d2", 0))
                .cell(2, "w1", ("c1", 0), ("c2", 0)) // e&t0 *0 s0&e
                .cell(2, "w2", ("d1", 0), ("d2", 0)) // t0&e *0 e&s0
                .cell(2, "lhs", ("c1", 0), ("d2", 0)) // w2 *1 s1&e
                .cell(2, "rhs", ("c1", 0), ("d2", 0)) // t1&e *1 w1
                .comp(0, r(2, "e&t0"), r(1, "s0&e"), r(2, "w1"))
                .comp(0, r(1, "t0&e"), r(2, "e&s0"), r(2, "w2"))
                .comp(1, r(2, "w2"), r(2, "s1&e"), r(2, "lhs"))
                .comp(1, r(2, "t1&e"), r(2, "w1"), r(2, "rhs"))
                .cell(3, "e&e", ("lhs", 0), ("rhs", 0));
        }
        _ => unreachable!(),
    }
    b.build()
}

/// Hom-wise duality: reverse the given hom dimensions everywhere. Flips the
/// orientation unless every reversed pair cancels (the o-duality of homs
/// preserves it).
fn homwise_dual(g: &GrayCat, s: &[usize], flip: bool) -> GrayCat {
    let homs: BTreeMap<(usize, usize), Arc<OmegaCat>> = g
        .homs
        .iter()
        .map(|(k, h)| (*k, Arc::new(omega::dual(h, s))))
        .collect();
    // cell references are untouched by dual, so tables carry over
    GrayCat {
        orientation: if flip {
            g.orientation.flip()
        } else {
            g.orientation
        },
        truncation: g.truncation,
        objects: g.objects.clone(),
        homs,
        units: g.units.clone(),
        comp0: g.comp0.clone(),
    }
}

/// Transpose: swap every hom pair and the comp0 argument order.
fn transpose(g: &GrayCat) -> GrayCat {
    let homs: BTreeMap<(usize, usize), Arc<OmegaCat>> = g
        .homs
        .iter()
        .map(|(&(a, b), h)| ((b, a), h.clone()))
        .collect();
    let comp0: Comp0Table = g
        .comp0
        .iter()
        .map(|(&(a, b, c, x, y), &z)| ((c, b, a, y, x), z))
        .collect();
    GrayCat {
        orientation: g.orientation.flip(),
        truncation: g.truncation,
        objects: g.objects.clone(),
        homs,
        units: g.units.clone(),
        comp0,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GrayDuality {
    Op,
    Co,
    O,
    T,
    Top,
    Cot,
    To,
}

/// The seven non-trivial members of the duality group, following the
/// factorizations op = trans . co-homs, co = op-homs, o = trans . all-homs,
/// and their transposed variants.
pub fn gray_dual(g: &GrayCat, which: GrayDuality) -> GrayCat {
    let co = omega::even_dims(g.truncation.max(1));
    let op = omega::odd_dims(g.truncation.max(1));
    let all = omega::all_dims(g.truncation.max(1));
    match which {
        GrayDuality::Op => transpose(&homwise_dual(g, &co, true)),
        GrayDuality::Co => homwise_dual(g, &op, true),
        GrayDuality::O => transpose(&homwise_dual(g, &all, false)),
        GrayDuality::T => transpose(g),
        GrayDuality::Top => homwise_dual(g, &co, true),
        GrayDuality::Cot => transpose(&homwise_dual(g, &op, true)),
        GrayDuality::To => homwise_dual(g, &all, false),
    }
}

/// Product of Gray categories with component-wise comp0, together with its
/// projections.
pub struct GrayProduct {
    pub cat: GrayCat,
    pub p1: GrayFunctor,
    pub p2: GrayFunctor,
    pub spans: BTreeMap<(usize, usize), crate::limits::Span>,
}

pub fn gray_product(g: &GrayCat, h: &GrayCat) -> Result<GrayProduct> {
    if g.orientation != h.orientation {
        return Err(Error::OrientationMismatch(
            "product of a gray and an anti-gray category".into(),
        ));
    }
    if g.truncation != h.truncation {
        return Err(Error::TruncationOverflow(
            "product homs truncated differently".into(),
        ));
    }
    let (ng, nh) = (g.objects.len(), h.objects.len());
    let oi = |i: usize, j: usize| i * nh + j;
    let mut homs = BTreeMap::new();
    let mut spans: BTreeMap<(usize, usize), crate::limits::Span> = BTreeMap::new();
    for (&(a, b), hg) in &g.homs {
        for (&(a2, b2), hh) in &h.homs {
            let span = crate::limits::product(hg, hh)?;
            homs.insert((oi(a, a2), oi(b, b2)), span.cat.clone());
            spans.insert((oi(a, a2), oi(b, b2)), span);
        }
    }
    let mut units = BTreeMap::new();
    for i in 0..ng {
        for j in 0..nh {
            units.insert(
                oi(i, j),
                spans[&(oi(i, j), oi(i, j))].pair(&g.units[&i], &h.units[&j]),
            );
        }
    }
    let mut comp0 = BTreeMap::new();
    for (&(pa, pb), span_ab) in &spans {
        for (&(qa, qb), span_bc) in &spans {
            if qa != pb {
                continue;
            }
            let Some(span_ac) = spans.get(&(pa, qb)) else {
                continue;
            };
            for dx in 0..=g.truncation {
                for dy in 0..=(g.truncation - dx) {
                    for x in span_bc.cat.stored(dx) {
                        for y in span_ab.cat.stored(dy) {
                            let (xg, xh) = span_bc.components(&x);
                            let (yg, yh) = span_ab.components(&y);
                            let zg = g.comp0(pa / nh, pb / nh, qb / nh, &xg, &yg)?;
                            let zh = h.comp0(pa % nh, pb % nh, qb % nh, &xh, &yh)?;
                            let dim = dx + dy;
                            comp0.insert(
                                (pa, pb, qb, x, y),
                                span_ac.pair(&zg.padded(dim - zg.dim), &zh.padded(dim - zh.dim)),
                            );
                        }
                    }
                }
            }
        }
    }
    let objects = (0..ng)
        .flat_map(|i| (0..nh).map(move |j| (i, j)))
        .map(|(i, j)| format!("({},{})", g.objects[i], h.objects[j]))
        .collect();
    let p1 = GrayFunctor {
        object_map: (0..ng * nh).map(|k| k / nh).collect(),
        hom_maps: spans.iter().map(|(k, s)| (*k, s.p1.clone())).collect(),
    };
    let p2 = GrayFunctor {
        object_map: (0..ng * nh).map(|k| k % nh).collect(),
        hom_maps: spans.iter().map(|(k, s)| (*k, s.p2.clone())).collect(),
    };
    Ok(GrayProduct {
        cat: GrayCat {
            orientation: g.orientation,
            truncation: g.truncation,
            objects,
            homs,
            units,
            comp0,
        },
        p1,
        p2,
        spans,
    })
}

/// A Gray functor: object map plus one hom functor per object pair.
#[derive(Clone, Debug)]
pub struct GrayFunctor {
    pub object_map: Vec<usize>,
    pub hom_maps: BTreeMap<(usize, usize), OmegaFunctor>,
}

impl GrayFunctor {
    pub fn identity(g: &GrayCat) -> Self {
        GrayFunctor {
            object_map: (0..g.objects.len()).collect(),
            hom_maps: g
                .homs
                .iter()
                .map(|(k, h)| (*k, OmegaFunctor::identity(h)))
                .collect(),
        }
    }

    pub fn apply_cell(&self, a: usize, b: usize, x: &CellRef) -> CellRef {
        self.hom_maps[&(a, b)].apply(x)
    }

    /// Unit and comp0 preservation over all pure pairs.
    pub fn validate(&self, src: &GrayCat, tgt: &GrayCat) -> Result<()> {
        if src.orientation != tgt.orientation {
            return Err(Error::OrientationMismatch("gray functor".into()));
        }
        for (&(a, b), f) in &self.hom_maps {
            f.validate()?;
            if *f.source != *src.homs[&(a, b)] {
                return Err(Error::MalformedSpec(format!("hom map source at ({a},{b})")));
            }
            let (fa, fb) = (self.object_map[a], self.object_map[b]);
            if *f.target != *tgt.homs[&(fa, fb)] {
                return Err(Error::MalformedSpec(format!("hom map target at ({a},{b})")));
            }
        }
        for (i, &fi) in self.object_map.iter().enumerate() {
            if self.hom_maps[&(i, i)].apply(&src.units[&i]) != tgt.units[&fi] {
                return Err(Error::law("unit preservation", format!("object {i}")));
            }
        }
        for ((a, b, c, x, y), z) in &src.comp0 {
            let (fa, fb, fc) = (
                self.object_map[*a],
                self.object_map[*b],
                self.object_map[*c],
            );
            let lhs = self.hom_maps[&(*a, *c)].apply(z);
            let rhs = tgt.comp0(
                fa,
                fb,
                fc,
                &self.hom_maps[&(*b, *c)].apply(x),
                &self.hom_maps[&(*a, *b)].apply(y),
            )?;
            if lhs != rhs {
                return Err(Error::law(
                    "comp0 preservation",
                    format!("({x:?}) o0 ({y:?})"),
                ));
            }
        }
        Ok(())
    }

    pub fn compose(g2: &GrayFunctor, g1: &GrayFunctor) -> GrayFunctor {
        GrayFunctor {
            object_map: g1.object_map.iter().map(|&i| g2.object_map[i]).collect(),
            hom_maps: g1
                .hom_maps
                .iter()
                .map(|(&(a, b), f)| {
                    let (fa, fb) = (g1.object_map[a], g1.object_map[b]);
                    ((a, b), OmegaFunctor::compose(&g2.hom_maps[&(fa, fb)], f))
                })
                .collect(),
        }
    }
}

/// Strict transformation between Gray functors: a 1-cell component per
/// object, natural against every higher cell through comp0.
pub struct GrayStrictTransformation {
    /// components[c] is a 0-cell of hom(F(c), G(c)) in the target.
    pub components: Vec<CellRef>,
}

pub fn strict_transformation_check(
    src: &GrayCat,
    tgt: &GrayCat,
    f: &GrayFunctor,
    g: &GrayFunctor,
    alpha: &GrayStrictTransformation,
) -> Result<()> {
    if alpha.components.len() != src.objects.len() {
        return Err(Error::MalformedSpec("component count".into()));
    }
    for (&(a, b), h) in &src.homs {
        let (fa, fb) = (f.object_map[a], f.object_map[b]);
        let (ga, gb) = (g.object_map[a], g.object_map[b]);
        for d in 0..h.cells.len() {
            for x in h.stored(d) {
                let lhs = tgt.comp0(
                    fa,
                    fb,
                    gb,
                    &alpha.components[b],
                    &f.hom_maps[&(a, b)].apply(&x),
                )?;
                let rhs = tgt.comp0(
                    fa,
                    ga,
                    gb,
                    &g.hom_maps[&(a, b)].apply(&x),
                    &alpha.components[a],
                )?;
                if lhs != rhs {
                    return Err(Error::law(
                        "strict transformation naturality",
                        format!("at cell {} of hom({a},{b})", h.name(&x)),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Isomorphism search between small Gray categories: an object bijection
/// plus hom isomorphisms that jointly respect units and comp0.
pub fn gray_is_isomorphic(g: &GrayCat, h: &GrayCat) -> Option<GrayFunctor> {
    if g.orientation != h.orientation
        || g.objects.len() != h.objects.len()
        || g.truncation != h.truncation
    {
        return None;
    }
    let n = g.objects.len();
    let mut perm: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn iso_candidates(a: &Arc<OmegaCat>, b: &Arc<OmegaCat>) -> Vec<OmegaFunctor> {
        omega::enumerate_functors(a, b)
            .into_iter()
            .filter(|f| f.is_bijective())
            .collect()
    }
    fn try_perm(
        g: &GrayCat,
        h: &GrayCat,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Option<GrayFunctor> {
        let n = g.objects.len();
        if perm.len() == n {
            // choose hom isos jointly
            let keys: Vec<(usize, usize)> = g.homs.keys().copied().collect();
            // all hom pairs must exist on the other side
            for &(a, b) in &keys {
                h.homs.get(&(perm[a], perm[b]))?;
            }
            if h.homs.len() != keys.len() {
                return None;
            }
            let cand: Vec<Vec<OmegaFunctor>> = keys
                .iter()
                .map(|&(a, b)| iso_candidates(&g.homs[&(a, b)], &h.homs[&(perm[a], perm[b])]))
                .collect();
            let mut pick = vec![0usize; keys.len()];
            'outer: loop {
                let maps: BTreeMap<(usize, usize), OmegaFunctor> = keys
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| (k, cand[i].get(pick[i]).cloned()))
                    .filter_map(|(k, f)| f.map(|f| (k, f)))
                    .collect();
                if maps.len() == keys.len() {
                    let f = GrayFunctor {
                        object_map: perm.clone(),
                        hom_maps: maps,
                    };
                    if f.validate(g, h).is_ok() {
                        return Some(f);
                    }
                }
                // advance the multi-index
                for i in 0..keys.len() {
                    pick[i] += 1;
                    if pick[i] < cand[i].len().max(1) {
                        continue 'outer;
                    }
                    pick[i] = 0;
                }
                return None;
            }
        }
        let i = perm.len();
        for j in 0..n {
            if used[j] {
                continue;
            }
            // quick degree screen
            let gd = g.homs.keys().filter(|(a, _)| *a == i).count();
            let hd = h.homs.keys().filter(|(a, _)| *a == j).count();
            if gd != hd {
                continue;
            }
            perm.push(j);
            used[j] = true;
            if let Some(f) = try_perm(g, h, perm, used) {
                return Some(f);
            }
            perm.pop();
            used[j] = false;
        }
        None
    }
    try_perm(g, h, &mut perm, &mut used)
}
