//! Finite, dimension-truncated strict omega-categories.
//!
//! Cells are stored per dimension as string identifiers. Identities are never
//! stored: a [`CellRef`] carries a `pad` count of formal identity applications
//! above a stored cell, and every table lookup normalizes pads first. The
//! composition tables are total on composable pairs of stored cells (possibly
//! of different dimensions, realizing the padding convention
//! `x *_i y = id_x^l *_i y`); composites involving identities are computed by
//! the unit laws.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Reference to a cell: a stored cell of dimension `dim - pad` under `pad`
/// formal identity applications. Two refs are equal iff they agree on the
/// stored cell and the pad count.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
pub struct CellRef {
    pub dim: usize,
    pub index: usize,
    pub pad: usize,
}

impl CellRef {
    pub fn stored(dim: usize, index: usize) -> Self {
        CellRef { dim, index, pad: 0 }
    }

    /// Dimension of the underlying stored cell.
    pub fn base_dim(&self) -> usize {
        self.dim - self.pad
    }

    /// The stored cell itself, pad removed.
    pub fn base(&self) -> CellRef {
        CellRef {
            dim: self.base_dim(),
            index: self.index,
            pad: 0,
        }
    }

    pub fn is_pad(&self) -> bool {
        self.pad > 0
    }

    /// Apply `n` further formal identities.
    pub fn padded(&self, n: usize) -> CellRef {
        CellRef {
            dim: self.dim + n,
            index: self.index,
            pad: self.pad + n,
        }
    }

    /// View this cell at effective dimension `d >= self.dim` by padding.
    pub fn at_dim(&self, d: usize) -> CellRef {
        assert!(d >= self.dim, "cannot unpad via at_dim");
        self.padded(d - self.dim)
    }

    fn unpadded(&self) -> CellRef {
        assert!(self.pad > 0);
        CellRef {
            dim: self.dim - 1,
            index: self.index,
            pad: self.pad - 1,
        }
    }
}

/// A finite strict omega-category truncated at `truncation`: all cells above
/// the truncation are formal identities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OmegaCat {
    pub truncation: usize,
    /// Stored (non-identity) cell names per dimension, in canonical order.
    pub cells: Vec<Vec<String>>,
    index: Vec<BTreeMap<String, usize>>,
    src: BTreeMap<(usize, usize), CellRef>,
    tgt: BTreeMap<(usize, usize), CellRef>,
    /// `(i, x, y) -> x *_i y` on pairs of stored cells with dims > i.
    comp: BTreeMap<(usize, CellRef, CellRef), CellRef>,
}

impl OmegaCat {
    pub fn stored_count(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, |v| v.len())
    }

    /// Stored cells of exactly this dimension.
    pub fn stored(&self, dim: usize) -> Vec<CellRef> {
        (0..self.stored_count(dim))
            .map(|i| CellRef::stored(dim, i))
            .collect()
    }

    /// All cells of effective dimension `dim`: stored cells plus padded
    /// lower-dimensional cells. Canonically ordered.
    pub fn all_cells(&self, dim: usize) -> Vec<CellRef> {
        let mut out = Vec::new();
        for d in 0..=dim.min(self.max_stored_dim()) {
            for i in 0..self.stored_count(d) {
                out.push(CellRef {
                    dim,
                    index: i,
                    pad: dim - d,
                });
            }
        }
        out.sort();
        out
    }

    pub fn max_stored_dim(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn name(&self, r: &CellRef) -> String {
        let base = &self.cells[r.base_dim()][r.index];
        if r.pad == 0 {
            base.clone()
        } else if r.pad == 1 {
            format!("id({base})")
        } else {
            format!("id^{}({base})", r.pad)
        }
    }

    pub fn lookup(&self, dim: usize, name: &str) -> Option<CellRef> {
        self.index
            .get(dim)
            .and_then(|m| m.get(name))
            .map(|&i| CellRef::stored(dim, i))
    }

    pub fn contains(&self, r: &CellRef) -> bool {
        r.pad <= r.dim
            && r.base_dim() < self.cells.len()
            && r.index < self.stored_count(r.base_dim())
    }

    pub fn is_object(&self, r: &CellRef) -> bool {
        self.contains(r) && r.dim == 0
    }

    pub fn src(&self, r: &CellRef) -> CellRef {
        if r.pad > 0 {
            return r.unpadded();
        }
        self.src[&(r.dim, r.index)]
    }

    pub fn tgt(&self, r: &CellRef) -> CellRef {
        if r.pad > 0 {
            return r.unpadded();
        }
        self.tgt[&(r.dim, r.index)]
    }

    /// Iterated source down to dimension `i`.
    pub fn s_i(&self, i: usize, r: &CellRef) -> CellRef {
        let mut c = *r;
        while c.dim > i {
            c = self.src(&c);
        }
        c
    }

    /// Iterated target down to dimension `i`.
    pub fn t_i(&self, i: usize, r: &CellRef) -> CellRef {
        let mut c = *r;
        while c.dim > i {
            c = self.tgt(&c);
        }
        c
    }

    pub fn unit(&self, r: &CellRef) -> CellRef {
        r.padded(1)
    }

    pub fn composable(&self, i: usize, x: &CellRef, y: &CellRef) -> bool {
        x.dim > i && y.dim > i && self.t_i(i, y) == self.s_i(i, x)
    }

    /// Mixed-dimension composition `x *_i y` with `t_i(y) = s_i(x)`; the
    /// lower-dimensional argument is implicitly padded with units.
    pub fn comp(&self, i: usize, x: &CellRef, y: &CellRef) -> Result<CellRef> {
        if !self.composable(i, x, y) {
            return Err(Error::NotComposable {
                level: i,
                left: self.name(x),
                right: self.name(y),
            });
        }
        let eff = x.dim.max(y.dim);
        let (bx, by) = (x.base(), y.base());
        // Unit laws: an argument that is an iterated identity of a cell of
        // dimension <= i acts as a unit for *_i.
        if bx.dim <= i {
            return Ok(y.at_dim(eff));
        }
        if by.dim <= i {
            return Ok(x.at_dim(eff));
        }
        let stored = self
            .comp
            .get(&(i, bx, by))
            .copied()
            .ok_or_else(|| Error::MalformedSpec(format!(
                "missing composition entry {} *_{} {}",
                self.name(&bx),
                i,
                self.name(&by)
            )))?;
        Ok(stored.at_dim(eff))
    }

    /// Left-fold composition `f(... f(f(v0, v1), v2) ...)` is not what we
    /// want; this composes a chain `[z_n, ..., z_1]` as `z_n *_i ... *_i z_1`
    /// (rightmost applied first).
    pub fn comp_chain(&self, i: usize, chain: &[CellRef]) -> Result<CellRef> {
        let mut it = chain.iter().rev();
        let mut acc = *it.next().expect("empty composition chain");
        for z in it {
            acc = self.comp(i, z, &acc)?;
        }
        Ok(acc)
    }

    /// Exhaustive law validation: globularity, table completeness and
    /// boundary compatibility, associativity per level, and strict exchange,
    /// over every enumerable tuple up to the truncation.
    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        self.validate_tables()?;
        self.validate_assoc()?;
        self.validate_exchange()?;
        Ok(())
    }

    fn validate_shape(&self) -> Result<()> {
        if self.cells.len() > self.truncation + 1 {
            return Err(Error::TruncationOverflow(format!(
                "stored cells of dimension {} above truncation {}",
                self.cells.len() - 1,
                self.truncation
            )));
        }
        for dim in 1..self.cells.len() {
            for idx in 0..self.stored_count(dim) {
                let r = CellRef::stored(dim, idx);
                for (label, tab) in [("src", &self.src), ("tgt", &self.tgt)] {
                    let Some(b) = tab.get(&(dim, idx)) else {
                        return Err(Error::MalformedSpec(format!(
                            "missing {label} of {}",
                            self.name(&r)
                        )));
                    };
                    if b.dim + 1 != dim || !self.contains(b) {
                        return Err(Error::MalformedSpec(format!(
                            "bad {label} of {}",
                            self.name(&r)
                        )));
                    }
                }
                if dim >= 2 {
                    let (s, t) = (self.src(&r), self.tgt(&r));
                    if self.src(&s) != self.src(&t) || self.tgt(&s) != self.tgt(&t) {
                        return Err(Error::law(
                            "globularity",
                            format!("cell {}", self.name(&r)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_tables(&self) -> Result<()> {
        // Completeness on composable stored pairs, including mixed dimensions.
        for i in 0..self.max_stored_dim() {
            for dx in (i + 1)..=self.max_stored_dim() {
                for dy in (i + 1)..=self.max_stored_dim() {
                    for x in self.stored(dx) {
                        for y in self.stored(dy) {
                            let ok = self.t_i(i, &y) == self.s_i(i, &x);
                            let entry = self.comp.get(&(i, x, y));
                            if ok && entry.is_none() {
                                return Err(Error::MalformedSpec(format!(
                                    "missing composition entry {} *_{} {}",
                                    self.name(&x),
                                    i,
                                    self.name(&y)
                                )));
                            }
                            if !ok && entry.is_some() {
                                return Err(Error::law(
                                    "composition-definedness",
                                    format!(
                                        "entry for non-composable {} *_{} {}",
                                        self.name(&x),
                                        i,
                                        self.name(&y)
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
        // Each entry has the boundary of a strict composite.
        for (&(i, x, y), z) in &self.comp {
            let eff = x.dim.max(y.dim);
            if !self.contains(z) || z.dim != eff {
                return Err(Error::MalformedSpec(format!(
                    "composition entry {} *_{} {} has invalid value",
                    self.name(&x),
                    i,
                    self.name(&y)
                )));
            }
            let (xe, ye) = (x.at_dim(eff), y.at_dim(eff));
            let witness = || {
                format!(
                    "{} *_{} {} = {}",
                    self.name(&x),
                    i,
                    self.name(&y),
                    self.name(z)
                )
            };
            let (es, et) = if i + 1 == eff {
                (self.src(&ye), self.tgt(&xe))
            } else {
                (
                    self.comp(i, &self.src(&xe), &self.src(&ye))?,
                    self.comp(i, &self.tgt(&xe), &self.tgt(&ye))?,
                )
            };
            if self.src(z) != es || self.tgt(z) != et {
                return Err(Error::law("composite-boundary", witness()));
            }
        }
        Ok(())
    }

    fn validate_assoc(&self) -> Result<()> {
        for i in 0..self.truncation {
            for k in (i + 1)..=self.truncation {
                let cells = self.all_cells(k);
                for y in &cells {
                    for z in &cells {
                        if !self.composable(i, y, z) {
                            continue;
                        }
                        let yz = self.comp(i, y, z)?;
                        for x in &cells {
                            if !self.composable(i, x, y) {
                                continue;
                            }
                            let xy = self.comp(i, x, y)?;
                            if self.comp(i, x, &yz)? != self.comp(i, &xy, z)? {
                                return Err(Error::law(
                                    "associativity",
                                    format!(
                                        "level {}: {} , {} , {}",
                                        i,
                                        self.name(x),
                                        self.name(y),
                                        self.name(z)
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_exchange(&self) -> Result<()> {
        for j in 1..self.truncation {
            for i in 0..j {
                for k in (j + 1)..=self.truncation {
                    let cells = self.all_cells(k);
                    let mut j_pairs = Vec::new();
                    for x in &cells {
                        for y in &cells {
                            if self.composable(j, x, y) {
                                j_pairs.push((*x, *y));
                            }
                        }
                    }
                    for (x, y) in &j_pairs {
                        for (z, w) in &j_pairs {
                            if !self.composable(i, x, z) || !self.composable(i, y, w) {
                                continue;
                            }
                            let lhs = self.comp(i, &self.comp(j, x, y)?, &self.comp(j, z, w)?)?;
                            let rhs = self.comp(j, &self.comp(i, x, z)?, &self.comp(i, y, w)?)?;
                            if lhs != rhs {
                                return Err(Error::law(
                                    "exchange",
                                    format!(
                                        "levels ({},{}): ({} *_{j} {}) *_{i} ({} *_{j} {})",
                                        i,
                                        j,
                                        self.name(x),
                                        self.name(y),
                                        self.name(z),
                                        self.name(w)
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Incremental description of an omega-category; `build` validates everything.
#[derive(Clone, Debug, Default)]
pub struct CatBuilder {
    pub truncation: usize,
    cells: Vec<Vec<String>>,
    src: BTreeMap<(usize, String), (String, usize)>,
    tgt: BTreeMap<(usize, String), (String, usize)>,
    comp: Vec<(usize, (usize, String, usize), (usize, String, usize), (usize, String, usize))>,
}

/// Name plus pad, the builder-level spelling of a [`CellRef`].
pub type NamedRef = (usize, String, usize); // (base dim, name, pad)

impl CatBuilder {
    pub fn new(truncation: usize) -> Self {
        CatBuilder {
            truncation,
            ..Default::default()
        }
    }

    pub fn object(&mut self, name: &str) -> &mut Self {
        self.push_cell(0, name);
        self
    }

    fn push_cell(&mut self, dim: usize, name: &str) {
        while self.cells.len() <= dim {
            self.cells.push(Vec::new());
        }
        self.cells[dim].push(name.to_string());
    }

    /// Add a stored cell with source and target given as (name, pad) pairs
    /// one dimension down.
    pub fn cell(&mut self, dim: usize, name: &str, src: (&str, usize), tgt: (&str, usize)) -> &mut Self {
        self.push_cell(dim, name);
        self.src
            .insert((dim, name.to_string()), (src.0.to_string(), src.1));
        self.tgt
            .insert((dim, name.to_string()), (tgt.0.to_string(), tgt.1));
        self
    }

    pub fn arrow(&mut self, name: &str, src: &str, tgt: &str) -> &mut Self {
        self.cell(1, name, (src, 0), (tgt, 0))
    }

    /// Record `x *_i y = z`; arguments are (dim, name, pad) triples referring
    /// to stored cells for x and y (pad must be 0 there) and to any cell for z.
    pub fn comp(&mut self, i: usize, x: NamedRef, y: NamedRef, z: NamedRef) -> &mut Self {
        self.comp.push((i, x, y, z));
        self
    }

    fn resolve(&self, cat: &OmegaCat, r: &NamedRef) -> Result<CellRef> {
        let (dim, name, pad) = r;
        let base = cat
            .lookup(*dim, name)
            .ok_or_else(|| Error::DanglingReference(format!("{name} at dim {dim}")))?;
        Ok(base.padded(*pad))
    }

    pub fn build(&self) -> Result<OmegaCat> {
        let mut cells = self.cells.clone();
        for layer in &mut cells {
            layer.sort();
            layer.dedup();
        }
        for (d, layer) in self.cells.iter().enumerate() {
            if layer.len() != cells[d].len() {
                return Err(Error::MalformedSpec(format!(
                    "duplicate cell name at dimension {d}"
                )));
            }
        }
        let index: Vec<BTreeMap<String, usize>> = cells
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .enumerate()
                    .map(|(i, n)| (n.clone(), i))
                    .collect()
            })
            .collect();
        let mut cat = OmegaCat {
            truncation: self.truncation,
            cells,
            index,
            src: BTreeMap::new(),
            tgt: BTreeMap::new(),
            comp: BTreeMap::new(),
        };
        for (tab, out) in [(&self.src, 0), (&self.tgt, 1)] {
            for ((dim, name), (bname, bpad)) in tab {
                let Some(cell) = cat.lookup(*dim, name) else {
                    return Err(Error::DanglingReference(name.clone()));
                };
                let Some(bbase) = cat.lookup(dim - 1 - bpad, bname) else {
                    return Err(Error::DanglingReference(format!(
                        "boundary {bname} of {name}"
                    )));
                };
                let b = bbase.padded(*bpad);
                if out == 0 {
                    cat.src.insert((cell.dim, cell.index), b);
                } else {
                    cat.tgt.insert((cell.dim, cell.index), b);
                }
            }
        }
        for (i, x, y, z) in &self.comp {
            let (rx, ry, rz) = (
                self.resolve(&cat, x)?,
                self.resolve(&cat, y)?,
                self.resolve(&cat, z)?,
            );
            if rx.pad != 0 || ry.pad != 0 {
                return Err(Error::MalformedSpec(
                    "composition entries must be keyed by stored cells".into(),
                ));
            }
            cat.comp.insert((*i, rx, ry), rz);
        }
        cat.validate()?;
        Ok(cat)
    }
}

/// Construct an omega-category directly from already-resolved tables. The
/// caller guarantees canonical cell order within each dimension.
pub fn from_tables(
    truncation: usize,
    cells: Vec<Vec<String>>,
    src: BTreeMap<(usize, usize), CellRef>,
    tgt: BTreeMap<(usize, usize), CellRef>,
    comp: BTreeMap<(usize, CellRef, CellRef), CellRef>,
) -> Result<OmegaCat> {
    let index = cells
        .iter()
        .map(|layer| {
            layer
                .iter()
                .enumerate()
                .map(|(i, n)| (n.clone(), i))
                .collect()
        })
        .collect();
    let cat = OmegaCat {
        truncation,
        cells,
        index,
        src,
        tgt,
        comp,
    };
    cat.validate()?;
    Ok(cat)
}

/// Raw table access for table-identity checks and serialization.
pub fn tables(
    cat: &OmegaCat,
) -> (
    &BTreeMap<(usize, usize), CellRef>,
    &BTreeMap<(usize, usize), CellRef>,
    &BTreeMap<(usize, CellRef, CellRef), CellRef>,
) {
    (&cat.src, &cat.tgt, &cat.comp)
}

/// The globe D_n: one non-trivial n-cell, two non-trivial k-cells for k < n.
pub fn globe(n: usize, truncation: usize) -> OmegaCat {
    assert!(n <= truncation, "globe dimension above truncation");
    let mut b = CatBuilder::new(truncation);
    if n == 0 {
        b.object("a");
        return b.build().expect("globe is always valid");
    }
    for k in 0..n {
        let (s, t) = (format!("s{k}"), format!("t{k}"));
        if k == 0 {
            b.object(&s);
            b.object(&t);
        } else {
            b.cell(k, &s, (&format!("s{}", k - 1), 0), (&format!("t{}", k - 1), 0));
            b.cell(k, &t, (&format!("s{}", k - 1), 0), (&format!("t{}", k - 1), 0));
        }
    }
    b.cell(
        n,
        "e",
        (&format!("s{}", n - 1), 0),
        (&format!("t{}", n - 1), 0),
    );
    b.build().expect("globe is always valid")
}

/// The terminal omega-category.
pub fn terminal(truncation: usize) -> OmegaCat {
    globe(0, truncation)
}

/// Free category on the linear chain `a0 -> a1 -> ... -> an`, with all
/// composites stored, truncated as requested.
pub fn free_chain(n: usize, truncation: usize) -> OmegaCat {
    let mut b = CatBuilder::new(truncation);
    for i in 0..=n {
        b.object(&format!("a{i}"));
    }
    // f_i_j : a_i -> a_j for i < j; generators are consecutive.
    for i in 0..=n {
        for j in (i + 1)..=n {
            b.arrow(&format!("f{i}{j}"), &format!("a{i}"), &format!("a{j}"));
        }
    }
    for i in 0..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                b.comp(
                    0,
                    (1, format!("f{j}{k}"), 0),
                    (1, format!("f{i}{j}"), 0),
                    (1, format!("f{i}{k}"), 0),
                );
            }
        }
    }
    b.build().expect("free chain is always valid")
}

/// A strict functor between omega-categories, stored by its action on stored
/// cells; padded cells map to padded images.
#[derive(Clone, PartialEq, Debug)]
pub struct OmegaFunctor {
    pub source: Arc<OmegaCat>,
    pub target: Arc<OmegaCat>,
    /// `map[dim][index]` is the image of the stored cell `(dim, index)`.
    pub map: Vec<Vec<CellRef>>,
}

impl fmt::Display for OmegaFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, layer) in self.map.iter().enumerate() {
            for (i, img) in layer.iter().enumerate() {
                writeln!(
                    f,
                    "{} -> {}",
                    self.source.name(&CellRef::stored(d, i)),
                    self.target.name(img)
                )?;
            }
        }
        Ok(())
    }
}

impl OmegaFunctor {
    pub fn identity(c: &Arc<OmegaCat>) -> Self {
        let map = (0..c.cells.len())
            .map(|d| c.stored(d))
            .collect();
        OmegaFunctor {
            source: c.clone(),
            target: c.clone(),
            map,
        }
    }

    pub fn constant(source: &Arc<OmegaCat>, target: &Arc<OmegaCat>, obj: CellRef) -> Self {
        assert!(target.is_object(&obj));
        let map = (0..source.cells.len())
            .map(|d| vec![obj.at_dim(d); source.stored_count(d)])
            .collect();
        OmegaFunctor {
            source: source.clone(),
            target: target.clone(),
            map,
        }
    }

    pub fn from_map(
        source: &Arc<OmegaCat>,
        target: &Arc<OmegaCat>,
        map: Vec<Vec<CellRef>>,
    ) -> Self {
        OmegaFunctor {
            source: source.clone(),
            target: target.clone(),
            map,
        }
    }

    pub fn apply(&self, r: &CellRef) -> CellRef {
        let img = self.map[r.base_dim()][r.index];
        img.padded(r.pad)
    }

    pub fn validate(&self) -> Result<()> {
        for d in 0..self.source.cells.len() {
            if self.map.get(d).map_or(0, |l| l.len()) != self.source.stored_count(d) {
                return Err(Error::MalformedSpec(format!(
                    "functor map incomplete at dimension {d}"
                )));
            }
            for x in self.source.stored(d) {
                let img = self.apply(&x);
                if !self.target.contains(&img) || img.dim != d {
                    return Err(Error::law(
                        "functor-dimension",
                        self.source.name(&x),
                    ));
                }
                if d >= 1 {
                    if self.target.src(&img) != self.apply(&self.source.src(&x))
                        || self.target.tgt(&img) != self.apply(&self.source.tgt(&x))
                    {
                        return Err(Error::law(
                            "functor-boundary",
                            self.source.name(&x),
                        ));
                    }
                }
            }
        }
        let (_, _, comp) = tables(&self.source);
        for (&(i, x, y), z) in comp {
            let lhs = self.apply(&z.at_dim(x.dim.max(y.dim)));
            let rhs = self
                .target
                .comp(i, &self.apply(&x), &self.apply(&y))?;
            if lhs != rhs {
                return Err(Error::law(
                    "functor-composition",
                    format!(
                        "{} *_{} {}",
                        self.source.name(&x),
                        i,
                        self.source.name(&y)
                    ),
                ));
            }
        }
        Ok(())
    }

    pub fn compose(g: &OmegaFunctor, f: &OmegaFunctor) -> OmegaFunctor {
        assert_eq!(*f.target, *g.source, "functor composition mismatch");
        let map = (0..f.source.cells.len())
            .map(|d| {
                f.source
                    .stored(d)
                    .iter()
                    .map(|x| g.apply(&f.apply(x)))
                    .collect()
            })
            .collect();
        OmegaFunctor {
            source: f.source.clone(),
            target: g.target.clone(),
            map,
        }
    }

    /// Is this functor a bijection on cells in every dimension?
    pub fn is_bijective(&self) -> bool {
        for d in 0..=self
            .source
            .max_stored_dim()
            .max(self.target.max_stored_dim())
        {
            let mut imgs: Vec<CellRef> = self
                .source
                .all_cells(d)
                .iter()
                .map(|x| self.apply(x))
                .collect();
            imgs.sort();
            imgs.dedup();
            if imgs.len() != self.target.all_cells(d).len() {
                return false;
            }
        }
        true
    }
}

/// Every strict functor `a -> b`, in canonical order, by dimension-stratified
/// backtracking over images of stored cells.
pub fn enumerate_functors(a: &Arc<OmegaCat>, b: &Arc<OmegaCat>) -> Vec<OmegaFunctor> {
    let mut out = Vec::new();
    let dims = a.cells.len();
    let mut map: Vec<Vec<CellRef>> = vec![Vec::new(); dims];
    fn rec(
        a: &Arc<OmegaCat>,
        b: &Arc<OmegaCat>,
        dim: usize,
        map: &mut Vec<Vec<CellRef>>,
        out: &mut Vec<OmegaFunctor>,
    ) {
        if dim >= a.cells.len() {
            let f = OmegaFunctor::from_map(a, b, map.clone());
            if f.validate().is_ok() {
                out.push(f);
            }
            return;
        }
        let idx = map[dim].len();
        if idx >= a.stored_count(dim) {
            rec(a, b, dim + 1, map, out);
            return;
        }
        let x = CellRef::stored(dim, idx);
        let partial = OmegaFunctor::from_map(a, b, map.clone());
        for img in b.all_cells(dim) {
            if dim >= 1 {
                let (s, t) = (a.src(&x), a.tgt(&x));
                if b.src(&img) != partial.apply(&s) || b.tgt(&img) != partial.apply(&t) {
                    continue;
                }
            }
            map[dim].push(img);
            rec(a, b, dim, map, out);
            map[dim].pop();
        }
    }
    rec(a, b, 0, &mut map, &mut out);
    out
}

/// Degree profile used to seed the isomorphism backtracking: for a cell, the
/// number of stored cells one dimension up having it as source / target.
fn degree_profile(c: &OmegaCat, r: &CellRef) -> (usize, usize) {
    let up = r.dim + 1;
    let mut s = 0;
    let mut t = 0;
    for x in c.stored(up.min(c.cells.len().saturating_sub(1))) {
        if x.dim != up {
            continue;
        }
        if c.src(&x) == *r {
            s += 1;
        }
        if c.tgt(&x) == *r {
            t += 1;
        }
    }
    (s, t)
}

/// Deterministic isomorphism search: a structure-preserving bijection of
/// stored cells in every dimension, or `None`. First match in canonical
/// order; no canonical-form claim.
pub fn is_isomorphic(a: &Arc<OmegaCat>, b: &Arc<OmegaCat>) -> Option<OmegaFunctor> {
    if a.truncation != b.truncation {
        return None;
    }
    let dims = a.cells.len().max(b.cells.len());
    for d in 0..dims {
        if a.stored_count(d) != b.stored_count(d) {
            return None;
        }
    }
    let mut map: Vec<Vec<CellRef>> = vec![Vec::new(); a.cells.len()];
    fn rec(
        a: &Arc<OmegaCat>,
        b: &Arc<OmegaCat>,
        dim: usize,
        map: &mut Vec<Vec<CellRef>>,
        used: &mut Vec<Vec<bool>>,
    ) -> bool {
        if dim >= a.cells.len() {
            let f = OmegaFunctor::from_map(a, b, map.clone());
            return f.validate().is_ok();
        }
        let idx = map[dim].len();
        if idx >= a.stored_count(dim) {
            return rec(a, b, dim + 1, map, used);
        }
        let x = CellRef::stored(dim, idx);
        let partial = OmegaFunctor::from_map(a, b, map.clone());
        let prof = degree_profile(a, &x);
        for j in 0..b.stored_count(dim) {
            if used[dim][j] {
                continue;
            }
            let img = CellRef::stored(dim, j);
            if degree_profile(b, &img) != prof {
                continue;
            }
            if dim >= 1
                && (b.src(&img) != partial.apply(&a.src(&x))
                    || b.tgt(&img) != partial.apply(&a.tgt(&x)))
            {
                continue;
            }
            map[dim].push(img);
            used[dim][j] = true;
            if rec(a, b, dim, map, used) {
                return true;
            }
            used[dim][j] = false;
            map[dim].pop();
        }
        false
    }
    let mut used: Vec<Vec<bool>> = (0..a.cells.len())
        .map(|d| vec![false; a.stored_count(d)])
        .collect();
    if rec(a, b, 0, &mut map, &mut used) {
        Some(OmegaFunctor::from_map(a, b, map))
    } else {
        None
    }
}

/// The duality D_S: reverse cell orientation in every dimension of `s`.
/// Involutive at the level of stored tables; `dual(dual(C,S),T)` is
/// table-identical to `dual(C, S symmetric-difference T)`.
pub fn dual(c: &OmegaCat, s: &[usize]) -> OmegaCat {
    let in_s = |d: usize| s.contains(&d);
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for dim in 1..c.cells.len() {
        for idx in 0..c.stored_count(dim) {
            let r = CellRef::stored(dim, idx);
            let (a, b) = (c.src(&r), c.tgt(&r));
            if in_s(dim) {
                src.insert((dim, idx), b);
                tgt.insert((dim, idx), a);
            } else {
                src.insert((dim, idx), a);
                tgt.insert((dim, idx), b);
            }
        }
    }
    let mut comp = BTreeMap::new();
    let (_, _, old) = tables(c);
    for (&(i, x, y), &z) in old {
        // *_i glues along dimension-i boundaries; its order reverses exactly
        // when dimension i+1 is reversed.
        if in_s(i + 1) {
            comp.insert((i, y, x), z);
        } else {
            comp.insert((i, x, y), z);
        }
    }
    OmegaCat {
        truncation: c.truncation,
        cells: c.cells.clone(),
        index: c.index.clone(),
        src,
        tgt,
        comp,
    }
}

/// Sets of dimensions for the three basic dualities at a given truncation.
pub fn odd_dims(truncation: usize) -> Vec<usize> {
    (1..=truncation.max(4)).filter(|d| d % 2 == 1).collect()
}

pub fn even_dims(truncation: usize) -> Vec<usize> {
    (1..=truncation.max(4)).filter(|d| d % 2 == 0).collect()
}

pub fn all_dims(truncation: usize) -> Vec<usize> {
    (1..=truncation.max(4)).collect()
}

/// Transport a functor along the same duality on both sides; the underlying
/// cell maps are unchanged.
pub fn dual_functor(f: &OmegaFunctor, s: &[usize]) -> OmegaFunctor {
    OmegaFunctor {
        source: Arc::new(dual(&f.source, s)),
        target: Arc::new(dual(&f.target, s)),
        map: f.map.clone(),
    }
}
