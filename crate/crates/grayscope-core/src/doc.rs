//! Interchange documents: one structured JSON object per artifact, with
//! cells listed per dimension as string identifiers, maps as explicit
//! pairs, and compositions as (level, left, right, result) rows. Documents
//! are hand-editable and round-trip bit-exactly through parse/serialize;
//! parsing resolves every reference, full law checking is separate.

use crate::error::{Error, Result};
use crate::gray::{Comp0Table, GrayCat, GrayFunctor, Orientation};
use crate::omega::{self, CellRef, OmegaCat, OmegaFunctor};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// `d:i` for a stored cell, `d:i+p` for its `p`-fold identity.
pub fn cell_to_string(r: &CellRef) -> String {
    if r.pad == 0 {
        format!("{}:{}", r.dim, r.index)
    } else {
        format!("{}:{}+{}", r.dim, r.index, r.pad)
    }
}

pub fn cell_from_str(s: &str) -> Result<CellRef> {
    let err = || Error::ParseError {
        line: 0,
        detail: format!("malformed cell reference {s:?}"),
    };
    let (head, pad) = match s.split_once('+') {
        Some((h, p)) => (h, p.parse::<usize>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (d, i) = head.split_once(':').ok_or_else(err)?;
    let (dim, index) = (
        d.parse::<usize>().map_err(|_| err())?,
        i.parse::<usize>().map_err(|_| err())?,
    );
    if pad > dim {
        return Err(err());
    }
    Ok(CellRef { dim, index, pad })
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct OmegaDoc {
    pub truncation: usize,
    pub cells: Vec<Vec<String>>,
    pub src: Vec<(String, String)>,
    pub tgt: Vec<(String, String)>,
    pub comp: Vec<(usize, String, String, String)>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct GrayDoc {
    pub orientation: String,
    pub truncation: usize,
    pub objects: Vec<String>,
    pub homs: Vec<(usize, usize, OmegaDoc)>,
    pub units: Vec<(usize, String)>,
    pub comp0: Vec<(usize, usize, usize, String, String, String)>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct FunctorDoc {
    pub source: OmegaDoc,
    pub target: OmegaDoc,
    pub map: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct GrayFunctorDoc {
    pub source: GrayDoc,
    pub target: GrayDoc,
    pub object_map: Vec<usize>,
    pub hom_maps: Vec<(usize, usize, Vec<Vec<String>>)>,
}

/// Grothendieck input: a base, one fiber per base object, a functor between
/// fibers per base arrow, and a component list per base 2-cell.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct FDataDoc {
    pub base: OmegaDoc,
    pub fibers: Vec<OmegaDoc>,
    /// (arrow index, source fiber, target fiber, functor map)
    pub arrows: Vec<(usize, usize, usize, Vec<Vec<String>>)>,
    /// (2-cell index, one component per target-fiber object)
    pub squares: Vec<(usize, Vec<String>)>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(tag = "kind")]
pub enum Document {
    #[serde(rename = "omega")]
    Omega(OmegaDoc),
    #[serde(rename = "gray")]
    Gray(GrayDoc),
    #[serde(rename = "functor")]
    Functor(FunctorDoc),
    #[serde(rename = "gray-functor")]
    GrayFunctor(GrayFunctorDoc),
    #[serde(rename = "fdata")]
    FData(FDataDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Omega(_) => "omega",
            Document::Gray(_) => "gray",
            Document::Functor(_) => "functor",
            Document::GrayFunctor(_) => "gray-functor",
            Document::FData(_) => "fdata",
        }
    }
}

pub fn parse(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| Error::ParseError {
            line: e.line(),
            detail: format!("column {}: {e}", e.column()),
        })?;
    resolve(&doc)?;
    Ok(doc)
}

pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization");
    s.push('\n');
    s
}

fn resolve_omega(d: &OmegaDoc) -> Result<()> {
    let in_range = |r: &CellRef| -> bool {
        let b = r.base();
        b.dim < d.cells.len() && b.index < d.cells[b.dim].len()
    };
    let check = |s: &str| -> Result<CellRef> {
        let r = cell_from_str(s)?;
        if !in_range(&r) {
            return Err(Error::DanglingReference(format!("cell {s}")));
        }
        Ok(r)
    };
    let mut src_keys = BTreeMap::new();
    let mut tgt_keys = BTreeMap::new();
    for (k, v) in &d.src {
        let r = check(k)?;
        check(v)?;
        src_keys.insert((r.dim, r.index), ());
    }
    for (k, v) in &d.tgt {
        let r = check(k)?;
        check(v)?;
        tgt_keys.insert((r.dim, r.index), ());
    }
    for (dim, layer) in d.cells.iter().enumerate().skip(1) {
        for index in 0..layer.len() {
            if !src_keys.contains_key(&(dim, index)) {
                return Err(Error::ParseError {
                    line: 0,
                    detail: format!("cell {dim}:{index} has no src"),
                });
            }
            if !tgt_keys.contains_key(&(dim, index)) {
                return Err(Error::ParseError {
                    line: 0,
                    detail: format!("cell {dim}:{index} has no tgt"),
                });
            }
        }
    }
    for (_, x, y, z) in &d.comp {
        check(x)?;
        check(y)?;
        check(z)?;
    }
    Ok(())
}

fn resolve_gray(d: &GrayDoc) -> Result<()> {
    if d.orientation != "gray" && d.orientation != "anti" {
        return Err(Error::ParseError {
            line: 0,
            detail: format!("orientation {:?} is neither \"gray\" nor \"anti\"", d.orientation),
        });
    }
    let n = d.objects.len();
    for (a, b, h) in &d.homs {
        if *a >= n || *b >= n {
            return Err(Error::DanglingReference(format!("hom pair ({a},{b})")));
        }
        resolve_omega(h)?;
    }
    for (i, u) in &d.units {
        if *i >= n {
            return Err(Error::DanglingReference(format!("unit of object {i}")));
        }
        cell_from_str(u)?;
    }
    for (a, b, c, x, y, z) in &d.comp0 {
        if *a >= n || *b >= n || *c >= n {
            return Err(Error::DanglingReference(format!("comp0 objects ({a},{b},{c})")));
        }
        cell_from_str(x)?;
        cell_from_str(y)?;
        cell_from_str(z)?;
    }
    Ok(())
}

fn resolve(doc: &Document) -> Result<()> {
    match doc {
        Document::Omega(d) => resolve_omega(d),
        Document::Gray(d) => resolve_gray(d),
        Document::Functor(d) => {
            resolve_omega(&d.source)?;
            resolve_omega(&d.target)?;
            for layer in &d.map {
                for s in layer {
                    cell_from_str(s)?;
                }
            }
            Ok(())
        }
        Document::GrayFunctor(d) => {
            resolve_gray(&d.source)?;
            resolve_gray(&d.target)?;
            for &i in &d.object_map {
                if i >= d.target.objects.len() {
                    return Err(Error::DanglingReference(format!("object image {i}")));
                }
            }
            Ok(())
        }
        Document::FData(d) => {
            resolve_omega(&d.base)?;
            for f in &d.fibers {
                resolve_omega(f)?;
            }
            for (_, sf, tf, _) in &d.arrows {
                if *sf >= d.fibers.len() || *tf >= d.fibers.len() {
                    return Err(Error::DanglingReference(format!("fiber pair ({sf},{tf})")));
                }
            }
            Ok(())
        }
    }
}

pub fn omega_to_doc(c: &OmegaCat) -> OmegaDoc {
    let (src, tgt, comp) = omega::tables(c);
    let key = |&(d, i): &(usize, usize)| cell_to_string(&CellRef::stored(d, i));
    OmegaDoc {
        truncation: c.truncation,
        cells: c.cells.clone(),
        src: src.iter().map(|(k, v)| (key(k), cell_to_string(v))).collect(),
        tgt: tgt.iter().map(|(k, v)| (key(k), cell_to_string(v))).collect(),
        comp: comp
            .iter()
            .map(|(&(i, x, y), z)| (i, cell_to_string(&x), cell_to_string(&y), cell_to_string(z)))
            .collect(),
    }
}

pub fn doc_to_omega(d: &OmegaDoc) -> Result<OmegaCat> {
    resolve_omega(d)?;
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for (k, v) in &d.src {
        let r = cell_from_str(k)?;
        src.insert((r.dim, r.index), cell_from_str(v)?);
    }
    for (k, v) in &d.tgt {
        let r = cell_from_str(k)?;
        tgt.insert((r.dim, r.index), cell_from_str(v)?);
    }
    for (i, x, y, z) in &d.comp {
        comp.insert((*i, cell_from_str(x)?, cell_from_str(y)?), cell_from_str(z)?);
    }
    omega::from_tables(d.truncation, d.cells.clone(), src, tgt, comp)
}

pub fn gray_to_doc(g: &GrayCat) -> GrayDoc {
    GrayDoc {
        orientation: match g.orientation {
            Orientation::Gray => "gray".into(),
            Orientation::Anti => "anti".into(),
        },
        truncation: g.truncation,
        objects: g.objects.clone(),
        homs: g
            .homs
            .iter()
            .map(|(&(a, b), h)| (a, b, omega_to_doc(h)))
            .collect(),
        units: g.units.iter().map(|(&i, u)| (i, cell_to_string(u))).collect(),
        comp0: g
            .comp0
            .iter()
            .map(|(&(a, b, c, x, y), z)| {
                (a, b, c, cell_to_string(&x), cell_to_string(&y), cell_to_string(z))
            })
            .collect(),
    }
}

pub fn doc_to_gray(d: &GrayDoc) -> Result<GrayCat> {
    resolve_gray(d)?;
    let mut homs = BTreeMap::new();
    for (a, b, h) in &d.homs {
        homs.insert((*a, *b), Arc::new(doc_to_omega(h)?));
    }
    let mut units = BTreeMap::new();
    for (i, u) in &d.units {
        units.insert(*i, cell_from_str(u)?);
    }
    let mut comp0 = Comp0Table::new();
    for (a, b, c, x, y, z) in &d.comp0 {
        comp0.insert(
            (*a, *b, *c, cell_from_str(x)?, cell_from_str(y)?),
            cell_from_str(z)?,
        );
    }
    Ok(GrayCat {
        orientation: if d.orientation == "gray" {
            Orientation::Gray
        } else {
            Orientation::Anti
        },
        truncation: d.truncation,
        objects: d.objects.clone(),
        homs,
        units,
        comp0,
    })
}

fn map_to_doc(map: &[Vec<CellRef>]) -> Vec<Vec<String>> {
    map.iter()
        .map(|layer| layer.iter().map(cell_to_string).collect())
        .collect()
}

fn doc_to_map(doc: &[Vec<String>]) -> Result<Vec<Vec<CellRef>>> {
    doc.iter()
        .map(|layer| layer.iter().map(|s| cell_from_str(s)).collect())
        .collect()
}

pub fn functor_to_doc(f: &OmegaFunctor) -> FunctorDoc {
    FunctorDoc {
        source: omega_to_doc(&f.source),
        target: omega_to_doc(&f.target),
        map: map_to_doc(&f.map),
    }
}

pub fn doc_to_functor(d: &FunctorDoc) -> Result<OmegaFunctor> {
    let source = Arc::new(doc_to_omega(&d.source)?);
    let target = Arc::new(doc_to_omega(&d.target)?);
    let f = OmegaFunctor::from_map(&source, &target, doc_to_map(&d.map)?);
    f.validate()?;
    Ok(f)
}

pub fn gray_functor_to_doc(src: &GrayCat, tgt: &GrayCat, f: &GrayFunctor) -> GrayFunctorDoc {
    GrayFunctorDoc {
        source: gray_to_doc(src),
        target: gray_to_doc(tgt),
        object_map: f.object_map.clone(),
        hom_maps: f
            .hom_maps
            .iter()
            .map(|(&(a, b), m)| (a, b, map_to_doc(&m.map)))
            .collect(),
    }
}

pub fn doc_to_gray_functor(d: &GrayFunctorDoc) -> Result<(GrayCat, GrayCat, GrayFunctor)> {
    let src = doc_to_gray(&d.source)?;
    let tgt = doc_to_gray(&d.target)?;
    let mut hom_maps = BTreeMap::new();
    for (a, b, m) in &d.hom_maps {
        let sh = src
            .hom(*a, *b)
            .ok_or_else(|| Error::DanglingReference(format!("hom map over ({a},{b})")))?;
        let (fa, fb) = (d.object_map[*a], d.object_map[*b]);
        let th = tgt
            .hom(fa, fb)
            .ok_or_else(|| Error::DanglingReference(format!("hom image over ({fa},{fb})")))?;
        hom_maps.insert((*a, *b), OmegaFunctor::from_map(sh, th, doc_to_map(m)?));
    }
    let f = GrayFunctor {
        object_map: d.object_map.clone(),
        hom_maps,
    };
    f.validate(&src, &tgt)?;
    Ok((src, tgt, f))
}

pub fn fdata_to_doc(fd: &crate::functoriality::FData) -> FDataDoc {
    let arrow_ends = |k: &usize| {
        let r = CellRef::stored(1, *k);
        (fd.base.tgt(&r).index, fd.base.src(&r).index)
    };
    FDataDoc {
        base: omega_to_doc(&fd.base),
        fibers: fd.fibers.iter().map(|f| omega_to_doc(f)).collect(),
        arrows: fd
            .arrows
            .iter()
            .map(|(k, f)| {
                let (sf, tf) = arrow_ends(k);
                (*k, sf, tf, map_to_doc(&f.map))
            })
            .collect(),
        squares: fd
            .squares
            .iter()
            .map(|(k, comps)| (*k, comps.iter().map(cell_to_string).collect()))
            .collect(),
    }
}

pub fn doc_to_fdata(d: &FDataDoc) -> Result<crate::functoriality::FData> {
    let base = Arc::new(doc_to_omega(&d.base)?);
    let fibers = d
        .fibers
        .iter()
        .map(|f| doc_to_omega(f).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let mut arrows = BTreeMap::new();
    for (k, sf, tf, m) in &d.arrows {
        arrows.insert(
            *k,
            OmegaFunctor::from_map(&fibers[*sf], &fibers[*tf], doc_to_map(m)?),
        );
    }
    let mut squares = BTreeMap::new();
    for (k, comps) in &d.squares {
        squares.insert(
            *k,
            comps.iter().map(|s| cell_from_str(s)).collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(crate::functoriality::FData {
        base,
        fibers,
        arrows,
        squares,
    })
}
