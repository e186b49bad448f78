//! The cartesian internal hom Hom(A,B): objects are functors, n-cells are
//! strict n-transformations stored by their 0-cell component families, and
//! every composition is pointwise. Also the componentwise inclusion
//! Cyl Hom(A,C) -> Hom(A, Cyl C), and oplax 1-cells represented as functors
//! into the cylinder.

use crate::cyl::{self, CylCat, CylTuple};
use crate::error::{Error, Result};
use crate::omega::{self, CellRef, OmegaCat, OmegaFunctor};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A strict n-transformation: boundary functors (by index into the object
/// list) and one n-cell of B per 0-cell of A, in stored-object order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Fam {
    pub u: usize,
    pub v: usize,
    pub components: Vec<CellRef>,
}

pub struct HomCart {
    pub a: Arc<OmegaCat>,
    pub b: Arc<OmegaCat>,
    pub cat: Arc<OmegaCat>,
    /// The 0-cells, in stored order.
    pub functors: Vec<OmegaFunctor>,
    fams: Vec<Vec<Fam>>,
    index: BTreeMap<Fam, (usize, usize)>,
}

/// The defining equations, independent of how families were enumerated:
/// components have the functors as 0-boundaries, and the 0-exchange
/// `alpha_(t0 z) *_0 u(z) = v(z) *_0 alpha_(s0 z)` holds for every cell z.
pub fn validate_family(
    a: &OmegaCat,
    b: &OmegaCat,
    u: &OmegaFunctor,
    v: &OmegaFunctor,
    components: &[CellRef],
) -> Result<()> {
    let objs = a.stored(0);
    if components.len() != objs.len() {
        return Err(Error::MalformedSpec("component count".into()));
    }
    for (x, al) in objs.iter().zip(components) {
        if b.s_i(0, al) != u.apply(x) || b.t_i(0, al) != v.apply(x) {
            return Err(Error::BoundaryMismatch(format!(
                "component at {} has 0-boundary ({}, {})",
                a.name(x),
                b.name(&b.s_i(0, al)),
                b.name(&b.t_i(0, al))
            )));
        }
    }
    let comp_at = |x: &CellRef| components[objs.iter().position(|o| o == x).unwrap()];
    for d in 1..a.cells.len() {
        for z in a.stored(d) {
            let lhs = b.comp(0, &comp_at(&a.t_i(0, &z)), &u.apply(&z))?;
            let rhs = b.comp(0, &v.apply(&z), &comp_at(&a.s_i(0, &z)))?;
            if lhs != rhs {
                return Err(Error::law(
                    "transformation naturality",
                    format!("at {}: {} vs {}", a.name(&z), b.name(&lhs), b.name(&rhs)),
                ));
            }
        }
    }
    Ok(())
}

impl HomCart {
    pub fn functor_index(&self, f: &OmegaFunctor) -> Option<usize> {
        self.functors.iter().position(|g| g.map == f.map)
    }

    /// The cell holding a (possibly degenerate) family; iterated identities
    /// resolve to padded references.
    pub fn cell_of(&self, f: &Fam) -> CellRef {
        let n = f.components[0].dim;
        let m = f.components.iter().map(|z| z.pad).min().unwrap();
        if m == n {
            // all components are iterated identities of the 0-cell functor
            assert_eq!(f.u, f.v);
            return CellRef {
                dim: n,
                index: f.u,
                pad: n,
            };
        }
        let reduced = Fam {
            u: f.u,
            v: f.v,
            components: f
                .components
                .iter()
                .map(|z| CellRef {
                    dim: z.dim - m,
                    index: z.index,
                    pad: z.pad - m,
                })
                .collect(),
        };
        let (d, i) = *self
            .index
            .get(&reduced)
            .unwrap_or_else(|| panic!("family not enumerated: {reduced:?}"));
        CellRef {
            dim: n,
            index: i,
            pad: n - d,
        }
    }

    /// The family under a cell of dimension >= 1.
    pub fn fam_of(&self, r: &CellRef) -> Fam {
        assert!(r.dim >= 1);
        if r.base_dim() == 0 {
            let u = &self.functors[r.index];
            return Fam {
                u: r.index,
                v: r.index,
                components: self
                    .a
                    .stored(0)
                    .iter()
                    .map(|x| u.apply(x).padded(r.dim))
                    .collect(),
            };
        }
        let f = &self.fams[r.base_dim() - 1][r.index];
        Fam {
            u: f.u,
            v: f.v,
            components: f.components.iter().map(|z| z.padded(r.pad)).collect(),
        }
    }

    /// Component of any cell at the given 0-cell of A.
    pub fn component(&self, r: &CellRef, obj: usize) -> CellRef {
        if r.dim == 0 {
            return self.functors[r.index].apply(&self.a.stored(0)[obj]);
        }
        self.fam_of(r).components[obj]
    }
}

pub fn hom_cart(a: &Arc<OmegaCat>, b: &Arc<OmegaCat>) -> Result<HomCart> {
    let n = b.truncation;
    let objs = a.stored(0);
    let functors = omega::enumerate_functors(a, b);
    let mut fams: Vec<Vec<Fam>> = Vec::new();
    let mut index = BTreeMap::new();
    for d in 1..=n {
        let mut layer = Vec::new();
        for (ui, u) in functors.iter().enumerate() {
            for (vi, v) in functors.iter().enumerate() {
                // families of d-cells with the right 0-boundaries, one slot
                // per object of A
                let mut stack: Vec<Vec<CellRef>> = vec![vec![]];
                for x in &objs {
                    let (sx, tx) = (u.apply(x), v.apply(x));
                    let mut next = Vec::new();
                    for partial in &stack {
                        for cand in b.all_cells(d) {
                            if b.s_i(0, &cand) == sx && b.t_i(0, &cand) == tx {
                                let mut p = partial.clone();
                                p.push(cand);
                                next.push(p);
                            }
                        }
                    }
                    stack = next;
                }
                for components in stack {
                    if components.iter().all(|z| z.pad >= 1) {
                        continue; // unit of a lower family
                    }
                    if validate_family(a, b, u, v, &components).is_err() {
                        continue;
                    }
                    let f = Fam {
                        u: ui,
                        v: vi,
                        components,
                    };
                    index.insert(f.clone(), (d, layer.len()));
                    layer.push(f);
                }
            }
        }
        fams.push(layer);
    }
    while fams.last().is_some_and(|l| l.is_empty()) && !fams.is_empty() {
        fams.pop();
    }
    let fref = |f: &Fam| -> CellRef {
        let n = f.components[0].dim;
        let m = f.components.iter().map(|z| z.pad).min().unwrap();
        if m == n {
            return CellRef {
                dim: n,
                index: f.u,
                pad: n,
            };
        }
        let reduced = Fam {
            u: f.u,
            v: f.v,
            components: f
                .components
                .iter()
                .map(|z| CellRef {
                    dim: z.dim - m,
                    index: z.index,
                    pad: z.pad - m,
                })
                .collect(),
        };
        let (d, i) = index[&reduced];
        CellRef {
            dim: n,
            index: i,
            pad: n - d,
        }
    };
    let mut cells: Vec<Vec<String>> = vec![(0..functors.len()).map(|i| format!("F{i}")).collect()];
    for layer in &fams {
        cells.push(
            layer
                .iter()
                .map(|f| {
                    format!(
                        "F{}=>F{}[{}]",
                        f.u,
                        f.v,
                        f.components
                            .iter()
                            .map(|z| b.name(z))
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect(),
        );
    }
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    for (d0, layer) in fams.iter().enumerate() {
        let d = d0 + 1;
        for (i, f) in layer.iter().enumerate() {
            if d == 1 {
                src.insert((d, i), CellRef::stored(0, f.u));
                tgt.insert((d, i), CellRef::stored(0, f.v));
            } else {
                src.insert(
                    (d, i),
                    fref(&Fam {
                        u: f.u,
                        v: f.v,
                        components: f.components.iter().map(|z| b.src(z)).collect(),
                    }),
                );
                tgt.insert(
                    (d, i),
                    fref(&Fam {
                        u: f.u,
                        v: f.v,
                        components: f.components.iter().map(|z| b.tgt(z)).collect(),
                    }),
                );
            }
        }
    }
    // i-face of a family, as a cell reference
    let face = |f: &Fam, i: usize, target: bool| -> CellRef {
        if i == 0 {
            return CellRef::stored(0, if target { f.v } else { f.u });
        }
        fref(&Fam {
            u: f.u,
            v: f.v,
            components: f
                .components
                .iter()
                .map(|z| if target { b.t_i(i, z) } else { b.s_i(i, z) })
                .collect(),
        })
    };
    let mut comp = BTreeMap::new();
    for i in 0..n {
        for (dx0, lx) in fams.iter().enumerate().skip(i) {
            for (dy0, ly) in fams.iter().enumerate().skip(i) {
                for (ix, fx) in lx.iter().enumerate() {
                    for (iy, fy) in ly.iter().enumerate() {
                        if face(fx, i, false) != face(fy, i, true) {
                            continue;
                        }
                        let components = fx
                            .components
                            .iter()
                            .zip(&fy.components)
                            .map(|(zx, zy)| b.comp(i, zx, zy))
                            .collect::<Result<Vec<_>>>()?;
                        let z = Fam {
                            u: fy.u,
                            v: fx.v,
                            components,
                        };
                        comp.insert(
                            (i, CellRef::stored(dx0 + 1, ix), CellRef::stored(dy0 + 1, iy)),
                            fref(&z),
                        );
                    }
                }
            }
        }
    }
    let cat = Arc::new(omega::from_tables(n, cells, src, tgt, comp)?);
    Ok(HomCart {
        a: a.clone(),
        b: b.clone(),
        cat,
        functors,
        fams,
        index,
    })
}

/// The functor A -> Cyl B classified by a 1-cell of Hom(A,B): a d-cell z
/// maps to the degree-d cylinder whose bottom sides are the components at
/// the 0-boundaries of z and whose higher sides are forced identities
/// (strictness makes both pasted boundaries equal).
pub fn strict_cylinder_functor(
    h: &HomCart,
    cylb: &CylCat,
    one_cell: &CellRef,
) -> Result<OmegaFunctor> {
    assert_eq!(one_cell.dim, 1);
    let (a, b) = (&h.a, &h.b);
    let f = h.fam_of(one_cell);
    let (u, v) = (&h.functors[f.u], &h.functors[f.v]);
    let objs = a.stored(0);
    let comp_at = |x: &CellRef| f.components[objs.iter().position(|o| o == x).unwrap()];
    let map = (0..a.cells.len())
        .map(|d| {
            a.stored(d)
                .iter()
                .map(|z| {
                    let (x, y) = (u.apply(z), v.apply(z));
                    if d == 0 {
                        // objects go to their component 1-cell
                        let t = CylTuple {
                            x,
                            y,
                            minus: vec![],
                            plus: vec![],
                            top: comp_at(z),
                        };
                        return Ok(cylb.tuple_ref(&t));
                    }
                    let mut minus = Vec::new();
                    let mut plus = Vec::new();
                    for l in 0..d {
                        if l == 0 {
                            minus.push(comp_at(&a.s_i(0, z)));
                            plus.push(comp_at(&a.t_i(0, z)));
                        } else {
                            minus.push(
                                cyl::left_side(b, 0, &b.s_i(l, &x), &plus[..l])?.padded(1),
                            );
                            plus.push(
                                cyl::left_side(b, 0, &b.t_i(l, &x), &plus[..l])?.padded(1),
                            );
                        }
                    }
                    let top = cyl::left_side(b, 0, &x, &plus)?.padded(1);
                    let t = CylTuple {
                        x,
                        y,
                        minus,
                        plus,
                        top,
                    };
                    cyl::validate_tuple(b, 0, &t)?;
                    Ok(cylb.tuple_ref(&t))
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let out = OmegaFunctor::from_map(a, &cylb.cat, map);
    out.validate()?;
    Ok(out)
}

pub struct Lambda {
    pub hom_ac: HomCart,
    pub cyl_c: Arc<CylCat>,
    pub cyl_hom: CylCat,
    pub hom_acyl: HomCart,
    /// Cyl Hom(A,C) -> Hom(A, Cyl C).
    pub include: OmegaFunctor,
}

/// The componentwise inclusion: a cylinder of strict transformations maps
/// to the strict transformation of cylinders with the same components.
pub fn lambda_include(a: &Arc<OmegaCat>, c: &Arc<OmegaCat>) -> Result<Lambda> {
    let hom_ac = hom_cart(a, c)?;
    let cyl_c = Arc::new(cyl::cyl(c)?);
    let cyl_hom = cyl::cyl(&hom_ac.cat)?;
    let hom_acyl = hom_cart(a, &cyl_c.cat)?;
    let objs = a.stored(0);
    // a 1-cell of Hom(A,C) names an object of Hom(A, Cyl C)
    let obj_image = |e: &CellRef| -> Result<usize> {
        let g = strict_cylinder_functor(&hom_ac, &cyl_c, e)?;
        hom_acyl
            .functor_index(&g)
            .ok_or_else(|| Error::DanglingReference(format!("cylinder functor of 1-cell {e:?}")))
    };
    let map = (0..cyl_hom.cat.cells.len())
        .map(|k| {
            cyl_hom
                .stored_tuples(k)
                .iter()
                .map(|t| {
                    if k == 0 {
                        return Ok(CellRef::stored(0, obj_image(&t.top)?));
                    }
                    let at = |hc: &CellRef, i: usize| hom_ac.component(hc, i);
                    let components = (0..objs.len())
                        .map(|i| {
                            let tx = CylTuple {
                                x: at(&t.x, i),
                                y: at(&t.y, i),
                                minus: t.minus.iter().map(|z| at(z, i)).collect(),
                                plus: t.plus.iter().map(|z| at(z, i)).collect(),
                                top: at(&t.top, i),
                            };
                            cyl::validate_tuple(c, 0, &tx)?;
                            Ok(cyl_c.tuple_ref(&tx))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    // the 0-boundary objects are the iterated tuple faces,
                    // which bottom out at the first minus/plus sides
                    let f = Fam {
                        u: obj_image(&t.minus[0])?,
                        v: obj_image(&t.plus[0])?,
                        components,
                    };
                    Ok(hom_acyl.cell_of(&f))
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let include = OmegaFunctor::from_map(&cyl_hom.cat, &hom_acyl.cat, map);
    include.validate()?;
    Ok(Lambda {
        hom_ac,
        cyl_c,
        cyl_hom,
        hom_acyl,
        include,
    })
}

/// An oplax 1-cell u => v, carried by a functor into the cylinder.
#[derive(Clone, Debug)]
pub struct OplaxCell1 {
    pub u: OmegaFunctor,
    pub v: OmegaFunctor,
    pub witness: OmegaFunctor,
}

pub fn oplax_from_witness(cylb: &CylCat, witness: OmegaFunctor) -> Result<OplaxCell1> {
    if *witness.target != *cylb.cat {
        return Err(Error::BoundaryMismatch("witness misses Cyl B".into()));
    }
    Ok(OplaxCell1 {
        u: OmegaFunctor::compose(&cylb.src_f, &witness),
        v: OmegaFunctor::compose(&cylb.tgt_f, &witness),
        witness,
    })
}

/// The identity oplax cell on u is kappa after u.
pub fn oplax_identity(cylb: &CylCat, u: &OmegaFunctor) -> OplaxCell1 {
    OplaxCell1 {
        u: u.clone(),
        v: u.clone(),
        witness: OmegaFunctor::compose(&cylb.kappa_f, u),
    }
}

/// Vertical composite, pointwise tube concatenation.
pub fn oplax_vcomp(cylb: &CylCat, b2: &OplaxCell1, b1: &OplaxCell1) -> Result<OplaxCell1> {
    if b1.v.map != b2.u.map {
        return Err(Error::BoundaryMismatch("oplax cells do not abut".into()));
    }
    let a = &b1.witness.source;
    let c = &cylb.base;
    let map = (0..a.cells.len())
        .map(|d| {
            a.stored(d)
                .iter()
                .map(|z| {
                    let t1 = cylb.tuple_of(&b1.witness.apply(z));
                    let t2 = cylb.tuple_of(&b2.witness.apply(z));
                    Ok(cylb.tuple_ref(&cyl::conc(c, 0, &t2, &t1)?))
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let witness = OmegaFunctor::from_map(a, &cylb.cat, map);
    witness.validate()?;
    oplax_from_witness(cylb, witness)
}

/// Whisker an oplax cell by functors on either side.
pub fn oplax_whisker_pre(o: &OplaxCell1, f: &OmegaFunctor) -> OplaxCell1 {
    OplaxCell1 {
        u: OmegaFunctor::compose(&o.u, f),
        v: OmegaFunctor::compose(&o.v, f),
        witness: OmegaFunctor::compose(&o.witness, f),
    }
}

pub fn oplax_whisker_post(
    g: &OmegaFunctor,
    o: &OplaxCell1,
    cylb: &CylCat,
    cylb2: &CylCat,
) -> Result<OplaxCell1> {
    let cg = cyl::cyl_functor(g, cylb, cylb2)?;
    Ok(OplaxCell1 {
        u: OmegaFunctor::compose(g, &o.u),
        v: OmegaFunctor::compose(g, &o.v),
        witness: OmegaFunctor::compose(&cg, &o.witness),
    })
}

/// Every strict 1-transformation is an oplax cell through the inclusion.
pub fn strict_to_oplax(h: &HomCart, cylb: &CylCat, one_cell: &CellRef) -> Result<OplaxCell1> {
    let witness = strict_cylinder_functor(h, cylb, one_cell)?;
    oplax_from_witness(cylb, witness)
}
