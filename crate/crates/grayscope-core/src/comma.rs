//! Comma categories over a cospan of functors, their slices, the lax comma
//! by duality, factorization through the universal square, and an enriched
//! oracle rebuilt hom-by-hom.

use crate::assemble::{self, Assembly, HomSpec};
use crate::cyl::{self, CylCat, CylTuple};
use crate::error::{Error, Result};
use crate::hom::{self, HomCat};
use crate::limits::{self, Span};
use crate::omega::{self, dual, dual_functor, is_isomorphic, CellRef, OmegaCat, OmegaFunctor};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The comma category of `f: A -> C` and `g: B -> C`: the iterated fiber
/// product of A, Cyl C and B along (f, s-tilde) and (t-tilde, g). Cells are
/// triples (a, cylinder, b).
pub struct CommaCat {
    pub f: OmegaFunctor,
    pub g: OmegaFunctor,
    pub cylc: Arc<CylCat>,
    pub total: Arc<OmegaCat>,
    pub p1: OmegaFunctor,
    pub p2: OmegaFunctor,
    /// Into `cylc.cat`.
    pub gamma: OmegaFunctor,
    span1: Span,
    span2: Span,
}

impl CommaCat {
    pub fn decode(&self, r: &CellRef) -> (CellRef, CellRef, CellRef) {
        let (p, b) = self.span2.components(r);
        let (a, t) = self.span1.components(&p);
        (a, t, b)
    }

    pub fn encode(&self, a: &CellRef, t: &CellRef, b: &CellRef) -> CellRef {
        self.span2.pair(&self.span1.pair(a, t), b)
    }

    /// The unique functor h: T -> total with p1.h = a, p2.h = b and
    /// gamma.h = lam, given a 2-square over T.
    pub fn factorize(
        &self,
        a: &OmegaFunctor,
        lam: &OmegaFunctor,
        b: &OmegaFunctor,
    ) -> Result<OmegaFunctor> {
        if *a.source != *lam.source || *b.source != *lam.source {
            return Err(Error::IllFormedSquare("legs have different sources".into()));
        }
        if *lam.target != *self.cylc.cat {
            return Err(Error::IllFormedSquare("middle leg misses Cyl C".into()));
        }
        let fa = OmegaFunctor::compose(&self.f, a);
        let gb = OmegaFunctor::compose(&self.g, b);
        if OmegaFunctor::compose(&self.cylc.src_f, lam).map != fa.map
            || OmegaFunctor::compose(&self.cylc.tgt_f, lam).map != gb.map
        {
            return Err(Error::IllFormedSquare(
                "square equations s.lam = f.a, t.lam = g.b fail".into(),
            ));
        }
        let t = a.source.clone();
        let map = (0..t.cells.len())
            .map(|d| {
                t.stored(d)
                    .iter()
                    .map(|x| self.encode(&a.apply(x), &lam.apply(x), &b.apply(x)))
                    .collect()
            })
            .collect();
        let h = OmegaFunctor::from_map(&t, &self.total, map);
        h.validate()?;
        Ok(h)
    }
}

pub fn comma(f: &OmegaFunctor, g: &OmegaFunctor) -> Result<CommaCat> {
    if *f.target != *g.target {
        return Err(Error::MismatchedCospan("comma legs target differently".into()));
    }
    let cylc = Arc::new(cyl::cyl(&f.target)?);
    let span1 = limits::fiber_product(f, &cylc.src_f)?;
    let mid_t = OmegaFunctor::compose(&cylc.tgt_f, &span1.p2);
    let span2 = limits::fiber_product(&mid_t, g)?;
    let total = span2.cat.clone();
    let p1 = OmegaFunctor::compose(&span1.p1, &span2.p1);
    let p2 = span2.p2.clone();
    let gamma = OmegaFunctor::compose(&span1.p2, &span2.p1);
    // the defining 2-square
    debug_assert_eq!(
        OmegaFunctor::compose(&cylc.src_f, &gamma).map,
        OmegaFunctor::compose(f, &p1).map
    );
    debug_assert_eq!(
        OmegaFunctor::compose(&cylc.tgt_f, &gamma).map,
        OmegaFunctor::compose(g, &p2).map
    );
    Ok(CommaCat {
        f: f.clone(),
        g: g.clone(),
        cylc,
        total,
        p1,
        p2,
        gamma,
        span1,
        span2,
    })
}

/// The slice C/c as comma(id, c) and its relatives.
pub enum SliceKind<'a> {
    Over,
    Under,
    RelativeOver(&'a OmegaFunctor),
    RelativeUnder(&'a OmegaFunctor),
}

pub fn slice(c: &Arc<OmegaCat>, obj: CellRef, kind: SliceKind) -> Result<CommaCat> {
    if !c.is_object(&obj) {
        return Err(Error::NotAnObject(c.name(&obj)));
    }
    let d0 = Arc::new(omega::globe(0, c.truncation));
    let cbar = OmegaFunctor::constant(&d0, c, obj);
    let id = OmegaFunctor::identity(c);
    match kind {
        SliceKind::Over => comma(&id, &cbar),
        SliceKind::Under => comma(&cbar, &id),
        SliceKind::RelativeOver(u) => comma(u, &cbar),
        SliceKind::RelativeUnder(v) => comma(&cbar, v),
    }
}

/// The lax comma, produced by conjugating the oplax one with the co-duality.
pub struct CommaLax {
    pub total: Arc<OmegaCat>,
    pub p1: OmegaFunctor,
    pub p2: OmegaFunctor,
}

pub fn comma_lax(f: &OmegaFunctor, g: &OmegaFunctor) -> Result<CommaLax> {
    let co = omega::even_dims(f.target.truncation);
    let fc = dual_functor(f, &co);
    let gc = dual_functor(g, &co);
    let inner = comma(&fc, &gc)?;
    let total = Arc::new(dual(&inner.total, &co));
    let p1 = OmegaFunctor {
        source: total.clone(),
        target: f.source.clone(),
        map: inner.p1.map.clone(),
    };
    let p2 = OmegaFunctor {
        source: total.clone(),
        target: g.source.clone(),
        map: inner.p2.map.clone(),
    };
    p1.validate()?;
    p2.validate()?;
    Ok(CommaLax { total, p1, p2 })
}

/// Induced map between commas over the same base for a strict square
/// `f' . u = f`, `g' . v = g`.
pub fn comma_map_strict(
    cc: &CommaCat,
    cc2: &CommaCat,
    u: &OmegaFunctor,
    v: &OmegaFunctor,
) -> Result<OmegaFunctor> {
    if OmegaFunctor::compose(&cc2.f, u).map != cc.f.map
        || OmegaFunctor::compose(&cc2.g, v).map != cc.g.map
    {
        return Err(Error::IllFormedSquare("not a strict morphism of cospans".into()));
    }
    let a = OmegaFunctor::compose(u, &cc.p1);
    let b = OmegaFunctor::compose(v, &cc.p2);
    // same base category, so the cylinder leg carries over as-is
    let lam = OmegaFunctor {
        source: cc.total.clone(),
        target: cc2.cylc.cat.clone(),
        map: cc.gamma.map.clone(),
    };
    cc2.factorize(&a, &lam, &b)
}

/// Fixed-g functoriality for an oplax triangle: `alpha: A -> Cyl C` with
/// s-tilde.alpha = f'.u and t-tilde.alpha = f. The induced functor sends a
/// cell to `(u(a), gamma conc alpha(a), b)`.
pub fn comma_map_oplax(
    cc: &CommaCat,
    cc2: &CommaCat,
    u: &OmegaFunctor,
    alpha: &OmegaFunctor,
) -> Result<OmegaFunctor> {
    if cc.g.map != cc2.g.map || *cc.g.target != *cc2.g.target {
        return Err(Error::IllFormedSquare("oplax variant requires fixed g".into()));
    }
    if OmegaFunctor::compose(&cc.cylc.src_f, alpha).map
        != OmegaFunctor::compose(&cc2.f, u).map
        || OmegaFunctor::compose(&cc.cylc.tgt_f, alpha).map != cc.f.map
    {
        return Err(Error::IllFormedSquare("triangle boundary equations fail".into()));
    }
    let c = &cc.f.target;
    let map = (0..cc.total.cells.len())
        .map(|d| {
            cc.total
                .stored(d)
                .iter()
                .map(|t| {
                    let (a, gref, b) = cc.decode(t);
                    let g_t = cc.cylc.tuple_of(&gref);
                    let a_t = cc.cylc.tuple_of(&alpha.apply(&cc.p1.apply(t)));
                    let z = cyl::conc(c, 0, &g_t, &a_t)?;
                    Ok(cc2.encode(
                        &u.apply(&a),
                        &cc2.cylc.tuple_ref(&z),
                        &b,
                    ))
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let h = OmegaFunctor::from_map(&cc.total, &cc2.total, map);
    h.validate()?;
    Ok(h)
}

/// Independent enriched reconstruction: objects are triples (a, l, b) with
/// l: fa -> gb; the hom between two such is the iterated fiber product of
/// Hom_A(a,a'), Cyl Hom_C(fa,gb') and Hom_B(b,b'); level-0 composition is
/// `(u'*u, (g(v') l-whisker alpha) conc (alpha' r-whisker f(u)), v'*v)`.
pub fn comma_oracle(f: &OmegaFunctor, g: &OmegaFunctor) -> Result<Assembly> {
    if *f.target != *g.target {
        return Err(Error::MismatchedCospan("comma legs target differently".into()));
    }
    let (a_cat, b_cat, c) = (&f.source, &g.source, &f.target);
    struct Obj {
        a: CellRef,
        l: CellRef,
        b: CellRef,
    }
    let mut objs: Vec<Obj> = Vec::new();
    for a in a_cat.stored(0) {
        for b in b_cat.stored(0) {
            for l in c.all_cells(1) {
                if c.src(&l) == f.apply(&a) && c.tgt(&l) == g.apply(&b) {
                    objs.push(Obj { a, l, b });
                }
            }
        }
    }
    let mut hom_a: BTreeMap<(CellRef, CellRef), Arc<HomCat>> = BTreeMap::new();
    let mut hom_b: BTreeMap<(CellRef, CellRef), Arc<HomCat>> = BTreeMap::new();
    let mut hom_c: BTreeMap<(CellRef, CellRef), Arc<HomCat>> = BTreeMap::new();
    let mut cyl_c: BTreeMap<(CellRef, CellRef), Arc<CylCat>> = BTreeMap::new();
    fn get<'m>(
        cache: &'m mut BTreeMap<(CellRef, CellRef), Arc<HomCat>>,
        cat: &Arc<OmegaCat>,
        a: CellRef,
        b: CellRef,
    ) -> Result<Arc<HomCat>> {
        if !cache.contains_key(&(a, b)) {
            cache.insert((a, b), Arc::new(hom::hom_cat(cat, a, b)?));
        }
        Ok(cache[&(a, b)].clone())
    }
    struct PairCtx {
        h1: Arc<HomCat>,
        h3: Arc<HomCat>,
        hmid: Arc<HomCat>,
        cylmid: Arc<CylCat>,
        span1: Span,
        span2: Span,
    }
    impl PairCtx {
        fn decode(&self, r: &CellRef) -> (CellRef, CylTuple, CellRef) {
            let (p, v) = self.span2.components(r);
            let (u, aref) = self.span1.components(&p);
            let t = self.cylmid.tuple_of(&aref);
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
        fn encode(&self, u: &CellRef, t: &CylTuple, v: &CellRef) -> CellRef {
            let hm = |z: &CellRef| self.hmid.from_c(z);
            let ht = CylTuple {
                x: hm(&t.x),
                y: hm(&t.y),
                minus: t.minus.iter().map(&hm).collect(),
                plus: t.plus.iter().map(&hm).collect(),
                top: hm(&t.top),
            };
            let p = self.span1.pair(&self.h1.from_c(u), &self.cylmid.tuple_ref(&ht));
            self.span2.pair(&p, &self.h3.from_c(v))
        }
    }
    let mut ctxs: BTreeMap<(usize, usize), PairCtx> = BTreeMap::new();
    for (i, oi) in objs.iter().enumerate() {
        for (j, oj) in objs.iter().enumerate() {
            let h1 = get(&mut hom_a, a_cat, oi.a, oj.a)?;
            let h3 = get(&mut hom_b, b_cat, oi.b, oj.b)?;
            let hmid = get(&mut hom_c, c, f.apply(&oi.a), g.apply(&oj.b))?;
            let key = (f.apply(&oi.a), g.apply(&oj.b));
            if !cyl_c.contains_key(&key) {
                cyl_c.insert(key, Arc::new(cyl::cyl(&hmid.cat)?));
            }
            let cylmid = cyl_c[&key].clone();
            let post = OmegaFunctor::from_map(
                &h1.cat,
                &hmid.cat,
                (0..h1.cat.cells.len())
                    .map(|d| {
                        h1.cat
                            .stored(d)
                            .iter()
                            .map(|z| {
                                Ok(hmid
                                    .from_c(&c.comp(0, &oj.l, &f.apply(&h1.to_c(z)))?))
                            })
                            .collect::<Result<_>>()
                    })
                    .collect::<Result<_>>()?,
            );
            post.validate()?;
            let pre = OmegaFunctor::from_map(
                &h3.cat,
                &hmid.cat,
                (0..h3.cat.cells.len())
                    .map(|d| {
                        h3.cat
                            .stored(d)
                            .iter()
                            .map(|z| {
                                Ok(hmid
                                    .from_c(&c.comp(0, &g.apply(&h3.to_c(z)), &oi.l)?))
                            })
                            .collect::<Result<_>>()
                    })
                    .collect::<Result<_>>()?,
            );
            pre.validate()?;
            let span1 = limits::fiber_product(&post, &cylmid.src_f)?;
            let mid_t = OmegaFunctor::compose(&cylmid.tgt_f, &span1.p2);
            let span2 = limits::fiber_product(&mid_t, &pre)?;
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
    for (i, o) in objs.iter().enumerate() {
        for j in 0..objs.len() {
            homs.insert((i, j), ctxs[&(i, j)].span2.cat.clone());
        }
        let ctx = &ctxs[&(i, i)];
        units.insert(
            i,
            ctx.encode(&o.a.padded(1), &cyl::kappa_tuple(c, 1, &o.l), &o.b.padded(1)),
        );
    }
    let spec = HomSpec {
        truncation: c.truncation.max(a_cat.truncation).max(b_cat.truncation),
        objects: objs
            .iter()
            .map(|o| {
                format!(
                    "({},{},{})",
                    a_cat.name(&o.a),
                    c.name(&o.l),
                    b_cat.name(&o.b)
                )
            })
            .collect(),
        homs,
        units,
    };
    let comp0 = |i: usize, j: usize, k: usize, x: &CellRef, y: &CellRef| -> Result<CellRef> {
        let (u2, mut a2, v2) = ctxs[&(j, k)].decode(x);
        let (u1, mut a1, v1) = ctxs[&(i, j)].decode(y);
        while a2.degree() < a1.degree() {
            a2 = cyl::tuple_unit(&a2);
        }
        while a1.degree() < a2.degree() {
            a1 = cyl::tuple_unit(&a1);
        }
        let u = a_cat.comp(0, &u2, &u1)?;
        let v = b_cat.comp(0, &v2, &v1)?;
        let beta = cyl::whisker_left(c, 0, &g.apply(&v2), &a1)?;
        let alpha = cyl::whisker_right(c, 0, &a2, &f.apply(&u1))?;
        let mid = cyl::conc(c, 1, &beta, &alpha)?;
        Ok(ctxs[&(i, k)].encode(&u, &mid, &v))
    };
    assemble::assemble(spec, &comp0)
}

/// Build the comma both ways and demand an isomorphism.
pub fn comma_enriched_crosscheck(f: &OmegaFunctor, g: &OmegaFunctor) -> Result<OmegaFunctor> {
    let direct = comma(f, g)?;
    let oracle = comma_oracle(f, g)?;
    is_isomorphic(&direct.total, &oracle.cat).ok_or_else(|| {
        Error::MismatchWitness(format!(
            "fiber-product and enriched commas differ: stored {:?} vs {:?}",
            (0..direct.total.cells.len())
                .map(|d| direct.total.stored_count(d))
                .collect::<Vec<_>>(),
            (0..oracle.cat.cells.len())
                .map(|d| oracle.cat.stored_count(d))
                .collect::<Vec<_>>()
        ))
    })
}
