//! Named verification suites, each re-running one family of exhaustive
//! checks over the built-in instance corpus. All suites are pure and emit
//! deterministic report lines.

use grayscope_core::comma::{self, comma, comma_enriched_crosscheck, comma_lax};
use grayscope_core::enriched::enriched_cyl_crosscheck;
use grayscope_core::functoriality::*;
use grayscope_core::gray::{
    free_interchange, gray_dual, gray_from_omega, gray_is_isomorphic, validate_gray, GrayCat,
    GrayDuality, Orientation,
};
use grayscope_core::grayslice::{
    fiber_iso_check, module_axiom_suite, slice_gray, strict_action_agreement,
};
use grayscope_core::homcart::{hom_cart, oplax_identity};
use grayscope_core::limits;
use grayscope_core::omega::{
    self, all_dims, dual, dual_functor, enumerate_functors, even_dims, free_chain, globe,
    is_isomorphic, odd_dims, CellRef, OmegaCat, OmegaFunctor,
};
use grayscope_core::Result;
use std::collections::BTreeMap;
use std::sync::Arc;

pub const SUITE_NAMES: &[&str] = &[
    "strict-laws",
    "dualities",
    "cylinders",
    "commas",
    "gray-slice",
    "fibers",
    "modules",
    "bifunctor",
    "strict-restriction",
    "grothendieck",
    "obstruction",
];

/// Runs the named suite (or `all`); `Ok(None)` means the name is unknown.
pub fn run_suite(name: &str) -> Result<Option<Vec<String>>> {
    let mut lines = Vec::new();
    if name == "all" {
        for n in SUITE_NAMES {
            lines.push(format!("[{n}]"));
            lines.extend(run_suite(n)?.expect("known suite"));
        }
        return Ok(Some(lines));
    }
    match name {
        "strict-laws" => strict_laws(&mut lines)?,
        "dualities" => dualities(&mut lines)?,
        "cylinders" => cylinders(&mut lines)?,
        "commas" => commas(&mut lines)?,
        "gray-slice" => gray_slice(&mut lines)?,
        "fibers" => fibers(&mut lines)?,
        "modules" => modules(&mut lines)?,
        "bifunctor" => bifunctor(&mut lines)?,
        "strict-restriction" => strict_restriction(&mut lines)?,
        "grothendieck" => grothendieck(&mut lines)?,
        "obstruction" => obstruction(&mut lines)?,
        _ => return Ok(None),
    }
    Ok(Some(lines))
}

fn strict_corpus() -> Vec<(&'static str, Arc<OmegaCat>)> {
    vec![
        ("D1@2", Arc::new(globe(1, 2))),
        ("D2@2", Arc::new(globe(2, 2))),
        ("D2@3", Arc::new(globe(2, 3))),
        ("D3@3", Arc::new(globe(3, 3))),
        ("chain2", Arc::new(free_chain(2, 2))),
    ]
}

fn gray_corpus() -> Vec<(&'static str, GrayCat)> {
    vec![
        ("gfo(D2@2)", gray_from_omega(&Arc::new(globe(2, 2))).unwrap()),
        ("gfo(chain2)", gray_from_omega(&Arc::new(free_chain(2, 2))).unwrap()),
        ("free(1,1)", free_interchange(1, 1).unwrap()),
        ("free(1,2)", free_interchange(1, 2).unwrap()),
    ]
}

fn strict_laws(lines: &mut Vec<String>) -> Result<()> {
    for (name, c) in strict_corpus() {
        c.validate()?;
        lines.push(format!("validated {name}"));
    }
    let d1 = Arc::new(globe(1, 2));
    let p = limits::product(&d1, &d1)?;
    p.cat.validate()?;
    let fp = limits::fiber_product(&OmegaFunctor::identity(&d1), &OmegaFunctor::identity(&d1))?;
    fp.cat.validate()?;
    lines.push("validated product and fiber product over the interval".into());
    // every single-entry composition mutation must be rejected
    let c = free_chain(2, 2);
    let (src, tgt, comp) = omega::tables(&c);
    let mut rejected = 0;
    let mut total = 0;
    for (k, z) in comp {
        for alt in c.all_cells(z.dim) {
            if alt == *z {
                continue;
            }
            total += 1;
            let mut m: BTreeMap<_, _> = comp.iter().map(|(a, b)| (*a, *b)).collect();
            m.insert(*k, alt);
            if omega::from_tables(c.truncation, c.cells.clone(), src.clone(), tgt.clone(), m)
                .is_err()
            {
                rejected += 1;
            }
        }
    }
    lines.push(format!("composition mutations rejected: {rejected}/{total}"));
    if rejected != total {
        return Err(grayscope_core::Error::law(
            "mutation rejection",
            format!("{} mutations accepted", total - rejected),
        ));
    }
    Ok(())
}

fn tables_eq(a: &OmegaCat, b: &OmegaCat) -> bool {
    a.truncation == b.truncation && a.cells == b.cells && omega::tables(a) == omega::tables(b)
}

fn dualities(lines: &mut Vec<String>) -> Result<()> {
    let subsets: Vec<Vec<usize>> = (0u8..8)
        .map(|m| (1..=3).filter(|d| m >> (d - 1) & 1 == 1).collect())
        .collect();
    for (name, c) in [("D2@3", Arc::new(globe(2, 3))), ("chain2", Arc::new(free_chain(2, 2)))] {
        let mut pairs = 0;
        for s in &subsets {
            for t in &subsets {
                let st: Vec<usize> = (1..=3)
                    .filter(|d| s.contains(d) != t.contains(d))
                    .collect();
                if !tables_eq(&dual(&Arc::new(dual(&c, s)), t), &dual(&c, &st)) {
                    return Err(grayscope_core::Error::law(
                        "duality composition",
                        format!("{name}: S={s:?} T={t:?}"),
                    ));
                }
                pairs += 1;
            }
        }
        lines.push(format!("{name}: {pairs} double duals table-identical"));
    }
    lines.push("the eight dualities compose as three commuting involutions".into());
    Ok(())
}

fn cylinders(lines: &mut Vec<String>) -> Result<()> {
    for (name, c) in [
        ("D0", Arc::new(globe(0, 2))),
        ("D1", Arc::new(globe(1, 2))),
        ("D2", Arc::new(globe(2, 2))),
        ("chain2", Arc::new(free_chain(2, 2))),
    ] {
        let cy = grayscope_core::cyl::cyl(&c)?;
        cy.cat.validate()?;
        enriched_cyl_crosscheck(&c)?;
        let n = strict_action_agreement(&c)?;
        lines.push(format!("{name}: tuple and formula builds isomorphic; {n} action instances"));
    }
    Ok(())
}

fn commas(lines: &mut Vec<String>) -> Result<()> {
    let d1 = Arc::new(globe(1, 2));
    let d0 = Arc::new(globe(0, 2));
    let c2 = Arc::new(globe(2, 2));
    let s = d1.lookup(0, "s0").unwrap();
    let t = d1.lookup(0, "t0").unwrap();
    let id = OmegaFunctor::identity(&d1);
    let cs = OmegaFunctor::constant(&d0, &d1, s);
    let ct = OmegaFunctor::constant(&d0, &d1, t);
    let e2 = |nm: &str| {
        let img = c2.lookup(1, nm).unwrap();
        OmegaFunctor::from_map(
            &d1,
            &c2,
            vec![vec![c2.src(&img), c2.tgt(&img)], vec![img]],
        )
    };
    let cospans: Vec<(&str, OmegaFunctor, OmegaFunctor)> = vec![
        ("id||id", id.clone(), id.clone()),
        ("id||t", id.clone(), ct.clone()),
        ("s||t", cs.clone(), ct.clone()),
        ("t1||s1", e2("t1"), e2("s1")),
    ];
    for (name, f, g) in &cospans {
        comma_enriched_crosscheck(f, g)?;
        lines.push(format!("cospan {name}: fiber-product and formula builds isomorphic"));
    }
    // factorization existence and uniqueness through the universal square
    let cc = comma(&id, &id)?;
    for (tn, tt) in [("D0", Arc::new(globe(0, 2))), ("D1", d1.clone()), ("D2", c2.clone())] {
        let mut squares = 0;
        for a in enumerate_functors(&tt, &d1) {
            for b in enumerate_functors(&tt, &d1) {
                for lam in enumerate_functors(&tt, &cc.cylc.cat) {
                    let sides_ok = OmegaFunctor::compose(&cc.cylc.src_f, &lam).map == a.map
                        && OmegaFunctor::compose(&cc.cylc.tgt_f, &lam).map == b.map;
                    let h = cc.factorize(&a, &lam, &b);
                    if !sides_ok {
                        if h.is_ok() {
                            return Err(grayscope_core::Error::law(
                                "factorization",
                                "accepted a non-square",
                            ));
                        }
                        continue;
                    }
                    let h = h?;
                    let matching = enumerate_functors(&tt, &cc.total)
                        .into_iter()
                        .filter(|k| {
                            OmegaFunctor::compose(&cc.p1, k).map == a.map
                                && OmegaFunctor::compose(&cc.p2, k).map == b.map
                                && OmegaFunctor::compose(&cc.gamma, k).map == lam.map
                        })
                        .count();
                    if matching != 1 {
                        return Err(grayscope_core::Error::law(
                            "factorization uniqueness",
                            format!("{matching} candidates"),
                        ));
                    }
                    let _ = h;
                    squares += 1;
                }
            }
        }
        lines.push(format!("test squares over {tn}: {squares} factor uniquely"));
    }
    // duality identities
    let n = d1.truncation;
    let (o, co, op) = (all_dims(n), even_dims(n), odd_dims(n));
    let cc = comma(&id, &ct)?;
    let swapped = comma(&dual_functor(&ct, &o), &dual_functor(&id, &o))?;
    if is_isomorphic(&Arc::new(dual(&cc.total, &o)), &swapped.total).is_none() {
        return Err(grayscope_core::Error::law("comma full duality", "id||t"));
    }
    let lax = comma_lax(&dual_functor(&id, &co), &dual_functor(&ct, &co))?;
    if is_isomorphic(&lax.total, &Arc::new(dual(&cc.total, &co))).is_none() {
        return Err(grayscope_core::Error::law("comma co-duality", "id||t"));
    }
    let lax_op = comma_lax(&dual_functor(&ct, &o), &dual_functor(&id, &o))?;
    if is_isomorphic(&Arc::new(dual(&cc.total, &op)), &lax_op.total).is_none() {
        return Err(grayscope_core::Error::law("comma op-duality", "id||t"));
    }
    lines.push("duality identities hold as isomorphisms".into());
    Ok(())
}

fn gray_slice(lines: &mut Vec<String>) -> Result<()> {
    for (name, g) in gray_corpus() {
        for c in 0..g.objects.len() {
            let s = slice_gray(&g, c)?;
            validate_gray(&s.cat)?;
            s.forgetful.validate(&s.cat, &g)?;
        }
        lines.push(format!("{name}: every object slice validates with its forgetful functor"));
    }
    Ok(())
}

fn fibers(lines: &mut Vec<String>) -> Result<()> {
    for (name, g) in gray_corpus() {
        let mut n = 0;
        for c in 0..g.objects.len() {
            for d in 0..g.objects.len() {
                if d != c && !g.homs.contains_key(&(d, c)) {
                    continue;
                }
                fiber_iso_check(&g, c, d)?;
                n += 1;
            }
        }
        lines.push(format!("{name}: {n} fibers match the dualized mapping homs"));
    }
    Ok(())
}

fn modules(lines: &mut Vec<String>) -> Result<()> {
    for (name, g) in gray_corpus() {
        let n = module_axiom_suite(&g)?;
        lines.push(format!("{name}: {n} action-law instances"));
    }
    for (name, c) in [("D2@2", Arc::new(globe(2, 2))), ("chain2", Arc::new(free_chain(2, 2)))] {
        let n = strict_action_agreement(&c)?;
        lines.push(format!("{name}: {n} strict/gray action agreements"));
    }
    Ok(())
}

struct SquareFixture {
    c: Arc<OmegaCat>,
    d1: Arc<OmegaCat>,
    f: OmegaFunctor,
    fp: OmegaFunctor,
    g: OmegaFunctor,
    gp: OmegaFunctor,
}

fn square_fixture() -> SquareFixture {
    let c = Arc::new(globe(2, 2));
    let d1 = Arc::new(globe(1, 2));
    let func = |nm: &str| {
        let img = c.lookup(1, nm).unwrap();
        OmegaFunctor::from_map(&d1, &c, vec![vec![c.src(&img), c.tgt(&img)], vec![img]])
    };
    SquareFixture {
        f: func("t1"),
        fp: func("s1"),
        g: func("s1"),
        gp: func("t1"),
        c,
        d1,
    }
}

fn bifunctor(lines: &mut Vec<String>) -> Result<()> {
    let fx = square_fixture();
    let id1 = OmegaFunctor::identity(&fx.d1);
    let cc0 = comma(&fx.f, &fx.g)?;
    let cc1 = comma(&fx.fp, &fx.gp)?;
    let alphas = enumerate_oplax(&cc0.cylc, &fx.fp, &fx.f);
    let betas = enumerate_oplax(&cc0.cylc, &fx.g, &fx.gp);
    let t1c = BifunctorCell {
        u: id1.clone(),
        alpha: alphas[0].clone(),
        beta: betas[0].clone(),
        v: id1.clone(),
    };
    let cc2 = comma(&fx.fp, &fx.gp)?;
    let t2c = BifunctorCell {
        u: id1.clone(),
        alpha: enumerate_oplax(&cc0.cylc, &fx.fp, &fx.fp)[0].clone(),
        beta: enumerate_oplax(&cc0.cylc, &fx.gp, &fx.gp)[0].clone(),
        v: id1.clone(),
    };
    let n = bifunctor_law_check(&cc0, &cc1, &cc2, &t1c, &t2c)?;
    let m = projection_naturality_check(&cc0, &cc1, &t1c)?;
    lines.push(format!("square instance: {n} law equations, naturality over {m} cells"));
    // second instance: strictly commuting squares over the same cospan
    let strict = BifunctorCell {
        u: id1.clone(),
        alpha: oplax_identity(&cc0.cylc, &fx.f),
        beta: oplax_identity(&cc0.cylc, &fx.g),
        v: id1.clone(),
    };
    let cc0b = comma(&fx.f, &fx.g)?;
    let n2 = bifunctor_law_check(&cc0, &cc0b, &cc0b, &strict, &bifunctor_identity(&cc0b))?;
    let m2 = projection_naturality_check(&cc0, &cc0b, &strict)?;
    lines.push(format!("strict instance: {n2} law equations, naturality over {m2} cells"));
    Ok(())
}

fn strict_restriction(lines: &mut Vec<String>) -> Result<()> {
    let fx = square_fixture();
    let w = wtr_build(&fx.c, &[fx.f.clone(), fx.g.clone()])?;
    w.assembly.cat.validate()?;
    let inc = wtr_strict_inclusion(&w)?;
    let ag = wtr_oplax_agreement(&w)?;
    lines.push(format!("strict witness slice validates; inclusion over {inc} cells, oplax agreement over {ag}"));
    let id1 = OmegaFunctor::identity(&fx.d1);
    let cc0 = comma(&fx.f, &fx.g)?;
    let cc1 = comma(&fx.fp, &fx.gp)?;
    let alphas = enumerate_oplax(&cc0.cylc, &fx.fp, &fx.f);
    let betas = enumerate_oplax(&cc0.cylc, &fx.g, &fx.gp);
    let haa = hom_cart(&fx.d1, &fx.d1)?;
    let hacyl = hom_cart(&fx.d1, &cc0.cylc.cat)?;
    let idc = |k: usize| CellRef { dim: 1, index: k, pad: 1 };
    let wc = WCell1 {
        u: idc(haa.functor_index(&id1).unwrap()),
        alpha: idc(hacyl.functor_index(&alphas[0].witness).unwrap()),
        beta: idc(hacyl.functor_index(&betas[0].witness).unwrap()),
        v: idc(haa.functor_index(&id1).unwrap()),
    };
    let nb = bifun_strict_check(&cc0, &cc1, &haa, &hacyl, &hacyl, &haa, &wc)?;
    lines.push(format!("bifunctor output on slice cells is strict over {nb} components"));
    Ok(())
}

fn mixed_interval_fdata() -> FData {
    let d0 = Arc::new(globe(0, 1));
    let d1 = Arc::new(globe(1, 1));
    let to_point = OmegaFunctor::constant(&d1, &d0, CellRef::stored(0, 0));
    FData {
        base: d1.clone(),
        fibers: vec![d0, d1],
        arrows: [(0usize, to_point)].into_iter().collect(),
        squares: BTreeMap::new(),
    }
}

fn square_fdata() -> FData {
    let d1 = Arc::new(globe(1, 1));
    let d2 = Arc::new(globe(2, 2));
    let e = d1.lookup(1, "e").unwrap();
    let t_obj = d1.tgt(&e);
    FData {
        base: d2,
        fibers: vec![d1.clone(), d1.clone()],
        arrows: [
            (0usize, OmegaFunctor::constant(&d1, &d1, t_obj)),
            (1usize, OmegaFunctor::identity(&d1)),
        ]
        .into_iter()
        .collect(),
        squares: [(0usize, vec![e, t_obj.padded(1)])].into_iter().collect(),
    }
}

fn const_point_fdata(i_cat: &Arc<OmegaCat>) -> FData {
    let d0 = Arc::new(globe(0, 1));
    let n2 = if i_cat.cells.len() > 2 { i_cat.stored_count(2) } else { 0 };
    FData {
        base: i_cat.clone(),
        fibers: (0..i_cat.stored_count(0)).map(|_| d0.clone()).collect(),
        arrows: (0..i_cat.stored_count(1))
            .map(|k| (k, OmegaFunctor::identity(&d0)))
            .collect(),
        squares: (0..n2)
            .map(|k| (k, vec![CellRef::stored(0, 0).padded(1)]))
            .collect(),
    }
}

fn grothendieck(lines: &mut Vec<String>) -> Result<()> {
    let instances: Vec<(&str, FData)> = vec![
        ("const-pt/D1", const_point_fdata(&Arc::new(globe(1, 1)))),
        ("const-pt/D2", const_point_fdata(&Arc::new(globe(2, 2)))),
        ("mixed/D1", mixed_interval_fdata()),
        ("square/D2", square_fdata()),
    ];
    for (name, fd) in &instances {
        let ig = integrate(fd)?;
        let orc = direct_grothendieck_oracle(fd)?;
        let tt = Arc::new(truncate_cat(&ig.total, orc.truncation)?);
        if is_isomorphic(&tt, &orc).is_none() {
            return Err(grayscope_core::Error::MismatchWitness(format!(
                "{name}: total differs from the low-dimensional rebuild"
            )));
        }
        let nf = integrate_functoriality_check(fd, &ig)?;
        let nc = integrate_cartesian_check(fd, &ig)?;
        lines.push(format!(
            "{name}: rebuild isomorphic; functoriality over {nf} pairs, {nc} cartesian homs"
        ));
    }
    // constant-point collapse is the base, exactly
    for (name, i_cat) in [("D1", Arc::new(globe(1, 1))), ("D2", Arc::new(globe(2, 2)))] {
        let fd = const_point_fdata(&i_cat);
        let ig = integrate(&fd)?;
        let tt = Arc::new(truncate_cat(&ig.total, i_cat.truncation)?);
        if is_isomorphic(&tt, &i_cat).is_none() {
            return Err(grayscope_core::Error::MismatchWitness(format!(
                "constant collapse over {name}"
            )));
        }
    }
    lines.push("constant-point fibers collapse to the base".into());
    // the gray-valued construction agrees on strict inputs
    for (name, fd) in &instances[2..] {
        let ig = integrate(fd)?;
        let gi = gray_integrate(&gray_fdata_from_strict(fd)?)?;
        if gi.total.orientation != Orientation::Gray
            || gray_is_isomorphic(&gi.total, &gray_from_omega(&ig.total)?).is_none()
        {
            return Err(grayscope_core::Error::MismatchWitness(format!(
                "{name}: gray and strict totals differ"
            )));
        }
    }
    lines.push("gray-valued totals agree with the strict totals".into());
    Ok(())
}

fn obstruction(lines: &mut Vec<String>) -> Result<()> {
    let g = free_interchange(1, 1)?;
    let h01 = g.hom(0, 1).unwrap();
    let h12 = g.hom(1, 2).unwrap();
    let e01 = h01.lookup(1, "e").unwrap();
    let e12 = h12.lookup(1, "e").unwrap();
    let al = OneCylinder {
        src: (0, 1),
        tgt: (0, 1),
        top: h01.src(&e01),
        bottom: h01.tgt(&e01),
        minus: g.units[&0],
        plus: g.units[&1],
        filler: e01,
    };
    let lm = TwoCylinder {
        src: (1, 2),
        tgt: (1, 2),
        top: e12,
        bottom: e12,
        minus0: g.units[&1],
        plus0: g.units[&2],
        minus1: h12.src(&e12).padded(1),
        plus1: h12.tgt(&e12).padded(1),
        filler: e12.padded(1),
    };
    let gt = gray_dual(&g, GrayDuality::Top);
    let verdict = |v: &CylVerdict| match v {
        CylVerdict::Composite(_) => "composite",
        CylVerdict::Obstruction { .. } => "obstruction",
    };
    let a = attempt_compose_2cyl(&g, &lm, &al)?;
    let b = attempt_compose_2cyl(&gt, &lm, &al)?;
    lines.push(format!(
        "free interchanger, left whisker: {} (reversed orientation: {})",
        verdict(&a),
        verdict(&b)
    ));
    if !matches!(a, CylVerdict::Obstruction { .. }) || !matches!(b, CylVerdict::Composite(_)) {
        return Err(grayscope_core::Error::MismatchWitness(
            "left-whisker verdicts out of order".into(),
        ));
    }
    let lm2 = TwoCylinder {
        src: (0, 1),
        tgt: (0, 1),
        top: e01,
        bottom: e01,
        minus0: g.units[&0],
        plus0: g.units[&1],
        minus1: h01.src(&e01).padded(1),
        plus1: h01.tgt(&e01).padded(1),
        filler: e01.padded(1),
    };
    let be = OneCylinder {
        src: (1, 2),
        tgt: (1, 2),
        top: h12.src(&e12),
        bottom: h12.tgt(&e12),
        minus: g.units[&1],
        plus: g.units[&2],
        filler: e12,
    };
    let a = attempt_compose_2cyl_right(&g, &be, &lm2)?;
    let b = attempt_compose_2cyl_right(&gt, &be, &lm2)?;
    lines.push(format!(
        "free interchanger, right whisker: {} (reversed orientation: {})",
        verdict(&a),
        verdict(&b)
    ));
    if !matches!(a, CylVerdict::Composite(_)) || !matches!(b, CylVerdict::Obstruction { .. }) {
        return Err(grayscope_core::Error::MismatchWitness(
            "right-whisker verdicts out of order".into(),
        ));
    }
    // strict-origin instances always compose
    let mut n = 0;
    for gs in [
        gray_from_omega(&Arc::new(globe(2, 3)))?,
        gray_from_omega(&Arc::new(free_chain(2, 2)))?,
    ] {
    for i in 0..gs.objects.len() {
        for j in 0..gs.objects.len() {
            let Some(h) = gs.hom(i, j) else { continue };
            for f1 in h.all_cells(1) {
                let a = OneCylinder {
                    src: (i, j),
                    tgt: (i, j),
                    top: h.src(&f1),
                    bottom: h.tgt(&f1),
                    minus: gs.units[&i],
                    plus: gs.units[&j],
                    filler: f1,
                };
                for k in 0..gs.objects.len() {
                    let Some(hk) = gs.hom(j, k) else { continue };
                    for t in hk.all_cells(1) {
                        let l = TwoCylinder {
                            src: (j, k),
                            tgt: (j, k),
                            top: t,
                            bottom: t,
                            minus0: gs.units[&j],
                            plus0: gs.units[&k],
                            minus1: hk.src(&t).padded(1),
                            plus1: hk.tgt(&t).padded(1),
                            filler: t.padded(1),
                        };
                        if !matches!(attempt_compose_2cyl(&gs, &l, &a)?, CylVerdict::Composite(_)) {
                            return Err(grayscope_core::Error::MismatchWitness(
                                "strict instance failed to compose".into(),
                            ));
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    }
    lines.push(format!("strict-origin instances: {n} composites"));
    for (name, gg) in [
        ("free(1,1)", free_interchange(1, 1)?),
        ("gfo(D2@2)", gray_from_omega(&Arc::new(globe(2, 2)))?),
    ] {
        let cy = cylinder_cat_1(&gg)?;
        lines.push(format!(
            "{name}: 1-cylinder category with {} objects and {} arrows validates",
            cy.objects.len(),
            cy.arrows.len()
        ));
    }
    let _ = comma::SliceKind::Over;
    Ok(())
}
