use grayscope_core::comma::{comma, comma_map_oplax, comma_map_strict, CommaCat};
use grayscope_core::functoriality::*;
use grayscope_core::gray::{
    free_interchange, gray_dual, gray_from_omega, gray_is_isomorphic, GrayDuality, Orientation,
};
use grayscope_core::homcart::{hom_cart, oplax_identity};
use grayscope_core::omega::{globe, is_isomorphic, CellRef, OmegaCat, OmegaFunctor};

use std::collections::BTreeMap;
use std::sync::Arc;

fn counts(c: &OmegaCat) -> Vec<usize> {
    (0..c.cells.len()).map(|d| c.stored_count(d)).collect()
}

/// The walking 2-cell, the interval at matching truncation, and the four
/// interval endofunctors of the square's boundary.
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
    let s1 = c.lookup(1, "s1").unwrap();
    let t1 = c.lookup(1, "t1").unwrap();
    let func = |img: CellRef| {
        let map = vec![vec![c.src(&img), c.tgt(&img)], vec![img]];
        let f = OmegaFunctor::from_map(&d1, &c, map);
        f.validate().unwrap();
        f
    };
    SquareFixture {
        f: func(t1),
        fp: func(s1),
        g: func(s1),
        gp: func(t1),
        c,
        d1,
    }
}

fn square_cell(fx: &SquareFixture, cc0: &CommaCat) -> BifunctorCell {
    let id1 = OmegaFunctor::identity(&fx.d1);
    let alphas = enumerate_oplax(&cc0.cylc, &fx.fp, &fx.f);
    let betas = enumerate_oplax(&cc0.cylc, &fx.g, &fx.gp);
    BifunctorCell {
        u: id1.clone(),
        alpha: alphas[0].clone(),
        beta: betas[0].clone(),
        v: id1,
    }
}

#[test]
fn identity_square_induces_the_identity_on_the_comma() {
    let fx = square_fixture();
    let cc0 = comma(&fx.f, &fx.g).unwrap();
    let k = comma_bifunctor(&cc0, &cc0, &bifunctor_identity(&cc0)).unwrap();
    assert_eq!(k.map, OmegaFunctor::identity(&cc0.total).map);
}

#[test]
fn one_sided_squares_recover_the_comma_maps() {
    let fx = square_fixture();
    let id1 = OmegaFunctor::identity(&fx.d1);
    let cc0 = comma(&fx.f, &fx.g).unwrap();
    let alphas = enumerate_oplax(&cc0.cylc, &fx.fp, &fx.f);

    // varying only the left leg reproduces the single-witness comma map
    let ccg = comma(&fx.fp, &fx.g).unwrap();
    let fixed = BifunctorCell {
        u: id1.clone(),
        alpha: alphas[0].clone(),
        beta: oplax_identity(&cc0.cylc, &fx.g),
        v: id1.clone(),
    };
    let k1 = comma_bifunctor(&cc0, &ccg, &fixed).unwrap();
    let k2 = comma_map_oplax(&cc0, &ccg, &id1, &alphas[0].witness).unwrap();
    assert_eq!(k1.map, k2.map);

    // a strictly commuting square reproduces the strict comma map
    let cc0b = comma(&fx.f, &fx.g).unwrap();
    let strict = BifunctorCell {
        u: id1.clone(),
        alpha: oplax_identity(&cc0.cylc, &fx.f),
        beta: oplax_identity(&cc0.cylc, &fx.g),
        v: id1.clone(),
    };
    let k3 = comma_bifunctor(&cc0, &cc0b, &strict).unwrap();
    let k4 = comma_map_strict(&cc0, &cc0b, &id1, &id1).unwrap();
    assert_eq!(k3.map, k4.map);
}

#[test]
fn squares_compose_and_commute_with_the_projections() {
    let fx = square_fixture();
    let cc0 = comma(&fx.f, &fx.g).unwrap();
    let cc1 = comma(&fx.fp, &fx.gp).unwrap();
    assert_eq!(counts(&cc0.total), vec![4, 3]);
    assert_eq!(counts(&cc1.total), vec![4, 6]);
    let t1c = square_cell(&fx, &cc0);

    let cc2 = comma(&fx.fp, &fx.gp).unwrap();
    let alphas2 = enumerate_oplax(&cc0.cylc, &fx.fp, &fx.fp);
    let betas2 = enumerate_oplax(&cc0.cylc, &fx.gp, &fx.gp);
    let t2c = BifunctorCell {
        u: OmegaFunctor::identity(&fx.d1),
        alpha: alphas2[0].clone(),
        beta: betas2[0].clone(),
        v: OmegaFunctor::identity(&fx.d1),
    };
    assert_eq!(bifunctor_law_check(&cc0, &cc1, &cc2, &t1c, &t2c).unwrap(), 8);
    assert_eq!(projection_naturality_check(&cc0, &cc1, &t1c).unwrap(), 7);
}

#[test]
fn broken_witness_is_rejected() {
    // a witness on the wrong functor breaks the boundary conditions
    let fx = square_fixture();
    let cc0 = comma(&fx.f, &fx.g).unwrap();
    let cc1 = comma(&fx.fp, &fx.gp).unwrap();
    let t1c = square_cell(&fx, &cc0);
    let broken = BifunctorCell {
        u: t1c.u.clone(),
        alpha: oplax_identity(&cc0.cylc, &fx.f),
        beta: t1c.beta.clone(),
        v: t1c.v.clone(),
    };
    assert!(comma_bifunctor(&cc0, &cc1, &broken).is_err());
}

#[test]
fn hom_composition_is_a_functor_of_cartesian_homs() {
    let c = Arc::new(globe(2, 2));
    let d1 = Arc::new(globe(1, 2));
    let hcc = hom_cart(&c, &c).unwrap();
    let hdc = hom_cart(&d1, &c).unwrap();
    let hdd = hom_cart(&d1, &d1).unwrap();
    assert_eq!(hcc.functors.len(), 5);
    assert_eq!(hdc.functors.len(), 4);
    let (_, hcf) = hom_comp_functor(&hcc, &hdc, &hdc).unwrap();
    assert_eq!(
        hcf.map.iter().map(|l| l.len()).collect::<Vec<_>>(),
        vec![20, 90, 22]
    );
    let (_, hcf2) = hom_comp_functor(&hdd, &hdd, &hdd).unwrap();
    assert_eq!(
        hcf2.map.iter().map(|l| l.len()).collect::<Vec<_>>(),
        vec![9, 27]
    );
}

#[test]
fn strict_witness_slice_validates_and_embeds() {
    let fx = square_fixture();
    let w = wtr_build(&fx.c, &[fx.f.clone(), fx.g.clone()]).unwrap();
    assert_eq!(counts(&w.assembly.cat), vec![2, 7, 6]);
    assert_eq!(wtr_strict_inclusion(&w).unwrap(), 8);
    assert_eq!(wtr_oplax_agreement(&w).unwrap(), 9);
}

#[test]
fn square_outputs_on_strict_slice_cells_are_strict() {
    let fx = square_fixture();
    let id1 = OmegaFunctor::identity(&fx.d1);
    let cc0 = comma(&fx.f, &fx.g).unwrap();
    let cc1 = comma(&fx.fp, &fx.gp).unwrap();
    let alphas = enumerate_oplax(&cc0.cylc, &fx.fp, &fx.f);
    let betas = enumerate_oplax(&cc0.cylc, &fx.g, &fx.gp);
    let haa = hom_cart(&fx.d1, &fx.d1).unwrap();
    let hacyl = hom_cart(&fx.d1, &cc0.cylc.cat).unwrap();
    let ui = haa.functor_index(&id1).unwrap();
    let ai = hacyl.functor_index(&alphas[0].witness).unwrap();
    let bi = hacyl.functor_index(&betas[0].witness).unwrap();
    let idc = |k: usize| CellRef {
        dim: 1,
        index: k,
        pad: 1,
    };
    let wc = WCell1 {
        u: idc(ui),
        alpha: idc(ai),
        beta: idc(bi),
        v: idc(ui),
    };
    assert_eq!(
        bifun_strict_check(&cc0, &cc1, &haa, &hacyl, &hacyl, &haa, &wc).unwrap(),
        4
    );
    // every stored 1-cell of Hom(interval, cylinder category) whose sides
    // fit also yields strict components
    let mut found = 0;
    for r in hacyl.cat.stored(1) {
        for s in haa
            .cat
            .stored(1)
            .into_iter()
            .chain(haa.cat.stored(0).into_iter().map(|z| z.padded(1)))
        {
            let wc = WCell1 {
                u: s,
                alpha: r,
                beta: idc(bi),
                v: idc(ui),
            };
            if bifun_strict_check(&cc0, &cc1, &haa, &hacyl, &hacyl, &haa, &wc).is_ok() {
                found += 1;
            }
        }
    }
    assert_eq!(found, 3);
}

// --- cylinder composition obstruction ---

#[test]
fn whiskering_a_two_cylinder_hits_the_interchanger_obstruction() {
    let g = free_interchange(1, 1).unwrap();
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
    validate_one_cylinder(&g, &al).unwrap();
    validate_two_cylinder(&g, &lm).unwrap();
    // the two pasting legs disagree by a non-invertible interchanger: no
    // filler with the forced boundary exists
    match attempt_compose_2cyl(&g, &lm, &al).unwrap() {
        CylVerdict::Obstruction {
            src, tgt, left, right, ..
        } => {
            assert_ne!(left, right);
            assert_ne!(src, tgt);
        }
        CylVerdict::Composite(z) => panic!("unexpected composite {z:?}"),
    }
    // reversing the interchanger orientation lets the zigzag compose
    let gt = gray_dual(&g, GrayDuality::Top);
    assert!(matches!(
        attempt_compose_2cyl(&gt, &lm, &al).unwrap(),
        CylVerdict::Composite(_)
    ));

    // the mirror-side whiskering composes in this orientation and obstructs
    // in the reversed one
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
    assert!(matches!(
        attempt_compose_2cyl_right(&g, &be, &lm2).unwrap(),
        CylVerdict::Composite(_)
    ));
    assert!(matches!(
        attempt_compose_2cyl_right(&gt, &be, &lm2).unwrap(),
        CylVerdict::Obstruction { .. }
    ));
}

#[test]
fn strict_instances_always_compose() {
    let gs = gray_from_omega(&Arc::new(globe(2, 3))).unwrap();
    let mut n = 0;
    for i in 0..gs.objects.len() {
        for j in 0..gs.objects.len() {
            let Some(h) = gs.hom(i, j) else { continue };
            for f1 in h.stored(1) {
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
                        assert!(matches!(
                            attempt_compose_2cyl(&gs, &l, &a).unwrap(),
                            CylVerdict::Composite(_)
                        ));
                        n += 1;
                    }
                }
            }
        }
    }
    assert_eq!(n, 1);
}

#[test]
fn one_cylinder_category_has_frozen_shapes() {
    let expected: [(&str, usize, usize); 3] = [
        ("free(1,1)", 11, 106),
        ("gfo(D2@2)", 4, 10),
        ("gfo(D2@3)", 4, 10),
    ];
    let gs = [
        free_interchange(1, 1).unwrap(),
        gray_from_omega(&Arc::new(globe(2, 2))).unwrap(),
        gray_from_omega(&Arc::new(globe(2, 3))).unwrap(),
    ];
    for (g, (name, no, na)) in gs.iter().zip(expected) {
        let cy = cylinder_cat_1(g).unwrap();
        assert_eq!(cy.objects.len(), no, "{name}");
        assert_eq!(cy.arrows.len(), na, "{name}");
    }
}

// --- total categories of functor data ---

fn point_base_fixture() -> (FData, Arc<OmegaCat>) {
    let d0 = Arc::new(globe(0, 1));
    let d1 = Arc::new(globe(1, 1));
    (
        FData {
            base: d0,
            fibers: vec![d1.clone()],
            arrows: BTreeMap::new(),
            squares: BTreeMap::new(),
        },
        d1,
    )
}

fn const_point_fixture(i_cat: &Arc<OmegaCat>) -> FData {
    let d0 = Arc::new(globe(0, 1));
    let n1 = i_cat.stored_count(1);
    let n2 = if i_cat.cells.len() > 2 {
        i_cat.stored_count(2)
    } else {
        0
    };
    FData {
        base: i_cat.clone(),
        fibers: (0..i_cat.stored_count(0)).map(|_| d0.clone()).collect(),
        arrows: (0..n1).map(|k| (k, OmegaFunctor::identity(&d0))).collect(),
        squares: (0..n2)
            .map(|k| (k, vec![CellRef::stored(0, 0).padded(1)]))
            .collect(),
    }
}

fn mixed_interval_fixture() -> FData {
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

fn square_total_fixture() -> FData {
    let d1 = Arc::new(globe(1, 1));
    let d2 = Arc::new(globe(2, 2));
    let e = d1.lookup(1, "e").unwrap();
    let t_obj = d1.tgt(&e);
    let const_t = OmegaFunctor::constant(&d1, &d1, t_obj);
    FData {
        base: d2,
        fibers: vec![d1.clone(), d1],
        arrows: [(0usize, const_t), (1usize, OmegaFunctor::identity(&Arc::new(globe(1, 1))))]
            .into_iter()
            .collect(),
        squares: [(0usize, vec![e, t_obj.padded(1)])].into_iter().collect(),
    }
}

#[test]
fn point_base_total_is_the_fiber() {
    let (fd, d1) = point_base_fixture();
    let ig = integrate(&fd).unwrap();
    let tt = Arc::new(truncate_cat(&ig.total, d1.truncation).unwrap());
    assert!(is_isomorphic(&tt, &d1).is_some());
    assert_eq!(integrate_functoriality_check(&fd, &ig).unwrap(), 1);
    assert_eq!(integrate_cartesian_check(&fd, &ig).unwrap(), 4);
}

#[test]
fn constant_point_fibers_collapse_to_the_base() {
    for (name, i_cat, nf, nc) in [
        ("D1", Arc::new(globe(1, 1)), 4, 4),
        ("D2", Arc::new(globe(2, 2)), 12, 4),
    ] {
        let fd = const_point_fixture(&i_cat);
        let ig = integrate(&fd).unwrap();
        let tt = Arc::new(truncate_cat(&ig.total, i_cat.truncation).unwrap());
        assert!(is_isomorphic(&tt, &i_cat).is_some(), "{name}");
        assert_eq!(integrate_functoriality_check(&fd, &ig).unwrap(), nf);
        assert_eq!(integrate_cartesian_check(&fd, &ig).unwrap(), nc);
    }
}

#[test]
fn mixed_interval_total_matches_the_pairs_description() {
    let fd = mixed_interval_fixture();
    let ig = integrate(&fd).unwrap();
    assert_eq!(
        ig.objects,
        vec![
            (0, CellRef::stored(0, 0)),
            (1, CellRef::stored(0, 0)),
            (1, CellRef::stored(0, 1)),
        ]
    );
    assert_eq!(counts(&ig.total), vec![3, 3]);
    assert_eq!(integrate_functoriality_check(&fd, &ig).unwrap(), 4);
    assert_eq!(integrate_cartesian_check(&fd, &ig).unwrap(), 9);
}

#[test]
fn low_dimensional_rebuild_matches_the_total() {
    let instances = vec![
        point_base_fixture().0,
        const_point_fixture(&Arc::new(globe(1, 1))),
        const_point_fixture(&Arc::new(globe(2, 2))),
        mixed_interval_fixture(),
        square_total_fixture(),
    ];
    for (k, fd) in instances.iter().enumerate() {
        let ig = integrate(fd).unwrap();
        let orc = direct_grothendieck_oracle(fd).unwrap();
        // one object per pair of a base object and a fiber object
        assert_eq!(
            orc.stored_count(0),
            fd.fibers.iter().map(|f| f.stored_count(0)).sum::<usize>(),
            "instance {k}"
        );
        let tt = Arc::new(truncate_cat(&ig.total, orc.truncation).unwrap());
        assert!(is_isomorphic(&tt, &orc).is_some(), "instance {k}");
    }
}

#[test]
fn square_total_has_frozen_shape_and_is_cartesian() {
    let fd = square_total_fixture();
    let ig = integrate(&fd).unwrap();
    assert_eq!(counts(&ig.total), vec![4, 9, 3]);
    assert_eq!(integrate_functoriality_check(&fd, &ig).unwrap(), 12);
    assert_eq!(integrate_cartesian_check(&fd, &ig).unwrap(), 16);
}

#[test]
fn gray_total_agrees_with_the_strict_total() {
    for fd in [mixed_interval_fixture(), square_total_fixture()] {
        let ig = integrate(&fd).unwrap();
        let gfd = gray_fdata_from_strict(&fd).unwrap();
        let gi = gray_integrate(&gfd).unwrap();
        assert_eq!(gi.total.orientation, Orientation::Gray);
        let gtot = gray_from_omega(&ig.total).unwrap();
        assert!(gray_is_isomorphic(&gi.total, &gtot).is_some());
    }
}

#[test]
fn gray_constant_point_fibers_collapse_to_the_base() {
    for g in [
        gray_from_omega(&Arc::new(globe(2, 2))).unwrap(),
        free_interchange(1, 1).unwrap(),
    ] {
        let gfd = gray_fdata_const_point(&g).unwrap();
        let gi = gray_integrate(&gfd).unwrap();
        assert_eq!(gi.total.orientation, Orientation::Gray);
        assert!(gray_is_isomorphic(&gi.total, &g).is_some());
    }
}
