use grayscope_core::cyl::{
    self, comp_tuple, conc, cyl, enumerate_tuples, kappa_tuple, principal_cell, tuple_unit,
    validate_tuple, whisker_left, whisker_right, CylTuple,
};
use grayscope_core::fixtures::{two_cell_chain, vertical_pair};
use grayscope_core::hom::{hom_cat, HomCat};
use grayscope_core::omega::{free_chain, globe, is_isomorphic, OmegaCat, OmegaFunctor};
use std::sync::Arc;

#[test]
fn cyl_of_point_is_point() {
    let d0 = Arc::new(globe(0, 3));
    let c = cyl(&d0).unwrap();
    assert!(is_isomorphic(&c.cat, &d0).is_some());
}

#[test]
fn cyl_of_arrow_is_composable_pair() {
    let d1 = Arc::new(globe(1, 2));
    let c = cyl(&d1).unwrap();
    assert_eq!(c.cat.stored_count(0), 3); // id_a, e, id_b
    assert_eq!(c.cat.stored_count(1), 3); // the commuting squares
    let chain = Arc::new(free_chain(2, 2));
    assert!(is_isomorphic(&c.cat, &chain).is_some());
}

#[test]
fn squares_compose_to_the_identity_cylinder() {
    let d1 = Arc::new(globe(1, 2));
    let e = d1.lookup(1, "e").unwrap();
    let s = d1.lookup(0, "s0").unwrap();
    let t = d1.lookup(0, "t0").unwrap();
    let ab = CylTuple {
        x: s.padded(1),
        y: e,
        minus: vec![s.padded(1)],
        plus: vec![e],
        top: e.padded(1),
    };
    let bc = CylTuple {
        x: e,
        y: t.padded(1),
        minus: vec![e],
        plus: vec![t.padded(1)],
        top: e.padded(1),
    };
    validate_tuple(&d1, 0, &ab).unwrap();
    validate_tuple(&d1, 0, &bc).unwrap();
    let z = comp_tuple(&d1, 0, 0, &bc, &ab).unwrap();
    assert_eq!(z, kappa_tuple(&d1, 0, &e));
}

#[test]
fn cyl_of_disc_and_chain_validate() {
    for c in [globe(2, 3), free_chain(2, 3)] {
        let c = Arc::new(c);
        let cc = cyl(&c).unwrap();
        // construction already validates; spot-check the structure maps
        assert_eq!(cc.cat.stored_count(0), c.all_cells(1).len());
        for d in 0..cc.cat.cells.len() {
            for t in cc.stored_tuples(d) {
                assert_eq!(cc.src_f.apply(&cc.tuple_ref(t)), t.x);
                assert_eq!(cc.tgt_f.apply(&cc.tuple_ref(t)), t.y);
            }
        }
    }
}

#[test]
fn kappa_is_the_conc_unit() {
    let c = globe(2, 3);
    for k in 0..=2 {
        for t in enumerate_tuples(&c, k) {
            let left = conc(&c, 0, &kappa_tuple(&c, 0, &t.y), &t).unwrap();
            let right = conc(&c, 0, &t, &kappa_tuple(&c, 0, &t.x)).unwrap();
            assert_eq!(left, t);
            assert_eq!(right, t);
        }
    }
}

#[test]
fn conc_matches_square_pasting_formula() {
    let c = two_cell_chain(1, 1, 3);
    let tuples = enumerate_tuples(&c, 1);
    let mut seen = 0;
    for a in &tuples {
        for b in &tuples {
            if a.y != b.x {
                continue;
            }
            let z = conc(&c, 0, b, a).unwrap();
            validate_tuple(&c, 0, &z).unwrap();
            assert_eq!(z.x, a.x);
            assert_eq!(z.y, b.y);
            let filler = c
                .comp(
                    1,
                    &c.comp(0, &b.top, &a.minus[0]).unwrap(),
                    &c.comp(0, &b.plus[0], &a.top).unwrap(),
                )
                .unwrap();
            assert_eq!(principal_cell(&z), filler);
            seen += 1;
        }
    }
    assert!(seen > 20, "only {seen} composable square pairs");
}

#[test]
fn conc_is_associative() {
    let c = two_cell_chain(1, 1, 3);
    let tuples = enumerate_tuples(&c, 1);
    let mut seen = 0;
    for a in &tuples {
        for b in &tuples {
            if b.x != a.y {
                continue;
            }
            let ba = conc(&c, 0, b, a).unwrap();
            for d in &tuples {
                if d.x != b.y {
                    continue;
                }
                let db = conc(&c, 0, d, b).unwrap();
                assert_eq!(
                    conc(&c, 0, d, &ba).unwrap(),
                    conc(&c, 0, &db, a).unwrap()
                );
                seen += 1;
            }
        }
    }
    assert!(seen > 10);
}

#[test]
fn conc_on_higher_cylinders() {
    // degree-2 cylinders in the vertical pair: conc glues along shared sides
    let c = vertical_pair(3);
    let tuples = enumerate_tuples(&c, 2);
    let mut seen = 0;
    for a in &tuples {
        for b in &tuples {
            if a.y != b.x {
                continue;
            }
            let z = conc(&c, 0, b, a).unwrap();
            validate_tuple(&c, 0, &z).unwrap();
            assert_eq!((z.x, z.y), (a.x, b.y));
            seen += 1;
        }
    }
    assert!(seen > 0);
}

/// Tuples in Cyl Hom(a,b) represented by ambient cells (shift 1).
fn hom_tuples(h: &HomCat, degree: usize) -> Vec<CylTuple> {
    enumerate_tuples(&h.cat, degree)
        .into_iter()
        .map(|t| CylTuple {
            x: h.to_c(&t.x),
            y: h.to_c(&t.y),
            minus: t.minus.iter().map(|z| h.to_c(z)).collect(),
            plus: t.plus.iter().map(|z| h.to_c(z)).collect(),
            top: h.to_c(&t.top),
        })
        .collect()
}

#[test]
fn whisker_action_laws() {
    // v0 -> v1 -> v2 ==f/g==> v3 -> v4; whisker cylinders over Hom(v2,v3)
    let c = Arc::new(two_cell_chain(2, 1, 3));
    let obj = |n: &str| c.lookup(0, n).unwrap();
    let h = hom_cat(&c, obj("v2"), obj("v3")).unwrap();
    let u1 = c.lookup(1, "e1_2").unwrap(); // v1 -> v2
    let u0 = c.lookup(1, "e0_1").unwrap(); // v0 -> v1
    let u10 = c.lookup(1, "e0_2").unwrap(); // their composite
    let v = c.lookup(1, "e3_4").unwrap(); // v3 -> v4
    for k in 0..=2 {
        for a in hom_tuples(&h, k) {
            validate_tuple(&c, 1, &a).unwrap();
            // unit action
            let id_w = obj("v2").padded(1);
            assert_eq!(whisker_right(&c, 0, &a, &id_w).unwrap(), a);
            // action associativity over composition in the base
            let step = whisker_right(&c, 0, &whisker_right(&c, 0, &a, &u1).unwrap(), &u0).unwrap();
            let once = whisker_right(&c, 0, &a, &u10).unwrap();
            validate_tuple(&c, 1, &once).unwrap();
            assert_eq!(step, once);
            // bimodule compatibility of the two whiskers
            let lr = whisker_left(&c, 0, &v, &whisker_right(&c, 0, &a, &u1).unwrap()).unwrap();
            let rl = whisker_right(&c, 0, &whisker_left(&c, 0, &v, &a).unwrap(), &u1).unwrap();
            validate_tuple(&c, 1, &lr).unwrap();
            assert_eq!(lr, rl);
            // compatibility with the projections
            let w = whisker_right(&c, 0, &a, &u1).unwrap();
            assert_eq!(w.x, c.comp(0, &a.x, &u1).unwrap());
            assert_eq!(w.y, c.comp(0, &a.y, &u1).unwrap());
        }
    }
}

#[test]
fn whisker_commutes_with_conc_and_kappa() {
    let c = Arc::new(two_cell_chain(1, 0, 3));
    let obj = |n: &str| c.lookup(0, n).unwrap();
    let h = hom_cat(&c, obj("v1"), obj("v2")).unwrap();
    let u = c.lookup(1, "e0_1").unwrap();
    for k in 0..=2 {
        let tuples = hom_tuples(&h, k);
        for a in &tuples {
            // kappa(x) . u = kappa(x *_0 u)
            if a.x == a.y && *a == kappa_tuple(&c, 1, &a.x) {
                let w = whisker_right(&c, 0, a, &u).unwrap();
                assert_eq!(w, kappa_tuple(&c, 1, &c.comp(0, &a.x, &u).unwrap()));
            }
            for b in &tuples {
                if a.y != b.x {
                    continue;
                }
                let z = conc(&c, 1, b, a).unwrap();
                let zw = whisker_right(&c, 0, &z, &u).unwrap();
                let wz = conc(
                    &c,
                    1,
                    &whisker_right(&c, 0, b, &u).unwrap(),
                    &whisker_right(&c, 0, a, &u).unwrap(),
                )
                .unwrap();
                assert_eq!(zw, wz);
            }
        }
    }
}

#[test]
fn padding_units_is_compatible_with_composition() {
    // mixed-degree composition: a padded object tuple acts as a unit
    let d1 = Arc::new(globe(1, 2));
    let cc = cyl(&d1).unwrap();
    for t in cc.stored_tuples(1) {
        let src_obj = cc.tuple_of(&cc.cat.src(&cc.tuple_ref(t)));
        let z = comp_tuple(&d1, 0, 0, t, &tuple_unit(&src_obj)).unwrap();
        assert_eq!(&z, t);
    }
}

#[test]
fn cyl_is_functorial() {
    let d1 = Arc::new(globe(1, 3));
    let c2 = Arc::new(two_cell_chain(0, 0, 3));
    let cyl_d1 = cyl(&d1).unwrap();
    let cyl_c2 = cyl(&c2).unwrap();
    // send the arrow to f
    let f_img = c2.lookup(1, "f0_1").unwrap();
    let map = vec![
        vec![c2.lookup(0, "v0").unwrap(), c2.lookup(0, "v1").unwrap()],
        vec![f_img],
    ];
    let f = OmegaFunctor::from_map(&d1, &c2, map);
    f.validate().unwrap();
    let cf = cyl::cyl_functor(&f, &cyl_d1, &cyl_c2).unwrap();
    // naturality with the structure projections
    for d in 0..cyl_d1.cat.cells.len() {
        for t in cyl_d1.cat.stored(d) {
            assert_eq!(
                cyl_c2.src_f.apply(&cf.apply(&t)),
                f.apply(&cyl_d1.src_f.apply(&t))
            );
        }
    }
}

#[test]
fn principal_cells() {
    let d2: Arc<OmegaCat> = Arc::new(globe(2, 3));
    let e2 = d2.lookup(2, "e").unwrap();
    assert_eq!(principal_cell(&kappa_tuple(&d2, 0, &e2)), e2.padded(1));
    for t in enumerate_tuples(&d2, 1) {
        assert_eq!(principal_cell(&t), t.top);
        assert_eq!(t.top.dim, 2);
    }
}

#[test]
fn enriched_reconstruction_matches_tuples() {
    for c in [
        globe(0, 3),
        globe(1, 3),
        globe(2, 3),
        free_chain(2, 3),
    ] {
        let c = Arc::new(c);
        let iso = grayscope_core::enriched::enriched_cyl_crosscheck(&c).unwrap();
        assert!(iso.is_bijective());
    }
}
