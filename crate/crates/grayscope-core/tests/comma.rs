use grayscope_core::comma::{
    self, comma, comma_lax, comma_map_oplax, comma_map_strict, slice, SliceKind,
};
use grayscope_core::cyl;
use grayscope_core::limits;
use grayscope_core::omega::{
    all_dims, dual, dual_functor, enumerate_functors, even_dims, globe, is_isomorphic, odd_dims,
    OmegaFunctor,
};
use std::sync::Arc;

#[test]
fn comma_of_identities_is_the_cylinder() {
    let d1 = Arc::new(globe(1, 2));
    let id = OmegaFunctor::identity(&d1);
    let cc = comma(&id, &id).unwrap();
    let cyl_d1 = cyl::cyl(&d1).unwrap();
    assert!(is_isomorphic(&cc.total, &cyl_d1.cat).is_some());
}

#[test]
fn comma_of_point_cospan_has_one_object() {
    let d1 = Arc::new(globe(1, 2));
    let d0 = Arc::new(globe(0, 2));
    let s = d1.lookup(0, "s0").unwrap();
    let t = d1.lookup(0, "t0").unwrap();
    let a = OmegaFunctor::constant(&d0, &d1, s);
    let b = OmegaFunctor::constant(&d0, &d1, t);
    let cc = comma(&a, &b).unwrap();
    // exactly the arrow e: s -> t, with no higher cells
    assert_eq!(cc.total.stored_count(0), 1);
    assert!(is_isomorphic(&cc.total, &d0).is_some());
}

#[test]
fn slice_object_counts_over_the_arrow() {
    let d1 = Arc::new(globe(1, 2));
    let t = d1.lookup(0, "t0").unwrap();
    let over = slice(&d1, t, SliceKind::Over).unwrap();
    assert_eq!(over.total.stored_count(0), 2); // e and id_t
    let under = slice(&d1, t, SliceKind::Under).unwrap();
    assert_eq!(under.total.stored_count(0), 1); // id_t only
}

#[test]
fn relative_slice_agrees_with_pullback_description() {
    let d1 = Arc::new(globe(1, 2));
    let d0 = Arc::new(globe(0, 2));
    let s = d1.lookup(0, "s0").unwrap();
    let t = d1.lookup(0, "t0").unwrap();
    let u = OmegaFunctor::constant(&d0, &d1, s);
    let rel = slice(&d1, t, SliceKind::RelativeOver(&u)).unwrap();
    // A x_C (C / c), pulled back along the slice projection
    let over = slice(&d1, t, SliceKind::Over).unwrap();
    let pb = limits::fiber_product(&u, &over.p1).unwrap();
    assert!(is_isomorphic(&rel.total, &pb.cat).is_some());
    // and the mirror identity for the under slice
    let relu = slice(&d1, s, SliceKind::RelativeUnder(&u)).unwrap();
    let underc = slice(&d1, s, SliceKind::Under).unwrap();
    let pbu = limits::fiber_product(&underc.p2, &u).unwrap();
    assert!(is_isomorphic(&relu.total, &pbu.cat).is_some());
}

#[test]
fn comma_duality_identities() {
    let d1 = Arc::new(globe(1, 2));
    let t = d1.lookup(0, "t0").unwrap();
    let d0 = Arc::new(globe(0, 2));
    let f = OmegaFunctor::identity(&d1);
    let g = OmegaFunctor::constant(&d0, &d1, t);
    let cc = comma(&f, &g).unwrap();
    let n = d1.truncation;
    // (f || g)^o = g^o || f^o
    let o = all_dims(n);
    let swapped = comma(&dual_functor(&g, &o), &dual_functor(&f, &o)).unwrap();
    assert!(is_isomorphic(&Arc::new(dual(&cc.total, &o)), &swapped.total).is_some());
    // the lax comma conjugates through the co-duality
    let co = even_dims(n);
    let lax = comma_lax(&dual_functor(&f, &co), &dual_functor(&g, &co)).unwrap();
    assert!(is_isomorphic(&lax.total, &Arc::new(dual(&cc.total, &co))).is_some());
    // and combining both recovers the op-identity
    let op = odd_dims(n);
    let lax_op = comma_lax(&dual_functor(&g, &o), &dual_functor(&f, &o)).unwrap();
    assert!(is_isomorphic(&Arc::new(dual(&cc.total, &op)), &Arc::new(dual(&lax_op.total, &[])))
        .is_some());
}

#[test]
fn factorization_through_the_universal_square() {
    let d1 = Arc::new(globe(1, 2));
    let id = OmegaFunctor::identity(&d1);
    let cc = comma(&id, &id).unwrap();
    for t in [globe(0, 2), globe(1, 2)] {
        let t = Arc::new(t);
        let mut squares = 0;
        for a in enumerate_functors(&t, &d1) {
            for b in enumerate_functors(&t, &d1) {
                for lam in enumerate_functors(&t, &cc.cylc.cat) {
                    let ok = cc.factorize(&a, &lam, &b);
                    let s_ok = OmegaFunctor::compose(&cc.cylc.src_f, &lam).map == a.map
                        && OmegaFunctor::compose(&cc.cylc.tgt_f, &lam).map == b.map;
                    if !s_ok {
                        assert!(ok.is_err());
                        continue;
                    }
                    let h = ok.unwrap();
                    squares += 1;
                    assert_eq!(OmegaFunctor::compose(&cc.p1, &h).map, a.map);
                    assert_eq!(OmegaFunctor::compose(&cc.p2, &h).map, b.map);
                    assert_eq!(OmegaFunctor::compose(&cc.gamma, &h).map, lam.map);
                    // uniqueness by brute force
                    let matching = enumerate_functors(&t, &cc.total)
                        .into_iter()
                        .filter(|k| {
                            OmegaFunctor::compose(&cc.p1, k).map == a.map
                                && OmegaFunctor::compose(&cc.p2, k).map == b.map
                                && OmegaFunctor::compose(&cc.gamma, k).map == lam.map
                        })
                        .count();
                    assert_eq!(matching, 1);
                }
            }
        }
        assert!(squares > 0);
    }
}

#[test]
fn strict_square_induces_a_comma_map() {
    let d1 = Arc::new(globe(1, 2));
    let t = d1.lookup(0, "t0").unwrap();
    let cc = slice(&d1, t, SliceKind::Over).unwrap();
    let id_a = OmegaFunctor::identity(&d1);
    let id_b = OmegaFunctor::identity(&cc.g.source);
    let h = comma_map_strict(&cc, &cc, &id_a, &id_b).unwrap();
    assert_eq!(h.map, OmegaFunctor::identity(&cc.total).map);
}

#[test]
fn oplax_triangle_acts_on_under_slices() {
    // precompose under-slices along e: s -> t via the cylinder on e
    let d1 = Arc::new(globe(1, 2));
    let s = d1.lookup(0, "s0").unwrap();
    let t = d1.lookup(0, "t0").unwrap();
    let e = d1.lookup(1, "e").unwrap();
    let cc = slice(&d1, t, SliceKind::Under).unwrap();
    let cc2 = slice(&d1, s, SliceKind::Under).unwrap();
    let d0 = cc.f.source.clone();
    // the object of Cyl D_1 sitting over e
    let e_obj = cc.cylc.tuple_ref(&cyl::CylTuple {
        x: s,
        y: t,
        minus: vec![],
        plus: vec![],
        top: e,
    });
    let alpha = OmegaFunctor::constant(&d0, &cc.cylc.cat, e_obj);
    let u = OmegaFunctor::identity(&d0);
    let h = comma_map_oplax(&cc, &cc2, &u, &alpha).unwrap();
    assert_eq!(
        OmegaFunctor::compose(&cc2.p2, &h).map,
        cc.p2.map
    );
    // the unique object id_t lands on e itself
    let obj = cc.total.stored(0)[0];
    let (_, g, _) = cc2.decode(&h.apply(&obj));
    assert_eq!(cc2.cylc.tuple_of(&g).top, e);
}

#[test]
fn enriched_comma_matches_fiber_product_construction() {
    let d1 = Arc::new(globe(1, 2));
    let d0 = Arc::new(globe(0, 2));
    let s = d1.lookup(0, "s0").unwrap();
    let t = d1.lookup(0, "t0").unwrap();
    let id = OmegaFunctor::identity(&d1);
    let cs = OmegaFunctor::constant(&d0, &d1, s);
    let ct = OmegaFunctor::constant(&d0, &d1, t);
    for (f, g) in [(&id, &id), (&id, &ct), (&cs, &id), (&cs, &ct)] {
        let iso = comma::comma_enriched_crosscheck(f, g).unwrap();
        assert!(iso.is_bijective());
    }
}
