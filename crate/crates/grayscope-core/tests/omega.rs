use grayscope_core::omega::{
    self, dual, enumerate_functors, free_chain, globe, is_isomorphic, tables, CatBuilder, CellRef,
    OmegaFunctor,
};
use grayscope_core::{hom, limits};
use proptest::prelude::*;
use std::sync::Arc;

#[test]
fn globe_cell_counts() {
    let d1 = globe(1, 2);
    assert_eq!(d1.stored_count(0), 2);
    assert_eq!(d1.stored_count(1), 1);
    assert_eq!(d1.all_cells(0).len(), 2);
    assert_eq!(d1.all_cells(1).len(), 3); // e plus two identities
    assert_eq!(d1.all_cells(2).len(), 3);

    let d2 = globe(2, 3);
    assert_eq!(
        (0..=3).map(|k| d2.all_cells(k).len()).collect::<Vec<_>>(),
        vec![2, 4, 5, 5]
    );
}

#[test]
fn free_chain_closure() {
    let c = free_chain(2, 3);
    assert_eq!(c.stored_count(0), 3);
    assert_eq!(c.stored_count(1), 3);
    let f01 = c.lookup(1, "f01").unwrap();
    let f12 = c.lookup(1, "f12").unwrap();
    let f02 = c.lookup(1, "f02").unwrap();
    assert_eq!(c.comp(0, &f12, &f01).unwrap(), f02);
    assert!(c.comp(0, &f01, &f12).is_err());
    // unit laws come from the pad representation, not the table
    let a0 = c.lookup(0, "a0").unwrap();
    assert_eq!(c.comp(0, &f01, &a0.padded(1)).unwrap(), f01);
}

#[test]
fn pads_compose_by_peeling() {
    let c = free_chain(3, 3);
    let f12 = c.lookup(1, "f12").unwrap();
    let f01 = c.lookup(1, "f01").unwrap();
    // id(f12) *_0 id(f01) = id(f02): identities of composable cells compose
    // to the identity of the composite, at every pad depth.
    let f02 = c.lookup(1, "f02").unwrap();
    for p in 1..=2 {
        assert_eq!(
            c.comp(0, &f12.padded(p), &f01.padded(p)).unwrap(),
            f02.padded(p)
        );
    }
    // mixed padding: id(f12) *_0 f01 is still id-free in the base
    assert_eq!(c.comp(0, &f12.padded(1), &f01).unwrap(), f02.padded(1));
}

#[test]
fn validation_rejects_single_entry_mutations() {
    // break associativity by redirecting one composite of a 4-chain
    let mut b = CatBuilder::new(2);
    for i in 0..=3 {
        b.object(&format!("a{i}"));
    }
    for i in 0..=3 {
        for j in (i + 1)..=3 {
            b.arrow(&format!("f{i}{j}"), &format!("a{i}"), &format!("a{j}"));
        }
    }
    b.arrow("g03", "a0", "a3");
    for i in 0..=3 {
        for j in (i + 1)..=3 {
            for k in (j + 1)..=3 {
                let tgt = if (i, j, k) == (0, 1, 3) { "g03" } else { "f03" };
                let tgt = if k == 3 && i == 0 && j == 1 {
                    tgt.to_string()
                } else {
                    format!("f{i}{k}")
                };
                b.comp(
                    0,
                    (1, format!("f{j}{k}"), 0),
                    (1, format!("f{i}{j}"), 0),
                    (1, tgt, 0),
                );
            }
        }
    }
    let err = b.build().unwrap_err();
    assert!(err.to_string().contains("associativity"), "{err}");
}

#[test]
fn validation_rejects_missing_entry() {
    let mut b = CatBuilder::new(2);
    b.object("a").object("b").object("c");
    b.arrow("f", "a", "b").arrow("g", "b", "c").arrow("h", "a", "c");
    let err = b.build().unwrap_err();
    assert!(err.to_string().contains("missing composition"), "{err}");
}

#[test]
fn validation_rejects_bad_globularity() {
    let mut b = CatBuilder::new(2);
    b.object("a").object("b");
    b.arrow("f", "a", "b").arrow("g", "b", "a");
    b.cell(2, "m", ("f", 0), ("g", 0));
    let err = b.build().unwrap_err();
    assert!(err.to_string().contains("globularity"), "{err}");
}

#[test]
fn functor_enumeration_counts() {
    let d1 = Arc::new(globe(1, 3));
    let fs = enumerate_functors(&d1, &d1);
    assert_eq!(fs.len(), 3); // identity and the two constants
    for f in &fs {
        f.validate().unwrap();
    }
    let d0 = Arc::new(globe(0, 3));
    assert_eq!(enumerate_functors(&d0, &d1).len(), 2);
    assert_eq!(enumerate_functors(&d1, &d0).len(), 1);
    let d2 = Arc::new(globe(2, 3));
    // D_1 -> D_2: e can land on any of the four 1-cells
    assert_eq!(enumerate_functors(&d1, &d2).len(), 4);
}

#[test]
fn functor_composition_and_identity() {
    let d1 = Arc::new(globe(1, 3));
    let d2 = Arc::new(globe(2, 3));
    let id = OmegaFunctor::identity(&d2);
    for f in enumerate_functors(&d1, &d2) {
        let g = OmegaFunctor::compose(&id, &f);
        assert_eq!(g.map, f.map);
    }
}

#[test]
fn isomorphism_finds_relabelling() {
    let c1 = Arc::new(free_chain(2, 3));
    let mut b = CatBuilder::new(3);
    b.object("x").object("y").object("z");
    b.arrow("p", "x", "y").arrow("q", "y", "z").arrow("r", "x", "z");
    b.comp(0, (1, "q".into(), 0), (1, "p".into(), 0), (1, "r".into(), 0));
    let c2 = Arc::new(b.build().unwrap());
    let iso = is_isomorphic(&c1, &c2).expect("chains are isomorphic");
    assert!(iso.is_bijective());
    iso.validate().unwrap();
    let d1 = Arc::new(globe(1, 3));
    assert!(is_isomorphic(&c1, &d1).is_none());
}

#[test]
fn dual_is_table_level_involution() {
    let c = globe(2, 3);
    for s in [vec![1], vec![2], vec![1, 2], vec![1, 2, 3, 4]] {
        let d = dual(&dual(&c, &s), &s);
        assert_eq!(tables(&c), tables(&d));
        assert_eq!(c.cells, d.cells);
    }
}

#[test]
fn dual_reverses_the_right_compositions() {
    let c = free_chain(2, 3);
    let op = dual(&c, &omega::odd_dims(3));
    let f01 = c.lookup(1, "f01").unwrap();
    let f12 = c.lookup(1, "f12").unwrap();
    let f02 = c.lookup(1, "f02").unwrap();
    // in the 1-dual, f01 now runs a1 -> a0 and composes the other way round
    assert_eq!(op.src(&f01), c.tgt(&f01));
    assert_eq!(op.comp(0, &f01, &f12).unwrap(), f02);
    assert!(op.comp(0, &f12, &f01).is_err());
    op.validate().unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn dual_composition_is_symmetric_difference(
        s in proptest::collection::btree_set(1usize..=4, 0..4),
        t in proptest::collection::btree_set(1usize..=4, 0..4),
    ) {
        let c = globe(2, 3);
        let s: Vec<usize> = s.into_iter().collect();
        let t: Vec<usize> = t.into_iter().collect();
        let sym: Vec<usize> = (1..=4)
            .filter(|d| s.contains(d) != t.contains(d))
            .collect();
        let lhs = dual(&dual(&c, &s), &t);
        let rhs = dual(&c, &sym);
        prop_assert_eq!(tables(&lhs), tables(&rhs));
    }
}

#[test]
fn hom_of_globe_is_lower_globe() {
    let d3 = Arc::new(globe(3, 3));
    let a = d3.lookup(0, "s0").unwrap();
    let b = d3.lookup(0, "t0").unwrap();
    let h = hom::hom_cat(&d3, a, b).unwrap();
    let d2 = Arc::new(globe(2, 2));
    assert!(is_isomorphic(&h.cat, &d2).is_some());
    // round trip through the ambient category
    for k in 0..=2 {
        for x in h.cat.all_cells(k) {
            let amb = h.to_c(&x);
            assert_eq!(amb.dim, k + 1);
            assert_eq!(h.from_c(&amb), x);
        }
    }
}

#[test]
fn endo_hom_contains_the_identity() {
    let c = Arc::new(free_chain(2, 3));
    let a0 = c.lookup(0, "a0").unwrap();
    let h = hom::hom_cat(&c, a0, a0).unwrap();
    assert_eq!(h.cat.stored_count(0), 1); // just id(a0)
    assert_eq!(h.to_c(&CellRef::stored(0, 0)), a0.padded(1));
}

#[test]
fn hom_whiskering_matches_ambient_composition() {
    let c = Arc::new(free_chain(2, 3));
    let a0 = c.lookup(0, "a0").unwrap();
    let a1 = c.lookup(0, "a1").unwrap();
    let a2 = c.lookup(0, "a2").unwrap();
    let h01 = hom::hom_cat(&c, a0, a1).unwrap();
    let h02 = hom::hom_cat(&c, a0, a2).unwrap();
    let f12 = c.lookup(1, "f12").unwrap();
    let f01h = h01.from_c(&c.lookup(1, "f01").unwrap());
    let out = hom::whisker_post(&h01, &h02, &f12, &f01h).unwrap();
    assert_eq!(h02.to_c(&out), c.lookup(1, "f02").unwrap());
}

#[test]
fn product_of_arrows() {
    let d1 = Arc::new(globe(1, 3));
    let p = limits::product(&d1, &d1).unwrap();
    assert_eq!(p.cat.stored_count(0), 4);
    assert_eq!(p.cat.all_cells(1).len(), 9);
    p.cat.validate().unwrap();
    p.p1.validate().unwrap();
    // the square commutes: the diagonal equals both off-diagonal composites
    let e = d1.lookup(1, "e").unwrap();
    let s = d1.lookup(0, "s0").unwrap();
    let t = d1.lookup(0, "t0").unwrap();
    let diag = p.pair(&e, &e);
    let lo = p.pair(&e, &s.padded(1));
    let hi = p.pair(&t.padded(1), &e);
    assert_eq!(p.cat.comp(0, &hi, &lo).unwrap(), diag);
}

#[test]
fn fiber_product_over_identity_is_diagonal() {
    let d1 = Arc::new(globe(1, 3));
    let id = OmegaFunctor::identity(&d1);
    let fp = limits::fiber_product(&id, &id).unwrap();
    assert!(is_isomorphic(&fp.cat, &d1).is_some());
}

#[test]
fn factorization_exists_and_is_unique() {
    let d1 = Arc::new(globe(1, 3));
    let p = limits::product(&d1, &d1).unwrap();
    let u = OmegaFunctor::identity(&d1);
    let s = d1.lookup(0, "s0").unwrap();
    let v = OmegaFunctor::constant(&d1, &d1, s);
    let h = p.factorize(&u, &v).unwrap();
    assert_eq!(OmegaFunctor::compose(&p.p1, &h).map, u.map);
    assert_eq!(OmegaFunctor::compose(&p.p2, &h).map, v.map);
    // uniqueness, the brute-force way
    let matches: Vec<_> = enumerate_functors(&d1, &p.cat)
        .into_iter()
        .filter(|k| {
            OmegaFunctor::compose(&p.p1, k).map == u.map
                && OmegaFunctor::compose(&p.p2, k).map == v.map
        })
        .collect();
    assert_eq!(matches.len(), 1);
    assert_eq!(matches[0].map, h.map);
}
