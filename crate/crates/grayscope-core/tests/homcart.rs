use grayscope_core::cyl;
use grayscope_core::homcart::{
    hom_cart, lambda_include, oplax_from_witness, oplax_identity, oplax_vcomp, strict_to_oplax,
    validate_family,
};
use grayscope_core::omega::{enumerate_functors, globe, is_isomorphic, OmegaFunctor};
use std::sync::Arc;

#[test]
fn hom_from_the_point_is_the_target() {
    let d0 = Arc::new(globe(0, 3));
    for b in [globe(1, 3), globe(2, 3)] {
        let b = Arc::new(b);
        let h = hom_cart(&d0, &b).unwrap();
        assert!(is_isomorphic(&h.cat, &b).is_some());
    }
}

#[test]
fn hom_into_the_point_is_the_point() {
    let d0 = Arc::new(globe(0, 3));
    let a = Arc::new(globe(2, 3));
    let h = hom_cart(&a, &d0).unwrap();
    assert!(is_isomorphic(&h.cat, &d0).is_some());
}

#[test]
fn hom_from_the_arrow_has_arrow_objects() {
    let d1 = Arc::new(globe(1, 3));
    for b in [globe(1, 3), globe(2, 3)] {
        let b = Arc::new(b);
        let h = hom_cart(&d1, &b).unwrap();
        // representability: functors D_1 -> B are the 1-cells of B
        assert_eq!(h.functors.len(), b.all_cells(1).len());
    }
}

#[test]
fn stored_families_pass_the_standalone_validator() {
    let d1 = Arc::new(globe(1, 2));
    let b = Arc::new(globe(2, 2));
    let h = hom_cart(&d1, &b).unwrap();
    for d in 1..h.cat.cells.len() {
        for r in h.cat.stored(d) {
            let f = h.fam_of(&r);
            validate_family(&d1, &b, &h.functors[f.u], &h.functors[f.v], &f.components).unwrap();
        }
    }
}

#[test]
fn lambda_from_the_point_is_an_isomorphism() {
    let d0 = Arc::new(globe(0, 2));
    let c = Arc::new(globe(1, 2));
    let l = lambda_include(&d0, &c).unwrap();
    assert!(l.include.is_bijective());
    // both sides are Cyl C
    assert!(is_isomorphic(&l.cyl_hom.cat, &l.cyl_c.cat).is_some());
}

#[test]
fn lambda_is_injective_and_respects_kappa() {
    let d1 = Arc::new(globe(1, 2));
    let c = Arc::new(globe(2, 2));
    let l = lambda_include(&d1, &c).unwrap();
    for d in 0..l.cyl_hom.cat.cells.len() {
        let imgs: Vec<_> = l
            .cyl_hom
            .cat
            .stored(d)
            .iter()
            .map(|r| l.include.apply(r))
            .collect();
        let mut dedup = imgs.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), imgs.len(), "collision at dimension {d}");
    }
    // the inclusion square: an identity cylinder on a functor u maps to the
    // functor kappa . u
    for (i, u) in l.hom_ac.functors.iter().enumerate() {
        let obj = grayscope_core::omega::CellRef::stored(0, i);
        let kap = l.cyl_hom.kappa_f.apply(&obj);
        let img = l.include.apply(&kap);
        let pointwise = OmegaFunctor::compose(&l.cyl_c.kappa_f, u);
        assert_eq!(
            l.hom_acyl.functor_index(&pointwise),
            Some(img.index),
        );
        assert_eq!(img.dim, 0);
    }
}

#[test]
fn oplax_cells_from_the_point_are_arrows() {
    let d0 = Arc::new(globe(0, 2));
    let b = Arc::new(globe(1, 2));
    let cylb = cyl::cyl(&b).unwrap();
    let witnesses = enumerate_functors(&d0, &cylb.cat);
    assert_eq!(witnesses.len(), b.all_cells(1).len());
    for w in witnesses {
        let o = oplax_from_witness(&cylb, w).unwrap();
        // boundaries land in B
        assert_eq!(*o.u.target, *b);
        assert_eq!(*o.v.target, *b);
    }
}

#[test]
fn oplax_composition_is_associative_and_unital() {
    let d1 = Arc::new(globe(1, 2));
    let b = Arc::new(globe(1, 2));
    let cylb = cyl::cyl(&b).unwrap();
    let cells: Vec<_> = enumerate_functors(&d1, &cylb.cat)
        .into_iter()
        .map(|w| oplax_from_witness(&cylb, w).unwrap())
        .collect();
    let mut composable = 0;
    for o1 in &cells {
        let idl = oplax_vcomp(&cylb, &oplax_identity(&cylb, &o1.v), o1).unwrap();
        assert_eq!(idl.witness.map, o1.witness.map);
        let idr = oplax_vcomp(&cylb, o1, &oplax_identity(&cylb, &o1.u)).unwrap();
        assert_eq!(idr.witness.map, o1.witness.map);
        for o2 in &cells {
            if o2.u.map != o1.v.map {
                continue;
            }
            let c21 = oplax_vcomp(&cylb, o2, o1).unwrap();
            for o3 in &cells {
                if o3.u.map != o2.v.map {
                    continue;
                }
                let c32 = oplax_vcomp(&cylb, o3, o2).unwrap();
                assert_eq!(
                    oplax_vcomp(&cylb, o3, &c21).unwrap().witness.map,
                    oplax_vcomp(&cylb, &c32, o1).unwrap().witness.map
                );
                composable += 1;
            }
        }
    }
    assert!(composable > 0);
}

#[test]
fn strict_transformations_include_into_oplax_cells() {
    let d1 = Arc::new(globe(1, 2));
    let b = Arc::new(globe(1, 2));
    let h = hom_cart(&d1, &b).unwrap();
    let cylb = cyl::cyl(&b).unwrap();
    for e in h.cat.all_cells(1) {
        let f = h.fam_of(&e);
        let o = strict_to_oplax(&h, &cylb, &e).unwrap();
        assert_eq!(o.u.map, h.functors[f.u].map);
        assert_eq!(o.v.map, h.functors[f.v].map);
    }
}
