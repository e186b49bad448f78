use grayscope_core::gray::{
    free_interchange, gray_dual, gray_from_omega, gray_is_isomorphic, gray_product,
    strict_transformation_check, validate_gray, GrayCat, GrayDuality, GrayFunctor,
    GrayStrictTransformation, Orientation,
};
use grayscope_core::omega::{self, dual, free_chain, globe, tables, CatBuilder, OmegaFunctor};
use grayscope_core::Error;
use std::sync::Arc;

fn gray_tables_eq(g: &GrayCat, h: &GrayCat) -> bool {
    if g.objects != h.objects
        || g.truncation != h.truncation
        || g.units != h.units
        || g.comp0 != h.comp0
        || g.homs.keys().collect::<Vec<_>>() != h.homs.keys().collect::<Vec<_>>()
    {
        return false;
    }
    g.homs.iter().all(|(k, hg)| {
        let hh = &h.homs[k];
        hg.cells == hh.cells && tables(hg) == tables(hh)
    })
}

#[test]
fn strict_categories_are_gray_categories() {
    for c in [globe(1, 2), globe(2, 2), globe(2, 3), free_chain(2, 2)] {
        let c = Arc::new(c);
        let g = gray_from_omega(&c).unwrap();
        validate_gray(&g).unwrap();
        // identity interchangers satisfy both orientations of the typing
        let mut anti = g.clone();
        anti.orientation = Orientation::Anti;
        validate_gray(&anti).unwrap();
    }
}

#[test]
fn free_interchange_square_has_the_expected_shape() {
    let g = free_interchange(1, 1).unwrap();
    validate_gray(&g).unwrap();
    let hac = g.hom(0, 2).unwrap();
    assert_eq!(hac.stored_count(0), 4);
    assert_eq!(hac.stored_count(1), 6);
    assert_eq!(hac.stored_count(2), 1);
    // the generators compose to the one non-invertible 2-cell
    let x = g.hom(1, 2).unwrap().lookup(1, "e").unwrap();
    let y = g.hom(0, 1).unwrap().lookup(1, "e").unwrap();
    let z = g.comp0(0, 1, 2, &x, &y).unwrap();
    assert_eq!(z, hac.lookup(2, "e&e").unwrap());
    let (s, t) = (hac.src(&z), hac.tgt(&z));
    assert_ne!(s, t); // genuinely non-invertible exchange
}

#[test]
fn free_interchange_whisker_shapes_validate() {
    for (p, q) in [(1, 2), (2, 1)] {
        let g = free_interchange(p, q).unwrap();
        validate_gray(&g).unwrap();
        let x = g.hom(1, 2).unwrap().lookup(p, "e").unwrap();
        let y = g.hom(0, 1).unwrap().lookup(q, "e").unwrap();
        let z = g.comp0(0, 1, 2, &x, &y).unwrap();
        assert_eq!(z.dim, 3);
        assert_eq!(z, g.hom(0, 2).unwrap().lookup(3, "e&e").unwrap());
    }
    assert!(matches!(
        free_interchange(2, 2),
        Err(Error::UnsupportedShape(_))
    ));
}

#[test]
fn mutated_interchangers_are_rejected() {
    // flipping the orientation flag swaps the expected boundary
    let mut g = free_interchange(1, 1).unwrap();
    g.orientation = Orientation::Anti;
    match validate_gray(&g) {
        Err(Error::LawViolation { law, .. }) => assert_eq!(law, "interchanger typing"),
        other => panic!("expected a typing violation, got {other:?}"),
    }
    // replacing the interchanger by a degenerate identity breaks the typing
    let mut g = free_interchange(1, 1).unwrap();
    let x = g.hom(1, 2).unwrap().lookup(1, "e").unwrap();
    let y = g.hom(0, 1).unwrap().lookup(1, "e").unwrap();
    let diag = g.hom(0, 2).unwrap().lookup(1, "diag1").unwrap();
    g.comp0.insert((0, 1, 2, x, y), diag.padded(1));
    match validate_gray(&g) {
        Err(Error::LawViolation { law, .. }) => assert_eq!(law, "interchanger typing"),
        other => panic!("expected a typing violation, got {other:?}"),
    }
}

#[test]
fn comp0_fails_loudly_above_the_truncation() {
    let mut g = free_interchange(1, 1).unwrap();
    g.truncation = 1;
    let x = g.hom(1, 2).unwrap().lookup(1, "e").unwrap();
    let y = g.hom(0, 1).unwrap().lookup(1, "e").unwrap();
    assert!(matches!(
        g.comp0(0, 1, 2, &x, &y),
        Err(Error::TruncationOverflow(_))
    ));
}

const DUALITIES: [GrayDuality; 7] = [
    GrayDuality::Op,
    GrayDuality::Co,
    GrayDuality::O,
    GrayDuality::T,
    GrayDuality::Top,
    GrayDuality::Cot,
    GrayDuality::To,
];

// (op, co, t) exponents of each duality in the eightfold group
fn bits(d: GrayDuality) -> (bool, bool, bool) {
    match d {
        GrayDuality::Op => (true, false, false),
        GrayDuality::Co => (false, true, false),
        GrayDuality::O => (true, true, false),
        GrayDuality::T => (false, false, true),
        GrayDuality::Top => (true, false, true),
        GrayDuality::Cot => (false, true, true),
        GrayDuality::To => (true, true, true),
    }
}

fn from_bits(b: (bool, bool, bool)) -> Option<GrayDuality> {
    DUALITIES.iter().copied().find(|d| bits(*d) == b)
}

#[test]
fn dualities_form_the_eightfold_group() {
    let g = free_interchange(1, 1).unwrap();
    for d in DUALITIES {
        // dualized categories still satisfy every law
        validate_gray(&gray_dual(&g, d)).unwrap();
        // involution
        assert!(gray_tables_eq(&gray_dual(&gray_dual(&g, d), d), &g));
    }
    // full composition table, table-identical
    for d1 in DUALITIES {
        for d2 in DUALITIES {
            let (a1, b1, c1) = bits(d1);
            let (a2, b2, c2) = bits(d2);
            let composite = gray_dual(&gray_dual(&g, d1), d2);
            match from_bits((a1 ^ a2, b1 ^ b2, c1 ^ c2)) {
                Some(d) => assert!(
                    gray_tables_eq(&composite, &gray_dual(&g, d)),
                    "{d1:?} then {d2:?} is not {d:?}"
                ),
                None => assert!(gray_tables_eq(&composite, &g), "{d1:?} then {d2:?} is not id"),
            }
        }
    }
}

#[test]
fn dual_orientations_match_the_catalogue() {
    let g = free_interchange(1, 1).unwrap();
    for d in DUALITIES {
        let expect = match d {
            GrayDuality::Op | GrayDuality::Cot | GrayDuality::To => Orientation::Gray,
            _ => Orientation::Anti,
        };
        assert_eq!(gray_dual(&g, d).orientation, expect, "{d:?}");
    }
}

#[test]
fn strict_duality_commutes_with_the_gray_view() {
    // reversing dimension k of the ambient category reverses hom dimension
    // k-1; the 1-cell reversal becomes the transpose
    let c = Arc::new(globe(2, 3));
    let g = gray_from_omega(&c).unwrap();
    let n = c.truncation;
    for (s, d) in [
        (omega::odd_dims(n), GrayDuality::Op),
        (omega::even_dims(n), GrayDuality::Co),
        (omega::all_dims(n), GrayDuality::O),
    ] {
        let lhs = gray_from_omega(&Arc::new(dual(&c, &s))).unwrap();
        let mut rhs = gray_dual(&g, d);
        // a strict category carries no orientation information
        rhs.orientation = Orientation::Gray;
        assert!(gray_tables_eq(&lhs, &rhs), "{d:?}");
    }
}

#[test]
fn product_with_the_point_is_the_identity() {
    let g = free_interchange(1, 1).unwrap();
    let point = gray_from_omega(&Arc::new(globe(0, 3))).unwrap();
    let p = gray_product(&g, &point).unwrap();
    validate_gray(&p.cat).unwrap();
    p.p1.validate(&p.cat, &g).unwrap();
    p.p2.validate(&p.cat, &point).unwrap();
    assert!(gray_is_isomorphic(&p.cat, &g).is_some());
}

#[test]
fn products_of_gray_categories_validate() {
    let g = free_interchange(1, 1).unwrap();
    let h = gray_from_omega(&Arc::new(globe(1, 3))).unwrap();
    let p = gray_product(&g, &h).unwrap();
    validate_gray(&p.cat).unwrap();
    p.p1.validate(&p.cat, &g).unwrap();
    p.p2.validate(&p.cat, &h).unwrap();
    // orientation clash is refused
    let anti = gray_dual(&g, GrayDuality::Co);
    assert!(matches!(
        gray_product(&g, &anti),
        Err(Error::OrientationMismatch(_))
    ));
}

#[test]
fn gray_functors_compose_and_validate() {
    let g = free_interchange(1, 1).unwrap();
    let id = GrayFunctor::identity(&g);
    id.validate(&g, &g).unwrap();
    let id2 = GrayFunctor::compose(&id, &id);
    id2.validate(&g, &g).unwrap();
    assert_eq!(id2.object_map, id.object_map);
}

#[test]
fn strict_transformations_demand_naturality() {
    // two parallel arrows; the swap endofunctor admits no strict
    // transformation from the identity
    let mut b = CatBuilder::new(2);
    b.object("s")
        .object("t")
        .arrow("e1", "s", "t")
        .arrow("e2", "s", "t");
    let c = Arc::new(b.build().unwrap());
    let g = gray_from_omega(&c).unwrap();
    let id = GrayFunctor::identity(&g);
    let mut swap = GrayFunctor::identity(&g);
    let hom_st = g.hom(0, 1).unwrap();
    let e1 = hom_st.lookup(0, "e1").unwrap();
    let e2 = hom_st.lookup(0, "e2").unwrap();
    swap.hom_maps.insert(
        (0, 1),
        OmegaFunctor::from_map(hom_st, hom_st, vec![vec![e2, e1]]),
    );
    swap.validate(&g, &g).unwrap();
    let alpha = GrayStrictTransformation {
        components: vec![g.units[&0], g.units[&1]],
    };
    // identity components are natural for the identity...
    strict_transformation_check(&g, &g, &id, &id, &alpha).unwrap();
    // ...but not against the swap, and the witness names the moved cell
    match strict_transformation_check(&g, &g, &id, &swap, &alpha) {
        Err(Error::LawViolation { law, witness }) => {
            assert_eq!(law, "strict transformation naturality");
            assert!(witness.contains("e1") || witness.contains("e2"));
        }
        other => panic!("expected a naturality violation, got {other:?}"),
    }
}
