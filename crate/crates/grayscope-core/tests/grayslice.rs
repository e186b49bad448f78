use grayscope_core::cyl::{left_side, validate_tuple, CylTuple};
use grayscope_core::gray::{free_interchange, gray_from_omega, validate_gray, GrayCat, Orientation};
use grayscope_core::grayslice::{
    cyl_act_right, dual_slice, fiber_iso_check, module_axiom_suite, slice_fiber, slice_gray,
    strict_action_agreement, strict_slice_agreement, SliceFlavor,
};
use grayscope_core::omega::{free_chain, globe, CellRef, OmegaCat};

use std::sync::Arc;

fn strict_examples() -> Vec<(&'static str, Arc<OmegaCat>)> {
    vec![
        ("D1@2", Arc::new(globe(1, 2))),
        ("D2@2", Arc::new(globe(2, 2))),
        ("D2@3", Arc::new(globe(2, 3))),
        ("chain2", Arc::new(free_chain(2, 2))),
    ]
}

fn gray_examples() -> Vec<(&'static str, GrayCat)> {
    let mut out: Vec<(&'static str, GrayCat)> = strict_examples()
        .into_iter()
        .map(|(n, c)| (n, gray_from_omega(&c).unwrap()))
        .collect();
    out.push(("free(1,1)", free_interchange(1, 1).unwrap()));
    out.push(("free(1,2)", free_interchange(1, 2).unwrap()));
    out.push(("free(2,1)", free_interchange(2, 1).unwrap()));
    out
}

// every fiber index with a nonempty mapping hom into c
fn fiber_domains(g: &GrayCat, c: usize) -> Vec<usize> {
    (0..g.objects.len())
        .filter(|&d| d == c || g.homs.contains_key(&(d, c)))
        .collect()
}

#[test]
fn action_axioms_hold_on_every_desk_instance() {
    // unit action, side projections, conc equivariance, kappa preservation
    // and iterated associativity, exhaustively; instance counts frozen
    let expected = [
        ("D1@2", 12),
        ("D2@2", 25),
        ("D2@3", 54),
        ("chain2", 30),
        ("free(1,1)", 389),
        ("free(1,2)", 1738),
        ("free(2,1)", 1800),
    ];
    for ((name, g), (ename, count)) in gray_examples().iter().zip(expected) {
        assert_eq!(*name, ename);
        assert_eq!(module_axiom_suite(g).unwrap(), count, "{name}");
    }
}

#[test]
fn action_filler_is_the_interchanger_not_an_identity() {
    // acting a hom 1-cell on a 1-cell cylinder fills with the interchanger;
    // the degenerate identity filler fails the boundary equations
    let g = free_interchange(1, 1).unwrap();
    let hbc = g.hom(1, 2).unwrap();
    let hac = g.hom(0, 2).unwrap();
    let e_bc = hbc.lookup(1, "e").unwrap();
    let u = g.hom(0, 1).unwrap().lookup(1, "e").unwrap();
    let alpha = CylTuple {
        x: hbc.src(&e_bc),
        y: hbc.tgt(&e_bc),
        minus: vec![],
        plus: vec![],
        top: e_bc,
    };
    let r = cyl_act_right(&g, (0, 1, 2), &alpha, &u).unwrap();
    validate_tuple(hac, 0, &r).unwrap();
    assert_eq!(r.top, hac.lookup(2, "e&e").unwrap());
    let mut wrong = r.clone();
    wrong.top = left_side(hac, 0, &wrong.x, &wrong.plus).unwrap().padded(1);
    assert_ne!(wrong.top, r.top);
    assert!(validate_tuple(hac, 0, &wrong).is_err());
}

#[test]
fn strict_action_agrees_with_ambient_whiskering() {
    // in a hom of a strict category the action is pairing with the identity
    // cylinder through the ambient composition functor
    let expected = [("D1@2", 12), ("D2@2", 25), ("D2@3", 54), ("chain2", 30)];
    for ((name, c), (ename, count)) in strict_examples().iter().zip(expected) {
        assert_eq!(*name, ename);
        assert_eq!(strict_action_agreement(c).unwrap(), count, "{name}");
    }
}

#[test]
fn slices_are_gray_categories_with_a_forgetful_functor() {
    for (name, g) in gray_examples() {
        for c in 0..g.objects.len() {
            let s = slice_gray(&g, c).unwrap();
            validate_gray(&s.cat).unwrap();
            assert_eq!(s.cat.truncation, g.truncation);
            s.forgetful.validate(&s.cat, &g).unwrap();
            // decode/encode is a bijection on every stored hom cell
            for (&(i, j), span) in &s.spans {
                for d in 0..=span.cat.max_stored_dim() {
                    for r in span.cat.stored(d) {
                        let (u, t) = s.decode(i, j, &r);
                        assert_eq!(s.encode(i, j, &u, &t), r, "{name}/{c}");
                    }
                }
            }
        }
    }
}

#[test]
fn slice_of_the_interchange_square_has_frozen_shape() {
    let g = free_interchange(1, 1).unwrap();
    let s = slice_gray(&g, 2).unwrap();
    assert_eq!(s.objects.len(), 7);
    assert_eq!(s.spans.len(), 25);
}

#[test]
fn strict_slices_agree_with_the_comma_construction() {
    // the canonical functor onto the strict over-slice is an isomorphism
    // commuting with the forgetful functors
    for (_, c) in strict_examples() {
        for ci in 0..c.stored_count(0) {
            strict_slice_agreement(&c, CellRef::stored(0, ci)).unwrap();
        }
    }
}

#[test]
fn fibers_are_the_full_duals_of_the_mapping_homs() {
    for (name, g) in gray_examples() {
        for c in 0..g.objects.len() {
            for d in fiber_domains(&g, c) {
                let fib = slice_fiber(&g, c, d).unwrap();
                validate_gray(&fib.cat).unwrap();
                assert_eq!(fib.cat.truncation, g.truncation - 1, "{name}/{c}/{d}");
                fiber_iso_check(&g, c, d).unwrap();
            }
        }
    }
}

#[test]
fn dual_slices_validate_with_their_forgetful_functors() {
    for (name, g) in gray_examples() {
        for c in 0..g.objects.len() {
            for fl in [
                SliceFlavor::Over,
                SliceFlavor::CoUnder,
                SliceFlavor::TopUnder,
                SliceFlavor::ToOver,
            ] {
                let (cat, forg) = dual_slice(&g, c, fl).unwrap();
                validate_gray(&cat).unwrap();
                assert_eq!(cat.orientation, Orientation::Gray, "{name}/{c}/{fl:?}");
                forg.validate(&cat, &g).unwrap();
            }
        }
    }
}
