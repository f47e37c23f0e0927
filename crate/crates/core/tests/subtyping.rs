mod common;

use proptest::prelude::*;
use recmix::types::{normalize_type, parse_type, subtype, type_eq, Decider, Type};

fn ty(s: &str) -> Type {
    parse_type(s).unwrap()
}

fn arb_type() -> impl Strategy<Value = Type> {
    let leaf = prop_oneof![Just(Type::Omega), Just(Type::int()), Just(Type::unit())];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::arrow(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::inter(a, b)),
            (prop::sample::select(vec!["a", "b"]), inner).prop_map(|(l, b)| Type::field(l, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflexive(a in arb_type()) {
        prop_assert!(subtype(&a, &a));
    }

    #[test]
    fn transitive(a in arb_type(), b in arb_type(), c in arb_type()) {
        if subtype(&a, &b) && subtype(&b, &c) {
            prop_assert!(subtype(&a, &c));
        }
    }

    #[test]
    fn intersection_is_a_greatest_lower_bound(a in arb_type(), b in arb_type(), c in arb_type()) {
        let ab = Type::inter(a.clone(), b.clone());
        prop_assert!(subtype(&ab, &a) && subtype(&ab, &b));
        prop_assert_eq!(subtype(&c, &ab), subtype(&c, &a) && subtype(&c, &b));
    }

    #[test]
    fn arrows_are_contravariant_then_covariant(a in arb_type(), b in arb_type(), c in arb_type()) {
        let narrower_dom = Type::inter(a.clone(), c.clone());
        prop_assert!(subtype(&Type::arrow(a.clone(), b.clone()), &Type::arrow(narrower_dom, b.clone())));
        prop_assert!(subtype(&Type::arrow(a.clone(), Type::inter(b.clone(), c)), &Type::arrow(a, b)));
    }

    #[test]
    fn normal_form_is_equivalent_and_idempotent(a in arb_type()) {
        let n = normalize_type(&a);
        prop_assert!(type_eq(&n.to_type(), &a));
        prop_assert_eq!(normalize_type(&n.to_type()), n);
    }

    #[test]
    fn printed_types_parse_back(a in arb_type()) {
        prop_assert_eq!(parse_type(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn agrees_with_the_closure_oracle(a in arb_type(), b in arb_type()) {
        prop_assert_eq!(subtype(&a, &b), common::ClosureOracle::default().le(&a, &b), "{} <= {}", a, b);
    }
}

#[test]
fn omega_laws() {
    assert!(type_eq(&Type::Omega, &ty("w -> w")));
    assert!(type_eq(&Type::Omega, &ty("Int -> w")));
    assert!(!subtype(&Type::Omega, &ty("{a : w}")));
    assert!(subtype(&ty("{a : Int}"), &ty("{a : w}")));
}

#[test]
fn record_width_and_depth() {
    assert!(subtype(&ty("{a : Int, b : Unit}"), &ty("{a : Int}")));
    assert!(!subtype(&ty("{a : Int}"), &ty("{a : Int, b : Unit}")));
    assert!(subtype(&ty("{a : Int & Unit}"), &ty("{a : Unit}")));
    assert!(type_eq(&ty("{a : Int} & {a : Unit}"), &ty("{a : Int & Unit}")));
}

#[test]
fn arrows_distribute_over_codomain_intersections() {
    assert!(type_eq(&ty("(Int -> Int) & (Int -> Unit)"), &ty("Int -> Int & Unit")));
    assert!(subtype(&ty("(Int -> Int) & (Unit -> Unit)"), &ty("Int & Unit -> Int & Unit")));
    assert!(!subtype(&ty("(Int -> Int) & (Unit -> Unit)"), &ty("Int -> Int & Unit")));
    assert!(subtype(&ty("(Int -> Int) & (Unit -> Unit)"), &ty("Int & Unit -> Int")));
}

#[test]
fn distinct_atoms_are_unrelated() {
    assert!(!subtype(&Type::int(), &Type::unit()));
    assert!(!subtype(&ty("Int -> Int"), &Type::int()));
    assert!(!subtype(&ty("{a : Int}"), &ty("{b : Int}")));
}

#[test]
fn decider_caches_consistently() {
    let mut d = Decider::new();
    let (a, b) = (ty("{a : Int, b : Int -> Int}"), ty("{b : Int & Unit -> Int}"));
    assert!(d.le(&a, &b));
    assert!(d.le(&a, &b));
    assert!(!d.le(&b, &a));
}

#[test]
fn type_syntax() {
    assert_eq!(ty("Int -> Int -> Int"), Type::arrow(Type::int(), Type::arrow(Type::int(), Type::int())));
    assert_eq!(ty("{a : Int, b : Unit}"), Type::record([("a", Type::int()), ("b", Type::unit())]));
    assert!(parse_type("Int ->").is_err());
}
