mod common;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use recmix::assign::{
    check, check_with, derivation_from_json, derivation_to_json, enumerate_types, synth, verify, Context, Derivation,
    Hints, Rule, Universe, UniverseConfig,
};
use recmix::syntax::{parse_term, Term};
use recmix::types::{parse_type, subtype, Type};

fn ty(s: &str) -> Type {
    parse_type(s).unwrap()
}

fn tm(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn derive(ctx: &Context, t: &str, goal: &str) -> Derivation {
    let d = check(ctx, &tm(t), &ty(goal)).unwrap_or_else(|| panic!("no derivation of {t} : {goal}"));
    let j = verify(&d).unwrap();
    assert_eq!(j.ty, ty(goal));
    d
}

#[test]
fn simple_goldens() {
    let empty = Context::new();
    derive(&empty, r"\x. x", "Int -> Int");
    derive(&empty, r"\x. x", "(Int -> Int) & (Unit -> Unit)");
    derive(&empty, "{a = 1, b = ()}", "{a : Int, b : Unit}");
    derive(&empty, "{a = 1}.a", "Int");
    derive(&empty, "{a = 1} ++ {b = ()}", "{a : Int} & {b : Unit}");
    derive(&empty, "({a = 1} ++ {a = ()}).a", "Unit");
    derive(&empty, r"(\x. x + 1) 2", "Int");
    derive(&empty, r"\f. f 1", "(Int -> Unit) -> Unit");
}

#[test]
fn every_term_has_omega() {
    let d = derive(&Context::new(), r"(\x. x x) (\x. x x)", "w");
    assert_eq!(d.rule, Rule::Omega);
}

#[test]
fn untypable_goals_are_not_found() {
    let empty = Context::new();
    for (t, goal) in [("{a = 1}.a", "Unit"), ("{a = 1}", "{b : w}"), (r"\x. x", "Int -> Unit"), ("1 + ()", "Int")] {
        assert!(check(&empty, &tm(t), &ty(goal)).is_none(), "{t} : {goal}");
    }
}

#[test]
fn merge_left_needs_label_absent_on_the_right() {
    let ctx = Context::from_pairs([("r", ty("{a : Int} & {b : Int}"))]);
    derive(&ctx, "r ++ {a = ()}", "{b : Int} & {a : Unit}");
    assert!(check(&ctx, &tm("r ++ {a = ()}"), &ty("{a : Int}")).is_none());
}

#[test]
fn context_variables_are_used() {
    let ctx = Context::from_pairs([("f", ty("Int -> {a : Unit}"))]);
    derive(&ctx, "(f 1).a", "Unit");
}

#[test]
fn record_mixin_composition_keeps_the_right_field() {
    let ctx = Context::from_pairs([("n1", ty("S1")), ("n2", ty("S2")), ("n3", ty("S3"))]);
    let m1 = r"(\x. x ++ {a = n1})";
    derive(&ctx, m1, "{b : S2} -> {a : S1, b : S2}");
    derive(&ctx, m1, "w -> {a : S1}");
    let composed = format!(r"\y. {m1} ((\x. x ++ {{a = n3}}) y)");
    derive(&ctx, &composed, "w -> {a : S1}");
    assert!(check(&ctx, &tm(&composed), &ty("w -> {a : S3}")).is_none());
    let with_b = format!(r"\y. {m1} ((\x. x ++ {{b = n2}}) y)");
    derive(&ctx, &with_b, "w -> {a : S1, b : S2}");
}

#[test]
fn tampered_derivations_are_rejected() {
    let d = derive(&Context::new(), "{a = 1, b = ()}.a", "Int");
    let mut bad = d.clone();
    bad.ty = Type::unit();
    assert!(verify(&bad).is_err());

    fn first_leaf(d: &mut Derivation) -> &mut Derivation {
        if d.premises.is_empty() {
            d
        } else {
            first_leaf(&mut d.premises[0])
        }
    }
    let mut bad = d.clone();
    first_leaf(&mut bad).ty = Type::unit();
    let err = verify(&bad).unwrap_err();
    assert!(!err.path.is_empty(), "{err}");

    let mut bad = d;
    bad.rule = Rule::Rec;
    assert!(verify(&bad).is_err());
}

#[test]
fn sub_nodes_must_be_inclusions() {
    let ctx = Context::new();
    let base = check(&ctx, &tm("1"), &Type::int()).unwrap();
    assert!(verify(&base.clone().subsume(Type::Omega)).is_ok());
    assert!(verify(&base.subsume(Type::unit())).is_err());
}

#[test]
fn json_round_trip() {
    let d = derive(&Context::from_pairs([("n", ty("Int"))]), r"\x. {a = x, b = n}", "Unit -> {a : Unit, b : Int}");
    let v = derivation_to_json(&d);
    let back = derivation_from_json(&v).unwrap();
    assert_eq!(back, d);
    assert!(v.get("ctx").is_some() && v.get("premises").is_some());
}

#[test]
fn json_reader_checks_structure() {
    let bad = serde_json::json!({ "rule": "Nope", "term": "1", "type": "Int" });
    assert!(derivation_from_json(&bad).is_err());
    let bad = serde_json::json!({ "rule": "Lit", "term": "1" });
    assert!(derivation_from_json(&bad).is_err());
    let grouped = serde_json::json!({ "rule": "Lit", "conclusion": { "term": "1", "type": "Int" } });
    assert!(verify(&derivation_from_json(&grouped).unwrap()).is_ok());
}

#[test]
fn corpus_derivations_verify() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut n = 0;
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        let d = derivation_from_json(&v).unwrap();
        verify(&d).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        n += 1;
    }
    assert!(n >= 8);
}

#[test]
fn hints_steer_the_checker() {
    let id = tm(r"\x. x");
    let t = Term::app(tm(r"\f. f 1"), id.clone());
    let hints = Hints::new().term(&id, ty("Int -> Int"));
    let d = check_with(&Context::new(), &t, &Type::int(), &hints).unwrap();
    assert!(verify(&d).is_ok());
}

#[test]
fn synth_gives_a_valid_derivation() {
    let d = synth(&Context::new(), &tm("{a = 1, b = {c = ()}}"), &Hints::new());
    let j = verify(&d).unwrap();
    assert!(subtype(&j.ty, &ty("{a : Int, b : {c : Unit}}")));
}

#[test]
fn bounded_oracle_lists_record_types() {
    let types = enumerate_types(&Context::new(), &tm("{a = 3}"), &["Int"], 1).unwrap();
    for want in ["{a : Int}", "{a : w}", "w"] {
        assert!(types.iter().any(|t| subtype(t, &ty(want)) && subtype(&ty(want), t)), "missing {want}");
    }
    assert!(!types.iter().any(|t| subtype(t, &ty("{b : w}"))));
}

#[test]
fn found_derivations_are_in_the_bounded_oracle() {
    let mut u = Universe::build(&UniverseConfig::new(&["Int"], &["a", "b"], 2)).unwrap();
    let candidates: Vec<Type> = u.types().to_vec();
    let mut rng = StdRng::seed_from_u64(17);
    let ctx = Context::new();
    let (mut found, mut tried) = (0, 0);
    for (m, _) in common::reduction_pairs(60, 3, false, 18) {
        let set = u.typeset(&ctx, &m);
        for goal in candidates.choose_multiple(&mut rng, 15) {
            tried += 1;
            if let Some(d) = check(&ctx, &m, goal) {
                assert!(verify(&d).is_ok());
                assert!(u.member(&set, goal), "{m} : {goal} derived but not in the oracle set");
                found += 1;
            }
        }
    }
    assert!(found > 0 && tried == 900);
}
