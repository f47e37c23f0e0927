//! The acceptance suite: one pass/fail line per criterion, each under its
//! time limit. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use recmix::assign::{
    check_with, derivation_from_json, invariance_test, verify, Context, Derivation, Hints, Universe, UniverseConfig,
};
use recmix::oop::{object_term, stdlib};
use recmix::reduce::{normalize, whnf_record};
use recmix::syntax::{alpha_eq, desugar_let, parse_sugar, parse_term, Name, Term};
use recmix::types::{parse_type, subtype, type_eq, Type};

use common::{perturb, reduction_pairs, type_universe, ClosureOracle};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ty(s: &str) -> Type {
    parse_type(s).expect("type")
}

fn sample<'a>(rng: &mut StdRng, u: &'a [Type]) -> &'a Type {
    &u[rng.gen_range(0..u.len())]
}

fn axiom_suite() -> Outcome {
    let u = type_universe(&["Int", "Unit"], &["a", "b"], 2, 400, 11);
    let mut rng = StdRng::seed_from_u64(12);
    let mut cases = 0;
    let mut check = |l: Type, r: Type| -> Result<(), String> {
        cases += 1;
        ensure(subtype(&l, &r), || format!("{l} <= {r} fails"))
    };
    for _ in 0..150 {
        let (s, t, t2, r) = (
            sample(&mut rng, &u).clone(),
            sample(&mut rng, &u).clone(),
            sample(&mut rng, &u).clone(),
            sample(&mut rng, &u).clone(),
        );
        check(s.clone(), Type::Omega)?;
        check(Type::inter(s.clone(), t.clone()), s.clone())?;
        check(Type::inter(s.clone(), t.clone()), t.clone())?;
        check(
            Type::inter(Type::arrow(s.clone(), t.clone()), Type::arrow(s.clone(), t2.clone())),
            Type::arrow(s.clone(), Type::inter(t.clone(), t2.clone())),
        )?;
        check(
            Type::inter(Type::field("a", s.clone()), Type::field("a", t.clone())),
            Type::field("a", Type::inter(s.clone(), t.clone())),
        )?;
        // Rule instances, with premises that hold by the projection axioms.
        check(Type::inter(t.clone(), Type::inter(t2.clone(), r.clone())), Type::inter(t.clone(), t2.clone()))?;
        check(
            Type::arrow(s.clone(), Type::inter(t.clone(), r.clone())),
            Type::arrow(Type::inter(s.clone(), r.clone()), t.clone()),
        )?;
        check(Type::field("b", Type::inter(t.clone(), r.clone())), Type::field("b", t.clone()))?;
        check(s.clone(), s.clone())?;
    }
    check(Type::Omega, ty("w -> w"))?;
    ensure(subtype(&ty("w -> w"), &Type::Omega), || "w -> w <= w fails".into())?;
    ensure(!subtype(&Type::Omega, &ty("{a : w}")), || "w <= {a : w} holds".into())?;
    let mut eqs = 0;
    for _ in 0..100 {
        let (s, t) = (sample(&mut rng, &u).clone(), sample(&mut rng, &u).clone());
        let l = Type::inter(Type::field("a", s.clone()), Type::field("a", t.clone()));
        let r = Type::field("a", Type::inter(s, t));
        ensure(subtype(&l, &r) && subtype(&r, &l), || format!("{l} = {r} fails"))?;
        eqs += 1;
    }
    ensure(cases >= 1000, || format!("only {cases} axiom instances"))?;
    Ok(format!("{cases} axiom and rule instances, {eqs} field distribution equalities"))
}

fn oracle_equivalence() -> Outcome {
    let u = type_universe(&["Int", "Unit"], &["a", "b"], 3, 2000, 21);
    let oracle = ClosureOracle::default();
    let mut rng = StdRng::seed_from_u64(22);
    let (mut yes, mut no) = (0, 0);
    for i in 0..10_000 {
        let a = sample(&mut rng, &u).clone();
        let b = if i % 4 == 0 { sample(&mut rng, &u).clone() } else { perturb(&a, &u, &mut rng) };
        let (a, b) = if i % 2 == 0 { (a, b) } else { (b, a) };
        let d = subtype(&a, &b);
        ensure(d == oracle.le(&a, &b), || format!("{a} <= {b}: decider says {d}, oracle disagrees"))?;
        if d {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("universe of {} types, 10000 pairs agree ({yes} true, {no} false)", u.len()))
}

fn reduction_goldens() -> Outcome {
    let merged = normalize(&parse_term(r"{a = \x. x, b = 1} ++ {a = \y. y y}").unwrap(), 100);
    let expected = parse_term(r"{a = \z. z z, b = 1}").unwrap();
    ensure(alpha_eq(merged.term(), &expected), || format!("merge gave {}", merged.term()))?;

    let obj = object_term(&stdlib::point3(), &[Term::Int(3)], false);
    let got = normalize(&Term::sel(obj, "get"), 1000);
    ensure(alpha_eq(got.term(), &Term::Int(3)), || format!("point.get gave {}", got.term()))?;

    let moved = whnf_record(&stdlib::movable_move(&stdlib::movable3(), 4), 100_000).map_err(|e| e.to_string())?;
    let x = moved.get(&Name::new("X")).ok_or("moved object has no X")?;
    let x = normalize(x, 100_000);
    ensure(alpha_eq(x.term(), &Term::Int(7)), || format!("moved X is {}", x.term()))?;

    let run = stdlib::run_usage_pipeline(100_000);
    ensure(run.is_normal_form() && alpha_eq(run.term(), &Term::Int(3)), || {
        format!("pipeline gave {} after {} steps", run.term(), run.steps())
    })?;
    Ok(format!("merge, point.get = 3, moved X = 7, pipeline = 3 in {} steps", run.steps()))
}

fn derive(ctx: &Context, t: &Term, goal: &Type, hints: &Hints) -> Result<Derivation, String> {
    let d = check_with(ctx, t, goal, hints).ok_or_else(|| format!("no derivation of {t} : {goal}"))?;
    let j = verify(&d).map_err(|e| format!("derivation of {goal} does not verify: {e}"))?;
    ensure(j.ty == *goal && j.term == *t && j.ctx == *ctx, || format!("derivation concludes {j}"))?;
    Ok(d)
}

fn typing_goldens() -> Outcome {
    let mut names = Vec::new();
    for e in stdlib::entries() {
        derive(&e.ctx, &e.term, &e.goal, &e.hints)?;
        names.push(e.name);
    }
    let point = ty("Int -> (w -> {X : Int}) & ({X : Int} -> {X : Int, get : Int})");
    ensure(type_eq(&stdlib::kappa3(), &point), || format!("Point's class type is {}", stdlib::kappa3()))?;
    let y = ty("(w -> {X : Int}) & ({X : Int} -> {X : Int, get : Int}) -> {X : Int, get : Int}");
    ensure(type_eq(&stdlib::y_point_type(), &y), || format!("Y's type is {}", stdlib::y_point_type()))?;
    let rm = stdlib::entry("record-mixin").unwrap();
    ensure(type_eq(&rm.goal, &ty("{b : S2} -> {a : S1, b : S2}")), || format!("record mixin goal {}", rm.goal))?;

    let ctx = stdlib::record_mixin_context();
    let composed = recmix::oop::compose_mixins(&stdlib::record_mixin("a", "n1"), &stdlib::record_mixin("a", "n3"));
    derive(&ctx, &composed, &ty("w -> {a : S1}"), &Hints::new())?;
    ensure(check_with(&ctx, &composed, &ty("w -> {a : S3}"), &Hints::new()).is_none(), || {
        "the overridden field's type was derived for the composition".into()
    })?;

    let k = "(Int -> (w -> {X : Int}) & ({X : Int} -> {X : Int, get : Int}))";
    let km = "(Int -> (w -> {X : Int}) & ({X : Int} -> {X : Int, get : Int, move : Int -> {X : Int, get : Int}}))";
    let expected = ty(&format!("(w -> {k}) -> (w -> {k}) & ({k} -> {km})"));
    ensure(type_eq(&stdlib::movable3_type(), &expected), || format!("Movable's type is {}", stdlib::movable3_type()))?;
    Ok(format!("{} library typings found and verified, M_R1 . M_R3 negative case holds", names.len()))
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn invariance() -> Outcome {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .map_err(|e| format!("corpus: {e}"))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    ensure(!files.is_empty(), || "empty corpus".into())?;
    let (mut steps, mut normal) = (0, 0);
    for f in &files {
        let stem = f.file_stem().unwrap().to_string_lossy().trim_end_matches("_typing").replace('_', "-");
        let hints = stdlib::entry(&stem).map(|e| e.hints).unwrap_or_default();
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let d = derivation_from_json(&serde_json::from_str(&text).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        verify(&d).map_err(|e| format!("{}: {e}", f.display()))?;
        let report = invariance_test(&d, &hints, 60);
        if let Some(miss) = report.misses().next() {
            return Err(format!("{}: step {} ({}) loses the type", f.display(), miss.index, miss.redex));
        }
        steps += report.steps.len();
        normal += usize::from(report.reached_normal_form);
    }

    let mut u = Universe::build(&UniverseConfig::new(&["Int"], &["a", "b"], 2)).map_err(|e| e.to_string())?;
    let ctx = Context::new();
    let pairs = reduction_pairs(400, 4, false, 31);
    for (m, n) in &pairs {
        let (tm, tn) = (u.typeset(&ctx, m), u.typeset(&ctx, n));
        ensure(tm == tn, || format!("{m} ({} types) -> {n} ({} types)", tm.len(), tn.len()))?;
    }
    let wide = reduction_pairs(200, 4, true, 32);
    for (m, n) in &wide {
        let (tm, tn) = (u.typeset(&ctx, m), u.typeset(&ctx, n));
        ensure(tm.bits.ones().all(|i| tn.bits.get(i)), || format!("{m} has a type {n} lacks"))?;
    }
    Ok(format!(
        "{} corpus derivations over {steps} steps ({normal} to normal form); {} pairs with equal type sets, {} pairs with inclusion",
        files.len(),
        pairs.len(),
        wide.len()
    ))
}

fn merge_operand_guard() -> Outcome {
    for src in [r"\x. {a = 1} ++ x", r"(\x. {a = 1} ++ x) {a = 2}", r"{a = 1} ++ (\y. y)", "{a = 1} ++ {b = 2}.b"] {
        ensure(parse_term(src).is_err(), || format!("`{src}` parsed"))?;
    }
    let sugar = parse_sugar(r"\c. let d = \y. y in c ++ d").map_err(|e| e.to_string())?;
    ensure(desugar_let(&sugar).is_err(), || "merge with a let-bound abstraction desugared".into())?;
    // Both problematic typings would need a derivation whose subject is
    // `\x. R ++ x`; no such subject can be written down.
    for (subject, goal) in
        [(r"\x. {a = 1} ++ x", "{a : Unit} -> {a : Int}"), (r"(\x. {a = 1} ++ x) {a = ()}", "{a : Int}")]
    {
        let node = serde_json::json!({ "rule": "ArrI", "term": subject, "type": goal, "premises": [] });
        ensure(derivation_from_json(&node).is_err(), || format!("a derivation for `{subject}` was read"))?;
    }
    Ok("parser, desugaring and derivation reader reject non-literal merge operands".into())
}

fn subtype_claims() -> Outcome {
    let (p, m, s) = (stdlib::point4_family(), stdlib::movable4_family(), stdlib::set_adapter4_family());
    let delta = m.sigma_delta.clone().expect("delta");
    ensure(subtype(&m.sigma[1], &delta), || "sigma2 of Movable is not below its delta".into())?;
    ensure(!subtype(&s.sigma[2], &m.sigma[1]), || "sigma3 of SetAdapter is below sigma2 of Movable".into())?;
    for (name, fam) in [("Point", &p), ("Movable", &m), ("SetAdapter", &s)] {
        for w in fam.sigma.windows(2) {
            ensure(subtype(&w[1], &w[0]), || format!("{name}: chain not descending at {}", w[1]))?;
        }
    }
    Ok("delta inclusion holds, override breaks inclusion, all chains descend".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("1 subtyping axiom suite", axiom_suite, 5),
        ("2 closure oracle equivalence", oracle_equivalence, 60),
        ("3 reduction goldens", reduction_goldens, 5),
        ("4 typing goldens", typing_goldens, 30),
        ("5 invariance under reduction", invariance, 120),
        ("6 merge operand guard", merge_operand_guard, 5),
        ("7 instance type inclusions", subtype_claims, 1),
    ];
    let mut failed = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > Duration::from_secs(limit) => Err(format!("took {took:.2?}, limit {limit}s")),
            o => o,
        };
        match &outcome {
            Ok(msg) => println!("PASS criterion {name} ({took:.2?}): {msg}"),
            Err(msg) => {
                println!("FAIL criterion {name} ({took:.2?}): {msg}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
