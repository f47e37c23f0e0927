//! Oracles shared by the integration tests. Nothing here calls the library's
//! decision procedures; types are only built and inspected.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use recmix::reduce::{contract_at, redex_positions};
use recmix::syntax::{Name, RecordLit, Term};
use recmix::types::Type;

pub fn omega() -> Type {
    Type::Omega
}

/// Conjuncts of a left- or right-nested intersection, `ω` dropped.
fn flat(t: &Type, out: &mut Vec<Type>) {
    match t {
        Type::Inter(a, b) => {
            flat(a, out);
            flat(b, out);
        }
        Type::Omega => {}
        t => out.push(t.clone()),
    }
}

/// A syntactic key identifying types that differ only in the order,
/// repetition or `ω`-padding of intersections, or in arrows into `ω`.
pub fn key(t: &Type) -> String {
    let mut parts: Vec<Type> = Vec::new();
    flat(t, &mut parts);
    let mut ks: Vec<String> = parts
        .iter()
        .filter_map(|p| match p {
            Type::Arrow(d, c) => {
                let kc = key(c);
                (kc != "w").then(|| format!("({}>{kc})", key(d)))
            }
            Type::Field(l, b) => Some(format!("{{{l}:{}}}", key(b))),
            other => Some(other.to_string()),
        })
        .collect();
    ks.sort();
    ks.dedup();
    if ks.is_empty() {
        "w".to_string()
    } else {
        ks.join("&")
    }
}

/// Types over `atoms` and `labels` of depth at most `depth`, deduplicated by
/// [`key`]. Levels below `depth` are complete; the last level is sampled at
/// random (seeded) until `cap` types are reached.
pub fn type_universe(atoms: &[&str], labels: &[&str], depth: usize, cap: usize, seed: u64) -> Vec<Type> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |t: Type, out: &mut Vec<Type>| {
        if seen.insert(key(&t)) {
            out.push(t);
        }
    };
    push(Type::Omega, &mut out);
    for a in atoms {
        push(Type::atom(a), &mut out);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for level in 1..=depth {
        let prev = out.clone();
        let mut fresh = Vec::new();
        for s in &prev {
            for t in &prev {
                fresh.push(Type::arrow(s.clone(), t.clone()));
            }
            for l in labels {
                fresh.push(Type::field(l, s.clone()));
            }
        }
        for (i, s) in prev.iter().enumerate() {
            for t in &prev[i + 1..] {
                fresh.push(Type::inter(s.clone(), t.clone()));
            }
        }
        if level == depth {
            fresh.shuffle(&mut rng);
        }
        for t in fresh {
            if out.len() >= cap {
                break;
            }
            push(t, &mut out);
        }
    }
    out
}

/// Deciding `σ ≤ τ` by closing the inclusion axioms under reflexivity,
/// transitivity and the congruence rules on a finite carrier.
///
/// The axioms are: `σ ≤ ω`, `ω ≤ ω → ω`, `σ ∩ τ ≤ σ`, `σ ∩ τ ≤ τ`,
/// `(σ → τ1) ∩ (σ → τ2) ≤ σ → τ1 ∩ τ2` and `{a : σ} ∩ {a : τ} ≤ {a : σ ∩ τ}`.
/// The rules: `σ ≤ τ1, σ ≤ τ2 ⇒ σ ≤ τ1 ∩ τ2`, contravariant-covariant
/// arrows and covariant fields.
///
/// Every fact derived is sound. The carrier holds the subterms of both
/// types, closed under a few constructions that supply the intermediate
/// types the axioms need: an arrow's codomain paired with another arrow's
/// domain, intersections of codomains and field bodies, and `ρ → ω`.
pub struct ClosureOracle {
    rounds: usize,
    cap: usize,
}

impl Default for ClosureOracle {
    fn default() -> Self {
        ClosureOracle { rounds: 2, cap: 400 }
    }
}

struct Carrier {
    types: Vec<Type>,
    index: HashMap<Type, usize>,
}

impl Carrier {
    fn add(&mut self, t: Type) {
        let mut stack = vec![t];
        while let Some(t) = stack.pop() {
            if self.index.contains_key(&t) {
                continue;
            }
            match &t {
                Type::Arrow(a, b) | Type::Inter(a, b) => {
                    stack.push((**a).clone());
                    stack.push((**b).clone());
                }
                Type::Field(_, b) => stack.push((**b).clone()),
                _ => {}
            }
            self.index.insert(t.clone(), self.types.len());
            self.types.push(t);
        }
    }

    fn get(&self, t: &Type) -> Option<usize> {
        self.index.get(t).copied()
    }
}

impl ClosureOracle {
    fn carrier(&self, a: &Type, b: &Type) -> Carrier {
        let mut c = Carrier { types: Vec::new(), index: HashMap::new() };
        c.add(Type::Omega);
        c.add(Type::arrow(Type::Omega, Type::Omega));
        c.add(a.clone());
        c.add(b.clone());
        for _ in 0..self.rounds {
            let before = c.types.len();
            let arrows: Vec<(Type, Type)> = c
                .types
                .iter()
                .filter_map(|t| match t {
                    Type::Arrow(d, r) => Some(((**d).clone(), (**r).clone())),
                    _ => None,
                })
                .collect();
            let doms: BTreeSet<Type> = arrows.iter().map(|(d, _)| d.clone()).collect();
            let cods: BTreeSet<Type> = arrows.iter().map(|(_, r)| r.clone()).collect();
            let mut new = Vec::new();
            for d in &doms {
                new.push(Type::arrow(d.clone(), Type::Omega));
                for r in &cods {
                    new.push(Type::arrow(d.clone(), r.clone()));
                }
            }
            for d in &doms {
                let mine: Vec<&Type> = arrows.iter().filter(|(x, _)| x == d).map(|(_, r)| r).collect();
                for (i, r1) in mine.iter().enumerate() {
                    for r2 in &mine[i + 1..] {
                        let both = Type::inter((*r1).clone(), (*r2).clone());
                        new.push(Type::inter(
                            Type::arrow(d.clone(), (*r1).clone()),
                            Type::arrow(d.clone(), (*r2).clone()),
                        ));
                        new.push(Type::arrow(d.clone(), both));
                    }
                }
            }
            let fields: Vec<(String, Type)> = c
                .types
                .iter()
                .filter_map(|t| match t {
                    Type::Field(l, b) => Some((l.to_string(), (**b).clone())),
                    _ => None,
                })
                .collect();
            for (i, (l1, b1)) in fields.iter().enumerate() {
                for (l2, b2) in &fields[i + 1..] {
                    if l1 == l2 {
                        new.push(Type::inter(Type::field(l1, b1.clone()), Type::field(l1, b2.clone())));
                        new.push(Type::field(l1, Type::inter(b1.clone(), b2.clone())));
                    }
                }
            }
            for t in new {
                if c.types.len() >= self.cap {
                    break;
                }
                c.add(t);
            }
            if c.types.len() == before {
                break;
            }
        }
        c
    }

    pub fn le(&self, a: &Type, b: &Type) -> bool {
        let c = self.carrier(a, b);
        let n = c.types.len();
        let mut le = Relation::new(n);
        let w = c.get(&Type::Omega).expect("omega in carrier");
        let ww = c.get(&Type::arrow(Type::Omega, Type::Omega)).expect("w -> w in carrier");
        let at = |t: &Type| c.get(t).expect("subterm in carrier");
        for i in 0..n {
            le.set(i, i);
            le.set(i, w);
            if let Type::Inter(x, y) = &c.types[i] {
                le.set(i, at(x));
                le.set(i, at(y));
            }
        }
        le.set(w, ww);
        // Distribution axioms whose both sides are in the carrier.
        for i in 0..n {
            let Type::Inter(x, y) = &c.types[i] else { continue };
            let rhs = match (&**x, &**y) {
                (Type::Arrow(d1, r1), Type::Arrow(d2, r2)) if d1 == d2 => {
                    Type::arrow((**d1).clone(), Type::inter((**r1).clone(), (**r2).clone()))
                }
                (Type::Field(l1, b1), Type::Field(l2, b2)) if l1 == l2 => {
                    Type::field(l1.as_str(), Type::inter((**b1).clone(), (**b2).clone()))
                }
                _ => continue,
            };
            if let Some(j) = c.get(&rhs) {
                le.set(i, j);
            }
        }
        let shape: Vec<Shape> = c
            .types
            .iter()
            .map(|t| match t {
                Type::Arrow(x, y) => Shape::Arrow(at(x), at(y)),
                Type::Inter(x, y) => Shape::Inter(at(x), at(y)),
                Type::Field(l, y) => Shape::Field(l.to_string(), at(y)),
                _ => Shape::Leaf,
            })
            .collect();
        loop {
            le.transitive_closure();
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    if le.get(i, j) {
                        continue;
                    }
                    let derived = match (&shape[i], &shape[j]) {
                        (_, Shape::Inter(y1, y2)) => le.get(i, *y1) && le.get(i, *y2),
                        (Shape::Arrow(s1, t1), Shape::Arrow(s2, t2)) => le.get(*s2, *s1) && le.get(*t1, *t2),
                        (Shape::Field(l1, b1), Shape::Field(l2, b2)) => l1 == l2 && le.get(*b1, *b2),
                        _ => false,
                    };
                    if derived {
                        le.set(i, j);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        le.get(at(a), at(b))
    }
}

enum Shape {
    Leaf,
    Arrow(usize, usize),
    Inter(usize, usize),
    Field(String, usize),
}

/// A square boolean matrix stored as bit rows.
struct Relation {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl Relation {
    fn new(n: usize) -> Relation {
        let words = n.div_ceil(64);
        Relation { words, rows: vec![vec![0; words]; n] }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i][j / 64] |= 1 << (j % 64);
    }

    fn transitive_closure(&mut self) {
        let n = self.rows.len();
        for k in 0..n {
            let row_k = self.rows[k].clone();
            for i in 0..n {
                if self.get(i, k) {
                    for (dst, src) in self.rows[i].iter_mut().zip(&row_k) {
                        *dst |= *src;
                    }
                }
            }
        }
    }
}

/// A type near `t`: a few random rewrites, each of which either weakens `t`
/// (dropping or `ω`-ing a covariant part, strengthening an arrow domain),
/// regroups it by distribution, or perturbs a leaf, which usually breaks
/// the inclusion.
pub fn perturb(t: &Type, pool: &[Type], rng: &mut impl Rng) -> Type {
    let steps = rng.gen_range(1..=3);
    (0..steps).fold(t.clone(), |acc, _| rewrite(&acc, true, pool, rng))
}

fn rewrite(t: &Type, positive: bool, pool: &[Type], rng: &mut impl Rng) -> Type {
    let pick = |rng: &mut dyn rand::RngCore| pool[rng.gen_range(0..pool.len())].clone();
    if rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 if positive => Type::Omega,
            0 => Type::inter(t.clone(), pick(rng)),
            1 => regroup(t),
            2 => pick(rng),
            _ => match t {
                Type::Const(_) if rng.gen_bool(0.5) => Type::atom(if t == &Type::int() { "Unit" } else { "Int" }),
                _ => t.clone(),
            },
        };
    }
    match t {
        Type::Arrow(d, c) => {
            if rng.gen_bool(0.5) {
                Type::arrow(rewrite(d, !positive, pool, rng), (**c).clone())
            } else {
                Type::arrow((**d).clone(), rewrite(c, positive, pool, rng))
            }
        }
        Type::Inter(x, y) => {
            if positive && rng.gen_bool(0.2) {
                if rng.gen_bool(0.5) {
                    (**x).clone()
                } else {
                    (**y).clone()
                }
            } else if rng.gen_bool(0.5) {
                Type::inter(rewrite(x, positive, pool, rng), (**y).clone())
            } else {
                Type::inter((**x).clone(), rewrite(y, positive, pool, rng))
            }
        }
        Type::Field(l, b) => Type::field(l.as_str(), rewrite(b, positive, pool, rng)),
        _ => t.clone(),
    }
}

/// Applies a distribution law in whichever direction matches.
fn regroup(t: &Type) -> Type {
    match t {
        Type::Inter(x, y) => match (&**x, &**y) {
            (Type::Arrow(d1, r1), Type::Arrow(d2, r2)) if d1 == d2 => {
                Type::arrow((**d1).clone(), Type::inter((**r1).clone(), (**r2).clone()))
            }
            (Type::Field(l1, b1), Type::Field(l2, b2)) if l1 == l2 => {
                Type::field(l1.as_str(), Type::inter((**b1).clone(), (**b2).clone()))
            }
            _ => Type::inter((**y).clone(), (**x).clone()),
        },
        Type::Arrow(d, c) => match &**c {
            Type::Inter(r1, r2) => {
                Type::inter(Type::arrow((**d).clone(), (**r1).clone()), Type::arrow((**d).clone(), (**r2).clone()))
            }
            _ => t.clone(),
        },
        Type::Field(l, b) => match &**b {
            Type::Inter(b1, b2) => {
                Type::inter(Type::field(l.as_str(), (**b1).clone()), Type::field(l.as_str(), (**b2).clone()))
            }
            _ => t.clone(),
        },
        _ => t.clone(),
    }
}

/// Closed tiny terms over labels `a`, `b`. With `lam_args` false no
/// application has an abstraction as its argument.
pub fn tiny_term(rng: &mut impl Rng, depth: usize, lam_args: bool) -> Term {
    tiny(rng, depth, &mut Vec::new(), lam_args, true)
}

fn tiny(rng: &mut impl Rng, depth: usize, vars: &mut Vec<String>, lam_args: bool, lam_ok: bool) -> Term {
    let leaf = |rng: &mut dyn rand::RngCore, vars: &[String]| {
        if !vars.is_empty() && rng.gen_bool(0.7) {
            Term::var(&vars[rng.gen_range(0..vars.len())])
        } else {
            Term::Int(rng.gen_range(1..4))
        }
    };
    if depth == 0 {
        return leaf(rng, vars);
    }
    let d = depth - 1;
    let choice = rng.gen_range(0..7);
    match choice {
        0 => leaf(rng, vars),
        1 if lam_ok => {
            let x = ["x", "y", "z"][rng.gen_range(0..3)].to_string();
            vars.push(x.clone());
            let body = tiny(rng, d, vars, lam_args, true);
            vars.pop();
            Term::lam(&x, body)
        }
        1 | 2 => {
            let f = tiny(rng, d, vars, lam_args, true);
            let a = tiny(rng, d, vars, lam_args, lam_args);
            Term::app(f, a)
        }
        3 => {
            let mut fields = vec![("a", tiny(rng, d, vars, lam_args, true))];
            if rng.gen_bool(0.5) {
                fields.push(("b", tiny(rng, d, vars, lam_args, true)));
            }
            Term::record(fields).expect("distinct labels")
        }
        4 => Term::sel(tiny(rng, d, vars, lam_args, true), ["a", "b"][rng.gen_range(0..2)]),
        5 => {
            let l = ["a", "b"][rng.gen_range(0..2)];
            let r = RecordLit::new([(Name::new(l), tiny(rng, d, vars, lam_args, true))]).expect("one field");
            Term::merge(tiny(rng, d, vars, lam_args, true), r)
        }
        _ => Term::plus(tiny(rng, d, vars, lam_args, true), tiny(rng, d, vars, lam_args, true)),
    }
}

/// Random one-step reduction pairs `(M, N)` with `M` reducing to `N` by
/// contracting one of its redexes.
pub fn reduction_pairs(count: usize, depth: usize, lam_args: bool, seed: u64) -> Vec<(Term, Term)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let m = tiny_term(&mut rng, depth, lam_args);
        let redexes = redex_positions(&m);
        let Some(r) = redexes.choose(&mut rng) else { continue };
        let (_, n) = contract_at(&m, &r.position).expect("listed redex");
        out.push((m, n));
    }
    out
}
