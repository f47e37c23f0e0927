//! Bounded brute-force typing.
//!
//! The universe is every type built from `ω`, the given atoms and the given
//! labels with at most `depth` nested constructors, one representative per
//! equivalence class. For a term, the oracle computes the universe types
//! it has by derivations in which abstractions, records, arguments and
//! bound variables all receive universe types. The one exception is the
//! function or record being eliminated: in `(\x. M) N`, `{a = M}.a` or
//! `x N` its type may lie outside the universe, so that the typings of a
//! redex do not depend on how deep its function's type happens to be.
//! Context types given up front and the fixed types of literals and `(+)`
//! are admitted as leaves even when they lie outside the universe.
//!
//! Sets are bitsets over the universe, closed under (Sub) and (IntI).

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::Context;
use crate::syntax::{Label, Name, Term};
use crate::types::{normalize_type, Decider, Type, TypeNF};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct UniverseConfig {
    pub atoms: Vec<String>,
    pub labels: Vec<String>,
    pub depth: usize,
    /// Building fails with [`Error::UniverseTooLarge`] beyond this size.
    pub limit: usize,
}

impl UniverseConfig {
    pub fn new(atoms: &[&str], labels: &[&str], depth: usize) -> UniverseConfig {
        UniverseConfig {
            atoms: atoms.iter().map(|s| s.to_string()).collect(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            depth,
            limit: 3000,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> UniverseConfig {
        self.limit = limit;
        self
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1u64 << (i % 64)) != 0
    }

    fn or(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= *b;
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| (0..64).filter(move |b| word & (1u64 << b) != 0).map(move |b| w * 64 + b))
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// A pending elimination: an argument (by its typings) or a selection.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Elim {
    Arg(Bits),
    Sel(Label),
}

pub struct Universe {
    types: Vec<Type>,
    nfs: Vec<TypeNF>,
    index: HashMap<TypeNF, usize>,
    dec: Decider,
    /// `up[i]`: elements above element `i`.
    up: Vec<Bits>,
    meet: Vec<Vec<Option<usize>>>,
    arrow: Vec<Vec<Option<usize>>>,
    field: HashMap<Label, Vec<Option<usize>>>,
    memo: HashMap<(Context, Term, Vec<Elim>), Bits>,
}

impl Universe {
    pub fn build(cfg: &UniverseConfig) -> Result<Universe> {
        let mut dec = Decider::new();
        let mut types: Vec<Type> = Vec::new();
        let mut index: HashMap<TypeNF, usize> = HashMap::new();
        let mut add = |t: Type, dec: &mut Decider, types: &mut Vec<Type>| -> Result<()> {
            let key = dec.canonical(&normalize_type(&t));
            if let Entry::Vacant(slot) = index.entry(key) {
                if types.len() >= cfg.limit {
                    return Err(Error::UniverseTooLarge { size: types.len() + 1, limit: cfg.limit });
                }
                slot.insert(types.len());
                types.push(t);
            }
            Ok(())
        };
        add(Type::Omega, &mut dec, &mut types)?;
        for a in &cfg.atoms {
            add(Type::atom(a), &mut dec, &mut types)?;
        }
        for _ in 0..cfg.depth {
            let level = types.clone();
            for s in &level {
                for t in &level {
                    add(Type::arrow(s.clone(), t.clone()), &mut dec, &mut types)?;
                }
                for l in &cfg.labels {
                    add(Type::field(l, s.clone()), &mut dec, &mut types)?;
                }
            }
            for (i, s) in level.iter().enumerate() {
                for t in &level[i + 1..] {
                    add(Type::inter(s.clone(), t.clone()), &mut dec, &mut types)?;
                }
            }
        }
        let n = types.len();
        let nfs: Vec<TypeNF> = types.iter().map(normalize_type).collect();
        let mut up = vec![Bits::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if dec.le_nf(&nfs[i], &nfs[j]) {
                    up[i].set(j);
                }
            }
        }
        let mut u = Universe {
            types,
            nfs: nfs.clone(),
            index,
            dec,
            up,
            meet: Vec::new(),
            arrow: Vec::new(),
            field: HashMap::new(),
            memo: HashMap::new(),
        };
        let mut meet = vec![vec![None; n]; n];
        let mut arrow = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                if j >= i {
                    let m = u.lookup_nf(&nfs[i].union(&nfs[j]));
                    meet[i][j] = m;
                    meet[j][i] = m;
                }
                arrow[i][j] = u.lookup(&Type::arrow(u.types[i].clone(), u.types[j].clone()));
            }
        }
        for l in &cfg.labels {
            let row = (0..n).map(|j| u.lookup(&Type::field(l, u.types[j].clone()))).collect();
            u.field.insert(Name::new(l), row);
        }
        u.meet = meet;
        u.arrow = arrow;
        Ok(u)
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn types(&self) -> &[Type] {
        &self.types
    }

    fn lookup_nf(&mut self, nf: &TypeNF) -> Option<usize> {
        let key = self.dec.canonical(nf);
        self.index.get(&key).copied()
    }

    /// The element equivalent to `t`, if any.
    pub fn lookup(&mut self, t: &Type) -> Option<usize> {
        self.lookup_nf(&normalize_type(t))
    }

    /// Closes under (Sub) and (IntI) within the universe; always contains `ω`.
    fn close(&self, mut s: Bits) -> Bits {
        s.set(0);
        loop {
            let mut next = s.clone();
            for i in s.ones() {
                next.or(&self.up[i]);
            }
            let members: Vec<usize> = next.ones().collect();
            for (k, &i) in members.iter().enumerate() {
                for &j in &members[k + 1..] {
                    if let Some(m) = self.meet[i][j] {
                        next.set(m);
                    }
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// The universe-restricted typings of `t` under `ctx`.
    pub fn derivable(&mut self, ctx: &Context, t: &Term) -> Bits {
        self.derive(ctx, t, &[])
    }

    /// Typings of `t` applied to, or selected by, the eliminators in `stack`
    /// (innermost last).
    fn derive(&mut self, ctx: &Context, t: &Term, stack: &[Elim]) -> Bits {
        let fv = t.free_vars();
        let key = (ctx.restrict(fv.iter()), t.clone(), stack.to_vec());
        if let Some(b) = self.memo.get(&key) {
            return b.clone();
        }
        let ctx = key.0.clone();
        let (last, rest) = match stack.split_last() {
            Some((e, rest)) => (Some(e), rest),
            None => (None, stack),
        };
        let s = match (t, last) {
            (Term::App(f, a), _) => {
                let sa = self.derive(&ctx, a, &[]);
                let mut st = stack.to_vec();
                st.push(Elim::Arg(sa));
                self.derive(&ctx, f, &st)
            }
            (Term::Sel(m, a), _) => {
                let mut st = stack.to_vec();
                st.push(Elim::Sel(a.clone()));
                self.derive(&ctx, m, &st)
            }
            (Term::Lam(x, body), Some(Elim::Arg(sa))) => {
                let mut acc = Bits::new(self.len());
                for i in sa.ones() {
                    let inner = ctx.extend(x, self.types[i].clone());
                    acc.or(&self.derive(&inner, body, rest));
                }
                self.close(acc)
            }
            (Term::Rec(r), Some(Elim::Sel(a))) if r.has(a) => {
                let m = r.get(a).expect("label present").clone();
                self.derive(&ctx, &m, rest)
            }
            (Term::Merge(m, r), Some(Elim::Sel(a))) => match r.get(a) {
                Some(n) => {
                    let n = n.clone();
                    self.derive(&ctx, &n, rest)
                }
                None => {
                    let m = m.clone();
                    self.derive(&ctx, &m, stack)
                }
            },
            _ => {
                let heads = self.head_types(&ctx, t);
                self.eliminate(heads, stack)
            }
        };
        self.memo.insert(key, s.clone());
        s
    }

    /// The types of a term that is not itself an elimination: a single
    /// minimal type where there is one, otherwise the universe typings.
    fn head_types(&mut self, ctx: &Context, t: &Term) -> Vec<TypeNF> {
        let single = match t {
            Term::Var(x) => Some(ctx.get(x).cloned().unwrap_or(Type::Omega)),
            Term::Int(_) => Some(Type::int()),
            Term::Unit => Some(Type::unit()),
            Term::Plus => Some(Type::arrows([Type::int(), Type::int()], Type::int())),
            _ => None,
        };
        if let Some(ty) = single {
            return vec![normalize_type(&ty)];
        }
        let bits = self.intro(ctx, t);
        bits.ones().map(|i| self.nfs[i].clone()).collect()
    }

    /// Applies the eliminators to every head type and collects the universe
    /// types above the results.
    fn eliminate(&mut self, heads: Vec<TypeNF>, stack: &[Elim]) -> Bits {
        let mut cur: std::collections::BTreeSet<TypeNF> = heads.into_iter().collect();
        for e in stack.iter().rev() {
            let mut next = std::collections::BTreeSet::new();
            for phi in &cur {
                match e {
                    Elim::Arg(sa) => {
                        for i in sa.ones() {
                            let rho = self.nfs[i].clone();
                            next.insert(self.apply(phi, &rho));
                        }
                    }
                    Elim::Sel(a) => {
                        next.insert(phi.field_body(a).unwrap_or_else(TypeNF::omega));
                    }
                }
            }
            cur = next;
        }
        let mut acc = Bits::new(self.len());
        for phi in &cur {
            for j in 0..self.len() {
                if !acc.get(j) && self.dec.le_nf(phi, &self.nfs[j]) {
                    acc.set(j);
                }
            }
        }
        self.close(acc)
    }

    /// The least type of `M N` for `M : phi` and `N : rho`.
    fn apply(&mut self, phi: &TypeNF, rho: &TypeNF) -> TypeNF {
        let arrows: Vec<(TypeNF, TypeNF)> =
            phi.arrows().map(|(d, c)| (d.clone(), TypeNF::from_paths([c.clone()]))).collect();
        let mut out = TypeNF::omega();
        for (d, c) in arrows {
            if self.dec.le_nf(rho, &d) {
                out = out.union(&c);
            }
        }
        out
    }

    /// Universe typings of abstractions, records and merges by their
    /// introduction rules.
    fn intro(&mut self, ctx: &Context, t: &Term) -> Bits {
        let n = self.len();
        let mut base = Bits::new(n);
        match t {
            Term::Lam(x, body) => {
                for i in 0..n {
                    let inner = ctx.extend(x, self.types[i].clone());
                    let sb = self.derive(&inner, body, &[]);
                    for j in sb.ones() {
                        if let Some(k) = self.arrow[i][j] {
                            base.set(k);
                        }
                    }
                }
            }
            Term::Rec(r) => {
                for (a, m) in r.fields() {
                    let sm = self.derive(ctx, m, &[]);
                    if let Some(row) = self.field.get(a) {
                        for j in sm.ones() {
                            if let Some(k) = row[j] {
                                base.set(k);
                            }
                        }
                    }
                }
            }
            Term::Merge(m, r) => {
                let sm = self.derive(ctx, m, &[]);
                let sr = self.derive(ctx, &Term::Rec(r.clone()), &[]);
                for (a, row) in &self.field {
                    let side = if r.has(a) { &sr } else { &sm };
                    for k in row.iter().flatten() {
                        if side.get(*k) {
                            base.set(*k);
                        }
                    }
                }
            }
            _ => {}
        }
        self.close(base)
    }

    pub fn typeset(&mut self, ctx: &Context, t: &Term) -> TypeSet {
        TypeSet { bits: self.derivable(ctx, t), types: self.types.clone() }
    }

    /// Is `t` (up to equivalence) in the set?
    pub fn member(&mut self, set: &TypeSet, t: &Type) -> bool {
        self.lookup(t).is_some_and(|i| set.bits.get(i))
    }
}

/// A set of universe types.
#[derive(Clone, Debug)]
pub struct TypeSet {
    pub bits: Bits,
    types: Vec<Type>,
}

impl TypeSet {
    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn types(&self) -> impl Iterator<Item = &Type> {
        self.bits.ones().map(|i| &self.types[i])
    }
}

impl PartialEq for TypeSet {
    fn eq(&self, other: &TypeSet) -> bool {
        self.bits == other.bits
    }
}

/// Every universe type derivable for `t`, over the atoms given and the
/// labels occurring in `t`.
pub fn enumerate_types(ctx: &Context, t: &Term, atoms: &[&str], depth: usize) -> Result<Vec<Type>> {
    let labels = term_labels(t);
    let labels: Vec<&str> = labels.iter().map(|l| l.as_str()).collect();
    let mut u = Universe::build(&UniverseConfig::new(atoms, &labels, depth))?;
    Ok(u.typeset(ctx, t).types().cloned().collect())
}

/// Labels of record literals and selections in `t`.
pub fn term_labels(t: &Term) -> Vec<Label> {
    let mut out = std::collections::BTreeSet::new();
    fn go(t: &Term, out: &mut std::collections::BTreeSet<Label>) {
        match t {
            Term::Rec(r) | Term::Merge(_, r) => out.extend(r.labels()),
            Term::Sel(_, l) => {
                out.insert(l.clone());
            }
            _ => {}
        }
        t.children().into_iter().for_each(|c| go(c, out));
    }
    go(t, &mut out);
    out.into_iter().collect()
}
