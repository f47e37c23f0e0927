use std::collections::{BTreeSet, HashMap};

use super::nf::{normalize_type, Path, TypeNF};
use super::Type;

/// Decides `σ ≤ τ` on normal forms.
///
/// `σ ≤ τ` holds iff every path of `τ` is below `σ`. For a single path:
/// atoms and variables must occur in `σ`; `ρ → π` needs the intersection of
/// the codomains of those arrows of `σ` whose domain lies above `ρ` to be
/// below `π`; `{a : π}` needs the same of the bodies of the `a` fields.
///
/// Results are cached, so one decider should be reused across related
/// queries.
#[derive(Default)]
pub struct Decider {
    memo: HashMap<(TypeNF, Path), bool>,
}

impl Decider {
    pub fn new() -> Decider {
        Decider::default()
    }

    pub fn le(&mut self, s: &Type, t: &Type) -> bool {
        self.le_nf(&normalize_type(s), &normalize_type(t))
    }

    pub fn le_nf(&mut self, s: &TypeNF, t: &TypeNF) -> bool {
        s == t || t.paths().all(|p| self.le_path(s, p))
    }

    pub fn eq(&mut self, s: &Type, t: &Type) -> bool {
        let (s, t) = (normalize_type(s), normalize_type(t));
        self.le_nf(&s, &t) && self.le_nf(&t, &s)
    }

    pub fn le_path(&mut self, s: &TypeNF, p: &Path) -> bool {
        if s.contains(p) {
            return true;
        }
        if let Some(&r) = self.memo.get(&(s.clone(), p.clone())) {
            return r;
        }
        let r = match p {
            Path::Atom(_) | Path::Var(_) => s.paths().any(|q| q == p),
            Path::Arrow(rho, pi) => {
                let arrows: Vec<(TypeNF, Path)> = s.arrows().map(|(d, c)| (d.clone(), c.clone())).collect();
                let mut cods = BTreeSet::new();
                for (dom, cod) in arrows {
                    if self.le_nf(rho, &dom) {
                        cods.insert(cod);
                    }
                }
                self.le_path(&TypeNF::from_set(cods), pi)
            }
            Path::Field(a, None) => s.paths().any(|q| matches!(q, Path::Field(l, _) if l == a)),
            Path::Field(a, Some(pi)) => match s.field_body(a) {
                Some(body) => self.le_path(&body, pi),
                None => false,
            },
        };
        self.memo.insert((s.clone(), p.clone()), r);
        r
    }

    /// A canonical representative of the equivalence class of `t`: arrow
    /// domains are canonicalized recursively and every path implied by
    /// another path is dropped. Equivalent types have equal canonical forms.
    pub fn canonical(&mut self, t: &TypeNF) -> TypeNF {
        let paths: Vec<Path> = t.paths().map(|p| self.canonical_path(p)).collect();
        let mut keep = BTreeSet::new();
        for (i, p) in paths.iter().enumerate() {
            let implied = paths
                .iter()
                .enumerate()
                .any(|(j, q)| j != i && q != p && self.le_path(&TypeNF::from_paths([q.clone()]), p));
            if !implied {
                keep.insert(p.clone());
            }
        }
        TypeNF::from_set(keep)
    }

    fn canonical_path(&mut self, p: &Path) -> Path {
        match p {
            Path::Arrow(d, c) => Path::Arrow(self.canonical(d), std::sync::Arc::new(self.canonical_path(c))),
            Path::Field(l, Some(b)) => Path::Field(l.clone(), Some(std::sync::Arc::new(self.canonical_path(b)))),
            p => p.clone(),
        }
    }
}

pub fn subtype(s: &Type, t: &Type) -> bool {
    Decider::new().le(s, t)
}

pub fn subtype_nf(s: &TypeNF, t: &TypeNF) -> bool {
    Decider::new().le_nf(s, t)
}

pub fn type_eq(s: &Type, t: &Type) -> bool {
    Decider::new().eq(s, t)
}

/// `t` is equivalent to `ω`.
pub fn is_omega_equiv(t: &Type) -> bool {
    match t {
        Type::Omega => true,
        Type::Var(_) | Type::Const(_) | Type::Field(..) => false,
        Type::Inter(a, b) => is_omega_equiv(a) && is_omega_equiv(b),
        Type::Arrow(_, b) => is_omega_equiv(b),
    }
}
