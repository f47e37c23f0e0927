use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::Type;
use crate::syntax::Label;

/// A type in organized normal form: a set of paths, read as their
/// intersection. The empty set is `ω`.
///
/// Normal forms are shared and carry their hash, so cloning, hashing and
/// comparing equal copies are cheap.
#[derive(Clone, Default)]
pub struct TypeNF(Arc<Paths>);

#[derive(Default)]
struct Paths {
    set: BTreeSet<Path>,
    hash: u64,
}

impl PartialEq for TypeNF {
    fn eq(&self, other: &TypeNF) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.set == other.0.set)
    }
}

impl Eq for TypeNF {}

impl Hash for TypeNF {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for TypeNF {
    fn partial_cmp(&self, other: &TypeNF) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TypeNF {
    fn cmp(&self, other: &TypeNF) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.set.cmp(&other.0.set)
        }
    }
}

/// A non-`ω` type that is not an intersection.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    Atom(Label),
    Var(Label),
    /// `ρ → π` with `ρ` in normal form.
    Arrow(TypeNF, Arc<Path>),
    /// `{a : π}`, or `{a : ω}` when the body is `None`.
    Field(Label, Option<Arc<Path>>),
}

pub fn normalize_type(t: &Type) -> TypeNF {
    let mut out = BTreeSet::new();
    collect(t, &mut out);
    TypeNF::from_set(out)
}

fn collect(t: &Type, out: &mut BTreeSet<Path>) {
    match t {
        Type::Omega => {}
        Type::Const(n) => {
            out.insert(Path::Atom(n.clone()));
        }
        Type::Var(n) => {
            out.insert(Path::Var(n.clone()));
        }
        Type::Inter(a, b) => {
            collect(a, out);
            collect(b, out);
        }
        Type::Arrow(a, b) => {
            let dom = normalize_type(a);
            for p in normalize_type(b).0.set.iter().cloned() {
                out.insert(Path::Arrow(dom.clone(), Arc::new(p)));
            }
        }
        Type::Field(l, b) => {
            let body = normalize_type(b);
            if body.is_omega() {
                out.insert(Path::Field(l.clone(), None));
            }
            for p in body.0.set.iter().cloned() {
                out.insert(Path::Field(l.clone(), Some(Arc::new(p))));
            }
        }
    }
}

impl TypeNF {
    pub fn omega() -> TypeNF {
        TypeNF::default()
    }

    /// Builds a normal form from arbitrary paths, dropping `{a : ω}` where a
    /// more informative `a` path is present.
    pub fn from_set(mut set: BTreeSet<Path>) -> TypeNF {
        let informative: BTreeSet<Label> = set
            .iter()
            .filter_map(|p| match p {
                Path::Field(l, Some(_)) => Some(l.clone()),
                _ => None,
            })
            .collect();
        set.retain(|p| !matches!(p, Path::Field(l, None) if informative.contains(l)));
        let mut h = DefaultHasher::new();
        set.hash(&mut h);
        TypeNF(Arc::new(Paths { hash: h.finish(), set }))
    }

    pub fn from_paths(paths: impl IntoIterator<Item = Path>) -> TypeNF {
        TypeNF::from_set(paths.into_iter().collect())
    }

    pub fn is_omega(&self) -> bool {
        self.0.set.is_empty()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.0.set.iter()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.0.set.contains(p)
    }

    pub fn len(&self) -> usize {
        self.0.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.set.is_empty()
    }

    pub fn union(&self, other: &TypeNF) -> TypeNF {
        TypeNF::from_set(self.0.set.union(&other.0.set).cloned().collect())
    }

    /// Back to a plain type: the left-nested intersection of the paths.
    pub fn to_type(&self) -> Type {
        Type::inter_all(self.0.set.iter().map(Path::to_type))
    }

    /// Labels `a` with some path `{a : ...}`.
    pub fn field_labels(&self) -> BTreeSet<Label> {
        self.0
            .set
            .iter()
            .filter_map(|p| match p {
                Path::Field(l, _) => Some(l.clone()),
                _ => None,
            })
            .collect()
    }

    /// The normal form of `σ` such that the `a` paths of `self` are exactly
    /// those of `{a : σ}`. `None` if there are no `a` paths.
    pub fn field_body(&self, label: &Label) -> Option<TypeNF> {
        let mut found = false;
        let mut body = BTreeSet::new();
        for p in self.0.set.iter() {
            if let Path::Field(l, b) = p {
                if l == label {
                    found = true;
                    if let Some(b) = b {
                        body.insert((**b).clone());
                    }
                }
            }
        }
        found.then(|| TypeNF::from_set(body))
    }

    /// Arrow paths as (domain, codomain path) pairs.
    pub fn arrows(&self) -> impl Iterator<Item = (&TypeNF, &Path)> {
        self.0.set.iter().filter_map(|p| match p {
            Path::Arrow(d, c) => Some((d, c.as_ref())),
            _ => None,
        })
    }
}

impl Path {
    pub fn to_type(&self) -> Type {
        match self {
            Path::Atom(n) => Type::Const(n.clone()),
            Path::Var(n) => Type::Var(n.clone()),
            Path::Arrow(d, c) => Type::arrow(d.to_type(), c.to_type()),
            Path::Field(l, None) => Type::Field(l.clone(), Type::Omega.into()),
            Path::Field(l, Some(b)) => Type::Field(l.clone(), b.to_type().into()),
        }
    }
}

impl fmt::Display for TypeNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_type())
    }
}

impl fmt::Debug for TypeNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nf`{self}`")
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_type())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "path`{self}`")
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_type;
    use super::*;

    fn nf(s: &str) -> TypeNF {
        normalize_type(&parse_type(s).unwrap())
    }

    #[test]
    fn omega_is_empty() {
        assert!(nf("w").is_omega());
        assert!(nf("w & w").is_omega());
        assert!(nf("Int -> w").is_omega());
        assert!(nf("Int -> w & (Unit -> w)").is_omega());
    }

    #[test]
    fn field_of_omega_is_not_omega() {
        assert_eq!(nf("{a : w}").len(), 1);
        assert_eq!(nf("{a : w} & {a : Int}"), nf("{a : Int}"));
    }

    #[test]
    fn arrows_split_their_codomain() {
        assert_eq!(nf("Int -> Int & Unit"), nf("(Int -> Int) & (Int -> Unit)"));
        assert_eq!(nf("{a : Int & Unit}"), nf("{a : Int} & {a : Unit}"));
    }

    #[test]
    fn normal_form_is_idempotent() {
        for s in ["Int -> {a : w, b : Int}", "(w -> Int) & (Int -> w)", "{a : Int -> Int & w}"] {
            let n = nf(s);
            assert_eq!(normalize_type(&n.to_type()), n);
        }
    }
}
