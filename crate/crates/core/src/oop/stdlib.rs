//! The example classes and mixins, with the types they are known to have.
//!
//! Two generations are provided. The first (`point3`, `point2d`,
//! `rec_point`, `movable3`) reads and writes the state field `X` directly.
//! The second (`point4`, `movable4`, `set_adapter4`) only touches state
//! through `get` and `set`, returns `(new state, result)` pairs from state
//! updates, and gives every class a `new` method.

use super::{
    class_type, compose_mixins, elaborate_class, elaborate_mixin, object_term, rec_class_type, term, y_comb, ClassDef,
    ClassTypeDef, MixinDef,
};
use crate::assign::{Context, Hints};
use crate::reduce::{normalize, NormalizeResult};
use crate::syntax::{Name, Term};
use crate::types::{parse_type, Type};
use crate::Result;

fn ty(s: &str) -> Type {
    parse_type(s).expect("library type")
}

pub fn point3_def() -> ClassDef {
    ClassDef::new("Point", &["x"], &[("X", "x"), ("get", "self.X")]).expect("Point")
}

/// `\x self. {X = x, get = self.X}`
pub fn point3() -> Term {
    elaborate_class(&point3_def()).expect("Point")
}

/// Adds a second coordinate to a one-dimensional point class:
/// `\super x y self. let c = Y (super x) in c ++ {Y = y, get = (c.X, self.Y)}`.
pub fn point2d_def() -> MixinDef {
    MixinDef::new("Point2D", &["x", "y"], &[("Y", "y"), ("get", "(c.X, self.Y)")])
        .expect("Point2D")
        .forwarding(&["x"])
        .binding_super_as("c")
}

pub fn point2d() -> Term {
    elaborate_mixin(&point2d_def()).expect("Point2D")
}

/// `\class. Point`, a recursive class that ignores `class`.
pub fn rec_point() -> Term {
    Term::lam("class", point3())
}

pub fn movable3_def() -> MixinDef {
    MixinDef::new("Movable", &["x"], &[("move", r"\dx. Y (class (self.X + dx))")]).expect("Movable").recursive()
}

/// `\super class x self. Y ((Y super) x) ++ {move = \dx. Y (class (self.X + dx))}`
///
/// `class` is bound to the already-closed class `Y C`, so a single fixed
/// point builds the moved object.
pub fn movable3() -> Term {
    elaborate_mixin(&movable3_def()).expect("Movable")
}

/// The variant whose `move` takes a second fixed point of `class`. It does
/// not compute the moved point: `Y class` unfolds `class` with itself as
/// the state argument.
pub fn movable3_double_fixpoint() -> Term {
    term(r"\super class x self. Y ((Y super) x) ++ {move = \dx. Y ((Y class) (self.X + dx))}").expect("Movable")
}

pub fn point4_def() -> ClassDef {
    ClassDef::new("Point", &["x"], &[("get", "x"), ("set", r"\x'. (x', ())"), ("shift", "self.set (self.get + 1)")])
        .expect("Point")
        .with_new()
}

/// `\class x self. {get = x, set = \x'. (x', ()), shift = self.set (self.get + 1), new = \x'. Y (class x')}`
pub fn point4() -> Term {
    elaborate_class(&point4_def()).expect("Point")
}

pub fn movable4_def() -> MixinDef {
    MixinDef::new("Movable", &["x"], &[("move", r"\dx. c.set (c.get + dx)")])
        .expect("Movable")
        .binding_super_as("c")
        .with_new()
}

pub fn movable4() -> Term {
    elaborate_mixin(&movable4_def()).expect("Movable")
}

pub fn set_adapter4_def() -> MixinDef {
    MixinDef::new("SetAdapter", &["x"], &[("set", r"\p. c.set p.get")])
        .expect("SetAdapter")
        .binding_super_as("c")
        .with_new()
}

pub fn set_adapter4() -> Term {
    elaborate_mixin(&set_adapter4_def()).expect("SetAdapter")
}

/// `\x. x ++ {label = value}`
pub fn record_mixin(label: &str, value: &str) -> Term {
    term(&format!(r"\x. x ++ {{{label} = {value}}}")).expect("record mixin")
}

/// `n1 : S1, n2 : S2, n3 : S3`
pub fn record_mixin_context() -> Context {
    Context::from_pairs([("n1", Type::atom("S1")), ("n2", Type::atom("S2")), ("n3", Type::atom("S3"))])
}

/// Instance types, class types and the recursive class type of one class.
#[derive(Clone, Debug)]
pub struct Family {
    pub sigma: Vec<Type>,
    /// The type of the added members, for mixins.
    pub sigma_delta: Option<Type>,
    pub kappa: Vec<Type>,
    pub kappa_prime: Type,
}

pub fn sigma3() -> (Type, Type) {
    (ty("{X : Int}"), ty("{X : Int, get : Int}"))
}

/// `Int -> (ω -> σ1) & (σ1 -> σ2)`
pub fn kappa3() -> Type {
    let (s1, s2) = sigma3();
    class_type(&ClassTypeDef::new(vec![Type::int()], vec![s1, s2])).expect("class type")
}

/// The type of the fixed-point combinator at the instantiation used for
/// `Point 3`.
pub fn y_point_type() -> Type {
    let (s1, s2) = sigma3();
    Type::arrow(super::chain_type(&[s1, s2.clone()]), s2)
}

pub fn point2d_type() -> Type {
    let xy = ty("{X : Int, Y : Int}");
    let full = ty("{X : Int, Y : Int, get : Int * Int}");
    class_type(&ClassTypeDef::new(vec![Type::int(), Type::int()], vec![xy, full])).expect("class type")
}

/// `Int -> (ω -> σ1) & (σ1 -> σ2 & {move : Int -> σ2})`
pub fn kappa3_movable() -> Type {
    let (s1, s2) = sigma3();
    let moved = Type::inter(s2.clone(), Type::field("move", Type::arrow(Type::int(), s2)));
    class_type(&ClassTypeDef::new(vec![Type::int()], vec![s1, moved])).expect("class type")
}

/// `(ω -> κ) -> (ω -> κ) & (κ -> κ2)`
pub fn movable3_type() -> Type {
    let k1 = kappa3();
    let rec = Type::arrow(Type::Omega, k1.clone());
    Type::arrow(rec.clone(), Type::inter(rec, Type::arrow(k1, kappa3_movable())))
}

fn class_types(sigma: &[Type], lens: &[usize]) -> Vec<Type> {
    lens.iter()
        .map(|&n| class_type(&ClassTypeDef::new(vec![Type::int()], sigma[..n].to_vec())).expect("class type"))
        .collect()
}

pub fn point4_family() -> Family {
    let s1 = ty("{get : Int, set : Int -> Int * Unit, shift : w, new : Int -> w}");
    let s2 = ty("{get : Int, set : Int -> Int * Unit, shift : Int * Unit, new : Int -> w}");
    let s3 = Type::record([
        ("get", Type::int()),
        ("set", ty("Int -> Int * Unit")),
        ("shift", ty("Int * Unit")),
        ("new", Type::arrow(Type::int(), s2.clone())),
    ]);
    let sigma = vec![s1, s2, s3];
    let kappa = class_types(&sigma, &[2, 3]);
    let kappa_prime = rec_class_type(&kappa, true).expect("recursive class type");
    Family { sigma, sigma_delta: None, kappa, kappa_prime }
}

pub fn movable4_family() -> Family {
    let base = ty("{get : Int, set : Int -> Int * Unit, shift : Int * Unit}");
    let s1 = Type::inter(base.clone(), ty("{move : Int -> Int * Unit, new : Int -> w}"));
    let delta = Type::record([("move", ty("Int -> Int * Unit")), ("new", Type::arrow(Type::int(), s1.clone()))]);
    let s2 = Type::inter(base, delta.clone());
    let sigma = vec![s1, s2];
    let kappa = class_types(&sigma, &[1, 2]);
    let kappa_prime = rec_class_type(&kappa, true).expect("recursive class type");
    Family { sigma, sigma_delta: Some(delta), kappa, kappa_prime }
}

pub fn set_adapter4_family() -> Family {
    let base = ty("{get : Int, shift : Int * Unit, move : Int -> Int * Unit}");
    let set = ty("{get : Int} -> Int * Unit");
    let s1 = Type::inter(base.clone(), Type::record([("set", set.clone()), ("new", ty("Int -> w"))]));
    let s2 =
        Type::inter(base.clone(), Type::record([("set", set.clone()), ("new", Type::arrow(Type::int(), s1.clone()))]));
    let delta = Type::record([("set", set), ("new", Type::arrow(Type::int(), s2.clone()))]);
    let s3 = Type::inter(base, delta.clone());
    let sigma = vec![s1, s2, s3];
    let kappa = class_types(&sigma, &[1, 2, 3]);
    let kappa_prime = rec_class_type(&kappa, true).expect("recursive class type");
    Family { sigma, sigma_delta: Some(delta), kappa, kappa_prime }
}

/// A library term with a type it is known to have.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub description: &'static str,
    pub term: Term,
    pub ctx: Context,
    pub goal: Type,
    pub hints: Hints,
}

impl Entry {
    fn new(name: &'static str, description: &'static str, term: Term, goal: Type) -> Entry {
        Entry { name, description, term, ctx: Context::new(), goal, hints: Hints::new() }
    }

    fn hints(mut self, hints: Hints) -> Entry {
        self.hints = hints;
        self
    }
}

/// `(SetAdapter ∘ Movable)(Point)`
pub fn composed_class() -> Term {
    Term::app(compose_mixins(&set_adapter4(), &movable4()), point4())
}

pub fn composition_hints() -> Hints {
    let (p, m, s) = (point4_family(), movable4_family(), set_adapter4_family());
    Hints::new()
        .term(&point4(), p.kappa_prime.clone())
        .term(&movable4(), Type::arrow(p.kappa_prime.clone(), m.kappa_prime.clone()))
        .term(&set_adapter4(), Type::arrow(m.kappa_prime, s.kappa_prime))
}

pub fn entries() -> Vec<Entry> {
    let (p, m, s) = (point4_family(), movable4_family(), set_adapter4_family());
    vec![
        Entry::new("point", "one-dimensional point class", point3(), kappa3()),
        Entry::new("y-point", "fixed-point combinator at the Point instantiation", y_comb(), y_point_type()),
        Entry::new(
            "point-object",
            "the object Y (Point 3)",
            object_term(&point3(), &[Term::Int(3)], false),
            sigma3().1,
        ),
        Entry::new("point2d", "Point2D applied to Point", Term::app(point2d(), point3()), point2d_type())
            .hints(Hints::new().term(&point3(), kappa3())),
        Entry {
            ctx: record_mixin_context(),
            ..Entry::new(
                "record-mixin",
                "the mixin \\x. x ++ {a = n1}",
                record_mixin("a", "n1"),
                ty("{b : S2} -> {a : S1, b : S2}"),
            )
        },
        Entry::new(
            "rec-point",
            "Point as a vacuously recursive class",
            rec_point(),
            Type::arrow(Type::Omega, kappa3()),
        ),
        Entry::new("movable", "Movable mixin with direct state access", movable3(), movable3_type()),
        Entry::new("point-rec", "Point with get/set/shift/new", point4(), p.kappa_prime.clone()),
        Entry::new(
            "movable-rec",
            "Movable with get/set/shift/new",
            movable4(),
            Type::arrow(p.kappa_prime.clone(), m.kappa_prime.clone()),
        ),
        Entry::new(
            "setadapter-rec",
            "SetAdapter with get/set/shift/new",
            set_adapter4(),
            Type::arrow(m.kappa_prime.clone(), s.kappa_prime.clone()),
        ),
        Entry::new("composition", "(SetAdapter . Movable)(Point)", composed_class(), s.kappa_prime.clone())
            .hints(composition_hints()),
    ]
}

pub fn entry(name: &str) -> Option<Entry> {
    entries().into_iter().find(|e| e.name == name)
}

/// The usage program, with the mixins composed as `outer ∘ inner`.
pub fn usage_program(outer: &Term, inner: &Term) -> Term {
    let src = r"
        let p1 = Y ((Y C) 1) in
        let p2 = Y ((Y Point) 2) in
        let (x, r) = p1.set p2 in
        let p1' = p1.new x in
        let (x', r') = p1'.move 1 in
        let p1'' = p1'.new x' in
        p1''.get";
    let body = term(src).expect("usage program");
    let class = Term::app(compose_mixins(outer, inner), point4());
    body.subst(&Name::new("C"), &class).subst(&Name::new("Point"), &point4())
}

/// Evaluates the usage program with `SetAdapter ∘ Movable`.
pub fn run_usage_pipeline(fuel: usize) -> NormalizeResult {
    normalize(&usage_program(&set_adapter4(), &movable4()), fuel)
}

/// The same program with the composition order swapped.
pub fn run_usage_pipeline_swapped(fuel: usize) -> NormalizeResult {
    normalize(&usage_program(&movable4(), &set_adapter4()), fuel)
}

/// `(movable.move 4)` for `movable = Y ((Y (Movable RecPoint)) 3)`.
pub fn movable_move(mixin: &Term, dx: i64) -> Term {
    let class = Term::app(mixin.clone(), rec_point());
    let movable = object_term(&class, &[Term::Int(3)], true);
    Term::app(Term::sel(movable, "move"), Term::Int(dx))
}

/// The library term called `name`: `Y`, `B`, `Point3`, `Point2D`,
/// `RecPoint`, `Movable3`, `Point`, `Movable` or `SetAdapter`.
pub fn library(name: &str) -> Option<Term> {
    Some(match name {
        "Y" => y_comb(),
        "B" => super::b_comb(),
        "Point3" => point3(),
        "Point2D" => point2d(),
        "RecPoint" => rec_point(),
        "Movable3" => movable3(),
        "Point" => point4(),
        "Movable" => movable4(),
        "SetAdapter" => set_adapter4(),
        _ => return None,
    })
}

/// Parses source in which the library names may occur free.
pub fn library_term(src: &str) -> Result<Term> {
    let mut t = crate::syntax::parse_term(src)?;
    for x in t.free_vars() {
        if let Some(def) = library(x.as_str()) {
            t = t.subst(&x, &def);
        }
    }
    Ok(t)
}
