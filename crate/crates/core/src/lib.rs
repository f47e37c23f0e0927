//! An untyped lambda-calculus with records and a right-biased record merge,
//! together with an intersection-type assignment system for it and the
//! encodings of classes, mixins and mixin composition on top of it.

pub mod assign;
pub mod cli;
pub mod error;
pub mod oop;
pub mod reduce;
pub mod syntax;
pub mod types;

pub use error::{Error, Result};
