//! Exact calculus of Frobenius-semisimple Weil-Deligne parameters.
//!
//! The symbolic layer ([`wd`]) works with multisets of indecomposables
//! `V_{α,t}`; the concrete layer ([`concrete`]) realizes the same modules as
//! eigenvalue-graded spaces with explicit nilpotent maps and serves as an
//! independent matrix-level check of the symbolic rules.

pub mod concrete;
pub mod error;
pub mod expr;
pub mod gen;
pub mod gl2;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod rat;
pub mod spectrum;
pub mod wd;
pub mod zeta;
pub mod weil;

pub use error::{Error, Result};
pub use rat::Rational;
pub use wd::{Indecomposable, SSModule};
pub use weil::{ResidueCard, WeilMonomial, WeilNumber};
