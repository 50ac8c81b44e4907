//! Exact computer algebra for graded Chow ring presentations: polynomials
//! over the rationals, Groebner bases with certificates, stratified gluing,
//! Chern class calculus and torus-equivariant pushforward formulas.

pub mod catalog;
pub mod chern;
pub mod chowfile;
pub mod equivariant;
pub mod glue;
pub mod groebner;
pub mod poly;
mod rational;
pub mod scenario;

pub use poly::{parse_polynomial, substitute, GradedRing, Monomial, PolyError, Polynomial, RingMap, Variable};
pub use rational::{is_23_smooth, ParseRationalError, Rational};
