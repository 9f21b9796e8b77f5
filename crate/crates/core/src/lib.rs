//! Exact Bell and Stirling towers with three independent routes to every
//! Dobinski-type identity.
//!
//! * [`umbral`]: admissible ψ-sequences, ψ-factorials, classical and Carlitz
//!   q-Stirling tables, and the ψ-Stirling consistency diagnostic.
//! * [`dobinski`]: ψ-exponentials, ψ-Poisson distributions, moment
//!   functionals, certified Dobinski series and the Rota-umbral Bell numbers.
//! * [`cigl`]: set-partition enumeration and the Cigler block-of-zero statistic.
//! * [`operator`]: the conjugated number operator acting on exponential polynomials.
//!
//! Every scalar is an exact [`Rational`]; infinite series come back as
//! [`CertifiedValue`] intervals.

pub mod cigl;
pub mod dobinski;
pub mod error;
pub mod operator;
pub mod poly;
pub mod rational;
pub mod series;
pub mod umbral;

pub use error::{Error, Result};
pub use poly::{Poly, QPolynomial, XPolynomial};
pub use rational::Rational;
pub use series::{certified_sum, certified_sum_with, CertifiedValue, SumConfig};
pub use umbral::PsiSequence;
