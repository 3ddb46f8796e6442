//! Exact restricted partition functions `W(s, d)`, the number of ways to
//! write `s` as a nonnegative integer combination of the summands
//! `d_1..d_m`, in closed form as a sum of Sylvester waves.
//!
//! Each wave is a quasipolynomial built from higher-order Bernoulli
//! polynomials and an integer-valued periodic weight; an independent
//! route through Eulerian numbers over cyclotomic fields and a
//! dynamic-programming counter cross-check it.

pub mod bernoulli;
pub mod cyclotomic;
pub mod error;
pub mod eulerian;
pub mod numtheory;
pub mod oracle;
pub mod polyalg;
pub mod waves;

pub use error::{Error, Result};
pub use oracle::{dp_count, series_count, CountTable};
pub use polyalg::{DensePolynomial, Field, Rational};
pub use waves::{
    assemble, evaluate, polynomial_part, wave_bernoulli, wave_eulerian, Quasipolynomial,
    QuasipolynomialJson, SummandSet,
};
