//! Exact-arithmetic computations with nilpotent orbits of simple Lie algebras.
//!
//! The crate is organised around five layers:
//!
//! * [`linalg`] — dense exact linear algebra over a generic exact scalar
//!   (rank, kernels, solving, Jordan types of nilpotent matrices);
//! * [`orbits`] — partition calculus for nilpotent orbits of the classical
//!   types (validity, dimensions, closure order, weighted Dynkin diagrams,
//!   heights, fundamental groups, Hasse diagrams);
//! * [`models`] — explicit rational matrix models of the classical algebras,
//!   of `spin_7` inside `so_8` and of `g_2` inside `so_7`, with sl2-triples
//!   and orbit identification;
//! * [`embeddings`] — the registry of subalgebra pairs `h ⊂ g` under study,
//!   with orthogonal complements, involutions and Satake data;
//! * [`engine`] — the verification engine that audits each pair and
//!   regenerates the golden tables kept in [`data`].
//!
//! All arithmetic is exact: the concrete scalar used throughout is
//! [`Rat`] (arbitrary-precision rationals), and no operation ever rounds.

pub mod data;
pub mod embeddings;
pub mod engine;
pub mod linalg;
pub mod models;
pub mod orbits;
pub mod rng;

/// The exact scalar used by the whole crate.
pub type Rat = num_rational::BigRational;

/// Dense matrix over [`Rat`].
pub type RatMatrix = linalg::Matrix<Rat>;

/// Coordinate vector over [`Rat`].
pub type RatVector = Vec<Rat>;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for the rational `n / d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
