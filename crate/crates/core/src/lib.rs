//! Invariants of truncated polynomial rings `S / (x_1^Q, ..., x_n^Q)`, `Q = q^m`, under
//! groups of reflections fixing a hyperplane over a finite field.
//!
//! The crate computes the same quantities two ways: from closed-form Hilbert series
//! and from exact linear algebra over the field, and certifies the Groebner bases,
//! direct-sum decompositions, orbit counts and the rank-two free resolution that tie
//! the two together.
//!
//! Modules, bottom up:
//! - [`ff`]: prime and extension fields, dense/sparse elimination, Lucas binomials.
//! - [`poly`]: sparse multivariate polynomials with weighted graded-lex orders.
//! - [`group`]: normalized hyperplane-fixing reflection groups and their action.
//! - [`qseries`]: truncated power series, q-integers and (q,t)-binomials.
//! - [`invariants`]: basic invariants, Groebner generators, brute-force fixed spaces.
//! - [`groebner`]: subduction, S-pair certification, syzygies for `n = 2`.
//! - [`orbits`]: orbit counts on `(F_{q^m})^n` by union-find.

pub mod error;
pub mod ff;
pub mod groebner;
pub mod group;
pub mod invariants;
pub mod orbits;
pub mod poly;
pub mod qseries;

pub use error::{Error, Result};
pub use ff::{Field, FieldElem, MatrixFq};
pub use group::GroupSpec;
pub use poly::{Monomial, PolyRing, Polynomial};
pub use qseries::TruncatedSeries;
