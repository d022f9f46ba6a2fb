//! Exact Ehrhart-theoretic invariants of one-row Hermite normal form simplices.
//!
//! A one-row simplex is given by a row `(a_1, ..., a_{d-1}, N)` with
//! `0 <= a_i < N`; its parallelepiped group is cyclic of order `N` and every
//! invariant here is computed by walking that group with exact integer
//! arithmetic. The crate provides
//!
//! * polynomial and distribution types with unimodality predicates
//!   ([`poly`], [`distribution`]),
//! * the simplex data model and group machinery ([`simplex`]),
//! * h*-, local h*-, boundary and interior polynomials, Stapledon
//!   decompositions and IDP witness search ([`invariants`]),
//! * closed forms for the all-ones and geometric-sequence rows ([`families`]),
//! * floor/ceiling identities ([`identities`]) and the large-volume scaling
//!   results built on them ([`asymptotics`]),
//! * an experiment harness with persistence and plot-data output
//!   ([`harness`]).

pub mod asymptotics;
pub mod distribution;
mod error;
pub mod families;
pub mod harness;
pub mod identities;
pub mod invariants;
pub mod numtheory;
pub mod poly;
pub mod simplex;

pub use distribution::{to_distribution, tv_distance, CoefficientDistribution};
pub use error::{Error, Result};
pub use invariants::{hstar, local_hstar, IdpWitness, StapledonDecomposition};
pub use poly::{is_palindromic, is_strictly_unimodal, is_unimodal, IntPolynomial};
pub use simplex::{GeneralHnfSimplex, GroupElementView, NormalizedVolume, OneRowSimplex};
