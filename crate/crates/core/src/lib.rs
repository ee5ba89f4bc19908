//! How misleading can a battery of individually fair tests be?
//!
//! Take an n-by-n matrix `A` whose rows are unit vectors and feed it every
//! sign vector `x` in `{-1,+1}^n`. Each coordinate of `Ax` is a fair
//! normalized test of the underlying coin flips, yet the *largest* coordinate
//! is biased upward — averaging it over the whole cube gives the objective
//!
//! ```text
//! beta(A) = 2^-n * sum over x in {-1,1}^n of max_i |<a_i, x>|
//! ```
//!
//! This crate evaluates beta exactly (Gray-code enumeration with antipodal
//! halving and deterministic parallel reduction) or by seeded Monte Carlo,
//! ships the catalog of best known matrices for n <= 8 together with the
//! recursive Haar family, implements the stochastic hill-climb used to find
//! them, matches converged values to exact surd forms, and provides the
//! subgaussian and exact-binomial tail bounds that bracket the objective.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod eval;
pub mod io;
pub mod matrix;
pub mod mc;
pub mod rng;
pub mod search;
pub mod surd;

pub use error::{Error, Result};
pub use eval::{
    beta_exact, beta_exact_with_limit, BetaEstimate, Method, Strategy, ABSOLUTE_MAX_EXHAUSTIVE_N,
    DEFAULT_MAX_EXHAUSTIVE_N,
};
pub use matrix::{
    apply_symmetry, linf_image, normalize_columns, normalize_rows, SignedPermutation, TestMatrix,
};
pub use mc::beta_monte_carlo;
pub use search::{
    hill_climb, perturb, run_restarts, seed_from_orthogonal, EvaluatorKind, Objective,
    SearchConfig, SearchResult,
};
pub use surd::{recognize_surd, RecognizerParams, SurdForm, SurdRecognizer};
