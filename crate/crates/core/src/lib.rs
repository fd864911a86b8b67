//! Exact moment calculus for the Dykema-Haagerup triangular operator.
//!
//! The operator T is the generalized circular element whose operator-valued
//! variance is given by the two one-sided integrals on Q\[x\]; its *-moments
//! are finite sums over noncrossing pair partitions of nested kernel
//! evaluations, and the closed form φ[(T^k T*^k)^n] = n^{nk}/(nk+1)! is
//! equivalent to an infinite family of multinomial identities.
//!
//! Everything scalar in this crate is an exact big rational; floating point
//! appears only in the two Monte Carlo cross-checks (polytope volumes and
//! random-matrix trace moments). Each quantity of interest is computable by
//! at least two independent routes, and the test suites hold the routes
//! against each other:
//!
//! - [`expectation_direct`] (partition sum), [`expectation_recursive`]
//!   (outer-line recursion) and [`expectation_via_integration`] (repeated
//!   integration with boundary conditions) must produce identical
//!   polynomials;
//! - [`phi_word`] must match [`main_formula`], [`volume_exact`] and
//!   [`volume_montecarlo`];
//! - the displayed multinomial identities ([`identity_rhs`]) and the generic
//!   bridge ([`identity_from_moments`]) must match [`identity_lhs`] exactly;
//! - [`sample_moments`] estimates the same numbers from matrices of
//!   independent Gaussians.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability; `cargo run --example moment_grid` is a good place to start.

pub mod arith;
pub mod expectation;
pub mod fbasis;
pub mod identities;
pub mod moments;
pub mod partition;
pub mod poly;
pub mod polytope;
pub mod randmat;
pub mod word;

pub use expectation::{
    alpha_check, alpha_word, expectation_direct, expectation_recursive, kappa2, kappa_nested,
    EvalError, ExpectationCache,
};
pub use fbasis::{
    fsum_to_poly, nest_conventions, nested_parallel_kappa, phi_nested_closed, FSum, FTerm,
    NestConventions,
};
pub use identities::{
    identity_from_moments, identity_lhs, identity_rhs, multinomial, partition_terms, IdentityError,
};
pub use moments::{
    abel_expectation, derivative_formula_rhs, expectation_via_integration, main_formula,
    mixed_moment_closed, mixed_moment_word, phi_word, power_word, signed_word_top_derivative,
    MomentError,
};
pub use partition::{
    admissible_partitions, enumerate_nc2, outer_decomposition, OuterDecomposition, PairPartition,
    PartitionError,
};
pub use poly::{rat, rat_int, Poly, Rational};
pub use polytope::{
    closed_compositions, raney_shift_check, sliced_compositions, volume_exact, volume_montecarlo,
    volume_polynomial, Composition,
};
pub use randmat::{
    sample_moment, sample_moments, EntryModel, MatrixEnsembleConfig, MomentEstimate, RandmatError,
};
pub use word::{Letter, Word, WordParseError};
