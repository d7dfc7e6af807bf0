//! Exact computational cohomology for automorphism groups of finite abelian
//! p-groups.
//!
//! Given a partition `λ = (λ1^ρ1 > λ2^ρ2 > … > λk^ρk)` and a prime `p`, the
//! abelian p-group `A_λ = ⊕ (Z/p^λi)^ρi` has automorphism group `G_λ`
//! realised as block matrices with per-block moduli and a divisibility
//! constraint above the diagonal. This crate builds those groups exactly and
//! computes:
//!
//! * the Sylow p-subgroup `P_λ` (unipotent lower-triangular mod p), the
//!   diagonal complement `D_λ`, and coordinate systems indexed by an explicit
//!   set `S` of (digit, entry) positions;
//! * chief series of `P_λ` refining two total orders on `S` (the plain order
//!   and a commutator-aware modification), with coset representatives and
//!   per-step generators;
//! * first and second cohomology with trivial coefficients `F_p` by two
//!   independent engines (a table-driven solver and a polycyclic
//!   presentation-with-tails solver), plus restriction, inflation,
//!   transgression, the antisymmetrisation pairing, conjugation actions,
//!   invariant subspaces under `D_λ`, and stable subspaces relative to a
//!   Sylow subgroup;
//! * cohomology in degrees 1 and 2 for the natural action of a subgroup of
//!   `G_λ` on `A_λ`, as abelian-group invariant factors over mixed moduli;
//! * closed-form vanishing / nonvanishing predictions for `H^1` and `H^2`
//!   driven by the successive-gap shape of the partition, together with
//!   constructive nonvanishing witnesses (explicit homomorphisms and cocycles
//!   certified by restriction to a diagonal cyclic subgroup);
//! * an exact dual-number matrix identity relating determinant-style cycle
//!   sums of two triangular-split matrices to a bilinear pairing, verified
//!   both numerically (arbitrary assignments, exact integers) and
//!   symbolically.
//!
//! Every numeric claim in the test-suite is frozen from an independent
//! brute-force oracle (`tests/oracles.rs`) before the engines compute it.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example partitions_and_groups
//! cargo run --example index_sets_and_orders
//! cargo run --example chief_series
//! cargo run --example commutators_and_factorization
//! cargo run --example cocycles_brute
//! cargo run --example pc_engine
//! cargo run --example invariant_classes
//! cargo run --example hochschild_serre
//! cargo run --example stable_classes
//! cargo run --example natural_action
//! cargo run --example predictions_and_witnesses
//! cargo run --example matrix_identity
//! ```
//!
//! The thin CLI (`autcoh predict|compute|chief-series|verify|report`) wraps
//! the same library calls; see `README.md`.

pub mod checks;
pub mod cohomology;
pub mod criteria;
pub mod identity;
pub mod linalg;
pub mod series;
pub mod structures;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input (bad partition string, non-prime modulus, wrong
    /// dimensions, invalid flag combinations, …).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An enumeration or solver refused to run because the predicted size
    /// exceeds the configured cap.
    #[error("size cap exceeded: predicted {predicted} elements, cap {cap}")]
    CapExceeded { predicted: u128, cap: u128 },

    /// A matrix violated the divisibility constraint required of
    /// automorphisms, or was not invertible.
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    /// A polycyclic presentation failed its consistency test; carries the
    /// offending test word.
    #[error("inconsistent presentation: test word {0}")]
    Inconsistent(String),

    /// Internal invariant violated (a bug if it ever fires).
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
