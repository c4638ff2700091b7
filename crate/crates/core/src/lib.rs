//! Exact computation of Sylow graphs of finite permutation groups.
//!
//! The engine builds permutation groups from generators (stabilizer chains),
//! computes Sylow subgroups, normalizers and centralizers, assembles the
//! Sylow graph with its automiser annotations, and provides the arithmetic
//! side: Zsigmondy primitive primes, Lie-type order formulas, sigma
//! partitions and the arrow predictor, plus the covering-formation harness
//! and the verification suites behind the `verify` CLI subcommand.

pub mod arith;
pub mod catalog;
pub mod formation;
pub mod graph;
pub mod group;
pub mod perm;
pub mod report;
pub mod subgrp;
pub mod verify;

pub use group::{PermGroup, Subgroup};
pub use perm::Permutation;

use num_bigint::BigUint;

/// Errors shared across the whole engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images do not form a bijection of 0..{degree} (offending value {value})")]
    NotBijective { degree: usize, value: usize },
    #[error("element is not a member of the group")]
    NotMember,
    #[error("generators are not contained in the claimed parent group")]
    NotSubgroup,
    #[error("subgroup is not normal in the ambient group")]
    NotNormal,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("factorization gave up: remaining cofactor {0} exceeds the configured effort")]
    FactorBound(BigUint),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Budgets and the RNG seed for one run of the engine.
///
/// A single value of this type is threaded through every operation that can
/// enumerate elements, walk a conjugacy class, or factor an integer.
/// Operations that would exceed a budget fail loudly with [`Error::Budget`]
/// instead of degrading.
#[derive(Debug, Clone)]
pub struct Ctx {
    /// Largest group order for which full element streaming is allowed.
    pub max_order_enum: u64,
    /// Largest conjugacy-class orbit walked by reality and centralizer
    /// computations.
    pub max_class_size: u64,
    /// Above this order, Sylow construction localizes into the centralizer
    /// of a p-central element instead of scanning the whole group.
    pub sylow_scan_threshold: u64,
    /// Cap on the number of cycle-structure-compatible conjugator candidates
    /// enumerated by the transporter search.
    pub transporter_cap: u64,
    /// Trial-division bound used before switching to Pollard rho.
    pub factor_trial_bound: u64,
    /// Number of Pollard rho restarts before factorization gives up.
    pub pollard_restarts: u32,
    /// Seed for all pseudo-random element generation; recorded in reports.
    pub seed: u64,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx {
            max_order_enum: 30_000_000,
            max_class_size: 2_000_000,
            sylow_scan_threshold: 1_000_000,
            transporter_cap: 2_000_000,
            factor_trial_bound: 1_000_000,
            pollard_restarts: 64,
            seed: 0x51_1097,
        }
    }
}
