//! Numerical engine for a two-stage coordination game played with a shared
//! two-qubit resource.
//!
//! The library answers three kinds of questions about the canonical
//! construction (a separable but correlated two-qubit state, measured once
//! per stage to pick an action):
//!
//! * **State analysis**: entropies, mutual information, classical
//!   correlation and discord (fixed-basis and basis-optimized), negativity,
//!   and the maximal CHSH value ([`measures`], [`qstate`]).
//! * **Game values**: expected payoffs and optima for behavioral and mixed
//!   strategies on the underlying extensive-form game, in both its
//!   single-information-set and stage-aware readings ([`games`]), plus the
//!   value of the measurement-backed strategy itself ([`qstrategy`]).
//! * **Robustness**: the same quantities swept under local depolarizing or
//!   dephasing noise ([`noise`]).
//!
//! Everything is deterministic: optimizers use fixed grids with lexicographic
//! tie-breaking, sampling uses an explicit seeded generator ([`rng`]), and
//! all tolerances live in [`tol`].

pub mod error;
pub mod games;
pub mod linalg;
pub mod measures;
pub mod noise;
pub mod qstate;
pub mod qstrategy;
pub mod report;
pub mod rng;
pub mod tol;

pub use error::{Error, Result};
