//! Numerical tolerances used across the crate.
//!
//! Every comparison threshold lives here so the values that define
//! "equal", "Hermitian", or "converged" are pinned in one place and the
//! rest of the code never hard-codes a magic epsilon.

/// Max entrywise |m - m†| for a matrix to count as Hermitian.
pub const HERMITICITY: f64 = 1e-10;

/// Max |tr(rho) - 1| for a density matrix.
pub const TRACE: f64 = 1e-10;

/// Eigenvalues in [-PSD_FLOOR, 0) are treated as 0; anything lower is an
/// error rather than noise.
pub const PSD_FLOOR: f64 = 1e-10;

/// Entrywise tolerance for exact structural identities (tensor/partial-trace
/// round trips, known matrices, distribution cells).
pub const ENTRYWISE: f64 = 1e-12;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
pub const JACOBI_OFF: f64 = 1e-12;

/// Measurement outcomes with probability below this are reported as
/// probability 0 with no conditional state.
pub const PROB_FLOOR: f64 = 1e-12;

/// Ket norms must match 1 within this before renormalization.
pub const KET_NORM: f64 = 1e-12;

/// Mixture / mixed-strategy weights must sum to 1 within this.
pub const WEIGHT_SUM: f64 = 1e-12;

/// Discord values in [-DISCORD_SLACK, 0) are clamped to 0.
pub const DISCORD_SLACK: f64 = 1e-9;

/// Basis optimizer refines its local grid until the angular step is below
/// this (radians).
pub const ANGLE_STEP_MIN: f64 = 1e-4;

/// Strategy optimizer refines its local grid until the probability step is
/// below this.
pub const PROB_STEP_MIN: f64 = 1e-6;

/// Kraus completeness: max entrywise |sum K†K - I|.
pub const KRAUS_SUM: f64 = 1e-12;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::assertions_on_constants)]
    fn floors_are_ordered() {
        // structural identities are the tightest, validation gates looser
        assert!(ENTRYWISE <= PSD_FLOOR);
        assert!(PSD_FLOOR <= HERMITICITY);
        assert!(HERMITICITY <= DISCORD_SLACK);
        assert!(ANGLE_STEP_MIN < PROB_STEP_MIN * 1e3);
    }
}
