//! Local noise channels and the robustness sweep.
//!
//! Two single-qubit channels parameterized by a strength p in [0, 1]:
//!
//! * depolarizing: Kraus set {sqrt(1 - 3p/4) I, sqrt(p/4) X, sqrt(p/4) Y,
//!   sqrt(p/4) Z}; p = 1 replaces the qubit with the maximally mixed state.
//! * dephasing: Kraus set {sqrt(1 - p/2) I, sqrt(p/2) Z}; p = 1 kills all
//!   coherence in the computational basis.
//!
//! The sweep degrades the canonical state at a ladder of strengths and
//! reports, per row, the strategy payoff and the full set of correlation
//! measures. Rows are independent and computed in parallel; output order is
//! always by ascending strength.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::{ExtensiveGame, GameVariant};
use crate::linalg::{ComplexMatrix, Subsystem};
use crate::measures::{
    chsh_max, classical_correlation_fixed, discord_optimized, mutual_information, negativity,
    GridSpec, ProjectiveMeasurement,
};
use crate::qstate::DensityMatrix;
use crate::qstrategy::{coordination_scheme, expected_quantum_payoff};
use crate::tol;

/// Which channel family to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoiseKind {
    Depolarizing,
    Dephasing,
}

/// Which qubit(s) the sweep degrades.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoiseTarget {
    A,
    B,
    Both,
}

/// Single-qubit channel in Kraus form. Construction checks completeness
/// (sum K†K = I), so an instance always describes a valid channel.
#[derive(Debug, Clone)]
pub struct NoiseChannel {
    kind: NoiseKind,
    strength: f64,
    kraus: Vec<ComplexMatrix>,
}

impl NoiseChannel {
    pub fn new(kind: NoiseKind, strength: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&strength) {
            return Err(Error::InvalidStrength { strength });
        }
        let p = strength;
        let eye = ComplexMatrix::identity(2);
        let [sx, sy, sz] = crate::measures::pauli_matrices();
        let kraus = match kind {
            NoiseKind::Depolarizing => vec![
                eye.scale((1.0 - 3.0 * p / 4.0).sqrt()),
                sx.scale((p / 4.0).sqrt()),
                sy.scale((p / 4.0).sqrt()),
                sz.scale((p / 4.0).sqrt()),
            ],
            NoiseKind::Dephasing => vec![
                eye.scale((1.0 - p / 2.0).sqrt()),
                sz.scale((p / 2.0).sqrt()),
            ],
        };
        let channel = NoiseChannel {
            kind,
            strength,
            kraus,
        };
        let residual = channel.completeness_residual();
        if residual > tol::KRAUS_SUM {
            return Err(Error::KrausIncomplete { residual });
        }
        Ok(channel)
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn kraus_operators(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// Max entrywise |sum K†K - I|.
    pub fn completeness_residual(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(2, 2);
        for k in &self.kraus {
            acc = acc.add(&k.adjoint().matmul(k));
        }
        acc.max_abs_diff(&ComplexMatrix::identity(2))
    }
}

/// Apply a single-qubit channel to one side of a two-qubit state:
/// rho' = sum_k (K_k tensored with identity) rho (...)†.
pub fn apply_local_channel(
    rho: &DensityMatrix,
    channel: &NoiseChannel,
    target: Subsystem,
) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let eye = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::zeros(4, 4);
    for k in &channel.kraus {
        let lifted = match target {
            Subsystem::A => k.kron(&eye),
            Subsystem::B => eye.kron(k),
        };
        out = out.add(&lifted.matmul(rho.matrix()).matmul(&lifted.adjoint()));
    }
    DensityMatrix::from_matrix(out)
}

/// One row of the robustness sweep. `d_ba_*` measures qubit A (information
/// gained about B), `d_ab_*` measures qubit B.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub strength: f64,
    pub payoff: f64,
    pub mutual_information: f64,
    pub d_ba_fixed: f64,
    pub d_ab_fixed: f64,
    pub d_ba_opt: f64,
    pub d_ab_opt: f64,
    pub negativity: f64,
    pub chsh: f64,
}

/// Degrade `rho` with `kind` noise on `target` at `steps` evenly spaced
/// strengths from 0 to 1 inclusive, evaluating the canonical strategy and
/// the correlation measures at every strength.
pub fn sweep(
    rho: &DensityMatrix,
    kind: NoiseKind,
    target: NoiseTarget,
    steps: usize,
    grid: GridSpec,
) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(Error::TooFewSteps { got: steps });
    }
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let scheme = coordination_scheme();
    let game = ExtensiveGame::alternation(GameVariant::SingleInfoSet);

    let strengths: Vec<f64> = (0..steps)
        .map(|i| i as f64 / (steps - 1) as f64)
        .collect();
    strengths
        .par_iter()
        .map(|&strength| {
            let channel = NoiseChannel::new(kind, strength)?;
            let mut noisy = rho.clone();
            if matches!(target, NoiseTarget::A | NoiseTarget::Both) {
                noisy = apply_local_channel(&noisy, &channel, Subsystem::A)?;
            }
            if matches!(target, NoiseTarget::B | NoiseTarget::Both) {
                noisy = apply_local_channel(&noisy, &channel, Subsystem::B)?;
            }

            let payoff = expected_quantum_payoff(&noisy, &scheme, &game)?;
            let mi = mutual_information(&noisy)?;
            let j_ba = classical_correlation_fixed(
                &noisy,
                &ProjectiveMeasurement::computational(Subsystem::A),
            )?;
            let j_ab = classical_correlation_fixed(
                &noisy,
                &ProjectiveMeasurement::computational(Subsystem::B),
            )?;
            let clamp = |d: f64| {
                if (-tol::DISCORD_SLACK..0.0).contains(&d) {
                    0.0
                } else {
                    d
                }
            };
            let opt_a = discord_optimized(&noisy, Subsystem::A, grid)?;
            let opt_b = discord_optimized(&noisy, Subsystem::B, grid)?;
            Ok(SweepRow {
                strength,
                payoff,
                mutual_information: mi,
                d_ba_fixed: clamp(mi - j_ba),
                d_ab_fixed: clamp(mi - j_ab),
                d_ba_opt: opt_a.d,
                d_ab_opt: opt_b.d,
                negativity: negativity(&noisy)?,
                chsh: chsh_max(&noisy)?,
            })
        })
        .collect()
}

/// Fixed CSV header for sweep output.
pub const SWEEP_CSV_HEADER: &str =
    "strength,payoff,I,D_BA_fixed,D_AB_fixed,D_BA_opt,D_AB_opt,negativity,chsh";

/// Render rows as CSV with the fixed header. Formatting is pinned to 12
/// decimal places so identical sweeps serialize to identical bytes.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{:.12},{:.12},{:.12},{:.12},{:.12},{:.12},{:.12},{:.12},{:.12}\n",
            r.strength,
            r.payoff,
            r.mutual_information,
            r.d_ba_fixed,
            r.d_ab_fixed,
            r.d_ba_opt,
            r.d_ab_opt,
            r.negativity,
            r.chsh
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::correlation_report;
    use crate::qstate::coordination_state;
    use crate::rng::SplitMix64;
    use num_complex::Complex64;

    fn random_two_qubit(rng: &mut SplitMix64) -> DensityMatrix {
        let mut g = ComplexMatrix::zeros(4, 4);
        for r in 0..4 {
            for c in 0..4 {
                g.set(
                    r,
                    c,
                    Complex64::new(rng.next_f64() * 2.0 - 1.0, rng.next_f64() * 2.0 - 1.0),
                );
            }
        }
        let m = g.matmul(&g.adjoint());
        let tr = m.trace().re;
        DensityMatrix::from_matrix(m.scale(1.0 / tr)).unwrap()
    }

    #[test]
    fn kraus_sets_are_complete_at_all_strengths() {
        for kind in [NoiseKind::Depolarizing, NoiseKind::Dephasing] {
            for strength in [0.0, 0.1, 0.37, 0.5, 0.9, 1.0] {
                let ch = NoiseChannel::new(kind, strength).unwrap();
                assert!(ch.completeness_residual() < 1e-12);
            }
        }
    }

    #[test]
    fn strength_zero_is_the_identity_channel() {
        let rho = coordination_state();
        for kind in [NoiseKind::Depolarizing, NoiseKind::Dephasing] {
            let ch = NoiseChannel::new(kind, 0.0).unwrap();
            let out = apply_local_channel(&rho, &ch, Subsystem::A).unwrap();
            assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
        }
    }

    #[test]
    fn full_depolarizing_on_both_qubits_is_maximally_mixed() {
        let rho = coordination_state();
        let ch = NoiseChannel::new(NoiseKind::Depolarizing, 1.0).unwrap();
        let out = apply_local_channel(
            &apply_local_channel(&rho, &ch, Subsystem::A).unwrap(),
            &ch,
            Subsystem::B,
        )
        .unwrap();
        let quarter = ComplexMatrix::identity(4).scale(0.25);
        assert!(out.matrix().max_abs_diff(&quarter) < 1e-12);
    }

    #[test]
    fn full_dephasing_kills_off_diagonal_blocks() {
        let rho = coordination_state();
        let ch = NoiseChannel::new(NoiseKind::Dephasing, 1.0).unwrap();
        let out = apply_local_channel(&rho, &ch, Subsystem::B).unwrap();
        // coherences within each B block vanish, diagonal survives
        let expected = ComplexMatrix::identity(4).scale(0.25);
        assert!(out.matrix().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn channels_preserve_traces_of_random_states() {
        let mut rng = SplitMix64::new(113);
        for _ in 0..10 {
            let rho = random_two_qubit(&mut rng);
            for kind in [NoiseKind::Depolarizing, NoiseKind::Dephasing] {
                let ch = NoiseChannel::new(kind, rng.next_f64()).unwrap();
                for target in [Subsystem::A, Subsystem::B] {
                    let out = apply_local_channel(&rho, &ch, target).unwrap();
                    assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn out_of_range_strengths_are_rejected() {
        assert!(matches!(
            NoiseChannel::new(NoiseKind::Depolarizing, -0.1),
            Err(Error::InvalidStrength { .. })
        ));
        assert!(matches!(
            NoiseChannel::new(NoiseKind::Dephasing, 1.1),
            Err(Error::InvalidStrength { .. })
        ));
    }

    #[test]
    fn sweep_shape_and_endpoints() {
        let rho = coordination_state();
        let rows = sweep(
            &rho,
            NoiseKind::Depolarizing,
            NoiseTarget::Both,
            21,
            GridSpec::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 21);
        for (i, r) in rows.iter().enumerate() {
            assert!((r.strength - i as f64 / 20.0).abs() < 1e-15);
        }

        // noiseless row matches the direct report
        let report = correlation_report(&rho, GridSpec::default()).unwrap();
        let r0 = &rows[0];
        assert!((r0.payoff - 1.0).abs() < 1e-9);
        assert!((r0.mutual_information - report.mutual_information).abs() < 1e-9);
        assert!((r0.negativity - report.negativity).abs() < 1e-9);
        assert!((r0.chsh - report.chsh_max).abs() < 1e-9);

        // fully depolarized row is the uniform strategy on a product state
        let last = rows.last().unwrap();
        assert!((last.payoff - 0.5).abs() < 1e-9);
        assert!(last.mutual_information.abs() < 1e-9);
        assert!(last.d_ba_opt.abs() < 1e-6);
        assert!(last.d_ab_opt.abs() < 1e-6);
    }

    #[test]
    fn depolarizing_payoff_is_monotone_nonincreasing() {
        let rho = coordination_state();
        let rows = sweep(
            &rho,
            NoiseKind::Depolarizing,
            NoiseTarget::Both,
            21,
            GridSpec::default(),
        )
        .unwrap();
        for w in rows.windows(2) {
            assert!(
                w[1].payoff <= w[0].payoff + 1e-12,
                "payoff rose from {} to {} at strength {}",
                w[0].payoff,
                w[1].payoff,
                w[1].strength
            );
        }
    }

    #[test]
    fn local_noise_never_creates_entanglement_here() {
        let rho = coordination_state();
        for kind in [NoiseKind::Depolarizing, NoiseKind::Dephasing] {
            let rows = sweep(&rho, kind, NoiseTarget::Both, 6, GridSpec::default()).unwrap();
            for r in &rows {
                assert!(r.negativity < 1e-9);
                assert!(r.chsh <= 2.0 + 1e-9);
            }
        }
    }

    #[test]
    fn csv_header_and_shape_are_pinned() {
        let rho = coordination_state();
        let rows = sweep(
            &rho,
            NoiseKind::Dephasing,
            NoiseTarget::Both,
            3,
            GridSpec::default(),
        )
        .unwrap();
        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "strength,payoff,I,D_BA_fixed,D_AB_fixed,D_BA_opt,D_AB_opt,negativity,chsh"
        );
        let data: Vec<&str> = lines.collect();
        assert_eq!(data.len(), 3);
        for line in data {
            assert_eq!(line.split(',').count(), 9);
            for field in line.split(',') {
                field.parse::<f64>().unwrap();
            }
        }
    }

    #[test]
    fn sweep_rejects_too_few_steps() {
        let rho = coordination_state();
        assert!(matches!(
            sweep(
                &rho,
                NoiseKind::Depolarizing,
                NoiseTarget::Both,
                1,
                GridSpec::default()
            ),
            Err(Error::TooFewSteps { got: 1 })
        ));
    }
}
