//! Measurement-backed strategies: play a two-stage game by measuring one
//! qubit of a shared state per stage and translating outcomes to actions.
//!
//! The reference semantics is sequential collapse: the stage-1 measurement
//! selects a branch of the full two-qubit state, and the stage-2 measurement
//! acts on that branch. Because the two stages measure different qubits the
//! projectors commute, so a single joint application of the Born rule gives
//! the same distribution; that shortcut is implemented separately and used
//! as a cross-check, never as the primary path.
//!
//! A scheme carries exactly one measurement per stage, by construction:
//! whatever branch the first stage selects, the second stage applies the
//! same measurement. That is the structural counterpart of the imperfect
//! recall in the single-information-set game reading.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::{Action, ExtensiveGame};
use crate::linalg::Subsystem;
use crate::measures::ProjectiveMeasurement;
use crate::qstate::DensityMatrix;
use crate::rng::SplitMix64;
use crate::tol;

/// One stage of a scheme: a projective measurement and the action each
/// outcome maps to (`actions[i]` for outcome `i`). The map is total by
/// construction.
#[derive(Debug, Clone)]
pub struct SchemeStep {
    pub measurement: ProjectiveMeasurement,
    pub actions: [Action; 2],
}

/// Ordered measurement plan for a two-stage game: stage `i` runs `steps[i]`.
/// Each qubit is measured exactly once.
#[derive(Debug, Clone)]
pub struct MeasurementScheme {
    steps: Vec<SchemeStep>,
}

impl MeasurementScheme {
    pub fn new(steps: Vec<SchemeStep>) -> Result<Self> {
        if steps.len() != 2 {
            return Err(Error::WrongStageCount {
                expected: 2,
                got: steps.len(),
            });
        }
        if steps[0].measurement.subsystem() == steps[1].measurement.subsystem() {
            return Err(Error::DuplicateSubsystem);
        }
        Ok(MeasurementScheme { steps })
    }

    pub fn steps(&self) -> &[SchemeStep] {
        &self.steps
    }

    pub fn stages(&self) -> usize {
        self.steps.len()
    }
}

/// The canonical scheme: stage 1 measures qubit A in the computational
/// basis (0 -> L, 1 -> R); stage 2 measures qubit B in the X basis
/// (+ -> R, - -> L).
pub fn coordination_scheme() -> MeasurementScheme {
    MeasurementScheme::new(vec![
        SchemeStep {
            measurement: ProjectiveMeasurement::computational(Subsystem::A),
            actions: [Action::L, Action::R],
        },
        SchemeStep {
            measurement: ProjectiveMeasurement::x_basis(Subsystem::B),
            actions: [Action::R, Action::L],
        },
    ])
    .expect("canonical scheme is well-formed")
}

/// Distribution over ordered action pairs (stage-1 action, stage-2 action),
/// stored in lexicographic order LL, LR, RL, RR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActionDistribution {
    probs: [f64; 4],
}

pub const ACTION_PAIRS: [(Action, Action); 4] = [
    (Action::L, Action::L),
    (Action::L, Action::R),
    (Action::R, Action::L),
    (Action::R, Action::R),
];

fn pair_index(a1: Action, a2: Action) -> usize {
    let bit = |a: Action| if a == Action::L { 0 } else { 1 };
    bit(a1) * 2 + bit(a2)
}

impl ActionDistribution {
    pub fn probability(&self, a1: Action, a2: Action) -> f64 {
        self.probs[pair_index(a1, a2)]
    }

    /// Pairs with probabilities, in fixed LL, LR, RL, RR order.
    pub fn entries(&self) -> impl Iterator<Item = ((Action, Action), f64)> + '_ {
        ACTION_PAIRS.iter().copied().zip(self.probs.iter().copied())
    }

    /// Probability of each stage-1 action, marginalizing the second stage.
    pub fn stage1_marginal(&self) -> [f64; 2] {
        [
            self.probs[0] + self.probs[1],
            self.probs[2] + self.probs[3],
        ]
    }

    pub fn max_abs_diff(&self, other: &ActionDistribution) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Action-pair distribution by sequential collapse (reference semantics):
/// stage 1 selects a branch with Born probability, stage 2 measures the
/// collapsed branch. Branches below the probability floor contribute
/// nothing.
pub fn joint_action_distribution(
    rho: &DensityMatrix,
    scheme: &MeasurementScheme,
) -> Result<ActionDistribution> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let (first, second) = (&scheme.steps()[0], &scheme.steps()[1]);
    let mut probs = [0.0f64; 4];
    for i in 0..2 {
        let e1 = first.measurement.embedded(i);
        let p1 = e1.matmul(rho.matrix()).trace().re;
        if p1 < tol::PROB_FLOOR {
            continue;
        }
        // collapsed branch, kept in the full two-qubit space
        let branch = e1.matmul(rho.matrix()).matmul(&e1).scale(1.0 / p1);
        for j in 0..2 {
            let e2 = second.measurement.embedded(j);
            let p2 = e2.matmul(&branch).trace().re.max(0.0);
            probs[pair_index(first.actions[i], second.actions[j])] += p1 * p2;
        }
    }
    Ok(ActionDistribution { probs })
}

/// The same distribution by a single joint Born-rule application,
/// tr((E1 E2) rho). Valid because the stages measure different qubits, so
/// the embedded projectors commute. Cross-check only.
pub fn joint_action_distribution_born(
    rho: &DensityMatrix,
    scheme: &MeasurementScheme,
) -> Result<ActionDistribution> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let (first, second) = (&scheme.steps()[0], &scheme.steps()[1]);
    let mut probs = [0.0f64; 4];
    for i in 0..2 {
        let e1 = first.measurement.embedded(i);
        for j in 0..2 {
            let e2 = second.measurement.embedded(j);
            let p = e1.matmul(&e2).matmul(rho.matrix()).trace().re.max(0.0);
            probs[pair_index(first.actions[i], second.actions[j])] += p;
        }
    }
    Ok(ActionDistribution { probs })
}

/// Expected game payoff of playing `scheme` on `rho`.
pub fn expected_quantum_payoff(
    rho: &DensityMatrix,
    scheme: &MeasurementScheme,
    game: &ExtensiveGame,
) -> Result<f64> {
    if game.stages() != scheme.stages() {
        return Err(Error::StageMismatch {
            scheme: scheme.stages(),
            game: game.stages(),
        });
    }
    let dist = joint_action_distribution(rho, scheme)?;
    let mut value = 0.0;
    for ((a1, a2), p) in dist.entries() {
        value += p * game.sequence_payoff(&[a1, a2])?;
    }
    Ok(value)
}

/// Empirical counts from repeated plays, with the analytic distribution the
/// samples were drawn from.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleCounts {
    pub plays: u64,
    /// Counts in LL, LR, RL, RR order.
    pub counts: [u64; 4],
}

impl SampleCounts {
    pub fn count(&self, a1: Action, a2: Action) -> u64 {
        self.counts[pair_index(a1, a2)]
    }

    pub fn frequency(&self, a1: Action, a2: Action) -> f64 {
        self.count(a1, a2) as f64 / self.plays as f64
    }
}

/// Simulate `plays` independent plays by sequential collapse, seeded and
/// bit-reproducible: equal seeds give equal counts on every platform.
///
/// The two-level branch probabilities are precomputed analytically (they
/// depend only on the stage-1 outcome), then each play draws one uniform
/// double per stage from [`SplitMix64`].
pub fn sample_play(
    rho: &DensityMatrix,
    scheme: &MeasurementScheme,
    seed: u64,
    plays: u64,
) -> Result<SampleCounts> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let (first, second) = (&scheme.steps()[0], &scheme.steps()[1]);

    // stage-1 outcome probabilities and per-branch stage-2 probabilities
    let mut p1 = [0.0f64; 2];
    let mut p2_given = [[0.0f64; 2]; 2];
    for i in 0..2 {
        let e1 = first.measurement.embedded(i);
        p1[i] = e1.matmul(rho.matrix()).trace().re;
        if p1[i] < tol::PROB_FLOOR {
            p1[i] = 0.0;
            continue;
        }
        let branch = e1.matmul(rho.matrix()).matmul(&e1).scale(1.0 / p1[i]);
        for (j, slot) in p2_given[i].iter_mut().enumerate() {
            let e2 = second.measurement.embedded(j);
            *slot = e2.matmul(&branch).trace().re.max(0.0);
        }
    }

    let mut rng = SplitMix64::new(seed);
    let mut counts = [0u64; 4];
    for _ in 0..plays {
        let o1 = if rng.next_f64() < p1[0] { 0 } else { 1 };
        let o2 = if rng.next_f64() < p2_given[o1][0] { 0 } else { 1 };
        counts[pair_index(first.actions[o1], second.actions[o2])] += 1;
    }
    Ok(SampleCounts { plays, counts })
}
