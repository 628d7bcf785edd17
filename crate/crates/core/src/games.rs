//! Extensive-form games with binary actions and imperfect recall.
//!
//! The model is deliberately small: one agent acts once per stage, choosing
//! `L` or `R`, and cannot distinguish decision points that share an
//! information set. A behavioral strategy fixes one action distribution per
//! information set, drawn independently at each decision point; a mixed
//! strategy randomizes over complete pure plans.
//!
//! The canonical game rewards playing two different actions across two
//! stages. It ships in two readings that differ only in the information
//! partition: both stages in a single information set (the agent cannot
//! tell the stages apart, so one distribution serves both), or one set per
//! stage (the agent knows which stage it is in).

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::tol;

/// Binary action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    L,
    R,
}

impl Action {
    pub fn parse(label: &str) -> Result<Action> {
        match label {
            "L" => Ok(Action::L),
            "R" => Ok(Action::R),
            other => Err(Error::UnknownActionLabel {
                label: other.to_string(),
            }),
        }
    }

    fn bit(self) -> usize {
        match self {
            Action::L => 0,
            Action::R => 1,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::L => write!(f, "L"),
            Action::R => write!(f, "R"),
        }
    }
}

/// Payoff of the canonical two-stage game: 1 when the actions alternate,
/// 0 when they repeat.
pub fn alternation_payoff(a1: Action, a2: Action) -> f64 {
    if a1 != a2 {
        1.0
    } else {
        0.0
    }
}

/// Which information partition the canonical game uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GameVariant {
    /// Both stages share one information set: the agent cannot condition on
    /// the stage, so a single action distribution covers both moves.
    SingleInfoSet,
    /// One information set per stage: the agent may play stage-dependent
    /// distributions.
    StageAware,
}

/// Extensive-form game: `stages` sequential binary decisions, an
/// information partition mapping each stage to its information set, and a
/// payoff for every complete action sequence.
///
/// Payoffs are stored indexed by the action sequence read as binary with
/// L = 0, R = 1 and stage 0 as the most significant bit, which is exactly
/// lexicographic order of the action strings ("LL", "LR", "RL", "RR").
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensiveGame {
    stages: usize,
    partition: Vec<usize>,
    payoff: Vec<f64>,
}

impl ExtensiveGame {
    /// `partition[s]` is the information-set id of stage `s`; ids must be
    /// contiguous from 0. `payoff` must cover all 2^stages sequences.
    pub fn new(stages: usize, partition: Vec<usize>, payoff: Vec<f64>) -> Result<Self> {
        if stages == 0 {
            return Err(Error::NoStages);
        }
        if partition.len() != stages {
            return Err(Error::PartitionLength {
                expected: stages,
                got: partition.len(),
            });
        }
        let sets = partition.iter().copied().max().map_or(0, |m| m + 1);
        for id in 0..sets {
            if !partition.contains(&id) {
                return Err(Error::PartitionGap { missing: id });
            }
        }
        let expected = 1usize << stages;
        if payoff.len() != expected {
            return Err(Error::PayoffTableSize {
                expected,
                got: payoff.len(),
            });
        }
        Ok(ExtensiveGame {
            stages,
            partition,
            payoff,
        })
    }

    /// The canonical two-stage alternation game in the requested reading.
    pub fn alternation(variant: GameVariant) -> ExtensiveGame {
        let partition = match variant {
            GameVariant::SingleInfoSet => vec![0, 0],
            GameVariant::StageAware => vec![0, 1],
        };
        ExtensiveGame::new(2, partition, vec![0.0, 1.0, 1.0, 0.0])
            .expect("canonical game is well-formed")
    }

    pub fn stages(&self) -> usize {
        self.stages
    }

    /// Number of information sets.
    pub fn info_sets(&self) -> usize {
        self.partition.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn info_set_of_stage(&self, stage: usize) -> usize {
        self.partition[stage]
    }

    /// Payoff of a complete action sequence.
    pub fn sequence_payoff(&self, seq: &[Action]) -> Result<f64> {
        if seq.len() != self.stages {
            return Err(Error::MalformedPlan {
                expected: self.stages,
                got: seq.len(),
            });
        }
        Ok(self.payoff[sequence_index(seq)])
    }

    fn sequences(&self) -> impl Iterator<Item = Vec<Action>> + '_ {
        let stages = self.stages;
        (0..1usize << stages).map(move |idx| {
            (0..stages)
                .map(|s| {
                    if idx >> (stages - 1 - s) & 1 == 0 {
                        Action::L
                    } else {
                        Action::R
                    }
                })
                .collect()
        })
    }

    // --- JSON document interface --------------------------------------------

    pub fn from_json_str(s: &str) -> Result<ExtensiveGame> {
        let doc: GameDoc = serde_json::from_str(s)?;
        doc.try_into()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&GameDoc::from(self)).expect("game serializes")
    }
}

fn sequence_index(seq: &[Action]) -> usize {
    seq.iter().fold(0, |acc, a| (acc << 1) | a.bit())
}

fn sequence_string(seq: &[Action]) -> String {
    seq.iter().map(|a| a.to_string()).collect()
}

/// Wire format for games: stage count, the stages of each information set,
/// and the payoff table keyed by action strings, e.g. `"LR": 1.0`.
#[derive(Debug, Serialize, Deserialize)]
pub struct GameDoc {
    pub stages: usize,
    pub info_sets: Vec<Vec<usize>>,
    pub payoff: BTreeMap<String, f64>,
}

impl From<&ExtensiveGame> for GameDoc {
    fn from(g: &ExtensiveGame) -> GameDoc {
        let mut info_sets = vec![Vec::new(); g.info_sets()];
        for (stage, &set) in g.partition.iter().enumerate() {
            info_sets[set].push(stage);
        }
        let mut payoff = BTreeMap::new();
        for seq in g.sequences() {
            payoff.insert(
                sequence_string(&seq),
                g.payoff[sequence_index(&seq)],
            );
        }
        GameDoc {
            stages: g.stages,
            info_sets,
            payoff,
        }
    }
}

impl TryFrom<GameDoc> for ExtensiveGame {
    type Error = Error;

    fn try_from(doc: GameDoc) -> Result<ExtensiveGame> {
        if doc.stages == 0 {
            return Err(Error::NoStages);
        }
        let mut partition = vec![usize::MAX; doc.stages];
        for (set, stages) in doc.info_sets.iter().enumerate() {
            for &s in stages {
                if s >= doc.stages {
                    return Err(Error::DocumentShape {
                        reason: format!("stage {s} out of range in info_sets"),
                    });
                }
                if partition[s] != usize::MAX {
                    return Err(Error::DocumentShape {
                        reason: format!("stage {s} appears in two information sets"),
                    });
                }
                partition[s] = set;
            }
        }
        if let Some(s) = partition.iter().position(|&v| v == usize::MAX) {
            return Err(Error::DocumentShape {
                reason: format!("stage {s} missing from info_sets"),
            });
        }
        let mut payoff = vec![0.0; 1 << doc.stages];
        let mut seen = vec![false; 1 << doc.stages];
        for (key, &value) in &doc.payoff {
            let seq: Vec<Action> = key
                .chars()
                .map(|ch| Action::parse(&ch.to_string()))
                .collect::<Result<_>>()?;
            if seq.len() != doc.stages {
                return Err(Error::MalformedPlan {
                    expected: doc.stages,
                    got: seq.len(),
                });
            }
            let idx = sequence_index(&seq);
            payoff[idx] = value;
            seen[idx] = true;
        }
        if let Some(idx) = seen.iter().position(|&s| !s) {
            let seq: Vec<Action> = (0..doc.stages)
                .map(|s| {
                    if idx >> (doc.stages - 1 - s) & 1 == 0 {
                        Action::L
                    } else {
                        Action::R
                    }
                })
                .collect();
            return Err(Error::MissingPayoffEntry {
                sequence: sequence_string(&seq),
            });
        }
        ExtensiveGame::new(doc.stages, partition, payoff)
    }
}

/// Behavioral strategy: probability of playing `L` for each information
/// set, drawn independently at every decision point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BehavioralStrategy {
    pub p_left: Vec<f64>,
}

impl BehavioralStrategy {
    pub fn new(p_left: Vec<f64>) -> Result<Self> {
        for &p in &p_left {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability { value: p });
            }
        }
        Ok(BehavioralStrategy { p_left })
    }
}

/// Expected payoff of a behavioral strategy: every stage samples its
/// information set's distribution independently, so a sequence's
/// probability is the product of its per-stage action probabilities.
pub fn expected_payoff_behavioral(
    game: &ExtensiveGame,
    strategy: &BehavioralStrategy,
) -> Result<f64> {
    if strategy.p_left.len() != game.info_sets() {
        return Err(Error::StrategyArity {
            expected: game.info_sets(),
            got: strategy.p_left.len(),
        });
    }
    let mut value = 0.0;
    for seq in game.sequences() {
        let mut prob = 1.0;
        for (stage, &a) in seq.iter().enumerate() {
            let p = strategy.p_left[game.info_set_of_stage(stage)];
            prob *= if a == Action::L { p } else { 1.0 - p };
        }
        value += prob * game.payoff[sequence_index(&seq)];
    }
    Ok(value)
}

/// Best behavioral strategy by deterministic grid search: `grid_points`
/// samples per information set over [0, 1], then local refinement halving
/// the step until it falls below `tol::PROB_STEP_MIN`. Exact value ties
/// break toward the lexicographically smaller probability vector.
pub fn best_behavioral(
    game: &ExtensiveGame,
    grid_points: usize,
) -> Result<(BehavioralStrategy, f64)> {
    if grid_points < 2 {
        return Err(Error::GridTooCoarse {
            min: 2,
            got: grid_points,
        });
    }
    let k = game.info_sets();
    let step = 1.0 / (grid_points - 1) as f64;

    let eval = |p: &[f64]| -> f64 {
        let s = BehavioralStrategy {
            p_left: p.to_vec(),
        };
        expected_payoff_behavioral(game, &s).expect("arity matches by construction")
    };

    let improves = |v_new: f64, p_new: &[f64], v_best: f64, p_best: &[f64]| -> bool {
        v_new > v_best || (v_new == v_best && p_new < p_best)
    };

    // coarse sweep over the k-dimensional grid
    let mut best = vec![0.0; k];
    let mut v_best = eval(&best);
    let mut idx = vec![0usize; k];
    loop {
        // advance odometer; index 0 state was evaluated above
        let mut carry = true;
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < grid_points {
                carry = false;
                break;
            }
            *slot = 0;
        }
        if carry {
            break;
        }
        let p: Vec<f64> = idx.iter().map(|&i| (i as f64 * step).min(1.0)).collect();
        let v = eval(&p);
        if improves(v, &p, v_best, &best) {
            v_best = v;
            best = p;
        }
    }

    // local refinement around the incumbent
    let mut s = step;
    while s > tol::PROB_STEP_MIN {
        s /= 2.0;
        let mut offsets = vec![0i32; k];
        loop {
            let p: Vec<f64> = best
                .iter()
                .zip(&offsets)
                .map(|(&b, &o)| (b + o as f64 * s).clamp(0.0, 1.0))
                .collect();
            let v = eval(&p);
            if improves(v, &p, v_best, &best) {
                v_best = v;
                best = p;
            }
            let mut carry = true;
            for slot in offsets.iter_mut().rev() {
                *slot += 1;
                if *slot <= 2 {
                    carry = false;
                    break;
                }
                *slot = -2;
            }
            if carry {
                break;
            }
        }
    }

    Ok((BehavioralStrategy { p_left: best }, v_best))
}

/// Mixed strategy: a probability distribution over complete pure plans
/// (one action per stage).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedStrategy {
    pub support: Vec<(Vec<Action>, f64)>,
}

impl MixedStrategy {
    /// Weights must be nonnegative and sum to 1 within `tol::WEIGHT_SUM`.
    pub fn new(support: Vec<(Vec<Action>, f64)>) -> Result<Self> {
        let sum: f64 = support.iter().map(|(_, w)| *w).sum();
        if (sum - 1.0).abs() > tol::WEIGHT_SUM {
            return Err(Error::InvalidWeights { sum });
        }
        for (_, w) in &support {
            if *w < 0.0 {
                return Err(Error::InvalidProbability { value: *w });
            }
        }
        Ok(MixedStrategy { support })
    }

    /// Point mass on a single plan.
    pub fn pure(plan: Vec<Action>) -> MixedStrategy {
        MixedStrategy {
            support: vec![(plan, 1.0)],
        }
    }
}

/// Expected payoff of a mixed strategy: weight-average of plan payoffs.
pub fn expected_payoff_mixed(game: &ExtensiveGame, mixed: &MixedStrategy) -> Result<f64> {
    let mut value = 0.0;
    for (plan, w) in &mixed.support {
        value += w * game.sequence_payoff(plan)?;
    }
    Ok(value)
}

/// Best mixed strategy: a point mass on the best pure plan (mixing can
/// never beat the best plan it mixes over). Plans are enumerated in
/// lexicographic order (L before R) and ties keep the earliest.
pub fn best_mixed(game: &ExtensiveGame) -> (MixedStrategy, f64) {
    let mut best_plan = None;
    let mut v_best = f64::NEG_INFINITY;
    for seq in game.sequences() {
        let v = game.payoff[sequence_index(&seq)];
        if v > v_best {
            v_best = v;
            best_plan = Some(seq);
        }
    }
    (
        MixedStrategy::pure(best_plan.expect("games have at least one plan")),
        v_best,
    )
}
