//! Dense n-player payoff hypercube.
//!
//! Profiles are ordered lexicographically with the last player's index
//! varying fastest. This order is used for storage, for the tensor document
//! and for every report.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::payoff::{self, PayoffBreakdown, PayoffError};
use crate::scenario::Scenario;

/// One strategy index per player, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile(Vec<usize>);

impl Profile {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Same profile with `player` switched to `strategy`.
    pub fn with(&self, player: usize, strategy: usize) -> Profile {
        let mut v = self.0.clone();
        v[player] = strategy;
        Profile(v)
    }
}

impl From<Vec<usize>> for Profile {
    fn from(v: Vec<usize>) -> Self {
        Profile(v)
    }
}

impl<const N: usize> From<[usize; N]> for Profile {
    fn from(v: [usize; N]) -> Self {
        Profile(v.to_vec())
    }
}

/// Iterator over every profile of a shape in normative order.
#[derive(Clone, Debug)]
pub struct Profiles {
    shape: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for Profiles {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for axis in (0..succ.len()).rev() {
            succ[axis] += 1;
            if succ[axis] < self.shape[axis] {
                self.next = Some(succ);
                break;
            }
            succ[axis] = 0;
        }
        Some(Profile(current))
    }
}

/// All profiles of `shape`, last index fastest. Yields nothing if any axis is
/// empty.
pub fn iterate_profiles(shape: &[usize]) -> Profiles {
    let next = (!shape.contains(&0)).then(|| vec![0; shape.len()]);
    Profiles { shape: shape.to_vec(), next }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ComputedFromEquation,
    LoadedFromFile,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("shape must have at least one axis")]
    EmptyShape,
    #[error("axis {0} has no strategies")]
    EmptyAxis(usize),
    #[error("expected {expected} player labels, got {got}")]
    PlayerLabels { expected: usize, got: usize },
    #[error("player {player}: expected {expected} strategy labels, got {got}")]
    StrategyLabels { player: usize, expected: usize, got: usize },
    #[error("expected {expected} payoff vectors, got {got}")]
    CellCount { expected: usize, got: usize },
    #[error("payoff vector {cell} has {got} entries, expected {expected}")]
    VectorLength { cell: usize, expected: usize, got: usize },
    #[error("payoff vector {cell} contains a non-finite value")]
    NonFinite { cell: usize },
    #[error("profile size overflows")]
    TooLarge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PayoffTensor {
    shape: Vec<usize>,
    players: Vec<String>,
    strategy_labels: Vec<Vec<String>>,
    payoffs: Vec<Vec<f64>>,
    provenance: Provenance,
}

impl PayoffTensor {
    pub fn new(
        shape: Vec<usize>,
        players: Vec<String>,
        strategy_labels: Vec<Vec<String>>,
        payoffs: Vec<Vec<f64>>,
        provenance: Provenance,
    ) -> Result<Self, TensorError> {
        if shape.is_empty() {
            return Err(TensorError::EmptyShape);
        }
        if let Some(axis) = shape.iter().position(|&s| s == 0) {
            return Err(TensorError::EmptyAxis(axis));
        }
        let n = shape.len();
        if players.len() != n {
            return Err(TensorError::PlayerLabels { expected: n, got: players.len() });
        }
        if strategy_labels.len() != n {
            return Err(TensorError::PlayerLabels { expected: n, got: strategy_labels.len() });
        }
        for (player, (labels, &size)) in strategy_labels.iter().zip(&shape).enumerate() {
            if labels.len() != size {
                return Err(TensorError::StrategyLabels { player, expected: size, got: labels.len() });
            }
        }
        let cells = shape.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).ok_or(TensorError::TooLarge)?;
        if payoffs.len() != cells {
            return Err(TensorError::CellCount { expected: cells, got: payoffs.len() });
        }
        for (cell, v) in payoffs.iter().enumerate() {
            if v.len() != n {
                return Err(TensorError::VectorLength { cell, expected: n, got: v.len() });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(TensorError::NonFinite { cell });
            }
        }
        Ok(Self { shape, players, strategy_labels, payoffs, provenance })
    }

    /// Unlabelled tensor; players are named `P1..Pn` and strategies `s1..sk`.
    pub fn from_payoffs(shape: Vec<usize>, payoffs: Vec<Vec<f64>>) -> Result<Self, TensorError> {
        let players = (1..=shape.len()).map(|i| format!("P{i}")).collect();
        let labels = shape.iter().map(|&s| (1..=s).map(|k| format!("s{k}")).collect()).collect();
        Self::new(shape, players, labels, payoffs, Provenance::LoadedFromFile)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn player_count(&self) -> usize {
        self.shape.len()
    }

    pub fn cell_count(&self) -> usize {
        self.payoffs.len()
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn strategy_labels(&self) -> &[Vec<String>] {
        &self.strategy_labels
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Payoff vectors in normative profile order.
    pub fn cells(&self) -> &[Vec<f64>] {
        &self.payoffs
    }

    pub fn profiles(&self) -> Profiles {
        iterate_profiles(&self.shape)
    }

    /// Row-major offset of a profile. Panics if the profile does not fit the shape.
    pub fn linear_index(&self, profile: &Profile) -> usize {
        assert_eq!(profile.len(), self.shape.len(), "profile has wrong number of players");
        profile.indices().iter().zip(&self.shape).fold(0, |acc, (&i, &s)| {
            assert!(i < s, "strategy index {i} out of range {s}");
            acc * s + i
        })
    }

    pub fn payoff(&self, profile: &Profile) -> &[f64] {
        &self.payoffs[self.linear_index(profile)]
    }

    /// Labels of the strategies making up `profile`.
    pub fn profile_labels(&self, profile: &Profile) -> Vec<String> {
        profile.indices().iter().zip(&self.strategy_labels).map(|(&i, l)| l[i].clone()).collect()
    }

    pub fn map_payoffs(&self, f: impl Fn(usize, f64) -> f64) -> PayoffTensor {
        let payoffs = self.payoffs.iter().map(|v| v.iter().enumerate().map(|(p, &x)| f(p, x)).collect()).collect();
        PayoffTensor { payoffs, ..self.clone() }
    }

    pub fn to_document(&self) -> TensorDocument {
        TensorDocument {
            shape: self.shape.clone(),
            players: self.players.clone(),
            strategy_labels: self.strategy_labels.clone(),
            payoffs: self.payoffs.clone(),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("tensor serializes")
    }
}

/// On-disk form of a tensor. Payoffs are listed in normative profile order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorDocument {
    pub shape: Vec<usize>,
    pub players: Vec<String>,
    pub strategy_labels: Vec<Vec<String>>,
    pub payoffs: Vec<Vec<f64>>,
}

impl TensorDocument {
    pub fn into_tensor(self) -> Result<PayoffTensor, TensorError> {
        PayoffTensor::new(self.shape, self.players, self.strategy_labels, self.payoffs, Provenance::LoadedFromFile)
    }
}

/// Evaluates every player's payoff at every candidate site of a scenario and
/// spreads them over the profile hypercube. Each player's payoff depends only
/// on its own site, so it is constant along every other player's axis.
pub fn build_tensor(scenario: &Scenario) -> Result<PayoffTensor, PayoffError> {
    let per_site = site_breakdowns(scenario)?;
    let shape: Vec<usize> = scenario.players.iter().map(|p| p.sites.len()).collect();
    let payoffs = iterate_profiles(&shape)
        .map(|profile| profile.indices().iter().enumerate().map(|(p, &k)| per_site[p][k].total).collect())
        .collect();
    let players = scenario.players.iter().map(|p| p.id.clone()).collect();
    let labels = scenario.players.iter().map(|p| p.sites.iter().map(|s| s.id.clone()).collect()).collect();
    Ok(PayoffTensor::new(shape, players, labels, payoffs, Provenance::ComputedFromEquation)
        .expect("validated scenario yields a well-formed tensor"))
}

/// Payoff breakdown for every (player, site), indexed `[player][site]`.
pub fn site_breakdowns(scenario: &Scenario) -> Result<Vec<Vec<PayoffBreakdown>>, PayoffError> {
    scenario
        .players
        .iter()
        .enumerate()
        .map(|(p, player)| (0..player.sites.len()).map(|k| payoff::payoff(scenario, p, k)).collect())
        .collect()
}
