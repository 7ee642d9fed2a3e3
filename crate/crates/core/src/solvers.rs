//! Pure Nash equilibria and the compromise (minimax-shortfall) set of a
//! finite game given as a [`PayoffTensor`].
//!
//! Both solvers accept an absolute tie tolerance. A profile is an equilibrium
//! when no player can gain more than `tolerance` by deviating alone. A
//! profile is a compromise when its largest shortfall from the ideal vector
//! is within `tolerance` of the smallest such shortfall.

use serde::{Deserialize, Serialize};

use crate::tensor::{PayoffTensor, Profile};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Strategies of `player` that maximize its payoff when every other player
/// plays as in `others`. The entry of `others` at `player` is ignored.
pub fn best_response(tensor: &PayoffTensor, player: usize, others: &Profile, tolerance: f64) -> Vec<usize> {
    let values: Vec<f64> =
        (0..tensor.shape()[player]).map(|k| tensor.payoff(&others.with(player, k))[player]).collect();
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values.iter().enumerate().filter(|(_, &v)| v >= best - tolerance).map(|(k, _)| k).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub profile: Profile,
    pub payoffs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NashResult {
    pub equilibria: Vec<Equilibrium>,
}

impl NashResult {
    pub fn profiles(&self) -> Vec<Profile> {
        self.equilibria.iter().map(|e| e.profile.clone()).collect()
    }
}

/// Largest gain any single player can obtain by deviating from `profile`.
pub fn max_deviation_gain(tensor: &PayoffTensor, profile: &Profile) -> f64 {
    let here = tensor.payoff(profile);
    (0..tensor.player_count())
        .flat_map(|p| (0..tensor.shape()[p]).map(move |k| (p, k)))
        .map(|(p, k)| tensor.payoff(&profile.with(p, k))[p] - here[p])
        .fold(0.0, f64::max)
}

/// Every profile in which each player's strategy is a best response to the
/// others, in normative profile order.
pub fn find_pure_nash(tensor: &PayoffTensor, tolerance: f64) -> NashResult {
    let equilibria = tensor
        .profiles()
        .filter(|profile| {
            (0..tensor.player_count())
                .all(|p| best_response(tensor, p, profile, tolerance).contains(&profile.indices()[p]))
        })
        .map(|profile| Equilibrium { payoffs: tensor.payoff(&profile).to_vec(), profile })
        .collect();
    NashResult { equilibria }
}

/// Componentwise maximum payoff over all profiles.
pub fn ideal_vector(tensor: &PayoffTensor) -> Vec<f64> {
    let mut ideal = vec![f64::NEG_INFINITY; tensor.player_count()];
    for cell in tensor.cells() {
        for (m, &v) in ideal.iter_mut().zip(cell) {
            *m = m.max(v);
        }
    }
    ideal
}

/// Largest shortfall of a payoff vector from the ideal vector.
pub fn residual(ideal: &[f64], payoffs: &[f64]) -> f64 {
    ideal.iter().zip(payoffs).map(|(m, h)| m - h).fold(f64::NEG_INFINITY, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompromiseResult {
    pub ideal: Vec<f64>,
    /// One residual per profile, in normative profile order.
    pub residuals: Vec<f64>,
    pub minimizers: Vec<Profile>,
    pub min_residual: f64,
}

pub fn find_compromise(tensor: &PayoffTensor, tolerance: f64) -> CompromiseResult {
    let ideal = ideal_vector(tensor);
    let residuals: Vec<f64> = tensor.cells().iter().map(|cell| residual(&ideal, cell)).collect();
    let min_residual = residuals.iter().copied().fold(f64::INFINITY, f64::min);
    let minimizers =
        tensor.profiles().zip(&residuals).filter(|(_, &r)| r <= min_residual + tolerance).map(|(p, _)| p).collect();
    CompromiseResult { ideal, residuals, minimizers, min_residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::worked_tensor;
    use crate::tensor::{build_tensor, PayoffTensor};

    const TOL: f64 = DEFAULT_TOLERANCE;

    #[test]
    fn best_response_on_fixture() {
        let t = worked_tensor();
        // column C4 of the D2 matrix: 4.600, 1.109, 3.643
        assert_eq!(best_response(&t, 0, &Profile::from([9, 3, 1]), TOL), vec![0]);
    }

    #[test]
    fn best_response_ties_and_singletons() {
        let flat = PayoffTensor::from_payoffs(vec![3, 2], vec![vec![1.0, 0.0]; 6]).unwrap();
        assert_eq!(best_response(&flat, 0, &Profile::from([0, 1]), TOL), vec![0, 1, 2]);
        let single = PayoffTensor::from_payoffs(vec![1, 2], vec![vec![5.0, 1.0], vec![2.0, 3.0]]).unwrap();
        assert_eq!(best_response(&single, 0, &Profile::from([0, 1]), TOL), vec![0]);
    }

    #[test]
    fn fixture_nash() {
        let nash = find_pure_nash(&worked_tensor(), TOL);
        assert_eq!(nash.profiles(), vec![Profile::from([0, 3, 1])]);
        assert_eq!(nash.equilibria[0].payoffs, vec![4.600, 6.946, 4.537]);
    }

    #[test]
    fn matching_pennies_has_no_pure_equilibrium() {
        let t = PayoffTensor::from_payoffs(
            vec![2, 2],
            vec![vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, 1.0], vec![1.0, -1.0]],
        )
        .unwrap();
        assert!(find_pure_nash(&t, TOL).equilibria.is_empty());
        assert!(max_deviation_gain(&t, &Profile::from([0, 0])) == 2.0);
    }

    #[test]
    fn decoupled_game_equilibria_are_per_player_argmaxes() {
        let t = build_tensor(&crate::fixture::worked_scenario()).unwrap();
        // best sites under the formula alone: B3 (4.268), C1 (5.312), D2 (2.741)
        assert_eq!(find_pure_nash(&t, TOL).profiles(), vec![Profile::from([2, 0, 1])]);

        let ties = PayoffTensor::from_payoffs(
            vec![2, 2],
            vec![vec![2.0, 0.0], vec![2.0, 0.0], vec![1.0, 0.0], vec![1.0, 0.0]],
        )
        .unwrap();
        assert_eq!(find_pure_nash(&ties, TOL).profiles(), vec![Profile::from([0, 0]), Profile::from([0, 1])]);
    }

    #[test]
    fn weak_inequality_counts_ties_as_equilibria() {
        let t = PayoffTensor::from_payoffs(vec![2], vec![vec![1.0], vec![1.0 + 1e-12]]).unwrap();
        assert_eq!(find_pure_nash(&t, TOL).equilibria.len(), 2);
        assert_eq!(find_pure_nash(&t, 0.0).profiles(), vec![Profile::from([1])]);
    }

    #[test]
    fn fixture_ideal_and_compromise() {
        let t = worked_tensor();
        assert_eq!(ideal_vector(&t), vec![6.564, 7.845, 4.537]);
        let c = find_compromise(&t, TOL);
        assert_eq!(c.minimizers, vec![Profile::from([0, 3, 1])]);
        assert!((c.min_residual - 1.964).abs() < 1e-9);
        assert!((c.residuals[0] - 6.120).abs() < 1e-9);
        // (B2, C1, D1): 4.537 - 0.697
        assert!((c.residuals[t.linear_index(&Profile::from([1, 0, 0]))] - 3.840).abs() < 1e-9);
    }

    #[test]
    fn small_tensors() {
        let one = PayoffTensor::from_payoffs(vec![1, 1], vec![vec![2.5, -1.0]]).unwrap();
        assert_eq!(ideal_vector(&one), vec![2.5, -1.0]);
        let c = find_compromise(&one, TOL);
        assert_eq!(c.min_residual, 0.0);
        assert_eq!(c.minimizers, vec![Profile::from([0, 0])]);
        assert_eq!(find_pure_nash(&one, TOL).profiles(), vec![Profile::from([0, 0])]);

        let zeros = PayoffTensor::from_payoffs(vec![2, 2], vec![vec![0.0, 0.0]; 4]).unwrap();
        assert_eq!(ideal_vector(&zeros), vec![0.0, 0.0]);

        let dominant = PayoffTensor::from_payoffs(
            vec![2, 2],
            vec![vec![1.0, 2.0], vec![3.0, 0.0], vec![4.0, 5.0], vec![0.0, 1.0]],
        )
        .unwrap();
        let c = find_compromise(&dominant, TOL);
        assert_eq!(c.minimizers, vec![Profile::from([1, 0])]);
        assert_eq!(c.min_residual, 0.0);
    }
}
