//! The three-player, five-object worked instance.
//!
//! Two fixtures ship because the printed payoff matrices are not generated by
//! the payoff formula from the coefficient tables alone:
//!
//! * [`worked_scenario`] holds the raw input data (object and site
//!   coordinates, loss and damage-weight tables, emissions, π = 3). Loss and
//!   damage tables were printed with objects as rows; here they are
//!   transposed so that row `k` is site `k`.
//! * [`worked_tensor`] transcribes the printed 3 x 4 x 2 payoff matrices.
//!
//! The distance band (0.5, 100) is a placeholder: the instance never states
//! one, and these values admit every printed site. The region is 15 x 15 km
//! even though the instance describes its area as "15 square kilometers",
//! since coordinates reach 15 on both axes.

use crate::scenario::{CandidateSite, NaturalObject, PlayerSpec, RegionConfig, Scenario};
use crate::tensor::{PayoffTensor, Provenance};

pub const SCENARIO_FILE: &str = "fixture-scenario.json";
pub const TENSOR_FILE: &str = "fixture-tensor.json";

pub fn worked_scenario() -> Scenario {
    let region = RegionConfig { x_max: 15.0, y_max: 15.0, rho_min: 0.5, rho_max: 100.0, pi_value: 3.0 };
    let objects = [(2.0, 3.0), (5.0, 9.0), (9.0, 6.0), (14.0, 1.0), (8.0, 13.0)]
        .iter()
        .enumerate()
        .map(|(j, &(x, y))| NaturalObject::new(format!("A{}", j + 1), x, y))
        .collect();

    let player =
        |id: &str, emission: f64, prefix: char, sites: &[(f64, f64)], loss: &[[f64; 5]], dmg: &[[f64; 5]]| PlayerSpec {
            id: id.to_string(),
            emission,
            sites: sites
                .iter()
                .enumerate()
                .map(|(k, &(x, y))| CandidateSite::new(format!("{prefix}{}", k + 1), x, y))
                .collect(),
            loss: loss.iter().map(|r| r.to_vec()).collect(),
            damage_weight: dmg.iter().map(|r| r.to_vec()).collect(),
        };

    let players = vec![
        player(
            "P1",
            60.0,
            'B',
            &[(7.0, 8.0), (1.0, 2.0), (9.0, 10.0)],
            &[[10.0, 4.0, 5.0, 13.0, 9.0], [1.0, 11.0, 12.0, 15.0, 15.0], [13.0, 8.0, 6.0, 14.0, 6.0]],
            &[[1.15, 1.5, 1.0, 2.2, 1.9], [2.75, 1.95, 1.15, 1.8, 2.6], [1.45, 2.15, 1.05, 2.9, 1.4]],
        ),
        player(
            "P2",
            15.0,
            'C',
            &[(6.0, 4.0), (11.0, 15.0), (5.0, 3.0), (8.0, 15.0)],
            &[
                [5.0, 7.0, 4.0, 11.0, 13.0],
                [17.0, 10.0, 13.0, 16.0, 3.0],
                [2.0, 8.0, 6.0, 13.0, 14.0],
                [15.0, 9.0, 12.0, 18.0, 1.0],
            ],
            &[
                [2.4, 1.67, 2.45, 1.85, 1.1],
                [1.96, 1.02, 1.75, 2.3, 2.7],
                [1.34, 1.73, 1.0, 1.6, 1.32],
                [2.05, 1.09, 2.05, 1.31, 1.09],
            ],
        ),
        player(
            "P3",
            35.0,
            'D',
            &[(4.0, 12.0), (6.0, 1.0)],
            &[[8.0, 1.0, 5.0, 10.0, 2.0], [3.0, 7.0, 4.0, 6.0, 9.0]],
            &[[2.9, 1.05, 2.1, 1.9, 1.08], [1.25, 1.64, 1.36, 1.82, 1.6]],
        ),
    ];

    Scenario { region, objects, players }
}

/// Printed matrices indexed `[player-3 strategy][player-1 strategy][player-2 strategy]`.
const PRINTED: [[[[f64; 3]; 4]; 3]; 2] = [
    [
        [[0.444, 3.931, 1.007], [2.326, 2.565, 0.186], [0.654, 4.220, 2.633], [0.836, 3.759, 1.487]],
        [[5.339, 4.515, 0.697], [6.309, 3.178, 2.525], [3.501, 3.674, 2.323], [6.101, 4.658, 2.044]],
        [[1.154, 5.100, 1.146], [0.902, 1.784, 2.478], [3.210, 4.766, 1.936], [0.613, 2.615, 1.239]],
    ],
    [
        [[2.640, 1.700, 1.201], [4.757, 4.739, 1.735], [4.025, 2.284, 2.135], [4.600, 6.946, 4.537]],
        [[0.867, 2.444, 1.975], [3.085, 5.352, 2.562], [0.589, 1.589, 3.336], [1.109, 7.845, 4.003]],
        [[6.348, 3.028, 0.320], [5.554, 4.126, 3.523], [6.564, 2.830, 4.270], [3.643, 6.047, 4.350]],
    ],
];

/// The printed payoff hypercube, marked as loaded from file.
pub fn worked_tensor() -> PayoffTensor {
    let mut payoffs = Vec::with_capacity(24);
    for b in 0..3 {
        for c in 0..4 {
            for matrix in &PRINTED {
                payoffs.push(matrix[b][c].to_vec());
            }
        }
    }
    PayoffTensor::new(
        vec![3, 4, 2],
        vec!["P1".into(), "P2".into(), "P3".into()],
        vec![
            vec!["B1".into(), "B2".into(), "B3".into()],
            vec!["C1".into(), "C2".into(), "C3".into(), "C4".into()],
            vec!["D1".into(), "D2".into()],
        ],
        payoffs,
        Provenance::LoadedFromFile,
    )
    .expect("printed tensor is well formed")
}
