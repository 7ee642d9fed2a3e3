//! Player payoff: distance-decaying income from each natural object minus the
//! compensation paid for polluting it.
//!
//! For a player at site `k` with position `u`:
//!
//! ```text
//! H(u) = Σ_j L[k][j] / ρ_j  −  Σ_j Q[k][j]·W / (2·π·ρ_j²),    ρ_j = |u − A_j|
//! ```
//!
//! The sums run over every natural object in ascending index order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scenario::{Point, Scenario};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PayoffError {
    #[error("player {player} site {site} coincides with natural object {object}; payoff is singular there")]
    ZeroDistance { player: String, site: String, object: String },
    #[error("player index {0} out of range")]
    UnknownPlayer(usize),
    #[error("site index {site} out of range for player {player}")]
    UnknownSite { player: String, site: usize },
}

/// Euclidean distance between two points.
pub fn distance(a: Point, b: Point) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// Per-object income and damage terms and their net total.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PayoffBreakdown {
    pub income: Vec<f64>,
    pub damage: Vec<f64>,
    pub total: f64,
}

impl PayoffBreakdown {
    pub fn income_sum(&self) -> f64 {
        self.income.iter().sum()
    }

    pub fn damage_sum(&self) -> f64 {
        self.damage.iter().sum()
    }
}

/// Partial derivatives of a player's payoff with respect to its own coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gradient {
    pub d_x: f64,
    pub d_y: f64,
}

struct Coefficients<'a> {
    loss: &'a [f64],
    damage_weight: &'a [f64],
    emission: f64,
    player: &'a str,
    site: &'a str,
}

fn coefficients(scenario: &Scenario, player: usize, site: usize) -> Result<Coefficients<'_>, PayoffError> {
    let spec = scenario.players.get(player).ok_or(PayoffError::UnknownPlayer(player))?;
    let site_spec = spec.sites.get(site).ok_or_else(|| PayoffError::UnknownSite { player: spec.id.clone(), site })?;
    Ok(Coefficients {
        loss: &spec.loss[site],
        damage_weight: &spec.damage_weight[site],
        emission: spec.emission,
        player: &spec.id,
        site: &site_spec.id,
    })
}

/// Distances from `position` to every object, failing on coincidence.
fn object_distances(scenario: &Scenario, c: &Coefficients<'_>, position: Point) -> Result<Vec<f64>, PayoffError> {
    scenario
        .objects
        .iter()
        .map(|obj| {
            let rho = distance(position, obj.position);
            if rho == 0.0 {
                Err(PayoffError::ZeroDistance {
                    player: c.player.to_string(),
                    site: c.site.to_string(),
                    object: obj.id.clone(),
                })
            } else {
                Ok(rho)
            }
        })
        .collect()
}

/// Payoff of `player` located at its candidate site `site`.
pub fn payoff(scenario: &Scenario, player: usize, site: usize) -> Result<PayoffBreakdown, PayoffError> {
    let position = site_position(scenario, player, site)?;
    payoff_at(scenario, player, site, position)
}

/// Payoff using the coefficient rows of candidate site `site` but evaluated
/// at an arbitrary `position`. Used for sensitivity analysis around a site.
pub fn payoff_at(
    scenario: &Scenario,
    player: usize,
    site: usize,
    position: Point,
) -> Result<PayoffBreakdown, PayoffError> {
    let c = coefficients(scenario, player, site)?;
    let rhos = object_distances(scenario, &c, position)?;
    let two_pi = 2.0 * scenario.region.pi_value;

    let mut income = Vec::with_capacity(rhos.len());
    let mut damage = Vec::with_capacity(rhos.len());
    let mut total = 0.0;
    for (j, rho) in rhos.into_iter().enumerate() {
        let inc = c.loss[j] / rho;
        let dmg = c.damage_weight[j] * c.emission / (two_pi * rho * rho);
        total += inc - dmg;
        income.push(inc);
        damage.push(dmg);
    }
    Ok(PayoffBreakdown { income, damage, total })
}

/// Analytic gradient of the payoff at the player's candidate site.
pub fn payoff_gradient(scenario: &Scenario, player: usize, site: usize) -> Result<Gradient, PayoffError> {
    let position = site_position(scenario, player, site)?;
    payoff_gradient_at(scenario, player, site, position)
}

/// Analytic gradient with the coefficients of `site` at an arbitrary point.
///
/// `∂H/∂x = Σ_j [ −L (x − x_j)/ρ³ + Q·W (x − x_j)/(π ρ⁴) ]`, likewise for `y`.
pub fn payoff_gradient_at(
    scenario: &Scenario,
    player: usize,
    site: usize,
    position: Point,
) -> Result<Gradient, PayoffError> {
    let c = coefficients(scenario, player, site)?;
    let rhos = object_distances(scenario, &c, position)?;
    let pi = scenario.region.pi_value;

    let mut g = Gradient { d_x: 0.0, d_y: 0.0 };
    for ((obj, rho), j) in scenario.objects.iter().zip(rhos).zip(0..) {
        let dx = position.x - obj.position.x;
        let dy = position.y - obj.position.y;
        let rho2 = rho * rho;
        let coeff = -c.loss[j] / (rho2 * rho) + c.damage_weight[j] * c.emission / (pi * rho2 * rho2);
        g.d_x += coeff * dx;
        g.d_y += coeff * dy;
    }
    Ok(g)
}

fn site_position(scenario: &Scenario, player: usize, site: usize) -> Result<Point, PayoffError> {
    let spec = scenario.players.get(player).ok_or(PayoffError::UnknownPlayer(player))?;
    spec.sites.get(site).map(|s| s.position).ok_or_else(|| PayoffError::UnknownSite { player: spec.id.clone(), site })
}
