//! Strategy-set constraints: a site must lie in the region box and within the
//! closed distance band `[rho_min, rho_max]` of every natural object.
//!
//! Optionally the same band can be enforced between the sites chosen by
//! distinct players in a profile.

use serde::{Deserialize, Serialize};

use crate::payoff::distance;
use crate::scenario::{Point, Scenario};
use crate::tensor::Profile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandViolation {
    pub object: String,
    pub distance: f64,
    pub bound: Bound,
}

/// Outcome of checking a single position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiteCheck {
    pub in_box: bool,
    pub band_violations: Vec<BandViolation>,
}

impl SiteCheck {
    pub fn feasible(&self) -> bool {
        self.in_box && self.band_violations.is_empty()
    }
}

/// A [`SiteCheck`] tied to a player's candidate site.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub player: String,
    pub site: String,
    pub feasible: bool,
    #[serde(flatten)]
    pub check: SiteCheck,
}

fn band_bound(rho: f64, lo: f64, hi: f64) -> Option<Bound> {
    if rho < lo {
        Some(Bound::Lower)
    } else if rho > hi {
        Some(Bound::Upper)
    } else {
        None
    }
}

pub fn check_site(position: Point, scenario: &Scenario) -> SiteCheck {
    let region = &scenario.region;
    let band_violations = scenario
        .objects
        .iter()
        .filter_map(|obj| {
            let rho = distance(position, obj.position);
            band_bound(rho, region.rho_min, region.rho_max).map(|bound| BandViolation {
                object: obj.id.clone(),
                distance: rho,
                bound,
            })
        })
        .collect();
    SiteCheck { in_box: region.contains(position), band_violations }
}

/// One report per candidate site, player-major and site-minor.
pub fn check_scenario(scenario: &Scenario) -> Vec<FeasibilityReport> {
    scenario
        .players
        .iter()
        .flat_map(|player| {
            player.sites.iter().map(move |site| {
                let check = check_site(site.position, scenario);
                FeasibilityReport {
                    player: player.id.clone(),
                    site: site.id.clone(),
                    feasible: check.feasible(),
                    check,
                }
            })
        })
        .collect()
}

/// Band violation between the sites of two distinct players in one profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairViolation {
    pub first: (String, String),
    pub second: (String, String),
    pub distance: f64,
    pub bound: Bound,
}

/// Checks the distance band between every pair of players' chosen sites.
/// `profile` must index valid sites of `scenario`.
pub fn check_profile_pairwise(scenario: &Scenario, profile: &Profile) -> Vec<PairViolation> {
    let region = &scenario.region;
    let chosen: Vec<_> = scenario.players.iter().zip(profile.indices()).map(|(p, &k)| (&p.id, &p.sites[k])).collect();

    let mut out = Vec::new();
    for (a, (pa, sa)) in chosen.iter().enumerate() {
        for (pb, sb) in &chosen[a + 1..] {
            let rho = distance(sa.position, sb.position);
            if let Some(bound) = band_bound(rho, region.rho_min, region.rho_max) {
                out.push(PairViolation {
                    first: (pa.to_string(), sa.id.clone()),
                    second: (pb.to_string(), sb.id.clone()),
                    distance: rho,
                    bound,
                });
            }
        }
    }
    out
}
