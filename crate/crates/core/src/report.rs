//! Solve report shared by the text and JSON outputs of the CLI.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::feasibility::{self, FeasibilityReport, PairViolation};
use crate::scenario::Scenario;
use crate::solvers::{self, residual};
use crate::tensor::{PayoffTensor, Profile, Provenance};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub indices: Profile,
    pub labels: Vec<String>,
    pub payoffs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NashSection {
    pub equilibria: Vec<ProfileEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompromiseSection {
    pub min_residual: f64,
    pub minimizers: Vec<ProfileEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub indices: Profile,
    pub labels: Vec<String>,
    pub payoffs: Vec<f64>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfilePairViolations {
    pub indices: Profile,
    pub labels: Vec<String>,
    pub violations: Vec<PairViolation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilitySection {
    pub sites: Vec<FeasibilityReport>,
    /// Present only when the pairwise band check was requested; lists the
    /// profiles that break it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairwise: Option<Vec<ProfilePairViolations>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub tool_version: String,
    pub provenance: Provenance,
    pub shape: Vec<usize>,
    pub players: Vec<String>,
    pub strategy_labels: Vec<Vec<String>>,
    pub tolerance: f64,
    pub ideal: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nash: Option<NashSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compromise: Option<CompromiseSection>,
    pub residual_table: Vec<ResidualRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasibility: Option<FeasibilitySection>,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub nash: bool,
    pub compromise: bool,
    pub tolerance: f64,
    pub pairwise_band: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { nash: true, compromise: true, tolerance: solvers::DEFAULT_TOLERANCE, pairwise_band: false }
    }
}

fn entry(tensor: &PayoffTensor, profile: &Profile) -> ProfileEntry {
    ProfileEntry {
        indices: profile.clone(),
        labels: tensor.profile_labels(profile),
        payoffs: tensor.payoff(profile).to_vec(),
    }
}

impl SolveReport {
    /// Runs the requested solvers. `scenario` adds the feasibility section
    /// and must be the scenario the tensor was built from.
    pub fn build(tensor: &PayoffTensor, scenario: Option<&Scenario>, opts: SolveOptions) -> Self {
        let nash = opts.nash.then(|| NashSection {
            equilibria: solvers::find_pure_nash(tensor, opts.tolerance)
                .equilibria
                .iter()
                .map(|e| entry(tensor, &e.profile))
                .collect(),
        });

        let compromise = solvers::find_compromise(tensor, opts.tolerance);
        let residual_table = tensor
            .profiles()
            .zip(&compromise.residuals)
            .map(|(p, &r)| {
                let e = entry(tensor, &p);
                ResidualRow { indices: e.indices, labels: e.labels, payoffs: e.payoffs, residual: r }
            })
            .collect();

        let feasibility = scenario.map(|s| FeasibilitySection {
            sites: feasibility::check_scenario(s),
            pairwise: opts.pairwise_band.then(|| {
                tensor
                    .profiles()
                    .filter_map(|p| {
                        let violations = feasibility::check_profile_pairwise(s, &p);
                        (!violations.is_empty()).then(|| ProfilePairViolations {
                            labels: tensor.profile_labels(&p),
                            indices: p,
                            violations,
                        })
                    })
                    .collect()
            }),
        });

        SolveReport {
            tool_version: TOOL_VERSION.to_string(),
            provenance: tensor.provenance(),
            shape: tensor.shape().to_vec(),
            players: tensor.players().to_vec(),
            strategy_labels: tensor.strategy_labels().to_vec(),
            tolerance: opts.tolerance,
            nash,
            compromise: opts.compromise.then(|| CompromiseSection {
                min_residual: compromise.min_residual,
                minimizers: compromise.minimizers.iter().map(|p| entry(tensor, p)).collect(),
            }),
            ideal: compromise.ideal,
            residual_table,
            feasibility,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let shape = self.shape.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("x");
        let provenance = match self.provenance {
            Provenance::ComputedFromEquation => "computed from payoff formula",
            Provenance::LoadedFromFile => "loaded from file",
        };
        let _ = writeln!(out, "{}", self.tool_version);
        let _ = writeln!(out, "tensor: {provenance}, shape {shape}, players {}", self.players.join(" "));
        let _ = writeln!(out, "tolerance: {:e}", self.tolerance);

        if let Some(nash) = &self.nash {
            let _ = writeln!(out, "\nPure Nash equilibria ({}):", nash.equilibria.len());
            if nash.equilibria.is_empty() {
                let _ = writeln!(out, "  none");
            }
            for e in &nash.equilibria {
                let _ = writeln!(out, "  {}  payoffs {}", profile_text(&e.labels, &e.indices), vec_text(&e.payoffs));
            }
        }

        let _ = writeln!(out, "\nIdeal vector: {}", vec_text(&self.ideal));
        if let Some(c) = &self.compromise {
            let _ = writeln!(out, "Compromise set ({}), min residual {}:", c.minimizers.len(), sig6(c.min_residual));
            for e in &c.minimizers {
                let _ = writeln!(out, "  {}  payoffs {}", profile_text(&e.labels, &e.indices), vec_text(&e.payoffs));
            }
        }

        let _ = writeln!(out, "\nResiduals:");
        for (i, row) in self.residual_table.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {:>4}  {}  payoffs {}  residual {}",
                i + 1,
                profile_text(&row.labels, &row.indices),
                vec_text(&row.payoffs),
                sig6(row.residual)
            );
        }

        if let Some(f) = &self.feasibility {
            let _ = writeln!(out, "\nFeasibility:");
            for r in &f.sites {
                let mut line =
                    format!("  {} {}: {}", r.player, r.site, if r.feasible { "feasible" } else { "infeasible" });
                if !r.check.in_box {
                    line.push_str("; outside region");
                }
                for v in &r.check.band_violations {
                    let _ = write!(line, "; {} at {} ({:?} bound)", v.object, sig6(v.distance), v.bound);
                }
                let _ = writeln!(out, "{line}");
            }
            if let Some(pairs) = &f.pairwise {
                let _ = writeln!(out, "  pairwise band violations in {} profile(s)", pairs.len());
                for p in pairs {
                    for v in &p.violations {
                        let _ = writeln!(
                            out,
                            "    {}: {} {} / {} {} at {} ({:?} bound)",
                            profile_text(&p.labels, &p.indices),
                            v.first.0,
                            v.first.1,
                            v.second.0,
                            v.second.1,
                            sig6(v.distance),
                            v.bound
                        );
                    }
                }
            }
        }
        out
    }

    /// Residual computed from this report's own payoffs and ideal vector.
    pub fn recomputed_residual(&self, row: usize) -> f64 {
        residual(&self.ideal, &self.residual_table[row].payoffs)
    }
}

fn profile_text(labels: &[String], indices: &Profile) -> String {
    let idx = indices.indices().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    format!("({}) [{idx}]", labels.join(", "))
}

fn vec_text(v: &[f64]) -> String {
    format!("({})", v.iter().map(|&x| sig6(x)).collect::<Vec<_>>().join(", "))
}

/// Six significant digits.
pub fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.5}");
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{v:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}
