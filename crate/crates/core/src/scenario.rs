//! Game input: the region, the natural objects, and the players with their
//! candidate sites and per-site coefficient tables.
//!
//! Loss (`L`) and damage weight (`Q`) tables are stored per candidate site:
//! row `k` belongs to site `k`, column `j` to natural object `j`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A planar point, coordinates in kilometers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn translate(&self, dx: f64, dy: f64) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.x * factor, self.y * factor)
    }
}

fn default_pi() -> f64 {
    std::f64::consts::PI
}

/// Region box, admissible distance band and the value used for π in the
/// damage term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionConfig {
    pub x_max: f64,
    pub y_max: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    #[serde(rename = "pi", default = "default_pi")]
    pub pi_value: f64,
}

impl RegionConfig {
    pub fn contains(&self, p: Point) -> bool {
        (0.0..=self.x_max).contains(&p.x) && (0.0..=self.y_max).contains(&p.y)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NaturalObject {
    pub id: String,
    #[serde(flatten)]
    pub position: Point,
}

impl NaturalObject {
    pub fn new(id: impl Into<String>, x: f64, y: f64) -> Self {
        Self { id: id.into(), position: Point::new(x, y) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateSite {
    pub id: String,
    #[serde(flatten)]
    pub position: Point,
}

impl CandidateSite {
    pub fn new(id: impl Into<String>, x: f64, y: f64) -> Self {
        Self { id: id.into(), position: Point::new(x, y) }
    }
}

/// One player (enterprise owner).
///
/// `emission` is the amount of harmful substances the enterprise releases.
/// `loss[k][j]` and `damage_weight[k][j]` are the income and damage
/// coefficients of site `k` with respect to natural object `j`; a zero damage
/// weight means the site does not harm that object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlayerSpec {
    pub id: String,
    pub emission: f64,
    pub sites: Vec<CandidateSite>,
    pub loss: Vec<Vec<f64>>,
    pub damage_weight: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub region: RegionConfig,
    pub objects: Vec<NaturalObject>,
    pub players: Vec<PlayerSpec>,
}

/// A broken invariant, located by a JSON-style path into the document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl Violation {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl Scenario {
    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Checks every invariant of the game input and returns all violations.
    /// An empty list means the scenario can be evaluated by every other
    /// module without shape-related failures.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        self.validate_region(&mut out);

        if self.objects.is_empty() {
            out.push(Violation::new("objects", "at least one natural object is required"));
        }
        let mut seen = HashSet::new();
        for (j, obj) in self.objects.iter().enumerate() {
            let path = format!("objects[{j}]");
            if !seen.insert(obj.id.as_str()) {
                out.push(Violation::new(format!("{path}.id"), format!("duplicate object id {:?}", obj.id)));
            }
            if !obj.position.is_finite() {
                out.push(Violation::new(path, "coordinates must be finite"));
            } else if !self.region.contains(obj.position) {
                out.push(Violation::new(
                    path,
                    format!(
                        "position ({}, {}) lies outside the region [0, {}] x [0, {}]",
                        obj.position.x, obj.position.y, self.region.x_max, self.region.y_max
                    ),
                ));
            }
        }

        if self.players.is_empty() {
            out.push(Violation::new("players", "at least one player is required"));
        }
        let mut seen = HashSet::new();
        for (i, player) in self.players.iter().enumerate() {
            if !seen.insert(player.id.as_str()) {
                out.push(Violation::new(format!("players[{i}].id"), format!("duplicate player id {:?}", player.id)));
            }
            self.validate_player(i, player, &mut out);
        }
        out
    }

    fn validate_region(&self, out: &mut Vec<Violation>) {
        let r = &self.region;
        for (name, value) in
            [("x_max", r.x_max), ("y_max", r.y_max), ("rho_min", r.rho_min), ("rho_max", r.rho_max), ("pi", r.pi_value)]
        {
            if !value.is_finite() {
                out.push(Violation::new(format!("region.{name}"), "must be finite"));
            } else if value <= 0.0 {
                out.push(Violation::new(format!("region.{name}"), format!("must be positive, got {value}")));
            }
        }
        if r.rho_min.is_finite() && r.rho_max.is_finite() && r.rho_min > r.rho_max {
            out.push(Violation::new("region.rho_min", format!("rho_min {} exceeds rho_max {}", r.rho_min, r.rho_max)));
        }
    }

    fn validate_player(&self, i: usize, player: &PlayerSpec, out: &mut Vec<Violation>) {
        let base = format!("players[{i}]");
        let m = self.objects.len();

        if !player.emission.is_finite() || player.emission < 0.0 {
            out.push(Violation::new(
                format!("{base}.emission"),
                format!("must be a finite nonnegative number, got {}", player.emission),
            ));
        }
        if player.sites.is_empty() {
            out.push(Violation::new(format!("{base}.sites"), "at least one candidate site is required"));
        }
        let mut seen = HashSet::new();
        for (k, site) in player.sites.iter().enumerate() {
            if !seen.insert(site.id.as_str()) {
                out.push(Violation::new(format!("{base}.sites[{k}].id"), format!("duplicate site id {:?}", site.id)));
            }
            if !site.position.is_finite() {
                out.push(Violation::new(format!("{base}.sites[{k}]"), "coordinates must be finite"));
            }
        }

        for (name, table) in [("loss", &player.loss), ("damage_weight", &player.damage_weight)] {
            if table.len() != player.sites.len() {
                out.push(Violation::new(
                    format!("{base}.{name}"),
                    format!("expected {} rows (one per site), got {}", player.sites.len(), table.len()),
                ));
            }
            for (k, row) in table.iter().enumerate() {
                if row.len() != m {
                    out.push(Violation::new(
                        format!("{base}.{name}[{k}]"),
                        format!("expected {m} columns (one per object), got {}", row.len()),
                    ));
                }
                for (j, &v) in row.iter().enumerate() {
                    if !v.is_finite() || v < 0.0 {
                        out.push(Violation::new(
                            format!("{base}.{name}[{k}][{j}]"),
                            format!("must be a finite nonnegative number, got {v}"),
                        ));
                    }
                }
            }
        }
    }
}
