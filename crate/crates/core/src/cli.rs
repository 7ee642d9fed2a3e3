//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error (invalid input data, singular
//! payoff), 2 I/O or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::fixture;
use crate::payoff::{PayoffBreakdown, PayoffError};
use crate::report::{SolveOptions, SolveReport};
use crate::scenario::{Scenario, Violation};
use crate::solvers::DEFAULT_TOLERANCE;
use crate::tensor::{self, PayoffTensor, Profile, TensorDocument, TensorError};

#[derive(Parser, Debug)]
#[command(name = "ecosite", version, about = "Siting game solver: payoffs, pure Nash equilibria, compromise profiles")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a scenario document and list every violated constraint.
    Validate { file: PathBuf },
    /// Evaluate the payoff formula for every profile of a scenario.
    Tensor {
        file: PathBuf,
        /// Append per-cell income and damage breakdowns.
        #[arg(long)]
        explain: bool,
    },
    /// Solve a tensor document, or a scenario (its tensor is built first).
    Solve {
        file: PathBuf,
        #[arg(long)]
        nash: bool,
        #[arg(long)]
        compromise: bool,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also enforce the distance band between different players' sites.
        #[arg(long)]
        pairwise_band: bool,
    },
    /// Bundled fixture files.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    /// Write the worked-instance scenario and tensor documents into a directory.
    Emit { dir: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{path}: not a scenario or tensor document (expected a \"region\" or \"shape\" key)")]
    UnknownDocument { path: PathBuf },
    #[error("{path}: invalid scenario ({} violation(s))", violations.len())]
    Invalid { path: PathBuf, violations: Vec<Violation> },
    #[error("{path}: invalid tensor: {source}")]
    Tensor { path: PathBuf, source: TensorError },
    #[error(transparent)]
    Payoff(#[from] PayoffError),
    #[error("tolerance must be a nonnegative finite number, got {0}")]
    Tolerance(f64),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::UnknownDocument { .. } => 2,
            CliError::Invalid { .. } | CliError::Tensor { .. } | CliError::Payoff(_) | CliError::Tolerance(_) => 1,
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Invalid { violations, .. } = &e {
                for v in violations {
                    let _ = writeln!(err, "  {v}");
                }
            }
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Validate { file } => {
            let text = read(&file)?;
            let scenario = parse::<Scenario>(&file, &text)?;
            let violations = scenario.validate();
            for v in &violations {
                emit(out, &format!("{v}\n"))?;
            }
            if violations.is_empty() {
                emit(
                    out,
                    &format!(
                        "ok: {} player(s), {} natural object(s)\n",
                        scenario.player_count(),
                        scenario.object_count()
                    ),
                )?;
                Ok(0)
            } else {
                Ok(1)
            }
        }
        Command::Tensor { file, explain } => {
            let scenario = load_scenario(&file)?;
            let t = tensor::build_tensor(&scenario)?;
            let json = if explain {
                let breakdowns = tensor::site_breakdowns(&scenario)?;
                to_json(&ExplainedTensor::new(&t, &scenario, &breakdowns))
            } else {
                to_json(&t.to_document())
            };
            emit(out, &json)?;
            Ok(0)
        }
        Command::Solve { file, nash, compromise, tolerance, format, pairwise_band } => {
            if !(tolerance.is_finite() && tolerance >= 0.0) {
                return Err(CliError::Tolerance(tolerance));
            }
            let (t, scenario) = load_solvable(&file)?;
            let both = !nash && !compromise;
            let opts = SolveOptions { nash: nash || both, compromise: compromise || both, tolerance, pairwise_band };
            let report = SolveReport::build(&t, scenario.as_ref(), opts);
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Fixtures { action: FixtureAction::Emit { dir } } => {
            fs::create_dir_all(&dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
            for (name, body) in [
                (fixture::SCENARIO_FILE, to_json(&fixture::worked_scenario())),
                (fixture::TENSOR_FILE, to_json(&fixture::worked_tensor().to_document())),
            ] {
                let path = dir.join(name);
                fs::write(&path, body).map_err(|source| CliError::Io { path: path.clone(), source })?;
                emit(out, &format!("wrote {}\n", path.display()))?;
            }
            Ok(0)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes()).map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document serializes");
    s.push('\n');
    s
}

fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let scenario: Scenario = parse(path, &read(path)?)?;
    check_scenario(path, scenario)
}

fn check_scenario(path: &Path, scenario: Scenario) -> Result<Scenario, CliError> {
    let violations = scenario.validate();
    if violations.is_empty() {
        Ok(scenario)
    } else {
        Err(CliError::Invalid { path: path.to_path_buf(), violations })
    }
}

fn load_solvable(path: &Path) -> Result<(PayoffTensor, Option<Scenario>), CliError> {
    let text = read(path)?;
    let value: serde_json::Value = parse(path, &text)?;
    let has = |key: &str| value.as_object().is_some_and(|o| o.contains_key(key));
    if has("shape") {
        let doc: TensorDocument = parse(path, &text)?;
        let t = doc.into_tensor().map_err(|source| CliError::Tensor { path: path.to_path_buf(), source })?;
        Ok((t, None))
    } else if has("region") {
        let scenario = check_scenario(path, parse(path, &text)?)?;
        let t = tensor::build_tensor(&scenario)?;
        Ok((t, Some(scenario)))
    } else {
        Err(CliError::UnknownDocument { path: path.to_path_buf() })
    }
}

#[derive(Serialize)]
struct PlayerCell<'a> {
    player: &'a str,
    site: &'a str,
    #[serde(flatten)]
    breakdown: &'a PayoffBreakdown,
}

#[derive(Serialize)]
struct CellExplanation<'a> {
    profile: Profile,
    players: Vec<PlayerCell<'a>>,
}

#[derive(Serialize)]
struct ExplainedTensor<'a> {
    #[serde(flatten)]
    document: TensorDocument,
    explain: Vec<CellExplanation<'a>>,
}

impl<'a> ExplainedTensor<'a> {
    fn new(t: &PayoffTensor, scenario: &'a Scenario, breakdowns: &'a [Vec<PayoffBreakdown>]) -> Self {
        let explain = t
            .profiles()
            .map(|profile| CellExplanation {
                players: profile
                    .indices()
                    .iter()
                    .enumerate()
                    .map(|(p, &k)| PlayerCell {
                        player: &scenario.players[p].id,
                        site: &scenario.players[p].sites[k].id,
                        breakdown: &breakdowns[p][k],
                    })
                    .collect(),
                profile,
            })
            .collect();
        ExplainedTensor { document: t.to_document(), explain }
    }
}
