//! Command-line front end. Every command reads JSON inputs, writes a JSON,
//! CSV or text report, and exits with a code determined by the verdict:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, stable, or a stabilizing fan was found |
//! | 1 | unstable, no model exists, not possible by refinement, or no recurrence |
//! | 2 | invalid input |
//! | 3 | singular or non-diagonalizable matrix |
//! | 4 | a search ran out of budget |

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dynamics::{is_2_stable, strong_1_stability};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::io;
use crate::linalg::IntMatrix;
use crate::polytope::{degree_sequence, min_recurrence, LatticePolytope, LinearRecurrence};
use crate::spectra::{classify_case, CaseLabel};
use crate::stabilizer::{case2_subclassify, stabilize, Budget, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MATRIX: i32 = 3;
pub const EXIT_EXHAUSTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "toric-dyn", version, about = "Exact stability analysis of monomial maps on toric threefolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct MatrixArg {
    /// Matrix JSON file, or `-` for standard input.
    #[arg(long, short)]
    pub matrix: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct FanArg {
    /// Fan JSON file.
    #[arg(long, conflicts_with = "pn", required_unless_present = "pn")]
    pub fan: Option<PathBuf>,
    /// Use the fan of projective 3-space.
    #[arg(long)]
    pub pn: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spectral case of the matrix and of its dual.
    Classify(MatrixArg),
    /// Stability of the map of `A^power` in codimension 1 or 2.
    Stability {
        #[command(flatten)]
        fan: FanArg,
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        codim: u8,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        power: u32,
    },
    /// Refine the fan to a stable model, or explain why none exists.
    Stabilize {
        #[command(flatten)]
        fan: FanArg,
        #[command(flatten)]
        matrix: MatrixArg,
        /// A single limit for every search, or `capture=N,subdivisions=N,k0=N`.
        /// Overrides the TORIC_BUDGET environment variable.
        #[arg(long)]
        budget: Option<String>,
    },
    /// Degrees of the iterates against an ample polytope.
    Degrees {
        #[command(flatten)]
        matrix: MatrixArg,
        /// Polytope JSON file.
        #[arg(long, conflicts_with = "pn", required_unless_present = "pn")]
        polytope: Option<PathBuf>,
        /// Use the standard simplex.
        #[arg(long)]
        pn: bool,
        #[arg(long, short, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=3))]
        p: u8,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        kmax: u32,
        /// Also find the minimal linear recurrence of the sequence.
        #[arg(long)]
        recurrence: bool,
    },
    /// Minimal linear recurrence of a degree table.
    Recurrence {
        /// CSV file of `k,deg` rows.
        #[arg(long)]
        from_degrees: PathBuf,
    },
    /// The dual matrix `|det A| A^-1` and the determinant.
    Dualize(MatrixArg),
}

/// Everything that determines a run, embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<String>,
    pub codim: Option<u8>,
    pub power: Option<u32>,
    pub p: Option<u8>,
    pub kmax: Option<u32>,
    pub budget: Option<Budget>,
    pub output: Option<String>,
    pub format: Format,
}

fn path_str(p: &std::path::Path) -> String {
    p.display().to_string()
}

fn fan_input(f: &FanArg) -> String {
    match &f.fan {
        Some(p) => path_str(p),
        None => "--pn".into(),
    }
}

impl RunConfig {
    fn new(cli: &Cli, budget: Option<Budget>) -> Self {
        let default_format = match cli.command {
            Command::Degrees { .. } => Format::Csv,
            Command::Recurrence { .. } => Format::Text,
            _ => Format::Json,
        };
        let mut cfg = RunConfig {
            command: String::new(),
            inputs: Vec::new(),
            codim: None,
            power: None,
            p: None,
            kmax: None,
            budget,
            output: cli.out.as_deref().map(path_str),
            format: cli.format.unwrap_or(default_format),
        };
        match &cli.command {
            Command::Classify(m) => {
                cfg.command = "classify".into();
                cfg.inputs = vec![path_str(&m.matrix)];
            }
            Command::Stability { fan, matrix, codim, power } => {
                cfg.command = "stability".into();
                cfg.inputs = vec![fan_input(fan), path_str(&matrix.matrix)];
                cfg.codim = Some(*codim);
                cfg.power = Some(*power);
            }
            Command::Stabilize { fan, matrix, .. } => {
                cfg.command = "stabilize".into();
                cfg.inputs = vec![fan_input(fan), path_str(&matrix.matrix)];
            }
            Command::Degrees { matrix, polytope, p, kmax, .. } => {
                cfg.command = "degrees".into();
                cfg.inputs = vec![
                    path_str(&matrix.matrix),
                    polytope.as_deref().map(path_str).unwrap_or_else(|| "--pn".into()),
                ];
                cfg.p = Some(*p);
                cfg.kmax = Some(*kmax);
            }
            Command::Recurrence { from_degrees } => {
                cfg.command = "recurrence".into();
                cfg.inputs = vec![path_str(from_degrees)];
            }
            Command::Dualize(m) => {
                cfg.command = "dualize".into();
                cfg.inputs = vec![path_str(&m.matrix)];
            }
        }
        cfg
    }
}

/// A finished report and the exit code it implies.
pub struct Report {
    pub body: Value,
    pub text: String,
    pub csv: Option<String>,
    pub code: i32,
}

fn read_input(path: &std::path::Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn load_matrix(m: &MatrixArg) -> Result<IntMatrix> {
    let a = io::parse_matrix(&read_input(&m.matrix)?)?;
    a.require_dim(3)?;
    Ok(a)
}

fn load_fan(f: &FanArg) -> Result<Fan> {
    match &f.fan {
        Some(p) => io::parse_fan(&read_input(p)?),
        None => Ok(Fan::projective_space()),
    }
}

/// Exit code of a library error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::SingularMatrix | Error::NotDiagonalizable => EXIT_MATRIX,
        _ => EXIT_INPUT,
    }
}

/// Exit code of a stabilization verdict.
pub fn outcome_code(o: &Outcome) -> i32 {
    match o {
        Outcome::StabilizedFan { .. } => EXIT_OK,
        Outcome::NoModelExists { .. } | Outcome::NotByRefinement { .. } => EXIT_NEGATIVE,
        Outcome::SearchExhausted { .. } => EXIT_EXHAUSTED,
    }
}

fn recurrence_text(r: Option<&LinearRecurrence>) -> String {
    match r {
        Some(r) => format!("{} (certified on {} terms)", r, r.window),
        None => "no linear recurrence certified by the data".into(),
    }
}

fn execute(cli: &Cli, budget: Option<Budget>) -> Result<Report> {
    match &cli.command {
        Command::Classify(m) => {
            let a = load_matrix(m)?;
            let case = classify_case(&a)?;
            let text = format!(
                "case {}\ndual case {}\neigenvalues: {}",
                case.label,
                case.label.dual(),
                crate::spectra::describe_eigenvalues(&case.spectrum).join(", ")
            );
            Ok(Report {
                body: io::classification_to_json(&case),
                text,
                csv: None,
                code: EXIT_OK,
            })
        }
        Command::Stability { fan, matrix, codim, power } => {
            let f = load_fan(fan)?;
            let ak = load_matrix(matrix)?.pow(*power);
            let report = if *codim == 1 {
                strong_1_stability(&f, &ak)?
            } else {
                is_2_stable(&f, &ak)?
            };
            let mut text = format!("{:?} in codimension {codim} for power {power}", report.verdict);
            if let Some(w) = &report.witness {
                text.push_str(&format!(
                    "\nray {} fails at step {}: image through {}",
                    crate::linalg::lattice::format_ivec(&w.ray_vector),
                    w.k,
                    crate::linalg::lattice::format_ivec(&w.image_point)
                ));
            }
            Ok(Report {
                body: io::stability_to_json(&f, &report),
                text,
                csv: None,
                code: if report.is_stable() { EXIT_OK } else { EXIT_NEGATIVE },
            })
        }
        Command::Stabilize { fan, matrix, .. } => {
            let f = load_fan(fan)?;
            let a = load_matrix(matrix)?;
            let budget = budget.unwrap_or_default();
            let (body, outcome, subcase) =
                if classify_case(&a)?.label == CaseLabel::IrrationalPairDominated {
                    let r = case2_subclassify(&f, &a, &budget)?;
                    (io::case2_to_json(&f, &r), r.outcome, Some(r.subcase.label))
                } else {
                    let out = stabilize(&f, &a, &budget)?;
                    (io::outcome_to_json(&out), out, None)
                };
            let mut text = format!("{} ({})", outcome.verdict.name(), outcome.case);
            if let Some(label) = subcase {
                text.push_str(&format!(", subcase {label}"));
            }
            if let Some(k0) = outcome.verdict.k0() {
                text.push_str(&format!(", k0 = {k0}"));
            }
            for line in &outcome.log {
                text.push_str(&format!("\n  {line}"));
            }
            Ok(Report {
                body,
                text,
                csv: None,
                code: outcome_code(&outcome.verdict),
            })
        }
        Command::Degrees { matrix, polytope, p, kmax, recurrence, .. } => {
            let a = load_matrix(matrix)?;
            let poly = match polytope {
                Some(path) => io::parse_polytope(&read_input(path)?)?,
                None => LatticePolytope::standard_simplex(),
            };
            let seq = degree_sequence(&a, &poly, *p as usize, *kmax as usize)?;
            let rec = if *recurrence { seq.min_recurrence()? } else { None };
            let mut text = seq
                .values
                .iter()
                .map(io::rational_to_string)
                .collect::<Vec<_>>()
                .join(", ");
            if *recurrence {
                text.push('\n');
                text.push_str(&recurrence_text(rec.as_ref()));
            }
            Ok(Report {
                body: io::degrees_to_json(&seq, rec.as_ref()),
                text,
                csv: Some(seq.to_csv()),
                code: EXIT_OK,
            })
        }
        Command::Recurrence { from_degrees } => {
            let values = io::parse_degree_csv(&read_input(from_degrees)?)?;
            let rec = min_recurrence(&values)?;
            let body = json!({
                "terms": values.len(),
                "recurrence": rec.as_ref().map(|r| json!({
                    "relation": r.to_string(),
                    "coeffs": r.coeffs.iter().map(io::rational_to_string).collect::<Vec<_>>(),
                    "window": r.window,
                })),
            });
            Ok(Report {
                body,
                text: recurrence_text(rec.as_ref()),
                csv: None,
                code: if rec.is_some() { EXIT_OK } else { EXIT_NEGATIVE },
            })
        }
        Command::Dualize(m) => {
            let a = load_matrix(m)?;
            let det = a.det();
            if det == 0.into() {
                return Err(Error::SingularMatrix);
            }
            let dual = a.dual();
            Ok(Report {
                text: format!("det = {det}\n{dual}"),
                body: json!({
                    "det": io::int_to_json(&det),
                    "dual": io::matrix_to_json(&dual),
                }),
                csv: None,
                code: EXIT_OK,
            })
        }
    }
}

fn render(report: &Report, cfg: &RunConfig) -> String {
    match cfg.format {
        Format::Text => format!("{}\n", report.text),
        Format::Csv => match &report.csv {
            Some(csv) => csv.clone(),
            None => format!("{}\n", report.text),
        },
        Format::Json => {
            let mut body = report.body.clone();
            if let Value::Object(map) = &mut body {
                map.insert(
                    "tool".into(),
                    json!({ "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") }),
                );
                map.insert("config".into(), serde_json::to_value(cfg).unwrap_or(Value::Null));
            }
            format!("{}\n", serde_json::to_string_pretty(&body).unwrap_or_default())
        }
    }
}

fn resolve_budget(cli: &Cli) -> Result<Option<Budget>> {
    match &cli.command {
        Command::Stabilize { budget: Some(text), .. } => Budget::parse(text).map(Some),
        Command::Stabilize { budget: None, .. } => Budget::from_env().map(Some),
        _ => Ok(None),
    }
}

/// Runs a parsed command line, writing the report to `stdout` (or the
/// `--out` file) and diagnostics to `stderr`. Returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = resolve_budget(cli).and_then(|budget| {
        let cfg = RunConfig::new(cli, budget);
        execute(cli, budget).map(|r| (r, cfg))
    });
    let (report, cfg) = match outcome {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return error_code(&e);
        }
    };
    let rendered = render(&report, &cfg);
    let written = match &cli.out {
        Some(path) => fs::write(path, rendered),
        None => stdout.write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INPUT;
    }
    report.code
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            code
        }
    }
}
