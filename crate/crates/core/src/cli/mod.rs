//! The `homlie` command line: argument parsing, configuration, dispatch and
//! report output.
//!
//! Exit codes: `0` when every case passes, `1` when a suite fails, `2` for
//! configuration or input errors.

mod suites;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::linalg::{parse_matrix, Involution, Matrix};
use crate::report::Report;
use crate::{Error, Result};

pub use suites::{algebra_suite, cochain_suite, group_suite, toda_suite};

/// Named tolerance overrides accepted by `--tol NAME=VALUE`, with defaults.
pub const TOLERANCES: &[(&str, f64, &str)] = &[
    ("jacobi", 1e-9, "hom-Jacobi residual relative to |x||y||z|"),
    (
        "twist",
        1e-12,
        "twist multiplicativity and involutivity, relative",
    ),
    (
        "morphism",
        1e-8,
        "conjugation transport bracket and twist residuals",
    ),
    (
        "intertwining",
        1e-10,
        "coboundary/pullback intertwining and d∘d",
    ),
    (
        "rank",
        1e-9,
        "relative pivot threshold for ranks and kernels",
    ),
    ("hom_inverse", 1e-10, "Hom-inverse laws"),
    (
        "one_param",
        1e-9,
        "one-parameter subgroup laws for M_beta curves",
    ),
    (
        "o11",
        1e-12,
        "one-parameter subgroup laws for the O(1,1) curves",
    ),
    (
        "derivative",
        1e-6,
        "central difference against the twisted bracket at h = 1e-4",
    ),
    (
        "theorem",
        1e-9,
        "exact identities of the homomorphism checker",
    ),
    (
        "theorem_derivative",
        1e-6,
        "derivative identity of the homomorphism checker",
    ),
    ("det", 1e-12, "relative error of det(ABP) = -det(AB)"),
    (
        "eig_drift",
        1e-6,
        "absolute eigenvalue drift along the classical Toda flow",
    ),
    (
        "trl2_drift",
        1e-8,
        "relative drift of tr(L^2) along the Toda flow",
    ),
    (
        "symmetry",
        1e-8,
        "relative asymmetry of L before re-symmetrization",
    ),
    ("identity", 1e-12, "tr(L rhs(L)) relative to |L|^3"),
];

/// Resolved tolerances: defaults from [`TOLERANCES`] with overrides applied.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Tolerances {
    pub fn with_overrides(overrides: &[(String, f64)]) -> Result<Self> {
        let mut map: BTreeMap<String, f64> = TOLERANCES
            .iter()
            .map(|(k, v, _)| (k.to_string(), *v))
            .collect();
        for (k, v) in overrides {
            match map.get_mut(k) {
                Some(slot) if *v > 0.0 && v.is_finite() => *slot = *v,
                Some(_) => {
                    return Err(Error::InvalidArgument(format!(
                        "tolerance {k} must be positive and finite"
                    )))
                }
                None => {
                    let known: Vec<&str> = TOLERANCES.iter().map(|t| t.0).collect();
                    return Err(Error::InvalidArgument(format!(
                        "unknown tolerance {k:?}; known: {}",
                        known.join(", ")
                    )));
                }
            }
        }
        Ok(Self(map))
    }

    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::with_overrides(&[]).expect("defaults are valid")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VerifySuite {
    Algebra,
    Cochain,
    Group,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GroupCase {
    Gl,
    On,
    O11,
    Mbeta,
    Morphism,
    Det,
    All,
}

/// Subcommand-specific part of a [`RunConfig`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Task {
    Verify {
        suite: VerifySuite,
    },
    Cohomology {
        k_max: usize,
        json: bool,
    },
    Group {
        case: GroupCase,
    },
    Toda {
        t_end: f64,
        dt: f64,
        record: usize,
        random_seed: u64,
        summary: Option<PathBuf>,
        plot_data: Option<PathBuf>,
    },
}

/// Everything a run depends on; echoed into the report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub task: Task,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub tolerances: Tolerances,
    /// `None` runs the built-in catalog of involutions (verify only).
    pub beta: Option<String>,
    pub c: Option<String>,
    pub l0: Option<String>,
    /// Report path (verify, cohomology, group) or trajectory CSV (toda).
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "homlie",
    version,
    about = "Numerical checks for twisted matrix Hom-Lie algebras, their cohomology, Hom-Lie groups and the deformed Toda flow"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Matrix size (default 2 for verify and cohomology, 3 for group, 4 for toda;
    /// inferred from --beta or --l0 when those fix it).
    #[arg(long)]
    pub n: Option<usize>,
    /// Random seed.
    #[arg(long, env = "HOMLIE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Random samples per check.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Tolerance override NAME=VALUE, repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
    /// Involution: id, diag(1,-1,..), perm(i,j), an inline [[..]] matrix or a matrix file.
    #[arg(long)]
    pub beta: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the algebra, cochain and group verification suites.
    Verify {
        #[arg(value_enum, default_value_t = VerifySuite::All)]
        suite: VerifySuite,
        #[command(flatten)]
        common: CommonArgs,
        /// Write the JSON report here and print the text table instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force cohomology dimensions of both complexes.
    Cohomology {
        #[command(flatten)]
        common: CommonArgs,
        /// Highest degree (default n²).
        #[arg(long)]
        kmax: Option<usize>,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hom-Lie group checks.
    Group {
        #[arg(long = "case", value_enum, default_value_t = GroupCase::All)]
        case: GroupCase,
        #[command(flatten)]
        common: CommonArgs,
        /// Conjugating matrix for the homomorphism checker (inline or file).
        #[arg(long = "C", alias = "c")]
        c: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the deformed Toda flow.
    Toda {
        #[command(flatten)]
        common: CommonArgs,
        /// Initial symmetric matrix (inline or file).
        #[arg(long, conflicts_with = "random_seed")]
        l0: Option<String>,
        /// Seed for a random symmetric tridiagonal start (default: --seed).
        #[arg(long)]
        random_seed: Option<u64>,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Record every R steps.
        #[arg(long, default_value_t = 100)]
        record: usize,
        /// Trajectory CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Drift summary JSON.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Reduced CSV (t, eigenvalues, trL2).
        #[arg(long)]
        plot_data: Option<PathBuf>,
    },
}

fn parse_tol(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("bad tolerance value {v:?}"))?;
    Ok((k.trim().to_string(), v))
}

fn inline_args(s: &str, head: &str) -> Option<Vec<String>> {
    let body = s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(body.split(',').map(|t| t.trim().to_string()).collect())
}

/// A matrix from inline JSON text or a file.
pub fn load_matrix(spec: &str) -> Result<Matrix> {
    let s = spec.trim();
    if s.starts_with('[') {
        parse_matrix(s)
    } else {
        parse_matrix(&fs::read_to_string(s)?)
    }
}

fn inferred_dim(spec: &str) -> Result<Option<usize>> {
    let s = spec.trim();
    if s == "id" || s.starts_with("perm(") {
        return Ok(None);
    }
    if let Some(args) = inline_args(s, "diag") {
        return Ok(Some(args.len()));
    }
    Ok(Some(load_matrix(s)?.n()))
}

/// Parses the inline involution forms (`id`, `diag(..)`, `perm(i,j)`), inline
/// matrices and matrix files; every form is validated as an involution.
pub fn parse_beta(spec: &str, n: usize) -> Result<Involution> {
    let s = spec.trim();
    let beta = if s == "id" {
        Involution::identity(n)
    } else if let Some(args) = inline_args(s, "diag") {
        let signs = args
            .iter()
            .map(|a| {
                a.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad diag entry {a:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Involution::diag_signs(&signs)?
    } else if let Some(args) = inline_args(s, "perm") {
        let idx = args
            .iter()
            .map(|a| {
                a.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad perm index {a:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if idx.len() != 2 {
            return Err(Error::Parse(format!(
                "perm takes two indices, got {}",
                idx.len()
            )));
        }
        Involution::transposition(n, idx[0], idx[1])?
    } else {
        Involution::new(load_matrix(s)?)?
    };
    if beta.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: beta.n(),
        });
    }
    Ok(beta)
}

/// Short inline form of an involution when one exists, else its rows as JSON.
pub fn beta_label(beta: &Involution) -> String {
    let m = beta.matrix();
    let n = m.n();
    if beta.is_identity() {
        return "id".into();
    }
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || m.get(i, j) == 0.0));
    if diagonal {
        let signs: Vec<String> = (0..n).map(|i| format!("{}", m.get(i, i))).collect();
        return format!("diag({})", signs.join(","));
    }
    for i in 0..n {
        for j in i + 1..n {
            if *m == Matrix::transposition(n, i, j) {
                return format!("perm({},{})", i + 1, j + 1);
            }
        }
    }
    serde_json::to_string(&m.rows()).expect("finite")
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let resolve_n =
            |common: &CommonArgs, from: &[Option<&String>], default: usize| -> Result<usize> {
                let mut n = common.n;
                for spec in from.iter().flatten() {
                    if let Some(found) = inferred_dim(spec)? {
                        match n {
                            Some(expected) if expected != found => {
                                return Err(Error::DimensionMismatch { expected, found })
                            }
                            _ => n = Some(found),
                        }
                    }
                }
                let n = n.unwrap_or(default);
                if n == 0 {
                    return Err(Error::EmptyMatrix);
                }
                Ok(n)
            };
        let base = |common: CommonArgs, task: Task, n: usize, c, l0, out| -> Result<Self> {
            if common.samples == 0 {
                return Err(Error::InvalidArgument(
                    "--samples must be at least 1".into(),
                ));
            }
            Ok(Self {
                task,
                n,
                seed: common.seed,
                samples: common.samples,
                tolerances: Tolerances::with_overrides(&common.tol)?,
                beta: common.beta,
                c,
                l0,
                out,
            })
        };
        match cli.command {
            Command::Verify { suite, common, out } => {
                let n = resolve_n(&common, &[common.beta.as_ref()], 2)?;
                base(common, Task::Verify { suite }, n, None, None, out)
            }
            Command::Cohomology {
                common,
                kmax,
                json,
                out,
            } => {
                let n = resolve_n(&common, &[common.beta.as_ref()], 2)?;
                let k_max = kmax.unwrap_or(n * n);
                base(common, Task::Cohomology { k_max, json }, n, None, None, out)
            }
            Command::Group {
                case,
                common,
                c,
                out,
            } => {
                let n = resolve_n(&common, &[common.beta.as_ref(), c.as_ref()], 3)?;
                base(common, Task::Group { case }, n, c, None, out)
            }
            Command::Toda {
                common,
                l0,
                random_seed,
                t_end,
                dt,
                record,
                out,
                summary,
                plot_data,
            } => {
                let n = resolve_n(&common, &[common.beta.as_ref(), l0.as_ref()], 4)?;
                let task = Task::Toda {
                    t_end,
                    dt,
                    record,
                    random_seed: random_seed.unwrap_or(common.seed),
                    summary,
                    plot_data,
                };
                base(common, task, n, None, l0, out)
            }
        }
    }

    fn single_beta(&self) -> Result<Involution> {
        match &self.beta {
            Some(spec) => parse_beta(spec, self.n),
            None => Ok(Involution::identity(self.n)),
        }
    }

    /// The involutions a run covers: the given one, or the catalog
    /// `id`, `diag(1,-1,..)` and (for `n ≥ 2`) `perm(1,2)`.
    pub fn betas(&self) -> Result<Vec<Involution>> {
        if self.beta.is_some() {
            return Ok(vec![self.single_beta()?]);
        }
        let mut out = vec![Involution::identity(self.n)];
        if self.n >= 2 {
            out.push(Involution::alternating(self.n));
            out.push(Involution::transposition(self.n, 1, 2)?);
        }
        Ok(out)
    }
}

/// Executes a configuration. The returned report carries the config echo.
pub fn run(config: &RunConfig) -> Result<Report> {
    let tol = &config.tolerances;
    let mut report = match &config.task {
        Task::Verify { suite } => {
            let betas = config.betas()?;
            let label = if config.beta.is_some() {
                beta_label(&betas[0])
            } else {
                "catalog".into()
            };
            let mut r = Report::new("verify", config.n, label);
            for (i, beta) in betas.iter().enumerate() {
                let seed = config.seed.wrapping_add(1000 * i as u64);
                let tag = beta_label(beta);
                if matches!(suite, VerifySuite::Algebra | VerifySuite::All) {
                    r.absorb(
                        algebra_suite(beta, config.samples, seed, tol)?,
                        &format!("algebra[{tag}]: "),
                    );
                }
                if matches!(suite, VerifySuite::Cochain | VerifySuite::All) {
                    r.absorb(
                        cochain_suite(beta, config.samples, seed, tol)?,
                        &format!("cochain[{tag}]: "),
                    );
                }
                if matches!(suite, VerifySuite::Group | VerifySuite::All) {
                    r.absorb(
                        group_suite(beta, GroupCase::All, None, config.samples, seed, tol)?,
                        &format!("group[{tag}]: "),
                    );
                }
            }
            r
        }
        Task::Cohomology { k_max, .. } => {
            suites::cohomology_suite(&config.single_beta()?, *k_max, tol)?
        }
        Task::Group { case } => {
            let c = config.c.as_deref().map(load_matrix).transpose()?;
            let beta = config.single_beta()?;
            let mut r = group_suite(&beta, *case, c, config.samples, config.seed, tol)?;
            r.beta_id = beta_label(&beta);
            r
        }
        Task::Toda {
            t_end,
            dt,
            record,
            random_seed,
            summary,
            plot_data,
        } => {
            let l0 = match &config.l0 {
                Some(spec) => Some(load_matrix(spec)?),
                None => None,
            };
            let files = suites::TodaFiles {
                csv: config.out.clone(),
                summary: summary.clone(),
                plot: plot_data.clone(),
            };
            toda_suite(
                &config.single_beta()?,
                config.n,
                l0,
                *random_seed,
                *t_end,
                *dt,
                *record,
                &files,
                tol,
            )?
        }
    };
    report.config = serde_json::to_value(config)?;
    Ok(report)
}

fn emit(config: &RunConfig, report: &Report) -> Result<()> {
    let json = report.to_json();
    let stdout = std::io::stdout();
    let mut stdout = stdout.lock();
    match (&config.task, &config.out) {
        (Task::Toda { .. }, _) | (_, None) => {
            if let Task::Cohomology { json: false, .. } = config.task {
                writeln!(
                    stdout,
                    "{}",
                    report.data["table"].as_str().unwrap_or_default()
                )?;
                write!(stdout, "{}", report.to_text())?;
            } else {
                writeln!(stdout, "{json}")?;
                eprint!("{}", report.to_text());
            }
        }
        (_, Some(path)) => {
            fs::write(path, format!("{json}\n"))?;
            write!(stdout, "{}", report.to_text())?;
        }
    }
    Ok(())
}

/// Entry point of the `homlie` binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = RunConfig::from_cli(cli).and_then(|config| {
        let report = run(&config)?;
        emit(&config, &report)?;
        Ok(report.pass)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("homlie: {e}");
            ExitCode::from(2)
        }
    }
}
