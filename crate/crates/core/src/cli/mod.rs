//! Command-line surface: one subcommand per verification, JSON/CSV/table output,
//! exit status 0 (computed or verified), 1 (falsified), 2 (usage or input error).

pub mod report;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::homology::{
    gl_cohomology, grassmannian_poincare, twisted_config_bm, GradedTateVector, HomologyError,
};
use crate::linalg::{
    codimension, general_position_bound, hilbert_function, ordinary_square_dim, regularity_scan,
    symbolic_square_dim, trial_rng, verify_codim_lemma, LinalgError, MonomialBasis,
    ParameterTriple, PointConfiguration, SquareMode,
};
use crate::vassiliev::{
    alexander_dual, assemble_e1, stable_range_report, vanishing_band, verify_stable_match, E1Error,
};

pub use report::{Outcome, SeedSource, Status};

/// Environment variable that replaces the default seed when `--seed` is absent.
pub const SEED_ENV: &str = "STABCOH_SEED";
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: u64 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Rank of the singularity conditions at a configuration
    Codim,
    /// Seeded check that distinct points impose N(n+1) conditions for d >= 2N-1
    VerifyLemma,
    /// Hilbert functions of R/I^(2) and R/I^2
    Hilbert,
    /// Stabilization degree of the symbolic Hilbert function
    Regularity,
    /// Empirical bound for configurations in general linear position
    D0Scan,
    /// Homology of the Grassmannian G(l, C^{n+1})
    Grassmann,
    /// Sign-twisted Borel-Moore homology of B_l(P^n)
    ConfigHomology,
    /// Cohomology of GL_{n+1}(C)
    GlCohomology,
    /// E1 page of the Vassiliev spectral sequence
    E1Page,
    /// Dual strata degrees against the cohomology of GL_{n+1}(C)
    StableVerify,
    /// Vanishing band between (n+1)^2 and N
    Band,
    /// Predicted cohomology in the stable range k < (d+1)/2
    StableRange,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Codim => "codim",
            Command::VerifyLemma => "verify-lemma",
            Command::Hilbert => "hilbert",
            Command::Regularity => "regularity",
            Command::D0Scan => "d0-scan",
            Command::Grassmann => "grassmann",
            Command::ConfigHomology => "config-homology",
            Command::GlCohomology => "gl-cohomology",
            Command::E1Page => "e1-page",
            Command::StableVerify => "stable-verify",
            Command::Band => "band",
            Command::StableRange => "stable-range",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    #[default]
    Random,
    Coordinate,
    Collinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum ModeArg {
    Symbolic,
    Ordinary,
    #[default]
    Both,
}

#[derive(Debug, Parser)]
#[command(
    name = "stabcoh",
    version,
    about = "Exact checks behind the stable cohomology of non-singular hypersurfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true)]
    pub d: Option<u32>,
    #[arg(long, global = true)]
    pub n: Option<u32>,
    #[arg(long = "N", global = true)]
    pub num_points: Option<u32>,
    #[arg(long, global = true)]
    pub l: Option<u32>,
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON file: array of points, each an array of rational strings
    #[arg(long, global = true, conflicts_with = "points_json")]
    pub points: Option<PathBuf>,
    /// Inline JSON points, same format as --points
    #[arg(long = "points-json", global = true)]
    pub points_json: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub layout: Option<Layout>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long = "d-max", global = true)]
    pub d_max: Option<u32>,
    /// Worker threads for independent trials (default: available parallelism)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointsSource {
    File(PathBuf),
    Inline(String),
    Generated(Layout),
}

/// Fully resolved invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub d: Option<u32>,
    pub n: Option<u32>,
    pub num_points: Option<u32>,
    pub l: Option<u32>,
    pub trials: u64,
    pub seed: u64,
    pub seed_source: SeedSource,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub points: PointsSource,
    pub d_max: Option<u32>,
    pub mode: ModeArg,
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// Resolves defaults; `env_seed` is the value of [`SEED_ENV`], if set.
    pub fn from_cli(cli: Cli, env_seed: Option<String>) -> Result<Self, CliError> {
        let (seed, seed_source) = match (cli.seed, env_seed) {
            (Some(s), _) => (s, SeedSource::Flag),
            (None, Some(raw)) => {
                let s = raw.trim().parse().map_err(|_| {
                    CliError::Usage(format!(
                        "{SEED_ENV}={raw:?} is not a 64-bit unsigned integer"
                    ))
                })?;
                (s, SeedSource::Env)
            }
            (None, None) => (DEFAULT_SEED, SeedSource::Default),
        };
        let points = match (cli.points, cli.points_json, cli.layout) {
            (Some(_), _, Some(_)) | (_, Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "--layout cannot be combined with explicit points".into(),
                ))
            }
            (Some(p), _, None) => PointsSource::File(p),
            (None, Some(s), None) => PointsSource::Inline(s),
            (None, None, layout) => PointsSource::Generated(layout.unwrap_or_default()),
        };
        if cli.jobs == Some(0) {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        Ok(Self {
            command: cli.command,
            d: cli.d,
            n: cli.n,
            num_points: cli.num_points,
            l: cli.l,
            trials: cli.trials.unwrap_or(DEFAULT_TRIALS),
            seed,
            seed_source,
            format: cli.format,
            output: cli.output,
            points,
            d_max: cli.d_max,
            mode: cli.mode.unwrap_or_default(),
            jobs: cli.jobs,
        })
    }

    fn need(&self, value: Option<u32>, flag: &str) -> Result<u32, CliError> {
        value.ok_or_else(|| CliError::Usage(format!("{} requires --{flag}", self.command.name())))
    }

    fn params(&self) -> Result<ParameterTriple, CliError> {
        let d = self.need(self.d, "d")?;
        let n = self.need(self.n, "n")?;
        let count = self.need(self.num_points, "N")?;
        ParameterTriple::new(d, n, count).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    E1(#[from] E1Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Failures that contradict a claimed bound count as falsification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Linalg(
                LinalgError::NoStabilization { .. } | LinalgError::BoundExhausted { .. },
            ) => 1,
            _ => 2,
        }
    }
}

/// Runs the configured subcommand on the current rayon pool and renders the
/// report in the configured format.
pub fn run(config: &RunConfig) -> Result<(Status, String), CliError> {
    let (params, outcome) = dispatch(config)?;
    let json = report::envelope(
        config.command.name(),
        params,
        config.seed,
        config.seed_source,
        outcome.status,
        outcome.json,
    );
    let body = match config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => outcome.csv,
        Format::Table => {
            let mut s = format!(
                "{} {} | {} | seed {} ({:?})\n",
                report::ARTIFACT,
                report::VERSION,
                config.command.name(),
                config.seed,
                config.seed_source
            );
            s.push_str(&outcome.table);
            let _ = writeln!(s, "status: {:?}", outcome.status);
            s
        }
    };
    Ok((outcome.status, body))
}

/// Parses arguments, runs inside a pool of `--jobs` threads and writes the
/// report. Returns the process exit code.
pub fn main_with_args<I, T>(args: I, env_seed: Option<String>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let config = match RunConfig::from_cli(cli, env_seed) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("stabcoh: {e}");
            return 2;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        builder = builder.num_threads(j);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("stabcoh: cannot start worker pool: {e}");
            return 2;
        }
    };
    match pool.install(|| run(&config)) {
        Ok((status, body)) => {
            let written = match &config.output {
                Some(path) => std::fs::write(path, body.as_bytes()),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(body.as_bytes())
                }
            };
            if let Err(e) = written {
                eprintln!("stabcoh: {e}");
                return 2;
            }
            status.exit_code()
        }
        Err(e) => {
            eprintln!("stabcoh: {e}");
            e.exit_code()
        }
    }
}

fn load_points(config: &RunConfig) -> Result<(PointConfiguration, Value), CliError> {
    let parse = |text: &str| {
        PointConfiguration::from_json(text).map_err(|e| match e {
            LinalgError::Parse { .. } => CliError::Input(e.to_string()),
            other => CliError::Input(format!("invalid configuration: {other}")),
        })
    };
    let (config_points, source) = match &config.points {
        PointsSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            (parse(&text)?, json!({"file": path.display().to_string()}))
        }
        PointsSource::Inline(text) => (parse(text)?, json!("inline")),
        PointsSource::Generated(layout) => {
            let n = config.need(config.n, "n")? as usize;
            let count = config.need(config.num_points, "N")? as usize;
            if n < 1 || count < 1 {
                return Err(CliError::Usage("need n >= 1 and N >= 1".into()));
            }
            let pts = match layout {
                Layout::Random => {
                    PointConfiguration::random(n, count, &mut trial_rng(config.seed, 0))?
                }
                Layout::Coordinate => PointConfiguration::coordinate_points(n, count)
                    .map_err(|e| CliError::Usage(e.to_string()))?,
                Layout::Collinear => PointConfiguration::collinear(n, count)?,
            };
            (pts, serde_json::to_value(layout).expect("enum"))
        }
    };
    if let Some(n) = config.n {
        if n as usize != config_points.dimension() {
            return Err(CliError::Usage(format!(
                "--n {n} does not match points in P^{}",
                config_points.dimension()
            )));
        }
    }
    if let Some(count) = config.num_points {
        if count as usize != config_points.len() {
            return Err(CliError::Usage(format!(
                "--N {count} does not match {} points",
                config_points.len()
            )));
        }
    }
    Ok((config_points, source))
}

fn graded_table(t: &GradedTateVector) -> String {
    t.to_string()
}

fn dispatch(config: &RunConfig) -> Result<(Value, Outcome), CliError> {
    match config.command {
        Command::Codim => codim_cmd(config),
        Command::VerifyLemma => verify_lemma_cmd(config),
        Command::Hilbert => hilbert_cmd(config),
        Command::Regularity => regularity_cmd(config),
        Command::D0Scan => d0_scan_cmd(config),
        Command::Grassmann | Command::ConfigHomology => {
            let n = config.need(config.n, "n")?;
            let l = config.need(config.l, "l")?;
            let table = if config.command == Command::Grassmann {
                grassmannian_poincare(l, n)?
            } else {
                twisted_config_bm(l, n)?
            };
            let payload = json!({ "total_dim": table.total_dim(), "table": table });
            Ok((
                json!({"n": n, "l": l}),
                Outcome {
                    status: Status::Computed,
                    json: payload,
                    csv: table.to_csv(),
                    table: graded_table(&table),
                },
            ))
        }
        Command::GlCohomology => {
            let n = config.need(config.n, "n")?;
            let (generators, table) = gl_cohomology(n)?;
            let payload = json!({
                "generators": generators,
                "top_degree": generators.top_degree(),
                "total_dim": table.total_dim(),
                "table": table,
            });
            Ok((
                json!({"n": n}),
                Outcome {
                    status: Status::Computed,
                    json: payload,
                    csv: table.to_csv(),
                    table: graded_table(&table),
                },
            ))
        }
        Command::E1Page => {
            let params = config.params()?;
            let page = assemble_e1(params)?;
            let dual = alexander_dual(&page)?;
            let columns: serde_json::Map<String, Value> = page
                .columns
                .iter()
                .map(|(l, col)| {
                    (
                        l.to_string(),
                        serde_json::to_value(&col.bm_table).expect("table"),
                    )
                })
                .collect();
            let ranges: serde_json::Map<String, Value> = page
                .columns
                .iter()
                .map(|(l, col)| (l.to_string(), json!(col.range)))
                .collect();
            let payload = json!({
                "c": page.c,
                "columns": columns,
                "column_ranges": ranges,
                "fN_threshold": page.fn_threshold,
                "phi_bounds": page.phi_bounds,
                "dual": dual,
                "dual_reliable_below": params.num_points,
                "regime": page.regime,
            });
            let mut table = format!("c = {}, F_N threshold = {}\n", page.c, page.fn_threshold);
            let _ = writeln!(
                table,
                "{:>4} {:>10} {:>8} {:>6} {:>8}",
                "l", "bm_degree", "dual", "dim", "weight"
            );
            for e in page.entries() {
                let _ = writeln!(
                    table,
                    "{:>4} {:>10} {:>8} {:>6} {:>8}",
                    e.l, e.bm_degree, e.dual_degree, e.dim, e.weight
                );
            }
            for note in &page.regime.notes {
                let _ = writeln!(table, "note: {note}");
            }
            Ok((
                serde_json::to_value(params).expect("params"),
                Outcome {
                    status: Status::Computed,
                    json: payload,
                    csv: page.to_csv(),
                    table,
                },
            ))
        }
        Command::StableVerify => {
            let n = config.need(config.n, "n")?;
            let m = verify_stable_match(n)?;
            let (_, gl) = gl_cohomology(n)?;
            let mut csv = String::from("degree,strata_dim,gl_dim\n");
            let mut degrees: Vec<i64> = m
                .strata_table
                .degrees()
                .chain(gl.restrict(1..).degrees())
                .collect();
            degrees.sort_unstable();
            degrees.dedup();
            for deg in degrees {
                let _ = writeln!(csv, "{deg},{},{}", m.strata_table.dim(deg), gl.dim(deg));
            }
            let table = format!(
                "strata dual degrees: {:?}\nGL positive degrees: {:?}\nweights match: {}\n",
                m.strata_degrees, m.gl_degrees, m.weights_match
            );
            Ok((
                json!({"n": n}),
                Outcome::new(Status::from_check(m.verified), &m, csv, table),
            ))
        }
        Command::Band => {
            let params = config.params()?;
            let b = vanishing_band(params)?;
            let page = assemble_e1(params)?;
            let mut csv = String::from("l,bm_degree,dim,in_bm_interval\n");
            for e in page.entries() {
                let inside = (b.bm_interval.0..=b.bm_interval.1).contains(&e.bm_degree);
                let _ = writeln!(csv, "{},{},{},{}", e.l, e.bm_degree, e.dim, inside);
            }
            let mut table = format!(
                "c = {}; cohomological band ({}, {}); BM interval [{}, {}]; min support {:?}\n",
                b.c,
                b.band.0,
                b.band.1,
                b.bm_interval.0,
                b.bm_interval.1,
                b.min_supported_bm_degree
            );
            let _ = writeln!(table, "offending entries: {}", b.offending.len());
            for note in &b.regime.notes {
                let _ = writeln!(table, "note: {note}");
            }
            Ok((
                serde_json::to_value(params).expect("params"),
                Outcome::new(Status::from_check(b.verified), &b, csv, table),
            ))
        }
        Command::StableRange => {
            let d = config.need(config.d, "d")?;
            let n = config.need(config.n, "n")?;
            let r = stable_range_report(d, n)?;
            let mut csv = String::from("k,dim_x,dim_moduli,e1_upper_bound\n");
            let mut table = format!(
                "stable range k <= {} (N = {})\n",
                r.max_stable_degree, r.num_points
            );
            let _ = writeln!(
                table,
                "{:>4} {:>6} {:>6} {:>8}  weights (weight - degree = l)",
                "k", "H^k(X)", "H^k(M)", "E1 bound"
            );
            for row in &r.rows {
                let bound = row
                    .e1_upper_bound
                    .map_or(String::from("-"), |b| b.to_string());
                let _ = writeln!(csv, "{},{},{},{}", row.k, row.dim_x, row.dim_moduli, bound);
                let weights: Vec<String> = row
                    .pieces
                    .iter()
                    .map(|p| format!("{}x w{} (l={})", p.dim, p.weight, p.l))
                    .collect();
                let _ = writeln!(
                    table,
                    "{:>4} {:>6} {:>6} {:>8}  {}",
                    row.k,
                    row.dim_x,
                    row.dim_moduli,
                    bound,
                    weights.join(", ")
                );
            }
            let status = Status::from_check(r.consistent);
            Ok((
                json!({"d": d, "n": n}),
                Outcome::new(status, &r, csv, table),
            ))
        }
    }
}

fn codim_cmd(config: &RunConfig) -> Result<(Value, Outcome), CliError> {
    let d = config.need(config.d, "d")?;
    let (pts, source) = load_points(config)?;
    let codim = codimension(d, &pts)?;
    let expected = pts.len() * (pts.dimension() + 1);
    let ambient = MonomialBasis::new(d, pts.dimension()).len();
    let payload = json!({
        "points": pts,
        "codimension": codim,
        "expected": expected,
        "ambient_dim": ambient,
        "independent": codim == expected,
    });
    let csv = format!("d,codimension,expected\n{d},{codim},{expected}\n");
    let table = format!(
        "points {pts}\nd = {d}: codimension {codim} (N(n+1) = {expected}, ambient {ambient})\n"
    );
    let params = json!({"d": d, "n": pts.dimension(), "N": pts.len(), "points_source": source});
    Ok((
        params,
        Outcome {
            status: Status::Computed,
            json: payload,
            csv,
            table,
        },
    ))
}

fn verify_lemma_cmd(config: &RunConfig) -> Result<(Value, Outcome), CliError> {
    let params = config.params()?;
    let r = verify_codim_lemma(params, config.trials, config.seed)?;
    let mut csv = String::from("trial,d,codimension\n");
    for t in &r.results {
        let _ = writeln!(csv, "{},{},{}", t.trial, params.d, t.codimension);
    }
    let mut table = format!(
        "{} trials at d = {}: expected {}, counterexamples {}{}\n",
        r.trials,
        params.d,
        r.expected_codimension,
        r.counterexamples.len(),
        if r.in_lemma_range {
            ""
        } else {
            " (d < 2N-1: not checked)"
        }
    );
    let mut values: Vec<usize> = r.results.iter().map(|t| t.codimension).collect();
    values.sort_unstable();
    values.dedup();
    let _ = writeln!(table, "observed codimensions: {values:?}");
    if let Some(s) = &r.sharpness {
        let _ = writeln!(csv, "collinear,{},{}", s.d, s.codimension);
        let _ = writeln!(
            table,
            "collinear probe at d = {}: codimension {} (<= {}: {}; N(n-1)+d+1 = {}, equal: {})",
            s.d,
            s.codimension,
            s.deficient_bound,
            s.below_expected,
            s.collinear_bound,
            s.equals_collinear_bound
        );
    }
    let value = serde_json::to_value(params).expect("params");
    Ok((
        value,
        Outcome::new(Status::from_check(r.verified), &r, csv, table),
    ))
}

#[derive(Serialize)]
struct HilbertRow {
    d: u32,
    ambient_dim: usize,
    symbolic: Option<usize>,
    ordinary: Option<usize>,
    symbolic_square_dim: Option<usize>,
    ordinary_square_dim: Option<usize>,
    agree: Option<bool>,
}

fn hilbert_cmd(config: &RunConfig) -> Result<(Value, Outcome), CliError> {
    let (pts, source) = load_points(config)?;
    let degrees: Vec<u32> = match (config.d, config.d_max) {
        (Some(d), None) => vec![d],
        (None, Some(max)) => (1..=max).collect(),
        (Some(d), Some(max)) if d <= max => (d..=max).collect(),
        _ => {
            return Err(CliError::Usage(
                "hilbert requires --d, --d-max, or --d <= --d-max".into(),
            ))
        }
    };
    if degrees.first() == Some(&0) {
        return Err(CliError::Usage("degrees start at 1".into()));
    }
    use rayon::prelude::*;
    let rows = degrees
        .par_iter()
        .map(|&d| {
            let ambient_dim = MonomialBasis::new(d, pts.dimension()).len();
            let symbolic = match config.mode {
                ModeArg::Ordinary => None,
                _ => Some(hilbert_function(d, &pts, SquareMode::Symbolic)?),
            };
            let ordinary = match config.mode {
                ModeArg::Symbolic => None,
                _ => Some(hilbert_function(d, &pts, SquareMode::Ordinary)?),
            };
            Ok(HilbertRow {
                d,
                ambient_dim,
                symbolic,
                ordinary,
                symbolic_square_dim: symbolic.map(|_| symbolic_square_dim(d, &pts)).transpose()?,
                ordinary_square_dim: if ordinary.is_some() && d >= 2 {
                    Some(ordinary_square_dim(d, &pts)?)
                } else {
                    ordinary.map(|_| 0)
                },
                agree: symbolic.zip(ordinary).map(|(a, b)| a == b),
            })
        })
        .collect::<Result<Vec<_>, LinalgError>>()?;
    let expected = pts.len() * (pts.dimension() + 1);
    let threshold = 2 * pts.len() as u32;
    // past 2N both squares must have the same Hilbert function
    let late_disagreement = rows
        .iter()
        .any(|r| r.d >= threshold && r.agree == Some(false));
    let status = if late_disagreement {
        Status::Falsified
    } else {
        Status::Computed
    };
    let mut csv = String::from("d,symbolic,ordinary\n");
    let mut table = format!(
        "points {pts}\n{:>4} {:>9} {:>9} {:>6}\n",
        "d", "symbolic", "ordinary", "agree"
    );
    let show = |x: Option<usize>| x.map_or(String::from("-"), |v| v.to_string());
    for r in &rows {
        let _ = writeln!(csv, "{},{},{}", r.d, show(r.symbolic), show(r.ordinary));
        let _ = writeln!(
            table,
            "{:>4} {:>9} {:>9} {:>6}",
            r.d,
            show(r.symbolic),
            show(r.ordinary),
            r.agree.map_or(String::from("-"), |a| a.to_string())
        );
    }
    let payload = json!({"points": pts, "expected": expected, "rows": rows});
    let params = json!({"n": pts.dimension(), "N": pts.len(), "points_source": source});
    Ok((
        params,
        Outcome {
            status,
            json: payload,
            csv,
            table,
        },
    ))
}

fn regularity_cmd(config: &RunConfig) -> Result<(Value, Outcome), CliError> {
    let (pts, source) = load_points(config)?;
    let d_max = config.d_max.unwrap_or(2 * pts.len() as u32 + 3);
    let scan = regularity_scan(&pts, d_max).map_err(|e| match e {
        LinalgError::InvalidParameters(m) => CliError::Usage(m),
        other => other.into(),
    })?;
    let mut csv = String::from("d,hilbert\n");
    for v in &scan.values {
        let _ = writeln!(csv, "{},{}", v.d, v.value);
    }
    let mut table = format!("points {pts}\n");
    let values: Vec<String> = scan
        .values
        .iter()
        .map(|v| format!("{}:{}", v.d, v.value))
        .collect();
    let _ = writeln!(table, "symbolic Hilbert function {}", values.join(" "));
    let _ = writeln!(
        table,
        "stabilizes at d0 = {} (bound 2N-1 = {})",
        scan.stabilization_degree, scan.lemma_bound
    );
    let payload = json!({"points": pts, "scan": scan});
    let params =
        json!({"n": pts.dimension(), "N": pts.len(), "d_max": d_max, "points_source": source});
    Ok((
        params,
        Outcome {
            status: Status::from_check(scan.within_lemma_bound),
            json: payload,
            csv,
            table,
        },
    ))
}

fn d0_scan_cmd(config: &RunConfig) -> Result<(Value, Outcome), CliError> {
    let n = config.need(config.n, "n")?;
    let count = config.need(config.num_points, "N")?;
    let d_max = config.d_max.unwrap_or((2 * count).saturating_sub(1).max(1));
    let est = general_position_bound(n, count, config.trials, config.seed, d_max)?;
    let mut csv = String::from("trial,stabilization_degree\n");
    for t in &est.per_trial {
        let _ = writeln!(csv, "{},{}", t.trial, t.stabilization_degree);
    }
    let table = format!(
        "general position, {} trials: d0 estimate {} (guaranteed 2N-1 = {}; empirical)\n",
        est.trials, est.estimate, est.guaranteed_bound
    );
    let params = json!({"n": n, "N": count, "d_max": d_max, "trials": config.trials});
    Ok((params, Outcome::new(Status::Computed, &est, csv, table)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> RunConfig {
        let mut full = vec!["stabcoh"];
        full.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(full).unwrap(), None).unwrap()
    }

    fn json_of(args: &[&str]) -> (Status, Value) {
        let mut args = args.to_vec();
        args.extend_from_slice(&["--format", "json"]);
        let (status, body) = run(&config(&args)).unwrap();
        (status, serde_json::from_str(&body).unwrap())
    }

    #[test]
    fn seed_resolution() {
        let cli = Cli::try_parse_from(["stabcoh", "codim"]).unwrap();
        let c = RunConfig::from_cli(cli, Some("17".into())).unwrap();
        assert_eq!((c.seed, c.seed_source), (17, SeedSource::Env));
        let cli = Cli::try_parse_from(["stabcoh", "codim", "--seed", "3"]).unwrap();
        let c = RunConfig::from_cli(cli, Some("17".into())).unwrap();
        assert_eq!((c.seed, c.seed_source), (3, SeedSource::Flag));
        let c = config(&["codim"]);
        assert_eq!(
            (c.seed, c.seed_source, c.format),
            (0, SeedSource::Default, Format::Table)
        );
        let cli = Cli::try_parse_from(["stabcoh", "codim"]).unwrap();
        assert!(RunConfig::from_cli(cli, Some("x".into())).is_err());
    }

    #[test]
    fn verify_lemma_report() {
        let (status, v) = json_of(&[
            "verify-lemma",
            "--d",
            "5",
            "--n",
            "2",
            "--N",
            "3",
            "--trials",
            "50",
            "--seed",
            "7",
        ]);
        assert_eq!(status, Status::Verified);
        assert_eq!(v["seed"], 7);
        assert_eq!(v["trials"], 50);
        assert_eq!(v["params"], json!({"d": 5, "n": 2, "N": 3}));
        let results = v["results"].as_array().unwrap();
        assert_eq!(results.len(), 50);
        assert!(results.iter().all(|r| r["codimension"] == 9));
        assert_eq!(v["counterexamples"], json!([]));
        assert_eq!(v["version"], report::VERSION);
    }

    #[test]
    fn gl_csv() {
        let (_, body) = run(&config(&["gl-cohomology", "--n", "1", "--format", "csv"])).unwrap();
        assert_eq!(body, "degree,dim,tate\n0,1,0\n1,1,-1\n3,1,-2\n4,1,-3\n");
    }

    #[test]
    fn stable_verify_and_band() {
        let (status, v) = json_of(&["stable-verify", "--n", "2"]);
        assert_eq!(status, Status::Verified);
        assert_eq!(v["strata_degrees"], json!([1, 3, 4, 5, 6, 8, 9]));
        let (status, v) = json_of(&["band", "--d", "19", "--n", "1", "--N", "10"]);
        assert_eq!(status, Status::Verified);
        assert_eq!(v["bm_interval"], json!([30, 34]));
    }

    #[test]
    fn hilbert_probe_on_coordinate_points() {
        let (status, v) = json_of(&[
            "hilbert",
            "--n",
            "2",
            "--N",
            "3",
            "--layout",
            "coordinate",
            "--d",
            "3",
        ]);
        assert_eq!(status, Status::Computed);
        let row = &v["rows"][0];
        assert_eq!(row["symbolic"], 9);
        assert_eq!(row["ordinary"], 10);
        assert_eq!(row["symbolic_square_dim"], 1);
        assert_eq!(row["ordinary_square_dim"], 0);
    }

    #[test]
    fn inline_points_and_mismatch() {
        let (_, v) = json_of(&[
            "codim",
            "--d",
            "3",
            "--points-json",
            r#"[["1","0"],["0","1"]]"#,
        ]);
        assert_eq!(v["codimension"], 4);
        let c = config(&[
            "codim",
            "--d",
            "3",
            "--n",
            "2",
            "--points-json",
            r#"[["1","0"]]"#,
        ]);
        assert!(matches!(run(&c), Err(CliError::Usage(_))));
        let c = config(&["codim", "--d", "3", "--points-json", r#"[["1","q"]]"#]);
        let err = run(&c).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("point 0, coordinate 1"), "{err}");
    }

    #[test]
    fn missing_flags_are_usage_errors() {
        for args in [
            &["codim"][..],
            &["e1-page", "--d", "3"],
            &["grassmann", "--n", "2"],
        ] {
            let err = run(&config(args)).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{args:?}");
        }
        assert_eq!(main_with_args(["stabcoh", "bogus"], None), 2);
        assert_eq!(main_with_args(["stabcoh", "codim", "--jobs", "0"], None), 2);
    }

    #[test]
    fn table_output_is_plain_text() {
        let (_, body) = run(&config(&["stable-range", "--d", "5", "--n", "2"])).unwrap();
        assert!(body.starts_with("stabcoh "));
        assert!(body.contains("status: Verified"));
    }
}
