//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 3 the solver or
//! scan could not decide.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::ccf::{self, CcfWitness, ScanVerdict, Verdict};
use crate::constructions::{self, ExampleReport, WeightedLpSpace};
use crate::error::Error;
use crate::norms::NormSpec;
use crate::sets::{self, PointSet};
use crate::solver::{self, SolverOptions};
use crate::vecops::Vector;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Parser, Debug, Clone)]
#[command(name = "ccflab", version, about = "Chebyshev centers, farthest points and center-is-farthest witnesses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input file, `-` for stdin, or inline JSON.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Output file (written atomically) or directory for `reproduce all`.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance override `name=value`; names: solver, center, farthest, cap.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    /// Candidate count for samplers.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Chebyshev center of a point set.
    Center,
    /// Farthest points from one or more viewpoints.
    Farthest,
    /// Check that a point is both a Chebyshev center and a farthest point.
    CcfVerify,
    /// Sampled scan of r_{t,z}/t over directions and radii.
    Scan,
    /// Cap containment check for a chord of the unit circle.
    CapCheck,
    /// Rebuild a stored construction and its checks.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    #[value(name = "example2.7")]
    FiniteDim,
    #[value(name = "example2.8")]
    C0Truncated,
    Sp,
    Ap,
    Embed,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Parsed invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<String>,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub samples: Option<usize>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, String> {
        let mut tolerances = BTreeMap::new();
        for item in &cli.tol {
            let (name, value) = item.split_once('=').ok_or_else(|| format!("--tol expects name=value, got `{item}`"))?;
            if !TOL_NAMES.contains(&name) {
                return Err(format!("unknown tolerance `{name}` (known: {})", TOL_NAMES.join(", ")));
            }
            let v: f64 = value.parse().map_err(|_| format!("--tol {name}: `{value}` is not a number"))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("--tol {name}: must be positive"));
            }
            tolerances.insert(name.to_string(), v);
        }
        Ok(Self {
            command: cli.command,
            input: cli.input,
            output: cli.output,
            seed: cli.seed,
            tolerances,
            samples: cli.samples,
            format: cli.format,
        })
    }

    fn solver_options(&self) -> SolverOptions {
        let mut o = SolverOptions::default().with_seed(self.seed);
        if let Some(t) = self.tolerances.get("solver") {
            o.tol = *t;
        }
        o
    }

    fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

const TOL_NAMES: [&str; 4] = ["solver", "center", "farthest", "cap"];

/// Result of a run: exit code, the text for stdout (empty when written to a
/// file), and a diagnostic for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub message: Option<String>,
}

impl Outcome {
    fn input_error(msg: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, stdout: String::new(), message: Some(msg.into()) }
    }
}

enum Failure {
    Input(String),
    Undecided(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Step<T> = std::result::Result<T, Failure>;

pub fn run(config: &RunConfig) -> Outcome {
    let result = match &config.command {
        Command::Center => cmd_center(config),
        Command::Farthest => cmd_farthest(config),
        Command::CcfVerify => cmd_verify(config),
        Command::Scan => cmd_scan(config),
        Command::CapCheck => cmd_cap(config),
        Command::Reproduce { target: Target::All, .. } => cmd_reproduce_all(config),
        Command::Reproduce { target, n, p, t } => cmd_reproduce(config, *target, *n, *p, *t),
    };
    match result {
        Ok((code, text)) => match emit(config, &text) {
            Ok(stdout) => Outcome { code, stdout, message: None },
            Err(e) => Outcome::input_error(e),
        },
        Err(Failure::Input(m)) => Outcome::input_error(m),
        Err(Failure::Undecided(m)) => Outcome { code: EXIT_UNDECIDED, stdout: String::new(), message: Some(m) },
    }
}

fn emit(config: &RunConfig, text: &str) -> Result<String, String> {
    match (&config.output, &config.command) {
        (_, Command::Reproduce { target: Target::All, .. }) | (None, _) => Ok(text.to_string()),
        (Some(path), _) => {
            write_atomic(path, text.as_bytes()).map_err(|e| format!("writing {}: {e}", path.display()))?;
            Ok(String::new())
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn read_input(config: &RunConfig) -> Step<String> {
    let src = config.input.as_deref().ok_or_else(|| Failure::Input("--input is required for this command".into()))?;
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(src.to_string());
    }
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(src).map_err(|e| Failure::Input(format!("reading {src}: {e}")))
}

fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Step<T> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("invalid {what} JSON: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn cmd_center(config: &RunConfig) -> Step<(i32, String)> {
    let set: PointSet = parse(&read_input(config)?, "point set")?;
    let res = solver::chebyshev_center(&set, &config.solver_options())?;
    let code = if res.converged { EXIT_OK } else { EXIT_UNDECIDED };
    Ok((code, to_json(&res)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FarthestInput {
    set: PointSet,
    #[serde(default)]
    viewpoint: Option<Vector>,
    #[serde(default)]
    viewpoints: Vec<Vector>,
}

fn cmd_farthest(config: &RunConfig) -> Step<(i32, String)> {
    let input: FarthestInput = parse(&read_input(config)?, "farthest query")?;
    let mut views = input.viewpoints;
    views.extend(input.viewpoint);
    if views.is_empty() {
        return Err(Failure::Input("give `viewpoint` or `viewpoints`".into()));
    }
    match config.format {
        Format::Csv => Ok((EXIT_OK, input.set.distance_csv(&views)?)),
        Format::Json => {
            let tol = config.tol("farthest", sets::DEFAULT_ACHIEVER_TOL);
            let out = views.iter().map(|v| input.set.farthest_set(v, tol)).collect::<Result<Vec<_>, _>>()?;
            Ok((EXIT_OK, to_json(&out)))
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessInput {
    set: PointSet,
    center_index: usize,
    viewpoint: Vector,
    #[serde(default)]
    center_tol: Option<f64>,
    #[serde(default)]
    farthest_tol: Option<f64>,
}

fn cmd_verify(config: &RunConfig) -> Step<(i32, String)> {
    let input: WitnessInput = parse(&read_input(config)?, "witness")?;
    let w = CcfWitness::new(input.set, input.center_index, input.viewpoint)?.with_tolerances(
        config.tol("center", input.center_tol.unwrap_or(1e-6)),
        config.tol("farthest", input.farthest_tol.unwrap_or(sets::DEFAULT_ACHIEVER_TOL)),
    )?;
    let rep = ccf::verify_ccf_witness(&w, &config.solver_options())?;
    let code = match rep.verdict {
        Verdict::Confirmed => EXIT_OK,
        Verdict::CenterFails | Verdict::FarthestFails => EXIT_NEGATIVE,
        Verdict::Indeterminate => EXIT_UNDECIDED,
    };
    Ok((code, to_json(&rep)))
}

fn default_t_grid() -> Vec<f64> {
    (1..=10).map(|k| k as f64 / 10.0).collect()
}

fn default_z_count() -> usize {
    32
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanInput {
    norm: NormSpec,
    #[serde(default = "default_z_count")]
    z_count: usize,
    #[serde(default = "default_t_grid")]
    t_grid: Vec<f64>,
}

fn cmd_scan(config: &RunConfig) -> Step<(i32, String)> {
    let input: ScanInput = parse(&read_input(config)?, "scan")?;
    let samples = config.samples.unwrap_or(20_000);
    let table = ccf::ccnf_scan(&input.norm, input.z_count, &input.t_grid, samples, config.seed, &config.solver_options())?;
    let code = if table.summary.verdict == ScanVerdict::Inconclusive { EXIT_UNDECIDED } else { EXIT_OK };
    let text = match config.format {
        Format::Json => to_json(&table),
        Format::Csv => table.to_csv()?,
    };
    Ok((code, text))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CapInput {
    norm: NormSpec,
    u: Vector,
    v: Vector,
}

fn cmd_cap(config: &RunConfig) -> Step<(i32, String)> {
    let input: CapInput = parse(&read_input(config)?, "cap check")?;
    let samples = config.samples.unwrap_or(ccf::DEFAULT_CAP_SAMPLES);
    let rep = ccf::cap_containment_check(&input.norm, &input.u, &input.v, samples)?;
    let code = if rep.max_excess <= config.tol("cap", 1e-9) { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((code, to_json(&rep)))
}

fn report_code(rep: &ExampleReport) -> i32 {
    if rep.overall {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn cmd_reproduce(config: &RunConfig, target: Target, n: Option<usize>, p: Option<f64>, t: Option<f64>) -> Step<(i32, String)> {
    let opts = config.solver_options();
    let rep = match target {
        Target::FiniteDim => constructions::example_finite_dim(n.unwrap_or(3), &opts)?,
        Target::C0Truncated => constructions::example_c0_truncated(n.unwrap_or(10), &opts)?,
        Target::Sp => sp_report(p.map_or_else(|| SP_GRID.to_vec(), |p| vec![p]), &opts)?,
        Target::Ap => constructions::ap_ccf_check(p.unwrap_or(1.5), t.unwrap_or(100.0), &opts)?,
        Target::Embed => {
            let space = WeightedLpSpace::new(p.unwrap_or(3.0), vec![2.0, 0.5, 1.0, 3.0])?;
            constructions::embed_lp3(&space, [0, 1, 2], config.samples.unwrap_or(1000), config.seed, &opts)?
        }
        Target::All => unreachable!("handled by cmd_reproduce_all"),
    };
    Ok((report_code(&rep), to_json(&rep)))
}

const SP_GRID: [f64; 5] = [1.5, 2.0, 3.0, 4.0, 10.0];

/// Closed-form `s_p` against a line search on the basis triangle.
pub fn sp_report(ps: Vec<f64>, opts: &SolverOptions) -> crate::error::Result<ExampleReport> {
    let mut rows = Vec::new();
    let mut overall = true;
    let mut checks = Vec::new();
    for p in ps {
        let closed = constructions::sp_closed_form(p)?;
        let set = PointSet::new(NormSpec::pnorm(3, p)?, (0..3).map(|k| crate::vecops::basis(3, k)).collect())?;
        let line = solver::symmetric_line_minimize(&set, &[1.0, 1.0, 1.0], opts)?;
        let pass = (line.s - closed).abs() <= 1e-8;
        overall &= pass;
        rows.push(json!({"p": p, "closed_form": closed, "line_search": line.s}));
        checks.push(constructions::Check {
            description: format!("line minimum of |1−s|^p + 2|s|^p at p = {p}"),
            expected: format!("{closed}"),
            observed: format!("{}", line.s),
            pass,
        });
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("values".to_string(), json!(rows));
    Ok(ExampleReport { name: "sp_closed_form".into(), parameters, checks, overall })
}

/// Pass/fail summary row for `reproduce all`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub name: String,
    pub file: String,
    pub pass: bool,
    pub note: String,
}

fn scan_report(name: &str, norm: NormSpec, samples: usize, seed: u64, opts: &SolverOptions) -> crate::error::Result<(ExampleReport, ccf::ScanTable)> {
    let table = ccf::ccnf_scan(&norm, 32, &default_t_grid(), samples, seed, opts)?;
    let s = &table.summary;
    let mut rep = ExampleReport { name: name.into(), parameters: BTreeMap::new(), checks: Vec::new(), overall: true };
    rep.parameters.insert("norm".into(), json!(norm));
    rep.parameters.insert("samples".into(), json!(samples));
    rep.parameters.insert("max_ratio".into(), json!(s.max_ratio));
    rep.parameters.insert("verdict".into(), json!(s.verdict));
    let (expected, pass) = match norm.family() {
        crate::norms::NormFamily::PNorm(p) if *p == 1.0 => ("ccf_like", s.verdict == ScanVerdict::CcfLike),
        crate::norms::NormFamily::PNorm(p) if *p == 2.0 => ("ccnf_evidence", s.verdict == ScanVerdict::CcnfEvidence),
        _ => ("max ratio < 1", s.max_ratio < 1.0),
    };
    rep.overall = pass;
    rep.checks.push(constructions::Check {
        description: "scan summary".into(),
        expected: expected.into(),
        observed: format!("{:?}, max ratio {}", s.verdict, s.max_ratio),
        pass,
    });
    Ok((rep, table))
}

/// Runs every construction and the three planar scans, writing one JSON per
/// report plus `summary.md` into `out_dir`.
pub fn reproduce_all(out_dir: &Path, seed: u64, samples: usize, opts: &SolverOptions) -> crate::error::Result<Vec<SummaryRow>> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::Precondition(format!("creating {}: {e}", out_dir.display())))?;
    let mut rows = Vec::new();
    let mut save = |file: String, rep: &ExampleReport, note: String| -> crate::error::Result<()> {
        write_atomic(&out_dir.join(&file), to_json(rep).as_bytes())
            .map_err(|e| Error::Precondition(format!("writing {file}: {e}")))?;
        rows.push(SummaryRow { name: rep.name.clone(), file, pass: rep.overall, note });
        Ok(())
    };
    for n in 3..=5 {
        save(format!("finite_dim_n{n}.json"), &constructions::example_finite_dim(n, opts)?, format!("n = {n}"))?;
    }
    save("c0_truncated_n10.json".into(), &constructions::example_c0_truncated(10, opts)?, "N = 10".into())?;
    save("sp_closed_form.json".into(), &sp_report(SP_GRID.to_vec(), opts)?, "p ∈ {1.5, 2, 3, 4, 10}".into())?;
    for p in [1.5, 3.0, 4.0] {
        save(format!("ap_witness_p{p}.json"), &constructions::ap_ccf_check(p, 100.0, opts)?, format!("p = {p}, t = 100"))?;
    }
    let space = WeightedLpSpace::new(3.0, vec![2.0, 0.5, 1.0, 3.0])?;
    save("lp_embedding.json".into(), &constructions::embed_lp3(&space, [0, 1, 2], 1000, seed, opts)?, "p = 3, weights (2, 0.5, 1, 3)".into())?;
    for (tag, p) in [("l2", 2.0), ("l3", 3.0), ("l1", 1.0)] {
        let (rep, table) = scan_report(&format!("scan_{tag}"), NormSpec::pnorm(2, p)?, samples, seed, opts)?;
        let csv = table.to_csv()?;
        write_atomic(&out_dir.join(format!("scan_{tag}.csv")), csv.as_bytes())
            .map_err(|e| Error::Precondition(format!("writing scan csv: {e}")))?;
        let note = format!("{:?}, max ratio {:.6}", table.summary.verdict, table.summary.max_ratio);
        save(format!("scan_{tag}.json"), &rep, note)?;
    }
    let mut md = String::from("| report | file | pass | note |\n|---|---|---|---|\n");
    for r in &rows {
        let _ = writeln!(md, "| {} | {} | {} | {} |", r.name, r.file, if r.pass { "PASS" } else { "FAIL" }, r.note);
    }
    write_atomic(&out_dir.join("summary.md"), md.as_bytes()).map_err(|e| Error::Precondition(format!("writing summary: {e}")))?;
    Ok(rows)
}

fn cmd_reproduce_all(config: &RunConfig) -> Step<(i32, String)> {
    let dir = config.output.clone().unwrap_or_else(|| PathBuf::from("reports"));
    let rows = reproduce_all(&dir, config.seed, config.samples.unwrap_or(5_000), &config.solver_options())
        .map_err(|e| Failure::Undecided(e.to_string()))?;
    let code = if rows.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_NEGATIVE };
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(text, "{} {} ({})", if r.pass { "PASS" } else { "FAIL" }, r.name, r.note);
    }
    let _ = writeln!(text, "reports written to {}", dir.display());
    Ok((code, text))
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return Outcome { code, stdout: if code == EXIT_OK { e.to_string() } else { String::new() }, message: (code != EXIT_OK).then(|| e.to_string()) };
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => run(&cfg),
        Err(m) => Outcome::input_error(m),
    }
}
