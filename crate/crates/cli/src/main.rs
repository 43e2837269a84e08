use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use confluentia::algebra::{AlgebraError, OdeSpec};
use confluentia::contraction::{
    confluence_sweep, gnuplot_script, monotonicity_failures, sweep_csv, AlgebraElement, ContractionError, SweepConfig,
};
use confluentia::mra::{
    convergence_harness, harness_csv, harness_failures, ops_checks, support_radius, window_checks, HarnessGrid,
    LineSample, MraError, OpsInputs, PseudoPeriodicSample, WindowFn, DEFAULT_BASE_POINTS, MIN_CHECK_GRID,
};
use confluentia::singularity::classify;
use confluentia::special::{mathieu_eigen, MathieuRow, Parity, SolverOptions, SpecialError};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const EXIT_USAGE: u8 = 2;
const EXIT_INVALID_ODE: u8 = 3;
const EXIT_NO_CONVERGENCE: u8 = 4;
const EXIT_MONOTONICITY: u8 = 5;
const EXIT_MRA_DEFECT: u8 = 6;

const TRUNCATION_ENV: &str = "CONFLUENTIA_MAX_TRUNCATION";
const WINDOW_TOLERANCE: f64 = 1e-12;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure::new(EXIT_USAGE, message)
    }
}

impl From<SpecialError> for Failure {
    fn from(e: SpecialError) -> Self {
        match e {
            SpecialError::NoConvergence { .. } => Failure::new(EXIT_NO_CONVERGENCE, e.to_string()),
            SpecialError::InvalidArgument(_) => Failure::usage(e.to_string()),
        }
    }
}

impl From<ContractionError> for Failure {
    fn from(e: ContractionError) -> Self {
        match e {
            ContractionError::Special(s) => s.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<MraError> for Failure {
    fn from(e: MraError) -> Self {
        match e {
            MraError::Special(s) => s.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Parser, Debug)]
#[command(name = "confluentia", version, about = "Singularity classification and Mathieu-to-oscillator confluence checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the singular points of an ODE given as JSON.
    Classify {
        #[arg(long)]
        ode: PathBuf,
        /// Report path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate Mathieu characteristic values.
    Mathieu {
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        /// Inclusive order range `a..b`, or a single order.
        #[arg(long, default_value = "0..2", value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, value_delimiter = ',', default_value = "0,1,100")]
        q: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the normalized Mathieu functions towards their oscillator limit.
    Confluence {
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.8,0.4,0.2,0.1")]
        alphas: Vec<f64>,
        /// Half-width of the ψ window.
        #[arg(long, default_value_t = 2.0)]
        psi_max: f64,
        #[arg(long, default_value_t = 201)]
        grid_points: usize,
        /// CSV path; the gnuplot script goes next to it with a `.gp` extension.
        #[arg(long)]
        out: PathBuf,
    },
    /// Multiresolution checks.
    Mra {
        #[arg(long, value_enum)]
        check: MraCheck,
        /// Window check: number of sample points.
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        /// Ops check: period parameter of the fine space.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        /// Ops check: samples per period, a power of two.
        #[arg(long, default_value_t = 512)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        /// Converge check: strictly decreasing α list.
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.25,0.125")]
        alphas: Vec<f64>,
        /// Converge check: Hermite orders `k,l` of the test pair.
        #[arg(long, value_delimiter = ',', default_value = "0,0")]
        pair: Vec<usize>,
        /// Converge check: basis direction, or all three.
        #[arg(long, value_enum, default_value_t = DirectionArg::All)]
        direction: DirectionArg,
        #[arg(long, default_value_t = 0.3)]
        amplitude: f64,
        /// Multiplier applied to every documented tolerance.
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::EvenCe,
            ParityArg::Odd => Parity::OddSe,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MraCheck {
    Window,
    Ops,
    Converge,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirectionArg {
    P,
    Q,
    E,
    All,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad order '{t}': {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

fn solver_options() -> Result<SolverOptions, Failure> {
    let mut opts = SolverOptions::default();
    if let Ok(raw) = std::env::var(TRUNCATION_ENV) {
        opts.max_truncation = raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Failure::usage(format!("{TRUNCATION_ENV} must be a positive integer, got '{raw}'")))?;
    }
    Ok(opts)
}

/// Writes `text` to `out`, or stdout when no path is given.
fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| Failure::usage(e.to_string()))
}

fn classify_cmd(ode: &Path, out: Option<&Path>) -> CmdResult {
    let text = fs::read_to_string(ode).map_err(|e| Failure::usage(format!("cannot read {}: {e}", ode.display())))?;
    let spec = OdeSpec::from_json_str(&text).map_err(|e| match e {
        AlgebraError::Schema(_) | AlgebraError::BadRational(_) => Failure::usage(e.to_string()),
        other => Failure::new(EXIT_INVALID_ODE, other.to_string()),
    })?;
    let report = classify(&spec).map_err(|e| Failure::new(EXIT_INVALID_ODE, e.to_string()))?;
    emit(out, &to_json(&report)?)
}

fn mathieu_cmd(parity: Parity, range: (usize, usize), qs: &[f64], out: Option<&Path>) -> CmdResult {
    if parity == Parity::OddSe && range.0 == 0 {
        return Err(Failure::usage("odd Mathieu functions start at n = 1"));
    }
    if qs.is_empty() || qs.iter().any(|q| !(q.is_finite() && *q >= 0.0)) {
        return Err(Failure::usage("q values must be finite and non-negative"));
    }
    let opts = solver_options()?;
    let mut csv = String::from(MathieuRow::HEADER);
    csv.push('\n');
    let mut stalled = Vec::new();
    for n in range.0..=range.1 {
        for &q in qs {
            match mathieu_eigen(parity, n, q, &opts) {
                Ok(e) => csv.push_str(&e.csv_row().to_csv()),
                Err(SpecialError::NoConvergence { cap, .. }) => {
                    // flagged row: no value, truncation column holds the cap
                    csv.push_str(&format!("{parity},{n},{q},nan,{cap},nan"));
                    stalled.push(format!("n={n} q={q}"));
                }
                Err(e) => return Err(e.into()),
            }
            csv.push('\n');
        }
    }
    emit(out, &csv)?;
    if stalled.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_NO_CONVERGENCE, format!("no convergence within truncation {}: {}", opts.max_truncation, stalled.join(", "))))
    }
}

fn confluence_cmd(cfg: SweepConfig, out: &Path) -> CmdResult {
    if cfg.alphas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Failure::usage("alphas must be strictly decreasing"));
    }
    if cfg.grid_points < 2 {
        return Err(Failure::usage("grid-points must be at least 2"));
    }
    let single = cfg.alphas.len() == 1;
    let records = confluence_sweep(&cfg)?;
    emit(Some(out), &sweep_csv(&records))?;
    let script_path = out.with_extension("gp");
    let csv_name = out.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let image = out.with_extension("png").file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    emit(Some(&script_path), &gnuplot_script(&csv_name, &records, &image))?;
    if single {
        return Ok(());
    }
    let fails = monotonicity_failures(&records);
    if fails.is_empty() {
        return Ok(());
    }
    let list: Vec<String> = fails.iter().map(|(n, p)| format!("n={n} {p}")).collect();
    Err(Failure::new(EXIT_MONOTONICITY, format!("error does not decrease strictly for {}", list.join(", "))))
}

fn random_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

#[derive(Serialize)]
struct DefectReport<T: Serialize> {
    check: &'static str,
    tolerance_scale: f64,
    report: T,
    failures: Vec<String>,
}

struct MraParams {
    grid: usize,
    alpha: f64,
    lambda: f64,
    points: usize,
    seed: u64,
    h: f64,
    alphas: Vec<f64>,
    pair: Vec<usize>,
    direction: DirectionArg,
    amplitude: f64,
    tol_scale: f64,
}

fn defect_exit(failures: &[String]) -> CmdResult {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_MRA_DEFECT, format!("defects above tolerance: {}", failures.join(", "))))
    }
}

fn mra_cmd(check: MraCheck, p: &MraParams, out: Option<&Path>) -> CmdResult {
    if !(p.tol_scale > 0.0 && p.tol_scale.is_finite()) {
        return Err(Failure::usage("tol-scale must be positive"));
    }
    let w = WindowFn::meyer();
    match check {
        MraCheck::Window => {
            if p.grid < MIN_CHECK_GRID {
                return Err(Failure::usage(format!("grid must be at least {MIN_CHECK_GRID}")));
            }
            let report = window_checks(&w, p.grid)?;
            let tol = WINDOW_TOLERANCE * p.tol_scale;
            let failures: Vec<String> = [
                ("flat_defect", report.flat_defect),
                ("support_defect", report.support_defect),
                ("range_defect", report.range_defect),
                ("symmetry_defect", report.symmetry_defect),
                ("partition_defect", report.partition_defect),
            ]
            .iter()
            .filter(|(_, v)| !(*v < tol))
            .map(|(name, _)| name.to_string())
            .collect();
            emit(out, &to_json(&DefectReport { check: "window", tolerance_scale: p.tol_scale, report, failures: failures.clone() })?)?;
            defect_exit(&failures)
        }
        MraCheck::Ops => {
            if !p.points.is_power_of_two() || p.points < 4 {
                return Err(Failure::usage("points must be a power of two, at least 4"));
            }
            if !(p.alpha > 0.0 && p.h.is_finite() && p.h != 0.0) {
                return Err(Failure::usage("alpha must be positive and h non-zero"));
            }
            if !(0.0..1.0).contains(&p.lambda) {
                return Err(Failure::usage("lambda must lie in [0, 1)"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
            let n = p.points;
            let f = PseudoPeriodicSample::new(p.alpha, p.lambda, random_values(&mut rng, n))?;
            let g1 = PseudoPeriodicSample::new(2.0 * p.alpha, p.lambda / 2.0, random_values(&mut rng, n / 2))?;
            let g2 = PseudoPeriodicSample::new(2.0 * p.alpha, p.lambda / 2.0, random_values(&mut rng, n / 2))?;
            let m = support_radius(&w, p.alpha, f.step()) + 3;
            let len = (2 * m + 1) as usize;
            let u1 = LineSample::new(-m, f.step(), random_values(&mut rng, len))?;
            let u2 = LineSample::new(-m, f.step(), random_values(&mut rng, len))?;
            let report = ops_checks(&OpsInputs { f, g1, g2, u1, u2, h: p.h }, &w)?;
            let failures: Vec<String> = report.failures(p.tol_scale).into_iter().map(String::from).collect();
            emit(out, &to_json(&DefectReport { check: "ops", tolerance_scale: p.tol_scale, report, failures: failures.clone() })?)?;
            defect_exit(&failures)
        }
        MraCheck::Converge => {
            let [k, l] = p.pair[..] else {
                return Err(Failure::usage("pair takes exactly two Hermite orders"));
            };
            let grid = HarnessGrid::new(&p.alphas, p.h, DEFAULT_BASE_POINTS)?;
            let (u, v) = (grid.hermite(k, p.h)?, grid.hermite(l, p.h)?);
            let directions: Vec<AlgebraElement> = match p.direction {
                DirectionArg::P => vec![AlgebraElement::P],
                DirectionArg::Q => vec![AlgebraElement::Q],
                DirectionArg::E => vec![AlgebraElement::E],
                DirectionArg::All => vec![AlgebraElement::P, AlgebraElement::Q, AlgebraElement::E],
            };
            let mut rows = Vec::new();
            for d in directions {
                rows.extend(convergence_harness(&u, &v, &(p.amplitude * d), p.h, &p.alphas, &w)?);
            }
            emit(out, &harness_csv(&rows))?;
            let failures: Vec<String> = harness_failures(&rows).iter().map(|r| format!("{} at alpha {}", r.x_label, r.alpha)).collect();
            defect_exit(&failures)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Classify { ode, out } => classify_cmd(&ode, out.as_deref()),
        Command::Mathieu { parity, n, q, out } => mathieu_cmd(parity.into(), n, &q, out.as_deref()),
        Command::Confluence { n_max, h, alphas, psi_max, grid_points, out } => {
            let cfg = SweepConfig { n_max, h, alphas, psi_max, grid_points, solver: solver_options()? };
            confluence_cmd(cfg, &out)
        }
        Command::Mra { check, grid, alpha, lambda, points, seed, h, alphas, pair, direction, amplitude, tol_scale, out } => {
            let params = MraParams { grid, alpha, lambda, points, seed, h, alphas, pair, direction, amplitude, tol_scale };
            mra_cmd(check, &params, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("confluentia: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
