use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use yangian_forge::cli::{calibrate, configure_workers, parse_triple, run_suite, CalibrateParams, CliError, NormChoice, RunParams, Suite, WORKERS_ENV};
use yangian_forge::fock::NormMode;
use yangian_forge::geom::QuiverRep;
use yangian_forge::report::VerificationReport;

#[derive(Parser)]
#[command(name = "yangian-forge", version, about = "Exact verification suites for the affine Yangian of gl(1) and its free-field models")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = WORKERS_ENV)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one suite: shuffle, yangian, fock, walgebra, shc, geom or all.
    Check {
        suite: String,
        #[command(flatten)]
        flags: SuiteFlags,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Select the boson normalization and record screening offsets.
    Calibrate {
        /// auto, standard, paper or none.
        #[arg(long, default_value = "auto")]
        mode: String,
        /// Semicolon-separated configurations, e.g. "0,0,2;0,1,1", or "none".
        #[arg(long, default_value = "0,0,2;0,1,1")]
        configs: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a suite (default: all) and write its JSON report.
    Report {
        #[arg(long)]
        json: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        flags: SuiteFlags,
    },
}

#[derive(Args, Default)]
struct SuiteFlags {
    #[arg(long)]
    y1_max: Option<u16>,
    #[arg(long)]
    serre_max: Option<u16>,
    #[arg(long)]
    commutator_max: Option<u16>,
    #[arg(long)]
    y4_max: Option<u16>,
    /// Series order (shuffle and geom).
    #[arg(long)]
    order: Option<usize>,
    /// Configuration R1,R2,R3 for walgebra.
    #[arg(long)]
    config: Option<String>,
    /// Truncation level (fock, walgebra, shc).
    #[arg(long)]
    level: Option<usize>,
    /// Boson normalization for walgebra: standard or paper.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    mmax: Option<i64>,
    /// Boson colors for shc: 3, 2,3 or 3,3.
    #[arg(long)]
    colors: Option<String>,
    #[arg(long)]
    lmax: Option<usize>,
    /// Skip the two-boson checks in shc.
    #[arg(long)]
    no_two_boson: bool,
    /// Bound on n for geom.
    #[arg(long)]
    n: Option<usize>,
    /// Framing R1,R2,R3 for geom; repeatable.
    #[arg(long)]
    r: Vec<String>,
    /// A QuiverRep JSON file to check instead of the sample library.
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Record wall times in the report.
    #[arg(long)]
    timed: bool,
}

fn mode(s: &str) -> Result<NormMode, CliError> {
    NormMode::parse(s).ok_or_else(|| CliError::InvalidParams(format!("mode must be standard or paper, got {s:?}")))
}

fn params(f: &SuiteFlags) -> Result<RunParams, CliError> {
    let mut p = RunParams { timed: f.timed, ..RunParams::default() };
    let s = &mut p.shuffle;
    s.y1_max = f.y1_max.unwrap_or(s.y1_max);
    s.serre_max = f.serre_max.unwrap_or(s.serre_max);
    s.commutator_max = f.commutator_max.unwrap_or(s.commutator_max);
    s.y4_max = f.y4_max.unwrap_or(s.y4_max);
    s.order = f.order.unwrap_or(s.order);

    if let Some(c) = &f.config {
        let [a, b, c] = parse_triple(c)?;
        p.walgebra = vec![yangian_forge::walg::WalgParams { config: (a, b, c), ..Default::default() }];
    }
    for w in &mut p.walgebra {
        if let Some(m) = &f.mode {
            w.mode = mode(m)?;
        }
        if let Some(n) = f.level {
            w.level = n;
            w.null_level = n;
            w.kernel_level = n.min(4);
        }
        w.mmax = f.mmax.unwrap_or(w.mmax);
    }

    if let Some(n) = f.level {
        p.fock.level = n;
        p.shc.level = n;
    }
    p.fock.mmax = f.mmax.unwrap_or(p.fock.mmax);
    if let Some(c) = &f.colors {
        p.shc.colors = c
            .split(',')
            .map(|x| x.trim().parse::<u8>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::InvalidParams(format!("bad colors {c:?}")))?;
    }
    p.shc.lmax = f.lmax.unwrap_or(p.shc.lmax);
    p.shc.two_boson = !f.no_two_boson;

    if let Some(n) = f.n {
        p.geom.fl_n = n;
        p.geom.euler_n = n;
    }
    if !f.r.is_empty() {
        p.geom.rs = f.r.iter().map(|r| parse_triple(r)).collect::<Result<_, _>>()?;
    }
    p.geom.order = f.order.unwrap_or(p.geom.order);
    if let Some(path) = &f.quiver {
        let src = std::fs::read_to_string(path).map_err(|e| CliError::InvalidParams(format!("{}: {e}", path.display())))?;
        p.quiver = Some(QuiverRep::from_json(&src)?);
    }
    Ok(p)
}

fn write_json(path: &PathBuf, r: &VerificationReport) -> Result<(), CliError> {
    std::fs::write(path, r.to_json()).map_err(|e| CliError::InvalidParams(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<VerificationReport, CliError> {
    configure_workers(cli.workers)?;
    match cli.cmd {
        Cmd::Check { suite, flags, json } => {
            let r = run_suite(suite.parse::<Suite>()?, &params(&flags)?)?;
            if let Some(path) = json {
                write_json(&path, &r)?;
            }
            Ok(r)
        }
        Cmd::Calibrate { mode: m, configs, json } => {
            let normalization = match m.as_str() {
                "auto" => NormChoice::Auto,
                "none" => NormChoice::Skip,
                other => NormChoice::Forced(mode(other)?),
            };
            let configs = if configs.trim() == "none" || configs.trim().is_empty() {
                Vec::new()
            } else {
                configs.split(';').map(|c| parse_triple(c).map(|[a, b, c]| (a, b, c))).collect::<Result<_, _>>()?
            };
            let r = calibrate(&CalibrateParams { normalization, configs, ..CalibrateParams::default() })?;
            if let Some(path) = json {
                write_json(&path, &r)?;
            }
            Ok(r)
        }
        Cmd::Report { json, suite, flags } => {
            let r = run_suite(suite.parse::<Suite>()?, &params(&flags)?)?;
            write_json(&json, &r)?;
            Ok(r)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(r) => {
            print!("{}", r.summary());
            ExitCode::from(if r.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
