use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubic_k3::exact::{parse_mpoly, MPoly};
use cubic_k3::geometry::{local_report, search_lines, DiagonalCubic, SearchOptions};
use cubic_k3::k3::{
    derive_diagonal_model, derive_weierstrass_model, h1_scan, ns_catalog, prop_generators, theta_labels, GenLabel,
};
use cubic_k3::par::{with_jobs, Strategy};
use cubic_k3::verify::{report_json, run_checks, Context, Golden, Suite};
use cubic_k3::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NEGATIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "cubic-k3", version, about = "Exact checks for K3 double covers attached to plane cubics")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the registered checks and print a JSON report.
    VerifyPaper {
        /// Restrict to these suites.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Directory with golden files replacing the embedded ones.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Classify the lines rx + sy + tz = 0 of bounded height.
    CubicSearch {
        /// Diagonal curve "a,b,c".
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        height: u64,
        /// Also stream lines with non-Galois cubic points.
        #[arg(long)]
        all: bool,
        /// Coefficient ranges "r0:r1,s0:s1,t0:t1".
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Local solvability at the bad primes and the real place.
    LocalSolve {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
    },
    /// H^1 of every subgroup of the Galois group on the rank-20 lattice.
    H1Scan {
        /// Assert containment in a conjugate of <rho*sigma, tau> only.
        #[arg(long)]
        up_to_conjugacy: bool,
    },
    /// Rank and discriminant of a generator subset.
    NsReport {
        #[arg(long, value_enum, default_value_t = Subset::All)]
        subset: Subset,
    },
    /// Derive the double-sextic model of a Weierstrass or diagonal cubic.
    DeriveModel {
        #[arg(long, value_enum)]
        kind: Kind,
        /// "A;B" or "a,b,c"; entries may be polynomials in parameters.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Subset {
    All,
    PropGenerators,
    Theta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Weierstrass,
    Diagonal,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Singular(_) | Error::InvalidLine(_) | Error::Golden(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn open_output(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(out: &mut dyn Write, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    out.flush()
}

fn parse_window(s: &str) -> Result<[(i64, i64); 3], Failure> {
    let bad = || Failure::Usage(format!("expected r0:r1,s0:s1,t0:t1, got `{s}`"));
    let ranges: Vec<(i64, i64)> = s
        .split(',')
        .map(|part| {
            let (lo, hi) = part.split_once(':')?;
            Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
        })
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    ranges.try_into().map_err(|_| bad())
}

fn verify_paper(cli: &Cli, only: &[String], golden: &Option<PathBuf>) -> Outcome {
    let suites = only
        .iter()
        .map(|s| Suite::parse(s).ok_or_else(|| Failure::Usage(format!("unknown suite `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let golden = match golden {
        Some(dir) => Golden::from_dir(dir)?,
        None => Golden::embedded(),
    };
    let ctx = Context::new(golden, Strategy::from_jobs(cli.jobs.into()));
    let results = run_checks(&ctx, &suites);
    for r in results.iter().filter(|r| !r.passed) {
        eprintln!("FAIL {} [{}]: {} ({})", r.name, r.suite, r.anchor, r.detail);
    }
    let report = report_json(&results);
    write_json(&mut *open_output(&cli.out)?, &report)?;
    let failed = results.iter().filter(|r| !r.passed).count();
    eprintln!("{} of {} checks passed", results.len() - failed, results.len());
    Ok(if failed == 0 { 0 } else { EXIT_FAIL })
}

fn cubic_search(cli: &Cli, curve: &str, height: u64, all: bool, window: &Option<String>) -> Outcome {
    let curve = DiagonalCubic::parse(curve)?;
    match local_report(&curve) {
        Ok(r) if !r.solvable() => {
            let primes: Vec<String> = r.failing_primes().iter().map(ToString::to_string).collect();
            eprintln!("warning: {curve} is not everywhere locally solvable (fails at {})", primes.join(", "));
        }
        Err(e) => eprintln!("warning: local solvability of {curve} undecided: {e}"),
        Ok(_) => {}
    }
    let opts = SearchOptions {
        window: window.as_deref().map(parse_window).transpose()?,
        include_nongalois: all,
        ..SearchOptions::new(height)
    };
    let strategy = Strategy::from_jobs(cli.jobs.into());
    let result = search_lines(&curve, &opts, strategy)?;
    let mut out = open_output(&cli.out)?;
    for (line, class) in &result.hits {
        serde_json::to_writer(&mut out, &class.to_json(line)).map_err(io::Error::from)?;
        writeln!(out)?;
    }
    let mut summary = result.summary.to_json();
    summary["curve"] = json!(curve.to_string());
    summary["height"] = json!(height);
    serde_json::to_writer(&mut out, &json!({ "summary": summary })).map_err(io::Error::from)?;
    writeln!(out)?;
    out.flush()?;
    Ok(0)
}

fn local_solve(cli: &Cli, curve: &str) -> Outcome {
    let curve = DiagonalCubic::parse(curve)?;
    let report = local_report(&curve)?;
    write_json(&mut *open_output(&cli.out)?, &report.to_json(&curve))?;
    Ok(if report.solvable() { 0 } else { EXIT_NEGATIVE })
}

fn h1(cli: &Cli, up_to_conjugacy: bool) -> Outcome {
    let cat = ns_catalog()?;
    let report = h1_scan(&cat, Strategy::from_jobs(cli.jobs.into()))?;
    write_json(&mut *open_output(&cli.out)?, &report.to_json())?;
    match report.assert_containment(up_to_conjugacy) {
        Ok(()) => Ok(0),
        Err(e) => {
            eprintln!("{e}");
            Ok(EXIT_FAIL)
        }
    }
}

fn ns_report(cli: &Cli, subset: Subset) -> Outcome {
    let cat = ns_catalog()?;
    let (name, labels) = match subset {
        Subset::All => ("all", GenLabel::all()),
        Subset::PropGenerators => ("prop-generators", prop_generators()),
        Subset::Theta => ("theta", theta_labels()),
    };
    write_json(&mut *open_output(&cli.out)?, &cat.report(name, &labels))?;
    Ok(0)
}

fn parse_params<const N: usize>(s: &str, sep: char) -> Result<[MPoly; N], Failure> {
    let parts = s.split(sep).map(parse_mpoly).collect::<Result<Vec<_>, _>>()?;
    parts
        .try_into()
        .map_err(|_| Failure::Usage(format!("expected {N} parameters separated by `{sep}`, got `{s}`")))
}

fn derive_model(cli: &Cli, kind: Kind, params: &Option<String>) -> Outcome {
    let model = match kind {
        Kind::Weierstrass => {
            let [a, b] = parse_params(params.as_deref().unwrap_or("A;B"), ';')?;
            derive_weierstrass_model(&a, &b)?
        }
        Kind::Diagonal => {
            let [a, b, c] = parse_params(params.as_deref().unwrap_or("a,b,c"), ',')?;
            derive_diagonal_model(&a, &b, &c)?
        }
    };
    write_json(&mut *open_output(&cli.out)?, &model.to_json())?;
    Ok(0)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::VerifyPaper { only, golden } => verify_paper(cli, only, golden),
        Command::CubicSearch { curve, height, all, window } => cubic_search(cli, curve, *height, *all, window),
        Command::LocalSolve { curve } => local_solve(cli, curve),
        Command::H1Scan { up_to_conjugacy } => h1(cli, *up_to_conjugacy),
        Command::NsReport { subset } => ns_report(cli, *subset),
        Command::DeriveModel { kind, params } => derive_model(cli, *kind, params),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = with_jobs(cli.jobs.into(), || run(&cli));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
