mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use certiroot::{
    certify_initial, corollary_threshold, default_init, inclusion_disks, norm_context, seeded_init, solve,
    threshold_is_strict, ApproxVector, Error, GaugeBundle, MethodKind, PExponent, SolveConfig,
};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use input::Problem;
use report::{DisksReport, SolveReport, ThresholdRow, ThresholdTable};

/// Simultaneous polynomial root finding with convergence certificates.
#[derive(Parser)]
#[command(name = "certiroot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate from a starting vector; report roots, certificate and inclusion disks.
    Solve(SolveArgs),
    /// Check the initial conditions at a starting vector without iterating.
    Certify(CommonArgs),
    /// Inclusion disks around a vector that satisfies the initial conditions.
    Disks(CommonArgs),
    /// Ready-made bounds on E_f(x0) for degree n, over p = 1, 2, inf.
    Thresholds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// JSON file with "coeffs" (leading first) and optional "guess", as {"re", "im"} objects.
    #[arg(long, conflicts_with_all = ["coeffs", "batch"])]
    input: Option<PathBuf>,
    /// Comma-separated real coefficients, leading first.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "batch")]
    coeffs: Option<String>,
    /// Comma-separated real starting values (default: points on a circle).
    #[arg(long, allow_hyphen_values = true, requires = "coeffs")]
    guess: Option<String>,
    /// Process every *.json file in a directory, in parallel.
    #[arg(long)]
    batch: Option<PathBuf>,
    /// Seed for the rotation of the default starting circle.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "ehrlich")]
    method: MethodKind,
    /// Norm exponent p >= 1, or "inf".
    #[arg(long, default_value = "inf")]
    p: PExponent,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct SolveArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    /// Stop once max |W_i| <= tol * max(1, max |C_i / C_0|).
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
    /// Iterate even if the starting vector is not certified.
    #[arg(long)]
    no_certificate: bool,
}

#[derive(Clone, Copy)]
enum Job {
    Solve { cfg_max_iter: usize, tol: f64, require: bool },
    Certify,
    Disks,
}

enum Status {
    Done,
    /// The initial conditions failed while a certificate was required.
    Unissued(String),
}

struct Output {
    status: Status,
    json: Value,
    text: String,
}

fn starting_vector(problem: &Problem, seed: Option<u64>) -> ApproxVector {
    match (&problem.guess, seed) {
        (Some(g), _) => g.clone(),
        (None, Some(s)) => seeded_init(&problem.f, s),
        (None, None) => default_init(&problem.f),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn bundle(method: MethodKind, p: PExponent, n: usize) -> Result<GaugeBundle> {
    Ok(GaugeBundle::new(method, norm_context(n, p)?)?)
}

fn unissued_reason(e0: f64, tau: f64, phi0: Option<f64>) -> String {
    match phi0 {
        Some(phi) => format!("certificate not issued: phi(E0) = {phi:e} > 1 at E0 = {e0:e}"),
        None => format!("certificate not issued: E0 = {e0:e} is not below tau = {tau:e}"),
    }
}

fn run_job(job: Job, args: &CommonArgs, problem: &Problem) -> Result<Output> {
    let x0 = starting_vector(problem, args.seed);
    let n = problem.f.degree();
    match job {
        Job::Solve { cfg_max_iter, tol, require } => {
            let cfg = SolveConfig {
                method: args.method,
                p: args.p,
                max_iter: cfg_max_iter,
                w_tol: tol,
                require_certificate: require,
            };
            let result = solve(&problem.f, &x0, &cfg).map_err(|e| match e {
                Error::Unsupported(msg) if args.method == MethodKind::Weierstrass => {
                    anyhow::anyhow!("{msg}; pass --no-certificate to run it uncertified")
                }
                other => anyhow::anyhow!(other),
            })?;
            let status = match &result.certificate {
                Some(c) if require && !c.issued => Status::Unissued(unissued_reason(c.e0, c.tau, c.phi0)),
                _ => Status::Done,
            };
            Ok(Output { status, json: to_value(&SolveReport::from(&result)), text: report::solve_text(&result) })
        }
        Job::Certify => {
            let cert = certify_initial(&problem.f, &x0, &bundle(args.method, args.p, n)?)?;
            let status =
                if cert.issued { Status::Done } else { Status::Unissued(unissued_reason(cert.e0, cert.tau, cert.phi0)) };
            Ok(Output { status, json: to_value(&cert), text: report::certificate_text(&cert) })
        }
        Job::Disks => match inclusion_disks(&problem.f, &x0, &bundle(args.method, args.p, n)?) {
            Ok((disks, disjoint)) => Ok(Output {
                status: Status::Done,
                text: report::disks_text(&disks, disjoint),
                json: to_value(&DisksReport { disks, disjoint }),
            }),
            Err(Error::NotCertified) => Ok(Output {
                status: Status::Unissued("initial conditions do not hold at the given vector".into()),
                json: to_value(&DisksReport { disks: Vec::new(), disjoint: false }),
                text: String::new(),
            }),
            Err(e) => Err(e.into()),
        },
    }
}

fn print(json: bool, out: &Output) {
    if json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
    } else {
        print!("{}", out.text);
    }
}

fn single(job: Job, args: &CommonArgs) -> Result<ExitCode> {
    let problem = match (&args.input, &args.coeffs) {
        (Some(path), _) => input::from_file(path)?,
        (None, Some(coeffs)) => input::from_flags(coeffs, args.guess.as_deref())?,
        (None, None) => bail!("give the polynomial with --coeffs, --input or --batch"),
    };
    let out = run_job(job, args, &problem)?;
    print(args.json, &out);
    Ok(match out.status {
        Status::Done => ExitCode::SUCCESS,
        Status::Unissued(reason) => {
            eprintln!("{reason}");
            ExitCode::from(2)
        }
    })
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("cannot read directory {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn batch(job: Job, args: &CommonArgs, dir: &Path) -> Result<ExitCode> {
    let files = json_files(dir)?;
    let results: Vec<(PathBuf, Result<Output>)> = files
        .into_par_iter()
        .map(|path| {
            let out = input::from_file(&path).and_then(|problem| run_job(job, args, &problem));
            (path, out)
        })
        .collect();

    let (mut errors, mut unissued) = (0, 0);
    let mut entries = Vec::new();
    for (path, result) in &results {
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let entry = match result {
            Ok(out) => {
                let (status, note) = match &out.status {
                    Status::Done => ("ok", None),
                    Status::Unissued(reason) => {
                        unissued += 1;
                        ("unissued", Some(reason.clone()))
                    }
                };
                if !args.json {
                    println!("== {name}: {status}");
                    if let Some(note) = &note {
                        println!("{note}");
                    }
                    print!("{}", out.text);
                }
                json!({ "file": name, "status": status, "report": out.json })
            }
            Err(e) => {
                errors += 1;
                if !args.json {
                    println!("== {name}: error\n{e:#}");
                }
                json!({ "file": name, "status": "error", "error": format!("{e:#}") })
            }
        };
        entries.push(entry);
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&Value::Array(entries)).expect("json"));
    }
    Ok(if errors > 0 {
        ExitCode::FAILURE
    } else if unissued > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn thresholds(n: usize, json: bool) -> Result<ExitCode> {
    if n < 2 {
        bail!("--n must be at least 2, got {n}");
    }
    let mut rows = Vec::new();
    for method in [MethodKind::Ehrlich, MethodKind::DochevByrnev] {
        for p in [PExponent::Finite(1.0), PExponent::Finite(2.0), PExponent::Infinity] {
            let ctx = norm_context(n, p)?;
            rows.push(ThresholdRow {
                method,
                p,
                threshold: corollary_threshold(method, &ctx).ok(),
                strict: threshold_is_strict(method, &ctx),
            });
        }
    }
    let table = ThresholdTable { n, rows };
    if json {
        println!("{}", serde_json::to_string_pretty(&table)?);
    } else {
        print!("{}", report::thresholds_text(&table));
    }
    Ok(ExitCode::SUCCESS)
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let (job, args) = match cli.command {
        Command::Thresholds { n, json } => return thresholds(n, json),
        Command::Solve(s) => {
            (Job::Solve { cfg_max_iter: s.max_iter, tol: s.tol, require: !s.no_certificate }, s.common)
        }
        Command::Certify(c) => (Job::Certify, c),
        Command::Disks(c) => (Job::Disks, c),
    };
    match &args.batch {
        Some(dir) => batch(job, &args, dir),
        None => single(job, &args),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is taken by unissued certificates
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
