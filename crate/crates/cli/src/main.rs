use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nilflat::exactlin::{rational, Vector};
use nilflat::model_file::{ModelFile, DEFAULT_MAX_DIM};
use nilflat::random::gen_random;
use nilflat::report::{random_suite, run, Command, Report, SuiteConfig};
use nilflat::structures::Sign;
use nilflat::Error;

/// Exact checks for flat bi-invariant nilpotent groups and their nearly
/// (para-)Kähler structures.
#[derive(Parser)]
#[command(name = "nilflat", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct FileArg {
    /// JSON model file
    file: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every applicable check on a model
    Check(FileArg),
    /// Build the group: brackets and affine generators
    Construct {
        file: PathBuf,
        /// also write the report to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Cone membership, support and type
    Classify(FileArg),
    /// Nearly (para-)Kähler identities of the J-field
    VerifyNpk(FileArg),
    /// Split off the flat (para-)Kähler factor
    Derham(FileArg),
    /// Rescaled lattice and its closure
    Lattice(FileArg),
    /// Centralizer of the lattice in the affine isometries
    Centralizer(FileArg),
    /// Seeded random samples of the structured cone
    RandomSuite {
        /// signature K,L (defaults to N/2,N/2 with --dim)
        #[arg(long, value_parser = parse_pair)]
        signature: Option<(usize, usize)>,
        /// total dimension, shorthand for a split signature
        #[arg(long)]
        dim: Option<usize>,
        /// type P,Q of the sampled support
        #[arg(long = "type", value_parser = parse_pair)]
        type_pq: Option<(usize, usize)>,
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_sign)]
        epsilon: Sign,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Group product X · Y
    Mul {
        file: PathBuf,
        /// comma-separated rationals
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected A,B, got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad number {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad number {b:?}"))?;
    Ok((a, b))
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s.trim() {
        "1" | "+1" => Ok(Sign::Plus),
        "-1" => Ok(Sign::Minus),
        _ => Err(format!("epsilon must be 1 or -1, got {s:?}")),
    }
}

fn parse_csv(s: &str) -> Result<Vector, String> {
    s.split(',')
        .map(rational::parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map(Vector)
}

fn max_dim() -> Result<usize, String> {
    match std::env::var("NILFLAT_MAX_DIM") {
        Ok(v) => v.trim().parse().map_err(|_| format!("NILFLAT_MAX_DIM is not a number: {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn load(path: &PathBuf) -> Result<ModelFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ModelFile::parse(&text, max_dim()?).map_err(|e| format!("{}: {e}", path.display()))
}

fn default_type(n: usize, eps: Sign) -> (usize, usize) {
    let m = n / 2;
    match eps {
        Sign::Plus => (m - m / 2, m / 2),
        Sign::Minus => (m / 2, 0),
    }
}

fn execute(cli: Cli) -> Result<Report, String> {
    let (command, file, json_out) = match cli.command {
        Cmd::RandomSuite { signature, dim, type_pq, epsilon, count, seed } => {
            let signature = match (signature, dim) {
                (Some(s), _) => s,
                (None, Some(n)) => (n / 2, n - n / 2),
                (None, None) => return Err("random-suite needs --signature or --dim".into()),
            };
            let n = signature.0 + signature.1;
            if n > max_dim()? {
                return Err(format!("dimension {n} exceeds NILFLAT_MAX_DIM"));
            }
            let type_pq = type_pq.unwrap_or_else(|| default_type(n, epsilon));
            if let Err(e @ Error::Infeasible(_)) = gen_random(seed, signature, type_pq, epsilon) {
                return Err(e.to_string());
            }
            return Ok(random_suite(&SuiteConfig { signature, type_pq, epsilon, count, seed }));
        }
        Cmd::Check(f) => (Command::Check, f.file, None),
        Cmd::Construct { file, json } => (Command::Construct, file, json),
        Cmd::Classify(f) => (Command::Classify, f.file, None),
        Cmd::VerifyNpk(f) => (Command::VerifyNpk, f.file, None),
        Cmd::Derham(f) => (Command::Derham, f.file, None),
        Cmd::Lattice(f) => (Command::Lattice, f.file, None),
        Cmd::Centralizer(f) => (Command::Centralizer, f.file, None),
        Cmd::Mul { file, x, y } => {
            let x = parse_csv(&x).map_err(|e| format!("--x: {e}"))?;
            let y = parse_csv(&y).map_err(|e| format!("--y: {e}"))?;
            (Command::Mul { x, y }, file, None)
        }
    };
    let model = load(&file)?;
    let report = run(&command, &model).map_err(|e| e.to_string())?;
    if let Some(out) = json_out {
        std::fs::write(&out, report.to_json() + "\n").map_err(|e| format!("{}: {e}", out.display()))?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(report) => {
            println!("{}", report.to_json());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("nilflat: {msg}");
            ExitCode::from(2)
        }
    }
}
