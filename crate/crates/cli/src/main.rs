//! `modcrown`: reproducible verification reports and plot-ready tables.
//!
//! Exit status: 0 when every check passes, 1 on a tolerance failure, 2 on bad parameters.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use modcrown::C64;

#[derive(Debug, Parser)]
#[command(name = "modcrown", version, about = "Verification reports for modular-theory numerics")]
struct Cli {
    /// TOML or JSON file supplying any flag not given on the command line.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Tolerance override; each command has its own default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// CSV output path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Boundary limits of rank-one spherical functions at imaginary time t → π.
    SphericalAsymptotics(SphericalArgs),
    /// Laplace-transform asymptotics and temperedness of a tail measure.
    Laplace(LaplaceArgs),
    /// KMS, midpoint, collapse and standard-subspace checks on a finite model.
    KmsLab(KmsArgs),
    /// Modular relation on boundary kernel vectors and the boost continuation.
    Sl2(Sl2Args),
    /// Wedge, crown and δ-slope sampling on de Sitter space.
    Desitter(DesitterArgs),
}

#[derive(Debug, Args)]
pub struct SphericalArgs {
    /// Algebra tag such as so(1,3), su(1,2), sp(1,2), f4(-20).
    #[arg(long)]
    pub algebra: String,
    /// Comma-separated spectral parameters, e.g. `i,2i,0.5,0.3+0.1i`.
    #[arg(long, value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Vec<C64>,
    /// Offsets ε of the grid t = π − ε.
    #[arg(long, value_delimiter = ',', default_value = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6")]
    pub eps: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct LaplaceArgs {
    /// `power:s`, `stretched:c` or `grid:FILE` (two CSV columns x, density).
    #[arg(long)]
    pub measure: String,
    /// Expected regime: finite, log, power or none.
    #[arg(long)]
    pub expect_regime: Option<String>,
    /// Expected leading constant.
    #[arg(long)]
    pub expect_constant: Option<f64>,
}

#[derive(Debug, Args)]
pub struct KmsArgs {
    /// JSON file with `points`, `weights` and optionally `vector: {re, im}`.
    #[arg(long)]
    pub model: PathBuf,
    /// Random KMS vectors tried when the model file carries no vector.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct Sl2Args {
    /// Even weight s.
    #[arg(long)]
    pub s: u32,
    /// Boundary point x > 0.
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,
    /// Test point w in the upper half-plane.
    #[arg(long, value_parser = parse_complex, default_value = "3i", allow_hyphen_values = true)]
    pub w: C64,
    /// Control run: compare against +Q(w, −x) instead of (−1)^{s/2} Q(w, −x).
    #[arg(long)]
    pub sign_flip: bool,
    /// Rows of the boost-continuation table over Im ζ ∈ [−π/2, π/2].
    #[arg(long, default_value_t = 17)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct DesitterArgs {
    /// Dimension n of dSⁿ.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Rotation angles s of the fixed points i cos s·e₀ − sin s·e_n.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.5,1.0", allow_hyphen_values = true)]
    pub s: Vec<f64>,
    /// A point of ℝ^{1,n} to classify, comma-separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<f64>>,
}

/// Parses `a`, `bi`, `i`, `-i`, `a+bi`, `a-bi` (exponents allowed).
pub fn parse_complex(text: &str) -> Result<C64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number '{text}'");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

pub enum Failure {
    Param(String),
    Tolerance,
}

pub struct Globals {
    pub seed: u64,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("MODCROWN_THREADS") {
        let n: usize = v.parse().map_err(|_| format!("MODCROWN_THREADS = '{v}' is not a thread count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| format!("thread pool: {e}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match config::merge_config(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let g = Globals { seed: cli.seed, tol: cli.tol, out: cli.out };
    let result = match &cli.command {
        Command::SphericalAsymptotics(a) => commands::spherical_asymptotics(a, &g),
        Command::Laplace(a) => commands::laplace(a, &g),
        Command::KmsLab(a) => commands::kms_lab(a, &g),
        Command::Sl2(a) => commands::sl2(a, &g),
        Command::Desitter(a) => commands::desitter(a, &g),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Tolerance) => ExitCode::from(1),
        Err(Failure::Param(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("i").unwrap(), C64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("2i").unwrap(), C64::new(0.0, 2.0));
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("1-2i").unwrap(), C64::new(1.0, -2.0));
        assert_eq!(parse_complex("1e-3+2e-1i").unwrap(), C64::new(1e-3, 0.2));
        assert_eq!(parse_complex(" 2 + i ").unwrap(), C64::new(2.0, 1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+xi").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
