//! `qkgr`: products, Gromov-Witten invariants, Giambelli expressions and
//! verification suites for QK(Gr(m, n)) from the command line.

mod cache;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qkgr::invariants::{dual_basis_element, gw_dual, gw_sheaf};
use qkgr::verify::{parse_suites, run_suite, Report, SuiteOptions};
use qkgr::{GrassCtx, Partition, QKElement, QkRing};

#[derive(Parser)]
#[command(
    name = "qkgr",
    version,
    about = "Exact quantum K-theory of Grassmannians"
)]
struct Cli {
    /// Worker threads for table and verify (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Grass {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

impl Grass {
    fn ctx(self) -> Result<GrassCtx, CliError> {
        Ok(GrassCtx::new(self.m, self.n)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Dual,
    Sheaf,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum product O_lhs * O_rhs.
    Multiply {
        #[command(flatten)]
        grass: Grass,
        #[arg(long, allow_hyphen_values = true)]
        lhs: Partition,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Partition,
        #[arg(long)]
        json: bool,
    },
    /// Three-point K-theoretic Gromov-Witten invariant.
    Gw {
        #[command(flatten)]
        grass: Grass,
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Partition,
        #[arg(long, allow_hyphen_values = true)]
        mu: Partition,
        #[arg(long, allow_hyphen_values = true)]
        nu: Partition,
        /// Whether the third class is the dual class O_nu^dual or O_nu.
        #[arg(long, value_enum)]
        basis: Basis,
        #[arg(long)]
        json: bool,
    },
    /// O_lambda as a polynomial in the special classes.
    Giambelli {
        #[command(flatten)]
        grass: Grass,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Partition,
    },
    /// The dual basis element t_q * O_{lambda^dual}.
    Dualbasis {
        #[command(flatten)]
        grass: Grass,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Partition,
    },
    /// Every product O_lambda * O_mu with lambda <= mu.
    Table {
        #[command(flatten)]
        grass: Grass,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Product cache, read if present and rewritten afterwards.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run verification suites; exits 3 when any suite reports a violation.
    Verify {
        #[command(flatten)]
        grass: Grass,
        /// Comma-separated suites: s3, duality, signs, structure, pieri,
        /// leading, deg0, assoc, comm, special, or all.
        #[arg(long)]
        suite: String,
        /// Sample count for deg0 and assoc (assoc is exhaustive without it).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
pub enum CliError {
    Engine(qkgr::Error),
    Usage(String),
    Io(io::Error),
}

impl From<qkgr::Error> for CliError {
    fn from(e: qkgr::Error) -> Self {
        CliError::Engine(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(e) if e.is_internal() => 4,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

/// `O[2,1]`, or `1` for the unit class.
fn class_name(lambda: &Partition) -> String {
    if lambda.is_empty() {
        "1".into()
    } else {
        let rows: Vec<String> = lambda.parts().iter().map(|r| r.to_string()).collect();
        format!("O[{}]", rows.join(","))
    }
}

fn render_table(table: &[(Partition, Partition, QKElement)]) -> String {
    let mut out = String::new();
    for (lambda, mu, product) in table {
        writeln!(
            out,
            "{} * {} = {product}",
            class_name(lambda),
            class_name(mu)
        )
        .unwrap();
    }
    out
}

/// Output of a successful command and whether verification failed.
struct Outcome {
    text: String,
    violations: bool,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome {
            text,
            violations: false,
        }
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Multiply {
            grass,
            lhs,
            rhs,
            json,
        } => {
            let ring = QkRing::new(grass.ctx()?);
            let product = ring.star(&lhs, &rhs)?;
            Ok(if json {
                product.to_json()
            } else {
                product.to_string()
            }
            .into())
        }
        Command::Gw {
            grass,
            d,
            lambda,
            mu,
            nu,
            basis,
            json,
        } => {
            let ring = QkRing::new(grass.ctx()?);
            let value = match basis {
                Basis::Dual => gw_dual(&ring, &lambda, &mu, &nu, d)?,
                Basis::Sheaf => gw_sheaf(&ring, &lambda, &mu, &nu, d)?,
            };
            Ok(if json {
                format!("{{\"value\":{value}}}")
            } else {
                value.to_string()
            }
            .into())
        }
        Command::Giambelli { grass, lambda } => {
            let ring = QkRing::new(grass.ctx()?);
            Ok(ring.giambelli_expr(&lambda)?.to_string().into())
        }
        Command::Dualbasis { grass, lambda } => {
            let ring = QkRing::new(grass.ctx()?);
            Ok(dual_basis_element(&ring, &lambda)?.to_string().into())
        }
        Command::Table { grass, out, cache } => {
            let ctx = grass.ctx()?;
            let ring = QkRing::new(ctx);
            if let Some(path) = &cache {
                let loaded = cache::load(path, &ring)?;
                eprintln!("cache: {loaded} products loaded from {}", path.display());
            }
            let table: Vec<(Partition, Partition, QKElement)> = ring
                .full_table()
                .into_iter()
                .map(|(a, b, p)| (a, b, (*p).clone()))
                .collect();
            if let Some(path) = &cache {
                cache::store(path, ctx, &table)?;
            }
            let text = render_table(&table);
            match out {
                Some(path) => {
                    fs::write(&path, &text)?;
                    Ok(String::new().into())
                }
                None => Ok(text.trim_end().to_string().into()),
            }
        }
        Command::Verify {
            grass,
            suite,
            samples,
            seed,
            json,
        } => {
            let ring = QkRing::new(grass.ctx()?);
            let suites = parse_suites(&suite).map_err(|e| CliError::Usage(e.to_string()))?;
            let opts = SuiteOptions {
                samples,
                seed,
                ..SuiteOptions::default()
            };
            let reports = suites
                .into_iter()
                .map(|s| run_suite(&ring, s, &opts))
                .collect::<qkgr::Result<Vec<Report>>>()?;
            for r in &reports {
                eprintln!("{}: {:.2?}", r.suite, r.elapsed);
            }
            let violations = reports.iter().any(|r| !r.pass);
            let text = if json {
                serde_json::to_string(&reports).expect("reports serialize")
            } else {
                reports
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Outcome { text, violations })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(outcome) => {
            if !outcome.text.is_empty() {
                let mut stdout = io::stdout().lock();
                let _ = writeln!(stdout, "{}", outcome.text);
            }
            if outcome.violations {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
