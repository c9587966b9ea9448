//! The `exotic` command line: argument parsing, the resolved [`RunConfig`],
//! dispatch to the workflows in [`commands`] and writing of artifacts.
//!
//! Exit status: 0 when every assertion of the run holds, 1 when one fails (a
//! counterexample file is written), 2 for usage errors and runs that could
//! not be carried out (bad flags, invalid input, size guard exceeded).

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::combinatorics::{Bipartition, Composition, Partition};
use crate::error::Error;
use crate::exactla::is_prime;
use crate::spaltenstein::{effective_guard, DEFAULT_GUARD};

pub use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Fit count polynomials over the primes in --q.
    Fitted,
    /// Recurse over strata of the first step (needs x² = 0).
    Stratified,
}

/// Flags shared by every command.
#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Primes to count over, comma separated (e.g. 2,3,5).
    #[arg(long = "q", value_name = "PRIMES")]
    pub q: Option<String>,
    /// Refuse enumerations whose estimated size exceeds this; EXOTIC_GUARD overrides it.
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub guard: u64,
    /// Largest prime accepted in --q.
    #[arg(long, default_value_t = 13)]
    pub max_prime: u32,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write counterexamples when an assertion fails
    /// [default: <out>.counterexamples.json, or exotic-counterexamples.json].
    #[arg(long)]
    pub counterexamples: Option<PathBuf>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Seed for randomized checks only; censuses are exhaustive.
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
}

/// An orbit given as `--mu` and `--nu`.
#[derive(Args, Clone, Debug)]
pub struct OrbitArgs {
    /// First partition, comma separated; "" is the empty partition.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Second partition, comma separated; "" is the empty partition.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
}

#[derive(Parser, Debug)]
#[command(name = "exotic", version, about = "Point counts and Jordan data for exotic Spaltenstein varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the orbits (μ,ν) with |μ|+|ν| = n.
    #[command(after_help = "TSV columns: mu, nu, jordan_type, nilpotency_order, v_is_zero")]
    Orbits {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The normal-basis representative (v, x) of an orbit.
    #[command(after_help = "TSV columns: index, vector, x_image, dual_index, form_value, v_coeff")]
    NormalBasis {
        #[command(flatten)]
        orbit: OrbitArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Recover the exotic Jordan type of the normal-basis point (one orbit, or all with --n).
    #[command(after_help = "TSV columns: mu, nu, q, recovered, match")]
    Ejordan {
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        orbit: OrbitArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Census of the flags in the fibre by their sequence of exotic types.
    #[command(after_help = "TSV columns: q, key (JSON list of {mu,nu}, from (∅,∅) up to the orbit), nested, semistandard, count")]
    Fibers {
        #[command(flatten)]
        orbit: OrbitArgs,
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        common: Common,
    },
    /// Census of isotropic first steps by case and stratum (x² = 0 only).
    #[command(after_help = "TSV columns: q, k, k2, h, case, stratum, dimension, count")]
    Strata {
        #[command(flatten)]
        orbit: OrbitArgs,
        /// Dimension of the isotropic subspace (default: every k).
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Verification workflows.
    #[command(subcommand)]
    Verify(Verify),
    /// Match relative-position matrices with pairs of semistandard bitableaux.
    #[command(after_help = "TSV columns: matrix (row-major, comma separated), t, t_prime, degree, status")]
    Rsk {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[command(flatten)]
        common: Common,
    },
    /// Count isotropic k-subspaces for a form of rank d − r and fit the degree.
    #[command(after_help = "TSV columns: q, count")]
    GrassCount {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Dimension of the radical.
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// The ten dimension-difference identities, symbolically.
    #[command(after_help = "TSV columns: stratum, passed, residual")]
    Identities {
        #[command(flatten)]
        common: Common,
    },
    /// Predicted against direct exotic types for every admissible F (x² = 0).
    #[command(after_help = "TSV columns: check, cases, mismatches, skipped")]
    CaseAnalysis {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Realized (k2, h) against the nonemptiness inequalities.
    #[command(after_help = "TSV columns: check, cases, mismatches, skipped")]
    Ineq {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Top-degree census keys against the semistandard bitableaux.
    #[command(after_help = "TSV columns: mu, nu, alpha, d_alpha, key, semistandard, degree, ok")]
    Main {
        /// Run every x² = 0 orbit of this size and every α (ignored with --mu/--nu/--alpha).
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        orbit: OrbitArgs,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Stratified)]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// Subquotient Jordan-type lemmas, exhaustively and on random pairs.
    #[command(after_help = "TSV columns: check, cases, mismatches, skipped")]
    JordanLemmas {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Everything a workflow needs, validated.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub n: Option<u32>,
    pub bipartition: Option<Bipartition>,
    pub alpha: Option<Composition>,
    pub beta: Option<Composition>,
    pub primes: Vec<u32>,
    pub guard: u64,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub counterexamples: Option<PathBuf>,
    #[serde(skip)]
    pub threads: Option<usize>,
    pub seed: u64,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub r: Option<usize>,
    pub method: Option<Method>,
    pub trials: Option<u64>,
    pub max_dim: Option<usize>,
}

impl RunConfig {
    fn base(command: &str, common: &Common, default_primes: &[u32]) -> Result<Self, Error> {
        if common.guard == 0 {
            return Err(Error::InvalidArgument("--guard must be at least 1".into()));
        }
        let primes = match &common.q {
            Some(s) => parse_primes(s, common.max_prime)?,
            None => default_primes.to_vec(),
        };
        Ok(RunConfig {
            command: command.to_string(),
            n: None,
            bipartition: None,
            alpha: None,
            beta: None,
            primes,
            guard: effective_guard(common.guard),
            format: common.format,
            out: common.out.clone(),
            counterexamples: common.counterexamples.clone(),
            threads: common.threads,
            seed: common.seed,
            k: None,
            d: None,
            r: None,
            method: None,
            trials: None,
            max_dim: None,
        })
    }

    /// The orbit, which must be given.
    pub fn orbit(&self) -> Result<&Bipartition, Error> {
        self.bipartition
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument(format!("{} needs --mu and --nu", self.command)))
    }

    pub fn alpha(&self) -> Result<&Composition, Error> {
        self.alpha
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument(format!("{} needs --alpha", self.command)))
    }
}

fn parse_primes(s: &str, max_prime: u32) -> Result<Vec<u32>, Error> {
    let mut primes = Vec::new();
    for t in s.split(',') {
        let q: u32 = t
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("--q entry {t:?}: {e}")))?;
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q > max_prime {
            return Err(Error::InvalidArgument(format!(
                "prime {q} exceeds --max-prime {max_prime}"
            )));
        }
        if primes.contains(&q) {
            return Err(Error::InvalidArgument(format!("prime {q} listed twice")));
        }
        primes.push(q);
    }
    Ok(primes)
}

fn parse_orbit(o: &OrbitArgs) -> Result<Option<Bipartition>, Error> {
    match (&o.mu, &o.nu) {
        (None, None) => Ok(None),
        (Some(mu), Some(nu)) => Ok(Some(Bipartition::new(
            mu.parse::<Partition>()?,
            nu.parse::<Partition>()?,
        ))),
        _ => Err(Error::InvalidArgument("--mu and --nu go together".into())),
    }
}

fn parse_composition(flag: &str, s: &str) -> Result<Composition, Error> {
    s.parse::<Composition>()
        .map_err(|e| Error::InvalidArgument(format!("--{flag}: {e}")))
}

const FIT_PRIMES: [u32; 6] = crate::spaltenstein::DEFAULT_PRIMES;

/// Resolves parsed arguments into a validated configuration.
pub fn resolve(cli: &Cli) -> Result<RunConfig, Error> {
    let cfg = match &cli.command {
        Command::Orbits { n, common } => {
            let mut c = RunConfig::base("orbits", common, &[2])?;
            c.n = Some(*n);
            c
        }
        Command::NormalBasis { orbit, common } => {
            let mut c = RunConfig::base("normal-basis", common, &[2])?;
            c.bipartition = parse_orbit(orbit)?;
            c.orbit()?;
            c
        }
        Command::Ejordan { n, orbit, common } => {
            let mut c = RunConfig::base("ejordan", common, &[2, 3])?;
            c.bipartition = parse_orbit(orbit)?;
            c.n = *n;
            if c.bipartition.is_none() && c.n.is_none() {
                return Err(Error::InvalidArgument("ejordan needs --mu/--nu or --n".into()));
            }
            c
        }
        Command::Fibers { orbit, alpha, common } => {
            let mut c = RunConfig::base("fibers", common, &[2])?;
            c.bipartition = parse_orbit(orbit)?;
            c.alpha = Some(parse_composition("alpha", alpha)?);
            check_sizes(&c)?;
            c
        }
        Command::Strata { orbit, k, common } => {
            let mut c = RunConfig::base("strata", common, &[2])?;
            c.bipartition = parse_orbit(orbit)?;
            c.orbit()?;
            c.k = *k;
            c
        }
        Command::Verify(v) => match v {
            Verify::Identities { common } => RunConfig::base("verify identities", common, &[2])?,
            Verify::CaseAnalysis { n, common } => {
                let mut c = RunConfig::base("verify case-analysis", common, &[2, 3])?;
                c.n = Some(*n);
                c
            }
            Verify::Ineq { n, common } => {
                let mut c = RunConfig::base("verify ineq", common, &[2])?;
                c.n = Some(*n);
                c
            }
            Verify::Main { n, orbit, alpha, method, common } => {
                let defaults: &[u32] = match method {
                    Method::Fitted => &FIT_PRIMES,
                    Method::Stratified => &[2, 3],
                };
                let mut c = RunConfig::base("verify main", common, defaults)?;
                c.bipartition = parse_orbit(orbit)?;
                c.alpha = alpha.as_deref().map(|a| parse_composition("alpha", a)).transpose()?;
                c.method = Some(*method);
                match (&c.bipartition, &c.alpha) {
                    (Some(_), Some(_)) => check_sizes(&c)?,
                    (None, None) => c.n = Some(n.unwrap_or(2)),
                    _ => {
                        return Err(Error::InvalidArgument(
                            "verify main takes --mu/--nu/--alpha together, or --n".into(),
                        ))
                    }
                }
                c
            }
            Verify::JordanLemmas { n, trials, max_dim, common } => {
                let mut c = RunConfig::base("verify jordan-lemmas", common, &[2, 3])?;
                c.n = Some(*n);
                c.trials = Some(*trials);
                c.max_dim = Some(*max_dim);
                c
            }
        },
        Command::Rsk { alpha, beta, common } => {
            let mut c = RunConfig::base("rsk", common, &[2, 3, 5, 7, 11])?;
            let (a, b) = (parse_composition("alpha", alpha)?, parse_composition("beta", beta)?);
            if a.size() != b.size() {
                return Err(Error::InvalidArgument("--alpha and --beta must have the same size".into()));
            }
            c.alpha = Some(a);
            c.beta = Some(b);
            c
        }
        Command::GrassCount { k, d, r, common } => {
            let mut c = RunConfig::base("grass-count", common, &FIT_PRIMES)?;
            if 2 * r > *d || (d - r) % 2 != 0 {
                return Err(Error::InvalidArgument(
                    "need d − r even and nonnegative for an alternating form".into(),
                ));
            }
            c.k = Some(*k);
            c.d = Some(*d);
            c.r = Some(*r);
            c
        }
    };
    Ok(cfg)
}

fn check_sizes(c: &RunConfig) -> Result<(), Error> {
    let (b, a) = (c.orbit()?, c.alpha()?);
    if b.size() != a.size() {
        return Err(Error::InvalidArgument(format!(
            "|μ|+|ν| = {} but |α| = {}",
            b.size(),
            a.size()
        )));
    }
    Ok(())
}

/// Runs the workflow named in `cfg`, using `cfg.threads` workers.
pub fn dispatch(cfg: &RunConfig) -> Result<Report, Error> {
    match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| commands::run(cfg)),
        None => commands::run(cfg),
    }
}

fn counterexample_path(cfg: &RunConfig) -> PathBuf {
    if let Some(p) = &cfg.counterexamples {
        return p.clone();
    }
    match &cfg.out {
        Some(out) => {
            let mut s = out.clone().into_os_string();
            s.push(".counterexamples.json");
            PathBuf::from(s)
        }
        None => PathBuf::from("exotic-counterexamples.json"),
    }
}

/// Entry point used by the binary; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let cfg = match resolve(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = match dispatch(&cfg) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = match cfg.format {
        Format::Tsv => report.to_tsv(),
        Format::Json => report.to_json(),
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write the report: {e}");
        return EXIT_USAGE;
    }
    if report.passed {
        return EXIT_PASS;
    }
    let path = counterexample_path(&cfg);
    let body = serde_json::json!({
        "schema": report::SCHEMA,
        "command": report.command,
        "params": report.params,
        "failures": report.failures,
    });
    let body = serde_json::to_string_pretty(&body).expect("plain JSON") + "\n";
    match std::fs::write(&path, body) {
        Ok(()) => {
            let _ = writeln!(
                stderr,
                "{} assertion(s) failed; counterexamples written to {}",
                report.failures.len(),
                path.display()
            );
        }
        Err(e) => {
            let _ = writeln!(stderr, "assertions failed, and {} could not be written: {e}", path.display());
        }
    }
    EXIT_FAIL
}
