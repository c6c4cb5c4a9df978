//! `frobpow`: Hilbert series, Groebner certificates, decompositions, orbit counts and
//! resolutions for hyperplane-fixing reflection groups acting on `S / m^[q^m]`.
//!
//! Exit codes: 0 all checks pass, 1 mismatch or internal error, 2 invalid parameters,
//! 3 enumeration cap exceeded, 10 conjecture mismatch.

mod commands;
mod report;
mod spec;
mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Caps, Mode};
use report::{Format, EXIT_CAP, EXIT_INVALID, EXIT_MISMATCH};
use spec::{field_params, SpecArgs};

/// A problem with the command line itself rather than the mathematics.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Parser, Debug)]
#[command(name = "frobpow", version, about = "Invariants of S / m^[q^m] under hyperplane-fixing reflection groups")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Largest number of points enumerated for orbit counts.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_points: u64,
    /// Largest quotient monomial basis enumerated.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_monomials: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, env = "FROBPOW_JOBS")]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Compare the closed-form Hilbert series with brute-force invariant dimensions.
    Hilbert {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        /// Truncation degree (default: the top degree n(q^m - 1)).
        #[arg(long = "D", alias = "degree")]
        d: Option<usize>,
    },
    /// Certify that the h-generators form a Groebner basis.
    Gbcheck {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: u32,
        /// Also recompute a reduced basis from the linear-algebra kernel.
        #[arg(long)]
        from_scratch: bool,
    },
    /// Check the degree-wise split of the invariants into A_G and B_G.
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: u32,
    },
    /// Count orbits on (F_{q^m})^n by union-find.
    Orbits {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: u32,
        /// Exploratory: use the generators in this JSON file instead of the spec's group.
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Verify the free resolution of S^G ∩ m^[p^m] in two variables.
    Resolution2d {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        e: u64,
        /// 1 with a transvection, 0 without.
        #[arg(long, default_value_t = 1)]
        ell: usize,
    },
    /// Evaluate the conjectured series for GL_n(F_q) and compare with brute force when small.
    Conjecture {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long = "D", alias = "degree")]
        d: Option<usize>,
    },
    /// Run every command of a manifest over its parameter grid.
    Sweep {
        #[arg(long)]
        manifest: PathBuf,
    },
}

/// Maps an error to the exit-code contract.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<UsageError>().is_some() || err.downcast_ref::<clap::Error>().is_some() {
        return EXIT_INVALID;
    }
    match err.downcast_ref::<frobpow::Error>() {
        Some(frobpow::Error::CapExceeded { .. }) => EXIT_CAP,
        Some(
            frobpow::Error::NotPrime { .. }
            | frobpow::Error::InvalidArgument(_)
            | frobpow::Error::FieldTooLarge { .. }
            | frobpow::Error::NoRootOfUnity { .. }
            | frobpow::Error::IncompatibleFields(_)
            | frobpow::Error::InvalidSpec(_)
            | frobpow::Error::DimensionMismatch(_),
        ) => EXIT_INVALID,
        _ => EXIT_MISMATCH,
    }
}

fn run(cli: &Cli) -> anyhow::Result<(String, i32)> {
    let caps = Caps { max_points: cli.max_points, max_monomials: cli.max_monomials };
    let report = match &cli.command {
        Cmd::Hilbert { spec, m, mode, d } => commands::hilbert(&spec.resolve()?, *m, *mode, *d, caps)?,
        Cmd::Gbcheck { spec, m, from_scratch } => commands::gbcheck(&spec.resolve()?, *m, *from_scratch, caps)?,
        Cmd::Decompose { spec, m } => commands::decompose(&spec.resolve()?, *m, caps)?,
        Cmd::Orbits { spec: _, m, generators: Some(path) } => commands::orbits_from_file(path, *m, caps)?,
        Cmd::Orbits { spec, m, generators: None } => commands::orbits(&spec.resolve()?, *m, caps)?,
        Cmd::Resolution2d { p, m, e, ell } => commands::resolution2d(*p, *m, *e, *ell)?,
        Cmd::Conjecture { q, p, r, n, m, d } => {
            let (p, r) = field_params(*p, *q, *r)?;
            let q = p.checked_pow(r).ok_or_else(|| UsageError(format!("{p}^{r} overflows")))?;
            commands::conjecture(q, *n, *m, *d, caps)?
        }
        Cmd::Sweep { manifest } => {
            let parsed = sweep::Manifest::load(manifest)?;
            let (json, code) = sweep::run(&parsed);
            let mut text = serde_json::to_string_pretty(&json)?;
            text.push('\n');
            if let Some(out) = &parsed.output {
                let path = manifest.parent().unwrap_or(std::path::Path::new(".")).join(out);
                std::fs::write(&path, &text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            }
            return Ok((text, code));
        }
    };
    Ok((report.render(cli.format), report.code))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("warning: could not size the worker pool: {err}");
        }
    }
    match run(&cli) {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            let _ = out.flush();
            if code != 0 {
                eprintln!("frobpow: checks did not pass (exit {code})");
            }
            ExitCode::from(code as u8)
        }
        Err(err) => {
            let code = exit_code(&err);
            eprintln!("frobpow: error: {err:#}");
            ExitCode::from(code as u8)
        }
    }
}
