//! `unirat`: command-line front end for the verification toolkit.
//!
//! Every command writes JSON (one object per line) to stdout or `--out`.
//! Exit codes: 0 success, 1 a verification failed, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use unirat_core::arith::{Field, GaussRat};
use unirat_core::conic::{
    h_conic, no_solution_search, on_conic, parity_check, q_conic, PruneStrategy, SearchOptions,
};
use unirat_core::identities::verify_all;
use unirat_core::pipeline::{
    build_phi, jacobian_rank, recover_v, sample_points, verify_on_h, SampleOptions,
};
use unirat_core::poly::RatFunc;
use unirat_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "unirat",
    version,
    about = "Exact checks for a unirational quotient of three elliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every random draw
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Binary precision of the numeric lift (at least 64)
    #[arg(long, global = true, default_value_t = 128)]
    prec: usize,

    /// Prime for the finite-field search (must be 1 mod 4)
    #[arg(long, global = true, default_value_t = 13)]
    prime: u64,

    /// Maximum total degree of searched polynomials
    #[arg(long = "max-degree", global = true, default_value_t = 1)]
    max_degree: u32,

    /// Worker threads for search and sampling; output does not depend on it
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Evaluation point `s,t,v` (rationals or Gaussian rationals)
    #[arg(long, global = true, default_value = "2,3,1")]
    point: String,

    /// Number of samples
    #[arg(long, global = true, default_value_t = 5)]
    count: usize,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Check every displayed identity, one line each
    VerifyIdentities,
    /// Print the map P^3 -> H as exact rational functions
    Parametrize,
    /// Sample points of H and lift them to the curves
    Sample,
    /// Exact Jacobian of the map at --point and its rank
    JacobianRank,
    /// Search F_p for polynomial sections of the fibre conic
    NoRationalPoint,
    /// Conic bundle data, the known point and the parity argument
    ConicInfo,
}

enum Failure {
    Verification,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("output: {e}"))
    }
}

type Out = Box<dyn Write>;

fn line(out: &mut Out, v: &impl serde::Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, v).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn verdict(ok: bool) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn parse_point(src: &str) -> Result<[GaussRat; 3], Failure> {
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    let [s, t, v] = parts.as_slice() else {
        return Err(Failure::Usage(format!(
            "--point expects s,t,v, got `{src}`"
        )));
    };
    let p = |x: &str| GaussRat::parse(&(), x).map_err(Failure::from);
    Ok([p(s)?, p(t)?, p(v)?])
}

fn run(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    if cli.prec < 64 {
        return Err(Failure::Usage(format!(
            "--prec must be at least 64, got {}",
            cli.prec
        )));
    }
    let threads = cli.threads.max(1);
    match cli.command {
        Command::VerifyIdentities => {
            let reports = verify_all();
            for r in &reports {
                line(out, &r.to_json())?;
            }
            verdict(reports.iter().all(|r| r.ok))
        }
        Command::Parametrize => {
            let phi = build_phi();
            line(out, &phi.to_json())?;
            verdict(verify_on_h(&phi).ok)
        }
        Command::Sample => {
            if cli.count == 0 {
                return Err(Failure::Usage("--count must be at least 1".into()));
            }
            let opts = SampleOptions {
                count: cli.count,
                seed: cli.seed,
                prec: cli.prec,
                threads,
            };
            let reports = sample_points(&build_phi(), &opts)?;
            for r in &reports {
                line(out, &r.to_json())?;
            }
            verdict(reports.iter().all(|r| r.lift.ok()))
        }
        Command::JacobianRank => {
            let pt = parse_point(&cli.point)?;
            let rep = jacobian_rank(&build_phi(), &pt)?;
            line(out, &rep.to_json())?;
            verdict(rep.rank == 3)
        }
        Command::NoRationalPoint => {
            let opts = SearchOptions {
                prime: cli.prime,
                max_degree: cli.max_degree,
                threads,
                prune: PruneStrategy::ResidueAndLeading,
            };
            let rep = no_solution_search(&opts)?;
            line(out, &rep)?;
            verdict(rep.solutions.is_empty())
        }
        Command::ConicInfo => conic_info(cli, out),
    }
}

fn conic_info(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let mut ok = true;
    for (name, c) in [("H", h_conic()), ("Q", q_conic())] {
        line(
            out,
            &json!({
                "conic": name,
                "vars": c.vars().names(),
                "A": c.coeff_a.to_string(),
                "B": c.coeff_alpha.to_string(),
                "C": c.constant.to_string(),
            }),
        )?;
    }
    let q = q_conic();
    let var = |k| RatFunc::var(q.vars(), &(), k);
    let has_point = on_conic(&q, &var(0), &var(1));
    ok &= has_point;
    line(
        out,
        &json!({"conic": "Q", "point": ["s", "t"], "on_conic": has_point}),
    )?;
    let rv = recover_v(&build_phi());
    ok &= rv.ok;
    line(out, &rv.to_json())?;
    for d in 0..=cli.max_degree.max(1) {
        let p = parity_check(d);
        ok &= p.ok();
        line(
            out,
            &json!({
                "parity_degree": p.degree,
                "b_zero_forces": p.b_zero_forces,
                "beta_zero_forces": p.beta_zero_forces,
                "ok": p.ok(),
            }),
        )?;
    }
    verdict(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out: Out = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let result = run(&cli, &mut out);
    if let Err(e) = out.flush() {
        eprintln!("error: output: {e}");
        return ExitCode::from(2);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
