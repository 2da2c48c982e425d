use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use mitsui_core::harness::{
    config::ExperimentKind, emit_report, runs, tools, Config, Format, Report,
};
use mitsui_core::Error;

#[derive(Parser)]
#[command(
    name = "mitsui-lab",
    version,
    about = "Prime elements in number fields: sieves, characters, regions and counting experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML experiment configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    /// Exit with status 3 when a check or tolerance fails.
    #[arg(long, global = true)]
    check: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Signature, discriminant, units, regulator and torus volumes.
    FieldInfo,
    /// Prime ideals of norm below `bound`.
    SievePrimes,
    /// Prime elements in the configured region.
    EnumeratePrimeElements,
    /// Character table of the component group modulo `q`.
    Characters,
    /// Annulus-sector cover of the norm-bounded region.
    Sectors,
    /// Fourier approximation of a torus box indicator.
    FourierApprox,
    /// Bounded basis of the lattice spanned by the columns of an integer matrix.
    BoundedBasis {
        /// Matrix file, one row per line; stdin when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Prime ideal sums against N.
    Pit,
    /// Prime-element sums in a region against the volume prediction.
    Mitsui,
    /// Primes in an arithmetic progression over Q.
    SiegelWalfiszQ,
    /// Thin-cone decomposition and sandwich checks of an annulus sector.
    ProofPath,
    /// Property suites.
    Properties,
}

enum Failure {
    Config(anyhow::Error),
    Other(anyhow::Error),
}

fn classify(e: Error) -> Failure {
    let config = matches!(
        e,
        Error::Config(_)
            | Error::InvalidSpec(_)
            | Error::Reducible(_)
            | Error::NotAUnit(_)
            | Error::TorsionOrder { .. }
            | Error::NonIntegralBasis(_)
            | Error::NonUnitClass(_)
    );
    let e = anyhow::Error::new(e);
    if config {
        Failure::Config(e)
    } else {
        Failure::Other(e)
    }
}

fn load_config(cli: &Cli, kind: Option<ExperimentKind>) -> Result<Config, Failure> {
    let mut cfg = match &cli.config {
        Some(p) => Config::from_path(p).map_err(classify)?,
        None if kind == Some(ExperimentKind::Properties) => Config::for_field(Default::default()),
        None => {
            return Err(Failure::Config(anyhow::anyhow!(
                "--config is required for this subcommand"
            )))
        }
    };
    if let Some(k) = kind {
        if cfg.kind.is_some_and(|c| c != k) {
            return Err(Failure::Config(anyhow::anyhow!(
                "config kind {:?} does not match the subcommand",
                cfg.kind
            )));
        }
        cfg.kind = Some(k);
    }
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<(Report, Option<String>, Config), Failure> {
    use Command::*;
    let kind = match cli.command {
        Pit => Some(ExperimentKind::Pit),
        Mitsui => Some(ExperimentKind::Mitsui),
        SiegelWalfiszQ => Some(ExperimentKind::SiegelWalfiszQ),
        ProofPath => Some(ExperimentKind::ProofPath),
        Properties => Some(ExperimentKind::Properties),
        _ => None,
    };
    if let BoundedBasis { input } = &cli.command {
        let mut text = String::new();
        match input {
            Some(p) => {
                text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading {}", p.display()))
                    .map_err(Failure::Config)?
            }
            None => {
                std::io::stdin()
                    .read_to_string(&mut text)
                    .map_err(|e| Failure::Other(e.into()))?;
            }
        }
        let (report, matrix) = tools::bounded_basis_report(&text).map_err(classify)?;
        return Ok((report, Some(matrix), Config::for_field(Default::default())));
    }
    let cfg = load_config(cli, kind)?;
    let report = match cli.command {
        FieldInfo => tools::field_info(&cfg),
        SievePrimes => tools::sieve_primes(&cfg),
        EnumeratePrimeElements => tools::enumerate_elements(&cfg),
        Characters => tools::characters(&cfg),
        Sectors => tools::sectors(&cfg),
        FourierApprox => tools::fourier_approx(&cfg),
        _ => runs::run(&cfg),
    }
    .map_err(classify)?;
    Ok((report, None, cfg))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, plain, cfg) = match execute(&cli) {
        Ok(v) => v,
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e:#}");
            return ExitCode::from(2);
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let format = match cli.format {
        Some(OutFormat::Csv) => Format::Csv,
        Some(OutFormat::Json) => Format::Json,
        None => cfg.output.format.unwrap_or_default(),
    };
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.output.path.as_ref().map(PathBuf::from));
    let written = match (&plain, format) {
        (Some(m), Format::Csv) => match &out {
            Some(p) => std::fs::write(p, m)
                .map(|_| m.clone())
                .map_err(|e| e.into()),
            None => Ok(m.clone()),
        },
        _ => emit_report(&report, format, out.as_deref()).map_err(anyhow::Error::new),
    };
    match written {
        Ok(text) if out.is_none() => print!("{text}"),
        Ok(_) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for c in &report.checks {
        eprintln!(
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    if cli.check && !report.all_passed() {
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
