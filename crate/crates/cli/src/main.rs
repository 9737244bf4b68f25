//! `lschan`: reports on the spin-j Landau-Streater channel.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid arguments,
//! 3 a closed-form-vs-numeric check exceeded its tolerance.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lschan::TwoJ;

use commands::Params;
use report::{to_csv, to_json, Report};

#[derive(Parser)]
#[command(name = "lschan", version, about = "Spin-j Landau-Streater channel analyses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map spectrum (closed form and numeric), determinant, eigenoperators.
    Spectrum(Common),
    /// Holevo, entanglement-assisted and quantum capacity figures.
    Capacities(Common),
    /// Degradability and antidegradability verdicts with certificates.
    Degradability(Common),
    /// Entanglement witness for two channel uses and entanglement breaking.
    Entanglement(Common),
    /// Maximal output p-norm and minimal output entropy via optimization.
    Extremes {
        #[command(flatten)]
        common: Common,
        /// Schatten exponent: a number >= 1 or `inf`.
        #[arg(long, default_value = "2")]
        p: String,
    },
    /// Maximal 2-norm of one use versus two uses.
    Multiplicativity(Common),
    /// Every analysis in one report.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Twice the spin, a positive integer.
    #[arg(long = "two-j", conflicts_with = "j", required_unless_present = "j")]
    two_j: Option<u32>,
    /// Spin as a decimal or fraction, e.g. `1.5` or `3/2`.
    #[arg(long)]
    j: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized checks and optimizer restarts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replaces every per-check tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Optimizer restarts.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    restarts: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_j(text: &str) -> Result<TwoJ, String> {
    let text = text.trim();
    let twice = if let Some((num, den)) = text.split_once('/') {
        let num: u32 = num.trim().parse().map_err(|_| format!("invalid spin `{text}`"))?;
        match den.trim() {
            "1" => num.checked_mul(2),
            "2" => Some(num),
            _ => None,
        }
        .ok_or_else(|| format!("spin `{text}` is not a multiple of 1/2"))?
    } else {
        let x: f64 = text.parse().map_err(|_| format!("invalid spin `{text}`"))?;
        let t = 2.0 * x;
        if !t.is_finite() || t < 0.0 || t > u32::MAX as f64 || (t - t.round()).abs() > 1e-12 {
            return Err(format!("spin `{text}` is not a multiple of 1/2"));
        }
        t.round() as u32
    };
    TwoJ::new(twice).map_err(|e| e.to_string())
}

fn parse_p(text: &str) -> Result<f64, String> {
    let p = match text.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "∞" => f64::INFINITY,
        other => other.parse::<f64>().map_err(|_| format!("invalid exponent `{text}`"))?,
    };
    if p.is_nan() || p < 1.0 {
        return Err(format!("exponent must be >= 1, got `{text}`"));
    }
    Ok(p)
}

fn params(common: &Common, p: f64) -> Result<Params, String> {
    let j = match (&common.two_j, &common.j) {
        (Some(t), _) => TwoJ::new(*t).map_err(|e| e.to_string())?,
        (None, Some(text)) => parse_j(text)?,
        (None, None) => return Err("one of --two-j or --j is required".into()),
    };
    if let Some(t) = common.tol {
        if t.is_nan() || t <= 0.0 || !t.is_finite() {
            return Err(format!("--tol must be positive and finite, got {t}"));
        }
    }
    Ok(Params {
        j,
        seed: common.seed,
        tol: common.tol,
        restarts: common.restarts as usize,
        p,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common, p_text): (&str, &Common, Option<&str>) = match &cli.command {
        Command::Spectrum(c) => ("spectrum", c, None),
        Command::Capacities(c) => ("capacities", c, None),
        Command::Degradability(c) => ("degradability", c, None),
        Command::Entanglement(c) => ("entanglement", c, None),
        Command::Extremes { common, p } => ("extremes", common, Some(p.as_str())),
        Command::Multiplicativity(c) => ("multiplicativity", c, None),
        Command::Report(c) => ("report", c, None),
    };
    let parsed = p_text
        .map(parse_p)
        .unwrap_or(Ok(2.0))
        .and_then(|p| params(common, p));
    let params = match parsed {
        Ok(params) => params,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let run = match name {
        "spectrum" => commands::spectrum,
        "capacities" => commands::capacities,
        "degradability" => commands::degradability,
        "entanglement" => commands::entanglement,
        "extremes" => commands::extremes,
        "multiplicativity" => commands::multiplicativity,
        _ => commands::report,
    };
    let section = match run(&params) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let seeded = matches!(name, "spectrum" | "capacities" | "extremes" | "multiplicativity" | "report");
    let (report, checks) = Report::build(params.j.two_j(), name, seeded.then_some(params.seed), section);
    match common.format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Csv => print!("{}", to_csv(&checks)),
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.quantity.as_str()).collect();
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("tolerance breach: {}", failed.join(", "));
        ExitCode::from(3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_parsing() {
        assert_eq!(parse_j("1.5").unwrap().two_j(), 3);
        assert_eq!(parse_j("3/2").unwrap().two_j(), 3);
        assert_eq!(parse_j("2").unwrap().two_j(), 4);
        assert_eq!(parse_j("2/1").unwrap().two_j(), 4);
        assert!(parse_j("0").is_err());
        assert!(parse_j("1.25").is_err());
        assert!(parse_j("1/3").is_err());
        assert!(parse_j("-1").is_err());
        assert!(parse_j("abc").is_err());
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!(parse_p("inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_p("3").unwrap(), 3.0);
        assert!(parse_p("0.5").is_err());
        assert!(parse_p("nan").is_err());
    }
}
