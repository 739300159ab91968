use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use real_tori_cli::commands::run_command;
use real_tori_cli::config::{OutputFormat, RunConfig};
use real_tori_cli::CliError;

/// Exact classification of Real line bundles on Real tori and Klein
/// surfaces: classification tables, theta boundary data, orientability
/// of real Quot loci, and numeric verification suites.
#[derive(Parser)]
#[command(name = "real-tori", version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON configuration file providing parameters.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized suites (overrides the config value).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format (overrides the config value).
    #[arg(long, global = true, value_parser = ["tsv", "json"])]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a pair (u, w0) over an explicit lattice involution.
    ClassifyTorus {
        /// Involution matrix as JSON rows, e.g. "[[1,0],[0,-1]]".
        #[arg(long)]
        tau: Option<String>,
        /// Alternating form as JSON rows.
        #[arg(long)]
        u: Option<String>,
        /// Values of w0 on the fixed-sublattice basis, e.g. "1,0".
        #[arg(long)]
        w0: Option<String>,
    },
    /// Validate a curve class (degree, boundary bits) for a type (g,r,a).
    ClassifyCurve {
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        a: Option<u8>,
        #[arg(long)]
        d: Option<i64>,
        /// Boundary bits, comma separated, e.g. "1,0,1".
        #[arg(long)]
        w: Option<String>,
    },
    /// Theta boundary table for a type (g,r,a).
    ThetaTable {
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        a: Option<u8>,
    },
    /// Orientability of the real Quot locus / symmetric power.
    Orientability {
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        a: Option<u8>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        rank0: Option<i64>,
        #[arg(long)]
        deg0: Option<i64>,
        /// Upper slope bound, "p" or "p/q".
        #[arg(long)]
        slope_max: Option<String>,
        #[arg(long)]
        p0_circle: Option<usize>,
        /// Determinant-twist component bits, e.g. "0,1".
        #[arg(long)]
        det_component: Option<String>,
    },
    /// Numeric holonomy batteries.
    HolonomyCheck {
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Run a named verification suite (or "all").
    Verify {
        #[arg(long)]
        suite: Option<String>,
    },
}

fn parse_json_matrix(s: &str) -> Result<Value, CliError> {
    serde_json::from_str::<Value>(s)
        .map_err(|e| CliError::invalid(format!("bad matrix {s:?}: {e}")))
}

fn parse_bits(s: &str) -> Result<Value, CliError> {
    let mut out = Vec::new();
    for piece in s.split(',') {
        match piece.trim() {
            "0" => out.push(json!(0)),
            "1" => out.push(json!(1)),
            other => return Err(CliError::invalid(format!("bad bit {other:?} (use 0/1)"))),
        }
    }
    Ok(Value::Array(out))
}

fn merge(base: &mut Value, key: &str, value: Value) {
    if let Value::Object(map) = base {
        map.insert(key.into(), value);
    }
}

fn effective_params(cli: &Command, config: &RunConfig) -> Result<(String, Value), CliError> {
    let mut params = if config.parameters.is_object() {
        config.parameters.clone()
    } else if config.parameters.is_null() {
        json!({})
    } else {
        return Err(CliError::invalid("config parameters must be an object"));
    };

    let name = match cli {
        Command::ClassifyTorus { tau, u, w0 } => {
            if let Some(t) = tau {
                merge(&mut params, "tau", parse_json_matrix(t)?);
            }
            if let Some(u) = u {
                merge(&mut params, "u", parse_json_matrix(u)?);
            }
            if let Some(w) = w0 {
                merge(&mut params, "w0", parse_bits(w)?);
            }
            "classify-torus"
        }
        Command::ClassifyCurve { g, r, a, d, w } => {
            if let Some(v) = g {
                merge(&mut params, "g", json!(v));
            }
            if let Some(v) = r {
                merge(&mut params, "r", json!(v));
            }
            if let Some(v) = a {
                merge(&mut params, "a", json!(v));
            }
            if let Some(v) = d {
                merge(&mut params, "d", json!(v));
            }
            if let Some(v) = w {
                merge(&mut params, "w", parse_bits(v)?);
            }
            "classify-curve"
        }
        Command::ThetaTable { g, r, a } => {
            if let Some(v) = g {
                merge(&mut params, "g", json!(v));
            }
            if let Some(v) = r {
                merge(&mut params, "r", json!(v));
            }
            if let Some(v) = a {
                merge(&mut params, "a", json!(v));
            }
            "theta-table"
        }
        Command::Orientability {
            g,
            r,
            a,
            d,
            rank0,
            deg0,
            slope_max,
            p0_circle,
            det_component,
        } => {
            if let Some(v) = g {
                merge(&mut params, "g", json!(v));
            }
            if let Some(v) = r {
                merge(&mut params, "r", json!(v));
            }
            if let Some(v) = a {
                merge(&mut params, "a", json!(v));
            }
            if let Some(v) = d {
                merge(&mut params, "d", json!(v));
            }
            if let Some(v) = rank0 {
                merge(&mut params, "rank0", json!(v));
            }
            if let Some(v) = deg0 {
                merge(&mut params, "deg0", json!(v));
            }
            if let Some(v) = slope_max {
                merge(&mut params, "slope-max", json!(v));
            }
            if let Some(v) = p0_circle {
                merge(&mut params, "p0-circle", json!(v));
            }
            if let Some(v) = det_component {
                merge(&mut params, "det-component", parse_bits(v)?);
            }
            "orientability"
        }
        Command::HolonomyCheck { trials } => {
            if let Some(v) = trials {
                merge(&mut params, "trials", json!(v));
            }
            "holonomy-check"
        }
        Command::Verify { suite } => {
            if let Some(v) = suite {
                merge(&mut params, "suite", json!(v));
            }
            "verify"
        }
    };

    if let Some(declared) = &config.command {
        if declared != name {
            return Err(CliError::invalid(format!(
                "config declares command {declared:?} but {name:?} was invoked"
            )));
        }
    }
    Ok((name.into(), params))
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let config = match &cli.common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let seed = cli.common.seed.or(config.seed).unwrap_or(0);
    let format_name = cli
        .common
        .format
        .clone()
        .or_else(|| config.format.clone())
        .unwrap_or_else(|| "tsv".into());
    let format = OutputFormat::parse(&format_name)?;

    let (name, params) = effective_params(&cli.command, &config)?;
    let report = run_command(&name, &params, seed)?;
    let rendered = report.render(format);
    match &cli.common.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::invalid(format!("cannot write {path:?}: {e}")))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code as u8)
        }
    }
}
