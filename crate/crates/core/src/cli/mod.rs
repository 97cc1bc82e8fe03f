//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a certificate or sweep reports a violation,
//! 2 on usage, parse or construction errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::constructions::{
    build_xi_statement11, build_xi_statement21, build_xi_theorem22, render_reports, theorem31_pair,
    FiniteToOneMap, SequenceReport, Statement21Config, VastSet, DEFAULT_WITNESS_SIZE,
};
use crate::filters::{
    builtin_base, nonrapid_witness_for_chain, parse_chooser_script, NeighborhoodBase, UltraChooser,
    DEFAULT_DEPTH,
};
use crate::groups::{catalog, parse_finite_group, SubsetMask};
use crate::largeness::{sweeps, vastness, Vastness};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest order for which every subset of every catalog group is swept.
pub const MAX_SWEEP_ORDER: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "vastsets", version, about = "Vast sets and discrete sequences in topological groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a subset of a finite group is vast and report J.
    Vast {
        /// cyclic:n, boolean:k, dihedral:n, sym:n or cayley:<path>
        group: String,
        /// Element indices separated by commas or spaces, or `all`.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Sweep the proposition checks over every catalog group up to an order.
    VerifyProps {
        #[arg(long, default_value_t = 8)]
        order_bound: usize,
    },
    /// Build a sequence and write its report.
    Construct {
        #[arg(value_enum)]
        pipeline: Pipeline,
        /// boolean-omega or z-adic:p
        #[arg(long, default_value = "boolean-omega")]
        group: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// left, right, min or script:<path>
        #[arg(long)]
        chooser: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a nonrapidity witness `T_0, …, T_{count−1}` for a base chain.
    Witness {
        #[arg(long, default_value = "boolean-omega")]
        group: String,
        #[arg(long, default_value_t = 8)]
        count: usize,
        /// n+1, 2^n or const:k
        #[arg(long, default_value = "n+1")]
        f: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    S11,
    S21,
    T22,
    T31,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    usage(format!("io: {e}"))
}

/// Parse a chooser spec: `left`, `right`, `min` or `script:<path>`.
pub fn parse_chooser(spec: &str) -> Result<UltraChooser, String> {
    match spec {
        "left" => Ok(UltraChooser::left()),
        "right" => Ok(UltraChooser::right()),
        "min" => Ok(UltraChooser::min_code()),
        _ => {
            let path = spec
                .strip_prefix("script:")
                .ok_or_else(|| format!("unknown chooser {spec:?}"))?;
            let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            parse_chooser_script(&text)
                .map(UltraChooser::scripted)
                .map_err(|e| format!("{path}: {e}"))
        }
    }
}

/// Parse a witness size function: `n+1`, `2^n` or `const:k`.
pub fn parse_size_fn(spec: &str) -> Result<Box<dyn Fn(usize) -> usize>, String> {
    match spec {
        "n+1" => Ok(Box::new(|n| n + 1)),
        "2^n" => Ok(Box::new(|n| 1usize.checked_shl(n as u32).unwrap_or(usize::MAX))),
        _ => {
            let k = spec
                .strip_prefix("const:")
                .and_then(|k| k.parse::<usize>().ok())
                .ok_or_else(|| format!("unknown size function {spec:?}"))?;
            Ok(Box::new(move |_| k))
        }
    }
}

/// Run the tool on `args` (program name first), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8, Failure> {
    match command {
        Command::Vast { group, set } => cmd_vast(&group, &set, out),
        Command::VerifyProps { order_bound } => cmd_verify_props(order_bound, out),
        Command::Construct {
            pipeline,
            group,
            count,
            depth,
            chooser,
            out: path,
        } => cmd_construct(pipeline, &group, count, depth, chooser.as_deref(), path, out),
        Command::Witness { group, count, f } => cmd_witness(&group, count, &f, out),
    }
}

fn cmd_vast(group: &str, set: &str, out: &mut dyn Write) -> Result<u8, Failure> {
    let group = parse_finite_group(group).map_err(|e| usage(e.to_string()))?;
    let m = SubsetMask::parse(group.order(), set).map_err(|e| usage(e.to_string()))?;
    match vastness(&group, m).status {
        Vastness::Vast { j } => writeln!(out, "J={j}"),
        Vastness::NotVastUpTo { m_max } => writeln!(out, "not-vast m_max={m_max}"),
    }
    .map_err(io_failure)?;
    Ok(EXIT_OK)
}

fn cmd_verify_props(order_bound: usize, out: &mut dyn Write) -> Result<u8, Failure> {
    if order_bound > MAX_SWEEP_ORDER {
        return Err(usage(format!(
            "order bound {order_bound} refused: sweeps enumerate all 2^|G| subsets; use at most {MAX_SWEEP_ORDER}"
        )));
    }
    let mut failed = false;
    for group in catalog(order_bound) {
        for tally in sweeps::all_sweeps(&group) {
            failed |= !tally.passed();
            writeln!(out, "{tally}").map_err(io_failure)?;
        }
    }
    writeln!(out, "{}", if failed { "FAILED" } else { "ok" }).map_err(io_failure)?;
    Ok(if failed { EXIT_VIOLATION } else { EXIT_OK })
}

fn base_for(group: &str) -> Result<NeighborhoodBase, Failure> {
    builtin_base(group).map_err(|e| usage(e.to_string()))
}

/// `M_n = U_n` with `J ≤ [G : U_n] + 1` when coset representatives are known.
fn statement11_report(base: &NeighborhoodBase, count: usize, depth: usize) -> Result<SequenceReport, Failure> {
    let m: Vec<VastSet> = (0..count)
        .map(|n| VastSet {
            set: base.level(n),
            j_bound: base.syndetic_certificate(n).map(|t| t.len() as u64 + 1),
        })
        .collect();
    let witness = nonrapid_witness_for_chain(
        base.chain(),
        count,
        |_| DEFAULT_WITNESS_SIZE,
        Some(base.group().identity()),
    )
    .map_err(|e| usage(e.to_string()))?;
    let s11 = build_xi_statement11(base.group(), &FiniteToOneMap::identity(), &witness, &m, count, Some(base.chain()))
        .map_err(|e| usage(e.to_string()))?;
    let mut report = s11.report;
    report.base = base.name().to_string();
    report.depth = depth;
    Ok(report)
}

fn cmd_construct(
    pipeline: Pipeline,
    group: &str,
    count: usize,
    depth: usize,
    chooser: Option<&str>,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let reports = match pipeline {
        Pipeline::S11 => vec![statement11_report(&base_for(group)?, count, depth)?],
        Pipeline::S21 => {
            let mut config = Statement21Config::new(count);
            config.depth = depth;
            vec![build_xi_statement21(&base_for(group)?, &config).map_err(|e| usage(e.to_string()))?]
        }
        Pipeline::T22 => {
            let base = base_for(group)?;
            let bounded = base.has_syndetic_certificates();
            vec![build_xi_theorem22(&base, None, bounded, count, depth).map_err(|e| usage(e.to_string()))?]
        }
        Pipeline::T31 => {
            let spec = chooser.ok_or_else(|| usage("t31 needs --chooser left|right|min|script:<path>"))?;
            let mut chooser = parse_chooser(spec).map_err(usage)?;
            if group != "boolean-omega" {
                return Err(usage("t31 runs in boolean-omega only"));
            }
            let pair = theorem31_pair(&mut chooser, count).map_err(|e| usage(e.to_string()))?;
            vec![pair.first, pair.second]
        }
    };
    let text = render_reports(&reports);
    match path {
        Some(path) => fs::write(&path, &text).map_err(io_failure)?,
        None => out.write_all(text.as_bytes()).map_err(io_failure)?,
    }
    Ok(if reports.iter().any(SequenceReport::has_violation) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

fn cmd_witness(group: &str, count: usize, f: &str, out: &mut dyn Write) -> Result<u8, Failure> {
    let base = base_for(group)?;
    let f = parse_size_fn(f).map_err(usage)?;
    let witness = nonrapid_witness_for_chain(base.chain(), count, f, None).map_err(|e| usage(e.to_string()))?;
    out.write_all(witness.dump().as_bytes()).map_err(io_failure)?;
    Ok(EXIT_OK)
}
