//! Command-line front end.
//!
//! Exit codes: 0 success, 1 candidate witness is not a valid
//! counterexample, 2 input error, 3 a claim audit found a
//! counterexample, 4 resource cutoff exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use ringlab::audit::{self, AuditStatus, ClaimTag, Inventory};
use ringlab::error::RingError;
use ringlab::ideal::{enumerate_ideals_with_cutoff, Ideal, DEFAULT_ENUMERATION_CUTOFF};
use ringlab::intpoly::{search_integer_ideals_jobs, IntPredicate};
use ringlab::parser::{elaborate, parse_element, parse_ideal, parse_ring};
use ringlab::predicates::{
    cube_condition, is_cdf, is_prime, is_sdf, is_star_prime, Mode, Verdict,
};
use ringlab::report::{predicate_row, ClaimRow, Report, SearchOut, WitnessCheck};
use ringlab::ring::FiniteRing;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Parser)]
#[command(
    name = "ringlab",
    version,
    about = "Finite commutative ring laboratory: build rings, classify ideals, audit claims"
)]
struct Cli {
    /// Output format for the report (stdout).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for exhaustive pair scans.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Restrict pair scans to pairs of nonzero elements.
    #[arg(long, global = true)]
    nonzero_only: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the ideals of a ring, or one ideal, under all predicates.
    Classify {
        /// Ring expression, e.g. "Z8", "Z3 x Z3", "Z3[x]/(x^2+1)".
        ring: String,
        /// Ideal expression, e.g. "zero" or "gen(4)". Omit to
        /// enumerate every ideal of the ring.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Audit a claim (by tag) or every claim ("all") over the
    /// built-in ring inventory.
    Audit {
        /// Claim tag such as THM_CHAR3, or "all".
        claim: String,
    },
    /// Search integer ideals nZ for lo <= n <= hi under one predicate.
    Search {
        lo: u64,
        hi: u64,
        /// One of: cdf, sdf, prime, star-prime, cube-condition.
        predicate: String,
    },
    /// Check whether (a, b) defeats the cubes-difference predicate
    /// for the given ideal.
    Witness {
        ring: String,
        ideal: String,
        a: String,
        b: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Cutoff(_) => 4,
                _ => 2,
            }
        }
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    std::process::exit(code);
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Cutoff(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Cutoff(m) => write!(f, "{m}"),
        }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::TooLarge { .. } => CliError::Cutoff(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ringlab::parser::DslError> for CliError {
    fn from(e: ringlab::parser::DslError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn enumeration_cutoff() -> Result<u64, CliError> {
    match std::env::var("RINGLAB_CUTOFF") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| CliError::Input(format!("invalid RINGLAB_CUTOFF value: {v:?}"))),
        Err(_) => Ok(DEFAULT_ENUMERATION_CUTOFF),
    }
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Md => print!("{}", report.to_markdown()),
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    match &cli.cmd {
        Cmd::Classify { ring, ideal } => cmd_classify(cli, ring, ideal.as_deref()),
        Cmd::Audit { claim } => cmd_audit(cli, claim),
        Cmd::Search { lo, hi, predicate } => cmd_search(cli, *lo, *hi, predicate),
        Cmd::Witness { ring, ideal, a, b } => cmd_witness(cli, ring, ideal, a, b),
    }
}

fn pair_mode(cli: &Cli) -> Mode {
    if cli.nonzero_only {
        Mode::NonzeroPairs
    } else {
        Mode::AllPairs
    }
}

/// Canonical command echo: subcommand plus the arguments that affect
/// the result. Worker count and format are excluded so reruns under
/// different --jobs settings stay byte-identical.
fn echo(cli: &Cli, parts: &[&str]) -> String {
    let mut s = parts.join(" ");
    if cli.nonzero_only {
        s.push_str(" --nonzero-only");
    }
    s
}

fn load_ring(text: &str) -> Result<FiniteRing, CliError> {
    let expr = parse_ring(text)?;
    Ok(elaborate(&expr)?)
}

fn classify_one(rep: &mut Report, ideal: &Ideal, mode: Mode, jobs: usize) -> Result<(), CliError> {
    let rows: [(&str, Verdict); 5] = [
        ("cdf", is_cdf(ideal, mode, jobs)?),
        ("sdf", is_sdf(ideal, mode, jobs)?),
        ("prime", is_prime(ideal, jobs)?),
        ("star-prime", is_star_prime(ideal, mode, jobs)?),
        ("cube-condition", cube_condition(ideal)?),
    ];
    for (name, v) in &rows {
        rep.results.push(predicate_row(ideal, name, v));
    }
    Ok(())
}

fn cmd_classify(cli: &Cli, ring_text: &str, ideal_text: Option<&str>) -> Result<i32, CliError> {
    let ring = load_ring(ring_text)?;
    let mode = pair_mode(cli);
    match ideal_text {
        Some(itext) => {
            let ideal = parse_ideal(&ring, itext)?;
            if !ideal.is_proper() {
                return Err(RingError::NotProper.into());
            }
            let mut rep = Report::new(echo(cli, &["classify", ring_text, "--ideal", itext]));
            classify_one(&mut rep, &ideal, mode, cli.jobs)?;
            emit(&rep, cli.format);
            Ok(0)
        }
        None => {
            let cutoff = enumeration_cutoff()?;
            let ideals = enumerate_ideals_with_cutoff(&ring, cutoff)?;
            let mut rep = Report::new(echo(cli, &["classify", ring_text]));
            for ideal in &ideals {
                if ideal.is_proper() {
                    let v = is_cdf(ideal, mode, cli.jobs)?;
                    rep.results.push(predicate_row(ideal, "cdf", &v));
                } else {
                    rep.results.push(ringlab::report::PredicateRow {
                        ring: ring.name().to_string(),
                        ideal: ideal.describe(),
                        predicate: "proper".to_string(),
                        holds: false,
                        witness: None,
                        mode: mode.as_str().to_string(),
                    });
                }
            }
            emit(&rep, cli.format);
            Ok(0)
        }
    }
}

fn cmd_audit(cli: &Cli, claim: &str) -> Result<i32, CliError> {
    let inv = Inventory::default();
    let reports: Vec<audit::AuditReport> = if claim == "all" {
        audit::run_all(&inv, cli.jobs).0
    } else {
        let tag: ClaimTag = claim
            .parse()
            .map_err(|e: String| CliError::Input(e))?;
        vec![audit::audit(tag, &inv, cli.jobs)]
    };
    let mut rep = Report::new(echo(cli, &["audit", claim]));
    rep.claims = reports.iter().map(ClaimRow::from).collect();
    emit(&rep, cli.format);
    let any_counter = reports
        .iter()
        .any(|r| r.status == AuditStatus::CounterexampleFound);
    Ok(if any_counter { 3 } else { 0 })
}

fn cmd_search(cli: &Cli, lo: u64, hi: u64, predicate: &str) -> Result<i32, CliError> {
    let pred: IntPredicate = predicate.parse().map_err(CliError::Input)?;
    let matches = search_integer_ideals_jobs(lo, hi, pred, cli.jobs)?;
    let mut rep = Report::new(echo(
        cli,
        &["search", &lo.to_string(), &hi.to_string(), pred.as_str()],
    ));
    rep.search = Some(SearchOut {
        predicate: pred.as_str().to_string(),
        lo,
        hi,
        matches,
    });
    emit(&rep, cli.format);
    Ok(0)
}

fn cmd_witness(
    cli: &Cli,
    ring_text: &str,
    ideal_text: &str,
    a_text: &str,
    b_text: &str,
) -> Result<i32, CliError> {
    let ring = load_ring(ring_text)?;
    let ideal = parse_ideal(&ring, ideal_text)?;
    if !ideal.is_proper() {
        return Err(RingError::NotProper.into());
    }
    let a = parse_element(&ring, a_text)?;
    let b = parse_element(&ring, b_text)?;
    let cube = |x| ring.mul(ring.mul(x, x), x);
    let cube_diff = ring.sub(cube(a), cube(b));
    let diff = ring.sub(a, b);
    let quad = ring.add(ring.add(ring.mul(a, a), ring.mul(a, b)), ring.mul(b, b));
    let check = WitnessCheck {
        ring: ring.name().to_string(),
        ideal: ideal.describe(),
        a: format!("{} [#{}]", ring.label(a), a.0),
        b: format!("{} [#{}]", ring.label(b), b.0),
        cube_diff_in_ideal: ideal.contains(cube_diff),
        diff_in_ideal: ideal.contains(diff),
        quad_in_ideal: ideal.contains(quad),
        valid_counterexample: ideal.contains(cube_diff)
            && !ideal.contains(diff)
            && !ideal.contains(quad),
    };
    let valid = check.valid_counterexample;
    let mut rep = Report::new(echo(
        cli,
        &["witness", ring_text, ideal_text, a_text, b_text],
    ));
    rep.witness_check = Some(check);
    emit(&rep, cli.format);
    Ok(if valid { 0 } else { 1 })
}
