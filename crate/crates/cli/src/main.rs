use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Context;
use balanced_pairing::report::{
    self, parse_checks, parse_range, Mod4Filter, OutputFormat, ScanConfig, JOBS_ENV,
};
use balanced_pairing::search::{self, Certificate, SearchOptions, SearchResult, EXHAUSTIVE_BOUND};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bpair", version, about = "Balanced pairings of half-systems modulo primes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity checks at every prime in a range.
    Verify {
        /// Inclusive prime range, e.g. 5..1000.
        #[arg(long)]
        range: String,
        /// Residue filter: 1, 3 or any.
        #[arg(long, default_value = "any")]
        mod4: String,
        /// Comma-separated check ids, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Multipliers for checks that take one.
        #[arg(long = "m", value_delimiter = ',', default_value = "1,2,3", allow_negative_numbers = true)]
        m: Vec<i64>,
        /// json-lines, csv or human.
        #[arg(long, default_value = "json-lines")]
        format: String,
        /// Worker threads.
        #[arg(long, env = JOBS_ENV)]
        jobs: Option<usize>,
    },
    /// Print the pairing tables and statistics for one prime.
    Show { p: u64 },
    /// Search for balanced matchings of {1..n}.
    Search {
        #[arg(long)]
        n: u64,
        /// Certificates to print.
        #[arg(long, default_value_t = 1)]
        limit: usize,
        /// Node budget; 0 means unbounded.
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        /// Enumerate every matching and report the exact balanced count.
        #[arg(long)]
        exhaustive: bool,
        /// Split the search across threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Compare (alpha4, beta4) with the residue table modulo 32.
    Table {
        #[arg(long, default_value = "5..1000")]
        range: String,
    },
}

/// Usage problems exit with 2, everything else reports its own code.
enum Failure {
    Usage(anyhow::Error),
    Io(anyhow::Error),
}

impl From<balanced_pairing::Error> for Failure {
    fn from(e: balanced_pairing::Error) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            if is_broken_pipe(&e) {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<io::Error>()
        .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn run(command: Command) -> Result<u8, Failure> {
    let stdout = io::stdout();
    match command {
        Command::Verify { range, mod4, checks, m, format, jobs } => {
            let (lo, hi) = parse_range(&range)?;
            let mut config = ScanConfig::new(lo, hi, parse_checks(&checks)?);
            config.mod4_filter = mod4.parse::<Mod4Filter>()?;
            config.output_format = format.parse::<OutputFormat>()?;
            config.m_values = m;
            let jobs = jobs.unwrap_or(1).max(1);
            let reports = report::run_scan(&config, jobs)?;
            report::write_reports(stdout.lock(), config.output_format, &reports)?;
            if let Some(first) = reports.iter().find(|r| !r.passed) {
                eprintln!("first failure: {} at p={}", first.check, first.params.p);
            }
            Ok(report::exit_code(&reports) as u8)
        }
        Command::Show { p } => {
            let text = report::render_show(p)?;
            stdout.lock().write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Search { n, limit, budget, exhaustive, parallel } => {
            let result = if exhaustive {
                search::enumerate_all(n, EXHAUSTIVE_BOUND, limit, |_, _| {})?
            } else {
                let opts = SearchOptions {
                    limit,
                    budget: (budget > 0).then_some(budget),
                    count_all: false,
                };
                if parallel {
                    search::search_parallel(n, &opts)?
                } else {
                    search::search(n, &opts)?
                }
            };
            print_search(&mut stdout.lock(), &result, exhaustive)
                .context("writing search results")
                .map_err(Failure::Io)?;
            Ok(if result.found.is_empty() && !result.exhausted { 1 } else { 0 })
        }
        Command::Table { range } => {
            let (lo, hi) = parse_range(&range)?;
            let (text, all_ok) = report::render_table(lo, hi)?;
            stdout.lock().write_all(text.as_bytes())?;
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn print_search(out: &mut impl Write, result: &SearchResult, exhaustive: bool) -> io::Result<()> {
    for cert in &result.found {
        writeln!(out, "{}{}", cert, difference_tag(cert))?;
    }
    let count_label = if result.exhausted { "balanced_count" } else { "balanced_count_at_least" };
    writeln!(
        out,
        "n={} mode={} exhausted={} matchings_examined={} nodes_expanded={} {}={}",
        result.n,
        if exhaustive { "exhaustive" } else { "pruned" },
        result.exhausted,
        result.total_matchings_examined,
        result.nodes_expanded,
        count_label,
        result.balanced_count
    )
}

fn difference_tag(cert: &Certificate) -> &'static str {
    if cert.matching.has_difference_property() {
        " difference_property=yes"
    } else {
        " difference_property=no"
    }
}
