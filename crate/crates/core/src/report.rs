//! Batch scans over prime ranges and the text renderings used by the
//! command-line front end.
//!
//! Scans parallelize per prime; reports are always emitted in ascending
//! `p`, then check id, then parameters, whatever the job count.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{run_check, CheckId, CheckReport};
use crate::modular::{half_of, is_prime, PrimeContext, QuarticSignature, MODULUS_BOUND};
use crate::pairing::{gamma, gauss_count, Pairing};
use crate::quartic;

/// Environment variable holding the default number of worker threads.
pub const JOBS_ENV: &str = "BPAIR_JOBS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mod4Filter {
    One,
    Three,
    #[default]
    Any,
}

impl Mod4Filter {
    pub fn accepts(&self, p: u64) -> bool {
        match self {
            Mod4Filter::One => p % 4 == 1,
            Mod4Filter::Three => p % 4 == 3,
            Mod4Filter::Any => true,
        }
    }
}

impl FromStr for Mod4Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Mod4Filter::One),
            "3" => Ok(Mod4Filter::Three),
            "any" => Ok(Mod4Filter::Any),
            _ => Err(Error::InvalidScan(format!("mod4 filter must be 1, 3 or any, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    JsonLines,
    Csv,
    Human,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json-lines" | "jsonl" => Ok(OutputFormat::JsonLines),
            "csv" => Ok(OutputFormat::Csv),
            "human" => Ok(OutputFormat::Human),
            _ => Err(Error::InvalidScan(format!("unknown format `{s}`"))),
        }
    }
}

/// What to run in a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub lo: u64,
    pub hi: u64,
    pub mod4_filter: Mod4Filter,
    pub checks: Vec<CheckId>,
    pub m_values: Vec<i64>,
    pub output_format: OutputFormat,
}

impl ScanConfig {
    pub fn new(lo: u64, hi: u64, checks: Vec<CheckId>) -> Self {
        Self {
            lo,
            hi,
            mod4_filter: Mod4Filter::Any,
            checks,
            m_values: vec![1, 2, 3],
            output_format: OutputFormat::JsonLines,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let min_lo = if self.mod4_filter == Mod4Filter::One { 5 } else { 3 };
        if self.lo < min_lo {
            return Err(Error::InvalidScan(format!("range must start at {min_lo} or above")));
        }
        if self.hi < self.lo {
            return Err(Error::InvalidScan(format!("empty range {}..{}", self.lo, self.hi)));
        }
        if self.hi >= MODULUS_BOUND {
            return Err(Error::ModulusTooLarge(self.hi));
        }
        if self.checks.is_empty() {
            return Err(Error::InvalidScan("no checks selected".into()));
        }
        Ok(())
    }

    pub fn primes(&self) -> Vec<u64> {
        (self.lo..=self.hi)
            .filter(|&p| p % 2 == 1 && is_prime(p) && self.mod4_filter.accepts(p))
            .collect()
    }
}

/// Parses `lo..hi` (inclusive).
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::InvalidScan(format!("range must look like LO..HI, got `{s}`"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

/// Parses a comma-separated check list; `all` selects every check.
pub fn parse_checks(s: &str) -> Result<Vec<CheckId>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if item == "all" {
            out.extend(CheckId::ALL);
        } else {
            out.push(item.parse()?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn reports_for_prime(ctx: &PrimeContext, config: &ScanConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &check in &config.checks {
        out.extend(run_check(check, ctx, &config.m_values)?);
    }
    out.sort_by(|a, b| (a.check.as_str(), a.params).cmp(&(b.check.as_str(), b.params)));
    Ok(out)
}

fn scan_with<F>(config: &ScanConfig, jobs: usize, make_ctx: F) -> Result<Vec<CheckReport>>
where
    F: Fn(u64) -> Result<PrimeContext> + Sync,
{
    config.validate()?;
    let primes = config.primes();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let per_prime: Vec<Result<Vec<CheckReport>>> = pool.install(|| {
        primes
            .par_iter()
            .map(|&p| reports_for_prime(&make_ctx(p)?, config))
            .collect()
    });
    let mut out = Vec::new();
    for r in per_prime {
        out.extend(r?);
    }
    Ok(out)
}

/// Runs every selected check at every prime of the range on `jobs` threads.
pub fn run_scan(config: &ScanConfig, jobs: usize) -> Result<Vec<CheckReport>> {
    scan_with(config, jobs, PrimeContext::new)
}

/// 0 when every report passed, 1 otherwise.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().all(|r| r.passed) {
        0
    } else {
        1
    }
}

fn join(v: &[i128]) -> String {
    v.iter().map(i128::to_string).collect::<Vec<_>>().join(",")
}

/// One output record; all numbers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportLine {
    pub check: String,
    pub p: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&CheckReport> for ReportLine {
    fn from(r: &CheckReport) -> Self {
        Self {
            check: r.check.as_str().to_string(),
            p: r.params.p.to_string(),
            m: r.params.m.map(|v| v.to_string()),
            g: r.params.g.map(|v| v.to_string()),
            x: r.params.x.map(|v| v.to_string()),
            passed: r.passed,
            lhs: join(&r.lhs),
            rhs: join(&r.rhs),
            note: (!r.note.is_empty()).then(|| r.note.clone()),
        }
    }
}

pub const CSV_HEADER: [&str; 9] = ["check", "p", "m", "g", "x", "passed", "lhs", "rhs", "note"];

impl ReportLine {
    pub fn csv_record(&self) -> [String; 9] {
        let opt = |o: &Option<String>| o.clone().unwrap_or_default();
        [
            self.check.clone(),
            self.p.clone(),
            opt(&self.m),
            opt(&self.g),
            opt(&self.x),
            self.passed.to_string(),
            self.lhs.clone(),
            self.rhs.clone(),
            opt(&self.note),
        ]
    }

    pub fn from_csv_record(rec: &csv::StringRecord) -> Option<Self> {
        let opt = |i: usize| rec.get(i).filter(|s| !s.is_empty()).map(str::to_string);
        Some(Self {
            check: rec.get(0)?.to_string(),
            p: rec.get(1)?.to_string(),
            m: opt(2),
            g: opt(3),
            x: opt(4),
            passed: rec.get(5)?.parse().ok()?,
            lhs: rec.get(6)?.to_string(),
            rhs: rec.get(7)?.to_string(),
            note: opt(8),
        })
    }
}

/// Streams reports in the chosen format.
pub fn write_reports<W: Write>(out: W, format: OutputFormat, reports: &[CheckReport]) -> io::Result<()> {
    match format {
        OutputFormat::JsonLines => {
            let mut out = out;
            for r in reports {
                serde_json::to_writer(&mut out, &ReportLine::from(r))?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in reports {
                w.write_record(ReportLine::from(r).csv_record())?;
            }
            w.flush()
        }
        OutputFormat::Human => {
            let mut out = out;
            for r in reports {
                let line = ReportLine::from(r);
                let mut params = format!("p={}", line.p);
                for (k, v) in [("m", &line.m), ("g", &line.g), ("x", &line.x)] {
                    if let Some(v) = v {
                        write!(params, " {k}={v}").unwrap();
                    }
                }
                writeln!(
                    out,
                    "{} {:<27} {:<16} lhs=({}) rhs=({}){}",
                    if r.passed { "PASS" } else { "FAIL" },
                    line.check,
                    params,
                    line.lhs,
                    line.rhs,
                    line.note.map(|n| format!("  # {n}")).unwrap_or_default()
                )?;
            }
            out.flush()
        }
    }
}

fn row(out: &mut String, label: &str, values: impl Iterator<Item = u64>) {
    write!(out, "{label:<12}").unwrap();
    for v in values {
        write!(out, " {v:>4}").unwrap();
    }
    out.push('\n');
}

/// Constants, pairing tables and statistics for one prime `p = 1 (mod 4)`.
pub fn render_show(p: u64) -> Result<String> {
    let ctx = PrimeContext::one_mod_four(p)?;
    let pairing = Pairing::new(&ctx)?;
    let sig = QuarticSignature::new(&ctx)?;
    let counts = pairing.classify();
    let t = ctx.t() as i64;
    let mut out = String::new();
    writeln!(out, "p = {p}").unwrap();
    writeln!(out, "t = {}", ctx.t()).unwrap();
    writeln!(out, "g = {}", ctx.g()).unwrap();
    writeln!(out, "L_p = {}", ctx.l_p().unwrap_or(0)).unwrap();
    writeln!(out, "M_p = {}", ctx.m_p()).unwrap();
    out.push('\n');
    row(&mut out, "a", pairing.firsts().iter().copied());
    row(&mut out, "abar", pairing.partners().iter().copied());
    out.push('\n');
    row(&mut out, "abar-a", pairing.pairs().map(|(a, b)| b - a));
    row(&mut out, "bar(abar+a)", pairing.pairs().map(|(a, b)| half_of((a + b) % p, p)));
    out.push('\n');
    writeln!(
        out,
        "counts (X,Y,Z) = {}  [crossing, disjoint, nesting]",
        counts
    )
    .unwrap();
    writeln!(out, "Gamma(t,p) = {}", gauss_count(t, p)?).unwrap();
    writeln!(out, "gamma(t,p) = {}", gamma(t, p)?).unwrap();
    writeln!(out, "alpha4 = {}, beta4 = {}", sig.alpha4(), sig.beta4()).unwrap();
    Ok(out)
}

/// `(alpha4, beta4)` against the `p mod 32` table for every `p = 1 (mod 4)`
/// in the range. Returns the text and whether every prime matched.
pub fn render_table(lo: u64, hi: u64) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut all_ok = true;
    writeln!(out, "{:>8} {:>5} {:>4} {:>8} {:>8} {:>6} {:>10} {:>5}", "p", "p%32", "g", "alpha4", "beta4", "a%16", "b%mod", "row").unwrap();
    for p in (lo.max(5)..=hi).filter(|&p| p % 4 == 1 && is_prime(p)) {
        let ctx = PrimeContext::new(p)?;
        let sig = QuarticSignature::new(&ctx)?;
        let beta_mod = if p % 8 == 1 { 8 } else { 4 };
        let hit = quartic::match_table(&sig);
        all_ok &= hit.is_some();
        writeln!(
            out,
            "{:>8} {:>5} {:>4} {:>8} {:>8} {:>6} {:>10} {:>5}",
            p,
            p % 32,
            sig.g(),
            sig.alpha4(),
            sig.beta4(),
            sig.alpha4().rem_euclid(16),
            format!("{} (mod {})", sig.beta4().rem_euclid(beta_mod), beta_mod),
            if hit.is_some() { "ok" } else { "MISS" }
        )
        .unwrap();
    }
    Ok((out, all_ok))
}

/// Default number of jobs: the environment variable if set, else 1.
pub fn default_jobs() -> usize {
    std::env::var(JOBS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&j| j > 0)
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corrupted(p: u64) -> Result<PrimeContext> {
        PrimeContext::new(p).map(|c| {
            let t = (c.t() + 1) % p;
            c.with_t_for_testing(t)
        })
    }

    #[test]
    fn parse_helpers() {
        assert_eq!(parse_range("5..100"), Ok((5, 100)));
        assert_eq!(parse_range("5..=100"), Ok((5, 100)));
        assert!(parse_range("5-100").is_err());
        assert_eq!(parse_checks("balanced_pairing"), Ok(vec![CheckId::BalancedPairing]));
        assert_eq!(parse_checks("all").unwrap().len(), CheckId::ALL.len());
        assert!(parse_checks("nope").is_err());
        assert_eq!("1".parse(), Ok(Mod4Filter::One));
        assert!("2".parse::<Mod4Filter>().is_err());
    }

    #[test]
    fn scan_validation() {
        let mut config = ScanConfig::new(3, 50, vec![CheckId::SunParity]);
        assert!(config.validate().is_ok());
        config.mod4_filter = Mod4Filter::One;
        assert!(config.validate().is_err());
        let config = ScanConfig::new(50, 10, vec![CheckId::SunParity]);
        assert!(config.validate().is_err());
        let config = ScanConfig::new(5, 10, vec![]);
        assert!(config.validate().is_err());
    }

    #[test]
    fn balanced_scan_example() {
        let mut config = ScanConfig::new(5, 100, vec![CheckId::BalancedPairing]);
        config.mod4_filter = Mod4Filter::One;
        let reports = run_scan(&config, 2).unwrap();
        let ps: Vec<u64> = reports.iter().map(|r| r.params.p).collect();
        assert_eq!(ps, vec![5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97]);
        assert_eq!(exit_code(&reports), 0);
    }

    #[test]
    fn sun_scan_includes_three_mod_four() {
        let mut config = ScanConfig::new(3, 50, vec![CheckId::SunParity]);
        config.m_values = vec![1, 2, 3];
        let reports = run_scan(&config, 1).unwrap();
        assert!(reports.iter().any(|r| r.params.p == 7));
        assert!(reports.iter().all(|r| r.passed));
        // m = 3 is skipped at p = 3
        assert_eq!(reports.iter().filter(|r| r.params.p == 3).count(), 2);
    }

    #[test]
    fn corrupted_t_fails() {
        let config = ScanConfig::new(5, 13, CheckId::ALL.to_vec());
        let good = scan_with(&config, 1, PrimeContext::new).unwrap();
        assert_eq!(exit_code(&good), 0);
        let bad = scan_with(&config, 1, corrupted).unwrap();
        assert_eq!(exit_code(&bad), 1);
        let first = bad.iter().find(|r| !r.passed).unwrap();
        assert_eq!(first.params.p, 5);
    }

    #[test]
    fn output_is_independent_of_jobs() {
        let config = ScanConfig::new(3, 200, CheckId::ALL.to_vec());
        let render = |jobs| {
            let mut buf = Vec::new();
            write_reports(&mut buf, OutputFormat::JsonLines, &run_scan(&config, jobs).unwrap()).unwrap();
            buf
        };
        assert_eq!(render(1), render(4));
    }

    #[test]
    fn csv_and_json_carry_the_same_data() {
        let config = ScanConfig::new(3, 60, CheckId::ALL.to_vec());
        let reports = run_scan(&config, 2).unwrap();
        let mut json = Vec::new();
        write_reports(&mut json, OutputFormat::JsonLines, &reports).unwrap();
        let mut csv_buf = Vec::new();
        write_reports(&mut csv_buf, OutputFormat::Csv, &reports).unwrap();

        let from_json: Vec<serde_json::Value> = String::from_utf8(json)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        let mut rdr = csv::Reader::from_reader(csv_buf.as_slice());
        let from_csv: Vec<serde_json::Value> = rdr
            .records()
            .map(|r| serde_json::to_value(ReportLine::from_csv_record(&r.unwrap()).unwrap()).unwrap())
            .collect();
        assert_eq!(from_json.len(), reports.len());
        assert_eq!(from_json, from_csv);
        // numbers travel as strings
        assert!(from_json.iter().all(|v| v["p"].is_string() && v["lhs"].is_string()));
    }

    #[test]
    fn show_reproduces_tables() {
        let text = render_show(29).unwrap();
        assert!(text.contains("t = 12"));
        let rows: Vec<Vec<u64>> = text
            .lines()
            .filter(|l| l.starts_with("a ") || l.starts_with("abar "))
            .map(|l| l.split_whitespace().skip(1).map(|x| x.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows[0], vec![1, 2, 3, 4, 6, 8, 11]);
        assert_eq!(rows[1], vec![12, 5, 7, 10, 14, 9, 13]);
        assert!(text.contains("counts (X,Y,Z) = (7,7,7)"));
        assert!(render_show(12).is_err());
        assert!(render_show(7).is_err());
    }

    #[test]
    fn table_render() {
        let (text, ok) = render_table(5, 200).unwrap();
        assert!(ok);
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some("13")));
    }
}
