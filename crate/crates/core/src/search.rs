//! Balanced perfect matchings of `{1, ..., n}`: matchings whose crossing,
//! disjoint and nesting counts over all pairs of pairs coincide.
//!
//! Matchings are generated in the canonical order where the smallest
//! unmatched element is always paired next. That tree has `(n-1)!!`
//! leaves without duplicates, and the relation of each new pair to the
//! pairs already placed is fixed the moment it is chosen, so counts can be
//! maintained incrementally.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairing::{choose2, classify_chords, ClassCounts, Pairing};

/// Largest `n` that [`enumerate_all`] accepts by default.
pub const EXHAUSTIVE_BOUND: u64 = 16;

/// A perfect matching of `{1, ..., n}`, pairs sorted by smaller element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GeneralMatching {
    n: u64,
    pairs: Vec<(u64, u64)>,
}

fn check_size(n: u64) -> Result<()> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::BadSize(n));
    }
    Ok(())
}

impl GeneralMatching {
    pub fn new(n: u64, pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        check_size(n)?;
        let mut seen = vec![false; n as usize + 1];
        let mut out = Vec::with_capacity(n as usize / 2);
        for (a, b) in pairs {
            let (lo, hi) = (a.min(b), a.max(b));
            if lo == 0 || hi > n || lo == hi {
                return Err(Error::InvalidMatching(format!("pair ({a},{b}) out of range")));
            }
            for e in [lo, hi] {
                if std::mem::replace(&mut seen[e as usize], true) {
                    return Err(Error::InvalidMatching(format!("{e} appears twice")));
                }
            }
            out.push((lo, hi));
        }
        if out.len() as u64 != n / 2 {
            return Err(Error::InvalidMatching(format!(
                "{} pairs do not cover 1..={n}",
                out.len()
            )));
        }
        out.sort_unstable();
        Ok(Self { n, pairs: out })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn classify(&self) -> ClassCounts {
        classify_chords(&self.pairs)
    }

    /// Image under `i -> n + 1 - i`. Crossing, nesting and disjointness
    /// are all preserved.
    pub fn reversed(&self) -> Self {
        let n = self.n;
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(a, b)| (n + 1 - b, n + 1 - a)).collect();
        pairs.sort_unstable();
        Self { n, pairs }
    }

    /// Whether the differences `b - a` of the pairs are exactly the set of
    /// smaller elements, as they are for the prime pairings.
    pub fn has_difference_property(&self) -> bool {
        let mut diffs: Vec<u64> = self.pairs.iter().map(|&(a, b)| b - a).collect();
        diffs.sort_unstable();
        diffs.iter().copied().eq(self.pairs.iter().map(|p| p.0))
    }
}

/// A matching together with its counts, in the single-line form
/// `n=6 pairs=(1,5)(2,3)(4,6) counts=(1,1,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Certificate {
    pub matching: GeneralMatching,
    pub counts: ClassCounts,
}

impl Certificate {
    pub fn new(matching: GeneralMatching) -> Self {
        let counts = matching.classify();
        Self { matching, counts }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} pairs=", self.matching.n)?;
        for (a, b) in &self.matching.pairs {
            write!(f, "({a},{b})")?;
        }
        write!(f, " counts={}", self.counts)
    }
}

impl FromStr for Certificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::InvalidMatching(format!("{what} in `{s}`"));
        let mut fields = s.split_whitespace();
        let n: u64 = fields
            .next()
            .and_then(|f| f.strip_prefix("n="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("missing n"))?;
        let pairs_field = fields
            .next()
            .and_then(|f| f.strip_prefix("pairs="))
            .ok_or_else(|| bad("missing pairs"))?;
        let counts_field = fields
            .next()
            .and_then(|f| f.strip_prefix("counts="))
            .ok_or_else(|| bad("missing counts"))?;
        if fields.next().is_some() {
            return Err(bad("trailing fields"));
        }
        let tuples = |field: &str| -> Option<Vec<Vec<u64>>> {
            field
                .strip_prefix('(')?
                .strip_suffix(')')?
                .split(")(")
                .map(|t| t.split(',').map(|x| x.parse().ok()).collect())
                .collect()
        };
        let pairs = tuples(pairs_field)
            .filter(|ts| ts.iter().all(|t| t.len() == 2))
            .ok_or_else(|| bad("malformed pairs"))?;
        let counts = tuples(counts_field)
            .filter(|ts| ts.len() == 1 && ts[0].len() == 3)
            .ok_or_else(|| bad("malformed counts"))?;
        let cert = Certificate::new(GeneralMatching::new(n, pairs.iter().map(|t| (t[0], t[1])))?);
        let claimed = ClassCounts {
            crossing: counts[0][0],
            disjoint: counts[0][1],
            nesting: counts[0][2],
        };
        if claimed != cert.counts {
            return Err(bad("counts do not match the pairs"));
        }
        Ok(cert)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: u64,
    pub found: Vec<Certificate>,
    /// Whether every branch of the tree was either explored or pruned.
    pub exhausted: bool,
    /// Leaves (complete matchings) reached.
    pub total_matchings_examined: u64,
    pub nodes_expanded: u64,
    /// Exact when `exhausted`; otherwise a lower bound.
    pub balanced_count: u64,
}

impl SearchResult {
    fn empty(n: u64) -> Self {
        Self {
            n,
            found: Vec::new(),
            exhausted: true,
            total_matchings_examined: 0,
            nodes_expanded: 0,
            balanced_count: 0,
        }
    }

    fn absorb(&mut self, other: SearchResult) {
        self.found.extend(other.found);
        self.exhausted &= other.exhausted;
        self.total_matchings_examined += other.total_matchings_examined;
        self.nodes_expanded += other.nodes_expanded;
        self.balanced_count += other.balanced_count;
    }
}

/// A balanced matching of `{1..n}` can exist only when `3 | C(n/2, 2)`,
/// i.e. `n = 0, 2 (mod 6)`.
pub fn feasibility_precheck(n: u64) -> bool {
    n >= 2 && n % 2 == 0 && choose2(n / 2) % 3 == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Certificates to keep.
    pub limit: usize,
    /// Cap on expanded nodes; `None` for unbounded.
    pub budget: Option<u64>,
    /// Keep searching after `limit` certificates to obtain an exact count.
    pub count_all: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            limit: 1,
            budget: Some(50_000_000),
            count_all: false,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Visit every matching.
    Enumerate,
    /// Prune towards balanced matchings.
    Prune { target: u64 },
}

struct Walker<'a, V> {
    n: u64,
    k: u64,
    mode: Mode,
    matched: Vec<bool>,
    placed: Vec<(u64, u64)>,
    counts: ClassCounts,
    opts: SearchOptions,
    result: SearchResult,
    stopped: bool,
    visitor: &'a mut V,
}

impl<V: FnMut(&[(u64, u64)], ClassCounts)> Walker<'_, V> {
    fn relation_delta(&self, left: u64, right: u64) -> ClassCounts {
        let mut d = ClassCounts::default();
        for &(_, b_right) in &self.placed {
            if b_right < left {
                d.disjoint += 1;
            } else if b_right < right {
                d.crossing += 1;
            } else {
                d.nesting += 1;
            }
        }
        d
    }

    fn viable(&self, next_left: u64) -> bool {
        let Mode::Prune { target } = self.mode else {
            return true;
        };
        let c = self.counts;
        if c.crossing > target || c.disjoint > target || c.nesting > target {
            return false;
        }
        // chords closed before the next left endpoint are disjoint from
        // every pair still to be placed
        let closed = self.placed.iter().filter(|&&(_, r)| r < next_left).count() as u64;
        let future = self.k - self.placed.len() as u64;
        c.disjoint + future * closed <= target
    }

    fn walk(&mut self) {
        if self.stopped {
            return;
        }
        if let Some(budget) = self.opts.budget {
            if self.result.nodes_expanded >= budget {
                self.stopped = true;
                self.result.exhausted = false;
                return;
            }
        }
        self.result.nodes_expanded += 1;
        let Some(left) = (1..=self.n).find(|&i| !self.matched[i as usize]) else {
            self.leaf();
            return;
        };
        if !self.viable(left) {
            return;
        }
        self.matched[left as usize] = true;
        for right in left + 1..=self.n {
            if self.matched[right as usize] {
                continue;
            }
            let d = self.relation_delta(left, right);
            self.matched[right as usize] = true;
            self.placed.push((left, right));
            self.counts.crossing += d.crossing;
            self.counts.disjoint += d.disjoint;
            self.counts.nesting += d.nesting;
            self.walk();
            self.counts.crossing -= d.crossing;
            self.counts.disjoint -= d.disjoint;
            self.counts.nesting -= d.nesting;
            self.placed.pop();
            self.matched[right as usize] = false;
            if self.stopped {
                break;
            }
        }
        self.matched[left as usize] = false;
    }

    fn leaf(&mut self) {
        self.result.total_matchings_examined += 1;
        (self.visitor)(&self.placed, self.counts);
        if !self.counts.is_balanced() {
            return;
        }
        self.result.balanced_count += 1;
        if self.result.found.len() < self.opts.limit {
            let m = GeneralMatching {
                n: self.n,
                pairs: self.placed.clone(),
            };
            self.result.found.push(Certificate { matching: m, counts: self.counts });
        }
        if self.mode != Mode::Enumerate
            && !self.opts.count_all
            && self.result.found.len() >= self.opts.limit
        {
            self.stopped = true;
            self.result.exhausted = false;
        }
    }
}

fn run<V: FnMut(&[(u64, u64)], ClassCounts)>(
    n: u64,
    mode: Mode,
    opts: SearchOptions,
    first_partner: Option<u64>,
    visitor: &mut V,
) -> SearchResult {
    let mut w = Walker {
        n,
        k: n / 2,
        mode,
        matched: vec![false; n as usize + 1],
        placed: Vec::with_capacity(n as usize / 2),
        counts: ClassCounts::default(),
        opts,
        result: SearchResult::empty(n),
        stopped: false,
        visitor,
    };
    match first_partner {
        None => w.walk(),
        Some(j) => {
            w.matched[1] = true;
            w.matched[j as usize] = true;
            w.placed.push((1, j));
            w.result.nodes_expanded += 1;
            w.walk();
        }
    }
    w.result
}

/// Visits every perfect matching of `{1..n}` exactly once, with its counts,
/// and returns the exact number of balanced ones. Up to `limit`
/// certificates are kept.
pub fn enumerate_all<V>(n: u64, bound: u64, limit: usize, mut visitor: V) -> Result<SearchResult>
where
    V: FnMut(&[(u64, u64)], ClassCounts),
{
    check_size(n)?;
    if n > bound {
        return Err(Error::ExhaustiveBound { n, bound });
    }
    let opts = SearchOptions { limit, budget: None, count_all: true };
    Ok(run(n, Mode::Enumerate, opts, None, &mut visitor))
}

fn prune_mode(n: u64) -> Option<Mode> {
    feasibility_precheck(n).then(|| Mode::Prune { target: choose2(n / 2) / 3 })
}

/// Backtracking search for balanced matchings with pruning. Sizes failing
/// [`feasibility_precheck`] return immediately as exhausted with no result.
pub fn search(n: u64, opts: &SearchOptions) -> Result<SearchResult> {
    check_size(n)?;
    let Some(mode) = prune_mode(n) else {
        return Ok(SearchResult::empty(n));
    };
    Ok(run(n, mode, *opts, None, &mut |_, _| {}))
}

/// [`search`] split at the partner of `1` into `n - 1` independent subtrees
/// explored concurrently. Budget and limit apply per subtree; results are
/// merged in subtree order and certificates truncated to `limit`.
pub fn search_parallel(n: u64, opts: &SearchOptions) -> Result<SearchResult> {
    check_size(n)?;
    let Some(mode) = prune_mode(n) else {
        return Ok(SearchResult::empty(n));
    };
    let parts: Vec<SearchResult> = (2..=n)
        .into_par_iter()
        .map(|j| run(n, mode, *opts, Some(j), &mut |_, _| {}))
        .collect();
    let mut merged = SearchResult::empty(n);
    for part in parts {
        merged.absorb(part);
    }
    merged.found.truncate(opts.limit);
    Ok(merged)
}

/// The pairing for the prime `p = 1 (mod 4)` as a matching of
/// `{1, ..., (p-1)/2}`.
pub fn from_prime(p: u64) -> Result<GeneralMatching> {
    let pairing = Pairing::for_prime(p)?;
    GeneralMatching::new(pairing.context().half(), pairing.pairs())
}
