//! The pairing `x <-> half_reduce(t x)` of the half-system `1..=(p-1)/2`
//! for primes `p = 1 (mod 4)`, the crossing/disjoint/nesting statistics of
//! its chords, and the inversion and Gauss counts that tie it to quadratic
//! residues.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::modular::{gcd, half_of, mul_mod, residue, PrimeContext};

/// Interleaving counts over all pairs of chords `(a, a')`, `(b, b')` with
/// `a < b`:
///
/// * crossing (`X`): `a < b < a' < b'`
/// * disjoint (`Y`): `a < a' < b < b'`
/// * nesting  (`Z`): `a < b < b' < a'`
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ClassCounts {
    pub crossing: u64,
    pub disjoint: u64,
    pub nesting: u64,
}

impl ClassCounts {
    pub fn total(&self) -> u64 {
        self.crossing + self.disjoint + self.nesting
    }

    pub fn is_balanced(&self) -> bool {
        self.crossing == self.disjoint && self.disjoint == self.nesting
    }
}

impl fmt::Display for ClassCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.crossing, self.disjoint, self.nesting)
    }
}

/// Number of unordered pairs from `k` items.
pub fn choose2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// Classifies chords given as `(left, right)` with `left < right` and all
/// endpoints distinct, in `O(k log k)`.
///
/// Chords are swept by left endpoint; a Fenwick tree over right endpoints
/// of the chords already seen answers, for each new chord `(b, b')`, how
/// many earlier chords closed before `b` (disjoint) or after `b'`
/// (nesting). The remaining earlier chords cross it.
pub fn classify_chords(chords: &[(u64, u64)]) -> ClassCounts {
    let k = chords.len() as u64;
    if k < 2 {
        return ClassCounts::default();
    }
    let mut sorted = chords.to_vec();
    sorted.sort_unstable();
    let max_end = sorted.iter().map(|c| c.1).max().unwrap_or(0) as usize;
    let mut ends = Fenwick::new(max_end);
    let mut counts = ClassCounts::default();
    for (seen, &(left, right)) in sorted.iter().enumerate() {
        let seen = seen as u64;
        let closed_before = ends.prefix(left as usize);
        let open_past_right = seen - ends.prefix(right as usize);
        counts.nesting += open_past_right;
        counts.crossing += seen - closed_before - open_past_right;
        ends.add(right as usize, 1);
    }
    counts.disjoint = choose2(k) - counts.crossing - counts.nesting;
    counts
}

/// Quadratic reference classification.
pub fn classify_chords_naive(chords: &[(u64, u64)]) -> ClassCounts {
    let mut counts = ClassCounts::default();
    for (i, &c) in chords.iter().enumerate() {
        for &d in &chords[i + 1..] {
            let ((_, a2), (b, b2)) = if c.0 < d.0 { (c, d) } else { (d, c) };
            if a2 < b {
                counts.disjoint += 1;
            } else if b2 < a2 {
                counts.nesting += 1;
            } else {
                counts.crossing += 1;
            }
        }
    }
    counts
}

/// Strict inversions `#{i < j : seq[i] > seq[j]}` by merge sort.
pub fn count_inversions(seq: &[u64]) -> u64 {
    let mut buf = seq.to_vec();
    let mut scratch = vec![0; seq.len()];
    merge_count(&mut buf, &mut scratch)
}

fn merge_count(v: &mut [u64], scratch: &mut [u64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (lo, hi) = v.split_at_mut(mid);
        let (slo, shi) = scratch.split_at_mut(mid);
        merge_count(lo, slo) + merge_count(hi, shi)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        // ties are not inversions: take from the left first
        if v[i] <= v[j] {
            scratch[k] = v[i];
            i += 1;
        } else {
            scratch[k] = v[j];
            inv += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&scratch[..n]);
    inv
}

pub fn count_inversions_naive(seq: &[u64]) -> u64 {
    let mut inv = 0;
    for (i, &x) in seq.iter().enumerate() {
        inv += seq[i + 1..].iter().filter(|&&y| x > y).count() as u64;
    }
    inv
}

/// The sequence `i -> half_reduce(m i^2)` for `i = 1..=(p-1)/2`.
pub fn half_square_sequence(ctx: &PrimeContext, m: i64) -> Result<Vec<u64>> {
    let p = ctx.p();
    let mr = residue(m, p);
    if mr == 0 {
        return Err(Error::ZeroResidue { value: m, modulus: p });
    }
    Ok((1..=ctx.half())
        .map(|i| half_of(mul_mod(mr, i * i % p, p), p))
        .collect())
}

/// Inversions of `i -> half_reduce(m i^2)`; partner ties are not counted.
pub fn s_prime(ctx: &PrimeContext, m: i64) -> Result<u64> {
    Ok(count_inversions(&half_square_sequence(ctx, m)?))
}

fn check_gamma_args(x: i64, n: u64) -> Result<u64> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::BadModulus(n));
    }
    let xr = residue(x, n);
    if gcd(xr, n) != 1 {
        return Err(Error::NotCoprime { value: x, modulus: n });
    }
    Ok(xr)
}

/// The sequence `i -> half_reduce(x i)` modulo the odd `n`.
pub fn half_multiple_sequence(x: i64, n: u64) -> Result<Vec<u64>> {
    let xr = check_gamma_args(x, n)?;
    Ok((1..=(n - 1) / 2).map(|i| half_of(mul_mod(xr, i, n), n)).collect())
}

/// Inversions of `i -> half_reduce(x i)` for odd `n >= 5` and `gcd(x, n) = 1`.
///
/// For composite `n` this is exposed as an experimental extension; the
/// prime case is the contract.
pub fn gamma(x: i64, n: u64) -> Result<u64> {
    Ok(count_inversions(&half_multiple_sequence(x, n)?))
}

/// Gauss-lemma count `#{1 <= i <= (n-1)/2 : (x i mod n) > n/2}`.
pub fn gauss_count(x: i64, n: u64) -> Result<u64> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::BadModulus(n));
    }
    let xr = residue(x, n);
    if xr == 0 {
        return Err(Error::ZeroResidue { value: x, modulus: n });
    }
    Ok((1..=(n - 1) / 2)
        .filter(|&i| 2 * mul_mod(xr, i, n) > n)
        .count() as u64)
}

/// The pairing of the half-system induced by `x -> half_reduce(t x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    ctx: PrimeContext,
    firsts: Vec<u64>,
    partners: Vec<u64>,
}

impl Pairing {
    pub fn new(ctx: &PrimeContext) -> Result<Self> {
        ctx.require_one_mod_four()?;
        let p = ctx.p();
        let (mut firsts, mut partners) = (Vec::new(), Vec::new());
        for x in 1..=ctx.half() {
            let image = half_of(mul_mod(ctx.t(), x, p), p);
            if x < image {
                firsts.push(x);
                partners.push(image);
            }
        }
        Ok(Self {
            ctx: ctx.clone(),
            firsts,
            partners,
        })
    }

    pub fn for_prime(p: u64) -> Result<Self> {
        Self::new(&PrimeContext::one_mod_four(p)?)
    }

    pub fn context(&self) -> &PrimeContext {
        &self.ctx
    }

    /// The smaller members, ascending.
    pub fn firsts(&self) -> &[u64] {
        &self.firsts
    }

    /// Partners aligned with [`Pairing::firsts`].
    pub fn partners(&self) -> &[u64] {
        &self.partners
    }

    pub fn len(&self) -> usize {
        self.firsts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.firsts.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.firsts.iter().copied().zip(self.partners.iter().copied())
    }

    pub fn is_first(&self, x: u64) -> bool {
        self.firsts.binary_search(&x).is_ok()
    }

    /// Partner of `a` when `a` is a smaller member.
    pub fn partner(&self, a: u64) -> Option<u64> {
        self.firsts
            .binary_search(&a)
            .ok()
            .map(|i| self.partners[i])
    }

    pub fn classify(&self) -> ClassCounts {
        classify_chords(&self.pairs().collect::<Vec<_>>())
    }

    pub fn classify_naive(&self) -> ClassCounts {
        classify_chords_naive(&self.pairs().collect::<Vec<_>>())
    }

    /// `#{a : a + a' > p/2}`.
    pub fn v2_count(&self) -> u64 {
        let p = self.ctx.p();
        self.pairs().filter(|&(a, b)| 2 * (a + b) > p).count() as u64
    }

    /// Verifies that `a -> a' - a` permutes the smaller members, that the
    /// partner of `a' - a` is `half_reduce(a' + a)`, and that these sums
    /// are exactly the larger members.
    pub fn partner_difference_check(&self) -> std::result::Result<(), DifferenceViolation> {
        let p = self.ctx.p();
        let k = self.len();
        let mut diff_seen = vec![false; self.ctx.half() as usize + 1];
        let mut sum_seen = vec![false; self.ctx.half() as usize + 1];
        for (a, a_bar) in self.pairs() {
            let d = a_bar - a;
            let Some(d_partner) = self.partner(d) else {
                return Err(DifferenceViolation::NotSmaller { a, difference: d });
            };
            let s = half_of((a + a_bar) % p, p);
            if d_partner != s {
                return Err(DifferenceViolation::WrongPartner {
                    a,
                    difference: d,
                    partner: d_partner,
                    half_sum: s,
                });
            }
            if std::mem::replace(&mut diff_seen[d as usize], true) {
                return Err(DifferenceViolation::RepeatedDifference { a, difference: d });
            }
            if self.is_first(s) {
                return Err(DifferenceViolation::SumIsSmaller { a, half_sum: s });
            }
            sum_seen[s as usize] = true;
        }
        let distinct_sums = sum_seen.iter().filter(|&&b| b).count();
        if distinct_sums != k {
            return Err(DifferenceViolation::SumsNotComplement { distinct: distinct_sums as u64 });
        }
        Ok(())
    }
}

/// First counterexample found by [`Pairing::partner_difference_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DifferenceViolation {
    NotSmaller { a: u64, difference: u64 },
    WrongPartner { a: u64, difference: u64, partner: u64, half_sum: u64 },
    RepeatedDifference { a: u64, difference: u64 },
    SumIsSmaller { a: u64, half_sum: u64 },
    SumsNotComplement { distinct: u64 },
}

impl fmt::Display for DifferenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotSmaller { a, difference } => {
                write!(f, "a={a}: difference {difference} is not a smaller member")
            }
            Self::WrongPartner { a, difference, partner, half_sum } => write!(
                f,
                "a={a}: partner of {difference} is {partner}, expected {half_sum}"
            ),
            Self::RepeatedDifference { a, difference } => {
                write!(f, "a={a}: difference {difference} repeats")
            }
            Self::SumIsSmaller { a, half_sum } => {
                write!(f, "a={a}: half-sum {half_sum} is a smaller member")
            }
            Self::SumsNotComplement { distinct } => {
                write!(f, "only {distinct} distinct half-sums")
            }
        }
    }
}
