//! Solution counts of `x^4 - y^4 = m (mod p)` for `p = 1 (mod 4)`, both by
//! enumeration and by the closed forms in terms of `alpha4` and `beta4`,
//! and the refinement `N'(m)` over pairs of distinct quartic residues.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::{mul_mod, pow_mod, residue, PrimeContext, QuarticSignature};

/// Which branch of the closed form applies to `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CharacterCase {
    /// `p = 1 (mod 8)`: `chi(m) = i^e`.
    Quartic(u8),
    /// `p = 5 (mod 8)`: only the Legendre symbol matters.
    Quadratic(i8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolutionCount {
    pub m: u64,
    pub case: CharacterCase,
    pub brute: u64,
    pub formula: i64,
}

/// How many `x` in `0..p` have each fourth power.
#[derive(Debug, Clone)]
pub struct FourthPowers {
    p: u64,
    hist: Vec<u64>,
}

impl FourthPowers {
    pub fn new(p: u64) -> Self {
        let mut hist = vec![0; p as usize];
        for x in 0..p {
            hist[pow_mod(x, 4, p) as usize] += 1;
        }
        Self { p, hist }
    }

    /// `N(m)` as `sum_u h(u) h(u - m)`.
    pub fn count(&self, m: u64) -> u64 {
        let p = self.p as usize;
        let m = (m % self.p) as usize;
        (0..p)
            .map(|u| self.hist[u] * self.hist[(u + p - m) % p])
            .sum()
    }
}

fn check(ctx: &PrimeContext, m: i64) -> Result<u64> {
    ctx.require_one_mod_four()?;
    let r = residue(m, ctx.p());
    if r == 0 {
        return Err(Error::ZeroResidue { value: m, modulus: ctx.p() });
    }
    Ok(r)
}

/// `N(m)` by histogramming fourth powers.
pub fn brute_n(ctx: &PrimeContext, m: i64) -> Result<u64> {
    let r = check(ctx, m)?;
    Ok(FourthPowers::new(ctx.p()).count(r))
}

/// `N(m)` by the double loop over all `(x, y)`.
pub fn brute_n_loop(ctx: &PrimeContext, m: i64) -> Result<u64> {
    let r = check(ctx, m)?;
    let p = ctx.p();
    let fourth: Vec<u64> = (0..p).map(|x| pow_mod(x, 4, p)).collect();
    let mut count = 0;
    for &x4 in &fourth {
        for &y4 in &fourth {
            if (x4 + p - y4) % p == r {
                count += 1;
            }
        }
    }
    Ok(count)
}

pub fn character_case(ctx: &PrimeContext, sig: &QuarticSignature, m: i64) -> Result<CharacterCase> {
    check(ctx, m)?;
    Ok(if ctx.p() % 8 == 1 {
        CharacterCase::Quartic(sig.chi_exponent(m)?)
    } else {
        CharacterCase::Quadratic(ctx.legendre(m)?)
    })
}

/// Closed form for `N(m)`.
pub fn formula_n(ctx: &PrimeContext, sig: &QuarticSignature, m: i64) -> Result<i64> {
    let p = ctx.p() as i64;
    let (a, b) = (sig.alpha4(), sig.beta4());
    let value = match character_case(ctx, sig, m)? {
        CharacterCase::Quartic(0) => p - 3 + 6 * a,
        CharacterCase::Quartic(1) => p - 3 - 2 * a + 4 * b,
        CharacterCase::Quartic(2) => p - 3 - 2 * a,
        CharacterCase::Quartic(_) => p - 3 - 2 * a - 4 * b,
        CharacterCase::Quadratic(1) => p - 3 + 2 * a,
        CharacterCase::Quadratic(_) => p - 3 - 2 * a,
    };
    Ok(value)
}

/// Solutions of `x^4 - y^4 = m` with `xy = 0`: 8 when `chi(m) = 1` and
/// `p = 1 (mod 8)`, 4 when `m` is a square and `p = 5 (mod 8)`, else 0.
pub fn axis_correction(ctx: &PrimeContext, sig: &QuarticSignature, m: i64) -> Result<u64> {
    Ok(match character_case(ctx, sig, m)? {
        CharacterCase::Quartic(0) => 8,
        CharacterCase::Quadratic(1) => 4,
        _ => 0,
    })
}

/// The quartic residues `g^{4r}`, `r = 1..=(p-1)/4`.
pub fn quartic_residues(p: u64, g: u64) -> Vec<u64> {
    let g4 = pow_mod(g, 4, p);
    let mut x = 1;
    (0..(p - 1) / 4)
        .map(|_| {
            x = mul_mod(x, g4, p);
            x
        })
        .collect()
}

/// `N'(m)` by enumerating ordered pairs of quartic residues.
pub fn brute_nprime(ctx: &PrimeContext, g: u64, m: i64) -> Result<u64> {
    let r = check(ctx, m)?;
    let p = ctx.p();
    let q = quartic_residues(p, g);
    let mut count = 0;
    for &u in &q {
        for &v in &q {
            if (u + p - v) % p == r {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Closed form for `N'(m)`; a value not divisible by 16 is an error.
pub fn formula_nprime(ctx: &PrimeContext, sig: &QuarticSignature, m: i64) -> Result<u64> {
    let numerator = formula_n(ctx, sig, m)? - axis_correction(ctx, sig, m)? as i64;
    if numerator < 0 || numerator % 16 != 0 {
        return Err(Error::NonIntegral { numerator });
    }
    Ok((numerator / 16) as u64)
}

pub fn solution_count(
    ctx: &PrimeContext,
    sig: &QuarticSignature,
    powers: &FourthPowers,
    m: i64,
) -> Result<SolutionCount> {
    let r = check(ctx, m)?;
    Ok(SolutionCount {
        m: r,
        case: character_case(ctx, sig, m)?,
        brute: powers.count(r),
        formula: formula_n(ctx, sig, m)?,
    })
}

/// `N'(m)` for every `m` in `1..p` at once, indexed by `m`.
pub fn nprime_table(p: u64, g: u64) -> Vec<u64> {
    let q = quartic_residues(p, g);
    let mut table = vec![0; p as usize];
    for &u in &q {
        for &v in &q {
            table[((u + p - v) % p) as usize] += 1;
        }
    }
    table[0] = 0;
    table
}

/// `sum_{n=1}^{p-1} n N'(g^n)` reduced mod `p - 1`, the exponent of `g`
/// in the product of all differences of distinct quartic residues.
pub fn nprime_exponent(p: u64, g: u64) -> u64 {
    let table = nprime_table(p, g);
    let mut acc = 0u64;
    let mut x = 1;
    for n in 1..p {
        x = mul_mod(x, g, p);
        acc = (acc + mul_mod(n % (p - 1), table[x as usize], p - 1)) % (p - 1);
    }
    acc
}

/// One admissible `(alpha4 mod 16, beta4 mod beta_modulus)` row entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TablePattern {
    pub alpha_mod16: u64,
    pub beta_residue: u64,
    pub beta_modulus: u64,
}

/// The admissible patterns for `p mod 32`, as tabulated: two alternatives
/// with `beta4 mod 8` when `p = 1 (mod 8)`, one with `beta4 mod 4` when
/// `p = 5 (mod 8)`.
pub fn table_patterns(p_mod32: u64) -> &'static [TablePattern] {
    const fn pat(alpha_mod16: u64, beta_residue: u64, beta_modulus: u64) -> TablePattern {
        TablePattern { alpha_mod16, beta_residue, beta_modulus }
    }
    const R1: [TablePattern; 2] = [pat(7, 4, 8), pat(15, 0, 8)];
    const R9: [TablePattern; 2] = [pat(3, 0, 8), pat(11, 4, 8)];
    const R17: [TablePattern; 2] = [pat(7, 0, 8), pat(15, 4, 8)];
    const R25: [TablePattern; 2] = [pat(3, 4, 8), pat(11, 0, 8)];
    const R5: [TablePattern; 1] = [pat(1, 2, 4)];
    const R13: [TablePattern; 1] = [pat(13, 2, 4)];
    const R21: [TablePattern; 1] = [pat(9, 2, 4)];
    const R29: [TablePattern; 1] = [pat(5, 2, 4)];
    match p_mod32 {
        1 => &R1,
        9 => &R9,
        17 => &R17,
        25 => &R25,
        5 => &R5,
        13 => &R13,
        21 => &R21,
        29 => &R29,
        _ => &[],
    }
}

/// The pattern of the table row for `p` that `sig` matches, if any.
pub fn match_table(sig: &QuarticSignature) -> Option<TablePattern> {
    let p = sig.p();
    table_patterns(p % 32).iter().copied().find(|pat| {
        sig.alpha4().rem_euclid(16) as u64 == pat.alpha_mod16
            && sig.beta4().rem_euclid(pat.beta_modulus as i64) as u64 == pat.beta_residue
    })
}
