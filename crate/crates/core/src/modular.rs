//! Exact arithmetic modulo odd primes (and odd moduli where the
//! half-system still makes sense), together with the half-reduction map,
//! primitive roots, the Legendre symbol and the quartic character.
//!
//! Every product goes through a 128-bit intermediate, so results are exact
//! for any modulus below [`MODULUS_BOUND`] and primality testing is exact
//! for all of `u64`.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Largest modulus (exclusive) accepted by [`PrimeContext`].
pub const MODULUS_BOUND: u64 = 1 << 31;

/// Below this bound discrete logarithms are found by a direct scan.
const DIRECT_LOG_BOUND: u64 = 100_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Least non-negative residue of `x` modulo `m`.
#[inline]
pub fn residue(x: i64, m: u64) -> u64 {
    (x as i128).rem_euclid(m as i128) as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller-Rabin; the first twelve primes as witnesses are
/// sufficient for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for w in WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_odd_modulus(n: u64) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::BadModulus(n));
    }
    Ok(())
}

/// The bar map: the representative of `±x` in `1..=(n-1)/2`.
///
/// `n` must be odd and at least 3, and `x` must be nonzero modulo `n`.
pub fn half_reduce(x: i64, n: u64) -> Result<u64> {
    check_odd_modulus(n)?;
    let r = residue(x, n);
    if r == 0 {
        return Err(Error::ZeroResidue { value: x, modulus: n });
    }
    Ok(half_of(r, n))
}

/// Unchecked half-reduction of a residue already in `1..n`.
#[inline]
pub(crate) fn half_of(r: u64, n: u64) -> u64 {
    if 2 * r > n {
        n - r
    } else {
        r
    }
}

/// `((p-1)/2)! mod p` by a running product.
pub fn half_factorial(p: u64) -> u64 {
    (1..=(p - 1) / 2).fold(1, |acc, x| mul_mod(acc, x, p))
}

/// Primitive roots of the prime `p` in increasing order.
pub fn primitive_roots(p: u64) -> impl Iterator<Item = u64> {
    let factors = prime_factors(p - 1);
    (1..p).filter(move |&g| {
        if p == 2 {
            return true;
        }
        g >= 2 && factors.iter().all(|q| pow_mod(g, (p - 1) / q, p) != 1)
    })
}

/// The smallest primitive root of the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    primitive_roots(p)
        .next()
        .expect("every prime has a primitive root")
}

/// Legendre symbol by Euler's criterion. `p` is assumed prime.
pub fn legendre(m: i64, p: u64) -> Result<i8> {
    check_odd_modulus(p)?;
    let r = residue(m, p);
    if r == 0 {
        return Err(Error::ZeroResidue { value: m, modulus: p });
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Index of `m` with respect to the primitive root `g`, in `0..p-1`.
pub fn discrete_log(m: u64, g: u64, p: u64) -> Option<u64> {
    let target = m % p;
    if target == 0 {
        return None;
    }
    if p < DIRECT_LOG_BOUND {
        let mut x = 1;
        for e in 0..p - 1 {
            if x == target {
                return Some(e);
            }
            x = mul_mod(x, g, p);
        }
        return None;
    }
    // baby-step giant-step
    let order = p - 1;
    let step = order.isqrt() + 1;
    let mut baby = HashMap::with_capacity(step as usize);
    let mut x = 1;
    for j in 0..step {
        baby.entry(x).or_insert(j);
        x = mul_mod(x, g, p);
    }
    let giant = pow_mod(pow_mod(g, step, p), p - 2, p);
    let mut y = target;
    for i in 0..=step {
        if let Some(&j) = baby.get(&y) {
            return Some((i * step + j) % order);
        }
        y = mul_mod(y, giant, p);
    }
    None
}

/// Writes the prime `p = 1 (mod 4)` as `a^2 + b^2` with `a` odd and both
/// positive, by Cornacchia's algorithm on a square root of -1.
pub fn two_squares(p: u64, sqrt_minus_one: u64) -> Result<(u64, u64)> {
    debug_assert_eq!(mul_mod(sqrt_minus_one, sqrt_minus_one, p), p - 1);
    let bound = p.isqrt();
    let (mut r0, mut r1) = (p, sqrt_minus_one.min(p - sqrt_minus_one));
    while r1 > bound {
        (r0, r1) = (r1, r0 % r1);
    }
    let a = r1;
    let rest = p - a * a;
    let b = rest.isqrt();
    if b * b != rest {
        return Err(Error::NoTwoSquares(p));
    }
    Ok(if a % 2 == 1 { (a, b) } else { (b, a) })
}

/// A validated odd prime with the constants derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeContext {
    p: u64,
    half: u64,
    t: u64,
    g: u64,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_BOUND {
            return Err(Error::ModulusTooLarge(p));
        }
        check_odd_modulus(p)?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            half: (p - 1) / 2,
            t: half_factorial(p),
            g: primitive_root(p),
        })
    }

    /// Like [`PrimeContext::new`] but additionally requires `p = 1 (mod 4)`.
    pub fn one_mod_four(p: u64) -> Result<Self> {
        let ctx = Self::new(p)?;
        ctx.require_one_mod_four()?;
        Ok(ctx)
    }

    pub(crate) fn require_one_mod_four(&self) -> Result<()> {
        if self.p % 4 != 1 {
            return Err(Error::WrongResidueClass { p: self.p, expected: 1 });
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `(p-1)/2`, the size of the half-system.
    pub fn half(&self) -> u64 {
        self.half
    }

    /// `p mod 4`, either 1 or 3.
    pub fn residue_class_mod4(&self) -> u64 {
        self.p % 4
    }

    /// The half-factorial `((p-1)/2)! mod p`.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// The smallest primitive root.
    pub fn g(&self) -> u64 {
        self.g
    }

    /// `(p-1)(p-5)/96`, defined for `p = 1 (mod 4)` only.
    pub fn l_p(&self) -> Option<u64> {
        if self.p % 4 != 1 {
            return None;
        }
        let num = (self.p - 1) * (self.p - 5);
        debug_assert_eq!(num % 96, 0);
        Some(num / 96)
    }

    /// `(p^2-1)/8`.
    pub fn m_p(&self) -> u64 {
        (self.p * self.p - 1) / 8
    }

    pub fn legendre(&self, m: i64) -> Result<i8> {
        legendre(m, self.p)
    }

    pub fn half_reduce(&self, x: i64) -> Result<u64> {
        half_reduce(x, self.p)
    }

    #[cfg(test)]
    pub(crate) fn with_t_for_testing(mut self, t: u64) -> Self {
        self.t = t;
        self
    }
}

/// The normalized decomposition `p = alpha4^2 + beta4^2` attached to a
/// primitive root `g`, plus the quartic character with `chi(g) = i`.
///
/// Character values are exponents `e` in `0..4` standing for `i^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticSignature {
    p: u64,
    g: u64,
    alpha4: i64,
    beta4: i64,
}

impl QuarticSignature {
    /// Signature for the context's smallest primitive root.
    pub fn new(ctx: &PrimeContext) -> Result<Self> {
        Self::with_root(ctx, ctx.g())
    }

    /// Signature for an explicit primitive root `g`.
    pub fn with_root(ctx: &PrimeContext, g: u64) -> Result<Self> {
        ctx.require_one_mod_four()?;
        let p = ctx.p();
        let i_unit = pow_mod(g, (p - 1) / 4, p);
        let (a, b) = two_squares(p, i_unit)?;
        let two = ctx.legendre(2)? as i64;
        // alpha4 = -(2|p) (mod 4)
        let alpha4 = if (a as i64 + two).rem_euclid(4) == 0 {
            a as i64
        } else {
            -(a as i64)
        };
        let target = mul_mod(residue(alpha4, p), i_unit, p);
        let beta4 = if residue(b as i64, p) == target {
            b as i64
        } else if residue(-(b as i64), p) == target {
            -(b as i64)
        } else {
            return Err(Error::NoTwoSquares(p));
        };
        Ok(Self { p, g, alpha4, beta4 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn alpha4(&self) -> i64 {
        self.alpha4
    }

    pub fn beta4(&self) -> i64 {
        self.beta4
    }

    /// `e` with `chi(m) = i^e`.
    pub fn chi_exponent(&self, m: i64) -> Result<u8> {
        let r = residue(m, self.p);
        if r == 0 {
            return Err(Error::ZeroResidue { value: m, modulus: self.p });
        }
        let index = discrete_log(r, self.g, self.p).expect("g is a primitive root");
        Ok((index % 4) as u8)
    }
}
