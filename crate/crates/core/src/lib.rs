//! Pairings of the half-system `{1, ..., (p-1)/2}` for primes
//! `p = 1 (mod 4)` given by `x <-> half_reduce(t x)` with
//! `t = ((p-1)/2)! mod p`, their crossing/disjoint/nesting statistics, and
//! brute-force verification of the congruences and counting identities
//! around them.
//!
//! * [`modular`]: primes, primitive roots, characters, `alpha4`/`beta4`.
//! * [`pairing`]: the pairing, chord classification, inversion counts.
//! * [`identities`]: one [`CheckReport`] per identity.
//! * [`quartic`]: solution counts of `x^4 - y^4 = m`.
//! * [`search`]: balanced matchings of `{1, ..., n}` for general `n`.
//! * [`report`]: range scans and text output.

pub mod error;
mod fenwick;
pub mod identities;
pub mod modular;
pub mod pairing;
pub mod quartic;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use identities::{CheckId, CheckReport};
pub use modular::{PrimeContext, QuarticSignature};
pub use pairing::{ClassCounts, Pairing};
pub use search::{Certificate, GeneralMatching, SearchOptions, SearchResult};
