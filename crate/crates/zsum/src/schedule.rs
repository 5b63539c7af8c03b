//! Exact input-length bookkeeping for the signed and unsigned searches.
//!
//! The halving chain solves coefficient bound `d_0 = (p-1)/2` at level 0 and
//! halves the bound per level until it reaches 1. Required lengths follow the
//! recursion
//!
//! ```text
//! h_0(n) = n + 1
//! h_i(n) = h_{i-1}(n) * h_{i-1}(ceil(d_{i-1}/2) * n)
//! ```
//!
//! evaluated as exact integers, never as asymptotic bounds. The unsigned
//! search then stacks `ceil(log2 p)` collision-doubling levels on top of the
//! signed one.

use crate::error::{Error, Result};
use crate::vec::PrimeModulus;

/// Smallest length at which every sequence over Z_p^n is forced to contain a
/// zero-sum subsequence: `1 + n(p-1)`.
pub fn olson_bound(p: u16, n: usize) -> u128 {
    1 + n as u128 * (p as u128 - 1)
}

/// Number of collision-doubling levels for odd `p`.
pub fn doubling_levels(p: u16) -> u32 {
    debug_assert!(p >= 2);
    32 - (p as u32 - 1).leading_zeros()
}

/// The per-level coefficient bounds and pair lengths for one prime.
#[derive(Clone, Debug)]
pub struct LengthSchedule {
    p: PrimeModulus,
    /// `d_0, d_1, ..., d_k` with `d_k = 1`; empty for p = 2.
    bounds: Vec<u64>,
}

impl LengthSchedule {
    pub fn new(p: PrimeModulus) -> Self {
        let mut bounds = Vec::new();
        if p.get() >= 3 {
            let mut d = (p.get() as u64 - 1) / 2;
            bounds.push(d);
            while d > 1 {
                d /= 2;
                bounds.push(d);
            }
        }
        LengthSchedule { p, bounds }
    }

    #[inline]
    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    /// The level count `k`; level `k` is where the bound reaches 1.
    pub fn levels(&self) -> usize {
        self.bounds.len().saturating_sub(1)
    }

    /// Coefficient bound `d_i` handled by level `i`.
    pub fn bound(&self, level: usize) -> u64 {
        self.bounds[level]
    }

    /// Exact pair length `h_i(n)`.
    pub fn pair_length(&self, level: usize, n: u128) -> Result<u128> {
        if self.p.get() == 2 {
            return n.checked_add(1).ok_or(Error::LengthOverflow(n));
        }
        if level == 0 {
            return n.checked_add(1).ok_or(Error::LengthOverflow(n));
        }
        let d_prev = self.bounds[level - 1] as u128;
        let stretched = n
            .checked_mul(d_prev.div_ceil(2))
            .ok_or(Error::LengthOverflow(n))?;
        let a = self.pair_length(level - 1, n)?;
        let b = self.pair_length(level - 1, stretched)?;
        a.checked_mul(b).ok_or(Error::LengthOverflow(a))
    }

    /// Input length consumed by the full signed search: `h_k(n)`.
    pub fn signed_length(&self, n: u128) -> Result<u128> {
        self.pair_length(self.levels(), n)
    }

    /// Input length consumed by the unsigned search:
    /// `h_k(n)^(ceil(log2 p))` for odd p, `n + 1` for p = 2.
    pub fn unsigned_length(&self, n: u128) -> Result<u128> {
        if self.p.get() == 2 {
            return n.checked_add(1).ok_or(Error::LengthOverflow(n));
        }
        let s = self.signed_length(n)?;
        checked_pow(s, doubling_levels(self.p.get()))
    }

    /// The closed-form ceiling the recursion is known to stay under:
    /// `(prod_{j<i} ceil(d_j/2))^(2^(i-1)) * (n+1)^(2^i)`, with level 0
    /// equal to `n + 1` on both sides.
    pub fn pair_length_ceiling(&self, level: usize, n: u128) -> Result<u128> {
        let np1 = n.checked_add(1).ok_or(Error::LengthOverflow(n))?;
        if level == 0 || self.p.get() == 2 {
            return Ok(np1);
        }
        let mut prod: u128 = 1;
        for j in 0..level {
            let half = (self.bounds[j] as u128).div_ceil(2);
            prod = prod.checked_mul(half).ok_or(Error::LengthOverflow(prod))?;
        }
        let a = checked_pow(prod, 1 << (level - 1))?;
        let b = checked_pow(np1, 1 << level)?;
        a.checked_mul(b).ok_or(Error::LengthOverflow(a))
    }
}

fn checked_pow(base: u128, exp: u32) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .ok_or(Error::LengthOverflow(base))?;
    }
    Ok(acc)
}

/// `h_k(n)`: vectors consumed by `find_signed_zero`.
pub fn required_signed_length(p: PrimeModulus, n: usize) -> Result<u128> {
    LengthSchedule::new(p).signed_length(n as u128)
}

/// Vectors consumed by `find_zero_sum`.
pub fn required_length(p: PrimeModulus, n: usize) -> Result<u128> {
    LengthSchedule::new(p).unsigned_length(n as u128)
}
