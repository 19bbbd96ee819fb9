//! Exact closed-form class counts for unsigned and signed generator sets,
//! over unbounded integers.
//!
//! With k = N − 1 − log2(d), the number of unsigned sets is
//! d!·(d−1)!·C(N,k)/N! and the signed count multiplies in the dashing factor
//! 2^(2d+N−2−log2 d) = 2^(2^(N−k)+k−1). Parameters with no valise object
//! behind them (d not a power of two, k < 0) count zero, not an error.

use num::{BigInt, One, Zero};
use serde::Serialize;

use crate::codes::{enumerate_doubly_even, gaborit_count};
use crate::error::Error;

/// Where a C(N,k) value came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeCountSource {
    ClosedForm,
    Enumeration,
}

/// The full census for one (N, d) point.
#[derive(Clone, Debug)]
pub struct CensusResult {
    pub n: u32,
    pub d: u64,
    /// Code dimension N − 1 − log2(d); absent when d is not a power of two.
    pub k: Option<u32>,
    pub code_count: BigInt,
    pub unsigned_classes: BigInt,
    pub signed_classes: BigInt,
    pub code_count_source: CodeCountSource,
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// C(N,k) via the closed form, falling back to exhaustive enumeration for
/// residues without one (possible only when N ≤ 12).
pub fn code_count(n: u32, k: u32) -> Result<(BigInt, CodeCountSource), Error> {
    match gaborit_count(n, k) {
        Ok(v) => Ok((v, CodeCountSource::ClosedForm)),
        Err(Error::Unsupported(_)) if n <= 12 => {
            let count = enumerate_doubly_even(n, k)?.count();
            Ok((BigInt::from(count), CodeCountSource::Enumeration))
        }
        Err(e) => Err(e),
    }
}

/// The code dimension determined by 2d = 2^(N−k), when it exists.
pub fn code_dimension(n: u32, d: u64) -> Option<u32> {
    if d == 0 || !d.is_power_of_two() {
        return None;
    }
    let log2d = d.trailing_zeros();
    let k = n as i64 - 1 - log2d as i64;
    if k < 0 {
        None
    } else {
        Some(k as u32)
    }
}

/// Number of dashings of an (N,k)-chromotopology: 2^(2^(N−k)+k−1).
pub fn dashing_multiplier(n: u32, k: u32) -> BigInt {
    assert!(n > k, "dashing multiplier requires N - k >= 1");
    let exp = (1u64 << (n - k)) + k as u64 - 1;
    // identical exponent written through d = 2^(N-k-1)
    let d = 1u64 << (n - k - 1);
    debug_assert_eq!(exp, 2 * d + n as u64 - 2 - d.trailing_zeros() as u64);
    BigInt::one() << exp
}

/// Number of unsigned generator sets {|L_1|, ..., |L_N|} for GR(d,N):
/// d!·(d−1)!·C(N,k)/N!, asserting exact divisibility.
pub fn unsigned_class_count(n: u32, d: u64) -> Result<BigInt, Error> {
    if n == 0 || d == 0 {
        return Err(Error::invalid("N and d must be positive".to_string()));
    }
    let Some(k) = code_dimension(n, d) else {
        return Ok(BigInt::zero());
    };
    let (codes, _) = code_count(n, k)?;
    scaled_code_count(n, d, &codes)
}

fn scaled_code_count(n: u32, d: u64, codes: &BigInt) -> Result<BigInt, Error> {
    let numerator = factorial(d) * factorial(d - 1) * codes;
    let (q, r) = num::Integer::div_rem(&numerator, &factorial(n as u64));
    assert!(
        r.is_zero(),
        "d!(d-1)!C(N,k) must be divisible by N! at ({n},{d})"
    );
    Ok(q)
}

/// Number of signed generator sets {L_1, ..., L_N}: the unsigned count times
/// the dashing multiplier.
pub fn signed_class_count(n: u32, d: u64) -> Result<BigInt, Error> {
    let unsigned = unsigned_class_count(n, d)?;
    match code_dimension(n, d) {
        None => Ok(BigInt::zero()),
        Some(k) => Ok(unsigned * dashing_multiplier(n, k)),
    }
}

/// Assembles the full census for (N, d).
pub fn census(n: u32, d: u64) -> Result<CensusResult, Error> {
    if n == 0 || d == 0 {
        return Err(Error::invalid("N and d must be positive".to_string()));
    }
    let Some(k) = code_dimension(n, d) else {
        return Ok(CensusResult {
            n,
            d,
            k: None,
            code_count: BigInt::zero(),
            unsigned_classes: BigInt::zero(),
            signed_classes: BigInt::zero(),
            code_count_source: CodeCountSource::ClosedForm,
        });
    };
    let (codes, source) = code_count(n, k)?;
    let unsigned = scaled_code_count(n, d, &codes)?;
    let signed = &unsigned * dashing_multiplier(n, k);
    Ok(CensusResult {
        n,
        d,
        k: Some(k),
        code_count: codes,
        unsigned_classes: unsigned,
        signed_classes: signed,
        code_count_source: source,
    })
}
