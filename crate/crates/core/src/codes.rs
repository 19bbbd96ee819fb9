//! Doubly-even binary codes: representation, exhaustive enumeration, and the
//! closed-form counts C(N,k).
//!
//! A binary code is doubly even when every codeword has weight divisible by 4;
//! such codes are automatically self-orthogonal, so k ≤ N/2 whenever k ≥ 1.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bitlinalg::{BitMatrix, BitWord, RrefGen};
use crate::error::Error;

/// Largest dimension for which full codeword expansion is permitted.
const EXPANSION_GUARD: u32 = 20;

/// Largest length for which exhaustive code enumeration is permitted.
const ENUMERATION_GUARD: u32 = 12;

/// A k-dimensional doubly-even code of length N, stored as a canonical RREF
/// generator matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoublyEvenCode {
    n: u32,
    k: u32,
    generators: BitMatrix,
}

/// Serialized shape: `{ "n": 8, "k": 4, "generators": ["11110000", ...] }`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CodeJson {
    pub n: u32,
    pub k: u32,
    pub generators: Vec<String>,
}

impl DoublyEvenCode {
    /// Canonicalizes the generators (RREF) and verifies the doubly-even and
    /// self-orthogonality conditions by full expansion.
    pub fn new(n: u32, generators: BitMatrix) -> Result<Self, Error> {
        if n == 0 || n > 64 {
            return Err(Error::invalid(format!("code length must be 1..=64, got {n}")));
        }
        if generators.cols() != n as usize {
            return Err(Error::SizeMismatch {
                expected: n as usize,
                got: generators.cols(),
            });
        }
        let rref = generators.rref();
        let k = rref.num_rows() as u32;
        if !is_doubly_even(&rref)? {
            return Err(Error::invalid(
                "generators span a code with a weight not divisible by 4".to_string(),
            ));
        }
        // Independent self-orthogonality check; a consequence of
        // doubly-evenness, asserted separately.
        let words = rref.to_words();
        for (i, a) in words.iter().enumerate() {
            for b in &words[i..] {
                if a.dot(b) {
                    return Err(Error::invalid(
                        "generators are not pairwise even-intersecting".to_string(),
                    ));
                }
            }
        }
        debug_assert!(k == 0 || k <= n / 2);
        Ok(DoublyEvenCode {
            n,
            k,
            generators: rref,
        })
    }

    /// Wraps rows already known to be a doubly-even RREF basis.
    pub(crate) fn from_rref_unchecked(n: u32, rows: &[u64]) -> Self {
        let words: Vec<BitWord> = rows.iter().map(|&r| BitWord::new(n, r)).collect();
        let generators = BitMatrix::from_words(n, &words).expect("row lengths match");
        debug_assert_eq!(generators.rref(), generators);
        DoublyEvenCode {
            n,
            k: rows.len() as u32,
            generators,
        }
    }

    /// The trivial zero-dimensional code of length n.
    pub fn trivial(n: u32) -> Self {
        DoublyEvenCode {
            n,
            k: 0,
            generators: BitMatrix::new(n as usize),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn generators(&self) -> &BitMatrix {
        &self.generators
    }

    pub fn generator_words(&self) -> Vec<BitWord> {
        self.generators.to_words()
    }

    /// All 2^k codewords: the zero word first, remainder in lexicographic
    /// order.
    pub fn codewords(&self) -> Result<Vec<BitWord>, Error> {
        if self.k > EXPANSION_GUARD {
            return Err(Error::guard(format!(
                "codeword expansion requires k <= {EXPANSION_GUARD}, got k={}",
                self.k
            )));
        }
        let gens: Vec<u64> = self.generator_words().iter().map(|w| w.bits()).collect();
        let mut words: Vec<u64> = Vec::with_capacity(1 << self.k);
        for mask in 0u64..(1 << self.k) {
            let mut acc = 0u64;
            for (i, g) in gens.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    acc ^= g;
                }
            }
            words.push(acc);
        }
        words.sort_unstable();
        debug_assert_eq!(words[0], 0);
        Ok(words.into_iter().map(|b| BitWord::new(self.n, b)).collect())
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, w: &BitWord) -> bool {
        if w.len() != self.n {
            return false;
        }
        let mut bits = w.bits();
        for g in self.generator_words() {
            let pivot = 1u64 << (63 - g.bits().leading_zeros());
            if bits & pivot != 0 {
                bits ^= g.bits();
            }
        }
        bits == 0
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            n: self.n,
            k: self.k,
            generators: self.generator_words().iter().map(|w| w.to_string()).collect(),
        }
    }
}

impl Serialize for DoublyEvenCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DoublyEvenCode {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CodeJson::deserialize(deserializer)?;
        let words: Vec<BitWord> = raw
            .generators
            .iter()
            .map(|s| s.parse::<BitWord>())
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)?;
        let m = BitMatrix::from_words(raw.n, &words).map_err(D::Error::custom)?;
        let code = DoublyEvenCode::new(raw.n, m).map_err(D::Error::custom)?;
        if code.k() != raw.k {
            return Err(D::Error::custom(format!(
                "declared dimension {} but generators span dimension {}",
                raw.k,
                code.k()
            )));
        }
        Ok(code)
    }
}

/// Whether every codeword in the row space has weight divisible by 4,
/// decided by expanding all 2^k combinations.
pub fn is_doubly_even(generators: &BitMatrix) -> Result<bool, Error> {
    let basis = generators.rref();
    let k = basis.num_rows() as u32;
    if k > EXPANSION_GUARD {
        return Err(Error::guard(format!(
            "is_doubly_even requires rank <= {EXPANSION_GUARD}, got {k}"
        )));
    }
    if basis.cols() == 0 || basis.cols() > 64 {
        return Err(Error::invalid("is_doubly_even requires 1..=64 columns".to_string()));
    }
    let gens: Vec<u64> = basis.to_words().iter().map(|w| w.bits()).collect();
    // Gray-code walk over all combinations.
    let mut acc = 0u64;
    let mut prev_gray = 0u64;
    for m in 1u64..(1 << k) {
        let gray = m ^ (m >> 1);
        let flipped = gray ^ prev_gray;
        acc ^= gens[flipped.trailing_zeros() as usize];
        prev_gray = gray;
        if acc.count_ones() % 4 != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Streams every doubly-even (N,k) code exactly once — distinct subspaces, not
/// equivalence classes — in lexicographic order of the serialized RREF.
///
/// A subspace is doubly even iff an RREF basis has all row weights ≡ 0 (mod 4)
/// and pairwise even intersections, which is what the row-prefix prune checks.
pub fn enumerate_doubly_even(
    n: u32,
    k: u32,
) -> Result<impl Iterator<Item = DoublyEvenCode>, Error> {
    if n == 0 || n > ENUMERATION_GUARD {
        return Err(Error::guard(format!(
            "enumerate_doubly_even requires 1 <= n <= {ENUMERATION_GUARD}, got n={n}"
        )));
    }
    let prune = |rows: &[u64], cand: u64| {
        cand.count_ones() % 4 == 0
            && rows.iter().all(|&r| (r & cand).count_ones() % 2 == 0)
    };
    let gen = RrefGen::new(n, k, prune);
    Ok(gen.map(move |rows| DoublyEvenCode::from_rref_unchecked(n, &rows)))
}

/// Exact count of doubly-even (N,k) codes via the closed forms.
///
/// Returns 1 for k = 0 (any N), 0 when k > N/2 or when k ≥ 1 with N < 4,
/// and otherwise evaluates the residue-specific product over exact rationals,
/// asserting integrality of the final value. Residues without a published
/// closed form yield [`Error::Unsupported`]; callers fall back to enumeration.
pub fn gaborit_count(n: u32, k: u32) -> Result<BigInt, Error> {
    if n == 0 {
        return Err(Error::invalid("code length must be positive".to_string()));
    }
    if k == 0 {
        return Ok(BigInt::one());
    }
    if 2 * k > n || n < 4 {
        return Ok(BigInt::zero());
    }
    let sign: i64 = match n % 8 {
        4 => -1,
        0 => 1,
        _ => {
            return Err(Error::Unsupported(format!(
                "no closed form for N = {n} (N mod 8 = {}); fall back to enumeration",
                n % 8
            )))
        }
    };
    let two = BigInt::from(2);
    let pow2 = |e: u32| -> BigInt { num::pow::pow(two.clone(), e as usize) };
    let half = n / 2;

    let mut acc = BigRational::one();
    for i in 0..k.saturating_sub(1) {
        let numer = pow2(n - 2 * i - 2) + BigInt::from(sign) * pow2(half - i - 1) - 2;
        let denom = pow2(i + 1) - 1;
        acc *= BigRational::new(numer, denom);
    }
    let tail = BigRational::new(BigInt::one(), pow2(k - 1))
        + BigRational::new(
            pow2(n - 2 * k) + BigInt::from(sign) * pow2(half - k) - 2,
            pow2(k) - 1,
        );
    acc *= tail;

    if !acc.is_integer() {
        panic!("closed-form count for ({n},{k}) is non-integral: {acc}");
    }
    let value = acc.to_integer();
    assert!(!value.is_negative(), "closed-form count for ({n},{k}) is negative");
    Ok(value)
}
