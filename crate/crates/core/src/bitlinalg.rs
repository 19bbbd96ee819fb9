//! Vectors and matrices over Z_2: row reduction, rank, affine-system solving,
//! and subspace enumeration.
//!
//! Two vector types coexist on purpose. [`BitWord`] is a fixed-length word of
//! at most 64 coordinates — codewords, coset representatives, vertex labels —
//! with coordinate 1 leftmost in its string form ("11110000"). [`BitVec`] is
//! an unbounded limb-backed bitset used for linear systems whose variables are
//! graph edges; those routinely exceed 64 variables.

use std::fmt;
use std::str::FromStr;

use num::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

// ---------------------------------------------------------------------------
// BitWord
// ---------------------------------------------------------------------------

/// A length-N vector over Z_2, N ≤ 64.
///
/// Coordinate `i` (1-based) is the `i`-th character of the serialized string,
/// i.e. bit `len - i` of the backing word. Addition is coordinatewise XOR.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    len: u32,
    bits: u64,
}

impl BitWord {
    /// Creates a word from raw bits; bits above the length are masked off.
    ///
    /// # Panics
    /// Panics if `len` is not in `1..=64`.
    pub fn new(len: u32, bits: u64) -> Self {
        assert!((1..=64).contains(&len), "BitWord length must be 1..=64");
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        BitWord {
            len,
            bits: bits & mask,
        }
    }

    pub fn zero(len: u32) -> Self {
        BitWord::new(len, 0)
    }

    /// The unit word e_i with a single 1 at coordinate `i` (1-based).
    pub fn unit(len: u32, i: u32) -> Self {
        assert!(i >= 1 && i <= len, "coordinate out of range");
        BitWord::new(len, 1u64 << (len - i))
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Coordinate `i` (1-based).
    pub fn get(&self, i: u32) -> bool {
        assert!(i >= 1 && i <= self.len, "coordinate out of range");
        (self.bits >> (self.len - i)) & 1 == 1
    }

    pub fn set(&mut self, i: u32, value: bool) {
        assert!(i >= 1 && i <= self.len, "coordinate out of range");
        let bit = 1u64 << (self.len - i);
        if value {
            self.bits |= bit;
        } else {
            self.bits &= !bit;
        }
    }

    /// Number of 1-coordinates.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Parity of the intersection with another word of equal length.
    pub fn dot(&self, other: &BitWord) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        (self.bits & other.bits).count_ones() % 2 == 1
    }
}

impl std::ops::Add for BitWord {
    type Output = BitWord;

    fn add(self, rhs: BitWord) -> BitWord {
        assert_eq!(self.len, rhs.len, "length mismatch");
        BitWord {
            len: self.len,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() || s.len() > 64 {
            return Err(Error::invalid(format!(
                "bit string must have length 1..=64, got {}",
                s.len()
            )));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                other => {
                    return Err(Error::invalid(format!(
                        "bit string may only contain '0'/'1', got {other:?}"
                    )))
                }
            }
        }
        Ok(BitWord {
            len: s.len() as u32,
            bits,
        })
    }
}

impl Serialize for BitWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// BitVec
// ---------------------------------------------------------------------------

/// An unbounded vector over Z_2, indexed from 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitVec {
    len: usize,
    limbs: Vec<u64>,
}

impl BitVec {
    pub fn zero(len: usize) -> Self {
        BitVec {
            len,
            limbs: vec![0; len.div_ceil(64)],
        }
    }

    /// Converts a word; coordinate `i` of the word becomes index `i - 1`.
    pub fn from_word(w: &BitWord) -> Self {
        let mut v = BitVec::zero(w.len() as usize);
        for i in 1..=w.len() {
            if w.get(i) {
                v.set((i - 1) as usize, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.limbs[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i & 63);
        if value {
            self.limbs[i >> 6] |= bit;
        } else {
            self.limbs[i >> 6] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.limbs[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.limbs.iter().map(|l| l.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Index of the first set bit.
    pub fn first_one(&self) -> Option<usize> {
        for (i, &l) in self.limbs.iter().enumerate() {
            if l != 0 {
                return Some(i * 64 + l.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

// ---------------------------------------------------------------------------
// BitMatrix
// ---------------------------------------------------------------------------

/// A matrix over Z_2: an ordered list of equal-length rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self, Error> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::SizeMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Builds a matrix from words of length `n`; word coordinate `i` maps to
    /// column `i - 1`.
    pub fn from_words(n: u32, words: &[BitWord]) -> Result<Self, Error> {
        let mut rows = Vec::with_capacity(words.len());
        for w in words {
            if w.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n as usize,
                    got: w.len() as usize,
                });
            }
            rows.push(BitVec::from_word(w));
        }
        Ok(BitMatrix {
            cols: n as usize,
            rows,
        })
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    /// Rows converted back to words. Only valid for matrices with ≤ 64 columns.
    pub fn to_words(&self) -> Vec<BitWord> {
        assert!(self.cols >= 1 && self.cols <= 64);
        self.rows
            .iter()
            .map(|r| {
                let mut w = BitWord::zero(self.cols as u32);
                for i in r.iter_ones() {
                    w.set(i as u32 + 1, true);
                }
                w
            })
            .collect()
    }

    /// The unique reduced row-echelon form with zero rows removed.
    ///
    /// Rows come out ordered by pivot column; the row space is preserved.
    pub fn rref(&self) -> BitMatrix {
        let mut rows = self.rows.clone();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(pos) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, pos);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            next += 1;
        }
        rows.truncate(next);
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().num_rows()
    }

    /// Pivot columns of an already-reduced matrix.
    fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.first_one().expect("rref has no zero rows"))
            .collect()
    }

    /// Basis of the kernel {x : each row · x = 0}, one vector per free column,
    /// free columns ascending.
    pub fn nullspace(&self) -> BitMatrix {
        let r = self.rref();
        let pivots = r.pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = BitVec::zero(self.cols);
            v.set(f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.rows[i].get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BitMatrix {
            cols: self.cols,
            rows: basis,
        }
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.cols);
        let r = self.rref();
        let mut v = v.clone();
        for (row, &p) in r.rows.iter().zip(&r.pivots()) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v.is_zero()
    }
}

// ---------------------------------------------------------------------------
// Affine systems
// ---------------------------------------------------------------------------

/// A linear system A·x = b over Z_2 in E variables.
#[derive(Clone, Debug)]
pub struct AffineSystem {
    coeffs: BitMatrix,
    rhs: BitVec,
}

/// One solution plus a basis of the homogeneous solution space; the full
/// solution set is {particular + any combination of nullspace rows}.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: BitVec,
    pub nullspace: BitMatrix,
}

impl AffineSolution {
    pub fn nullity(&self) -> usize {
        self.nullspace.num_rows()
    }

    /// 2^nullity.
    pub fn count(&self) -> BigInt {
        BigInt::from(1) << self.nullity()
    }
}

impl AffineSystem {
    pub fn new(coeffs: BitMatrix, rhs: BitVec) -> Result<Self, Error> {
        if coeffs.num_rows() != rhs.len() {
            return Err(Error::SizeMismatch {
                expected: coeffs.num_rows(),
                got: rhs.len(),
            });
        }
        Ok(AffineSystem { coeffs, rhs })
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.cols()
    }

    pub fn num_equations(&self) -> usize {
        self.coeffs.num_rows()
    }

    pub fn coeffs(&self) -> &BitMatrix {
        &self.coeffs
    }

    pub fn rhs(&self) -> &BitVec {
        &self.rhs
    }

    /// Checks one assignment against every equation.
    pub fn satisfied_by(&self, x: &BitVec) -> bool {
        assert_eq!(x.len(), self.num_vars());
        self.coeffs.rows().iter().enumerate().all(|(i, row)| {
            let mut acc = false;
            for j in row.iter_ones() {
                acc ^= x.get(j);
            }
            acc == self.rhs.get(i)
        })
    }

    /// Gaussian elimination on the augmented matrix. `None` means the system
    /// is inconsistent.
    pub fn solve(&self) -> Option<AffineSolution> {
        let vars = self.num_vars();
        let mut rows: Vec<(BitVec, bool)> = self
            .coeffs
            .rows()
            .iter()
            .cloned()
            .zip((0..self.rhs.len()).map(|i| self.rhs.get(i)))
            .collect();

        let mut pivots: Vec<usize> = Vec::new();
        let mut next = 0;
        for col in 0..vars {
            let Some(pos) = (next..rows.len()).find(|&r| rows[r].0.get(col)) else {
                continue;
            };
            rows.swap(next, pos);
            let (pivot_vec, pivot_b) = rows[next].clone();
            for (r, (vec, b)) in rows.iter_mut().enumerate() {
                if r != next && vec.get(col) {
                    vec.xor_assign(&pivot_vec);
                    *b ^= pivot_b;
                }
            }
            pivots.push(col);
            next += 1;
        }
        // Zero coefficient rows with a 1 on the right witness inconsistency.
        if rows[next..].iter().any(|(_, b)| *b) {
            return None;
        }

        let mut particular = BitVec::zero(vars);
        for (i, &p) in pivots.iter().enumerate() {
            if rows[i].1 {
                particular.set(p, true);
            }
        }

        let mut is_pivot = vec![false; vars];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in 0..vars {
            if is_pivot[f] {
                continue;
            }
            let mut v = BitVec::zero(vars);
            v.set(f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if rows[i].0.get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        Some(AffineSolution {
            particular,
            nullspace: BitMatrix {
                cols: vars,
                rows: basis,
            },
        })
    }

    /// Number of solutions: 2^(E − rank), or 0 when inconsistent.
    pub fn solution_count(&self) -> BigInt {
        match self.solve() {
            Some(sol) => sol.count(),
            None => BigInt::from(0),
        }
    }
}

// ---------------------------------------------------------------------------
// Subspace enumeration
// ---------------------------------------------------------------------------

/// Gaussian binomial coefficient [n choose k]_2: the number of k-dimensional
/// subspaces of Z_2^n.
pub fn gaussian_binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= (BigInt::from(1) << (n - i)) - 1;
        den *= (BigInt::from(1) << (k - i)) - 1;
    }
    &num / &den
}

/// Streams one RREF generator matrix per k-dimensional subspace of Z_2^n, in
/// lexicographic order of the serialized form.
pub fn enumerate_subspaces(
    n: u32,
    k: u32,
) -> Result<impl Iterator<Item = BitMatrix>, Error> {
    if n == 0 || n > 12 {
        return Err(Error::guard(format!("enumerate_subspaces requires 1 <= n <= 12, got n={n}")));
    }
    if k > n {
        return Err(Error::guard(format!(
            "enumerate_subspaces requires k <= n, got k={k} > n={n}"
        )));
    }
    let gen = RrefGen::new(n, k, |_, _| true);
    Ok(gen.map(move |rows| {
        let words: Vec<BitWord> = rows.iter().map(|&r| BitWord::new(n, r)).collect();
        BitMatrix::from_words(n, &words).expect("generated rows have matching length")
    }))
}

/// Streams every RREF matrix over Z_2^n with k rows whose row prefixes all
/// pass `prune`, in lexicographic order of the serialized concatenated rows.
///
/// Rows are u64s with column c (1-based) at bit n − c, so numeric order equals
/// string order. Pivot bookkeeping guarantees each row space appears exactly
/// once, in canonical reduced form.
pub(crate) struct RrefGen<F: FnMut(&[u64], u64) -> bool> {
    n: u32,
    k: u32,
    prune: F,
    levels: Vec<Level>,
    rows: Vec<u64>,
    state: GenState,
}

struct Level {
    pivot: u32,
    counter: u64,
}

enum GenState {
    Start,
    Resume,
    Done,
}

impl<F: FnMut(&[u64], u64) -> bool> RrefGen<F> {
    pub(crate) fn new(n: u32, k: u32, prune: F) -> Self {
        assert!(n >= 1 && n <= 63);
        RrefGen {
            n,
            k,
            prune,
            levels: Vec::new(),
            rows: Vec::new(),
            state: GenState::Start,
        }
    }

    fn col_bit(&self, pivot: u32) -> u64 {
        1u64 << (self.n - pivot)
    }

    /// Scans pivot columns from `high` down to `low`, returning the first one
    /// that is zero in every current row and leaves room for the rows still
    /// to come. Descending column order yields ascending candidate values.
    fn find_pivot(&self, high: u32, low: u32) -> Option<u32> {
        if low > high {
            return None;
        }
        let or_mask: u64 = self.rows.iter().fold(0, |a, &r| a | r);
        let remaining = self.k - self.rows.len() as u32 - 1;
        (low..=high).rev().find(|&p| {
            let bit = self.col_bit(p);
            if or_mask & bit != 0 {
                return false;
            }
            let zeros_after = (self.n - p) - (or_mask & (bit - 1)).count_ones();
            zeros_after >= remaining
        })
    }

    /// Opens a fresh level for the next row. False when no pivot fits.
    fn open_level(&mut self) -> bool {
        let depth = self.rows.len() as u32;
        let prev = self.levels.last().map_or(0, |l| l.pivot);
        let high = self.n - (self.k - depth - 1);
        match self.find_pivot(high, prev + 1) {
            Some(p) => {
                self.levels.push(Level {
                    pivot: p,
                    counter: 0,
                });
                true
            }
            None => false,
        }
    }

    /// Places the next passing candidate at the top level. On exhaustion the
    /// level is popped and false returned.
    fn place_next(&mut self) -> bool {
        let depth = self.rows.len();
        let prev = if depth == 0 {
            0
        } else {
            self.levels[depth - 1].pivot
        };
        loop {
            let (pivot, counter) = {
                let lvl = &self.levels[depth];
                (lvl.pivot, lvl.counter)
            };
            if counter >= self.col_bit(pivot) {
                match self.find_pivot(pivot.wrapping_sub(1), prev + 1) {
                    Some(p) => {
                        self.levels[depth] = Level {
                            pivot: p,
                            counter: 0,
                        };
                        continue;
                    }
                    None => {
                        self.levels.pop();
                        return false;
                    }
                }
            }
            let cand = self.col_bit(pivot) | counter;
            self.levels[depth].counter += 1;
            if (self.prune)(&self.rows, cand) {
                self.rows.push(cand);
                return true;
            }
        }
    }

    fn run(&mut self) -> Option<Vec<u64>> {
        loop {
            if self.place_next() {
                if self.rows.len() == self.k as usize {
                    return Some(self.rows.clone());
                }
                if !self.open_level() {
                    // No room for further pivots under this prefix.
                    self.rows.pop();
                }
            } else {
                if self.levels.is_empty() {
                    self.state = GenState::Done;
                    return None;
                }
                self.rows.pop();
            }
        }
    }
}

impl<F: FnMut(&[u64], u64) -> bool> Iterator for RrefGen<F> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        match self.state {
            GenState::Done => None,
            GenState::Start => {
                self.state = GenState::Resume;
                if self.k == 0 {
                    self.state = GenState::Done;
                    return Some(Vec::new());
                }
                if self.k > self.n || !self.open_level() {
                    self.state = GenState::Done;
                    return None;
                }
                self.run()
            }
            GenState::Resume => {
                self.rows.pop();
                self.run()
            }
        }
    }
}
