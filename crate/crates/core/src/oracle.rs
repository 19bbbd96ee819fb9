//! Independent brute-force enumerators that validate the closed-form counts
//! at small scale: code scans, pruned DFS over signed generator lists,
//! dashing scans, and canonical set keys.
//!
//! Everything here recomputes results the production modules obtain by
//! formula or by structured enumeration, using blunter machinery, so that the
//! two routes can be compared test-side. Disagreements must surface as
//! failing assertions, never be patched over.

use std::collections::HashSet;

use num::BigInt;

use crate::adinkra::two_color_cycles;
use crate::bitlinalg::{gaussian_binomial, RrefGen};
use crate::chromotopology::Chromotopology;
use crate::error::Error;
use crate::garden::{GeneratorList, SignedPermutationMatrix};

/// Subspace totals up to this size use the direct scan; beyond it, the
/// level-wise closure (the scan would touch >> 10^9 subspaces at N = 12).
const SCAN_LIMIT: u64 = 4_000_000;

/// Number of doubly-even (N,k) codes by exhaustive enumeration.
///
/// Small spaces are scanned literally: every RREF subspace generator from
/// [`enumerate_subspaces`]'s generator machinery, filtered by expanding all
/// 2^k codewords against the definition. Larger spaces grow codes level by
/// level, extending each (j−1)-dimensional code by every doubly-even vector
/// of its dual and deduplicating canonical forms.
///
/// [`enumerate_subspaces`]: crate::bitlinalg::enumerate_subspaces
pub fn brute_code_count(n: u32, k: u32) -> Result<u64, Error> {
    if n == 0 || n > 12 {
        return Err(Error::guard(format!(
            "brute_code_count requires 1 <= n <= 12, got n={n}"
        )));
    }
    let total = gaussian_binomial(n, k);
    if total <= BigInt::from(SCAN_LIMIT) {
        Ok(scan_count(n, k))
    } else {
        Ok(closure_count(n, k))
    }
}

/// Counts for every dimension 0..=k_max at once, sharing the level-wise
/// closure work across dimensions.
pub fn brute_code_counts_up_to(n: u32, k_max: u32) -> Result<Vec<u64>, Error> {
    if n == 0 || n > 12 {
        return Err(Error::guard(format!(
            "brute_code_count requires 1 <= n <= 12, got n={n}"
        )));
    }
    let mut counts = vec![1u64];
    let mut level: Vec<Vec<u16>> = vec![Vec::new()];
    for _ in 0..k_max {
        let mut next: HashSet<u128> = HashSet::new();
        for rows in &level {
            extend_code(n, rows, &mut next);
        }
        level = next.iter().map(|&p| unpack(p, n)).collect();
        counts.push(level.len() as u64);
    }
    Ok(counts)
}

fn scan_count(n: u32, k: u32) -> u64 {
    let mut count = 0u64;
    for rows in RrefGen::new(n, k, |_, _| true) {
        if all_weights_divisible_by_four(&rows, k) {
            count += 1;
        }
    }
    count
}

/// Definition-level check: expands the full row space.
fn all_weights_divisible_by_four(rows: &[u64], k: u32) -> bool {
    // cheap reject on the generators themselves
    if rows.iter().any(|r| r.count_ones() % 4 != 0) {
        return false;
    }
    let mut acc = 0u64;
    let mut prev_gray = 0u64;
    for m in 1u64..(1 << k) {
        let gray = m ^ (m >> 1);
        acc ^= rows[(gray ^ prev_gray).trailing_zeros() as usize];
        prev_gray = gray;
        if acc.count_ones() % 4 != 0 {
            return false;
        }
    }
    true
}

/// Level-wise closure: rows are u16 words with column c (1-based) at bit
/// n − c, codes packed into u128 with 16 bits per row.
fn closure_count(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    *brute_code_counts_up_to(n, k)
        .expect("guard checked by caller")
        .last()
        .unwrap()
}

fn pack(rows: &[u16]) -> u128 {
    rows.iter()
        .enumerate()
        .fold(0u128, |acc, (i, &r)| acc | ((r as u128) << (16 * i)))
}

fn unpack(packed: u128, _n: u32) -> Vec<u16> {
    let mut rows = Vec::new();
    let mut p = packed;
    while p != 0 {
        rows.push((p & 0xffff) as u16);
        p >>= 16;
    }
    rows
}

fn pivot_bit(row: u16) -> u16 {
    1u16 << (15 - row.leading_zeros())
}

/// Pushes every doubly-even one-dimension extension of `rows` into `out`.
fn extend_code(n: u32, rows: &[u16], out: &mut HashSet<u128>) {
    // kernel basis of the generator matrix: the dual code
    let pivots: Vec<u16> = rows.iter().map(|&r| pivot_bit(r)).collect();
    let pivot_mask: u16 = pivots.iter().fold(0, |a, &b| a | b);
    let mut dual_basis: Vec<u16> = Vec::with_capacity((n as usize) - rows.len());
    for col_bit_idx in (0..n).rev() {
        let f = 1u16 << col_bit_idx;
        if pivot_mask & f != 0 {
            continue;
        }
        let mut v = f;
        for (row, &p) in rows.iter().zip(&pivots) {
            if row & f != 0 {
                v |= p;
            }
        }
        dual_basis.push(v);
    }

    let reduce = |mut w: u16| -> u16 {
        for (row, &p) in rows.iter().zip(&pivots) {
            if w & p != 0 {
                w ^= row;
            }
        }
        w
    };

    let m = dual_basis.len();
    let mut cur = 0u16;
    for c in 1u64..(1u64 << m) {
        cur ^= dual_basis[c.trailing_zeros() as usize];
        if cur.count_ones() % 4 != 0 {
            continue;
        }
        let reduced = reduce(cur);
        if reduced == 0 {
            continue; // already in the code
        }
        out.insert(pack(&insert_row(rows, reduced, n)));
    }
}

/// Inserts a reduced row into an RREF basis, restoring reduced form.
fn insert_row(rows: &[u16], new_row: u16, _n: u32) -> Vec<u16> {
    let p = pivot_bit(new_row);
    let mut result: Vec<u16> = Vec::with_capacity(rows.len() + 1);
    let mut placed = false;
    for &r in rows {
        let mut r = r;
        if r & p != 0 {
            r ^= new_row;
        }
        // rows are kept ordered by pivot column (descending bit value)
        if !placed && pivot_bit(r) < p {
            result.push(new_row);
            placed = true;
        }
        result.push(r);
    }
    if !placed {
        result.push(new_row);
    }
    result
}

// ---------------------------------------------------------------------------
// Generator-list DFS
// ---------------------------------------------------------------------------

fn permutations_lex(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..d).collect();
    let mut current = Vec::with_capacity(d);
    fn rec(items: &mut Vec<usize>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if items.is_empty() {
            out.push(current.clone());
            return;
        }
        for i in 0..items.len() {
            let v = items.remove(i);
            current.push(v);
            rec(items, current, out);
            current.pop();
            items.insert(i, v);
        }
    }
    rec(&mut items, &mut current, &mut out);
    out
}

/// Candidate matrices in deterministic order: permutations in lexicographic
/// one-line notation, then (for signed) sign patterns as a binary counter
/// with row 1 at the most significant bit.
fn candidates(d: usize, signed: bool) -> Vec<SignedPermutationMatrix> {
    let mut out = Vec::new();
    for perm in permutations_lex(d) {
        if signed {
            for bits in 0u32..(1 << d) {
                let signs: Vec<i8> = (0..d)
                    .map(|r| if (bits >> (d - 1 - r)) & 1 == 1 { -1 } else { 1 })
                    .collect();
                out.push(SignedPermutationMatrix::from_parts(perm.clone(), signs));
            }
        } else {
            out.push(SignedPermutationMatrix::from_parts(perm.clone(), vec![1; d]));
        }
    }
    out
}

/// Both relation families for a signed pair: A·Bᵀ and Aᵀ·B must be
/// fixed-point-free sign-antisymmetric involutions.
fn signed_pair_ok(a: &SignedPermutationMatrix, b: &SignedPermutationMatrix) -> bool {
    let d = a.size();
    for x in [a.mul(&b.transpose()), a.transpose().mul(b)] {
        for r in 0..d {
            let c = x.col_of(r);
            if c == r || x.col_of(c) != r || x.sign_of(c) != -x.sign_of(r) {
                return false;
            }
        }
    }
    true
}

/// The unsigned compatibility: the permutation of A·Bᵀ (equivalently Aᵀ·B)
/// must be a fixed-point-free involution, i.e. the two-color subgraph closes
/// into 4-cycles. This is exactly "some signing of the pair satisfies the
/// signed relations".
pub fn unsigned_pair_ok(a: &SignedPermutationMatrix, b: &SignedPermutationMatrix) -> bool {
    let d = a.size();
    for x in [a.mul(&b.transpose()), a.transpose().mul(b)] {
        for r in 0..d {
            let c = x.col_of(r);
            if c == r || x.col_of(c) != r {
                return false;
            }
        }
    }
    true
}

fn check_guard(n: u32, d: u64, signed: bool) -> Result<(), Error> {
    let ok = if signed {
        matches!(d, 1 | 2 | 4) && n <= 4
    } else {
        d >= 1 && d <= 4 && n <= 4
    };
    if ok {
        Ok(())
    } else {
        Err(Error::guard(format!(
            "generator search supports {} with N <= 4, got (N={n}, d={d})",
            if signed { "d in {1,2,4}" } else { "d <= 4" }
        )))
    }
}

/// Depth-first search over (signed) permutation matrices, extending a partial
/// list only when every relation with every earlier matrix holds. Yields
/// every full relation-satisfying list exactly once, in deterministic order.
pub fn enumerate_generator_lists(
    n: u32,
    d: u64,
    signed: bool,
) -> Result<Vec<GeneratorList>, Error> {
    check_guard(n, d, signed)?;
    let cands = candidates(d as usize, signed);
    let m = cands.len();
    let blocks = m.div_ceil(64);
    let mut compat = vec![vec![0u64; blocks]; m];
    for i in 0..m {
        for j in 0..m {
            let ok = if signed {
                signed_pair_ok(&cands[i], &cands[j])
            } else {
                unsigned_pair_ok(&cands[i], &cands[j])
            };
            if i != j && ok {
                compat[i][j / 64] |= 1 << (j % 64);
            }
        }
    }

    let mut all_mask = vec![u64::MAX; blocks];
    if m % 64 != 0 {
        all_mask[blocks - 1] = (1u64 << (m % 64)) - 1;
    }

    let mut lists = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n as usize);
    dfs(
        n as usize,
        &cands,
        &compat,
        &all_mask,
        &mut chosen,
        &mut lists,
    );
    Ok(lists)
}

fn dfs(
    n: usize,
    cands: &[SignedPermutationMatrix],
    compat: &[Vec<u64>],
    alive: &[u64],
    chosen: &mut Vec<usize>,
    out: &mut Vec<GeneratorList>,
) {
    if chosen.len() == n {
        let mats = chosen.iter().map(|&i| cands[i].clone()).collect();
        out.push(GeneratorList::new(mats).expect("sizes match"));
        return;
    }
    for (b, &word) in alive.iter().enumerate() {
        let mut w = word;
        while w != 0 {
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            let i = b * 64 + bit;
            let narrowed: Vec<u64> = alive
                .iter()
                .zip(&compat[i])
                .map(|(a, c)| a & c)
                .collect();
            chosen.push(i);
            dfs(n, cands, compat, &narrowed, chosen, out);
            chosen.pop();
        }
    }
}

// ---------------------------------------------------------------------------
// Canonical class keys
// ---------------------------------------------------------------------------

/// A serialized minimal representative of a generator set: the row-major
/// entry sequences of its matrices, sorted. Two generator lists receive equal
/// keys iff one is a reordering of the other, which is the equivalence that
/// reproduces the published set counts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalClassKey(Vec<i8>);

pub fn canonical_key(matrices: &[SignedPermutationMatrix]) -> Result<CanonicalClassKey, Error> {
    let Some(first) = matrices.first() else {
        return Err(Error::invalid("empty generator set".to_string()));
    };
    if first.size() > 4 || matrices.len() > 4 {
        return Err(Error::guard(
            "canonical keys support d <= 4 and N <= 4".to_string(),
        ));
    }
    for m in matrices {
        if m.size() != first.size() {
            return Err(Error::SizeMismatch {
                expected: first.size(),
                got: m.size(),
            });
        }
    }
    let mut rows: Vec<Vec<i8>> = matrices.iter().map(|m| m.row_major()).collect();
    rows.sort();
    Ok(CanonicalClassKey(rows.concat()))
}

/// Number of distinct generator sets found by the DFS.
pub fn brute_class_count(n: u32, d: u64, signed: bool) -> Result<u64, Error> {
    let lists = enumerate_generator_lists(n, d, signed)?;
    let mut keys: HashSet<CanonicalClassKey> = HashSet::new();
    for list in &lists {
        keys.insert(canonical_key(list.matrices())?);
    }
    Ok(keys.len() as u64)
}

// ---------------------------------------------------------------------------
// Dashing scan
// ---------------------------------------------------------------------------

/// Exhaustive 2^E scan counting edge labelings where every 2-colored 4-cycle
/// has odd dash sum.
pub fn brute_dashing_count(g: &Chromotopology) -> Result<u64, Error> {
    let e = g.num_edges();
    if e > 20 {
        return Err(Error::guard(format!(
            "brute_dashing_count requires at most 20 edges, got {e}"
        )));
    }
    let cycles = two_color_cycles(g)?;
    let masks: Vec<u32> = cycles
        .iter()
        .map(|c| c.edges.iter().fold(0u32, |m, &ei| m ^ (1 << ei)))
        .collect();
    let mut count = 0u64;
    for assignment in 0u32..(1 << e) {
        if masks
            .iter()
            .all(|&m| (assignment & m).count_ones() % 2 == 1)
        {
            count += 1;
        }
    }
    Ok(count)
}
