//! Signed permutation matrices, the GR(d,N) relation checker, and the
//! bijection between generator lists and row-ordered valise Adinkras.
//!
//! A list (L_1, ..., L_N) of d×d signed permutation matrices generates
//! GR(d,N) when both relation families
//!
//! ```text
//! L_i L_j^T + L_j L_i^T = 2 δ_ij I
//! L_i^T L_j + L_j^T L_i = 2 δ_ij I
//! ```
//!
//! hold. Reading row j, column k of L_i as a color-i edge between the j-th
//! top vertex and the k-th bottom vertex of a valise (dashed when the entry
//! is −1) identifies such lists with row-ordered valise Adinkras on 2d
//! vertices.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::adinkra::{validate_dashing, Dashing, ValiseAdinkra};
use crate::bitlinalg::{BitMatrix, BitWord};
use crate::chromotopology::Chromotopology;
use crate::codes::DoublyEvenCode;
use crate::error::Error;
use crate::report::{Check, ValidationReport};

/// A square matrix over {−1, 0, 1} with exactly one nonzero entry per row and
/// per column. Stored as a permutation plus per-row signs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedPermutationMatrix {
    cols: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutationMatrix {
    /// Validates a dense matrix. Errors name the offending row (1-based).
    pub fn new(entries: &[Vec<i64>]) -> Result<Self, Error> {
        let d = entries.len();
        if d == 0 {
            return Err(Error::invalid("matrix must be nonempty".to_string()));
        }
        let mut cols = Vec::with_capacity(d);
        let mut signs = Vec::with_capacity(d);
        let mut col_used = vec![false; d];
        for (r, row) in entries.iter().enumerate() {
            if row.len() != d {
                return Err(Error::invalid(format!(
                    "row {}: expected {} entries, got {}",
                    r + 1,
                    d,
                    row.len()
                )));
            }
            let mut nonzero = None;
            for (c, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 | -1 => {
                        if nonzero.is_some() {
                            return Err(Error::invalid(format!(
                                "row {}: more than one nonzero entry",
                                r + 1
                            )));
                        }
                        nonzero = Some((c, e as i8));
                    }
                    other => {
                        return Err(Error::invalid(format!(
                            "row {}: entry {} is not in {{-1, 0, 1}}",
                            r + 1,
                            other
                        )));
                    }
                }
            }
            let Some((c, s)) = nonzero else {
                return Err(Error::invalid(format!("row {}: no nonzero entry", r + 1)));
            };
            if col_used[c] {
                return Err(Error::invalid(format!(
                    "row {}: column {} already used",
                    r + 1,
                    c + 1
                )));
            }
            col_used[c] = true;
            cols.push(c);
            signs.push(s);
        }
        Ok(SignedPermutationMatrix { cols, signs })
    }

    pub fn from_parts(cols: Vec<usize>, signs: Vec<i8>) -> Self {
        assert_eq!(cols.len(), signs.len());
        let d = cols.len();
        let mut used = vec![false; d];
        for &c in &cols {
            assert!(c < d && !used[c], "not a permutation");
            used[c] = true;
        }
        assert!(signs.iter().all(|&s| s == 1 || s == -1));
        SignedPermutationMatrix { cols, signs }
    }

    pub fn identity(d: usize) -> Self {
        SignedPermutationMatrix {
            cols: (0..d).collect(),
            signs: vec![1; d],
        }
    }

    pub fn size(&self) -> usize {
        self.cols.len()
    }

    /// Column of the nonzero entry in row `r` (0-based).
    pub fn col_of(&self, r: usize) -> usize {
        self.cols[r]
    }

    pub fn sign_of(&self, r: usize) -> i8 {
        self.signs[r]
    }

    pub fn entry(&self, r: usize, c: usize) -> i32 {
        if self.cols[r] == c {
            self.signs[r] as i32
        } else {
            0
        }
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        let d = self.size();
        (0..d)
            .map(|r| (0..d).map(|c| self.entry(r, c) as i64).collect())
            .collect()
    }

    /// Entrywise absolute value: the underlying permutation matrix.
    pub fn unsign(&self) -> SignedPermutationMatrix {
        SignedPermutationMatrix {
            cols: self.cols.clone(),
            signs: vec![1; self.size()],
        }
    }

    pub fn transpose(&self) -> SignedPermutationMatrix {
        let d = self.size();
        let mut cols = vec![0; d];
        let mut signs = vec![0i8; d];
        for r in 0..d {
            cols[self.cols[r]] = r;
            signs[self.cols[r]] = self.signs[r];
        }
        SignedPermutationMatrix { cols, signs }
    }

    /// Matrix product; the result is again a signed permutation.
    pub fn mul(&self, rhs: &SignedPermutationMatrix) -> SignedPermutationMatrix {
        assert_eq!(self.size(), rhs.size());
        let d = self.size();
        let mut cols = Vec::with_capacity(d);
        let mut signs = Vec::with_capacity(d);
        for r in 0..d {
            let mid = self.cols[r];
            cols.push(rhs.cols[mid]);
            signs.push(self.signs[r] * rhs.signs[mid]);
        }
        SignedPermutationMatrix { cols, signs }
    }

    pub fn negated(&self) -> SignedPermutationMatrix {
        SignedPermutationMatrix {
            cols: self.cols.clone(),
            signs: self.signs.iter().map(|&s| -s).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(r, &c)| r == c) && self.signs.iter().all(|&s| s == 1)
    }

    /// Row-major entries; the serialization used for canonical set keys.
    pub fn row_major(&self) -> Vec<i8> {
        let d = self.size();
        let mut out = vec![0i8; d * d];
        for r in 0..d {
            out[r * d + self.cols[r]] = self.signs[r];
        }
        out
    }
}

impl fmt::Display for SignedPermutationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.size() {
            let row: Vec<String> = (0..self.size())
                .map(|c| format!("{:>2}", self.entry(r, c)))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for SignedPermutationMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.dense().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SignedPermutationMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let dense = Vec::<Vec<i64>>::deserialize(deserializer)?;
        SignedPermutationMatrix::new(&dense).map_err(D::Error::custom)
    }
}

/// An ordered list of N same-size signed permutation matrices.
///
/// Construction checks sizes only; whether the defining relations hold is a
/// separate question answered by [`GeneratorList::check_relations`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorList {
    matrices: Vec<SignedPermutationMatrix>,
}

/// Serialized shape: `{ "d": 4, "n": 4, "matrices": [[[0,0,1,0], ...], ...] }`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatrixListJson {
    pub d: usize,
    pub n: usize,
    pub matrices: Vec<Vec<Vec<i64>>>,
}

impl GeneratorList {
    pub fn new(matrices: Vec<SignedPermutationMatrix>) -> Result<Self, Error> {
        let Some(first) = matrices.first() else {
            return Err(Error::invalid("generator list must be nonempty".to_string()));
        };
        let d = first.size();
        for m in &matrices {
            if m.size() != d {
                return Err(Error::SizeMismatch {
                    expected: d,
                    got: m.size(),
                });
            }
        }
        Ok(GeneratorList { matrices })
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn d(&self) -> usize {
        self.matrices[0].size()
    }

    pub fn matrices(&self) -> &[SignedPermutationMatrix] {
        &self.matrices
    }

    pub fn get(&self, i: usize) -> &SignedPermutationMatrix {
        &self.matrices[i]
    }

    pub fn unsigned(&self) -> GeneratorList {
        GeneratorList {
            matrices: self.matrices.iter().map(|m| m.unsign()).collect(),
        }
    }

    /// Evaluates both relation families for every pair (i, j), i ≤ j; each
    /// failing pair carries the offending sum as witness.
    pub fn check_relations(&self) -> ValidationReport {
        let n = self.n();
        let d = self.d();
        let mut checks = Vec::new();
        for i in 0..n {
            for j in i..n {
                let a = &self.matrices[i];
                let b = &self.matrices[j];
                let sums = [
                    (
                        format!("pair ({},{}) family L·Lᵀ", i + 1, j + 1),
                        sum_dense(&a.mul(&b.transpose()), &b.mul(&a.transpose())),
                    ),
                    (
                        format!("pair ({},{}) family Lᵀ·L", i + 1, j + 1),
                        sum_dense(&a.transpose().mul(b), &b.transpose().mul(a)),
                    ),
                ];
                for (name, sum) in sums {
                    let expected = if i == j { 2 } else { 0 };
                    let ok = (0..d).all(|r| {
                        (0..d).all(|c| sum[r][c] == if r == c { expected } else { 0 })
                    });
                    if ok {
                        checks.push(Check::pass(name));
                    } else {
                        checks.push(Check::fail(name, format_dense(&sum)));
                    }
                }
            }
        }
        ValidationReport::new(checks)
    }

    pub fn to_json(&self) -> MatrixListJson {
        MatrixListJson {
            d: self.d(),
            n: self.n(),
            matrices: self.matrices.iter().map(|m| m.dense()).collect(),
        }
    }

    /// Parses and validates the matrix-list schema; errors name the matrix
    /// (and row, where applicable) that failed.
    pub fn from_json(json: &MatrixListJson) -> Result<Self, Error> {
        if json.matrices.len() != json.n {
            return Err(Error::invalid(format!(
                "declared n = {} but found {} matrices",
                json.n,
                json.matrices.len()
            )));
        }
        let mut matrices = Vec::with_capacity(json.n);
        for (i, dense) in json.matrices.iter().enumerate() {
            let m = SignedPermutationMatrix::new(dense)
                .map_err(|e| Error::invalid(format!("matrix {}: {}", i + 1, e)))?;
            if m.size() != json.d {
                return Err(Error::invalid(format!(
                    "matrix {}: expected size {}, got {}",
                    i + 1,
                    json.d,
                    m.size()
                )));
            }
            matrices.push(m);
        }
        GeneratorList::new(matrices)
    }
}

fn sum_dense(a: &SignedPermutationMatrix, b: &SignedPermutationMatrix) -> Vec<Vec<i32>> {
    let d = a.size();
    (0..d)
        .map(|r| (0..d).map(|c| a.entry(r, c) + b.entry(r, c)).collect())
        .collect()
}

fn format_dense(m: &[Vec<i32>]) -> String {
    m.iter()
        .map(|row| {
            format!(
                "[{}]",
                row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Entrywise absolute value of a signed permutation matrix.
pub fn unsign(m: &SignedPermutationMatrix) -> SignedPermutationMatrix {
    m.unsign()
}

/// A valise Adinkra together with an ordering of the vertices in each row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RowOrderedValiseAdinkra {
    adinkra: ValiseAdinkra,
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl RowOrderedValiseAdinkra {
    /// `top` must be a permutation of the rank-0 vertices and `bottom` of the
    /// rank-1 vertices.
    pub fn new(adinkra: ValiseAdinkra, top: Vec<usize>, bottom: Vec<usize>) -> Result<Self, Error> {
        let ranking = adinkra.ranking();
        let mut expected_top = top.clone();
        expected_top.sort_unstable();
        if expected_top != ranking.class(0) {
            return Err(Error::invalid(
                "top order is not a permutation of the rank-0 vertices".to_string(),
            ));
        }
        let mut expected_bottom = bottom.clone();
        expected_bottom.sort_unstable();
        if expected_bottom != ranking.class(1) {
            return Err(Error::invalid(
                "bottom order is not a permutation of the rank-1 vertices".to_string(),
            ));
        }
        Ok(RowOrderedValiseAdinkra {
            adinkra,
            top,
            bottom,
        })
    }

    pub fn adinkra(&self) -> &ValiseAdinkra {
        &self.adinkra
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }
}

/// Reads the generator list off a row-ordered valise Adinkra: L_i has entry
/// ±1 at (j,k) iff an edge of color i joins the j-th top vertex to the k-th
/// bottom vertex, −1 iff that edge is dashed.
pub fn adinkra_to_generators(roa: &RowOrderedValiseAdinkra) -> Result<GeneratorList, Error> {
    let g = roa.adinkra().graph();
    let inc = g.incidence()?;
    let d = roa.top().len();
    if roa.bottom().len() != d {
        return Err(Error::SizeMismatch {
            expected: d,
            got: roa.bottom().len(),
        });
    }
    let mut bottom_pos = vec![usize::MAX; g.num_vertices()];
    for (k, &v) in roa.bottom().iter().enumerate() {
        bottom_pos[v] = k;
    }

    let mut matrices = Vec::with_capacity(g.n() as usize);
    for color in 1..=g.n() as usize {
        let mut cols = Vec::with_capacity(d);
        let mut signs = Vec::with_capacity(d);
        let mut used = vec![false; d];
        for j in 0..d {
            let t = roa.top()[j];
            let ei = inc[t][color - 1];
            let e = &g.edges()[ei];
            let other = if e.u == t { e.v } else { e.u };
            let k = bottom_pos[other];
            if k == usize::MAX {
                return Err(Error::invalid(format!(
                    "color-{color} edge at top vertex {t} does not reach the bottom row"
                )));
            }
            if used[k] {
                return Err(Error::invalid(format!(
                    "color-{color} edges are not a top/bottom matching"
                )));
            }
            used[k] = true;
            cols.push(k);
            signs.push(if roa.adinkra().dashing().get(ei) == 1 { -1 } else { 1 });
        }
        matrices.push(SignedPermutationMatrix::from_parts(cols, signs));
    }
    let list = GeneratorList::new(matrices)?;
    let report = list.check_relations();
    if !report.is_valid() {
        let first = report.failures().next().unwrap();
        return Err(Error::RelationsViolated(format!(
            "derived matrices violate {}",
            first.name
        )));
    }
    Ok(list)
}

/// Rebuilds the row-ordered valise Adinkra of a relation-satisfying list:
/// the inverse of [`adinkra_to_generators`] up to vertex relabeling.
///
/// Edges derived from the matrices must form a connected simple properly
/// colored graph whose path-defect code is doubly even; any violation is a
/// hard error rather than a silently merged edge.
pub fn generators_to_adinkra(list: &GeneratorList) -> Result<RowOrderedValiseAdinkra, Error> {
    let report = list.check_relations();
    if !report.is_valid() {
        let first = report.failures().next().unwrap();
        return Err(Error::RelationsViolated(first.name.clone()));
    }
    let d = list.d();
    let n = list.n() as u32;
    if n > 64 {
        return Err(Error::guard("at most 64 generators supported".to_string()));
    }

    // Slots 0..d are the top row, d..2d the bottom row. Walk the slot graph,
    // labeling each slot with the XOR of edge colors along a path from slot 0.
    let inverses: Vec<SignedPermutationMatrix> =
        list.matrices().iter().map(|m| m.transpose()).collect();
    let mut labels: Vec<Option<u64>> = vec![None; 2 * d];
    labels[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let lab = labels[s].unwrap();
        for i in 0..n as usize {
            let t = if s < d {
                d + list.get(i).col_of(s)
            } else {
                inverses[i].col_of(s - d)
            };
            let color_bit = 1u64 << (n - 1 - i as u32);
            if labels[t].is_none() {
                labels[t] = Some(lab ^ color_bit);
                queue.push_back(t);
            }
        }
    }
    if labels.iter().any(|l| l.is_none()) {
        return Err(Error::invalid(
            "the matrix graph is disconnected; it is not a valise Adinkra".to_string(),
        ));
    }
    let labels: Vec<u64> = labels.into_iter().map(Option::unwrap).collect();

    // Closed walks span the code: every slot edge contributes
    // label_u + label_v + e_color.
    let mut defect_words: Vec<BitWord> = Vec::new();
    for j in 0..d {
        for i in 0..n as usize {
            let t = d + list.get(i).col_of(j);
            let defect = labels[j] ^ labels[t] ^ (1u64 << (n - 1 - i as u32));
            if defect != 0 {
                defect_words.push(BitWord::new(n, defect));
            }
        }
    }
    let span = BitMatrix::from_words(n, &defect_words)?.rref();
    let code = DoublyEvenCode::new(n, span)
        .map_err(|e| Error::invalid(format!("path-defect code is not doubly even: {e}")))?;
    let k = code.k();
    if 1u64 << (n - k) != 2 * d as u64 {
        return Err(Error::invalid(format!(
            "defect code dimension {k} is inconsistent with {} vertices",
            2 * d
        )));
    }

    let graph = Chromotopology::build_from_code(&code)?;
    let codewords: Vec<u64> = code.codewords()?.iter().map(|w| w.bits()).collect();
    let rep_of = |label: u64| -> u64 { codewords.iter().map(|&c| label ^ c).min().unwrap() };
    let mut slot_vertex = Vec::with_capacity(2 * d);
    for &label in &labels {
        let rep = BitWord::new(n, rep_of(label));
        let vi = graph
            .vertices()
            .binary_search(&rep)
            .map_err(|_| Error::invalid("slot label maps to an unknown coset".to_string()))?;
        slot_vertex.push(vi);
    }
    {
        let mut distinct = slot_vertex.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 2 * d {
            return Err(Error::invalid(
                "two slots map to the same coset; matrices do not describe a valise".to_string(),
            ));
        }
    }

    // Transfer signs onto the coset graph's edges.
    let inc = graph.incidence()?;
    let mut dash_bits = vec![u8::MAX; graph.num_edges()];
    for j in 0..d {
        for i in 0..n as usize {
            let t = d + list.get(i).col_of(j);
            let (vu, vv) = (slot_vertex[j], slot_vertex[t]);
            let ei = inc[vu][i];
            let e = &graph.edges()[ei];
            if !(e.u == vu.min(vv) && e.v == vu.max(vv)) {
                return Err(Error::invalid(
                    "slot edge does not match the coset graph".to_string(),
                ));
            }
            let dash = if list.get(i).sign_of(j) < 0 { 1 } else { 0 };
            if dash_bits[ei] != u8::MAX && dash_bits[ei] != dash {
                return Err(Error::invalid("conflicting dash assignment".to_string()));
            }
            dash_bits[ei] = dash;
        }
    }
    if dash_bits.iter().any(|&b| b == u8::MAX) {
        return Err(Error::invalid("some coset edge received no dash".to_string()));
    }

    let ranking = graph.bipartition();
    let adinkra = ValiseAdinkra::new(graph, ranking, Dashing::new(dash_bits))?;
    let graph_report = adinkra.graph().validate();
    if !graph_report.is_valid() {
        let first = graph_report.failures().next().unwrap();
        return Err(Error::invalid(format!(
            "rebuilt graph fails the {} axiom",
            first.name
        )));
    }
    let dash_report = validate_dashing(&adinkra);
    if !dash_report.is_valid() {
        return Err(Error::invalid(
            "rebuilt dashing violates cycle parity".to_string(),
        ));
    }
    let top = slot_vertex[..d].to_vec();
    let bottom = slot_vertex[d..].to_vec();
    RowOrderedValiseAdinkra::new(adinkra, top, bottom)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn reference_gr44() -> GeneratorList {
        let m = |rows: [[i64; 4]; 4]| {
            SignedPermutationMatrix::new(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
                .unwrap()
        };
        GeneratorList::new(vec![
            m([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
            m([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
            m([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]),
            m([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]),
        ])
        .unwrap()
    }

    #[test]
    fn reference_generators_satisfy_relations() {
        assert!(reference_gr44().check_relations().is_valid());
    }

    #[test]
    fn duplicated_identity_fails_at_first_pair() {
        let list = GeneratorList::new(vec![
            SignedPermutationMatrix::identity(2),
            SignedPermutationMatrix::identity(2),
        ])
        .unwrap();
        let report = list.check_relations();
        assert!(!report.is_valid());
        let first = report.failures().next().unwrap();
        assert!(first.name.contains("(1,2)"));
        assert_eq!(first.witness.as_deref(), Some("[2 0] [0 2]"));
    }

    #[test]
    fn unsigned_identity_swap_pair_fails_signed_relations() {
        // (I, swap) is a valid *unsigned* list; as signed matrices the sum is
        // 2·swap, not 0. A valid signing replaces swap by an antisymmetric one.
        let swap = SignedPermutationMatrix::new(&[vec![0, 1], vec![1, 0]]).unwrap();
        let list =
            GeneratorList::new(vec![SignedPermutationMatrix::identity(2), swap.clone()]).unwrap();
        assert!(!list.check_relations().is_valid());

        let anti = SignedPermutationMatrix::new(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let list = GeneratorList::new(vec![SignedPermutationMatrix::identity(2), anti]).unwrap();
        assert!(list.check_relations().is_valid());
    }

    #[test]
    fn unsign_examples() {
        let l2 = reference_gr44().get(1).clone();
        assert_eq!(
            unsign(&l2).dense(),
            vec![
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0],
            ]
        );
        let p = SignedPermutationMatrix::new(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(unsign(&p), p);
        let neg_i = SignedPermutationMatrix::identity(3).negated();
        assert!(unsign(&neg_i).is_identity());
    }

    #[test]
    fn matrix_validation_names_rows() {
        let err = SignedPermutationMatrix::new(&[vec![0, 2], vec![1, 0]]).unwrap_err();
        assert!(err.to_string().contains("row 1"));
        let err = SignedPermutationMatrix::new(&[vec![1, 0], vec![1, 0]]).unwrap_err();
        assert!(err.to_string().contains("row 2"));
        let err = SignedPermutationMatrix::new(&[vec![1, 1], vec![0, 1]]).unwrap_err();
        assert!(err.to_string().contains("row 1"));
    }

    #[test]
    fn signed_perm_is_orthogonal() {
        let l = reference_gr44();
        for m in l.matrices() {
            assert!(m.mul(&m.transpose()).is_identity());
        }
    }

    #[test]
    fn single_generator_roundtrip() {
        let one = GeneratorList::new(vec![SignedPermutationMatrix::identity(1)]).unwrap();
        let roa = generators_to_adinkra(&one).unwrap();
        assert_eq!(roa.adinkra().graph().num_vertices(), 2);
        assert_eq!(roa.adinkra().graph().num_edges(), 1);
        assert_eq!(roa.adinkra().dashing().bits(), &[0]);
        let back = adinkra_to_generators(&roa).unwrap();
        assert_eq!(back, one);
    }

    #[test]
    fn reference_list_roundtrip() {
        let list = reference_gr44();
        let roa = generators_to_adinkra(&list).unwrap();
        let g = roa.adinkra().graph();
        assert_eq!(g.n(), 4);
        assert_eq!(g.k(), 1);
        assert_eq!(g.num_vertices(), 8);
        assert!(g.validate().is_valid());
        assert!(validate_dashing(roa.adinkra()).is_valid());
        let back = adinkra_to_generators(&roa).unwrap();
        assert_eq!(back, list);
    }

    #[test]
    fn unsigning_matrices_equals_forgetting_dashes() {
        let list = reference_gr44();
        let roa = generators_to_adinkra(&list).unwrap();
        // reading edges while ignoring the dashing must reproduce |L_i|
        let g = roa.adinkra().graph();
        let inc = g.incidence().unwrap();
        for (i, m) in list.matrices().iter().enumerate() {
            let u = m.unsign();
            for (j, &t) in roa.top().iter().enumerate() {
                let ei = inc[t][i];
                let e = &g.edges()[ei];
                let other = if e.u == t { e.v } else { e.u };
                let k = roa.bottom().iter().position(|&b| b == other).unwrap();
                assert_eq!(u.entry(j, k), 1);
            }
        }
    }

    #[test]
    fn disconnected_input_is_rejected() {
        // a single 2×2 generator: two disjoint edges on 4 vertices
        let list = GeneratorList::new(vec![SignedPermutationMatrix::identity(2)]).unwrap();
        assert!(matches!(
            generators_to_adinkra(&list),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn relation_failure_blocks_rebuild() {
        let swap = SignedPermutationMatrix::new(&[vec![0, 1], vec![1, 0]]).unwrap();
        let list = GeneratorList::new(vec![SignedPermutationMatrix::identity(2), swap]).unwrap();
        assert!(matches!(
            generators_to_adinkra(&list),
            Err(Error::RelationsViolated(_))
        ));
    }

    #[test]
    fn matrix_list_json_schema() {
        let list = reference_gr44();
        let json = serde_json::to_string(&list.to_json()).unwrap();
        let parsed: MatrixListJson = serde_json::from_str(&json).unwrap();
        let back = GeneratorList::from_json(&parsed).unwrap();
        assert_eq!(back, list);

        let mut bad = list.to_json();
        bad.matrices[1][0][1] = 2;
        let err = GeneratorList::from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("matrix 2"));
        assert!(err.to_string().contains("row 1"));
    }
}
