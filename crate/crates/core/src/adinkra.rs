//! Valise rankings and dashings.
//!
//! A dashing labels every edge with an element of Z_2 so that each 2-colored
//! 4-cycle carries an odd number of 1s. The labels form an affine system with
//! one variable per edge and one equation per cycle; counting, enumeration,
//! and adinkraizability all reduce to that system.

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::bitlinalg::{AffineSystem, BitMatrix, BitVec, BitWord};
use crate::chromotopology::{render_dot, Chromotopology};
use crate::error::Error;
use crate::report::{Check, ValidationReport};

/// Largest dashing count that may be materialized by enumeration.
const ENUMERATION_GUARD_LOG2: usize = 20;

/// A two-level ranking: rank 0 or 1 per vertex, every edge crossing ranks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValiseRanking {
    ranks: Vec<u8>,
}

impl ValiseRanking {
    pub fn new(ranks: Vec<u8>) -> Self {
        assert!(ranks.iter().all(|&r| r <= 1), "ranks must be 0 or 1");
        ValiseRanking { ranks }
    }

    pub fn rank(&self, v: usize) -> u8 {
        self.ranks[v]
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    /// Vertex indices at the given rank, ascending.
    pub fn class(&self, rank: u8) -> Vec<usize> {
        (0..self.ranks.len())
            .filter(|&v| self.ranks[v] == rank)
            .collect()
    }
}

/// A Z_2 label per edge, aligned with the graph's canonical edge order;
/// 1 renders as a dashed edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dashing {
    bits: Vec<u8>,
}

impl Dashing {
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "dash values must be 0 or 1");
        Dashing { bits }
    }

    pub fn solid(num_edges: usize) -> Self {
        Dashing {
            bits: vec![0; num_edges],
        }
    }

    pub fn get(&self, edge: usize) -> u8 {
        self.bits[edge]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn flip(&mut self, edge: usize) {
        self.bits[edge] ^= 1;
    }
}

/// A chromotopology together with a valise ranking and a dashing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValiseAdinkra {
    graph: Chromotopology,
    ranking: ValiseRanking,
    dashing: Dashing,
}

impl ValiseAdinkra {
    /// Structural assembly: lengths must line up and every edge must cross
    /// ranks. Dashing parity is checked by [`validate_dashing`], not here.
    pub fn new(
        graph: Chromotopology,
        ranking: ValiseRanking,
        dashing: Dashing,
    ) -> Result<Self, Error> {
        if ranking.ranks().len() != graph.num_vertices() {
            return Err(Error::SizeMismatch {
                expected: graph.num_vertices(),
                got: ranking.ranks().len(),
            });
        }
        if dashing.len() != graph.num_edges() {
            return Err(Error::SizeMismatch {
                expected: graph.num_edges(),
                got: dashing.len(),
            });
        }
        if let Some(e) = graph
            .edges()
            .iter()
            .find(|e| ranking.rank(e.u) == ranking.rank(e.v))
        {
            return Err(Error::invalid(format!(
                "edge {}–{} does not cross ranks",
                e.u, e.v
            )));
        }
        Ok(ValiseAdinkra {
            graph,
            ranking,
            dashing,
        })
    }

    pub fn graph(&self) -> &Chromotopology {
        &self.graph
    }

    pub fn ranking(&self) -> &ValiseRanking {
        &self.ranking
    }

    pub fn dashing(&self) -> &Dashing {
        &self.dashing
    }

    pub fn to_dot(&self) -> String {
        render_dot(&self.graph, &self.ranking, Some(self.dashing.bits()))
    }

    pub fn to_json(&self) -> AdinkraJson {
        AdinkraJson {
            n: self.graph.n(),
            k: self.graph.k(),
            vertices: self
                .graph
                .vertices()
                .iter()
                .enumerate()
                .map(|(i, w)| VertexJson {
                    rep: w.to_string(),
                    rank: self.ranking.rank(i),
                })
                .collect(),
            edges: self
                .graph
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeJson {
                    u: e.u,
                    v: e.v,
                    color: e.color,
                    dash: self.dashing.get(i),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &AdinkraJson) -> Result<Self, Error> {
        let vertices: Vec<BitWord> = json
            .vertices
            .iter()
            .map(|v| v.rep.parse())
            .collect::<Result<_, _>>()?;
        let nv = vertices.len();
        for e in &json.edges {
            if e.u >= nv || e.v >= nv {
                return Err(Error::invalid(format!(
                    "edge endpoint out of range: ({}, {})",
                    e.u, e.v
                )));
            }
        }
        // Keep dash values attached to edges through canonical re-sorting.
        let mut tagged: Vec<((usize, usize, u8), u8)> = json
            .edges
            .iter()
            .map(|e| ((e.u.min(e.v), e.u.max(e.v), e.color), e.dash))
            .collect();
        tagged.sort_by_key(|&((u, v, c), _)| (u, c, v));
        let graph = Chromotopology::from_parts(
            json.n,
            json.k,
            vertices,
            tagged.iter().map(|&((u, v, c), _)| (u, v, c)).collect(),
        );
        if graph.num_edges() != tagged.len() {
            return Err(Error::invalid("duplicate edges in input".to_string()));
        }
        let dashing = Dashing::new(tagged.iter().map(|&(_, d)| d).collect());
        let ranking = ValiseRanking::new(json.vertices.iter().map(|v| v.rank).collect());
        ValiseAdinkra::new(graph, ranking, dashing)
    }
}

/// Serialized shape of a valise Adinkra.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct AdinkraJson {
    pub n: u32,
    pub k: u32,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct VertexJson {
    pub rep: String,
    pub rank: u8,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    pub color: u8,
    pub dash: u8,
}

impl Serialize for ValiseAdinkra {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ValiseAdinkra {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = AdinkraJson::deserialize(deserializer)?;
        ValiseAdinkra::from_json(&json).map_err(D::Error::custom)
    }
}

/// One 2-colored 4-cycle: the four traversed edges (with multiplicity in
/// degenerate multigraphs) and the vertices visited.
#[derive(Clone, Debug)]
pub struct FourCycle {
    pub edges: [usize; 4],
    pub vertices: [usize; 4],
    pub colors: (u8, u8),
}

/// All distinct 2-colored 4-cycles, one per (color pair, cycle). Errors when
/// some alternating walk fails to close in four steps.
pub fn two_color_cycles(g: &Chromotopology) -> Result<Vec<FourCycle>, Error> {
    let maps = g.color_maps()?;
    let inc = g.incidence()?;
    let n = g.n() as usize;
    let mut cycles = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for v in 0..g.num_vertices() {
                let a = maps[i][v];
                let b = maps[j][a];
                let c = maps[i][b];
                let d = maps[j][c];
                if d != v {
                    return Err(Error::invalid(format!(
                        "colors {{{}, {}}} do not decompose into 4-cycles at vertex {}",
                        i + 1,
                        j + 1,
                        v
                    )));
                }
                if v == v.min(a).min(b).min(c) {
                    cycles.push(FourCycle {
                        edges: [inc[v][i], inc[a][j], inc[b][i], inc[c][j]],
                        vertices: [v, a, b, c],
                        colors: (i as u8 + 1, j as u8 + 1),
                    });
                }
            }
        }
    }
    // A degenerate two-vertex multigraph yields the same walk from both
    // endpoints; the min-vertex rule already kept one copy per cycle.
    Ok(cycles)
}

/// The dashing constraint system: one Z_2 variable per edge in canonical
/// (min endpoint, color) order, one equation per 2-colored 4-cycle with
/// right-hand side 1.
pub fn dashing_system(g: &Chromotopology) -> Result<AffineSystem, Error> {
    let cycles = two_color_cycles(g)?;
    let vars = g.num_edges();
    let mut coeffs = BitMatrix::new(vars);
    for cycle in &cycles {
        let mut row = BitVec::zero(vars);
        for &e in &cycle.edges {
            row.flip(e); // repeated edges cancel in Z_2
        }
        coeffs.push_row(row);
    }
    let mut rhs = BitVec::zero(cycles.len());
    for i in 0..cycles.len() {
        rhs.set(i, true);
    }
    AffineSystem::new(coeffs, rhs)
}

/// Number of valid dashings: 2^(E − rank) for a consistent system, 0 when
/// inconsistent. For coset graphs of doubly-even (N,k) codes this equals
/// 2^(2^(N−k)+k−1).
pub fn count_dashings(g: &Chromotopology) -> Result<BigInt, Error> {
    Ok(dashing_system(g)?.solution_count())
}

/// Whether any dashing exists.
pub fn is_adinkraizable(g: &Chromotopology) -> bool {
    match dashing_system(g) {
        Ok(sys) => sys.solve().is_some(),
        Err(_) => false,
    }
}

/// Streams every valid dashing exactly once: the particular solution plus
/// nullspace combinations in lexicographic combination order.
pub fn enumerate_dashings(g: &Chromotopology) -> Result<DashingIter, Error> {
    let sys = dashing_system(g)?;
    match sys.solve() {
        None => Ok(DashingIter {
            current: BitVec::zero(g.num_edges()),
            basis: Vec::new(),
            counter: 0,
            total: 0,
        }),
        Some(s) => {
            if s.nullity() > ENUMERATION_GUARD_LOG2 {
                return Err(Error::guard(format!(
                    "enumerate_dashings requires at most 2^{ENUMERATION_GUARD_LOG2} dashings, got 2^{}",
                    s.nullity()
                )));
            }
            let total = 1u64 << s.nullity();
            Ok(DashingIter {
                current: s.particular,
                basis: s.nullspace.rows().to_vec(),
                counter: 0,
                total,
            })
        }
    }
}

pub struct DashingIter {
    current: BitVec,
    basis: Vec<BitVec>,
    counter: u64,
    total: u64,
}

impl Iterator for DashingIter {
    type Item = Dashing;

    fn next(&mut self) -> Option<Dashing> {
        if self.counter >= self.total {
            return None;
        }
        let bits = (0..self.current.len())
            .map(|i| self.current.get(i) as u8)
            .collect();
        // Advance: counter bit 0 toggles the last basis vector, so ascending
        // counters walk combinations in lexicographic order.
        let m = self.basis.len();
        if self.counter + 1 < self.total {
            let changed = (self.counter ^ (self.counter + 1)) & ((1u64 << m) - 1);
            for j in 0..m {
                if (changed >> j) & 1 == 1 {
                    self.current.xor_assign(&self.basis[m - 1 - j]);
                }
            }
        }
        self.counter += 1;
        Some(Dashing::new(bits))
    }
}

impl ExactSizeIterator for DashingIter {
    fn len(&self) -> usize {
        (self.total - self.counter) as usize
    }
}

/// Checks the odd-parity condition on every 2-colored 4-cycle, with the
/// failing cycle as witness.
pub fn validate_dashing(a: &ValiseAdinkra) -> ValidationReport {
    let cycles = match two_color_cycles(a.graph()) {
        Err(e) => {
            return ValidationReport::new(vec![Check::fail(
                "two-colored four-cycle parity",
                format!("cycles undefined: {e}"),
            )])
        }
        Ok(c) => c,
    };
    let checks = cycles
        .iter()
        .map(|cycle| {
            let name = format!(
                "cycle colors ({},{}) at {}",
                cycle.colors.0,
                cycle.colors.1,
                a.graph().vertices()[cycle.vertices[0]]
            );
            let parity: u8 = cycle
                .edges
                .iter()
                .fold(0u8, |acc, &e| acc ^ a.dashing().get(e));
            if parity == 1 {
                Check::pass(name)
            } else {
                Check::fail(
                    name,
                    format!(
                        "even dash sum on edges {:?} through vertices {:?}",
                        cycle.edges,
                        cycle
                            .vertices
                            .iter()
                            .map(|&v| a.graph().vertices()[v].to_string())
                            .collect::<Vec<_>>()
                    ),
                )
            }
        })
        .collect();
    ValidationReport::new(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{enumerate_doubly_even, DoublyEvenCode};

    fn graph(n: u32, gens: &[&str]) -> Chromotopology {
        let ws: Vec<BitWord> = gens.iter().map(|s| s.parse().unwrap()).collect();
        let code = DoublyEvenCode::new(n, BitMatrix::from_words(n, &ws).unwrap()).unwrap();
        Chromotopology::build_from_code(&code).unwrap()
    }

    fn square() -> Chromotopology {
        Chromotopology::build_from_code(&DoublyEvenCode::trivial(2)).unwrap()
    }

    #[test]
    fn system_shapes() {
        let sys = dashing_system(&square()).unwrap();
        assert_eq!(sys.num_vars(), 4);
        assert_eq!(sys.num_equations(), 1);

        let sys = dashing_system(&graph(4, &["1111"])).unwrap();
        assert_eq!(sys.num_vars(), 16);
        assert_eq!(sys.num_equations(), 12);

        let cube = Chromotopology::build_from_code(&DoublyEvenCode::trivial(3)).unwrap();
        let sys = dashing_system(&cube).unwrap();
        assert_eq!(sys.num_vars(), 12);
        assert_eq!(sys.num_equations(), 6);
    }

    #[test]
    fn dashing_counts() {
        assert_eq!(count_dashings(&square()).unwrap(), BigInt::from(8));
        assert_eq!(count_dashings(&graph(4, &["1111"])).unwrap(), BigInt::from(256));
        let cube = Chromotopology::build_from_code(&DoublyEvenCode::trivial(3)).unwrap();
        assert_eq!(count_dashings(&cube).unwrap(), BigInt::from(128));
        let e8 = graph(8, &["11110000", "00111100", "00001111", "01010101"]);
        assert_eq!(count_dashings(&e8).unwrap(), BigInt::from(1) << 19);
    }

    #[test]
    fn counts_match_closed_form_small() {
        for n in 1..=6u32 {
            for k in 0..=n / 2 {
                for code in enumerate_doubly_even(n, k).unwrap() {
                    let g = Chromotopology::build_from_code(&code).unwrap();
                    let expected = BigInt::from(1) << ((1usize << (n - k)) + k as usize - 1);
                    assert_eq!(count_dashings(&g).unwrap(), expected, "({n},{k})");
                }
            }
        }
    }

    #[test]
    fn enumerate_square_dashings() {
        let g = square();
        let dashings: Vec<Dashing> = enumerate_dashings(&g).unwrap().collect();
        assert_eq!(dashings.len(), 8);
        // exactly the odd-parity assignments on 4 edges
        let mut seen: Vec<Vec<u8>> = dashings.iter().map(|d| d.bits().to_vec()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 8);
        for d in &dashings {
            assert_eq!(d.bits().iter().sum::<u8>() % 2, 1);
            let a = ValiseAdinkra::new(g.clone(), g.bipartition(), d.clone()).unwrap();
            assert!(validate_dashing(&a).is_valid());
        }
    }

    #[test]
    fn enumerate_edge_and_cube() {
        let edge = Chromotopology::build_from_code(&DoublyEvenCode::trivial(1)).unwrap();
        assert_eq!(enumerate_dashings(&edge).unwrap().count(), 2);

        let cube = Chromotopology::build_from_code(&DoublyEvenCode::trivial(3)).unwrap();
        let all: Vec<Dashing> = enumerate_dashings(&cube).unwrap().collect();
        assert_eq!(all.len(), 128);
        for d in &all {
            let a = ValiseAdinkra::new(cube.clone(), cube.bipartition(), d.clone()).unwrap();
            assert!(validate_dashing(&a).is_valid());
        }
    }

    #[test]
    fn enumeration_guard_refuses_huge_counts() {
        let big = Chromotopology::build_from_code(&DoublyEvenCode::trivial(5)).unwrap();
        // 2^(2^5 - 1) = 2^31 dashings
        assert!(enumerate_dashings(&big).is_err());
    }

    #[test]
    fn all_solid_square_fails_with_witness() {
        let g = square();
        let a = ValiseAdinkra::new(g.clone(), g.bipartition(), Dashing::solid(4)).unwrap();
        let report = validate_dashing(&a);
        assert!(!report.is_valid());
        assert_eq!(report.checks.len(), 1);
        assert!(report.checks[0].witness.as_ref().unwrap().contains("even dash sum"));

        let mut one = Dashing::solid(4);
        one.flip(0);
        let a = ValiseAdinkra::new(g.clone(), g.bipartition(), one).unwrap();
        assert!(validate_dashing(&a).is_valid());
    }

    #[test]
    fn adinkraizability() {
        assert!(is_adinkraizable(&square()));
        assert!(is_adinkraizable(&graph(4, &["1111"])));
        // the coset multigraph of the non-doubly-even code {00, 11}
        let gens = BitMatrix::from_words(2, &["11".parse::<BitWord>().unwrap()]).unwrap();
        let degenerate = Chromotopology::coset_graph_unchecked(2, &gens).unwrap();
        assert!(!is_adinkraizable(&degenerate));
        assert_eq!(count_dashings(&degenerate).unwrap(), BigInt::from(0));
    }

    #[test]
    fn vertex_flip_preserves_validity() {
        let g = graph(4, &["1111"]);
        let inc = g.incidence().unwrap();
        let first = enumerate_dashings(&g).unwrap().next().unwrap();
        for v in 0..g.num_vertices() {
            let mut flipped = first.clone();
            for &e in &inc[v] {
                flipped.flip(e);
            }
            let a = ValiseAdinkra::new(g.clone(), g.bipartition(), flipped).unwrap();
            assert!(validate_dashing(&a).is_valid(), "flip at vertex {v}");
        }
    }

    #[test]
    fn adinkra_json_roundtrip() {
        let g = graph(4, &["1111"]);
        let d = enumerate_dashings(&g).unwrap().next().unwrap();
        let a = ValiseAdinkra::new(g.clone(), g.bipartition(), d).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert!(json.contains("\"rep\""));
        let back: ValiseAdinkra = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn dot_marks_dashes() {
        let g = square();
        let mut d = Dashing::solid(4);
        d.flip(0);
        let a = ValiseAdinkra::new(g.clone(), g.bipartition(), d).unwrap();
        let dot = a.to_dot();
        assert!(dot.contains("style=dashed"));
    }
}
