//! Edge-colored coset graphs of doubly-even codes and the chromotopology
//! axioms.
//!
//! Vertices are the cosets of a code in Z_2^N, each named by its
//! lexicographically minimal member and listed in sorted order; an edge of
//! color i joins v+C and v+e_i+C.

use std::collections::HashMap;

use crate::adinkra::ValiseRanking;
use crate::bitlinalg::{BitMatrix, BitWord};
use crate::codes::DoublyEvenCode;
use crate::error::Error;
use crate::report::{Check, ValidationReport};

/// Largest N − k for which coset graphs are built (2^16 vertices).
const BUILD_GUARD: u32 = 16;

/// An undirected colored edge between vertex indices, stored with u ≤ v.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct ChromoEdge {
    pub u: usize,
    pub v: usize,
    pub color: u8,
}

/// An edge-colored graph on coset vertices, colors 1..=N.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chromotopology {
    n: u32,
    k: u32,
    vertices: Vec<BitWord>,
    edges: Vec<ChromoEdge>,
}

impl Chromotopology {
    /// Assembles a graph from explicit parts without validation; edges are
    /// normalized and put into canonical (min endpoint, color) order.
    pub fn from_parts(n: u32, k: u32, vertices: Vec<BitWord>, edges: Vec<(usize, usize, u8)>) -> Self {
        let mut edges: Vec<ChromoEdge> = edges
            .into_iter()
            .map(|(a, b, color)| ChromoEdge {
                u: a.min(b),
                v: a.max(b),
                color,
            })
            .collect();
        edges.sort_by_key(|e| (e.u, e.color, e.v));
        edges.dedup();
        Chromotopology {
            n,
            k,
            vertices,
            edges,
        }
    }

    /// Builds the coset graph of a doubly-even code. The result passes
    /// [`Chromotopology::validate`].
    pub fn build_from_code(code: &DoublyEvenCode) -> Result<Self, Error> {
        let graph = Self::coset_graph_unchecked(code.n(), code.generators())?;
        debug_assert_eq!(graph.k, code.k());
        debug_assert_eq!(graph.num_vertices() as u64, 1u64 << (code.n() - code.k()));
        Ok(graph)
    }

    /// Builds the coset graph of an arbitrary code, skipping the doubly-even
    /// requirement. For codes with words of weight < 3 the result is a
    /// multigraph or has loops, which `validate` reports.
    pub fn coset_graph_unchecked(n: u32, generators: &BitMatrix) -> Result<Self, Error> {
        if n == 0 || n > 64 {
            return Err(Error::invalid(format!("length must be 1..=64, got {n}")));
        }
        let rref = generators.rref();
        let k = rref.num_rows() as u32;
        if n - k > BUILD_GUARD {
            return Err(Error::guard(format!(
                "coset graph requires N - k <= {BUILD_GUARD}, got {}",
                n - k
            )));
        }
        let gens: Vec<u64> = rref.to_words().iter().map(|w| w.bits()).collect();
        if gens.len() > 20 {
            return Err(Error::guard("coset graph requires k <= 20".to_string()));
        }

        // Codewords by Gray-code expansion.
        let mut codewords = Vec::with_capacity(1 << k);
        let mut acc = 0u64;
        codewords.push(0u64);
        let mut prev_gray = 0u64;
        for m in 1u64..(1 << k) {
            let gray = m ^ (m >> 1);
            acc ^= gens[(gray ^ prev_gray).trailing_zeros() as usize];
            prev_gray = gray;
            codewords.push(acc);
        }

        // Reduce w to the canonical coset key by clearing pivot coordinates.
        let pivot_bits: Vec<u64> = gens
            .iter()
            .map(|&g| 1u64 << (63 - g.leading_zeros()))
            .collect();
        let reduce = |mut w: u64| -> u64 {
            for (g, &p) in gens.iter().zip(&pivot_bits) {
                if w & p != 0 {
                    w ^= g;
                }
            }
            w
        };

        // Free coordinates carry one representative per coset.
        let pivot_mask: u64 = pivot_bits.iter().fold(0, |a, &b| a | b);
        let free_bits: Vec<u64> = (0..n)
            .map(|i| 1u64 << i)
            .filter(|b| pivot_mask & b == 0)
            .collect();
        debug_assert_eq!(free_bits.len() as u32, n - k);

        let mut reps: Vec<u64> = Vec::with_capacity(1 << (n - k));
        for m in 0u64..(1 << (n - k)) {
            let mut label = 0u64;
            for (j, &b) in free_bits.iter().enumerate() {
                if (m >> j) & 1 == 1 {
                    label |= b;
                }
            }
            let rep = codewords.iter().map(|&c| label ^ c).min().unwrap();
            reps.push(rep);
        }
        reps.sort_unstable();

        let index: HashMap<u64, usize> = reps
            .iter()
            .enumerate()
            .map(|(i, &r)| (reduce(r), i))
            .collect();

        let mut edges = Vec::with_capacity(reps.len() * n as usize / 2);
        for (vi, &rep) in reps.iter().enumerate() {
            for color in 1..=n {
                let w = rep ^ (1u64 << (n - color));
                let ni = index[&reduce(w)];
                edges.push((vi, ni, color as u8));
            }
        }
        let vertices = reps.into_iter().map(|r| BitWord::new(n, r)).collect();
        Ok(Self::from_parts(n, k, vertices, edges))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[BitWord] {
        &self.vertices
    }

    /// Edges in canonical (min endpoint, color) order; this order defines the
    /// edge indexing used by dashings and dashing systems.
    pub fn edges(&self) -> &[ChromoEdge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// For each vertex, the incident edge index per color. Errors when the
    /// coloring is not proper.
    pub fn incidence(&self) -> Result<Vec<Vec<usize>>, Error> {
        let mut inc = vec![vec![usize::MAX; self.n as usize]; self.vertices.len()];
        for (ei, e) in self.edges.iter().enumerate() {
            if e.color == 0 || e.color as u32 > self.n {
                return Err(Error::invalid(format!("edge color {} out of range", e.color)));
            }
            let c = (e.color - 1) as usize;
            for &end in &[e.u, e.v] {
                if inc[end][c] != usize::MAX {
                    return Err(Error::invalid(format!(
                        "vertex {} has two edges of color {}",
                        end, e.color
                    )));
                }
                inc[end][c] = ei;
            }
            if e.u == e.v {
                return Err(Error::invalid(format!("loop at vertex {}", e.u)));
            }
        }
        for (v, row) in inc.iter().enumerate() {
            if let Some(c) = row.iter().position(|&ei| ei == usize::MAX) {
                return Err(Error::invalid(format!(
                    "vertex {} is missing color {}",
                    v,
                    c + 1
                )));
            }
        }
        Ok(inc)
    }

    /// For each color, the neighbor map vertex → vertex. Errors when the
    /// coloring is not proper.
    pub fn color_maps(&self) -> Result<Vec<Vec<usize>>, Error> {
        let inc = self.incidence()?;
        let maps = (0..self.n as usize)
            .map(|c| {
                (0..self.vertices.len())
                    .map(|v| {
                        let e = &self.edges[inc[v][c]];
                        if e.u == v {
                            e.v
                        } else {
                            e.u
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(maps)
    }

    /// Checks the chromotopology axioms, reporting a witness per failure.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let nv = self.vertices.len();

        // degree and proper coloring
        let mut degree = vec![0u32; nv];
        let mut per_color = vec![vec![0u32; self.n as usize + 1]; nv];
        let mut color_range_ok = true;
        for e in &self.edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
            if e.color == 0 || e.color as u32 > self.n {
                color_range_ok = false;
                continue;
            }
            per_color[e.u][e.color as usize] += 1;
            per_color[e.v][e.color as usize] += 1;
        }
        checks.push(match degree.iter().position(|&d| d != self.n) {
            None => Check::pass("regular"),
            Some(v) => Check::fail(
                "regular",
                format!("vertex {} ({}) has degree {}", v, self.vertices[v], degree[v]),
            ),
        });
        let improper = (0..nv).find_map(|v| {
            (1..=self.n as usize)
                .find(|&c| per_color[v][c] != 1)
                .map(|c| (v, c))
        });
        checks.push(match (&improper, color_range_ok) {
            (None, true) => Check::pass("properly colored"),
            (Some((v, c)), _) => Check::fail(
                "properly colored",
                format!(
                    "vertex {} ({}) has {} edges of color {}",
                    v, self.vertices[*v], per_color[*v][*c], c
                ),
            ),
            (None, false) => Check::fail("properly colored", "edge color out of range".to_string()),
        });

        // connected
        let mut seen = vec![false; nv];
        if nv > 0 {
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for e in &self.edges {
                    for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                        if a == v && !seen[b] {
                            seen[b] = true;
                            stack.push(b);
                        }
                    }
                }
            }
        }
        checks.push(match seen.iter().position(|&s| !s) {
            None => Check::pass("connected"),
            Some(v) => Check::fail(
                "connected",
                format!("vertex {} ({}) unreachable from vertex 0", v, self.vertices[v]),
            ),
        });

        // simple
        let mut simple = Check::pass("simple");
        if let Some(e) = self.edges.iter().find(|e| e.u == e.v) {
            simple = Check::fail("simple", format!("loop at vertex {}", e.u));
        } else {
            let mut pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
            pairs.sort_unstable();
            if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
                simple = Check::fail(
                    "simple",
                    format!("parallel edges between vertices {} and {}", w[0].0, w[0].1),
                );
            }
        }
        checks.push(simple);

        // bipartite by parity of representative weight
        checks.push(
            match self
                .edges
                .iter()
                .find(|e| self.vertices[e.u].weight() % 2 == self.vertices[e.v].weight() % 2)
            {
                None => Check::pass("bipartite"),
                Some(e) => Check::fail(
                    "bipartite",
                    format!(
                        "edge {}–{} (color {}) joins same-parity representatives",
                        self.vertices[e.u], self.vertices[e.v], e.color
                    ),
                ),
            },
        );

        // every two-color subgraph is a disjoint union of 4-cycles
        let four = match self.color_maps() {
            Err(_) => Check::fail(
                "two-colored four-cycles",
                "not evaluated: coloring is not proper".to_string(),
            ),
            Ok(maps) => {
                let mut failure = None;
                'outer: for i in 0..self.n as usize {
                    for j in (i + 1)..self.n as usize {
                        for v in 0..nv {
                            let a = maps[i][v];
                            let b = maps[j][a];
                            let c = maps[i][b];
                            let d = maps[j][c];
                            if d != v {
                                let mut cyc = vec![v];
                                let mut cur = v;
                                loop {
                                    cur = maps[i][cur];
                                    cyc.push(cur);
                                    cur = maps[j][cur];
                                    if cur == v {
                                        break;
                                    }
                                    cyc.push(cur);
                                }
                                failure = Some(format!(
                                    "colors {{{}, {}}} trace a {}-cycle through vertices {:?}",
                                    i + 1,
                                    j + 1,
                                    cyc.len(),
                                    cyc.iter().map(|&x| self.vertices[x].to_string()).collect::<Vec<_>>()
                                ));
                                break 'outer;
                            }
                        }
                    }
                }
                match failure {
                    None => Check::pass("two-colored four-cycles"),
                    Some(w) => Check::fail("two-colored four-cycles", w),
                }
            }
        };
        checks.push(four);

        ValidationReport::new(checks)
    }

    /// The valise ranking: rank 0 for even-weight representatives, rank 1 for
    /// odd. Every edge of a valid chromotopology crosses ranks.
    pub fn bipartition(&self) -> ValiseRanking {
        ValiseRanking::new(
            self.vertices
                .iter()
                .map(|w| (w.weight() % 2) as u8)
                .collect(),
        )
    }

    /// Graphviz rendering with vertices clustered by rank; colors map onto a
    /// fixed 8-color palette.
    pub fn to_dot(&self) -> String {
        render_dot(self, &self.bipartition(), None)
    }
}

pub(crate) const DOT_PALETTE: [&str; 8] = [
    "black", "red", "green", "blue", "orange", "purple", "brown", "cyan",
];

pub(crate) fn render_dot(
    g: &Chromotopology,
    ranking: &ValiseRanking,
    dashes: Option<&[u8]>,
) -> String {
    let mut out = String::from("graph valise {\n");
    for rank in [0u8, 1] {
        out.push_str(&format!("  subgraph cluster_rank{rank} {{\n    rank=same;\n"));
        for (v, w) in g.vertices().iter().enumerate() {
            if ranking.rank(v) == rank {
                out.push_str(&format!("    \"{w}\";\n"));
            }
        }
        out.push_str("  }\n");
    }
    for (ei, e) in g.edges().iter().enumerate() {
        let color = DOT_PALETTE[((e.color as usize) - 1) % DOT_PALETTE.len()];
        let style = match dashes {
            Some(d) if d[ei] == 1 => ", style=dashed",
            _ => "",
        };
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [color={}{}];\n",
            g.vertices()[e.u],
            g.vertices()[e.v],
            color,
            style
        ));
    }
    out.push_str("}\n");
    out
}
