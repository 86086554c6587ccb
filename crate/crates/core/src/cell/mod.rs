//! Cell graphs: finite simple graphs with an ordered set of boundary
//! (extremal) vertices, the first of which is the origin.

mod enumerate;
mod parse;
mod registry;
mod validate;

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::RationalMatrix;
use crate::error::{Error, Result};

pub use enumerate::enumerate_cells;
pub use parse::parse_cell;
pub use registry::{builtin, BUILTIN_NAMES};
pub use validate::{find_automorphism, validate_cell, CellReport, ValidateOptions};

/// A cell graph in canonical order: boundary vertices occupy ids
/// `0..theta` (origin at 0), interior vertices follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellGraph {
    theta: usize,
    adj: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl CellGraph {
    /// Builds a cell from arbitrary vertex ids. Vertices are renumbered so the
    /// boundary comes first in the given order; the rest keep their relative
    /// order. Structural axioms (simple, connected, non-adjacent boundary) are
    /// enforced here.
    pub fn new(n: usize, boundary: &[usize], edges: &[(usize, usize)], labels: Option<Vec<String>>) -> Result<Self> {
        let mut problems = Vec::new();
        if boundary.is_empty() {
            problems.push("boundary is empty".to_string());
        }
        for &b in boundary {
            if b >= n {
                problems.push(format!("boundary vertex {b} out of range"));
            }
        }
        for (i, b) in boundary.iter().enumerate() {
            if boundary[..i].contains(b) {
                problems.push(format!("boundary vertex {b} listed twice"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidCell(problems));
        }
        let mut order: Vec<usize> = boundary.to_vec();
        order.extend((0..n).filter(|v| !boundary.contains(v)));
        let mut new_id = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            new_id[v] = k;
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        let labels: Vec<String> = order.iter().map(|&v| labels[v].clone()).collect();

        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                problems.push(format!("edge {a}-{b} out of range"));
                continue;
            }
            let (x, y) = (new_id[a], new_id[b]);
            if x == y {
                problems.push(format!("loop at vertex {}", labels[x]));
            } else if adj[x].contains(&y) {
                problems.push(format!("duplicate edge {}-{}", labels[x], labels[y]));
            } else {
                adj[x].push(y);
                adj[y].push(x);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = CellGraph { theta: boundary.len(), adj, labels };
        for a in 0..g.theta {
            for b in a + 1..g.theta {
                if g.has_edge(a, b) {
                    problems.push(format!("boundary vertices {} and {} are adjacent", g.labels[a], g.labels[b]));
                }
            }
        }
        if problems.is_empty() && !g.is_connected() {
            problems.push("graph is disconnected".to_string());
        }
        if problems.is_empty() {
            Ok(g)
        } else {
            Err(Error::InvalidCell(problems))
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        v < self.theta
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Number of boundary cliques `2|E| / (theta(theta-1))`, when integral.
    pub fn mu(&self) -> Option<usize> {
        let pairs = self.theta * self.theta.saturating_sub(1);
        (pairs > 0 && (2 * self.edge_count()).is_multiple_of(pairs)).then(|| 2 * self.edge_count() / pairs)
    }

    /// BFS distances from `src`; `usize::MAX` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        bfs(&self.adj, src, |_| true)
    }

    fn is_connected(&self) -> bool {
        self.n() > 0 && self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// Whether the non-boundary vertices induce a connected subgraph.
    pub fn interior_connected(&self) -> bool {
        if self.n() == self.theta {
            return false;
        }
        let d = bfs(&self.adj, self.theta, |v| v >= self.theta);
        (self.theta..self.n()).all(|v| d[v] != usize::MAX)
    }

    /// A proper 2-colouring if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let d = self.distances_from(0);
        let colors: Vec<u8> = d.iter().map(|&x| (x % 2) as u8).collect();
        self.edges().iter().all(|&(a, b)| colors[a] != colors[b]).then_some(colors)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// A path whose endpoints are the two boundary vertices.
    pub fn is_path(&self) -> bool {
        self.theta == 2
            && self.edge_count() + 1 == self.n()
            && self.degree(0) == 1
            && self.degree(1) == 1
            && (2..self.n()).all(|v| self.degree(v) == 2)
    }

    /// Simple random walk matrix `P[x,y] = 1/deg(x)` for adjacent `x, y`.
    pub fn transition_matrix(&self) -> RationalMatrix {
        let mut p = RationalMatrix::zeros(self.n());
        for x in 0..self.n() {
            let w = BigRational::new(BigInt::from(1), BigInt::from(self.degree(x)));
            for &y in &self.adj[x] {
                p.set(x, y, w.clone());
            }
        }
        p
    }

    /// Same cell with vertex `v` renamed to `perm[v]`; the boundary order is
    /// carried along.
    pub fn relabeled(&self, perm: &[usize]) -> Result<CellGraph> {
        let n = self.n();
        let edges: Vec<(usize, usize)> = self.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let boundary: Vec<usize> = (0..self.theta).map(|b| perm[b]).collect();
        let mut labels = vec![String::new(); n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
        }
        CellGraph::new(n, &boundary, &edges, Some(labels))
    }

    /// Serializes in the cell-file grammar with canonical numeric ids;
    /// non-numeric labels are kept through `label` lines.
    pub fn to_cell_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "vertices {}", self.n()).unwrap();
        let b: Vec<String> = (0..self.theta).map(|v| v.to_string()).collect();
        writeln!(s, "boundary {}", b.join(" ")).unwrap();
        for (a, b) in self.edges() {
            writeln!(s, "edge {a} {b}").unwrap();
        }
        for (v, l) in self.labels.iter().enumerate() {
            if *l != v.to_string() && !l.is_empty() && !l.contains(char::is_whitespace) && !l.contains('#') {
                writeln!(s, "label {v} {l}").unwrap();
            }
        }
        s
    }

    /// Boundary-then-interior adjacency as a dense 0/1 matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        let mut m = vec![vec![false; n]; n];
        for (a, b) in self.edges() {
            m[a][b] = true;
            m[b][a] = true;
        }
        m
    }
}

/// BFS restricted to vertices accepted by `allow`.
pub(crate) fn bfs(adj: &[Vec<usize>], src: usize, allow: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if dist[u] == usize::MAX && allow(u) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn construction_reorders_boundary_first() {
        // path a - m - b with boundary given as (b, a)
        let g = CellGraph::new(3, &[2, 0], &[(0, 1), (1, 2)], Some(vec!["a".into(), "m".into(), "b".into()])).unwrap();
        assert_eq!(g.labels(), &["b", "a", "m"]);
        assert!(g.has_edge(0, 2) && g.has_edge(1, 2));
        assert!(g.is_path());
    }

    #[test]
    fn structural_errors() {
        let loops = CellGraph::new(3, &[0, 2], &[(0, 1), (1, 2), (1, 1)], None);
        assert!(matches!(loops, Err(Error::InvalidCell(_))));
        let dup = CellGraph::new(3, &[0, 2], &[(0, 1), (1, 2), (2, 1)], None);
        assert!(matches!(dup, Err(Error::InvalidCell(_))));
        let adjacent = CellGraph::new(2, &[0, 1], &[(0, 1)], None);
        assert!(matches!(adjacent, Err(Error::InvalidCell(_))));
        let disc = CellGraph::new(4, &[0, 2], &[(0, 1), (1, 2)], None);
        assert!(matches!(disc, Err(Error::InvalidCell(_))));
    }

    #[test]
    fn path2_transition_matrix() {
        let g = builtin("path2").unwrap();
        let p = g.transition_matrix();
        // canonical order v1, v2, middle
        assert_eq!(p.row(0), &[rat(0, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(p.row(1), &[rat(0, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(p.row(2), &[rat(1, 2), rat(1, 2), rat(0, 1)]);
    }

    #[test]
    fn text_round_trip() {
        for name in BUILTIN_NAMES {
            let g = builtin(name).unwrap();
            assert_eq!(parse_cell(&g.to_cell_text()).unwrap(), g, "{name}");
        }
    }
}
