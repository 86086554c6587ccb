//! Finite approximants of the self-similar graph: every boundary clique of
//! the cell is replaced by a copy of the cell, `level - 1` times.

mod walk;

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cell::{bfs, validate_cell, CellGraph, ValidateOptions};
use crate::error::{Error, Result};

pub use walk::{exact_return_probs, monte_carlo, ReturnProbs, WalkStats};

/// Environment variable overriding [`DEFAULT_EDGE_BUDGET`].
pub const EDGE_BUDGET_VAR: &str = "SSGREEN_EDGE_BUDGET";
pub const DEFAULT_EDGE_BUDGET: u64 = 1_000_000;

/// Edge budget from the environment, falling back to the default.
pub fn edge_budget_from_env() -> u64 {
    std::env::var(EDGE_BUDGET_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_EDGE_BUDGET)
}

/// How a clique's vertices are matched to the boundary of the copy replacing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Identification {
    BoundaryOrder,
    /// Uniformly random matching per clique, from a seeded ChaCha8 stream.
    Random { seed: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct BlowupOptions {
    pub edge_budget: u64,
    /// Copies of the approximant glued at the origin.
    pub copies: usize,
    pub identification: Identification,
}

impl Default for BlowupOptions {
    fn default() -> Self {
        BlowupOptions { edge_budget: edge_budget_from_env(), copies: 1, identification: Identification::BoundaryOrder }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Approximant {
    pub theta: usize,
    pub level: usize,
    pub copies: usize,
    pub origin: usize,
    pub adjacency: Vec<Vec<usize>>,
    /// Vertices whose degree is smaller than in the infinite graph.
    pub defect_set: Vec<usize>,
    /// Largest `n` for which closed walks of length `n` from the origin
    /// cannot reach the defect set: `2 dist(origin, defects) - 1`.
    pub safe_horizon: usize,
}

impl Approximant {
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, nb) in self.adjacency.iter().enumerate() {
            out.extend(nb.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    pub fn distances_from_origin(&self) -> Vec<usize> {
        bfs(&self.adjacency, self.origin, |_| true)
    }

    /// Edge list in the cell file grammar, boundary and origin included.
    pub fn to_cell_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# level {} approximant, {} cop{}", self.level, self.copies, if self.copies == 1 { "y" } else { "ies" });
        let _ = writeln!(s, "vertices {}", self.n());
        let boundary: Vec<String> = (0..self.theta).map(|v| v.to_string()).collect();
        let _ = writeln!(s, "boundary {}", boundary.join(" "));
        let _ = writeln!(s, "origin {}", self.origin);
        for (a, b) in self.edges() {
            let _ = writeln!(s, "edge {a} {b}");
        }
        s
    }
}

/// `mu^level theta(theta-1)/2 * copies`, or `None` on overflow.
pub fn approximant_edges(g: &CellGraph, level: usize, copies: usize) -> Option<u128> {
    let mu = g.mu()? as u128;
    let per_clique = (g.theta() * (g.theta() - 1) / 2) as u128;
    mu.checked_pow(u32::try_from(level).ok()?)?.checked_mul(per_clique)?.checked_mul(copies as u128)
}

/// Distance between distinct boundary vertices of the cell.
fn boundary_distance(g: &CellGraph) -> usize {
    g.distances_from(0)[1]
}

/// `2 D^level - 1` with `D` the boundary distance of the cell; saturates.
pub fn safe_horizon_at(g: &CellGraph, level: usize) -> usize {
    let d = boundary_distance(g);
    u32::try_from(level).ok().and_then(|k| d.checked_pow(k)).and_then(|x| x.checked_mul(2)).map_or(usize::MAX, |x| x - 1)
}

/// Least level whose safe horizon reaches `n_max`.
pub fn sufficient_level(g: &CellGraph, n_max: usize) -> usize {
    let mut k = 1;
    while safe_horizon_at(g, k) < n_max {
        k += 1;
    }
    k
}

pub fn blowup(g: &CellGraph, level: usize, opts: &BlowupOptions) -> Result<Approximant> {
    if level == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    if opts.copies == 0 {
        return Err(Error::InvalidArgument("copies must be at least 1".into()));
    }
    let report = validate_cell(g, ValidateOptions::default());
    if !report.is_valid() {
        return Err(Error::InvalidCell(report.violations));
    }
    let edges = approximant_edges(g, level, opts.copies).unwrap_or(u128::MAX);
    if edges > opts.edge_budget as u128 {
        return Err(Error::BudgetExceeded { edges, budget: opts.edge_budget });
    }
    let theta = g.theta();
    let mut cell_cliques = report.clique_partition.expect("valid cells have a clique partition");
    for c in &mut cell_cliques {
        c.sort_unstable();
    }
    let mut rng = match opts.identification {
        Identification::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        Identification::BoundaryOrder => None,
    };

    let cell_edges = g.edges();
    let mut n = g.n();
    let mut edge_list = cell_edges.clone();
    let mut cliques = cell_cliques.clone();
    for _ in 1..level {
        let mut next_edges = Vec::with_capacity(edge_list.len() * cell_cliques.len());
        let mut next_cliques = Vec::with_capacity(cliques.len() * cell_cliques.len());
        for mut clique in cliques {
            if let Some(rng) = rng.as_mut() {
                clique.shuffle(rng);
            }
            let base = n;
            let map = |v: usize| if v < theta { clique[v] } else { base + v - theta };
            n += g.n() - theta;
            next_edges.extend(cell_edges.iter().map(|&(a, b)| (map(a), map(b))));
            next_cliques.extend(cell_cliques.iter().map(|q| q.iter().map(|&v| map(v)).collect::<Vec<_>>()));
        }
        edge_list = next_edges;
        cliques = next_cliques;
    }

    // glue copies at the origin
    let per_copy = n;
    let total = 1 + opts.copies * (per_copy - 1);
    let shift = |copy: usize, v: usize| if v == 0 { 0 } else { v + copy * (per_copy - 1) };
    let mut adjacency = vec![Vec::new(); total];
    let mut defect_set = Vec::new();
    for copy in 0..opts.copies {
        for &(a, b) in &edge_list {
            let (a, b) = (shift(copy, a), shift(copy, b));
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        defect_set.extend((1..theta).map(|v| shift(copy, v)));
    }
    for nb in &mut adjacency {
        nb.sort_unstable();
    }
    let dist = bfs(&adjacency, 0, |_| true);
    let reach = defect_set.iter().map(|&v| dist[v]).min().unwrap_or(usize::MAX);
    Ok(Approximant {
        theta,
        level,
        copies: opts.copies,
        origin: 0,
        adjacency,
        defect_set,
        safe_horizon: (2 * reach).saturating_sub(1),
    })
}

/// Sorted degrees per distance layer from the origin, up to (not including)
/// the defect set. Two approximants of the same infinite graph agree on
/// every layer below both defect distances.
pub fn degree_layers(a: &Approximant) -> Vec<Vec<usize>> {
    let dist = a.distances_from_origin();
    let reach = a.defect_set.iter().map(|&v| dist[v]).min().unwrap_or(0);
    let mut layers = vec![Vec::new(); reach];
    for v in 0..a.n() {
        if dist[v] < reach {
            layers[dist[v]].push(a.degree(v));
        }
    }
    for l in &mut layers {
        l.sort_unstable();
    }
    layers
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::builtin;

    fn opts() -> BlowupOptions {
        BlowupOptions { edge_budget: DEFAULT_EDGE_BUDGET, copies: 1, identification: Identification::BoundaryOrder }
    }

    #[test]
    fn level_one_is_the_cell() {
        for name in ["diamond", "path2", "sierpinski", "k4_corners"] {
            let g = builtin(name).unwrap();
            let a = blowup(&g, 1, &opts()).unwrap();
            assert_eq!(a.edges(), g.edges(), "{name}");
        }
    }

    #[test]
    fn sierpinski_level_two() {
        let a = blowup(&builtin("sierpinski").unwrap(), 2, &opts()).unwrap();
        assert_eq!((a.n(), a.edge_count()), (15, 27));
        assert_eq!(a.defect_set, vec![1, 2]);
    }

    #[test]
    fn edge_counts_and_horizons() {
        let g = builtin("diamond").unwrap();
        for k in 1..=4 {
            let a = blowup(&g, k, &opts()).unwrap();
            assert_eq!(a.edge_count() as u128, approximant_edges(&g, k, 1).unwrap());
            assert_eq!(a.safe_horizon, safe_horizon_at(&g, k));
        }
        assert_eq!(blowup(&g, 2, &opts()).unwrap().edge_count(), 36);
        assert_eq!((safe_horizon_at(&g, 1), safe_horizon_at(&g, 2)), (7, 31));
        assert_eq!(sufficient_level(&g, 20), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let g = builtin("diamond").unwrap();
        let small = BlowupOptions { edge_budget: 100, ..opts() };
        assert!(matches!(blowup(&g, 3, &small), Err(Error::BudgetExceeded { edges: 216, budget: 100 })));
    }

    #[test]
    fn degrees_stabilise_between_levels() {
        for name in ["diamond", "sierpinski", "k4_corners"] {
            let g = builtin(name).unwrap();
            let lo = degree_layers(&blowup(&g, 2, &opts()).unwrap());
            let hi = degree_layers(&blowup(&g, 3, &opts()).unwrap());
            assert_eq!(lo[..], hi[..lo.len()], "{name}");
        }
    }

    #[test]
    fn copies_share_the_origin() {
        let g = builtin("diamond").unwrap();
        let a = blowup(&g, 2, &BlowupOptions { copies: 3, ..opts() }).unwrap();
        assert_eq!(a.edge_count(), 3 * 36);
        assert_eq!(a.degree(0), 3);
        assert_eq!(a.defect_set.len(), 3);
    }

    #[test]
    fn exported_text_parses() {
        let a = blowup(&builtin("sierpinski").unwrap(), 2, &opts()).unwrap();
        let back = crate::cell::parse_cell(&a.to_cell_text()).unwrap();
        assert_eq!(back.edges(), a.edges());
    }
}
