use serde::Serialize;

use super::CellGraph;

#[derive(Clone, Copy, Debug)]
pub struct ValidateOptions {
    /// Run the automorphism search for double transitivity.
    pub check_automorphisms: bool,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { check_automorphisms: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub vertices: usize,
    pub edges: usize,
    pub theta: usize,
    /// Number of cliques `K_theta` in an edge partition; `None` when
    /// `2|E|` is not a multiple of `theta(theta-1)`.
    pub mu: Option<usize>,
    pub bipartite: bool,
    pub is_path: bool,
    pub clique_partition: Option<Vec<Vec<usize>>>,
    /// `None` when the check was skipped.
    pub doubly_transitive: Option<bool>,
    pub violations: Vec<String>,
}

impl CellReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the cell-level axioms of a symmetrically self-similar graph.
///
/// Beyond the structural invariants enforced by [`CellGraph::new`], a valid
/// cell has `theta >= 2`, a connected interior, an edge partition into
/// copies of `K_theta`, every boundary vertex of degree `theta - 1` (so the
/// blow-up limit has bounded degree), and an automorphism group acting
/// doubly transitively on the boundary.
pub fn validate_cell(g: &CellGraph, opts: ValidateOptions) -> CellReport {
    let theta = g.theta();
    let edges = g.edge_count();
    let mut violations = Vec::new();
    if theta < 2 {
        violations.push(format!("branching number {theta} < 2"));
    }
    if !g.interior_connected() {
        violations.push("interior vertices do not induce a connected graph".into());
    }
    let mu = g.mu();
    let clique_partition = if theta >= 2 { clique_partition(g) } else { None };
    if theta >= 2 && clique_partition.is_none() {
        violations.push(format!("edges admit no partition into copies of K_{theta}"));
    }
    for b in 0..theta {
        if theta >= 2 && g.degree(b) != theta - 1 {
            violations.push(format!(
                "boundary vertex {} has degree {} (expected {}); blow-up degrees would be unbounded",
                g.labels()[b],
                g.degree(b),
                theta - 1
            ));
        }
    }
    let doubly_transitive = if opts.check_automorphisms && theta >= 2 { Some(doubly_transitive(g)) } else { None };
    if doubly_transitive == Some(false) {
        violations.push("automorphism group is not doubly transitive on the boundary".into());
    }
    CellReport {
        vertices: g.n(),
        edges,
        theta,
        mu,
        bipartite: g.is_bipartite(),
        is_path: g.is_path(),
        clique_partition,
        doubly_transitive,
        violations,
    }
}

fn doubly_transitive(g: &CellGraph) -> bool {
    let theta = g.theta();
    (0..theta).all(|x| (0..theta).filter(|&y| y != x).all(|y| find_automorphism(g, &[(0, x), (1, y)]).is_some()))
}

/// Vertex invariant preserved by boundary-preserving automorphisms.
fn invariants(g: &CellGraph) -> Vec<(bool, usize, Vec<usize>)> {
    let dists: Vec<Vec<usize>> = (0..g.theta()).map(|b| g.distances_from(b)).collect();
    (0..g.n())
        .map(|v| {
            let mut profile: Vec<usize> = dists.iter().map(|d| d[v]).collect();
            profile.sort_unstable();
            (g.is_boundary(v), g.degree(v), profile)
        })
        .collect()
}

/// Searches for an automorphism that maps the boundary onto itself and
/// sends each `a` to `b` for the prescribed pairs. Returns the permutation.
pub fn find_automorphism(g: &CellGraph, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = g.n();
    let inv = invariants(g);
    let adj = g.adjacency_matrix();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(a, b) in fixed {
        if inv[a] != inv[b] || (image[a] != usize::MAX && image[a] != b) || (used[b] && image[a] != b) {
            return None;
        }
        image[a] = b;
        used[b] = true;
    }
    for &(a, _) in fixed {
        for &(c, _) in fixed {
            if adj[a][c] != adj[image[a]][image[c]] {
                return None;
            }
        }
    }
    // BFS order from the fixed vertices so each new vertex has a placed neighbour
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for &(a, _) in fixed {
        if !placed[a] {
            placed[a] = true;
            order.push(a);
        }
    }
    if order.is_empty() {
        placed[0] = true;
        order.push(0);
    }
    let mut head = 0;
    while order.len() < n {
        if head == order.len() {
            let v = (0..n).find(|&v| !placed[v]).unwrap();
            placed[v] = true;
            order.push(v);
            continue;
        }
        for &u in g.neighbors(order[head]) {
            if !placed[u] {
                placed[u] = true;
                order.push(u);
            }
        }
        head += 1;
    }
    let start = fixed.iter().map(|&(a, _)| a).collect::<std::collections::HashSet<_>>().len();
    if extend(g, &adj, &inv, &order, start, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn extend(
    g: &CellGraph,
    adj: &[Vec<bool>],
    inv: &[(bool, usize, Vec<usize>)],
    order: &[usize],
    pos: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let anchor = g.neighbors(v).iter().copied().find(|&u| image[u] != usize::MAX);
    let candidates: Vec<usize> = match anchor {
        Some(u) => g.neighbors(image[u]).to_vec(),
        None => (0..g.n()).collect(),
    };
    for c in candidates {
        if used[c] || inv[c] != inv[v] {
            continue;
        }
        let consistent = order[..pos].iter().all(|&w| adj[v][w] == adj[c][image[w]]);
        if !consistent {
            continue;
        }
        image[v] = c;
        used[c] = true;
        if extend(g, adj, inv, order, pos + 1, image, used) {
            return true;
        }
        image[v] = usize::MAX;
        used[c] = false;
    }
    false
}

/// Partition of the edge set into `theta`-cliques by exact-cover search.
fn clique_partition(g: &CellGraph) -> Option<Vec<Vec<usize>>> {
    let theta = g.theta();
    let edges = g.edges();
    if theta == 2 {
        return Some(edges.iter().map(|&(a, b)| vec![a, b]).collect());
    }
    if !edges.len().is_multiple_of(theta * (theta - 1) / 2) {
        return None;
    }
    let n = g.n();
    let mut covered = vec![vec![false; n]; n];
    let mut out = Vec::new();
    if cover(g, theta, &edges, &mut covered, &mut out) {
        Some(out)
    } else {
        None
    }
}

fn cover(g: &CellGraph, theta: usize, edges: &[(usize, usize)], covered: &mut [Vec<bool>], out: &mut Vec<Vec<usize>>) -> bool {
    let Some(&(a, b)) = edges.iter().find(|&&(a, b)| !covered[a][b]) else {
        return true;
    };
    // vertices joined to both a and b by uncovered edges
    let pool: Vec<usize> = g
        .neighbors(a)
        .iter()
        .copied()
        .filter(|&c| c != b && g.has_edge(b, c) && !covered[a][c] && !covered[b][c])
        .collect();
    let mut chosen = vec![a, b];
    choose(g, theta, edges, covered, out, &pool, 0, &mut chosen)
}

#[allow(clippy::too_many_arguments)]
fn choose(
    g: &CellGraph,
    theta: usize,
    edges: &[(usize, usize)],
    covered: &mut [Vec<bool>],
    out: &mut Vec<Vec<usize>>,
    pool: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == theta {
        let mut clique = chosen.clone();
        clique.sort_unstable();
        set_cover(covered, &clique, true);
        out.push(clique.clone());
        if cover(g, theta, edges, covered, out) {
            return true;
        }
        out.pop();
        set_cover(covered, &clique, false);
        return false;
    }
    for i in from..pool.len() {
        let c = pool[i];
        if chosen.iter().all(|&x| g.has_edge(x, c) && !covered[x][c]) {
            chosen.push(c);
            if choose(g, theta, edges, covered, out, pool, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn set_cover(covered: &mut [Vec<bool>], clique: &[usize], value: bool) {
    for &x in clique {
        for &y in clique {
            if x != y {
                covered[x][y] = value;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::builtin;

    #[test]
    fn builtin_reports() {
        let d = validate_cell(&builtin("diamond").unwrap(), ValidateOptions::default());
        assert_eq!((d.theta, d.mu, d.bipartite, d.is_path, d.doubly_transitive), (2, Some(6), true, false, Some(true)));
        assert!(d.is_valid(), "{:?}", d.violations);
        let p = validate_cell(&builtin("path2").unwrap(), ValidateOptions::default());
        assert_eq!((p.mu, p.is_path), (Some(2), true));
        let s = validate_cell(&builtin("sierpinski").unwrap(), ValidateOptions::default());
        assert_eq!((s.theta, s.mu, s.bipartite), (3, Some(3), false));
        assert_eq!(s.clique_partition.as_ref().map(Vec::len), Some(3));
        assert!(s.is_valid(), "{:?}", s.violations);
        let c = validate_cell(&builtin("k4_corners").unwrap(), ValidateOptions::default());
        assert_eq!((c.theta, c.mu), (4, Some(5)));
        assert!(c.is_valid(), "{:?}", c.violations);
    }

    #[test]
    fn skipped_automorphism_check_is_marked() {
        let r = validate_cell(&builtin("diamond").unwrap(), ValidateOptions { check_automorphisms: false });
        assert_eq!(r.doubly_transitive, None);
        assert!(r.is_valid());
    }

    #[test]
    fn four_cycle_breaks_bounded_degree() {
        let g = CellGraph::new(4, &[0, 2], &[(0, 1), (1, 2), (2, 3), (3, 0)], None).unwrap();
        let r = validate_cell(&g, ValidateOptions::default());
        assert_eq!(r.doubly_transitive, Some(true));
        assert!(r.violations.iter().any(|v| v.contains("degree")));
        // also the interior {1, 3} is disconnected
        assert_eq!(r.violations.len(), 3);
    }

    #[test]
    fn asymmetric_cell_is_not_doubly_transitive() {
        // v1 - a - b - v2 with a pendant c on a
        let g = CellGraph::new(5, &[0, 1], &[(0, 2), (2, 3), (3, 1), (2, 4)], None).unwrap();
        let r = validate_cell(&g, ValidateOptions::default());
        assert_eq!(r.doubly_transitive, Some(false));
        assert!(!r.is_valid());
    }
}
