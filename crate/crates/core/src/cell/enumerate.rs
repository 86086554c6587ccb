use std::collections::HashSet;

use super::{find_automorphism, validate_cell, CellGraph, ValidateOptions};
use crate::error::{Error, Result};

/// Largest vertex count the canonical codes can hold.
const MAX_VERTICES: usize = 16;

type Adj = Vec<Vec<bool>>;

/// Stable colour refinement. Vertices below `fixed` start in singleton
/// colours; the result is invariant under isomorphisms fixing them.
fn refine(adj: &Adj, fixed: usize) -> Vec<usize> {
    let n = adj.len();
    let mut color: Vec<usize> = (0..n)
        .map(|v| if v < fixed { v } else { fixed + adj[v].iter().filter(|&&e| e).count() })
        .collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| adj[v][u]).map(|u| color[u]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let before = color.iter().collect::<HashSet<_>>().len();
        if distinct.len() == before {
            return next;
        }
        color = next;
    }
}

fn encode(adj: &Adj, order: &[usize]) -> u128 {
    let mut code = 0u128;
    let n = order.len();
    for i in 0..n {
        for j in i + 1..n {
            code = (code << 1) | adj[order[i]][order[j]] as u128;
        }
    }
    code
}

/// Greatest encoding over orderings that list colour classes in order and
/// permute freely inside each class. Vertices below `fixed` keep their place.
fn canonical_code(adj: &Adj, fixed: usize) -> u128 {
    let color = refine(adj, fixed);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut keys: Vec<usize> = (fixed..adj.len()).map(|v| color[v]).collect();
    keys.sort_unstable();
    keys.dedup();
    for k in keys {
        classes.push((fixed..adj.len()).filter(|&v| color[v] == k).collect());
    }
    let mut order: Vec<usize> = (0..fixed).collect();
    let mut best = 0u128;
    permute_classes(adj, &mut classes, 0, &mut order, &mut best);
    best
}

fn permute_classes(adj: &Adj, classes: &mut [Vec<usize>], k: usize, order: &mut Vec<usize>, best: &mut u128) {
    if k == classes.len() {
        *best = (*best).max(encode(adj, order));
        return;
    }
    let mut class = classes[k].clone();
    heap_permutations(&mut class, &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        permute_classes(adj, classes, k + 1, order, best);
        order.truncate(len);
    });
}

fn heap_permutations(items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0; n];
    visit(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Connected graphs on `1..=max` vertices up to isomorphism, by size.
/// Every connected graph arises from a smaller one by adding a vertex that is
/// not a cut vertex, so single-vertex extensions reach all of them.
fn connected_graphs(max: usize) -> Vec<Vec<Adj>> {
    let mut levels: Vec<Vec<Adj>> = vec![Vec::new(), vec![vec![vec![false]]]];
    for m in 2..=max {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &levels[m - 1] {
            for mask in 1u32..(1 << (m - 1)) {
                let mut h: Adj = g.iter().map(|row| {
                    let mut r = row.clone();
                    r.push(false);
                    r
                }).collect();
                h.push(vec![false; m]);
                for v in 0..m - 1 {
                    if mask >> v & 1 == 1 {
                        h[v][m - 1] = true;
                        h[m - 1][v] = true;
                    }
                }
                if seen.insert(canonical_code(&h, 0)) {
                    next.push(h);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// All valid cells with branching number `theta` and at most `max_vertices`
/// vertices, one per boundary-preserving isomorphism class, ordered by
/// vertex count, edge count and canonical code.
///
/// Only `theta = 2` is supported. Such a cell is an interior connected graph
/// `H` plus the pendant edges `v1-a` and `v2-b`, with some automorphism of the
/// cell exchanging `v1` and `v2`.
pub fn enumerate_cells(theta: usize, max_vertices: usize) -> Result<Vec<CellGraph>> {
    if theta != 2 {
        return Err(Error::UnsupportedTheta(theta));
    }
    if max_vertices > MAX_VERTICES {
        return Err(Error::InvalidArgument(format!("max_vertices {max_vertices} exceeds {MAX_VERTICES}")));
    }
    if max_vertices < 3 {
        return Ok(Vec::new());
    }
    let interiors = connected_graphs(max_vertices - 2);
    let mut found: Vec<(usize, usize, u128, CellGraph)> = Vec::new();
    let mut seen = HashSet::new();
    for (m, graphs) in interiors.iter().enumerate().skip(1) {
        let n = m + 2;
        for h in graphs {
            for a in 0..m {
                for b in a..m {
                    let mut edges = vec![(0, a + 2), (1, b + 2)];
                    for x in 0..m {
                        for y in x + 1..m {
                            if h[x][y] {
                                edges.push((x + 2, y + 2));
                            }
                        }
                    }
                    let cell = CellGraph::new(n, &[0, 1], &edges, None)?;
                    if find_automorphism(&cell, &[(0, 1), (1, 0)]).is_none() {
                        continue;
                    }
                    let adj = cell.adjacency_matrix();
                    let mut swapped = adj.clone();
                    swapped.swap(0, 1);
                    for row in &mut swapped {
                        row.swap(0, 1);
                    }
                    let code = canonical_code(&adj, 2).max(canonical_code(&swapped, 2));
                    if !seen.insert((n, code)) {
                        continue;
                    }
                    if validate_cell(&cell, ValidateOptions::default()).is_valid() {
                        found.push((n, cell.edge_count(), code, cell));
                    }
                }
            }
        }
    }
    found.sort_by_key(|x| (x.0, x.1, std::cmp::Reverse(x.2)));
    Ok(found.into_iter().map(|x| x.3).collect())
}
