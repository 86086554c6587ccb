//! Hitting probabilities on cells and the comparison of `alpha = f(1)` with `mu`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{ser_rat, ser_rat_vec, solve_integer};
use crate::cell::CellGraph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct HarmonicSolution {
    /// `H(v)` by vertex id.
    #[serde(serialize_with = "ser_rat_vec")]
    pub values: Vec<BigRational>,
    /// The neighbour of the origin, when it is unique.
    pub w: Option<usize>,
}

/// The harmonic function on the interior with the given boundary values.
pub fn harmonic_with_boundary(g: &CellGraph, boundary: &[BigRational]) -> Result<Vec<BigRational>> {
    let theta = g.theta();
    if boundary.len() != theta {
        return Err(Error::InvalidArgument(format!("{} boundary values for theta = {theta}", boundary.len())));
    }
    let m = g.n() - theta;
    let mut values: Vec<BigRational> = boundary.to_vec();
    values.resize(g.n(), BigRational::zero());
    if m == 0 {
        return Ok(values);
    }
    // deg(v) H(v) - sum_{interior u ~ v} H(u) = sum_{boundary b ~ v} H(b),
    // solved once per boundary vertex with unit data and combined
    let mut a = vec![vec![BigInt::zero(); m]; m];
    for v in theta..g.n() {
        a[v - theta][v - theta] = BigInt::from(g.degree(v));
        for &u in g.neighbors(v) {
            if u >= theta {
                a[v - theta][u - theta] -= 1;
            }
        }
    }
    for (b, hb) in boundary.iter().enumerate() {
        if hb.is_zero() {
            continue;
        }
        let rhs: Vec<BigInt> = (theta..g.n()).map(|v| BigInt::from(g.neighbors(v).iter().filter(|&&u| u == b).count())).collect();
        let sol = solve_integer(&a, &rhs)?;
        for (i, x) in sol.into_iter().enumerate() {
            values[theta + i] += x * hb;
        }
    }
    Ok(values)
}

/// `H(v)`: probability that a walk from `v` meets the origin before any other
/// boundary vertex.
pub fn harmonic_function(g: &CellGraph) -> Result<HarmonicSolution> {
    let mut boundary = vec![BigRational::zero(); g.theta()];
    boundary[0] = BigRational::one();
    let values = harmonic_with_boundary(g, &boundary)?;
    let w = (g.degree(0) == 1).then(|| g.neighbors(0)[0]);
    Ok(HarmonicSolution { values, w })
}

/// `1 / (1 - q)` where `q = mean of H over the origin's neighbours` is the
/// chance of returning to the origin before leaving through the boundary.
pub fn alpha_from_harmonic(g: &CellGraph) -> Result<BigRational> {
    let h = harmonic_function(g)?;
    alpha_from_values(g, &h.values)
}

fn alpha_from_values(g: &CellGraph, values: &[BigRational]) -> Result<BigRational> {
    let deg = g.degree(0);
    if deg == 0 {
        return Err(Error::InvalidArgument("origin is isolated".into()));
    }
    let sum = g.neighbors(0).iter().fold(BigRational::zero(), |acc, &u| acc + &values[u]);
    let q = sum / BigRational::from_integer(BigInt::from(deg));
    let escape = BigRational::one() - q;
    if escape.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(escape.recip())
}

#[derive(Clone, Debug, Serialize)]
pub struct DeletionStep {
    /// Original id of the removed vertex; `None` for the starting graph.
    pub deleted: Option<usize>,
    #[serde(serialize_with = "ser_rat")]
    pub h_w: BigRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaMuReport {
    pub theta: usize,
    #[serde(serialize_with = "ser_rat")]
    pub alpha: BigRational,
    pub mu: usize,
    pub is_path: bool,
    /// `"less"`, `"equal"` or `"greater"`.
    pub relation: String,
    /// `alpha < mu`, or `alpha = mu` on a path. `None` when `theta != 2`,
    /// where the comparison is only recorded.
    pub holds: Option<bool>,
    /// `H(w)` while vertices off a shortest `v1`–`v2` path are deleted.
    pub deletion_trace: Vec<DeletionStep>,
    pub trace_nondecreasing: bool,
    /// Length of the path the trace ends on.
    pub path_length: Option<usize>,
}

pub fn verify_alpha_mu(g: &CellGraph) -> Result<AlphaMuReport> {
    let mu = g.mu().ok_or_else(|| Error::InvalidCell(vec!["2|E| is not a multiple of theta(theta-1)".into()]))?;
    let alpha = alpha_from_harmonic(g)?;
    let mu_q = BigRational::from_integer(BigInt::from(mu));
    let relation = match alpha.cmp(&mu_q) {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    };
    let is_path = g.is_path();
    let theta = g.theta();
    let holds = (theta == 2).then(|| alpha < mu_q || (alpha == mu_q && is_path));
    let (deletion_trace, path_length) = if theta == 2 && g.degree(0) == 1 { deletion_trace(g)? } else { (Vec::new(), None) };
    let trace_nondecreasing = deletion_trace.windows(2).all(|s| s[0].h_w <= s[1].h_w);
    Ok(AlphaMuReport { theta, alpha, mu, is_path, relation: relation.into(), holds, deletion_trace, trace_nondecreasing, path_length })
}

/// Removes, one at a time, the vertex farthest from a fixed shortest
/// `v1`–`v2` path (largest id on ties) and re-solves `H(w)`. Removing the
/// farthest vertex keeps the graph connected, and the process ends on the path.
fn deletion_trace(g: &CellGraph) -> Result<(Vec<DeletionStep>, Option<usize>)> {
    let w = g.neighbors(0)[0];
    let path = shortest_path(g, 0, 1);
    let on_path: Vec<bool> = (0..g.n()).map(|v| path.contains(&v)).collect();
    let mut alive = vec![true; g.n()];
    let mut trace = vec![DeletionStep { deleted: None, h_w: harmonic_function(g)?.values[w].clone() }];
    loop {
        let dist = multi_source_distances(g, &path, &alive);
        let Some(x) = (0..g.n()).filter(|&v| alive[v] && !on_path[v]).max_by_key(|&v| (dist[v], v)) else {
            break;
        };
        alive[x] = false;
        let sub = induced(g, &alive)?;
        let h = harmonic_function(&sub.0)?;
        trace.push(DeletionStep { deleted: Some(x), h_w: h.values[sub.1[w]].clone() });
    }
    Ok((trace, Some(path.len() - 1)))
}

fn shortest_path(g: &CellGraph, from: usize, to: usize) -> Vec<usize> {
    let dist = g.distances_from(to);
    let mut path = vec![from];
    let mut v = from;
    while v != to {
        v = *g.neighbors(v).iter().filter(|&&u| dist[u] + 1 == dist[v]).min().expect("connected cell");
        path.push(v);
    }
    path
}

fn multi_source_distances(g: &CellGraph, sources: &[usize], alive: &[bool]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if alive[u] && dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Subgraph on the live vertices, with the map from old to new ids.
fn induced(g: &CellGraph, alive: &[bool]) -> Result<(CellGraph, Vec<usize>)> {
    let mut map = vec![usize::MAX; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if alive[v] {
            map[v] = next;
            next += 1;
        }
    }
    let edges: Vec<(usize, usize)> =
        g.edges().into_iter().filter(|&(a, b)| alive[a] && alive[b]).map(|(a, b)| (map[a], map[b])).collect();
    let boundary: Vec<usize> = (0..g.theta()).map(|b| map[b]).collect();
    Ok((CellGraph::new(next, &boundary, &edges, None)?, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::cell::{builtin, parse_cell};

    #[test]
    fn diamond_values() {
        let g = builtin("diamond").unwrap();
        let h = harmonic_function(&g).unwrap();
        // labels v1 v2 w1 w2 w3 w4
        assert_eq!(h.values, vec![rat(1, 1), rat(0, 1), rat(2, 3), rat(1, 3), rat(1, 2), rat(1, 2)]);
        assert_eq!(h.w, Some(2));
        assert_eq!(alpha_from_harmonic(&g).unwrap(), rat(3, 1));
    }

    #[test]
    fn path_closed_form() {
        for len in 2..7usize {
            let edges: Vec<(usize, usize)> = (0..len).map(|i| (i, i + 1)).collect();
            let g = CellGraph::new(len + 1, &[0, len], &edges, None).unwrap();
            let h = harmonic_function(&g).unwrap();
            let dist = g.distances_from(1);
            for v in 0..=len {
                assert_eq!(h.values[v], rat(dist[v] as i64, len as i64));
            }
            let rep = verify_alpha_mu(&g).unwrap();
            assert_eq!(rep.alpha, rat(len as i64, 1));
            assert_eq!((rep.relation.as_str(), rep.holds), ("equal", Some(true)));
        }
    }

    #[test]
    fn diamond_alpha_mu() {
        let rep = verify_alpha_mu(&builtin("diamond").unwrap()).unwrap();
        assert_eq!((rep.alpha.clone(), rep.mu, rep.is_path), (rat(3, 1), 6, false));
        assert_eq!(rep.holds, Some(true));
        assert!(rep.trace_nondecreasing);
        // ends on the path v1 w1 w3 w2 v2 of length 4
        assert_eq!(rep.deletion_trace.last().unwrap().h_w, rat(3, 4));
    }

    #[test]
    fn theta_three_not_asserted() {
        let rep = verify_alpha_mu(&builtin("sierpinski").unwrap()).unwrap();
        assert_eq!(rep.holds, None);
        assert!(rep.deletion_trace.is_empty());
    }

    #[test]
    fn rational_boundary_data() {
        let g = parse_cell("vertices 3\nboundary 0 2\nedge 0 1\nedge 1 2\n").unwrap();
        let v = harmonic_with_boundary(&g, &[rat(1, 3), rat(1, 5)]).unwrap();
        assert_eq!(v[2], rat(4, 15));
    }
}
