use serde::Serialize;

use crate::algebra::{to_f64, Poly, RealBracket};
use crate::error::{Error, Result};
use crate::green::CellFunctions;

#[derive(Clone, Copy, Debug)]
pub struct ProbeOptions {
    /// Bound on the truncation tail at each point.
    pub tolerance: f64,
    pub max_order: usize,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { tolerance: 1e-10, max_order: 5000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub z: f64,
    /// Highest power summed.
    pub order: usize,
    pub green: f64,
    /// `G(z) (1 - z)^(-eta)`
    pub prefactor: f64,
    /// `z^(order+1) / (1 - z)`, valid since the coefficients lie in `[0, 1]`.
    pub tail_bound: f64,
}

fn mul_trunc(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_at(p: &Poly, s: &[f64], len: usize) -> Vec<f64> {
    let mut acc = vec![0.0; len];
    for c in p.coeffs().iter().rev() {
        acc = mul_trunc(&acc, s, len);
        acc[0] += to_f64(c);
    }
    acc
}

fn div_trunc(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut q = vec![0.0; len];
    for k in 0..len {
        let mut t = a[k];
        for j in 1..=k {
            if b[j] != 0.0 {
                t -= b[j] * q[k - j];
            }
        }
        q[k] = t / b[0];
    }
    q
}

/// Coefficients of `G` through `z^order` in floating point, by the same
/// product as the exact expansion.
pub fn green_series_f64(cf: &CellFunctions, order: usize) -> Vec<f64> {
    let len = order + 1;
    let mut g = vec![0.0; len];
    g[0] = 1.0;
    let mut inner = vec![0.0; len];
    if len > 1 {
        inner[1] = 1.0;
    }
    loop {
        let v = inner.iter().position(|&c| c != 0.0).unwrap_or(len);
        if v > order {
            return g;
        }
        let f = div_trunc(&poly_at(cf.f.num(), &inner, len), &poly_at(cf.f.den(), &inner, len), len);
        g = mul_trunc(&g, &f, len);
        inner = div_trunc(&poly_at(cf.d.num(), &inner, len), &poly_at(cf.d.den(), &inner, len), len);
    }
}

/// Tabulates `G(z) (1 - z)^(-eta)` at points of `(0, 1)`. The order at each
/// point is the least one whose geometric tail bound meets the tolerance.
pub fn singular_prefactor_probe(cf: &CellFunctions, eta: &RealBracket, points: &[f64], opts: ProbeOptions) -> Result<Vec<ProbeRow>> {
    if points.iter().any(|&z| !(z > 0.0 && z < 1.0)) {
        return Err(Error::InvalidArgument("probe points must lie in (0, 1)".into()));
    }
    if points.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("probe points must be increasing".into()));
    }
    let mut orders = Vec::with_capacity(points.len());
    for &z in points {
        // z^(n+1) / (1 - z) <= tol
        let n = ((opts.tolerance * (1.0 - z)).ln() / z.ln()).ceil().max(1.0) as usize;
        if n > opts.max_order {
            return Err(Error::PointTooClose { point: z, max_order: opts.max_order });
        }
        orders.push(n);
    }
    let Some(&top) = orders.iter().max() else {
        return Ok(Vec::new());
    };
    let coeffs = green_series_f64(cf, top);
    let eta = eta.midpoint_f64();
    Ok(points
        .iter()
        .zip(orders)
        .map(|(&z, n)| {
            let green = coeffs[..=n].iter().rev().fold(0.0, |acc, c| acc * z + c);
            ProbeRow { z, order: n, green, prefactor: green * (1.0 - z).powf(-eta), tail_bound: z.powi(n as i32 + 1) / (1.0 - z) }
        })
        .collect())
}
