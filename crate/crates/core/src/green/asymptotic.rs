use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{green_entry, root_width};
use crate::algebra::{poly_on_bracket, ser_rat, smallest_positive_root, to_f64, Poly, RationalMatrix, RealBracket};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticRow {
    pub n: usize,
    #[serde(serialize_with = "ser_rat")]
    pub coefficient: BigRational,
    pub predicted: f64,
    pub relative_error: f64,
}

/// Comparison of `[z^n] G_ii` with the dominant-eigenvalue prediction
/// `phi lambda^n` (plus `phi_- (-lambda)^n` when `-lambda` is also an eigenvalue).
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticReport {
    pub index: usize,
    pub lambda: RealBracket,
    pub phi: RealBracket,
    /// Weight of `-lambda`, present for periodic (bipartite) matrices.
    pub phi_negative: Option<RealBracket>,
    pub rows: Vec<AsymptoticRow>,
    /// For periodic matrices: every odd coefficient is exactly zero.
    pub odd_coefficients_zero: Option<bool>,
    /// Relative error never grows along the compared indices (even ones when periodic).
    pub error_nonincreasing: bool,
}

fn eval_at_neg(p: &Poly) -> Poly {
    Poly::new(p.coeffs().iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
}

/// `phi(l) = M_ii(l) / p'(l)` where `p` is the characteristic polynomial and
/// `M_ii` that of the principal minor.
fn weight(charpoly: &Poly, minor_poly: &Poly, l: &RealBracket) -> Result<RealBracket> {
    let top = poly_on_bracket(minor_poly, l);
    let bottom = poly_on_bracket(&charpoly.derivative(), l);
    top.div(&bottom)
}

pub fn asymptotic_check(t: &RationalMatrix, i: usize, n_max: usize) -> Result<AsymptoticReport> {
    let n = t.dim();
    let m = t.resolvent_matrix();
    let delta = m.det();
    let delta_ii = m.minor(i, i).det();
    // p(l) = l^n det(I - T/l)
    let charpoly = delta.reversed(n + 1);
    let minor_poly = delta_ii.reversed(n);
    let rho = smallest_positive_root(&delta, &root_width())?;
    let lambda = RealBracket::new(rho.high().recip(), rho.low().recip());
    let phi = weight(&charpoly, &minor_poly, &lambda)?;
    // periodic iff the spectrum is symmetric: p(-l) = ±p(l)
    let neg = eval_at_neg(&charpoly);
    let periodic = neg == charpoly || neg == -&charpoly;
    let phi_negative = if periodic { Some(weight(&charpoly, &minor_poly, &lambda.neg())?) } else { None };

    let series = green_entry(t, i, i).series(n_max + 1)?;
    let (l, p, q) = (lambda.midpoint_f64(), phi.midpoint_f64(), phi_negative.as_ref().map(RealBracket::midpoint_f64));
    let rows: Vec<AsymptoticRow> = (0..=n_max)
        .map(|k| {
            let c = series.coeffs()[k].clone();
            let mut predicted = p * l.powi(k as i32);
            if let Some(q) = q {
                predicted += q * (-l).powi(k as i32);
            }
            let relative_error = if predicted == 0.0 { 0.0 } else { (to_f64(&c) / predicted - 1.0).abs() };
            AsymptoticRow { n: k, coefficient: c, predicted, relative_error }
        })
        .collect();
    let odd_coefficients_zero = periodic.then(|| rows.iter().filter(|r| r.n % 2 == 1).all(|r| r.coefficient.is_zero()));
    let compared: Vec<f64> = rows.iter().filter(|r| !periodic || r.n % 2 == 0).map(|r| r.relative_error).collect();
    let error_nonincreasing = compared.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    Ok(AsymptoticReport { index: i, lambda, phi, phi_negative, rows, odd_coefficients_zero, error_nonincreasing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::cell::builtin;

    #[test]
    fn diamond_origin_entry() {
        let p = builtin("diamond").unwrap().transition_matrix();
        let rep = asymptotic_check(&p, 0, 40).unwrap();
        assert_eq!(rep.rows[8].coefficient, rat(14, 81));
        assert_eq!(rep.odd_coefficients_zero, Some(true));
        // stationary mass deg/2|E| = 1/12, doubled by the period
        assert!((rep.phi.midpoint_f64() + rep.phi_negative.as_ref().unwrap().midpoint_f64() - 1.0 / 6.0).abs() < 1e-12);
        assert!((rep.lambda.midpoint_f64() - 1.0).abs() < 1e-15);
        assert!(rep.error_nonincreasing);
    }

    #[test]
    fn path2_even_coefficients() {
        let p = builtin("path2").unwrap().transition_matrix();
        let rep = asymptotic_check(&p, 0, 10).unwrap();
        for r in &rep.rows {
            assert_eq!(r.coefficient.is_zero(), r.n % 2 == 1);
        }
        assert!(rep.rows[10].relative_error < 1e-12);
    }
}
