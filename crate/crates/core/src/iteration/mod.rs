//! The Green's function of the infinite graph from `G(z) = f(z) G(d(z))`,
//! and the invariants `tau`, `alpha`, `mu`, `eta`.

mod probe;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{ser_rat, IsolatedRoot, Poly, PowerSeries, RatFunc, RealBracket};
use crate::cell::CellGraph;
use crate::error::{Error, Result};
use crate::green::{cell_functions, CellFunctions};

pub use probe::{green_series_f64, singular_prefactor_probe, ProbeOptions, ProbeRow};

/// Truncated Green's function with the number of product factors used.
#[derive(Clone, Debug, Serialize)]
pub struct GreenSeries {
    pub series: PowerSeries,
    /// Factors `f(d^k(z))` multiplied, `k = 0..factors_used`.
    pub factors_used: usize,
    /// Highest power known.
    pub order: usize,
}

fn var_series(order: usize) -> PowerSeries {
    PowerSeries::from_poly(&Poly::var(), order)
}

/// `G = prod_k f(d^k(z))` through `z^order`. The factor with
/// `valuation(d^k) = v^k > order` is `1 + O(z^(order+1))`, so the product
/// stops at the first such `k`.
pub fn green_series(cf: &CellFunctions, order: usize) -> Result<GreenSeries> {
    let v = cf.d.num().valuation().unwrap_or(usize::MAX);
    if v < 2 {
        return Err(Error::Invariant(format!("valuation of d is {v}, need at least 2")));
    }
    let len = order + 1;
    let mut g = PowerSeries::from_poly(&Poly::one(), len);
    let mut inner = var_series(len);
    let mut factors = 0;
    while inner.valuation() <= order {
        g = g.mul(&cf.f.compose_series(&inner)?);
        factors += 1;
        inner = cf.d.compose_series(&inner)?;
    }
    Ok(GreenSeries { series: g, factors_used: factors, order })
}

/// Fixed-point iteration `G <- f (G o d)` from `G = 1`. Each pass multiplies
/// the number of correct coefficients by `valuation(d)`; used as an
/// independent check of [`green_series`].
pub fn green_series_by_recursion(cf: &CellFunctions, order: usize) -> Result<PowerSeries> {
    let len = order + 1;
    let d = cf.d.series(len)?;
    let f = cf.f.series(len)?;
    if d.valuation() < 2 {
        return Err(Error::Invariant("valuation of d below 2".into()));
    }
    let mut g = PowerSeries::from_poly(&Poly::one(), 1);
    while g.order() < len {
        let known = g.compose(&d)?;
        g = f.mul(&known);
    }
    Ok(g.truncate(len))
}

/// `G - f (G o d)` on the known coefficients; all zero for a correct `G`.
pub fn functional_equation_residual(cf: &CellFunctions, g: &PowerSeries) -> Result<PowerSeries> {
    let d = cf.d.series(g.order())?;
    let f = cf.f.series(g.order())?;
    Ok(g.sub(&f.mul(&g.compose(&d)?)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CellInvariants {
    pub theta: usize,
    pub mu: usize,
    #[serde(serialize_with = "ser_rat")]
    pub tau: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub alpha: BigRational,
    /// `log mu / log tau - 1`
    pub eta: RealBracket,
    /// `-log alpha / log tau`
    pub eta_alt: RealBracket,
    pub eta_brackets_overlap: bool,
    /// `tau = 2` exactly; the weakest value the axioms allow.
    pub tau_is_two: bool,
    pub rho_f: Option<IsolatedRoot>,
    pub rho_d: Option<IsolatedRoot>,
    pub bipartite: bool,
    pub is_path: bool,
}

pub fn invariants(g: &CellGraph) -> Result<CellInvariants> {
    invariants_with(g, &cell_functions(g)?)
}

pub fn invariants_with(g: &CellGraph, cf: &CellFunctions) -> Result<CellInvariants> {
    let theta = g.theta();
    let mu = g.mu().ok_or_else(|| Error::InvalidCell(vec!["2|E| is not a multiple of theta(theta-1)".into()]))?;
    let one = BigRational::one();
    let tau = cf.d.derivative().eval(&one)?;
    let alpha = cf.f.eval(&one)?;
    if tau <= one {
        return Err(Error::Invariant(format!("tau = {tau} must exceed 1")));
    }
    if !alpha.is_positive() {
        return Err(Error::Invariant(format!("alpha = {alpha} must be positive")));
    }
    let ln_tau = RealBracket::ln(&tau)?;
    let ln_mu = RealBracket::ln(&BigRational::from_integer(BigInt::from(mu)))?;
    let eta = ln_mu.div(&ln_tau)?.add_rational(&-one.clone());
    let eta_alt = RealBracket::ln(&alpha)?.div(&ln_tau)?.neg();
    Ok(CellInvariants {
        theta,
        mu,
        tau_is_two: tau == BigRational::from_integer(BigInt::from(2)),
        eta_brackets_overlap: eta.overlaps(&eta_alt),
        tau,
        alpha,
        eta,
        eta_alt,
        rho_f: cf.spectral_f.rho.clone(),
        rho_d: cf.spectral_d.rho.clone(),
        bipartite: g.is_bipartite(),
        is_path: g.is_path(),
    })
}

/// Hypotheses on `b` under which `y = a (y o b)` forces `y` to be either
/// algebraic with a rational power, or differentially transcendental.
#[derive(Clone, Debug, Serialize)]
pub struct IterationHypotheses {
    pub b_at_zero_vanishes: bool,
    /// `b'(0)`, when defined.
    pub b_prime_at_zero: Option<String>,
    /// `b'(0)` is 0 or a root of unity (for rationals: 0, 1, -1).
    pub b_prime_admissible: bool,
    /// Order of vanishing of `b` at 0.
    pub valuation: Option<usize>,
    /// No iterate of `b` is the identity; certified by `valuation >= 2`, since
    /// then `valuation(b^k) = valuation^k`.
    pub no_identity_iterate: bool,
    pub is_identity: bool,
    pub all_hold: bool,
}

pub fn check_iteration_hypotheses(b: &RatFunc) -> IterationHypotheses {
    let zero = BigRational::zero();
    let defined = !b.den().coeff(0).is_zero();
    let b0 = defined && b.num().coeff(0).is_zero();
    let b1 = if defined { b.derivative().eval(&zero).ok() } else { None };
    let admissible = b1.as_ref().is_some_and(|x| x.is_zero() || x.abs().is_one());
    let valuation = if defined { b.num().valuation() } else { None };
    let is_identity = *b == RatFunc::var();
    let no_identity_iterate = valuation.is_some_and(|v| v >= 2);
    IterationHypotheses {
        b_at_zero_vanishes: b0,
        b_prime_at_zero: b1.map(|x| x.to_string()),
        b_prime_admissible: admissible,
        valuation,
        no_identity_iterate,
        is_identity,
        all_hold: b0 && admissible && no_identity_iterate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::cell::builtin;

    fn diamond() -> CellFunctions {
        cell_functions(&builtin("diamond").unwrap()).unwrap()
    }

    #[test]
    fn diamond_low_order() {
        let gs = green_series(&diamond(), 6).unwrap();
        let want = [rat(1, 1), rat(0, 1), rat(1, 3), rat(0, 1), rat(2, 9), rat(0, 1), rat(5, 27)];
        assert_eq!(gs.series.coeffs(), &want);
        assert_eq!(gs.factors_used, 2);
    }

    #[test]
    fn order_zero() {
        let gs = green_series(&diamond(), 0).unwrap();
        assert_eq!(gs.series.coeffs(), &[rat(1, 1)]);
        assert_eq!(gs.factors_used, 0);
    }

    #[test]
    fn recursion_matches_product() {
        for name in ["diamond", "path2", "sierpinski"] {
            let cf = cell_functions(&builtin(name).unwrap()).unwrap();
            let a = green_series(&cf, 20).unwrap().series;
            let b = green_series_by_recursion(&cf, 20).unwrap();
            assert_eq!(a, b, "{name}");
            assert!(functional_equation_residual(&cf, &a).unwrap().coeffs().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn diamond_invariants() {
        let inv = invariants(&builtin("diamond").unwrap()).unwrap();
        assert_eq!((inv.tau.clone(), inv.alpha.clone(), inv.mu), (rat(18, 1), rat(3, 1), 6));
        let want = -(3f64.ln()) / 18f64.ln();
        assert!((inv.eta.midpoint_f64() - want).abs() < 1e-14);
        assert!(inv.eta_brackets_overlap);
        assert!(!inv.tau_is_two);
    }

    #[test]
    fn path2_invariants() {
        let inv = invariants(&builtin("path2").unwrap()).unwrap();
        assert_eq!((inv.tau.clone(), inv.alpha.clone(), inv.mu), (rat(4, 1), rat(2, 1), 2));
        assert!(inv.eta.contains(&rat(-1, 2)));
    }

    #[test]
    fn iteration_hypotheses() {
        let h = check_iteration_hypotheses(&diamond().d);
        assert!(h.all_hold);
        assert_eq!(h.valuation, Some(4));
        let id = check_iteration_hypotheses(&RatFunc::var());
        assert!(id.is_identity && !id.no_identity_iterate && !id.all_hold);
    }
}
