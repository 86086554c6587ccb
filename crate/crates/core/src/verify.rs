//! Property suite run per cell, and over enumerations of cells.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blowup::{blowup, exact_return_probs, safe_horizon_at, sufficient_level, BlowupOptions};
use crate::cell::{enumerate_cells, CellGraph};
use crate::classify::{classify_with, Outcome};
use crate::error::Result;
use crate::green::{cell_functions, verify_pole_structure, PropertyCheck};
use crate::harmonic::{alpha_from_harmonic, verify_alpha_mu};
use crate::iteration::{green_series, invariants_with};

/// Walk length compared against the blow-up oracle.
pub const ORACLE_STEPS: usize = 20;
/// Order to which `f` and `d` are checked for nonnegative coefficients.
pub const SERIES_CHECK_ORDER: usize = 60;

#[derive(Clone, Debug, Serialize)]
pub struct CellVerification {
    pub checks: Vec<PropertyCheck>,
}

impl CellVerification {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn outcomes(&self) -> Vec<CheckOutcome> {
        self.checks.iter().map(|c| CheckOutcome { name: c.name.clone(), passed: c.passed }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> PropertyCheck {
    PropertyCheck { name: name.into(), passed, detail: detail.into() }
}

/// Runs every property on one cell. Statements proved only for `theta = 2`
/// are recorded but not asserted for larger `theta`.
pub fn verify_cell(g: &CellGraph, opts: &BlowupOptions) -> Result<CellVerification> {
    let cf = cell_functions(g)?;
    let inv = invariants_with(g, &cf)?;
    let theta2 = g.theta() == 2;
    let mut checks = Vec::new();

    let poles = verify_pole_structure(&cf);
    checks.extend(poles.checks().into_iter().cloned());
    checks.push(check("det(I - zP_f) = det(I - zP_d)", cf.det_f == cf.det_d, format!("degree {:?}", cf.det_f.degree())));

    let (f, d) = (cf.f.series(SERIES_CHECK_ORDER + 1)?, cf.d.series(SERIES_CHECK_ORDER + 1)?);
    let nonneg = f.coeffs().iter().chain(d.coeffs()).all(|c| *c >= BigRational::zero());
    let d_one = cf.d.eval(&BigRational::one())?;
    checks.push(check(
        "f, d nonnegative with d(1) = 1",
        nonneg && d_one.is_one() && inv.alpha >= BigRational::one(),
        format!("through z^{SERIES_CHECK_ORDER}; d(1) = {d_one}, f(1) = {}", inv.alpha),
    ));
    let two = BigRational::from_integer(BigInt::from(2));
    checks.push(check(
        "tau >= 2",
        inv.tau >= two,
        format!("tau = {}{}", inv.tau, if inv.tau_is_two { " (equality)" } else { "" }),
    ));

    let alpha_h = alpha_from_harmonic(g)?;
    checks.push(check("alpha from H = f(1)", alpha_h == inv.alpha, format!("{alpha_h} vs {}", inv.alpha)));

    let am = verify_alpha_mu(g)?;
    let detail = format!("alpha = {}, mu = {}, {}, path: {}", am.alpha, am.mu, am.relation, am.is_path);
    if theta2 {
        checks.push(check("alpha <= mu, equality iff path", am.holds == Some(true), detail));
        checks.push(check(
            "H(w) nondecreasing under deletion",
            am.trace_nondecreasing,
            format!("{} steps to a path of length {}", am.deletion_trace.len(), am.path_length.unwrap_or(0)),
        ));
        // eta >= -1/2  <=>  mu^2 >= tau, with equality exactly on paths
        let mu2 = BigRational::from_integer(BigInt::from(inv.mu * inv.mu));
        let half = -BigRational::new(BigInt::one(), BigInt::from(2));
        let exact_ok = if am.is_path { mu2 == inv.tau } else { mu2 > inv.tau };
        let bracket_ok = if am.is_path { inv.eta.contains(&half) } else { inv.eta.is_above(&half) };
        checks.push(check(
            "eta >= -1/2, equality iff path",
            exact_ok && bracket_ok && inv.eta_brackets_overlap,
            format!("eta ~ {:.12}, mu^2 = {mu2}, tau = {}", inv.eta.midpoint_f64(), inv.tau),
        ));
    } else {
        checks.push(check("alpha vs mu (recorded)", true, detail));
    }

    checks.push(oracle_check(g, &cf, opts)?);

    let verdict = classify_with(g, &cf, inv, poles);
    let expected = match (theta2, g.is_path()) {
        (true, true) => Outcome::AlgebraicStar,
        (true, false) => Outcome::DifferentiallyTranscendental,
        (false, _) => Outcome::ConjecturedTranscendental,
    };
    let hyp = verdict.hypotheses.as_ref().is_some_and(|h| h.all_hold);
    checks.push(check(
        "classification",
        verdict.outcome == expected && (expected != Outcome::DifferentiallyTranscendental || hyp),
        format!("{:?}", verdict.outcome),
    ));
    Ok(CellVerification { checks })
}

fn oracle_check(g: &CellGraph, cf: &crate::green::CellFunctions, opts: &BlowupOptions) -> Result<PropertyCheck> {
    let name = "G = return probabilities on blow-up";
    let mut level = sufficient_level(g, ORACLE_STEPS);
    let approx = loop {
        match blowup(g, level, opts) {
            Ok(a) => break a,
            Err(crate::Error::BudgetExceeded { .. }) if level > 1 => level -= 1,
            Err(e) => return Err(e),
        }
    };
    let n = ORACLE_STEPS.min(approx.safe_horizon);
    debug_assert_eq!(approx.safe_horizon, safe_horizon_at(g, level));
    let series = green_series(cf, n)?.series;
    let walks = exact_return_probs(&approx, n);
    let first_bad = series.coeffs().iter().zip(&walks.probs).position(|(a, b)| a != b);
    Ok(match first_bad {
        None => check(name, true, format!("n <= {n} at level {level}")),
        Some(k) => check(name, false, format!("differ at n = {k}: {} vs {}", series.coeffs()[k], walks.probs[k])),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub index: usize,
    pub cell: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationSummary {
    pub theta: usize,
    pub max_vertices: usize,
    pub cells: usize,
    pub paths: usize,
    pub tallies: Vec<CheckTally>,
    pub failures: Vec<Failure>,
}

impl EnumerationSummary {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tally(&self, name: &str) -> Option<&CheckTally> {
        self.tallies.iter().find(|t| t.name == name)
    }
}

/// Verifies every cell of the enumeration in parallel; results are ordered
/// by enumeration index.
pub fn verify_enumeration(theta: usize, max_vertices: usize, opts: &BlowupOptions) -> Result<EnumerationSummary> {
    let cells = enumerate_cells(theta, max_vertices)?;
    verify_cells(theta, max_vertices, &cells, opts)
}

pub fn verify_cells(theta: usize, max_vertices: usize, cells: &[CellGraph], opts: &BlowupOptions) -> Result<EnumerationSummary> {
    let results: Vec<Result<CellVerification>> = cells.par_iter().map(|g| verify_cell(g, opts)).collect();
    let mut tallies: Vec<CheckTally> = Vec::new();
    let mut failures = Vec::new();
    for (index, (g, res)) in cells.iter().zip(results).enumerate() {
        let v = match res {
            Ok(v) => v,
            Err(e) => {
                failures.push(Failure { index, cell: g.to_cell_text(), check: "computation".into(), detail: e.to_string() });
                continue;
            }
        };
        for c in v.checks {
            let t = match tallies.iter_mut().find(|t| t.name == c.name) {
                Some(t) => t,
                None => {
                    tallies.push(CheckTally { name: c.name.clone(), passed: 0, failed: 0 });
                    tallies.last_mut().unwrap()
                }
            };
            if c.passed {
                t.passed += 1;
            } else {
                t.failed += 1;
                failures.push(Failure { index, cell: g.to_cell_text(), check: c.name, detail: c.detail });
            }
        }
    }
    Ok(EnumerationSummary {
        theta,
        max_vertices,
        cells: cells.len(),
        paths: cells.iter().filter(|g| g.is_path()).count(),
        tallies,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::builtin;

    #[test]
    fn builtins_pass() {
        for name in ["diamond", "path2", "sierpinski", "k4_corners"] {
            let v = verify_cell(&builtin(name).unwrap(), &BlowupOptions::default()).unwrap();
            assert!(v.all_passed(), "{name}: {:#?}", v.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        }
    }

    #[test]
    fn small_enumeration() {
        let s = verify_enumeration(2, 6, &BlowupOptions::default()).unwrap();
        assert_eq!((s.cells, s.paths), (28, 4));
        assert!(s.all_passed(), "{:#?}", s.failures);
    }
}
