//! Verdict on the Green's function of the self-similar graph built from a cell.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Poly, PowerSeries};
use crate::cell::{validate_cell, CellGraph, ValidateOptions};
use crate::green::{cell_functions, verify_pole_structure, CellFunctions, PoleStructureReport};
use crate::iteration::{
    check_iteration_hypotheses, functional_equation_residual, green_series, invariants_with, CellInvariants,
    IterationHypotheses,
};

/// Order through which the star closed form is checked.
pub const CLOSED_FORM_ORDER: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    AlgebraicStar,
    DifferentiallyTranscendental,
    ConjecturedTranscendental,
    Invalid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Bipartite,
    NonBipartite,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormCheck {
    pub formula: String,
    pub order: usize,
    /// Coefficients equal `binom(2m, m) 4^-m` at `z^2m` and vanish at odd powers.
    pub coefficients_match: bool,
    /// `(1 - z^2) G^2 = 1` through the order.
    pub square_identity: bool,
    /// `G = f (G o d)` through the order.
    pub functional_equation: bool,
}

impl ClosedFormCheck {
    pub fn passed(&self) -> bool {
        self.coefficients_match && self.square_identity && self.functional_equation
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub theorem_basis: String,
    pub branch: Option<Branch>,
    pub violations: Vec<String>,
    pub invariants: Option<CellInvariants>,
    pub hypotheses: Option<IterationHypotheses>,
    pub pole_structure: Option<PoleStructureReport>,
    pub closed_form: Option<ClosedFormCheck>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn invalid(violations: Vec<String>) -> Verdict {
        Verdict {
            outcome: Outcome::Invalid,
            theorem_basis: "cell fails the axioms; no statement applies".into(),
            branch: None,
            violations,
            invariants: None,
            hypotheses: None,
            pole_structure: None,
            closed_form: None,
            notes: Vec::new(),
        }
    }
}

const STAR_BASIS: &str = "a path cell generates a one-sided line, whose Green's function at the end vertex is (1 - z^2)^(-1/2)";
const DT_BASIS: &str = "G = f (G o d) with rational f, d satisfying the iteration hypotheses; G is either algebraic of star type or differentially transcendental, and a non-path cell is not of star type";
const CONJ_BASIS: &str = "branching number above 2: the dichotomy is conjectural";

pub fn classify(g: &CellGraph) -> Verdict {
    let report = validate_cell(g, ValidateOptions::default());
    if !report.is_valid() {
        return Verdict::invalid(report.violations);
    }
    let cf = match cell_functions(g) {
        Ok(cf) => cf,
        Err(e) => return Verdict::invalid(vec![format!("cell functions: {e}")]),
    };
    let invariants = match invariants_with(g, &cf) {
        Ok(inv) => inv,
        Err(e) => return Verdict::invalid(vec![format!("invariants: {e}")]),
    };
    let poles = verify_pole_structure(&cf);
    classify_with(g, &cf, invariants, poles)
}

/// Verdict for a cell already known to be valid, from precomputed data.
pub fn classify_with(g: &CellGraph, cf: &CellFunctions, invariants: CellInvariants, poles: PoleStructureReport) -> Verdict {
    let hypotheses = check_iteration_hypotheses(&cf.d);
    let mut verdict = Verdict {
        outcome: Outcome::ConjecturedTranscendental,
        theorem_basis: CONJ_BASIS.into(),
        branch: None,
        violations: Vec::new(),
        invariants: None,
        hypotheses: Some(hypotheses.clone()),
        pole_structure: None,
        closed_form: None,
        notes: Vec::new(),
    };

    if g.theta() > 2 {
        verdict.notes.push("for the Sierpinski cell, differential transcendence is known independently".into());
    } else if g.is_path() {
        let check = star_closed_form(cf);
        verdict.theorem_basis = STAR_BASIS.into();
        if check.passed() {
            verdict.outcome = Outcome::AlgebraicStar;
        } else {
            verdict.notes.push("path cell but the closed form check failed".into());
        }
        verdict.closed_form = Some(check);
    } else if hypotheses.all_hold && poles.all_passed() {
        verdict.outcome = Outcome::DifferentiallyTranscendental;
        verdict.theorem_basis = DT_BASIS.into();
        verdict.branch = Some(if invariants.bipartite { Branch::Bipartite } else { Branch::NonBipartite });
    } else {
        verdict.notes.push("iteration hypotheses or pole structure not verified; no conclusion".into());
    }
    verdict.invariants = Some(invariants);
    verdict.pole_structure = Some(poles);
    verdict
}

/// `binom(2m, m) 4^-m`, the coefficient of `z^2m` in `(1 - z^2)^(-1/2)`.
pub fn star_coefficient(m: usize) -> BigRational {
    let mut c = BigRational::one();
    for j in 1..=m {
        // binom(2j, j) / binom(2j-2, j-1) = (2j)(2j-1)/j^2, divided by 4
        c *= BigRational::new(BigInt::from(2 * j - 1), BigInt::from(2 * j));
    }
    c
}

fn star_closed_form(cf: &CellFunctions) -> ClosedFormCheck {
    let order = CLOSED_FORM_ORDER;
    let mut check = ClosedFormCheck {
        formula: "G(z) = (1 - z^2)^(-1/2)".into(),
        order,
        coefficients_match: false,
        square_identity: false,
        functional_equation: false,
    };
    let Ok(gs) = green_series(cf, order) else {
        return check;
    };
    let g = gs.series;
    check.coefficients_match = g.coeffs().iter().enumerate().all(|(k, c)| {
        if k % 2 == 1 {
            c.is_zero()
        } else {
            *c == star_coefficient(k / 2)
        }
    });
    let one_minus_z2 = PowerSeries::from_poly(&Poly::from_ints(&[1, 0, -1]), order + 1);
    let lhs = one_minus_z2.mul(&g.mul(&g));
    check.square_identity = lhs.coeffs().iter().enumerate().all(|(k, c)| if k == 0 { c.is_one() } else { c.is_zero() });
    check.functional_equation =
        functional_equation_residual(cf, &g).is_ok_and(|r| r.coeffs().iter().all(Zero::is_zero));
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::cell::{builtin, parse_cell};

    #[test]
    fn builtin_verdicts() {
        let star = classify(&builtin("path2").unwrap());
        assert_eq!(star.outcome, Outcome::AlgebraicStar);
        assert!(star.closed_form.as_ref().unwrap().passed());
        let diamond = classify(&builtin("diamond").unwrap());
        assert_eq!((diamond.outcome, diamond.branch), (Outcome::DifferentiallyTranscendental, Some(Branch::Bipartite)));
        let sierpinski = classify(&builtin("sierpinski").unwrap());
        assert_eq!(sierpinski.outcome, Outcome::ConjecturedTranscendental);
        assert!(sierpinski.notes[0].contains("Sierpinski"));
    }

    #[test]
    fn invalid_cell() {
        let square = parse_cell("vertices 4\nboundary 0 2\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 0\n").unwrap();
        let v = classify(&square);
        assert_eq!(v.outcome, Outcome::Invalid);
        assert!(!v.violations.is_empty());
    }

    #[test]
    fn star_coefficients() {
        assert_eq!(star_coefficient(0), rat(1, 1));
        assert_eq!(star_coefficient(1), rat(1, 2));
        assert_eq!(star_coefficient(2), rat(3, 8));
        assert_eq!(star_coefficient(3), rat(5, 16));
    }
}
