use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::CellFunctions;
use crate::algebra::{IntPoly, Poly, SturmSequence};

/// Grid size for the sampled monotonicity check on `(1, rho_d)`.
pub const GRID_POINTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl PropertyCheck {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        PropertyCheck { name: name.to_string(), passed, detail: detail.into() }
    }
}

/// Pole structure of `f` and `d`: shared radius, simple poles, `r` analytic
/// further out, `d` expanding beyond 1 and `f` with a single pole below `rho_r`.
#[derive(Clone, Debug, Serialize)]
pub struct PoleStructureReport {
    pub same_radius: PropertyCheck,
    pub simple_poles: PropertyCheck,
    pub r_radius_larger: PropertyCheck,
    pub d_expanding: PropertyCheck,
    pub single_pole: PropertyCheck,
}

impl PoleStructureReport {
    pub fn checks(&self) -> [&PropertyCheck; 5] {
        [&self.same_radius, &self.simple_poles, &self.r_radius_larger, &self.d_expanding, &self.single_pole]
    }

    pub fn all_passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }
}

pub fn verify_pole_structure(cf: &CellFunctions) -> PoleStructureReport {
    let rf = cf.spectral_f.rho.as_ref();
    let rd = cf.spectral_d.rho.as_ref();
    let rr = cf.spectral_r.rho.as_ref();

    let same_radius = match (rf, rd) {
        (Some(a), Some(b)) => {
            PropertyCheck::new("rho_d = rho_f", a.same_root(b), "exact: common factor of the denominators has a root in both brackets")
        }
        _ => PropertyCheck::new("rho_d = rho_f", false, "f or d has no positive pole"),
    };

    let (of, od) = (cf.spectral_f.pole_order, cf.spectral_d.pole_order);
    let simple_poles = PropertyCheck::new("poles of order 1", of == 1 && od == 1, format!("order(f) = {of}, order(d) = {od}"));

    let r_radius_larger = match (rf, rr) {
        (Some(_), None) => PropertyCheck::new("rho_f < rho_r", true, "r is analytic on (0, inf): rho_r = inf"),
        (Some(a), Some(b)) => {
            PropertyCheck::new("rho_f < rho_r", a.cmp_root(b).is_lt(), format!("rho_f ~ {:.6}, rho_r ~ {:.6}", a.midpoint_f64(), b.midpoint_f64()))
        }
        (None, _) => PropertyCheck::new("rho_f < rho_r", false, "f has no positive pole"),
    };

    let d_expanding = match rd {
        Some(rho) => expanding_on_grid(cf, rho.low()),
        None => PropertyCheck::new("d' > 1, d > z, d'' > 0 on (1, rho_d)", false, "d has no positive pole"),
    };

    let single_pole = single_pole_below_rho_r(cf);

    PoleStructureReport { same_radius, simple_poles, r_radius_larger, d_expanding, single_pole }
}

fn expanding_on_grid(cf: &CellFunctions, rho_low: &BigRational) -> PropertyCheck {
    let name = "d' > 1, d > z, d'' > 0 on (1, rho_d)";
    let one = BigRational::one();
    if rho_low <= &one {
        return PropertyCheck::new(name, false, "rho_d bracket does not lie above 1");
    }
    // with d = p/q: d - z = (p - zq)/q, d' - 1 = (w - q^2)/q^2 where
    // w = p'q - pq', and d'' = (w'q - 2wq')/q^3
    let (p, q) = (cf.d.num(), cf.d.den());
    let dq = q.derivative();
    let w = &(&p.derivative() * q) - &(p * &dq);
    let above = IntPoly::new(&(p - &(&Poly::var() * q)));
    let slope = IntPoly::new(&(&w - &(q * q)));
    let curv = IntPoly::new(&(&(&w.derivative() * q) - &(&w * &dq).scale(&BigRational::from_integer(BigInt::from(2)))));
    let den = IntPoly::new(q);
    let step = (rho_low - &one) / BigRational::from_integer(BigInt::from(GRID_POINTS + 1));
    for k in 1..=GRID_POINTS {
        let z = &one + &step * BigRational::from_integer(BigInt::from(k));
        let sq = den.sign_at(&z);
        let ok = sq != 0 && above.sign_at(&z) * sq > 0 && slope.sign_at(&z) > 0 && curv.sign_at(&z) * sq > 0;
        if !ok {
            return PropertyCheck::new(name, false, format!("fails at grid point {k} (z ~ {:.6})", crate::algebra::to_f64(&z)));
        }
    }
    PropertyCheck::new(name, true, format!("{GRID_POINTS} exact grid points in (1, rho_d)"))
}

/// The denominator of `f` has exactly one root in `(0, rho_r)`.
fn single_pole_below_rho_r(cf: &CellFunctions) -> PropertyCheck {
    let name = "only pole of f in (0, rho_r) is rho_f";
    let den = cf.f.den().squarefree();
    let sturm = SturmSequence::new(&den);
    let zero = BigRational::zero();
    let count = match cf.spectral_r.rho.as_ref() {
        None => sturm.count_above(&zero),
        Some(rr) => {
            // shrink the rho_r bracket until it holds no root of den(f); rho_r
            // is a root of num(f), which is coprime to den(f)
            let mut root = rr.clone();
            while sturm.count(root.low(), root.high()) > 0 {
                let w = root.width() / BigRational::from_integer(BigInt::from(2));
                root.refine(&w);
            }
            sturm.count(&zero, root.low())
        }
    };
    PropertyCheck::new(name, count == 1, format!("{count} distinct root(s) of den(f) in (0, rho_r)"))
}
