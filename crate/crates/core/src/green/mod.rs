//! Green's functions of finite graphs and the cell functions `f`, `d`, `r`.

mod asymptotic;
mod poles;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    poly_on_bracket, smallest_positive_root, solve_ratfunc, IsolatedRoot, Poly, RatFunc, RationalMatrix, RealBracket,
};
use crate::cell::CellGraph;
use crate::error::{Error, Result};

pub use asymptotic::{asymptotic_check, AsymptoticReport, AsymptoticRow};
pub use poles::{verify_pole_structure, PoleStructureReport, PropertyCheck};

/// Width to which radii of convergence are bracketed.
pub fn root_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 64)
}

/// Entry `[i, j]` of `(I - zT)^{-1}` by the cofactor formula
/// `(-1)^(i+j) det(minor(j, i)) / det(I - zT)`.
pub fn green_entry(t: &RationalMatrix, i: usize, j: usize) -> RatFunc {
    let m = t.resolvent_matrix();
    let cof = m.minor(j, i).det();
    let cof = if (i + j) % 2 == 1 { -&cof } else { cof };
    RatFunc::new(cof, m.det()).expect("det(I - zT) is 1 at z = 0")
}

/// Entry `[i, j]` of `(I - zT)^{-1}` by Gauss–Jordan elimination over the
/// field of rational functions.
pub fn green_entry_by_elimination(t: &RationalMatrix, i: usize, j: usize) -> Result<RatFunc> {
    let n = t.dim();
    let a: Vec<Vec<RatFunc>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let one = if r == c { BigRational::one() } else { BigRational::zero() };
                    RatFunc::from_poly(Poly::new(vec![one, -t.get(r, c).clone()]))
                })
                .collect()
        })
        .collect();
    let b: Vec<RatFunc> = (0..n).map(|r| if r == j { RatFunc::one() } else { RatFunc::zero() }).collect();
    Ok(solve_ratfunc(a, b)?.swap_remove(i))
}

/// Transition matrix with walks barred from entering non-origin boundary
/// vertices from the interior.
pub fn build_pf(g: &CellGraph) -> RationalMatrix {
    let mut p = g.transition_matrix();
    for i in g.theta()..g.n() {
        for j in 1..g.theta() {
            p.set(i, j, BigRational::zero());
        }
    }
    p
}

/// Transition matrix with non-origin boundary vertices made absorbing.
pub fn build_pd(g: &CellGraph) -> RationalMatrix {
    let mut p = g.transition_matrix();
    for i in 1..g.theta() {
        for j in g.theta()..g.n() {
            p.set(i, j, BigRational::zero());
        }
    }
    p
}

/// Smallest positive pole of a rational function with the local behaviour
/// `kappa (1 - z/rho)^(-order)`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralData {
    /// `None` when there is no positive pole (radius infinity).
    pub rho: Option<IsolatedRoot>,
    pub pole_order: usize,
    /// `kappa` for simple poles.
    pub residue_scale: Option<RealBracket>,
}

impl SpectralData {
    pub fn is_infinite(&self) -> bool {
        self.rho.is_none()
    }
}

/// Radius of convergence of `r` at 0 from the least positive root of its
/// (normalized) denominator.
pub fn radius(r: &RatFunc) -> Result<SpectralData> {
    if r.den().coeff(0).is_zero() {
        return Err(Error::Pole { at: "0".into() });
    }
    let rho = match smallest_positive_root(r.den(), &root_width()) {
        Ok(root) => root,
        Err(Error::NoPositiveRoot) => return Ok(SpectralData { rho: None, pole_order: 0, residue_scale: None }),
        Err(e) => return Err(e),
    };
    let pole_order = rho.multiplicity();
    let residue_scale = if pole_order == 1 { Some(residue(r, &rho)?) } else { None };
    Ok(SpectralData { rho: Some(rho), pole_order, residue_scale })
}

/// `kappa = -num(rho) / (rho den'(rho))` in interval arithmetic over the root bracket.
fn residue(r: &RatFunc, rho: &IsolatedRoot) -> Result<RealBracket> {
    let dden = r.den().derivative();
    let mut root = rho.clone();
    loop {
        let x = RealBracket::new(root.low().clone(), root.high().clone());
        let bottom = poly_on_bracket(&dden, &x).mul(&x);
        if !bottom.contains(&BigRational::zero()) {
            let top = poly_on_bracket(r.num(), &x);
            return Ok(top.div(&bottom)?.neg());
        }
        let w = root.width() / BigRational::from_integer(BigInt::from(1 << 16));
        root.refine(&w);
    }
}

/// The return function `f`, transition function `d` and first-return
/// function `r = 1 - 1/f` of a cell, with their radii of convergence.
#[derive(Clone, Debug, Serialize)]
pub struct CellFunctions {
    pub f: RatFunc,
    pub d: RatFunc,
    pub r: RatFunc,
    /// `det(I - z P_f)` and `det(I - z P_d)`.
    pub det_f: Poly,
    pub det_d: Poly,
    pub spectral_f: SpectralData,
    pub spectral_d: SpectralData,
    pub spectral_r: SpectralData,
}

/// Computes `f = [(I - zP_f)^{-1}]_{0,0}` and `d = sum_{0<j<theta} [(I - zP_d)^{-1}]_{0,j}`.
pub fn cell_functions(g: &CellGraph) -> Result<CellFunctions> {
    let mf = build_pf(g).resolvent_matrix();
    let md = build_pd(g).resolvent_matrix();
    let det_f = mf.det();
    let det_d = md.det();
    let f = RatFunc::new(mf.minor(0, 0).det(), det_f.clone())?;
    let mut d_num = Poly::zero();
    for j in 1..g.theta() {
        let c = md.minor(j, 0).det();
        d_num = if j % 2 == 1 { &d_num - &c } else { &d_num + &c };
    }
    let d = RatFunc::new(d_num, det_d.clone())?;
    let r = RatFunc::one().sub(&f.recip()?);

    let zero = BigRational::zero();
    if f.eval(&zero)? != BigRational::one() {
        return Err(Error::Invariant("f(0) != 1".into()));
    }
    if !d.eval(&zero)?.is_zero() || !d.derivative().eval(&zero)?.is_zero() {
        return Err(Error::Invariant("d(0) and d'(0) must vanish".into()));
    }
    let back = RatFunc::one().div(&RatFunc::one().sub(&r))?;
    if back != f {
        return Err(Error::Invariant("f != 1/(1 - r)".into()));
    }
    Ok(CellFunctions {
        spectral_f: radius(&f)?,
        spectral_d: radius(&d)?,
        spectral_r: radius(&r)?,
        f,
        d,
        r,
        det_f,
        det_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::cell::builtin;

    #[test]
    fn diamond_full_green_entry() {
        let p = builtin("diamond").unwrap().transition_matrix();
        // (z^4 - 9z^2 + 9) / (3 (z^2 - 3)(z^2 - 1))
        let den = (&Poly::from_ints(&[-3, 0, 1]) * &Poly::from_ints(&[-1, 0, 1])).scale(&rat(3, 1));
        let want = RatFunc::new(Poly::from_ints(&[9, 0, -9, 0, 1]), den).unwrap();
        assert_eq!(green_entry(&p, 0, 0), want);
        assert_eq!(green_entry_by_elimination(&p, 0, 0).unwrap(), want);
    }

    #[test]
    fn trivial_and_path_entries() {
        let zero = RationalMatrix::zeros(1);
        assert_eq!(green_entry(&zero, 0, 0), RatFunc::one());
        let p = builtin("path2").unwrap().transition_matrix();
        // (2 - z^2) / (2 (1 - z^2)), worked by hand from the 3x3 cofactors
        let want = RatFunc::new(Poly::from_ints(&[2, 0, -1]), Poly::from_ints(&[2, 0, -2])).unwrap();
        assert_eq!(green_entry(&p, 0, 0), want);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(green_entry(&p, i, j), green_entry_by_elimination(&p, i, j).unwrap());
            }
        }
    }

    #[test]
    fn diamond_modified_matrices() {
        let g = builtin("diamond").unwrap();
        let third = rat(1, 3);
        let pf = build_pf(&g);
        // row w2 loses its step to v2
        assert_eq!(pf.row(3), &[rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), third.clone(), third.clone()]);
        assert_eq!(pf.row(1), &[rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)]);
        let pd = build_pd(&g);
        assert!(pd.row(1).iter().all(Zero::is_zero));
        assert_eq!(pd.row(3), &[rat(0, 1), third.clone(), rat(0, 1), rat(0, 1), third.clone(), third]);
    }

    #[test]
    fn diamond_cell_functions() {
        let cf = cell_functions(&builtin("diamond").unwrap()).unwrap();
        let den = Poly::from_ints(&[9, 0, -9, 0, 1]);
        assert_eq!(cf.f, RatFunc::new(Poly::from_ints(&[9, 0, -6]), den.clone()).unwrap());
        assert_eq!(cf.d, RatFunc::new(Poly::from_ints(&[0, 0, 0, 0, 1]), den).unwrap());
        assert_eq!(cf.det_f, cf.det_d);
        let rho = cf.spectral_f.rho.as_ref().unwrap();
        assert!((rho.midpoint_f64() - 2.0 * 3f64.sqrt() / (1.0 + 5f64.sqrt())).abs() < 1e-12);
        assert_eq!(cf.spectral_f.pole_order, 1);
    }

    #[test]
    fn path2_cell_functions() {
        let cf = cell_functions(&builtin("path2").unwrap()).unwrap();
        assert_eq!(cf.f, RatFunc::new(Poly::from_ints(&[2]), Poly::from_ints(&[2, 0, -1])).unwrap());
        assert_eq!(cf.d, RatFunc::new(Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[2, 0, -1])).unwrap());
        assert_eq!(cf.r, RatFunc::from_poly(Poly::new(vec![rat(0, 1), rat(0, 1), rat(1, 2)])));
        assert!(cf.spectral_r.is_infinite());
        let rho = cf.spectral_f.rho.as_ref().unwrap();
        assert!((rho.midpoint_f64() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn residue_of_simple_pole() {
        // 2/(2 - z^2) near sqrt 2: (1 - z/rho) f -> 1/2
        let f = RatFunc::new(Poly::from_ints(&[2]), Poly::from_ints(&[2, 0, -1])).unwrap();
        let k = radius(&f).unwrap().residue_scale.unwrap();
        assert!((k.midpoint_f64() - 0.5).abs() < 1e-12);
        assert!(k.width() < rat(1, 1 << 30));
    }
}
