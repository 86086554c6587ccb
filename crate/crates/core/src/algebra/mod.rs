//! Exact univariate algebra over the rationals: polynomials, rational
//! functions, truncated power series, Sturm root isolation, matrices and
//! rational real brackets.

mod bracket;
mod matrix;
mod poly;
mod ratfunc;
mod roots;
mod series;
mod serialize;

pub use bracket::RealBracket;
pub use matrix::{solve_integer, solve_ratfunc, PolyMatrix, RationalMatrix};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub(crate) use roots::IntPoly;
pub use roots::{smallest_positive_root, IsolatedRoot, SturmSequence};
pub use series::PowerSeries;
pub use serialize::{ser_opt_rat, ser_rat, ser_rat_vec};

use num_bigint::BigInt;
use num_rational::BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Horner evaluation of `p` over a bracket of arguments.
pub fn poly_on_bracket(p: &Poly, x: &RealBracket) -> RealBracket {
    let mut acc = RealBracket::exact(BigRational::from_integer(0.into()));
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add_rational(c);
    }
    acc
}

pub fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
