use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::series::PowerSeries;
use crate::error::{Error, Result};

/// Rational function `num/den` over the rationals, kept normalized:
/// coprime numerator and denominator, monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Cancels common factors and scales the denominator to be monic.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lc = den.leading_coeff().expect("nonzero").recip();
        Ok(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        RatFunc::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::one().div(self)
    }

    pub fn eval(&self, z: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(Error::Pole { at: z.to_string() });
        }
        Ok(self.num.eval(z) / d)
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        self.num.eval_f64(z) / self.den.eval_f64(z)
    }

    /// Quotient rule, normalized.
    pub fn derivative(&self) -> RatFunc {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(top, &self.den * &self.den).expect("nonzero denominator")
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &RatFunc) -> Result<RatFunc> {
        // Homogenize: p(a/b) = sum p_k a^k b^(n-k) / b^n.
        let n = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        let hom = |p: &Poly| -> Poly {
            let mut acc = Poly::zero();
            let mut a_pow = Poly::one();
            for k in 0..=n {
                let c = p.coeff(k);
                if !c.is_zero() {
                    let mut b_pow = Poly::one();
                    for _ in 0..(n - k) {
                        b_pow = &b_pow * &inner.den;
                    }
                    acc = &acc + &(&a_pow * &b_pow).scale(&c);
                }
                a_pow = &a_pow * &inner.num;
            }
            acc
        };
        let den = hom(&self.den);
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFunc::new(hom(&self.num), den)
    }

    /// Taylor expansion at 0 with `order` known coefficients.
    pub fn series(&self, order: usize) -> Result<PowerSeries> {
        if self.den.coeff(0).is_zero() {
            return Err(Error::Pole { at: "0".into() });
        }
        let num = PowerSeries::from_poly(&self.num, order);
        let den = PowerSeries::from_poly(&self.den, order);
        num.div(&den)
    }

    /// `self(s(z))` for a power series `s`, by evaluating numerator and
    /// denominator at `s` and dividing. Requires `den(s(0)) != 0`.
    pub fn compose_series(&self, s: &PowerSeries) -> Result<PowerSeries> {
        let num = s.eval_poly(&self.num);
        let den = s.eval_poly(&self.den);
        num.div(&den)
    }

    /// Value at 0, if defined.
    pub fn at_zero(&self) -> Option<BigRational> {
        self.eval(&BigRational::zero()).ok()
    }

    /// Normalization sanity: gcd(num, den) = 1 and den monic.
    pub fn is_normalized(&self) -> bool {
        self.den.leading_coeff().is_some_and(|c| c.is_one())
            && (self.num.is_zero() && self.den == Poly::one() || self.num.gcd(&self.den) == Poly::one())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    pub(crate) fn diamond_f() -> RatFunc {
        RatFunc::new(Poly::from_ints(&[9, 0, -6]), Poly::from_ints(&[9, 0, -9, 0, 1])).unwrap()
    }

    pub(crate) fn diamond_d() -> RatFunc {
        RatFunc::new(Poly::from_ints(&[0, 0, 0, 0, 1]), Poly::from_ints(&[9, 0, -9, 0, 1])).unwrap()
    }

    #[test]
    fn normalize_cancels_and_makes_monic() {
        let r = RatFunc::new(Poly::from_ints(&[-2, 0, 2]), Poly::from_ints(&[-2, 2])).unwrap();
        assert_eq!(r.num(), &Poly::from_ints(&[1, 1]));
        assert_eq!(r.den(), &Poly::one());
    }

    #[test]
    fn diamond_f_is_already_normal() {
        // -3(2z^2 - 3) = 9 - 6z^2
        let f = diamond_f();
        assert_eq!(f.num(), &Poly::from_ints(&[9, 0, -6]));
        assert_eq!(f.den(), &Poly::from_ints(&[9, 0, -9, 0, 1]));
        assert!(f.is_normalized());
    }

    #[test]
    fn zero_numerator_normalizes_to_zero_over_one() {
        let r = RatFunc::new(Poly::zero(), Poly::from_ints(&[3, 1])).unwrap();
        assert_eq!(r.den(), &Poly::one());
        assert!(r.is_zero());
        assert!(matches!(RatFunc::new(Poly::one(), Poly::zero()), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn diamond_values_at_one_and_zero() {
        // f(1) = (9-6)/(1-9+9) = 3
        assert_eq!(diamond_f().eval(&rat(1, 1)).unwrap(), rat(3, 1));
        assert_eq!(diamond_d().eval(&rat(1, 1)).unwrap(), rat(1, 1));
        assert_eq!(diamond_d().eval(&rat(0, 1)).unwrap(), rat(0, 1));
    }

    #[test]
    fn pole_is_reported() {
        let r = RatFunc::new(Poly::one(), Poly::from_ints(&[-1, 1])).unwrap();
        match r.eval(&rat(1, 1)) {
            Err(Error::Pole { at }) => assert_eq!(at, "1"),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn derivatives() {
        // d = z^4/D, d' = (4z^3 D - z^4 D')/D^2; at 1: D=1, D'=4-18=-14 -> 4+14 = 18
        assert_eq!(diamond_d().derivative().eval(&rat(1, 1)).unwrap(), rat(18, 1));
        assert!(RatFunc::constant(rat(7, 2)).derivative().is_zero());
        let d2 = RatFunc::new(Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[2, 0, -1])).unwrap();
        assert_eq!(d2.derivative().eval(&rat(0, 1)).unwrap(), rat(0, 1));
        assert_eq!(d2.derivative().eval(&rat(1, 1)).unwrap(), rat(4, 1));
    }

    #[test]
    fn composition_matches_pointwise() {
        let d = diamond_d();
        let dd = d.compose(&d).unwrap();
        let z = rat(1, 2);
        assert_eq!(dd.eval(&z).unwrap(), d.eval(&d.eval(&z).unwrap()).unwrap());
        assert_eq!(d.compose(&RatFunc::var()).unwrap(), d);
    }
}
