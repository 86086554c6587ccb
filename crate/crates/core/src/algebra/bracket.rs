//! Closed rational intervals `[low, high]` used to carry irrational reals
//! (logarithms, residues, ratios of logarithms) with decidable comparisons.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Denominator exponent for outward rounding of bracket endpoints.
const ROUND_BITS: u32 = 160;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealBracket {
    low: BigRational,
    high: BigRational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    BigRational::new((x * BigRational::from_integer(scale.clone())).floor().to_integer(), scale)
}

fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    BigRational::new((x * BigRational::from_integer(scale.clone())).ceil().to_integer(), scale)
}

impl RealBracket {
    pub fn new(low: BigRational, high: BigRational) -> Self {
        assert!(low <= high, "empty bracket");
        RealBracket { low, high }
    }

    pub fn exact(x: BigRational) -> Self {
        RealBracket { low: x.clone(), high: x }
    }

    pub fn low(&self) -> &BigRational {
        &self.low
    }

    pub fn high(&self) -> &BigRational {
        &self.high
    }

    pub fn width(&self) -> BigRational {
        &self.high - &self.low
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.low + &self.high) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.low <= x && x <= &self.high
    }

    pub fn overlaps(&self, other: &RealBracket) -> bool {
        self.low <= other.high && other.low <= self.high
    }

    /// True when every point of the bracket is strictly above `x`.
    pub fn is_above(&self, x: &BigRational) -> bool {
        &self.low > x
    }

    pub fn is_below(&self, x: &BigRational) -> bool {
        &self.high < x
    }

    fn rounded(low: BigRational, high: BigRational) -> Self {
        RealBracket { low: round_down(&low, ROUND_BITS), high: round_up(&high, ROUND_BITS) }
    }

    pub fn add(&self, o: &RealBracket) -> RealBracket {
        RealBracket { low: &self.low + &o.low, high: &self.high + &o.high }
    }

    pub fn sub(&self, o: &RealBracket) -> RealBracket {
        RealBracket { low: &self.low - &o.high, high: &self.high - &o.low }
    }

    pub fn neg(&self) -> RealBracket {
        RealBracket { low: -&self.high, high: -&self.low }
    }

    pub fn mul(&self, o: &RealBracket) -> RealBracket {
        let p = [&self.low * &o.low, &self.low * &o.high, &self.high * &o.low, &self.high * &o.high];
        let low = p.iter().min().unwrap().clone();
        let high = p.iter().max().unwrap().clone();
        RealBracket { low, high }
    }

    pub fn div(&self, o: &RealBracket) -> Result<RealBracket> {
        if o.contains(&BigRational::zero()) {
            return Err(Error::DivisionByZero);
        }
        let inv = RealBracket { low: o.high.recip(), high: o.low.recip() };
        let r = self.mul(&inv);
        Ok(RealBracket::rounded(r.low, r.high))
    }

    pub fn add_rational(&self, x: &BigRational) -> RealBracket {
        RealBracket { low: &self.low + x, high: &self.high + x }
    }

    /// Natural logarithm of a positive rational, to within about `2^-150`.
    pub fn ln(x: &BigRational) -> Result<RealBracket> {
        if !x.is_positive() {
            return Err(Error::InvalidArgument(format!("logarithm of non-positive {x}")));
        }
        // x = 2^k * m with m in [3/4, 3/2)
        let two = BigRational::from_integer(BigInt::from(2));
        let (lo_m, hi_m) = (BigRational::new(3.into(), 4.into()), BigRational::new(3.into(), 2.into()));
        let mut m = x.clone();
        let mut k: i64 = 0;
        while m >= hi_m {
            m /= &two;
            k += 1;
        }
        while m < lo_m {
            m *= &two;
            k -= 1;
        }
        let ln_m = atanh_ln(&m);
        let ln2 = atanh_ln(&two);
        let k = BigRational::from_integer(BigInt::from(k));
        let scaled = ln2.mul(&RealBracket::exact(k));
        let r = ln_m.add(&scaled);
        Ok(RealBracket::rounded(r.low, r.high))
    }
}

/// `ln(m) = 2 atanh((m-1)/(m+1))`, summed until the tail bound is below `2^-170`.
fn atanh_ln(m: &BigRational) -> RealBracket {
    let y = (m - BigRational::one()) / (m + BigRational::one());
    if y.is_zero() {
        return RealBracket::exact(BigRational::zero());
    }
    let y2 = &y * &y;
    let eps = BigRational::new(BigInt::one(), pow2(170));
    let mut term = y.clone(); // y^(2i+1)
    let mut sum = BigRational::zero();
    let mut i: i64 = 0;
    loop {
        let denom = BigRational::from_integer(BigInt::from(2 * i + 1));
        sum += &term / &denom;
        term = &term * &y2;
        i += 1;
        // |tail| <= |y|^(2i+1) / ((2i+1)(1 - y^2))
        let tail = term.abs() / (BigRational::from_integer(BigInt::from(2 * i + 1)) * (BigRational::one() - &y2));
        if tail < eps {
            let two = BigRational::from_integer(BigInt::from(2));
            let s = &sum * &two;
            let t = tail * two;
            return RealBracket::rounded(&s - &t, &s + &t);
        }
    }
}

impl fmt::Display for RealBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", self.low.to_f64().unwrap_or(f64::NAN), self.high.to_f64().unwrap_or(f64::NAN))
    }
}

impl Serialize for RealBracket {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RealBracket", 2)?;
        st.serialize_field("low", &self.low.to_string())?;
        st.serialize_field("high", &self.high.to_string())?;
        st.end()
    }
}
