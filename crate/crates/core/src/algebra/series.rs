use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Truncated formal power series `sum_{k < order} c_k z^k + O(z^order)`
/// with exact rational coefficients.
///
/// Binary arithmetic yields the smaller of the operand orders. Composition
/// `outer ∘ inner` with `v = valuation(inner) >= 1` yields order
/// `min(outer.order * v, inner.order)`: unknown outer terms start at
/// `z^(outer.order * v)`, and an inner error `O(z^inner.order)` propagates
/// unchanged through the (valuation >= 0) derivative of the outer series.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// A series whose order is the number of coefficients given.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![BigRational::zero(); order] }
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        PowerSeries { coeffs: (0..order).map(|k| p.coeff(k)).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&BigRational> {
        self.coeffs.get(k)
    }

    /// First nonzero index, or `order` when every known coefficient vanishes.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len())
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().take(order).cloned().collect() }
    }

    pub fn is_prefix_of(&self, other: &PowerSeries) -> bool {
        self.order() <= other.order() && self.coeffs[..] == other.coeffs[..self.order()]
    }

    pub fn add(&self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }

    pub fn sub(&self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }

    pub fn mul(&self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        self.mul_to(rhs, n)
    }

    fn mul_to(&self, rhs: &PowerSeries, n: usize) -> PowerSeries {
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Quotient `self / rhs`; requires a nonzero constant term in `rhs`.
    pub fn div(&self, rhs: &PowerSeries) -> Result<PowerSeries> {
        let n = self.order().min(rhs.order());
        if n == 0 {
            return Ok(PowerSeries::zero(0));
        }
        let c0 = &rhs.coeffs[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                let b = &rhs.coeffs[j];
                if !b.is_zero() {
                    acc -= b * &out[k - j];
                }
            }
            out.push(acc * &inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Term-wise derivative; order drops by one.
    pub fn derivative(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        }
    }

    /// Order of `self ∘ inner` under the propagation rule in the type docs.
    pub fn composition_order(outer_order: usize, inner: &PowerSeries) -> Result<usize> {
        let v = inner.valuation();
        if v == 0 {
            return Err(Error::NonzeroConstantTerm);
        }
        Ok(outer_order.saturating_mul(v).min(inner.order()))
    }

    /// `self(inner(z))`. The inner series must have zero constant term.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        let n = PowerSeries::composition_order(self.order(), inner)?;
        let v = inner.valuation();
        // only outer terms k with k*v < n contribute
        let terms = if v >= n { 1.min(self.order()) } else { self.order().min((n - 1) / v + 1) };
        let mut acc = PowerSeries::zero(n);
        for c in self.coeffs[..terms].iter().rev() {
            acc = acc.mul_to(inner, n);
            if n > 0 {
                acc.coeffs[0] += c;
            }
        }
        Ok(acc)
    }

    /// `p(self(z))` for a polynomial `p`, keeping `self.order()`.
    pub fn eval_poly(&self, p: &Poly) -> PowerSeries {
        let n = self.order();
        let mut acc = PowerSeries::zero(n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul_to(self, n);
            if n > 0 {
                acc.coeffs[0] += c;
            }
        }
        acc
    }

    /// Evaluates the known part at a float point.
    pub fn eval_f64(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        let head = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "{head} + O(z^{})", self.order())
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries({self})")
    }
}
