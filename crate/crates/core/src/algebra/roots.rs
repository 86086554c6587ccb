//! Real-root isolation by Sturm sequences over exact rationals.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Positive integer multiple of a polynomial, for sign evaluation without
/// rational normalisation.
#[derive(Clone, Debug)]
pub(crate) struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub(crate) fn new(p: &Poly) -> Self {
        use num_integer::Integer;
        let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly(p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect())
    }

    /// Sign of `p(x)`: for `x = a/b` with `b > 0`, the sign of
    /// `sum c_i a^i b^(deg-i)`.
    pub(crate) fn sign_at(&self, x: &BigRational) -> i8 {
        let Some((top, rest)) = self.0.split_last() else {
            return 0;
        };
        let (a, b) = (x.numer(), x.denom());
        let mut acc = top.clone();
        let mut bpow = b.clone();
        for c in rest.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        int_sign(&acc)
    }

    fn leading_sign(&self) -> i8 {
        self.0.last().map_or(0, int_sign)
    }
}

fn int_sign(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmSequence {
    pub fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone()];
        if p.degree().unwrap_or(0) == 0 {
            return SturmSequence { chain: vec![IntPoly::new(p)] };
        }
        chain.push(p.derivative());
        loop {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero").1;
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps the signs and the sizes down
            let lc = r.leading_coeff().unwrap().abs();
            chain.push((-&r).scale(&lc.recip()));
        }
        SturmSequence { chain: chain.iter().map(IntPoly::new).collect() }
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_pos_inf(&self) -> usize {
        variations(self.chain.iter().map(IntPoly::leading_sign))
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct real roots in `(a, +inf)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at_pos_inf())
    }
}

/// A real algebraic number given by a half-open rational bracket
/// `(low, high]` containing exactly one root of the squarefree `defining`
/// polynomial. `multiplicity` is the multiplicity of that root in the
/// polynomial it was isolated from.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    low: BigRational,
    high: BigRational,
    defining: Poly,
    multiplicity: usize,
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// Smallest power of two strictly above every root magnitude (Cauchy bound).
fn root_bound(p: &Poly) -> BigRational {
    let lc = p.leading_coeff().expect("nonzero").abs();
    let n = p.degree().unwrap();
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(BigRational::zero);
    let bound = max + BigRational::one();
    let mut b = BigRational::one();
    while b <= bound {
        b *= two();
    }
    b
}

impl IsolatedRoot {
    pub fn low(&self) -> &BigRational {
        &self.low
    }

    pub fn high(&self) -> &BigRational {
        &self.high
    }

    pub fn defining(&self) -> &Poly {
        &self.defining
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn width(&self) -> BigRational {
        &self.high - &self.low
    }

    pub fn sturm_count(&self) -> usize {
        SturmSequence::new(&self.defining).count(&self.low, &self.high)
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.low + &self.high) / two()).to_f64().unwrap_or(f64::NAN)
    }

    /// Bisects until the bracket is no wider than `width`.
    pub fn refine(&mut self, width: &BigRational) {
        let p = IntPoly::new(&self.defining);
        while &self.width() > width {
            self.bisect(&p);
        }
    }

    pub fn refined(&self, width: &BigRational) -> IsolatedRoot {
        let mut r = self.clone();
        r.refine(width);
        r
    }

    /// Halves the bracket. The root is simple and alone in `(low, high]`, so
    /// the sign of the defining polynomial changes across it.
    fn bisect(&mut self, p: &IntPoly) {
        let mid = (&self.low + &self.high) / two();
        let s_high = p.sign_at(&self.high);
        let s_mid = p.sign_at(&mid);
        if s_high == 0 || (s_mid != 0 && s_mid != s_high) {
            self.low = mid;
        } else {
            self.high = mid;
        }
    }

    /// Exact equality: the two defining polynomials share a root inside the
    /// intersection of the brackets.
    pub fn same_root(&self, other: &IsolatedRoot) -> bool {
        let lo = (&self.low).max(&other.low);
        let hi = (&self.high).min(&other.high);
        if lo >= hi {
            return false;
        }
        let g = self.defining.gcd(&other.defining);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        SturmSequence::new(&g).count(lo, hi) >= 1
    }

    /// Exact comparison of the two roots.
    pub fn cmp_root(&self, other: &IsolatedRoot) -> Ordering {
        if self.same_root(other) {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let (sa, sb) = (IntPoly::new(&a.defining), IntPoly::new(&b.defining));
        loop {
            if a.high <= b.low {
                return Ordering::Less;
            }
            if b.high <= a.low {
                return Ordering::Greater;
            }
            a.bisect(&sa);
            b.bisect(&sb);
        }
    }

    /// Compares the root with a rational. Exact.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        if x <= &self.low {
            return Ordering::Greater;
        }
        if self.defining.eval(x).is_zero() && x <= &self.high {
            return Ordering::Equal;
        }
        if x >= &self.high {
            return Ordering::Less;
        }
        // x strictly inside and not the root
        let sturm = SturmSequence::new(&self.defining);
        if sturm.count(&self.low, x) == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

/// Least positive real root of `p`, bracketed to at most `width`.
pub fn smallest_positive_root(p: &Poly, width: &BigRational) -> Result<IsolatedRoot> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sq = p.squarefree();
    if sq.degree().unwrap_or(0) == 0 {
        return Err(Error::NoPositiveRoot);
    }
    let sturm = SturmSequence::new(&sq);
    let zero = BigRational::zero();
    let mut hi = root_bound(&sq);
    if sturm.count(&zero, &hi) == 0 {
        return Err(Error::NoPositiveRoot);
    }
    let mut lo = zero;
    while sturm.count(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / two();
        if sturm.count(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut root = IsolatedRoot { low: lo, high: hi, defining: sq.clone(), multiplicity: 1 };
    root.refine(width);
    // multiplicity: the root is shared with successive derivatives of p
    let mut deriv = p.derivative();
    while !deriv.is_zero() {
        let g = sq.gcd(&deriv);
        if g.degree().unwrap_or(0) == 0 || SturmSequence::new(&g).count(&root.low, &root.high) == 0 {
            break;
        }
        root.multiplicity += 1;
        deriv = deriv.derivative();
    }
    Ok(root)
}
