use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Square matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix { n, data: vec![BigRational::zero(); n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        RationalMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RationalMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sum(&self, i: usize) -> BigRational {
        self.row(i).iter().sum()
    }

    /// `I - zT` as a matrix of polynomials.
    pub fn resolvent_matrix(&self) -> PolyMatrix {
        let n = self.n;
        let mut m = PolyMatrix { n, data: Vec::with_capacity(n * n) };
        for i in 0..n {
            for j in 0..n {
                let one = if i == j { BigRational::one() } else { BigRational::zero() };
                m.data.push(Poly::new(vec![one, -self.get(i, j).clone()]));
            }
        }
        m
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Square matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.n + j]
    }

    /// The matrix with row `r` and column `c` deleted.
    pub fn minor(&self, r: usize, c: usize) -> PolyMatrix {
        let n = self.n - 1;
        let mut data = Vec::with_capacity(n * n);
        for i in (0..self.n).filter(|&i| i != r) {
            for j in (0..self.n).filter(|&j| j != c) {
                data.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { n, data }
    }

    /// Determinant by Bareiss fraction-free elimination (exact divisions in Q[z]).
    pub fn det(&self) -> Poly {
        let n = self.n;
        if n == 0 {
            return Poly::one();
        }
        let mut m: Vec<Vec<Poly>> = (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Poly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -&d
        } else {
            d
        }
    }
}

/// Solves `A x = b` over the field of rational functions by Gauss–Jordan
/// elimination, normalizing after every operation.
pub fn solve_ratfunc(a: Vec<Vec<RatFunc>>, b: Vec<RatFunc>) -> Result<Vec<RatFunc>> {
    let n = a.len();
    let mut m: Vec<Vec<RatFunc>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::Singular)?;
        m.swap(k, p);
        let inv = m[k][k].recip()?;
        for x in m[k].iter_mut().skip(k) {
            *x = x.mul(&inv);
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k].clone();
            for j in k..=n {
                let t = factor.mul(&m[k][j]);
                m[i][j] = m[i][j].sub(&t);
            }
        }
    }
    Ok(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Solves an integer system `A x = b` exactly: Bareiss fraction-free forward
/// elimination, then rational back substitution.
pub fn solve_integer(a: &[Vec<BigInt>], b: &[BigInt]) -> Result<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let r = (k + 1..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::Singular)?;
            m.swap(k, r);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn int_rows(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn det_of_resolvent_two_cycle() {
        // T = [[0,1],[1,0]] -> det(I - zT) = 1 - z^2
        let t = RationalMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]]);
        assert_eq!(t.resolvent_matrix().det(), Poly::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn det_needs_pivoting() {
        let t = RationalMatrix::from_rows(vec![
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
        ]);
        // I - zT = [[1-z,0,0],[0,1,-z],[0,-z,1]] -> (1-z)(1-z^2)
        let want = &Poly::from_ints(&[1, -1]) * &Poly::from_ints(&[1, 0, -1]);
        assert_eq!(t.resolvent_matrix().det(), want);
        // a matrix with zero leading entry: [[0,1],[1,0]] as polynomials
        let m = PolyMatrix { n: 2, data: vec![Poly::zero(), Poly::one(), Poly::one(), Poly::zero()] };
        assert_eq!(m.det(), Poly::from_ints(&[-1]));
    }

    #[test]
    fn integer_solver() {
        let a = int_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let b = vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)];
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(x, vec![rat(3, 4), rat(1, 2), rat(1, 4)]);
        let sing = int_rows(&[&[1, 1], &[2, 2]]);
        assert!(solve_integer(&sing, &[BigInt::from(1), BigInt::from(1)]).is_err());
    }
}
