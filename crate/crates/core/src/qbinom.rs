//! q-integers, q-factorials and Gaussian binomials as integer polynomials in
//! `q`, and the matrix `T_ij = [j choose i]_q`.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::triangle::Location;

/// Integer coefficients in ascending powers of `q`, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial::default()
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::from_i64(&[1])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Horner evaluation in the field of `q`.
    pub fn eval(&self, q: &Scalar) -> Scalar {
        let field = q.field();
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| acc * q + field.from_bigint(c))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let at = |p: &IntPolynomial, i: usize| p.coeffs.get(i).cloned().unwrap_or_default();
        IntPolynomial::new((0..n).map(|i| at(self, i) + at(other, i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{c}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{c}q^{i}")?,
            }
        }
        Ok(())
    }
}

/// `[n]_q = 1 + q + … + q^{n-1}`; `[0]_q = 0`.
pub fn qint(n: usize) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(); n])
}

/// `[n]_q^! = [1]_q [2]_q … [n]_q`; `[0]_q^! = 1`.
pub fn qfact(n: usize) -> IntPolynomial {
    (1..=n).fold(IntPolynomial::one(), |acc, i| &acc * &qint(i))
}

/// The Gaussian binomial `[n choose k]_q`, zero unless `0 ≤ k ≤ n`.
///
/// Built row by row from `[m+1, k] = [m, k] + q^{m+1-k} [m, k-1]`.
pub fn qbinomial(n: i64, k: i64) -> IntPolynomial {
    if n < 0 || k < 0 || k > n {
        return IntPolynomial::zero();
    }
    let (n, k) = (n as usize, k as usize);
    let mut row = vec![IntPolynomial::one()];
    for m in 0..n {
        let mut next = Vec::with_capacity(m + 2);
        for j in 0..=m + 1 {
            let keep = row.get(j).cloned().unwrap_or_default();
            let carried = if j == 0 {
                IntPolynomial::zero()
            } else {
                row[j - 1].shift(m + 1 - j)
            };
            next.push(&keep + &carried);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// The `(d+1)×(d+1)` matrix `T_ij = [j choose i]_q` at a nonzero `q`.
pub fn qbinom_matrix(d: usize, q: &Scalar) -> Result<Matrix> {
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    let field = q.field();
    let mut t = Matrix::zeros(field, d + 1, d + 1);
    for j in 0..=d {
        for i in 0..=j {
            t.set(i, j, qbinomial(j as i64, i as i64).eval(q))?;
        }
    }
    Ok(t)
}

/// `det T[i, j] = q^{i(j-i)(j-i+1)/2}` for the q-binomial matrix.
pub fn qbinom_det_closed(i: usize, j: usize, q: &Scalar) -> Result<Scalar> {
    if i > j {
        return Err(Error::IndexOutOfRange { i, j, size: j + 1 });
    }
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    let k = j - i;
    q.pow((i * k * (k + 1) / 2) as i64)
}

/// `det T[λ] = q^{t s (s+1)/2}` at `λ = (r, s, t)`.
pub fn qbinom_location_det(l: Location, q: &Scalar) -> Result<Scalar> {
    if l.r < 0 || l.s < 0 || l.t < 0 {
        return Err(Error::NotInTriangle(l, l.sum().max(0) as usize));
    }
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    q.pow(l.t * l.s * (l.s + 1) / 2)
}
