//! Univariate polynomials in the size parameter `n`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::ExactRational;

/// A polynomial in `n` with exact rational coefficients.
///
/// Coefficients are stored in ascending order of the power of `n` with
/// trailing zeros trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "PolyRepr", into = "PolyRepr")]
pub struct MomentPolynomial {
    coeffs: Vec<ExactRational>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coeffs: Vec<ExactRational>,
}

impl From<PolyRepr> for MomentPolynomial {
    fn from(r: PolyRepr) -> Self {
        MomentPolynomial::from_coeffs(r.coeffs)
    }
}

impl From<MomentPolynomial> for PolyRepr {
    fn from(p: MomentPolynomial) -> Self {
        PolyRepr { coeffs: p.coeffs }
    }
}

impl MomentPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::ONE)
    }

    /// The indeterminate `n`.
    pub fn n() -> Self {
        Self::monomial(ExactRational::ONE, 1)
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * n^degree`.
    pub fn monomial(c: ExactRational, degree: usize) -> Self {
        let mut coeffs = vec![ExactRational::ZERO; degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Integer coefficients in ascending order of the power of `n`.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| ExactRational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> ExactRational {
        self.coeffs.get(power).cloned().unwrap_or(ExactRational::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients, i.e. `degree + 1` (0 for zero).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, n: i64) -> ExactRational {
        self.eval_rational(&ExactRational::from(n))
    }

    pub fn eval_rational(&self, n: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::ZERO, |acc, c| &(&acc * n) + c)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `n^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactRational::ZERO; k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(ExactRational::is_integer)
    }

    /// True when the nonzero coefficients strictly alternate in sign as the
    /// power of `n` increases.
    pub fn has_alternating_signs(&self) -> bool {
        let signs: Vec<i32> = self
            .coeffs
            .iter()
            .map(ExactRational::signum)
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).all(|w| w[0] == -w[1])
    }
}

impl Add<&MomentPolynomial> for &MomentPolynomial {
    type Output = MomentPolynomial;
    fn add(self, rhs: &MomentPolynomial) -> MomentPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        MomentPolynomial::from_coeffs(
            (0..len)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Add for MomentPolynomial {
    type Output = MomentPolynomial;
    fn add(self, rhs: MomentPolynomial) -> MomentPolynomial {
        &self + &rhs
    }
}

impl AddAssign<&MomentPolynomial> for MomentPolynomial {
    fn add_assign(&mut self, rhs: &MomentPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), ExactRational::ZERO);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl Neg for &MomentPolynomial {
    type Output = MomentPolynomial;
    fn neg(self) -> MomentPolynomial {
        MomentPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&MomentPolynomial> for &MomentPolynomial {
    type Output = MomentPolynomial;
    fn sub(self, rhs: &MomentPolynomial) -> MomentPolynomial {
        self + &(-rhs)
    }
}

impl Sub for MomentPolynomial {
    type Output = MomentPolynomial;
    fn sub(self, rhs: MomentPolynomial) -> MomentPolynomial {
        &self - &rhs
    }
}

impl Mul<&MomentPolynomial> for &MomentPolynomial {
    type Output = MomentPolynomial;
    fn mul(self, rhs: &MomentPolynomial) -> MomentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return MomentPolynomial::zero();
        }
        let mut out = vec![ExactRational::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        MomentPolynomial::from_coeffs(out)
    }
}

impl Mul for MomentPolynomial {
    type Output = MomentPolynomial;
    fn mul(self, rhs: MomentPolynomial) -> MomentPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for MomentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl From<ExactRational> for MomentPolynomial {
    fn from(c: ExactRational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for MomentPolynomial {
    /// Descending powers, e.g. `4n^2 - 3n` or `9/8 n^2 + 7/2 n + 15/8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.signum() < 0;
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            let var = match power {
                0 => String::new(),
                1 => "n".to_string(),
                p => format!("n^{p}"),
            };
            if power == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else if abs.is_integer() {
                write!(f, "{abs}{var}")?;
            } else {
                write!(f, "{abs} {var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MomentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
