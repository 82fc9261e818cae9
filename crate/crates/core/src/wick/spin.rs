//! Spin-factor elements and the spin oracle.

use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::exact::{wick_number, ExactRational, MomentPolynomial, Scalar};
use crate::multiplicity::MultiplicityVector;
use crate::wick::sympoly::{SymPoly, Variable};

/// `x0 + x` with `x ∈ R^n`, under `(x0, x)∙(y0, y) = (x0 y0 + x·y, x0 y + y0 x)`.
#[derive(Clone, PartialEq, Debug)]
pub struct SpinElement<T> {
    pub x0: T,
    pub vector: Vec<T>,
}

impl<T: Scalar> SpinElement<T> {
    pub fn identity(n: usize) -> Self {
        Self {
            x0: T::one(),
            vector: vec![T::zero(); n],
        }
    }

    pub fn jordan(&self, rhs: &Self) -> Self {
        let mut x0 = self.x0.mul(&rhs.x0);
        for (a, b) in self.vector.iter().zip(&rhs.vector) {
            x0.add_assign(&a.mul(b));
        }
        let vector = self
            .vector
            .iter()
            .zip(&rhs.vector)
            .map(|(a, b)| self.x0.mul(b).add(&rhs.x0.mul(a)))
            .collect();
        Self { x0, vector }
    }

    pub fn power(&self, k: usize) -> Self {
        let mut p = Self::identity(self.vector.len());
        for _ in 0..k {
            p = self.jordan(&p);
        }
        p
    }

    /// The scalar part; `Tr 1 = 1` in this normalization.
    pub fn trace(&self) -> &T {
        &self.x0
    }
}

/// The generic element with standard Gaussian coordinates in `R^n`.
pub fn generic_spin(n: usize) -> Result<SpinElement<SymPoly>> {
    if n > u8::MAX as usize {
        return invalid(format!("spin oracle supports n <= 255, got {n}"));
    }
    Ok(SpinElement {
        x0: SymPoly::var(Variable::SpinScalar),
        vector: (1..=n).map(|p| SymPoly::var(Variable::SpinVector { p: p as u8 })).collect(),
    })
}

/// `⟨Tr x^k⟩` for explicit `n` by Wick expansion in all `n + 1` coordinates.
pub fn oracle_spin_moment(k: usize, n: usize) -> Result<ExactRational> {
    let x = generic_spin(n)?;
    let a = k / 2;
    let (p, q) = (x.power(a), x.power(k - a));
    // Tr(x^a∙x^b) is the scalar part of the product.
    let mut total = p.x0.expect_product(&q.x0);
    for (u, v) in p.vector.iter().zip(&q.vector) {
        total += u.expect_product(v);
    }
    Ok(total)
}

/// `⟨Π_k (Tr x^k)^{m_k}⟩` for explicit `n`.
pub fn oracle_spin_mixed(m: &MultiplicityVector, n: usize) -> Result<ExactRational> {
    let x = generic_spin(n)?;
    let traces: Vec<SymPoly> = m.sizes().into_iter().map(|k| x.power(k).x0).collect();
    let Some((last, rest)) = traces.split_last() else {
        return Ok(ExactRational::ONE);
    };
    let head = rest.iter().fold(<SymPoly as Scalar>::one(), |acc, t| Scalar::mul(&acc, t));
    Ok(head.expect_product(last))
}

/// Polynomial in `x0` and `r = |x|²`, keyed by `(deg x0, deg r)`.
type Bivariate = BTreeMap<(usize, usize), ExactRational>;

fn bi_mul(a: &Bivariate, b: &Bivariate) -> Bivariate {
    let mut out = Bivariate::new();
    for (&(i, j), c) in a {
        for (&(k, l), d) in b {
            *out.entry((i + k, j + l)).or_default() += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn bi_add_shifted(out: &mut Bivariate, a: &Bivariate, di: usize, dj: usize) {
    for (&(i, j), c) in a {
        *out.entry((i + di, j + dj)).or_default() += c;
    }
}

/// Scalar part of `x^k`, found by writing `x^k = a_k + b_k x` and applying
/// `x∙(a + b x) = (x0 a + r b) + (a + x0 b) x`.
fn spin_trace_bivariate(k: usize) -> Bivariate {
    let mut a = Bivariate::from([((0, 0), ExactRational::ONE)]);
    let mut b = Bivariate::new();
    for _ in 0..k {
        let mut na = Bivariate::new();
        bi_add_shifted(&mut na, &a, 1, 0);
        bi_add_shifted(&mut na, &b, 0, 1);
        let mut nb = a.clone();
        bi_add_shifted(&mut nb, &b, 1, 0);
        a = na;
        b = nb;
    }
    a
}

/// `⟨x0^a r^b⟩ = w(a) Π_{t<b} (n + 2t)`.
fn bi_expectation(p: &Bivariate) -> MomentPolynomial {
    p.iter()
        .map(|(&(i, j), c)| {
            (0..j)
                .fold(MomentPolynomial::one(), |acc, t| &acc * &MomentPolynomial::from_i64s(&[2 * t as i64, 1]))
                .scale(&(c * &wick_number(i)))
        })
        .sum()
}

/// `⟨Tr x^k⟩` as a polynomial in `n`.
pub fn oracle_spin_moment_symbolic(k: usize) -> MomentPolynomial {
    bi_expectation(&spin_trace_bivariate(k))
}

/// `⟨Π_k (Tr x^k)^{m_k}⟩` as a polynomial in `n`.
pub fn oracle_spin_mixed_symbolic(m: &MultiplicityVector) -> MomentPolynomial {
    let prod = m
        .sizes()
        .into_iter()
        .fold(Bivariate::from([((0, 0), ExactRational::ONE)]), |acc, k| {
            bi_mul(&acc, &spin_trace_bivariate(k))
        });
    bi_expectation(&prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parallel::RunOptions;
    use crate::spin::{spin_mixed_moment_structures, spin_moment_closed};

    #[test]
    fn jordan_product() {
        let e = |x0: i64, v: &[i64]| SpinElement {
            x0: ExactRational::from(x0),
            vector: v.iter().map(|&a| ExactRational::from(a)).collect(),
        };
        let x = e(2, &[1, -1, 3]);
        let y = e(-1, &[0, 2, 1]);
        assert_eq!(x.jordan(&y), e(-1, &[-1, 5, -1]));
        assert_eq!(x.jordan(&SpinElement::identity(3)), x);
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(x.power(a).jordan(&x.power(b)), x.power(a + b));
            }
        }
    }

    #[test]
    fn explicit_n() {
        assert_eq!(oracle_spin_moment(6, 2).unwrap(), ExactRational::from(273i64));
        for n in 1..=3 {
            for k in 0..=6 {
                assert_eq!(oracle_spin_moment(k, n).unwrap(), spin_moment_closed(k).eval(n as i64), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn symbolic() {
        for k in 0..=12 {
            assert_eq!(oracle_spin_moment_symbolic(k), spin_moment_closed(k), "k = {k}");
        }
        let m: MultiplicityVector = "3:2".parse().unwrap();
        assert_eq!(oracle_spin_mixed_symbolic(&m), MomentPolynomial::from_i64s(&[15, 36, 9]));
        assert_eq!(oracle_spin_mixed(&m, 2).unwrap(), ExactRational::from(15 + 72 + 36i64));
        let m: MultiplicityVector = "3:4".parse().unwrap();
        assert_eq!(
            oracle_spin_mixed_symbolic(&m),
            spin_mixed_moment_structures(&m, &RunOptions::default()).unwrap()
        );
    }
}
