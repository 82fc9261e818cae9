//! Truncated formal power series in `x` with coefficients in `Q[n]`.

use serde::{Deserialize, Serialize};

use super::{factorial, ExactRational, MomentPolynomial};
use crate::error::{invalid, Result};

/// `Σ_{k < order} c_k x^k`, where every `c_k` is a polynomial in `n`.
///
/// Coefficients at or beyond `order` are unknown, never zero by assumption.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<MomentPolynomial>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![MomentPolynomial::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = MomentPolynomial::one();
        }
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// extra ones are dropped.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<MomentPolynomial>) -> Self {
        coeffs.resize(order, MomentPolynomial::zero());
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[MomentPolynomial] {
        &self.coeffs
    }

    /// Coefficient of `x^k`. Panics when `k >= order`.
    pub fn coeff(&self, k: usize) -> &MomentPolynomial {
        assert!(k < self.order, "coefficient x^{k} beyond truncation order {}", self.order);
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: MomentPolynomial) {
        assert!(k < self.order, "coefficient x^{k} beyond truncation order {}", self.order);
        self.coeffs[k] = c;
    }

    /// Lower the truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            order,
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        Self {
            order,
            coeffs: (0..order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = vec![MomentPolynomial::zero(); order];
        for i in 0..order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..order - i {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j] += &(&self.coeffs[i] * &rhs.coeffs[j]);
                }
            }
        }
        Self { order, coeffs: out }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// `exp(s)` for a series with zero constant term.
    ///
    /// Uses `E' = s' E`, i.e. `k e_k = Σ_{j=1..k} j s_j e_{k-j}`.
    pub fn exp(&self) -> Result<Self> {
        if self.order == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_zero() {
            return invalid("exp requires a series with zero constant term");
        }
        let mut e = vec![MomentPolynomial::zero(); self.order];
        e[0] = MomentPolynomial::one();
        for k in 1..self.order {
            let mut acc = MomentPolynomial::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() || e[k - j].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[j] * &e[k - j]).scale(&ExactRational::from(j));
            }
            e[k] = acc.scale(&ExactRational::new(1, k as i64));
        }
        Ok(Self {
            order: self.order,
            coeffs: e,
        })
    }

    /// `log(s)` for a series with constant term 1.
    ///
    /// Uses `s L' = s'`, i.e. `k l_k = k s_k - Σ_{j=1..k-1} j l_j s_{k-j}`.
    pub fn log(&self) -> Result<Self> {
        if self.order == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] != MomentPolynomial::one() {
            return invalid("log requires a series with constant term 1");
        }
        let mut l = vec![MomentPolynomial::zero(); self.order];
        for k in 1..self.order {
            let mut acc = self.coeffs[k].scale(&ExactRational::from(k));
            for j in 1..k {
                if l[j].is_zero() || self.coeffs[k - j].is_zero() {
                    continue;
                }
                acc = &acc - &(&l[j] * &self.coeffs[k - j]).scale(&ExactRational::from(j));
            }
            l[k] = acc.scale(&ExactRational::new(1, k as i64));
        }
        Ok(Self {
            order: self.order,
            coeffs: l,
        })
    }

    /// Multiply the coefficient of `x^k` by `k!`.
    pub fn laplace_transform(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&factorial(k)))
                .collect(),
        }
    }

    /// Divide the coefficient of `x^m` by `m!`.
    pub fn borel_hadamard(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&factorial(k).recip()))
                .collect(),
        }
    }

    /// Replace `x` by `x²`. The order doubles: every odd coefficient below
    /// `2·order` is known to vanish.
    pub fn substitute_square(&self) -> Self {
        if self.order == 0 {
            return self.clone();
        }
        let order = 2 * self.order;
        let mut coeffs = vec![MomentPolynomial::zero(); order];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        Self { order, coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn constant_series(order: usize, cs: &[ExactRational]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(
            order,
            cs.iter().cloned().map(MomentPolynomial::constant).collect(),
        )
    }

    #[test]
    fn exp_half_square() {
        let mut s = TruncatedSeries::zero(7);
        s.set_coeff(2, MomentPolynomial::constant(q(1, 2)));
        let e = s.exp().unwrap();
        let expect = [q(1, 1), q(1, 2), q(1, 8), q(1, 48)];
        for (i, c) in expect.iter().enumerate() {
            assert_eq!(e.coeff(2 * i), &MomentPolynomial::constant(c.clone()));
            if i < 3 {
                assert!(e.coeff(2 * i + 1).is_zero());
            }
        }
    }

    #[test]
    fn exp_log_trivial() {
        assert_eq!(TruncatedSeries::zero(5).exp().unwrap(), TruncatedSeries::one(5));
        assert_eq!(TruncatedSeries::one(5).log().unwrap(), TruncatedSeries::zero(5));
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(TruncatedSeries::one(3).exp().is_err());
        assert!(TruncatedSeries::zero(3).log().is_err());
    }

    #[test]
    fn laplace_and_square() {
        let s = constant_series(3, &[q(1, 1), q(0, 1), q(1, 2)]);
        assert_eq!(
            s.laplace_transform(),
            constant_series(3, &[q(1, 1), q(0, 1), q(1, 1)])
        );
        let t = constant_series(4, &[q(1, 1), q(1, 1), q(0, 1), q(1, 1)]);
        let sq = t.substitute_square();
        assert_eq!(sq.order(), 8);
        assert_eq!(sq, constant_series(8, &[q(1, 1), q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1)]));
    }

    #[test]
    fn json_shape() {
        let s = constant_series(2, &[q(1, 1), q(1, 2)]);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"order": 2, "coeffs": [{"coeffs": ["1/1"]}, {"coeffs": ["1/2"]}]})
        );
    }

    fn arb_series(constant: i64) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(prop::collection::vec((-6i64..6, 1i64..4), 0..3), 5).prop_map(
            move |cs| {
                let mut coeffs: Vec<MomentPolynomial> = cs
                    .into_iter()
                    .map(|c| {
                        MomentPolynomial::from_coeffs(
                            c.into_iter().map(|(n, d)| ExactRational::new(n, d)).collect(),
                        )
                    })
                    .collect();
                coeffs[0] = MomentPolynomial::from_i64s(&[constant]);
                TruncatedSeries::from_coeffs(5, coeffs)
            },
        )
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(s in arb_series(0), t in arb_series(1)) {
            prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
            prop_assert_eq!(t.log().unwrap().exp().unwrap(), t);
        }

        #[test]
        fn laplace_borel_identity(s in arb_series(1)) {
            prop_assert_eq!(s.laplace_transform().borel_hadamard(), s.clone());
            prop_assert_eq!(s.borel_hadamard().laplace_transform(), s);
        }

        #[test]
        fn exp_is_multiplicative(s in arb_series(0), t in arb_series(0)) {
            prop_assert_eq!(s.add(&t).exp().unwrap(), s.exp().unwrap().mul(&t.exp().unwrap()));
        }
    }
}
