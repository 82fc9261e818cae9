//! Exact scalars, polynomials in `n`, and truncated power series in `x`.

mod poly;
mod rational;
mod series;

pub use poly::MomentPolynomial;
pub use rational::ExactRational;
pub use series::TruncatedSeries;


use num_bigint::BigInt;

/// Commutative ring operations needed by generic octonion and Jordan code.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &ExactRational) -> Self;

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }
}

impl Scalar for ExactRational {
    fn zero() -> Self {
        ExactRational::ZERO
    }
    fn one() -> Self {
        ExactRational::ONE
    }
    fn is_zero(&self) -> bool {
        ExactRational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &ExactRational) -> Self {
        self * c
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

/// `k!` as an exact rational.
pub fn factorial(k: usize) -> ExactRational {
    ExactRational::from((1..=k as u64).fold(BigInt::from(1u8), |acc, i| acc * i))
}

/// `k!!`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(k: i64) -> ExactRational {
    let mut acc = BigInt::from(1u8);
    let mut i = k;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    ExactRational::from(acc)
}

/// `C(n, k)`, zero for `k > n`.
pub fn binomial(n: usize, k: usize) -> ExactRational {
    if k > n {
        return ExactRational::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1u8);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    ExactRational::from(acc)
}

/// Number of perfect matchings of `k` points: `(k-1)!!` for even `k`, else 0.
pub fn wick_number(k: usize) -> ExactRational {
    if k % 2 == 1 {
        ExactRational::ZERO
    } else {
        double_factorial(k as i64 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), ExactRational::ONE);
        assert_eq!(factorial(5), ExactRational::from(120i64));
        assert_eq!(double_factorial(7), ExactRational::from(105i64));
        assert_eq!(double_factorial(-1), ExactRational::ONE);
        assert_eq!(wick_number(6), ExactRational::from(15i64));
        assert_eq!(wick_number(5), ExactRational::ZERO);
        assert_eq!(binomial(6, 2), ExactRational::from(15i64));
        assert_eq!(binomial(3, 5), ExactRational::ZERO);
        assert_eq!(binomial(40, 20).to_string(), "137846528820");
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }
}
