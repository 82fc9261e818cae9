//! Sparse multivariate polynomials over the Gaussian variables.

use std::fmt;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::exact::{double_factorial, ExactRational, Scalar};

/// A Gaussian variable. The derived order is the canonical monomial order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Variable {
    /// Real diagonal entry `A¹_jj` of a Hermitian octonion matrix.
    AlbertDiagonal { j: u8 },
    /// Coefficient of `e_unit` in the entry `(j, jp)`, `j < jp`.
    AlbertOffDiagonal { unit: u8, j: u8, jp: u8 },
    /// `x0` of a spin-factor element.
    SpinScalar,
    /// Coordinate `x_p` of the vector part, `p ≥ 1`.
    SpinVector { p: u8 },
}

impl Variable {
    /// Variance under the Gaussian weight `exp(-Tr X² / 2)`.
    pub fn variance(&self) -> ExactRational {
        match self {
            Variable::AlbertOffDiagonal { .. } => ExactRational::new(1, 2),
            _ => ExactRational::ONE,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::AlbertDiagonal { j } => write!(f, "a[{}{}]", j + 1, j + 1),
            Variable::AlbertOffDiagonal { unit, j, jp } => {
                write!(f, "a{}[{}{}]", unit, j + 1, jp + 1)
            }
            Variable::SpinScalar => write!(f, "x0"),
            Variable::SpinVector { p } => write!(f, "x{p}"),
        }
    }
}

/// Sorted `(variable, exponent)` list with positive exponents.
pub type Monomial = SmallVec<[(Variable, u8); 6]>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Monomial::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `⟨m⟩` for independent centered Gaussians: `Π (e-1)!! σ^e` over the
/// variables, zero if any exponent is odd.
pub fn monomial_expectation(m: &Monomial) -> ExactRational {
    let mut out = ExactRational::ONE;
    for &(v, e) in m {
        if e % 2 == 1 {
            return ExactRational::ZERO;
        }
        out *= double_factorial(e as i64 - 1) * v.variance().pow(e as u32 / 2);
    }
    out
}

/// A polynomial in [`Variable`]s with exact rational coefficients.
#[derive(Clone, Default)]
pub struct SymPoly {
    terms: FxHashMap<Monomial, ExactRational>,
}

impl PartialEq for SymPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for SymPoly {}

impl SymPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactRational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::new(), c);
        }
        p
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(ExactRational::ONE, &[(v, 1)])
    }

    pub fn monomial(c: ExactRational, powers: &[(Variable, u8)]) -> Self {
        let mut m: Monomial = powers.iter().copied().filter(|&(_, e)| e > 0).collect();
        m.sort_by_key(|&(v, _)| v);
        let mut merged = Monomial::new();
        for (v, e) in m {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(merged, c);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactRational)> {
        self.terms.iter()
    }

    /// Terms in canonical (sorted monomial) order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, ExactRational)> {
        let mut v: Vec<(Monomial, ExactRational)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn coeff(&self, powers: &[(Variable, u8)]) -> ExactRational {
        let key = Self::monomial(ExactRational::ONE, powers)
            .terms
            .into_keys()
            .next()
            .unwrap_or_default();
        self.terms.get(&key).cloned().unwrap_or(ExactRational::ZERO)
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&(_, e)| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: ExactRational) {
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SymPoly, c: &ExactRational) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    /// `⟨p⟩` under independent centered Gaussians with [`Variable::variance`].
    pub fn expectation(&self) -> ExactRational {
        self.terms
            .iter()
            .map(|(m, c)| c * &monomial_expectation(m))
            .sum()
    }

    /// `⟨self · other⟩` without expanding the product: only monomial pairs
    /// with the same set of odd-exponent variables contribute.
    pub fn expect_product(&self, other: &SymPoly) -> ExactRational {
        type Parity = SmallVec<[Variable; 8]>;
        let parity = |m: &Monomial| -> Parity { m.iter().filter(|&&(_, e)| e % 2 == 1).map(|&(v, _)| v).collect() };
        let mut buckets: FxHashMap<Parity, Vec<(&Monomial, &ExactRational)>> = FxHashMap::default();
        for (m, c) in &other.terms {
            buckets.entry(parity(m)).or_default().push((m, c));
        }
        let mut total = ExactRational::ZERO;
        for (m, c) in &self.terms {
            if let Some(bucket) = buckets.get(&parity(m)) {
                for (m2, c2) in bucket {
                    let e = monomial_expectation(&mono_mul(m, m2));
                    if !e.is_zero() {
                        total += &(c * *c2) * &e;
                    }
                }
            }
        }
        total
    }

    /// Substitute each variable by a polynomial.
    pub fn substitute(&self, f: impl Fn(Variable) -> SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let mut term = SymPoly::constant(c.clone());
            for &(v, e) in m {
                let s = f(v);
                for _ in 0..e {
                    term = Scalar::mul(&term, &s);
                }
            }
            out.add_assign(&term);
        }
        out
    }
}

impl Scalar for SymPoly {
    fn zero() -> Self {
        SymPoly::zero()
    }

    fn one() -> Self {
        SymPoly::constant(ExactRational::ONE)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = SymPoly::zero();
        out.terms.reserve(self.terms.len() * rhs.terms.len() / 2 + 1);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn add_assign(&mut self, rhs: &Self) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, e) in m {
                if *e == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
