//! Hermitian octonion matrices and the Albert-algebra oracle.

use crate::error::{invalid, Result};
use crate::exact::{ExactRational, Scalar};
use crate::multiplicity::MultiplicityVector;
use crate::nesting::{enumerate_fully_nested, Direction, FnCache, NestingWord};
use crate::octonion::{Octonion, SignedUnit};
use crate::wick::sympoly::{SymPoly, Variable};

/// An `n × n` matrix of octonions, stored row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct HermOctMatrix<T> {
    n: usize,
    entries: Vec<Octonion<T>>,
}

impl<T: Scalar> HermOctMatrix<T> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![Octonion::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for j in 0..n {
            m.entries[j * n + j] = Octonion::one();
        }
        m
    }

    /// Hermitian matrix from a real diagonal and the strict upper triangle;
    /// the lower triangle is filled with conjugates.
    pub fn hermitian(diagonal: Vec<T>, upper: impl Fn(usize, usize) -> Octonion<T>) -> Self {
        let n = diagonal.len();
        let mut m = Self::zero(n);
        for (j, d) in diagonal.into_iter().enumerate() {
            m.entries[j * n + j] = Octonion::real(d);
        }
        for j in 0..n {
            for jp in j + 1..n {
                let o = upper(j, jp);
                m.entries[jp * n + j] = o.conjugate();
                m.entries[j * n + jp] = o;
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, l: usize) -> &Octonion<T> {
        &self.entries[j * self.n + l]
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|j| (0..self.n).all(|l| *self.get(j, l) == self.get(l, j).conjugate()))
    }

    /// Ordinary matrix product with octonion entries.
    pub fn matmul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for j in 0..n {
            for k in 0..n {
                let mut acc = Octonion::zero();
                for l in 0..n {
                    acc = acc.add(&self.get(j, l).mul(rhs.get(l, k)));
                }
                out.entries[j * n + k] = acc;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// `X∙Y = (XY + YX) / 2`.
    pub fn jordan(&self, rhs: &Self) -> Self {
        self.matmul(rhs)
            .add(&rhs.matmul(self))
            .scale(&ExactRational::new(1, 2))
    }

    /// `X^k = X∙X^{k-1}`, with `X^0 = I`.
    pub fn jordan_power(&self, k: usize) -> Self {
        let mut p = Self::identity(self.n);
        for _ in 0..k {
            p = self.jordan(&p);
        }
        p
    }

    /// Sum of the real parts of the diagonal.
    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, j| acc.add(self.get(j, j).re()))
    }

    /// `Tr(A∙B) = Σ_{j,l} Re(A_jl B_lj)`.
    pub fn trace_form(&self, rhs: &Self) -> T {
        let mut acc = T::zero();
        for j in 0..self.n {
            for l in 0..self.n {
                acc.add_assign(&self.get(j, l).re_mul(rhs.get(l, j)));
            }
        }
        acc
    }

    /// Product of `k` copies of `self` under a fully nested bracketing.
    pub fn bracketed_power(&self, nesting: &NestingWord, k: usize) -> Self {
        match k {
            0 => Self::identity(self.n),
            1 => self.clone(),
            2 => self.matmul(self),
            _ => {
                let rest = NestingWord::new(nesting.directions()[1..].to_vec());
                let inner = self.bracketed_power(&rest, k - 1);
                match nesting.directions()[0] {
                    Direction::L => inner.matmul(self),
                    Direction::R => self.matmul(&inner),
                }
            }
        }
    }
}

fn albert_var(i: usize, j: usize, jp: usize) -> Variable {
    if j == jp {
        Variable::AlbertDiagonal { j: j as u8 }
    } else {
        Variable::AlbertOffDiagonal {
            unit: (i + 1) as u8,
            j: j as u8,
            jp: jp as u8,
        }
    }
}

/// Coefficient `A^i_{jl}` of `e_{i+1}` (zero-based `i`) in entry `(j, l)` of
/// the generic matrix: `A¹` symmetric, `A^i` antisymmetric for `i > 1`.
fn coordinate(i: usize, j: usize, l: usize) -> Option<(i64, Variable)> {
    use std::cmp::Ordering::*;
    match (i, j.cmp(&l)) {
        (0, Equal) => Some((1, albert_var(0, j, j))),
        (_, Equal) => None,
        (_, Less) => Some((1, albert_var(i, j, l))),
        (0, Greater) => Some((1, albert_var(0, l, j))),
        (_, Greater) => Some((-1, albert_var(i, l, j))),
    }
}

/// The generic Hermitian `n × n` octonion matrix in canonical variables.
pub fn generic_albert(n: usize) -> Result<HermOctMatrix<SymPoly>> {
    if !(1..=3).contains(&n) {
        return invalid(format!("octonionic Hermitian matrices need 1 <= n <= 3, got {n}"));
    }
    Ok(HermOctMatrix::hermitian(
        (0..n).map(|j| SymPoly::var(albert_var(0, j, j))).collect(),
        |j, jp| Octonion {
            coords: std::array::from_fn(|i| {
                coordinate(i, j, jp)
                    .map(|(_, v)| SymPoly::var(v))
                    .unwrap_or_default()
            }),
        },
    ))
}

/// `Tr X^k` of the generic matrix via Jordan powers.
///
/// `X^a∙X^{k-a} = X^k` by power-associativity, so the trace is a trace form
/// of two lower powers, which keeps intermediate polynomials small.
pub fn trace_power_sym(n: usize, k: usize) -> Result<SymPoly> {
    let x = generic_albert(n)?;
    Ok(match k {
        0 => SymPoly::constant(ExactRational::from(n)),
        1 => x.trace(),
        _ => {
            let a = k / 2;
            x.jordan_power(a).trace_form(&x.jordan_power(k - a))
        }
    })
}

/// `Tr X^k` of the generic matrix as the trace of the full Jordan power.
pub fn trace_power_direct(n: usize, k: usize) -> Result<SymPoly> {
    Ok(generic_albert(n)?.jordan_power(k).trace())
}

/// `Tr X^k` assembled coordinate-wise: `Σ_{j, i} A^{i_1}_{j_1 j_2} ⋯
/// A^{i_k}_{j_k j_1} Re[e_{i_1} ⋯ e_{i_k}]_fn` over index cycles `j` and unit
/// tuples `i` with a real product.
pub fn trace_power_expansion(n: usize, k: usize) -> Result<SymPoly> {
    if !(1..=3).contains(&n) {
        return invalid(format!("octonionic Hermitian matrices need 1 <= n <= 3, got {n}"));
    }
    if k == 0 {
        return Ok(SymPoly::constant(ExactRational::from(n)));
    }
    let cache = FnCache::canonical();
    let mut out = SymPoly::zero();
    for jcode in 0..n.pow(k as u32) {
        let js: Vec<usize> = (0..k).map(|t| jcode / n.pow(t as u32) % n).collect();
        'units: for icode in 0..8usize.pow(k as u32) {
            let is: Vec<usize> = (0..k).map(|t| icode / 8usize.pow(t as u32) % 8).collect();
            let mut sign = 1i64;
            let mut powers = Vec::with_capacity(k);
            for t in 0..k {
                match coordinate(is[t], js[t], js[(t + 1) % k]) {
                    Some((s, v)) => {
                        sign *= s;
                        powers.push((v, 1u8));
                    }
                    None => continue 'units,
                }
            }
            let word: Vec<SignedUnit> = is.iter().map(|&i| SignedUnit::unit(i + 1).expect("in range")).collect();
            let v = cache.fn_average(&word)?;
            if v.unit != 1 || v.coeff.is_zero() {
                continue;
            }
            out.add_scaled(&SymPoly::monomial(ExactRational::from(sign), &powers), &v.coeff);
        }
    }
    Ok(out)
}

/// `⟨Tr X^k⟩` for the `n × n` octonionic model by Wick expansion.
pub fn oracle_albert_moment(k: usize, n: usize) -> Result<ExactRational> {
    let x = generic_albert(n)?;
    if k % 2 == 1 {
        return Ok(ExactRational::ZERO);
    }
    if k == 0 {
        return Ok(ExactRational::from(n));
    }
    let a = k / 2;
    let half = x.jordan_power(a);
    // ⟨Tr(X^a∙X^a)⟩ = Σ_{j,l} ⟨Re(P_jl P_lj)⟩, expanded pairwise.
    let mut total = ExactRational::ZERO;
    for j in 0..n {
        for l in 0..n {
            let (p, q) = (half.get(j, l), half.get(l, j));
            total += p.coords[0].expect_product(&q.coords[0]);
            for i in 1..8 {
                total -= p.coords[i].expect_product(&q.coords[i]);
            }
        }
    }
    Ok(total)
}

/// `⟨Π_k (Tr X^k)^{m_k}⟩` for the `n × n` octonionic model.
pub fn oracle_albert_mixed(m: &MultiplicityVector, n: usize) -> Result<ExactRational> {
    generic_albert(n)?;
    if m.total() % 2 == 1 {
        return Ok(ExactRational::ZERO);
    }
    let traces: Vec<SymPoly> = m
        .sizes()
        .into_iter()
        .map(|k| trace_power_sym(n, k))
        .collect::<Result<_>>()?;
    let Some((last, rest)) = traces.split_last() else {
        return Ok(ExactRational::ONE);
    };
    let head = rest.iter().fold(<SymPoly as Scalar>::one(), |acc, t| Scalar::mul(&acc, t));
    Ok(head.expect_product(last))
}

/// Fully nested average of matrix powers, `2^{2-k} Σ_P P(X⋯X)`.
pub fn fully_nested_power<T: Scalar>(x: &HermOctMatrix<T>, k: usize) -> Result<HermOctMatrix<T>> {
    let nestings = enumerate_fully_nested(k)?;
    let mut acc = HermOctMatrix::zero(x.size());
    for nw in &nestings {
        acc = acc.add(&x.bracketed_power(nw, k));
    }
    Ok(acc.scale(&ExactRational::new(1, nestings.len() as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_albert(rng: &mut ChaCha8Rng, n: usize) -> HermOctMatrix<ExactRational> {
        let mut r = || ExactRational::from(rng.gen_range(-3i64..=3));
        let diag: Vec<ExactRational> = (0..n).map(|_| r()).collect();
        let offs: Vec<Octonion<ExactRational>> = (0..n * n)
            .map(|_| Octonion {
                coords: std::array::from_fn(|_| r()),
            })
            .collect();
        HermOctMatrix::hermitian(diag, |j, jp| offs[j * n + jp].clone())
    }

    #[test]
    fn jordan_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = random_albert(&mut rng, 3);
        let y = random_albert(&mut rng, 3);
        assert!(x.is_hermitian());
        assert_eq!(x.jordan(&HermOctMatrix::identity(3)), x);
        assert_eq!(x.jordan(&y), y.jordan(&x));
        assert!(x.jordan(&y).is_hermitian());
        let d = HermOctMatrix::hermitian(vec![ExactRational::from(2i64), ExactRational::from(3i64)], |_, _| Octonion::zero());
        let e = HermOctMatrix::hermitian(vec![ExactRational::from(5i64), ExactRational::from(7i64)], |_, _| Octonion::zero());
        assert_eq!(
            d.jordan(&e),
            HermOctMatrix::hermitian(vec![ExactRational::from(10i64), ExactRational::from(21i64)], |_, _| Octonion::zero())
        );
        assert_eq!(x.jordan_power(1), x);
    }

    #[test]
    fn power_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let x = random_albert(&mut rng, 3);
            let powers: Vec<_> = (0..=8).map(|k| x.jordan_power(k)).collect();
            for a in 1..8 {
                for b in 1..=8 - a {
                    assert_eq!(powers[a].jordan(&powers[b]), powers[a + b], "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn nested_bracketing_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = random_albert(&mut rng, 3);
        for k in 3..=5 {
            assert_eq!(fully_nested_power(&x, k).unwrap(), x.jordan_power(k), "k = {k}");
        }
    }

    #[test]
    fn trace_of_square() {
        let t = trace_power_sym(3, 2).unwrap();
        let mut expect = SymPoly::zero();
        for j in 0..3u8 {
            expect.add_assign(&SymPoly::monomial(ExactRational::ONE, &[(Variable::AlbertDiagonal { j }, 2)]));
            for jp in j + 1..3 {
                for unit in 1..=8u8 {
                    expect.add_assign(&SymPoly::monomial(
                        ExactRational::from(2i64),
                        &[(Variable::AlbertOffDiagonal { unit, j, jp }, 2)],
                    ));
                }
            }
        }
        assert_eq!(t, expect);
        assert!(t.expectation() > ExactRational::ZERO);
    }

    #[test]
    fn one_by_one() {
        let x = SymPoly::var(Variable::AlbertDiagonal { j: 0 });
        for k in 1..=6 {
            let xk = (0..k).fold(<SymPoly as Scalar>::one(), |acc, _| Scalar::mul(&acc, &x));
            assert_eq!(trace_power_sym(1, k).unwrap(), xk);
        }
        assert!(generic_albert(4).is_err());
        assert!(generic_albert(0).is_err());
    }

    #[test]
    fn three_trace_paths_agree() {
        for n in 1..=3 {
            for k in 1..=4 {
                let a = trace_power_sym(n, k).unwrap();
                assert_eq!(a, trace_power_direct(n, k).unwrap(), "n={n} k={k}");
                assert_eq!(a, trace_power_expansion(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn oracle_values() {
        assert_eq!(oracle_albert_moment(2, 3).unwrap(), ExactRational::from(27i64));
        assert_eq!(oracle_albert_moment(4, 3).unwrap(), ExactRational::from(417i64));
        assert_eq!(oracle_albert_moment(3, 3).unwrap(), ExactRational::ZERO);
        assert_eq!(
            oracle_albert_moment(4, 2).unwrap(),
            trace_power_sym(2, 4).unwrap().expectation()
        );
    }
}
