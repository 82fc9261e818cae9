//! Octonion units and octonions with coefficients in any [`Scalar`] ring.
//!
//! Units are numbered `1..=8` with `e1` the real unit. Internally index `0`
//! stands for `e1`.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::exact::{ExactRational, Scalar};

/// `±e_index`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SignedUnit {
    negative: bool,
    /// Zero-based: 0 is `e1`.
    idx: u8,
}

impl SignedUnit {
    pub const ONE: SignedUnit = SignedUnit {
        negative: false,
        idx: 0,
    };

    /// `+e_index` for `index` in `1..=8`.
    pub fn unit(index: usize) -> Result<Self> {
        if !(1..=8).contains(&index) {
            return invalid(format!("octonion unit index {index} outside 1..=8"));
        }
        Ok(Self::from_zero_based(index - 1))
    }

    pub(crate) fn from_zero_based(idx: usize) -> Self {
        debug_assert!(idx < 8);
        Self {
            negative: false,
            idx: idx as u8,
        }
    }

    /// Unit index in `1..=8`.
    pub fn index(self) -> usize {
        self.idx as usize + 1
    }

    pub(crate) fn zero_based(self) -> usize {
        self.idx as usize
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_real(self) -> bool {
        self.idx == 0
    }

    pub fn negated(self) -> Self {
        Self {
            negative: !self.negative,
            idx: self.idx,
        }
    }
}

impl fmt::Display for SignedUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "e{}", self.index())
    }
}

/// The 8×8 product table of octonion units.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiplicationTable {
    table: [[SignedUnit; 8]; 8],
    lines: [[usize; 3]; 7],
}

/// Oriented lines `(a, b, c)` meaning `e_a e_b = e_c` (cyclically).
const CANONICAL_LINES: [[usize; 3]; 7] = [
    [2, 3, 4],
    [2, 8, 7],
    [2, 5, 6],
    [3, 5, 7],
    [3, 6, 8],
    [4, 5, 8],
    [4, 7, 6],
];

/// The cyclic `(i, i+1, i+3) mod 7` table on indices `2..=8`.
const ALTERNATE_LINES: [[usize; 3]; 7] = [
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 7],
    [5, 6, 8],
    [6, 7, 2],
    [7, 8, 3],
    [8, 2, 4],
];

impl MultiplicationTable {
    /// The table used throughout the crate.
    pub fn canonical() -> &'static MultiplicationTable {
        static T: OnceLock<MultiplicationTable> = OnceLock::new();
        T.get_or_init(|| Self::from_lines(CANONICAL_LINES).expect("canonical lines are valid"))
    }

    /// A second valid orientation, used to check that aggregate results do
    /// not depend on the choice of table.
    pub fn alternate() -> &'static MultiplicationTable {
        static T: OnceLock<MultiplicationTable> = OnceLock::new();
        T.get_or_init(|| Self::from_lines(ALTERNATE_LINES).expect("alternate lines are valid"))
    }

    /// Builds a table from seven oriented lines on the imaginary indices
    /// `2..=8`. Fails unless every pair of imaginary units lies on exactly one
    /// line; the composition property is not checked here.
    pub fn from_lines(lines: [[usize; 3]; 7]) -> Result<Self> {
        let mut filled = [[false; 8]; 8];
        let mut table = [[SignedUnit::ONE; 8]; 8];
        for i in 0..8 {
            table[0][i] = SignedUnit::from_zero_based(i);
            table[i][0] = SignedUnit::from_zero_based(i);
            filled[0][i] = true;
            filled[i][0] = true;
        }
        for i in 1..8 {
            table[i][i] = SignedUnit::ONE.negated();
            filled[i][i] = true;
        }
        for line in &lines {
            if line.iter().any(|&i| !(2..=8).contains(&i)) {
                return invalid(format!("line {line:?} has an index outside 2..=8"));
            }
            let [a, b, c] = line.map(|i| i - 1);
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                if filled[x][y] || filled[y][x] {
                    return invalid(format!("line {line:?} repeats a pair of units"));
                }
                table[x][y] = SignedUnit::from_zero_based(z);
                table[y][x] = SignedUnit::from_zero_based(z).negated();
                filled[x][y] = true;
                filled[y][x] = true;
            }
        }
        Ok(Self { table, lines })
    }

    /// The seven oriented lines, with 1-based unit indices.
    pub fn lines(&self) -> &[[usize; 3]; 7] {
        &self.lines
    }

    pub fn unit_mul(&self, a: SignedUnit, b: SignedUnit) -> SignedUnit {
        let p = self.table[a.idx as usize][b.idx as usize];
        if a.negative != b.negative {
            p.negated()
        } else {
            p
        }
    }

    /// Product of zero-based unit indices as `(sign, index)`.
    #[inline]
    pub(crate) fn idx_mul(&self, a: usize, b: usize) -> (i64, usize) {
        let p = self.table[a][b];
        (p.sign(), p.zero_based())
    }

    /// True when `{a, b, c}` (1-based unit indices) is one of the seven lines.
    pub fn is_line(&self, a: usize, b: usize, c: usize) -> bool {
        let mut t = [a, b, c];
        t.sort_unstable();
        self.lines.iter().any(|l| {
            let mut s = *l;
            s.sort_unstable();
            s == t
        })
    }

    /// Serializable form: `products[i-1][j-1]` is `e_i e_j` as a signed index.
    pub fn dump(&self) -> TableDump {
        TableDump {
            lines: self.lines.to_vec(),
            products: self
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|u| u.sign() * u.index() as i64)
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableDump {
    pub lines: Vec<[usize; 3]>,
    pub products: Vec<Vec<i64>>,
}

/// `Σ_i a_i e_i` with coefficients in `T`.
#[derive(Clone, PartialEq, Debug)]
pub struct Octonion<T> {
    pub coords: [T; 8],
}

impl<T: Scalar> Octonion<T> {
    pub fn zero() -> Self {
        Self {
            coords: std::array::from_fn(|_| T::zero()),
        }
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    pub fn real(a: T) -> Self {
        let mut o = Self::zero();
        o.coords[0] = a;
        o
    }

    pub fn from_unit(u: SignedUnit) -> Self {
        let mut o = Self::zero();
        o.coords[u.zero_based()] = if u.negative { T::one().neg() } else { T::one() };
        o
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(T::is_zero)
    }

    /// Real coordinate.
    pub fn re(&self) -> &T {
        &self.coords[0]
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            coords: std::array::from_fn(|i| self.coords[i].add(&rhs.coords[i])),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            coords: std::array::from_fn(|i| self.coords[i].sub(&rhs.coords[i])),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: std::array::from_fn(|i| self.coords[i].neg()),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            coords: std::array::from_fn(|i| self.coords[i].scale(c)),
        }
    }

    pub fn conjugate(&self) -> Self {
        Self {
            coords: std::array::from_fn(|i| {
                if i == 0 {
                    self.coords[0].clone()
                } else {
                    self.coords[i].neg()
                }
            }),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.mul_in(rhs, MultiplicationTable::canonical())
    }

    pub fn mul_in(&self, rhs: &Self, table: &MultiplicationTable) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (s, k) = table.idx_mul(i, j);
                let p = a.mul(b);
                if s < 0 {
                    out.coords[k] = out.coords[k].sub(&p);
                } else {
                    out.coords[k].add_assign(&p);
                }
            }
        }
        out
    }

    /// `Re(self · rhs) = a1 b1 - Σ_{i>1} a_i b_i`, without forming the product.
    pub fn re_mul(&self, rhs: &Self) -> T {
        let mut acc = self.coords[0].mul(&rhs.coords[0]);
        for i in 1..8 {
            if !self.coords[i].is_zero() && !rhs.coords[i].is_zero() {
                acc = acc.sub(&self.coords[i].mul(&rhs.coords[i]));
            }
        }
        acc
    }

    /// `α + ᾱ = 2 a1`.
    pub fn trace(&self) -> T {
        self.coords[0].add(&self.coords[0])
    }

    /// `α ᾱ = Σ a_i²`.
    pub fn norm(&self) -> T {
        self.coords
            .iter()
            .fold(T::zero(), |acc, a| acc.add(&a.mul(a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn u(i: usize) -> SignedUnit {
        SignedUnit::unit(i).unwrap()
    }

    fn random_oct(rng: &mut ChaCha8Rng) -> Octonion<ExactRational> {
        Octonion {
            coords: std::array::from_fn(|_| ExactRational::from(rng.gen_range(-5i64..=5))),
        }
    }

    fn tables() -> [&'static MultiplicationTable; 2] {
        [MultiplicationTable::canonical(), MultiplicationTable::alternate()]
    }

    #[test]
    fn pinned_products() {
        let t = MultiplicationTable::canonical();
        assert_eq!(t.unit_mul(u(2), u(3)), u(4));
        assert_eq!(t.unit_mul(u(2), u(7)), u(8).negated());
        assert_eq!(t.unit_mul(u(5), u(5)), SignedUnit::ONE.negated());
        assert!(!t.is_line(4, 5, 6));
    }

    #[test]
    fn table_axioms() {
        for t in tables() {
            for i in 1..=8 {
                assert_eq!(t.unit_mul(u(1), u(i)), u(i));
                assert_eq!(t.unit_mul(u(i), u(1)), u(i));
                if i > 1 {
                    assert_eq!(t.unit_mul(u(i), u(i)), SignedUnit::ONE.negated());
                }
                for j in 2..=8 {
                    if i > 1 && i != j {
                        assert_eq!(t.unit_mul(u(i), u(j)), t.unit_mul(u(j), u(i)).negated());
                    }
                }
            }
        }
    }

    #[test]
    fn lines_associate_and_off_lines_anti_associate() {
        for t in tables() {
            let mut line_count = 0;
            for i in 2..=8 {
                for j in 2..=8 {
                    for k in 2..=8 {
                        if i == j || j == k || i == k {
                            continue;
                        }
                        let left = t.unit_mul(t.unit_mul(u(i), u(j)), u(k));
                        let right = t.unit_mul(u(i), t.unit_mul(u(j), u(k)));
                        if t.is_line(i, j, k) {
                            assert_eq!(left, right);
                            line_count += 1;
                        } else {
                            assert_eq!(left, right.negated(), "({i},{j},{k})");
                        }
                    }
                }
            }
            // Seven lines, each visited in 3! orders.
            assert_eq!(line_count, 42);
        }
    }

    #[test]
    fn norm_is_multiplicative_and_alternative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in tables() {
            for _ in 0..200 {
                let a = random_oct(&mut rng);
                let b = random_oct(&mut rng);
                assert_eq!(a.mul_in(&b, t).norm(), a.norm() * b.norm());
                let ab = a.mul_in(&b, t);
                assert_eq!(ab.mul_in(&a, t), a.mul_in(&b.mul_in(&a, t), t));
                assert_eq!(a.mul_in(&ab, t), a.mul_in(&a, t).mul_in(&b, t));
                assert_eq!(ab.mul_in(&b, t), a.mul_in(&b.mul_in(&b, t), t));
            }
        }
    }

    #[test]
    fn conjugate_trace_norm() {
        let e1 = Octonion::<ExactRational>::one();
        let e5 = Octonion::<ExactRational>::from_unit(u(5));
        assert_eq!(e1.conjugate(), e1);
        assert_eq!(e5.conjugate(), e5.neg());
        assert_eq!(e1.trace(), ExactRational::from(2i64));
        for i in 1..=8 {
            assert_eq!(Octonion::<ExactRational>::from_unit(u(i)).norm(), ExactRational::ONE);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_oct(&mut rng);
        let b = random_oct(&mut rng);
        assert_eq!(a.conjugate().conjugate(), a);
        assert_eq!(a.mul(&a.conjugate()), Octonion::real(a.norm()));
        assert_eq!(a.re_mul(&b), a.mul(&b).re().clone());
        assert_eq!(e1.mul(&a), a);
    }

    #[test]
    fn rejects_bad_lines() {
        let mut lines = CANONICAL_LINES;
        lines[1] = [2, 3, 5];
        assert!(MultiplicationTable::from_lines(lines).is_err());
        assert!(SignedUnit::unit(9).is_err());
        assert!(SignedUnit::unit(0).is_err());
    }
}
