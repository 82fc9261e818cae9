//! Fully nested bracketings of words of octonion units.
//!
//! A fully nested bracketing of `k ≥ 3` factors is encoded by a word over
//! `{L, R}` of length `k - 2`, read from the root: `L` splits off the last
//! remaining factor (`(rest)·last`), `R` the first (`first·(rest)`), and the
//! final two factors are multiplied directly.

use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;

use crate::error::{invalid, Result};
use crate::exact::ExactRational;
use crate::octonion::{MultiplicationTable, Octonion, SignedUnit};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Direction {
    L,
    R,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NestingWord {
    dirs: Vec<Direction>,
}

impl NestingWord {
    pub fn new(dirs: Vec<Direction>) -> Self {
        Self { dirs }
    }

    pub fn directions(&self) -> &[Direction] {
        &self.dirs
    }

    /// Number of factors this nesting applies to.
    pub fn word_len(&self) -> usize {
        if self.dirs.is_empty() {
            // Ambiguous between 1 and 2; callers check `k <= 2` separately.
            2
        } else {
            self.dirs.len() + 2
        }
    }

    /// Render the bracketing of `k` placeholder factors, e.g. `((XX)X)X`.
    pub fn render(&self, k: usize) -> String {
        fn go(dirs: &[Direction], k: usize) -> String {
            match k {
                1 => "X".into(),
                2 => "XX".into(),
                _ => {
                    let inner = format!("({})", go(&dirs[1..], k - 1));
                    match dirs[0] {
                        Direction::L => format!("{inner}X"),
                        Direction::R => format!("X{inner}"),
                    }
                }
            }
        }
        go(&self.dirs, k)
    }
}

impl fmt::Display for NestingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.dirs {
            write!(f, "{}", if *d == Direction::L { 'L' } else { 'R' })?;
        }
        Ok(())
    }
}

/// All `2^{k-2}` fully nested bracketings of `k` factors (one for `k ≤ 2`).
pub fn enumerate_fully_nested(k: usize) -> Result<Vec<NestingWord>> {
    if k == 0 {
        return invalid("a bracketing needs at least one factor");
    }
    if k <= 2 {
        return Ok(vec![NestingWord::new(Vec::new())]);
    }
    if k > 40 {
        return invalid(format!("2^{} bracketings is too many to list", k - 2));
    }
    let len = k - 2;
    Ok((0u64..1 << len)
        .map(|bits| {
            NestingWord::new(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 0 {
                            Direction::L
                        } else {
                            Direction::R
                        }
                    })
                    .collect(),
            )
        })
        .collect())
}

/// Product of `word` under `nesting`.
pub fn evaluate_bracketing(
    table: &MultiplicationTable,
    word: &[SignedUnit],
    nesting: &NestingWord,
) -> Result<SignedUnit> {
    let k = word.len();
    let ok = match k {
        0 => false,
        1 | 2 => nesting.dirs.is_empty(),
        _ => nesting.dirs.len() == k - 2,
    };
    if !ok {
        return invalid(format!(
            "nesting of length {} does not fit a word of length {k}",
            nesting.dirs.len()
        ));
    }
    fn go(t: &MultiplicationTable, w: &[SignedUnit], dirs: &[Direction]) -> SignedUnit {
        match w.len() {
            1 => w[0],
            2 => t.unit_mul(w[0], w[1]),
            n => match dirs[0] {
                Direction::L => t.unit_mul(go(t, &w[..n - 1], &dirs[1..]), w[n - 1]),
                Direction::R => t.unit_mul(w[0], go(t, &w[1..], &dirs[1..])),
            },
        }
    }
    Ok(go(table, word, &nesting.dirs))
}

/// True when the product of `word` is `±e1` (under any bracketing).
pub fn is_real_product(table: &MultiplicationTable, word: &[SignedUnit]) -> bool {
    word.iter()
        .fold(0usize, |acc, u| table.idx_mul(acc, u.zero_based()).1)
        == 0
}

/// `[w]_fn`, the average over fully nested bracketings: `coeff · e_unit`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FnValue {
    pub coeff: ExactRational,
    /// Unit index in `1..=8`.
    pub unit: usize,
}

impl FnValue {
    pub fn to_octonion(&self) -> Octonion<ExactRational> {
        let mut o = Octonion::zero();
        o.coords[self.unit - 1] = self.coeff.clone();
        o
    }

    /// Real coordinate (zero unless the unit is `e1`).
    pub fn real_part(&self) -> ExactRational {
        if self.unit == 1 {
            self.coeff.clone()
        } else {
            ExactRational::ZERO
        }
    }
}

/// Sum over all fully nested bracketings of a word of zero-based unit indices,
/// returned as `(c, idx)` meaning `c · e_idx`. Dividing `c` by
/// `2^{max(k-2, 0)}` gives `[w]_fn`.
///
/// Uses `F(i..j) = e_i F(i+1..j) + F(i..j-1) e_j`: the root of a fully nested
/// tree peels either end. Every bracketing yields the same unit up to sign,
/// so each partial sum is an integer multiple of one unit.
pub(crate) fn fn_sum_raw(table: &MultiplicationTable, word: &[u8]) -> (i64, usize) {
    let k = word.len();
    debug_assert!(k >= 1);
    if k == 1 {
        return (1, word[0] as usize);
    }
    // cur[i] = F(i..i+len-1) for the current length.
    let mut cur: Vec<(i64, usize)> = (0..k - 1)
        .map(|i| table.idx_mul(word[i] as usize, word[i + 1] as usize))
        .collect();
    for len in 3..=k {
        let next: Vec<(i64, usize)> = (0..=k - len)
            .map(|i| {
                let j = i + len - 1;
                let (c1, u1) = cur[i + 1];
                let (s1, r1) = table.idx_mul(word[i] as usize, u1);
                let (c2, u2) = cur[i];
                let (s2, r2) = table.idx_mul(u2, word[j] as usize);
                debug_assert_eq!(r1, r2, "nestings disagree on the product unit");
                (s1 * c1 + s2 * c2, r1)
            })
            .collect();
        cur = next;
    }
    cur[0]
}

/// Memo for [`fn_sum_raw`] keyed on the packed unit word.
pub struct FnCache {
    table: &'static MultiplicationTable,
    memo: DashMap<u64, (i64, u8)>,
}

/// Words of up to this many units are memoized (3 bits each, plus length).
const MEMO_MAX_LEN: usize = 19;

impl FnCache {
    pub fn new(table: &'static MultiplicationTable) -> Self {
        Self {
            table,
            memo: DashMap::new(),
        }
    }

    /// The shared cache for the canonical table.
    pub fn canonical() -> &'static FnCache {
        static C: OnceLock<FnCache> = OnceLock::new();
        C.get_or_init(|| FnCache::new(MultiplicationTable::canonical()))
    }

    pub fn table(&self) -> &'static MultiplicationTable {
        self.table
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Memoized [`fn_sum_raw`]. Short words skip the memo.
    pub(crate) fn sum_raw(&self, word: &[u8]) -> (i64, usize) {
        if word.len() <= 3 || word.len() > MEMO_MAX_LEN {
            return fn_sum_raw(self.table, word);
        }
        let key = word
            .iter()
            .fold(word.len() as u64, |acc, &u| (acc << 3) | u as u64);
        if let Some(v) = self.memo.get(&key) {
            return (v.0, v.1 as usize);
        }
        let v = fn_sum_raw(self.table, word);
        // Idempotent: concurrent inserts store the same value.
        self.memo.insert(key, (v.0, v.1 as u8));
        v
    }

    /// `[w]_fn` with signs of the factors pulled out front.
    pub fn fn_average(&self, word: &[SignedUnit]) -> Result<FnValue> {
        fn_average_with(word, |w| self.sum_raw(w))
    }
}

fn fn_average_with(
    word: &[SignedUnit],
    sum: impl FnOnce(&[u8]) -> (i64, usize),
) -> Result<FnValue> {
    if word.is_empty() {
        return invalid("fn average of an empty word");
    }
    let sign: i64 = word.iter().map(|u| u.sign()).product();
    let idx: Vec<u8> = word.iter().map(|u| u.zero_based() as u8).collect();
    let (c, unit) = sum(&idx);
    let den = ExactRational::from(2i64).pow(word.len().saturating_sub(2) as u32);
    Ok(FnValue {
        coeff: ExactRational::from(sign * c) / den,
        unit: unit + 1,
    })
}

/// `[w]_fn` under `table`, computed without memoization.
pub fn fn_average(table: &MultiplicationTable, word: &[SignedUnit]) -> Result<FnValue> {
    fn_average_with(word, |w| fn_sum_raw(table, w))
}

/// `[w]_fn` by explicit evaluation of every bracketing; the reference
/// implementation for tests.
pub fn fn_average_brute(table: &MultiplicationTable, word: &[SignedUnit]) -> Result<FnValue> {
    let nestings = enumerate_fully_nested(word.len())?;
    let mut acc = Octonion::<ExactRational>::zero();
    for n in &nestings {
        acc = acc.add(&Octonion::from_unit(evaluate_bracketing(table, word, n)?));
    }
    let acc = acc.scale(&ExactRational::new(1, nestings.len() as i64));
    let support: Vec<usize> = (0..8).filter(|&i| !acc.coords[i].is_zero()).collect();
    match support.as_slice() {
        [] => {
            let unit = word
                .iter()
                .fold(0usize, |a, u| table.idx_mul(a, u.zero_based()).1);
            Ok(FnValue {
                coeff: ExactRational::ZERO,
                unit: unit + 1,
            })
        }
        [i] => Ok(FnValue {
            coeff: acc.coords[*i].clone(),
            unit: i + 1,
        }),
        _ => invalid("bracketings of a unit word landed on several units"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn u(i: usize) -> SignedUnit {
        SignedUnit::unit(i).unwrap()
    }

    fn word(idx: &[usize]) -> Vec<SignedUnit> {
        idx.iter().map(|&i| u(i)).collect()
    }

    #[test]
    fn counts() {
        assert!(enumerate_fully_nested(0).is_err());
        assert_eq!(enumerate_fully_nested(2).unwrap().len(), 1);
        assert_eq!(enumerate_fully_nested(4).unwrap().len(), 4);
        assert_eq!(enumerate_fully_nested(6).unwrap().len(), 16);
        for k in 3..=12 {
            assert_eq!(enumerate_fully_nested(k).unwrap().len(), 1 << (k - 2));
        }
    }

    #[test]
    fn four_factor_shapes() {
        let mut shapes: Vec<String> = enumerate_fully_nested(4)
            .unwrap()
            .iter()
            .map(|n| n.render(4))
            .collect();
        shapes.sort();
        let mut expect = vec!["((XX)X)X", "(X(XX))X", "X((XX)X)", "X(X(XX))"];
        expect.sort();
        assert_eq!(shapes, expect);
    }

    #[test]
    fn three_factor_left() {
        let t = MultiplicationTable::canonical();
        let n = NestingWord::new(vec![Direction::L]);
        let w = word(&[2, 3, 4]);
        let expect = t.unit_mul(t.unit_mul(u(2), u(3)), u(4));
        assert_eq!(evaluate_bracketing(t, &w, &n).unwrap(), expect);
        assert!(expect.is_real());
        assert!(evaluate_bracketing(t, &w, &NestingWord::new(vec![])).is_err());
    }

    #[test]
    fn small_words() {
        let c = FnCache::canonical();
        let ones = word(&[1, 1, 1, 1]);
        assert_eq!(c.fn_average(&ones).unwrap().to_octonion(), Octonion::one());
        let sq = c.fn_average(&word(&[2, 2])).unwrap();
        assert_eq!((sq.coeff, sq.unit), (ExactRational::from(-1i64), 1));
    }

    #[test]
    fn hexagon_word() {
        // Bare average; the gluing weight adds one sign per imaginary pair.
        let w = word(&[4, 5, 4, 5, 6, 6]);
        for t in [MultiplicationTable::canonical(), MultiplicationTable::alternate()] {
            let v = fn_average(t, &w).unwrap();
            assert_eq!(v.unit, 1);
            assert_eq!(v.coeff, ExactRational::new(5, 8));
        }
    }

    #[test]
    fn real_products() {
        let t = MultiplicationTable::canonical();
        assert!(is_real_product(t, &word(&[4, 4])));
        assert!(!is_real_product(t, &word(&[2, 3])));
        assert!(is_real_product(t, &word(&[2, 3, 4])));
    }

    #[test]
    fn cache_agrees_with_direct() {
        let c = FnCache::new(MultiplicationTable::canonical());
        let t = c.table();
        for a in 1..=8 {
            for b in 1..=8 {
                for d in 1..=8 {
                    let w = word(&[a, b, 3, d, 6]);
                    assert_eq!(c.fn_average(&w).unwrap(), fn_average(t, &w).unwrap());
                    assert_eq!(c.fn_average(&w).unwrap(), fn_average(t, &w).unwrap());
                }
            }
        }
        assert!(!c.is_empty());
    }

    fn arb_word() -> impl Strategy<Value = Vec<SignedUnit>> {
        prop::collection::vec((1usize..=8, any::<bool>()), 1..9).prop_map(|v| {
            v.into_iter()
                .map(|(i, neg)| if neg { u(i).negated() } else { u(i) })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn sign_coherent_and_matches_brute(w in arb_word()) {
            let t = MultiplicationTable::canonical();
            let nestings = enumerate_fully_nested(w.len()).unwrap();
            let first = evaluate_bracketing(t, &w, &nestings[0]).unwrap();
            for n in &nestings {
                prop_assert_eq!(evaluate_bracketing(t, &w, n).unwrap().index(), first.index());
            }
            let fast = fn_average(t, &w).unwrap();
            let brute = fn_average_brute(t, &w).unwrap();
            prop_assert_eq!(&fast, &brute);
            prop_assert_eq!(FnCache::canonical().fn_average(&w).unwrap(), fast.clone());
            if !is_real_product(t, &w) {
                prop_assert!(fast.real_part().is_zero());
                prop_assert!(fast.unit != 1);
            }
        }
    }
}
