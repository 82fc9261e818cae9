//! `C_S(n, k) = ⟨Tr x^k⟩` for the spin factor, three ways.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::exact::{binomial, double_factorial, factorial, wick_number, ExactRational, MomentPolynomial, TruncatedSeries};
use crate::pairings::{enumerate_matchings, Dsu};
use crate::parallel::RunOptions;

/// Largest `k` for direct enumeration without `allow_long`.
pub const SPIN_ENUM_MAX_K: usize = 12;

/// A barbell structure on `{0, .., k-1}`: the free part `S0` and the barbell
/// part `Sb`, whose consecutive elements are joined into barbells.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BarbellStructure {
    pub k: usize,
    pub free: Vec<usize>,
    pub barbells: Vec<(usize, usize)>,
}

impl BarbellStructure {
    /// Structure whose barbell part is the set bits of `mask`.
    pub fn from_mask(k: usize, mask: u64) -> Option<Self> {
        let (sb, free): (Vec<usize>, Vec<usize>) = (0..k).partition(|&i| mask >> i & 1 == 1);
        if sb.len() % 2 == 1 || free.len() % 2 == 1 {
            return None;
        }
        Some(Self {
            k,
            free,
            barbells: sb.chunks(2).map(|c| (c[0], c[1])).collect(),
        })
    }

    pub fn barbell_points(&self) -> usize {
        2 * self.barbells.len()
    }
}

/// Circles formed by `m` barbells `{2i, 2i+1}` and a pairing of their ends.
pub(crate) fn circles(m: usize, pairing: &[(usize, usize)]) -> usize {
    let mut dsu = Dsu::new(2 * m);
    for i in 0..m {
        dsu.union(2 * i, 2 * i + 1);
    }
    for &(a, b) in pairing {
        dsu.union(a, b);
    }
    dsu.roots()
}

/// Number of pairings of the ends of `m` barbells giving `N` circles,
/// indexed by `N`.
pub fn circle_distribution(m: usize) -> Vec<u64> {
    let mut out = vec![0u64; m + 1];
    for p in enumerate_matchings(2 * m) {
        out[circles(m, &p)] += 1;
    }
    out
}

/// Count of (structure, pairing) pairs with `|Sb|` barbell points forming
/// `classes` circles.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SpinTally {
    pub barbell_points: usize,
    pub classes: usize,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpinEnumeration {
    pub k: usize,
    pub moment: MomentPolynomial,
    pub tallies: Vec<SpinTally>,
}

/// `Σ_β Σ_π n^{N(π)}` over barbell structures `β` on `k` points and their
/// pairings: the free part pairs among itself, barbell ends among themselves.
pub fn spin_moment_enum(k: usize, opts: &RunOptions) -> Result<SpinEnumeration> {
    opts.check_budget(
        format!("spin enumeration k = {k}; use the gf or closed method"),
        k,
        SPIN_ENUM_MAX_K,
    )?;
    let mut tallies: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    if k.is_multiple_of(2) {
        let mut dist_cache: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
        for mask in 0..1u64 << k {
            let Some(s) = BarbellStructure::from_mask(k, mask) else {
                continue;
            };
            let m = s.barbells.len();
            let free_pairings = wick_number(s.free.len()).to_i64().expect("small") as u64;
            let dist = dist_cache.entry(m).or_insert_with(|| circle_distribution(m));
            for (classes, &c) in dist.iter().enumerate() {
                if c > 0 {
                    *tallies.entry((2 * m, classes)).or_insert(0) += c * free_pairings;
                }
            }
        }
    }
    let mut coeffs = vec![0i64; k / 2 + 1];
    for (&(_, classes), &c) in &tallies {
        coeffs[classes] += c as i64;
    }
    Ok(SpinEnumeration {
        k,
        moment: MomentPolynomial::from_i64s(&coeffs),
        tallies: tallies
            .into_iter()
            .map(|((barbell_points, classes), count)| SpinTally {
                barbell_points,
                classes,
                count,
            })
            .collect(),
    })
}

/// `⟨|x|^{2m}⟩ = Π_{t<m} (n + 2t)` for a standard Gaussian vector in `R^n`.
pub fn norm_moment(m: usize) -> MomentPolynomial {
    (0..m).fold(MomentPolynomial::one(), |acc, t| {
        &acc * &MomentPolynomial::from_i64s(&[2 * t as i64, 1])
    })
}

/// `Σ_{j even} C(k, j) w(k-j) ⟨|x|^j⟩`, from `Tr x^k = Σ C(k, j) x0^{k-j} |x|^j`.
pub fn spin_moment_closed(k: usize) -> MomentPolynomial {
    (0..=k)
        .step_by(2)
        .map(|j| norm_moment(j / 2).scale(&(binomial(k, j) * wick_number(k - j))))
        .sum()
}

/// The generating-function pipeline, returning `C_S(n, k)` for `k ≤ max_k`.
///
/// `A = exp(Σ_{j≥1} (2j-2)!! n x^j / j!)` counts barbell pairings by
/// circles, `(2j-2)!!` being the pairings of `j` barbells into one circle.
/// Its Laplace transform, with `x → x²` and each `x^m` divided by `m!`,
/// gives `A'`; multiplying by `B = Σ w(k) x^k / k!` for the free points and
/// taking the Laplace transform again gives `Σ C_S(n, k) x^k`.
pub fn spin_moment_gf(max_k: usize) -> Result<Vec<MomentPolynomial>> {
    let series = spin_moment_gf_series(max_k)?;
    Ok(series.coeffs().to_vec())
}

pub fn spin_moment_gf_series(max_k: usize) -> Result<TruncatedSeries> {
    let order = max_k + 1;
    let half = order.div_ceil(2);
    let mut conn = TruncatedSeries::zero(half);
    for j in 1..half {
        let c = double_factorial(2 * j as i64 - 2) / factorial(j);
        conn.set_coeff(j, MomentPolynomial::monomial(c, 1));
    }
    let a = conn.exp()?;
    let a_prime = a.laplace_transform().substitute_square().truncate(order).borel_hadamard();
    let b = TruncatedSeries::from_coeffs(
        order,
        (0..order)
            .map(|k| MomentPolynomial::constant(wick_number(k) / factorial(k)))
            .collect(),
    );
    Ok(a_prime.mul(&b).laplace_transform())
}

/// Codegree-one coefficient of `C_S(n, 2m)` predicted by
/// `2 C(m, 2) + C(2m, 2)`.
pub fn codegree_one(m: usize) -> ExactRational {
    binomial(m, 2) * ExactRational::from(2i64) + binomial(2 * m, 2)
}
