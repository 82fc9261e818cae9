//! Polygon gluings for moments of the Albert algebra.
//!
//! `⟨Tr X^k⟩ = 2^{-k/2} Σ_π Σ_f Ω(π, f) n^{N(π)}`, where `π` runs over
//! (matching, twist) pairs of the edges of a `k`-gon, `f` over unit labelings
//! constant on pairs with a real product around each polygon, and `N(π)`
//! counts vertex classes. Mixed moments use a disjoint union of polygons.
//!
//! For a fixed matching the labeling sum splits by which pairs carry an
//! imaginary unit; the sign of a term depends on the twists only through that
//! set. Summing labelings once per set and applying a Walsh–Hadamard
//! transform gives `Σ_f Ω` for every twist pattern at once.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::exact::{ExactRational, MomentPolynomial};
use crate::multiplicity::MultiplicityVector;
use crate::nesting::FnCache;
use crate::octonion::SignedUnit;
pub use crate::pairings::enumerate_matchings;
use crate::pairings::Dsu;
use crate::parallel::RunOptions;

/// Largest single polygon enumerated without `allow_long`.
pub const ALBERT_MAX_K: usize = 8;
/// Largest total edge count of a multi-polygon complex without `allow_long`.
pub const ALBERT_MAX_MIXED: usize = 8;

/// Disjoint union of polygons with globally indexed edges.
///
/// Polygon `c` owns edges `offset(c) .. offset(c) + size(c)` in
/// counterclockwise order from its starred vertex; vertex `v_r` of that
/// polygon has the same global index as edge `E_r`, which joins `v_r` and
/// `v_{r+1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PolygonComplex {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    component: Vec<usize>,
}

impl PolygonComplex {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.contains(&0) {
            return invalid("polygons need at least one edge");
        }
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut component = Vec::new();
        let mut acc = 0;
        for (c, &k) in sizes.iter().enumerate() {
            offsets.push(acc);
            component.extend(std::iter::repeat_n(c, k));
            acc += k;
        }
        Ok(Self {
            sizes,
            offsets,
            component,
        })
    }

    pub fn polygon(k: usize) -> Result<Self> {
        Self::new(vec![k])
    }

    pub fn from_multiplicity(m: &MultiplicityVector) -> Result<Self> {
        Self::new(m.sizes())
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn num_edges(&self) -> usize {
        self.component.len()
    }

    pub fn component_of(&self, edge: usize) -> usize {
        self.component[edge]
    }

    /// Global index of the vertex after `edge`'s starting vertex.
    fn next_vertex(&self, edge: usize) -> usize {
        let c = self.component[edge];
        let (o, k) = (self.offsets[c], self.sizes[c]);
        o + (edge - o + 1) % k
    }

    fn edges_of(&self, c: usize) -> std::ops::Range<usize> {
        self.offsets[c]..self.offsets[c] + self.sizes[c]
    }
}

/// A perfect matching of edges with one twist flag per pair.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Gluing {
    /// Pairs `(a, b)` with `a < b`, sorted by `a`.
    pub pairs: Vec<(usize, usize)>,
    pub twists: Vec<bool>,
}

impl Gluing {
    pub fn new(mut pairs: Vec<(usize, usize)>, twists: Vec<bool>) -> Result<Self> {
        if pairs.len() != twists.len() {
            return invalid("one twist flag is needed per pair");
        }
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        order.sort_by_key(|&i| pairs[i].0);
        Ok(Self {
            pairs: order.iter().map(|&i| pairs[i]).collect(),
            twists: order.iter().map(|&i| twists[i]).collect(),
        })
    }

    fn validate(&self, c: &PolygonComplex) -> Result<()> {
        let mut seen = vec![false; c.num_edges()];
        for &(a, b) in &self.pairs {
            for e in [a, b] {
                if e >= seen.len() || seen[e] {
                    return invalid(format!("edge {e} is missing or matched twice"));
                }
                seen[e] = true;
            }
            if a == b {
                return invalid("an edge cannot be glued to itself");
            }
        }
        if seen.iter().any(|s| !s) {
            return invalid("gluing does not cover every edge");
        }
        Ok(())
    }

    fn twist_mask(&self) -> usize {
        self.twists
            .iter()
            .enumerate()
            .fold(0, |m, (i, &t)| if t { m | 1 << i } else { m })
    }
}

/// A unit index in `1..=8` for each pair of a gluing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Labeling {
    pub units: Vec<usize>,
}

/// Every (matching, twist pattern) of the complex's edges.
pub fn enumerate_gluings(c: &PolygonComplex) -> impl Iterator<Item = Gluing> {
    enumerate_matchings(c.num_edges())
        .into_iter()
        .flat_map(|pairs| {
            let p = pairs.len();
            (0..1usize << p).map(move |mask| Gluing {
                pairs: pairs.clone(),
                twists: (0..p).map(|i| mask >> i & 1 == 1).collect(),
            })
        })
}

fn classes_for(c: &PolygonComplex, pairs: &[(usize, usize)], twist_mask: usize) -> usize {
    let mut dsu = Dsu::new(c.num_edges());
    for (i, &(r, s)) in pairs.iter().enumerate() {
        let (r1, s1) = (c.next_vertex(r), c.next_vertex(s));
        if twist_mask >> i & 1 == 1 {
            dsu.union(r, s);
            dsu.union(r1, s1);
        } else {
            dsu.union(r, s1);
            dsu.union(r1, s);
        }
    }
    dsu.roots()
}

/// `N(π)`, the number of vertex classes after gluing.
pub fn vertex_classes(c: &PolygonComplex, g: &Gluing) -> Result<usize> {
    g.validate(c)?;
    Ok(classes_for(c, &g.pairs, g.twist_mask()))
}

fn check_labeling(c: &PolygonComplex, g: &Gluing, f: &Labeling, cache: &FnCache) -> Result<Vec<(i64, usize)>> {
    g.validate(c)?;
    if f.units.len() != g.pairs.len() || f.units.iter().any(|u| !(1..=8).contains(u)) {
        return invalid("labeling needs one unit in 1..=8 per pair");
    }
    let mut edge_unit = vec![0u8; c.num_edges()];
    for (&(a, b), &u) in g.pairs.iter().zip(&f.units) {
        edge_unit[a] = (u - 1) as u8;
        edge_unit[b] = (u - 1) as u8;
    }
    let mut values = Vec::with_capacity(c.sizes.len());
    for comp in 0..c.sizes.len() {
        let word = &edge_unit[c.edges_of(comp)];
        let (v, idx) = cache.sum_raw(word);
        if idx != 0 {
            return invalid(format!("labeling has a non-real product around polygon {comp}"));
        }
        values.push((v, word.len()));
    }
    Ok(values)
}

/// `α(π, f)`: `-1` for each imaginary pair glued with a twist.
pub fn sign_alpha(c: &PolygonComplex, g: &Gluing, f: &Labeling) -> Result<i64> {
    check_labeling(c, g, f, FnCache::canonical())?;
    Ok(g.twists
        .iter()
        .zip(&f.units)
        .map(|(&t, &u)| if t && u != 1 { -1 } else { 1 })
        .product())
}

/// `Ω(π, f)`.
///
/// Besides `α`, each imaginary pair contributes a factor `-1`: its second
/// edge carries the conjugate unit, and `ē = -e` for imaginary `e`. The
/// remaining factor is the product of the fully nested averages around each
/// polygon.
pub fn omega(c: &PolygonComplex, g: &Gluing, f: &Labeling) -> Result<ExactRational> {
    let cache = FnCache::canonical();
    let values = check_labeling(c, g, f, cache)?;
    let alpha = sign_alpha(c, g, f)?;
    let imaginary = f.units.iter().filter(|&&u| u != 1).count();
    let mut out = ExactRational::from(alpha * if imaginary % 2 == 1 { -1 } else { 1 });
    for (v, len) in values {
        out *= ExactRational::from(v) / ExactRational::from(2i64).pow(len.saturating_sub(2) as u32);
    }
    Ok(out)
}

/// Exponent `D` of the common denominator `2^D` of all `Σ_f Ω` for `c`.
fn denominator_exp(c: &PolygonComplex) -> u32 {
    c.sizes.iter().map(|&k| k.saturating_sub(2) as u32).sum()
}

/// `2^D · Σ_f Ω` for each twist mask of one matching.
fn twist_sums(c: &PolygonComplex, pairs: &[(usize, usize)], cache: &FnCache) -> Vec<i128> {
    let p = pairs.len();
    let mut edge_pair = vec![0usize; c.num_edges()];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        edge_pair[a] = i;
        edge_pair[b] = i;
    }
    let comp_pairs: Vec<Vec<usize>> = (0..c.sizes.len())
        .map(|comp| c.edges_of(comp).map(|e| edge_pair[e]).collect())
        .collect();
    let mut s = vec![0i128; 1 << p];
    let mut units = vec![0u8; p];
    let mut words: Vec<Vec<u8>> = c.sizes.iter().map(|&k| vec![0u8; k]).collect();
    'labelings: loop {
        let mut prod: i128 = 1;
        for (w, cp) in words.iter_mut().zip(&comp_pairs) {
            for (slot, &pi) in w.iter_mut().zip(cp) {
                *slot = units[pi];
            }
            let (v, idx) = cache.sum_raw(w);
            if idx != 0 || v == 0 {
                prod = 0;
                break;
            }
            prod *= v as i128;
        }
        if prod != 0 {
            let mask = units
                .iter()
                .enumerate()
                .fold(0usize, |m, (i, &u)| if u != 0 { m | 1 << i } else { m });
            if mask.count_ones() % 2 == 1 {
                prod = -prod;
            }
            s[mask] += prod;
        }
        // Odometer over 8^p unit choices.
        for u in units.iter_mut() {
            *u += 1;
            if *u < 8 {
                continue 'labelings;
            }
            *u = 0;
        }
        break;
    }
    // T[t] = Σ_mask S[mask] (-1)^{|mask ∧ t|}.
    let mut h = 1;
    while h < s.len() {
        for i in (0..s.len()).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (s[j], s[j + h]);
                s[j] = x + y;
                s[j + h] = x - y;
            }
        }
        h *= 2;
    }
    s
}

/// `(Σ_f Ω(π, f)) · n^{N(π)}` for a single gluing.
pub fn gluing_contribution(c: &PolygonComplex, g: &Gluing) -> Result<MomentPolynomial> {
    g.validate(c)?;
    let t = twist_sums(c, &g.pairs, FnCache::canonical());
    let value = ExactRational::from(t[g.twist_mask()])
        / ExactRational::from(2i64).pow(denominator_exp(c));
    Ok(MomentPolynomial::monomial(
        value,
        classes_for(c, &g.pairs, g.twist_mask()),
    ))
}

/// How the pairs of a matching sit relative to the polygons.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MatchingKind {
    /// Some pair joins two edges of the same polygon.
    Intra,
    /// Every pair joins different polygons; the field is `N` with no twists.
    Cross { untwisted_classes: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct GluingRecord {
    pub pairs: Vec<(usize, usize)>,
    pub twists: Vec<bool>,
    pub classes: usize,
    pub omega_sum: ExactRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchingRecord {
    pub pairs: Vec<(usize, usize)>,
    #[serde(flatten)]
    pub kind: MatchingKind,
    /// `Σ_twists Σ_f Ω n^N`, before the `2^{-K/2}` prefactor.
    pub total: MomentPolynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupRecord {
    #[serde(flatten)]
    pub kind: MatchingKind,
    pub matchings: usize,
    /// The common per-matching total when all matchings of the group agree.
    pub per_matching: Option<MomentPolynomial>,
    pub total: MomentPolynomial,
}

/// Per-gluing, per-matching and per-group trace of an enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct AuditDump {
    pub sizes: Vec<usize>,
    pub gluings: Vec<GluingRecord>,
    pub matchings: Vec<MatchingRecord>,
    pub groups: Vec<GroupRecord>,
    /// `2^{-K/2} Σ` of all matching totals.
    pub moment: MomentPolynomial,
}

struct MatchingResult {
    /// Coefficient of `n^N`, scaled by `2^D`.
    coeffs: Vec<i128>,
    per_twist: Vec<(usize, i128)>,
}

fn run_matching(c: &PolygonComplex, pairs: &[(usize, usize)], cache: &FnCache) -> MatchingResult {
    let t = twist_sums(c, pairs, cache);
    let mut coeffs = vec![0i128; c.num_edges() + 1];
    let mut per_twist = Vec::with_capacity(t.len());
    for (mask, &v) in t.iter().enumerate() {
        let classes = classes_for(c, pairs, mask);
        coeffs[classes] += v;
        per_twist.push((classes, v));
    }
    MatchingResult { coeffs, per_twist }
}

fn scaled_poly(coeffs: &[i128], den_exp: u32) -> MomentPolynomial {
    let den = ExactRational::from(2i64).pow(den_exp);
    MomentPolynomial::from_coeffs(
        coeffs
            .iter()
            .map(|&v| ExactRational::from(v) / den.clone())
            .collect(),
    )
}

fn run_complex(
    c: &PolygonComplex,
    cache: &FnCache,
    opts: &RunOptions,
) -> Vec<(Vec<(usize, usize)>, MatchingResult)> {
    let matchings = enumerate_matchings(c.num_edges());
    let tracker = opts.tracker(matchings.len());
    // Collecting keeps matching order, so any later reduction is sequential.
    matchings
        .into_par_iter()
        .map(|pairs| {
            let r = run_matching(c, &pairs, cache);
            tracker.tick();
            (pairs, r)
        })
        .collect()
}

/// Moment of a complex with an explicit fn cache (and hence table). No
/// budget check.
pub fn moment_of_complex(c: &PolygonComplex, cache: &FnCache, opts: &RunOptions) -> MomentPolynomial {
    if c.num_edges() % 2 == 1 {
        return MomentPolynomial::zero();
    }
    let mut acc = vec![0i128; c.num_edges() + 1];
    for (_, r) in run_complex(c, cache, opts) {
        for (a, v) in acc.iter_mut().zip(&r.coeffs) {
            *a += v;
        }
    }
    scaled_poly(&acc, denominator_exp(c) + (c.num_edges() / 2) as u32)
}

/// `C_O(n, k) = ⟨Tr X^k⟩` as a polynomial in `n`.
pub fn albert_moment(k: usize, opts: &RunOptions) -> Result<MomentPolynomial> {
    if k == 0 {
        // Tr of the identity.
        return Ok(MomentPolynomial::n());
    }
    if k % 2 == 1 {
        return Ok(MomentPolynomial::zero());
    }
    opts.check_budget(format!("albert moment k = {k}"), k, ALBERT_MAX_K)?;
    Ok(moment_of_complex(&PolygonComplex::polygon(k)?, FnCache::canonical(), opts))
}

/// `⟨Π_k (Tr X^k)^{m_k}⟩` as a polynomial in `n`.
pub fn albert_mixed_moment(m: &MultiplicityVector, opts: &RunOptions) -> Result<MomentPolynomial> {
    if m.total() % 2 == 1 {
        return Ok(MomentPolynomial::zero());
    }
    if m.count() == 0 {
        return Ok(MomentPolynomial::one());
    }
    opts.check_budget(format!("albert mixed moment N(m) = {}", m.total()), m.total(), ALBERT_MAX_MIXED)?;
    Ok(moment_of_complex(
        &PolygonComplex::from_multiplicity(m)?,
        FnCache::canonical(),
        opts,
    ))
}

/// Perturbation coefficient: the mixed moment divided by `Π m_k!`.
pub fn albert_perturb_coefficient(m: &MultiplicityVector, opts: &RunOptions) -> Result<MomentPolynomial> {
    Ok(albert_mixed_moment(m, opts)?.scale(&m.symmetry_factor().recip()))
}

fn matching_kind(c: &PolygonComplex, pairs: &[(usize, usize)]) -> MatchingKind {
    if pairs.iter().any(|&(a, b)| c.component_of(a) == c.component_of(b)) {
        MatchingKind::Intra
    } else {
        MatchingKind::Cross {
            untwisted_classes: classes_for(c, pairs, 0),
        }
    }
}

/// Full enumeration trace for the complex with the given polygon sizes.
pub fn albert_audit(sizes: Vec<usize>, opts: &RunOptions) -> Result<AuditDump> {
    let c = PolygonComplex::new(sizes)?;
    if c.num_edges() % 2 == 1 {
        return invalid("odd total edge count has no gluings");
    }
    let limit = if c.sizes.len() == 1 { ALBERT_MAX_K } else { ALBERT_MAX_MIXED };
    opts.check_budget(format!("albert audit of {:?}", c.sizes), c.num_edges(), limit)?;
    let d = denominator_exp(&c);
    let den = ExactRational::from(2i64).pow(d);
    let mut gluings = Vec::new();
    let mut matchings = Vec::new();
    let mut acc = vec![0i128; c.num_edges() + 1];
    for (pairs, r) in run_complex(&c, FnCache::canonical(), opts) {
        for (mask, &(classes, v)) in r.per_twist.iter().enumerate() {
            gluings.push(GluingRecord {
                pairs: pairs.clone(),
                twists: (0..pairs.len()).map(|i| mask >> i & 1 == 1).collect(),
                classes,
                omega_sum: ExactRational::from(v) / den.clone(),
            });
        }
        for (a, v) in acc.iter_mut().zip(&r.coeffs) {
            *a += v;
        }
        matchings.push(MatchingRecord {
            kind: matching_kind(&c, &pairs),
            pairs,
            total: scaled_poly(&r.coeffs, d),
        });
    }
    let mut kinds: Vec<MatchingKind> = matchings.iter().map(|m| m.kind).collect();
    kinds.sort();
    kinds.dedup();
    let groups = kinds
        .into_iter()
        .map(|kind| {
            let members: Vec<&MatchingRecord> = matchings.iter().filter(|m| m.kind == kind).collect();
            let first = members[0].total.clone();
            let uniform = members.iter().all(|m| m.total == first);
            GroupRecord {
                kind,
                matchings: members.len(),
                per_matching: uniform.then_some(first),
                total: members.iter().map(|m| m.total.clone()).sum(),
            }
        })
        .collect();
    let moment = scaled_poly(&acc, d + (c.num_edges() / 2) as u32);
    Ok(AuditDump {
        sizes: c.sizes.clone(),
        gluings,
        matchings,
        groups,
        moment,
    })
}

/// `Σ_f Ω` for one gluing by brute force over all `8^K` edge labelings,
/// keeping those constant on pairs with a real product around each polygon.
pub fn omega_sum_brute(c: &PolygonComplex, g: &Gluing) -> Result<ExactRational> {
    g.validate(c)?;
    let k = c.num_edges();
    let mut total = ExactRational::ZERO;
    for code in 0..8usize.pow(k as u32) {
        let edge: Vec<usize> = (0..k).map(|e| code / 8usize.pow(e as u32) % 8 + 1).collect();
        if g.pairs.iter().any(|&(a, b)| edge[a] != edge[b]) {
            continue;
        }
        let table = FnCache::canonical().table();
        let real = (0..c.sizes.len()).all(|comp| {
            let w: Vec<SignedUnit> = c
                .edges_of(comp)
                .map(|e| SignedUnit::unit(edge[e]).expect("index in range"))
                .collect();
            crate::nesting::is_real_product(table, &w)
        });
        if !real {
            continue;
        }
        let f = Labeling {
            units: g.pairs.iter().map(|&(a, _)| edge[a]).collect(),
        };
        total += omega(c, g, &f)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octonion::MultiplicationTable;

    fn poly(c: &[i64]) -> MomentPolynomial {
        MomentPolynomial::from_i64s(c)
    }

    fn opts() -> RunOptions {
        RunOptions::default()
    }

    #[test]
    fn gluing_counts() {
        for (k, n) in [(2, 2), (4, 12), (6, 120)] {
            let c = PolygonComplex::polygon(k).unwrap();
            assert_eq!(enumerate_gluings(&c).count(), n);
        }
        assert_eq!(enumerate_matchings(6).len(), 15);
        assert!(enumerate_matchings(5).is_empty());
    }

    #[test]
    fn bigon() {
        let c = PolygonComplex::polygon(2).unwrap();
        let untwisted = Gluing::new(vec![(0, 1)], vec![false]).unwrap();
        let twisted = Gluing::new(vec![(0, 1)], vec![true]).unwrap();
        assert_eq!(vertex_classes(&c, &untwisted).unwrap(), 2);
        assert_eq!(vertex_classes(&c, &twisted).unwrap(), 1);
        for u in 1..=8 {
            let f = Labeling { units: vec![u] };
            assert_eq!(omega(&c, &untwisted, &f).unwrap(), ExactRational::ONE);
        }
        assert_eq!(gluing_contribution(&c, &untwisted).unwrap(), poly(&[0, 0, 8]));
        assert_eq!(gluing_contribution(&c, &twisted).unwrap(), poly(&[0, -6]));
        assert_eq!(gluing_contribution(&c, &untwisted).unwrap().eval(3), ExactRational::from(72i64));
    }

    fn hexagon_gluing() -> (PolygonComplex, Gluing) {
        let c = PolygonComplex::polygon(6).unwrap();
        let g = Gluing::new(vec![(0, 2), (1, 3), (4, 5)], vec![true, false, true]).unwrap();
        (c, g)
    }

    #[test]
    fn hexagon_checkpoints() {
        let (c, g) = hexagon_gluing();
        assert_eq!(vertex_classes(&c, &g).unwrap(), 1);
        let f = Labeling { units: vec![4, 5, 6] };
        assert_eq!(sign_alpha(&c, &g, &f).unwrap(), 1);
        assert_eq!(omega(&c, &g, &f).unwrap(), ExactRational::new(-5, 8));
        let contrib = gluing_contribution(&c, &g).unwrap();
        assert_eq!(contrib, poly(&[0, -153]));
        assert_eq!(contrib.eval(3), ExactRational::from(-459i64));
    }

    #[test]
    fn alpha_rules() {
        let c = PolygonComplex::polygon(2).unwrap();
        let tw = Gluing::new(vec![(0, 1)], vec![true]).unwrap();
        let untw = Gluing::new(vec![(0, 1)], vec![false]).unwrap();
        assert_eq!(sign_alpha(&c, &tw, &Labeling { units: vec![1] }).unwrap(), 1);
        assert_eq!(sign_alpha(&c, &untw, &Labeling { units: vec![3] }).unwrap(), 1);
        assert_eq!(sign_alpha(&c, &tw, &Labeling { units: vec![3] }).unwrap(), -1);
        let sq = PolygonComplex::polygon(4).unwrap();
        let g = Gluing::new(vec![(0, 1), (2, 3)], vec![false, false]).unwrap();
        // e2 e2 e3 e3 is real, e2 e2 e3 e3 with a bad label count is rejected.
        assert!(sign_alpha(&sq, &g, &Labeling { units: vec![2, 3] }).is_ok());
        let g2 = Gluing::new(vec![(0, 2), (1, 3)], vec![false, false]).unwrap();
        assert!(omega(&sq, &g2, &Labeling { units: vec![2] }).is_err());
        assert!(omega(&sq, &g2, &Labeling { units: vec![2, 9] }).is_err());
    }

    #[test]
    fn single_polygon_moments() {
        assert_eq!(albert_moment(2, &opts()).unwrap(), poly(&[0, -3, 4]));
        assert_eq!(albert_moment(4, &opts()).unwrap(), poly(&[0, 31, -60, 32]));
        let c6 = albert_moment(6, &opts()).unwrap();
        assert_eq!(c6, poly(&[0, -435, 1081, -930, 299]));
        assert_eq!(c6.eval(3), ExactRational::from(7533i64));
        assert!(albert_moment(3, &opts()).unwrap().is_zero());
        assert_eq!(albert_moment(0, &opts()).unwrap(), MomentPolynomial::n());
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            albert_moment(10, &opts()),
            Err(crate::Error::BudgetExceeded { .. })
        ));
        let m = MultiplicityVector::single(5, 2).unwrap();
        assert!(albert_mixed_moment(&m, &opts()).is_err());
    }

    #[test]
    fn brute_force_labelings_agree() {
        for k in [2, 4] {
            let c = PolygonComplex::polygon(k).unwrap();
            for g in enumerate_gluings(&c) {
                let fast = gluing_contribution(&c, &g).unwrap();
                let brute = omega_sum_brute(&c, &g).unwrap();
                assert_eq!(fast.coeff(vertex_classes(&c, &g).unwrap()), brute);
            }
        }
    }

    #[test]
    fn independent_of_table() {
        let alt = FnCache::new(MultiplicationTable::alternate());
        for k in [2, 4, 6] {
            let c = PolygonComplex::polygon(k).unwrap();
            assert_eq!(
                moment_of_complex(&c, &alt, &opts()),
                albert_moment(k, &opts()).unwrap()
            );
        }
    }

    #[test]
    fn two_triangles() {
        let m = MultiplicityVector::single(3, 2).unwrap();
        let mixed = albert_mixed_moment(&m, &opts()).unwrap();
        assert_eq!(mixed, poly(&[0, 147, -324, 192]));
        assert_eq!(mixed.eval(3), ExactRational::from(2709i64));
        assert_eq!(
            albert_perturb_coefficient(&m, &opts()).unwrap(),
            mixed.scale(&ExactRational::new(1, 2))
        );
        let audit = albert_audit(vec![3, 3], &opts()).unwrap();
        assert_eq!(audit.moment, mixed);
        assert_eq!(audit.gluings.len(), 15 * 8);
        let totals: Vec<(MatchingKind, usize, i64)> = audit
            .groups
            .iter()
            .map(|g| {
                let per = g.per_matching.as_ref().unwrap();
                (g.kind, g.matchings, per.eval(3).to_i64().unwrap())
            })
            .collect();
        assert_eq!(
            totals,
            vec![
                (MatchingKind::Intra, 9, 1944),
                (MatchingKind::Cross { untwisted_classes: 1 }, 3, 696),
                (MatchingKind::Cross { untwisted_classes: 3 }, 3, 696),
            ]
        );
        assert_eq!(
            audit.groups[0].per_matching.clone().unwrap(),
            poly(&[0, 72, -192, 128])
        );
    }
}
