//! Barbell graphs on the fixed configuration of `m` barbells `{2i, 2i+1}`.
//!
//! Each endpoint is colored black or green and endpoints are paired without
//! mixing colors; `N(Γ)` counts components containing a green endpoint.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exact::{factorial, ExactRational, MomentPolynomial};
use crate::pairings::{enumerate_matchings, permutations, Dsu};
use crate::parallel::RunOptions;

/// Largest `m` for the labelled graph sum without `allow_long`.
pub const GRAPH_MAX_M: usize = 6;
/// Largest `m` for the orbit enumeration without `allow_long`.
pub const ORBIT_MAX_M: usize = 5;
/// Packed keys hold 4-bit partners plus colors in 64 bits.
const ORBIT_HARD_MAX_M: usize = 6;

/// A labelled barbell graph: colors and a color-respecting pairing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BarbellGraph {
    pub m: usize,
    /// Bit `p` set when endpoint `p` is green.
    pub green: u32,
    /// `partner[p]` is the endpoint paired with `p`.
    pub partner: Vec<u8>,
}

impl BarbellGraph {
    pub fn classes(&self) -> usize {
        let mut dsu = Dsu::new(2 * self.m);
        for i in 0..self.m {
            dsu.union(2 * i, 2 * i + 1);
        }
        for (p, &q) in self.partner.iter().enumerate() {
            dsu.union(p, q as usize);
        }
        let mut roots: Vec<usize> = (0..2 * self.m)
            .filter(|&p| self.green >> p & 1 == 1)
            .map(|p| dsu.find(p))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Packed key: colors in the high bits, then 4 bits per partner.
    fn key(&self) -> u64 {
        let mut k = self.green as u64;
        for &q in &self.partner {
            k = (k << 4) | q as u64;
        }
        k
    }

    /// Image under the barbell-group element `(σ, flips)`, sending endpoint
    /// `2i + b` to `2σ(i) + (b xor flip_i)`.
    fn act(&self, sigma: &[usize], flips: u32) -> BarbellGraph {
        let map = |p: usize| 2 * sigma[p / 2] + ((p & 1) ^ (flips as usize >> (p / 2) & 1));
        let mut green = 0u32;
        let mut partner = vec![0u8; 2 * self.m];
        for p in 0..2 * self.m {
            let g = map(p);
            if self.green >> p & 1 == 1 {
                green |= 1 << g;
            }
            partner[g] = map(self.partner[p] as usize) as u8;
        }
        BarbellGraph {
            m: self.m,
            green,
            partner,
        }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&p| p < self.partner[p] as usize)
            .map(|p| (p, self.partner[p] as usize))
            .collect()
    }

    /// Colors as a string of `B`/`G`, endpoint 0 first.
    pub fn coloring(&self) -> String {
        (0..2 * self.m)
            .map(|p| if self.green >> p & 1 == 1 { 'G' } else { 'B' })
            .collect()
    }
}

/// Every color-respecting pairing for the given coloring.
fn graphs_for_coloring(m: usize, green: u32, matchings: &[Vec<Vec<(usize, usize)>>]) -> Vec<BarbellGraph> {
    let (greens, blacks): (Vec<usize>, Vec<usize>) = (0..2 * m).partition(|&p| green >> p & 1 == 1);
    if greens.len() % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for gm in &matchings[greens.len()] {
        for bm in &matchings[blacks.len()] {
            let mut partner = vec![0u8; 2 * m];
            for &(a, b) in gm {
                partner[greens[a]] = greens[b] as u8;
                partner[greens[b]] = greens[a] as u8;
            }
            for &(a, b) in bm {
                partner[blacks[a]] = blacks[b] as u8;
                partner[blacks[b]] = blacks[a] as u8;
            }
            out.push(BarbellGraph { m, green, partner });
        }
    }
    out
}

fn matchings_up_to(n: usize) -> Vec<Vec<Vec<(usize, usize)>>> {
    (0..=n).map(enumerate_matchings).collect()
}

/// `Σ_Γ n^{N(Γ)}` over all labelled barbell graphs on `m` barbells.
pub fn barbell_graph_sum(m: usize, opts: &RunOptions) -> Result<MomentPolynomial> {
    opts.check_budget(format!("barbell graph sum m = {m}"), m, GRAPH_MAX_M)?;
    let matchings = matchings_up_to(2 * m);
    let tracker = opts.tracker(1 << (2 * m));
    let per_coloring: Vec<Vec<u64>> = (0..1u32 << (2 * m))
        .into_par_iter()
        .map(|green| {
            let mut tally = vec![0u64; m + 1];
            for g in graphs_for_coloring(m, green, &matchings) {
                tally[g.classes()] += 1;
            }
            tracker.tick();
            tally
        })
        .collect();
    let mut tally = vec![0i64; m + 1];
    for t in per_coloring {
        for (a, b) in tally.iter_mut().zip(t) {
            *a += b as i64;
        }
    }
    Ok(MomentPolynomial::from_i64s(&tally))
}

/// One orbit of the barbell group on labelled graphs.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    /// Lexicographically least graph of the orbit.
    pub coloring: String,
    pub pairs: Vec<(usize, usize)>,
    pub classes: usize,
    /// Order of the stabilizer.
    pub automorphisms: usize,
    pub orbit_size: usize,
    /// `n^N / |Aut|`.
    pub weight: MomentPolynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitInventory {
    pub m: usize,
    pub group_order: usize,
    pub orbits: Vec<OrbitRecord>,
    /// `Σ n^N / |Aut|` over orbits.
    pub total: MomentPolynomial,
}

/// The barbell group `B_m` as (permutation, flip mask) pairs.
fn barbell_group(m: usize) -> Vec<(Vec<usize>, u32)> {
    let perms = permutations(m);
    let mut out = Vec::with_capacity(perms.len() << m);
    for p in perms {
        for flips in 0..1u32 << m {
            out.push((p.clone(), flips));
        }
    }
    out
}

/// Orbits of `B_m` on barbell graphs with their stabilizer orders.
pub fn barbell_orbit_sum(m: usize, opts: &RunOptions) -> Result<OrbitInventory> {
    opts.check_budget(format!("barbell orbit sum m = {m}"), m, ORBIT_MAX_M)?;
    if m > ORBIT_HARD_MAX_M {
        return Err(crate::Error::InvalidInput(format!(
            "orbit enumeration supports m <= {ORBIT_HARD_MAX_M}"
        )));
    }
    let group = barbell_group(m);
    let matchings = matchings_up_to(2 * m);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut orbits = Vec::new();
    for green in 0..1u32 << (2 * m) {
        for g in graphs_for_coloring(m, green, &matchings) {
            if seen.contains(&g.key()) {
                continue;
            }
            let mut stabilizer = 0;
            let mut best = g.clone();
            for (sigma, flips) in &group {
                let img = g.act(sigma, *flips);
                if img == g {
                    stabilizer += 1;
                }
                if img.key() < best.key() {
                    best = img.clone();
                }
                seen.insert(img.key());
            }
            let classes = g.classes();
            orbits.push(OrbitRecord {
                coloring: best.coloring(),
                pairs: best.pairs(),
                classes,
                automorphisms: stabilizer,
                orbit_size: group.len() / stabilizer,
                weight: MomentPolynomial::monomial(ExactRational::new(1, stabilizer as i64), classes),
            });
        }
    }
    orbits.sort_by(|a, b| (a.classes, &a.coloring, &a.pairs).cmp(&(b.classes, &b.coloring, &b.pairs)));
    let total = orbits.iter().map(|o| o.weight.clone()).sum();
    Ok(OrbitInventory {
        m,
        group_order: group.len(),
        orbits,
        total,
    })
}

/// `|B_m| = 2^m m!`.
pub fn barbell_group_order(m: usize) -> ExactRational {
    ExactRational::from(2i64).pow(m as u32) * factorial(m)
}
