//! Diagram-versus-oracle comparisons, reported claim by claim.

use serde::Serialize;

use crate::albert::{albert_audit, albert_mixed_moment, albert_moment, MatchingKind};
use crate::error::{invalid, Result};
use crate::exact::{ExactRational, MomentPolynomial};
use crate::multiplicity::MultiplicityVector;
use crate::parallel::RunOptions;
use crate::spin::{spin_moment_enum, spin_moment_gf, spin_perturb_coefficient, spin_symmetry_factor, SPIN_ENUM_MAX_K};
use crate::wick::{
    oracle_albert_mixed, oracle_albert_moment, oracle_spin_mixed_symbolic, oracle_spin_moment,
    oracle_spin_moment_symbolic,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyStatus {
    Pass,
    Mismatch,
    /// Diagrams and oracle agree with each other but not with a printed value.
    PaperDivergence,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerifyReport {
    pub claim: String,
    pub diagram_value: String,
    pub oracle_value: String,
    pub equal: bool,
    pub status: VerifyStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_value: Option<String>,
}

impl VerifyReport {
    fn new(claim: String, diagram: impl ToString, oracle: impl ToString, printed: Option<String>) -> Self {
        let (diagram_value, oracle_value) = (diagram.to_string(), oracle.to_string());
        let equal = diagram_value == oracle_value;
        let status = match &printed {
            _ if !equal => VerifyStatus::Mismatch,
            Some(p) if *p != diagram_value => VerifyStatus::PaperDivergence,
            _ => VerifyStatus::Pass,
        };
        Self {
            claim,
            diagram_value,
            oracle_value,
            equal,
            status,
            paper_value: printed,
        }
    }

    pub fn is_failure(&self) -> bool {
        self.status == VerifyStatus::Mismatch
    }
}

/// The printed two-cube spin coefficient, `9/8 n² + 7/2 n + 15/8`.
pub fn printed_spin_two_cubes() -> MomentPolynomial {
    MomentPolynomial::from_coeffs(vec![
        ExactRational::new(15, 8),
        ExactRational::new(7, 2),
        ExactRational::new(9, 8),
    ])
}

/// The printed condensed type-(I) total for two triangles, `32n³ - 32n² + 8n`.
pub fn printed_albert_type_one() -> MomentPolynomial {
    MomentPolynomial::from_i64s(&[0, 8, -32, 32])
}

/// The printed octonionic `k = 8` row,
/// `5992n⁵ - 26577n⁴ + 50942n³ - 46875n² + 16728n`.
pub fn printed_albert_k8() -> MomentPolynomial {
    MomentPolynomial::from_i64s(&[0, 16728, -46875, 50942, -26577, 5992])
}

fn check_albert_n(ns: &[usize]) -> Result<()> {
    match ns.iter().find(|&&n| !(1..=3).contains(&n)) {
        Some(n) => invalid(format!("the octonionic oracle exists only for n in 1..=3, got {n}")),
        None => Ok(()),
    }
}

/// `C_O(n, k)` from gluings against the Wick expansion at each `n`.
pub fn verify_albert_moment(k: usize, ns: &[usize], opts: &RunOptions) -> Result<Vec<VerifyReport>> {
    check_albert_n(ns)?;
    let poly = albert_moment(k, opts)?;
    ns.iter()
        .map(|&n| {
            Ok(VerifyReport::new(
                format!("albert moment k={k} n={n}"),
                poly.eval(n as i64),
                oracle_albert_moment(k, n)?,
                (k == 8).then(|| printed_albert_k8().eval(n as i64).to_string()),
            ))
        })
        .collect()
}

/// Mixed Albert moment against the oracle; for two triangles also the
/// type-(I) subtotal against its printed condensed form.
pub fn verify_albert_mixed(m: &MultiplicityVector, ns: &[usize], opts: &RunOptions) -> Result<Vec<VerifyReport>> {
    check_albert_n(ns)?;
    let poly = albert_mixed_moment(m, opts)?;
    let mut out: Vec<VerifyReport> = ns
        .iter()
        .map(|&n| {
            Ok(VerifyReport::new(
                format!("albert mixed {m} n={n}"),
                poly.eval(n as i64),
                oracle_albert_mixed(m, n)?,
                None,
            ))
        })
        .collect::<Result<_>>()?;
    if m.to_string() == "3:2" {
        let audit = albert_audit(m.sizes(), opts)?;
        let group = audit
            .groups
            .iter()
            .find(|g| g.kind == MatchingKind::Intra)
            .expect("two triangles have intra-polygon matchings");
        let per = group.per_matching.clone().expect("intra matchings agree");
        // The oracle side: the full moment is what remains after removing the
        // cross-polygon groups, spread over the intra matchings.
        let cross: MomentPolynomial = audit
            .groups
            .iter()
            .filter(|g| g.kind != MatchingKind::Intra)
            .map(|g| g.total.clone())
            .sum();
        let scale = ExactRational::from(2i64).pow(m.total() as u32 / 2);
        let oracle_total = oracle_albert_mixed(m, 3)? * &scale;
        let intra = (oracle_total - cross.eval(3)) / ExactRational::from(group.matchings);
        out.push(VerifyReport::new(
            format!("albert mixed {m} type-I subtotal n=3"),
            per.eval(3),
            intra,
            Some(printed_albert_type_one().eval(3).to_string()),
        ));
    }
    Ok(out)
}

/// `C_S(n, k)` from barbells (gf, plus enumeration when small) against the
/// oracle, symbolically in `n` or at a given `n`.
pub fn verify_spin_moment(k: usize, n: Option<usize>, opts: &RunOptions) -> Result<Vec<VerifyReport>> {
    let gf = spin_moment_gf(k)?.swap_remove(k);
    let mut diagrams = vec![("gf", gf)];
    if k <= SPIN_ENUM_MAX_K || opts.allow_long {
        diagrams.push(("enumeration", spin_moment_enum(k, opts)?.moment));
    }
    diagrams
        .into_iter()
        .map(|(how, poly)| {
            Ok(match n {
                Some(n) => VerifyReport::new(
                    format!("spin moment k={k} n={n} ({how})"),
                    poly.eval(n as i64),
                    oracle_spin_moment(k, n)?,
                    None,
                ),
                None => VerifyReport::new(
                    format!("spin moment k={k} ({how})"),
                    poly,
                    oracle_spin_moment_symbolic(k),
                    None,
                ),
            })
        })
        .collect()
}

/// Spin perturbation coefficient against the oracle, symbolic in `n`.
pub fn verify_spin_mixed(m: &MultiplicityVector, opts: &RunOptions) -> Result<Vec<VerifyReport>> {
    let diagram = spin_perturb_coefficient(m, opts)?;
    let oracle = oracle_spin_mixed_symbolic(m).scale(&spin_symmetry_factor(m).recip());
    let printed = (m.to_string() == "3:2").then(|| printed_spin_two_cubes().to_string());
    Ok(vec![VerifyReport::new(
        format!("spin perturbation coefficient {m}"),
        diagram,
        oracle,
        printed,
    )])
}

/// The default suite run by `verify` with no scope.
pub fn verify_default(opts: &RunOptions) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    for k in [2, 4, 6] {
        out.extend(verify_albert_moment(k, &[1, 2, 3], opts)?);
    }
    out.extend(verify_albert_mixed(&"3:2".parse()?, &[1, 2, 3], opts)?);
    for k in (0..=10).step_by(2) {
        out.extend(verify_spin_moment(k, None, opts)?);
    }
    for m in ["3:2", "4:1", "3:1,5:1", "4:2"] {
        out.extend(verify_spin_mixed(&m.parse()?, opts)?);
    }
    Ok(out)
}
