//! Graded K-character series of Γ(Ñ, 𝒪(λ′)) from the symmetric algebra of
//! (u∩p)*, the vanishing check, Hilbert series, component sums, Blattner
//! multiplicities and the QCT evidence report.
//!
//! Vanishing is tested through its positivity consequence: if the higher
//! cohomology vanishes, every χ_k is an honest character.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bott::euler_of_counts;
use crate::error::{input, Result};
use crate::exec;
use crate::grading::{is_qk_dominant, GradedDecomposition, ParabolicData};
use crate::realform::KRootDatum;
use crate::rootdata::{root_functional, PartitionFunction, VirtualCharacter, Weight, WeylElement};

/// Weights of Sym^k of a space with the given weights (all of the given
/// rank), with multiplicity.
pub fn sym_weights(parts: &[Weight], rank: usize, k: usize) -> BTreeMap<Weight, i64> {
    let mut table: Vec<BTreeMap<Weight, i64>> = vec![BTreeMap::new(); k + 1];
    table[0].insert(Weight::zero(rank), 1);
    for p in parts {
        for j in 1..=k {
            let shifted: Vec<(Weight, i64)> =
                table[j - 1].iter().map(|(w, &m)| (w + p, m)).collect();
            for (w, m) in shifted {
                *table[j].entry(w).or_insert(0) += m;
            }
        }
    }
    table.swap_remove(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedCharacterSeries {
    pub lambda: Weight,
    pub h: Vec<i64>,
    pub n: usize,
    pub per_degree: Vec<VirtualCharacter>,
}

impl GradedCharacterSeries {
    pub fn dims(&self, kd: &KRootDatum) -> Result<Vec<i64>> {
        self.per_degree
            .iter()
            .map(|c| c.dimension(kd.subsystem()))
            .collect()
    }
}

/// χ_k = dual(Σ_{ν ∈ Sym^k(u∩p)} Euler(ν + λ′)).
pub fn degree_character(
    lambda: &Weight,
    gd: &GradedDecomposition,
    kd: &KRootDatum,
    k: usize,
) -> VirtualCharacter {
    let sub = kd.subsystem();
    let shifted: BTreeMap<Weight, i64> = sym_weights(&gd.u_cap_p_weights(), lambda.rank(), k)
        .into_iter()
        .map(|(w, m)| (&w + lambda, m))
        .collect();
    euler_of_counts(&shifted, sub).dual(sub)
}

pub fn euler_series(
    lambda: &Weight,
    gd: &GradedDecomposition,
    kd: &KRootDatum,
    n: usize,
) -> GradedCharacterSeries {
    let per_degree = exec::map_range(n + 1, |k| degree_character(lambda, gd, kd, k));
    GradedCharacterSeries {
        lambda: lambda.clone(),
        h: gd.h().to_vec(),
        n,
        per_degree,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Evidence,
    HypothesisUnmet,
    Skipped,
}

impl Verdict {
    /// Worst of two verdicts for aggregation.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        let rank = |v: Verdict| match v {
            Fail => 4,
            HypothesisUnmet => 3,
            Evidence => 2,
            Pass => 1,
            Skipped => 0,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Evidence => "EVIDENCE",
            Verdict::HypothesisUnmet => "HYPOTHESIS-UNMET",
            Verdict::Skipped => "SKIPPED",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub k: usize,
    pub weight: Weight,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub k: usize,
    pub dims: i64,
    pub decomposition: VirtualCharacter,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    #[serde(rename = "H")]
    pub h: Vec<i64>,
    pub lambda: Weight,
    #[serde(rename = "N")]
    pub n: usize,
    pub per_degree: Vec<DegreeReport>,
    pub verdict: Verdict,
    pub note: String,
}

const VANISHING_NOTE: &str =
    "checks the positivity consequence of higher-cohomology vanishing, not the cohomology itself";

pub fn verify_vanishing(
    lambda: &Weight,
    gd: &GradedDecomposition,
    pd: &ParabolicData,
    kd: &KRootDatum,
    n: usize,
) -> Result<VanishingReport> {
    if !is_qk_dominant(lambda, pd, kd) {
        return Ok(VanishingReport {
            h: gd.h().to_vec(),
            lambda: lambda.clone(),
            n,
            per_degree: Vec::new(),
            verdict: Verdict::HypothesisUnmet,
            note: format!("{lambda} is not Q∩K-dominant; the theorem makes no claim"),
        });
    }
    let series = euler_series(lambda, gd, kd, n);
    let mut per_degree = Vec::with_capacity(n + 1);
    let mut verdict = Verdict::Pass;
    for (k, chi) in series.per_degree.into_iter().enumerate() {
        let violations: Vec<Violation> = chi
            .negative_terms()
            .into_iter()
            .map(|(weight, mult)| Violation { k, weight, mult })
            .collect();
        if !violations.is_empty() {
            verdict = Verdict::Fail;
        }
        let dims = chi.dimension(kd.subsystem())?;
        per_degree.push(DegreeReport {
            k,
            dims,
            decomposition: chi,
            violations,
        });
    }
    Ok(VanishingReport {
        h: gd.h().to_vec(),
        lambda: lambda.clone(),
        n,
        per_degree,
        verdict,
        note: VANISHING_NOTE.into(),
    })
}

/// Dimensions of the degree-k pieces of Γ(Ñ, 𝒪).
pub fn hilbert_series(gd: &GradedDecomposition, kd: &KRootDatum, n: usize) -> Result<Vec<i64>> {
    euler_series(&Weight::zero(gd.h().len()), gd, kd, n).dims(kd)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSplit {
    pub components: Vec<GradedCharacterSeries>,
    pub component_dims: Vec<Vec<i64>>,
    pub total: Vec<VirtualCharacter>,
    pub total_dims: Vec<i64>,
}

/// Normalization of a union of components: the direct sum of the series.
pub fn components_split(
    components: &[GradedDecomposition],
    kd: &KRootDatum,
    n: usize,
) -> Result<ComponentSplit> {
    if components.is_empty() {
        return input("components_split needs at least one component");
    }
    let zero = Weight::zero(kd.subsystem().rank());
    let series: Vec<GradedCharacterSeries> = components
        .iter()
        .map(|gd| euler_series(&zero, gd, kd, n))
        .collect();
    let component_dims = series
        .iter()
        .map(|s| s.dims(kd))
        .collect::<Result<Vec<_>>>()?;
    let mut total = vec![VirtualCharacter::new(); n + 1];
    for s in &series {
        for (t, c) in total.iter_mut().zip(&s.per_degree) {
            t.add_assign(c);
        }
    }
    let total_dims = total
        .iter()
        .map(|c| c.dimension(kd.subsystem()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComponentSplit {
        components: series,
        component_dims,
        total,
        total_dims,
    })
}

/// Alternating Weyl sums of the partition function of u∩p.
///
/// The multiplicity of V_μ in the series at λ′ is
/// `Σ_{w ∈ W_K} (−1)^{ℓ(w)} P(w·μ* − λ′)`, where μ* is the highest weight of
/// the dual of V_μ and P counts sums of u∩p weights (graded by the number
/// of summands for a single degree).
pub struct Blattner {
    kd: KRootDatum,
    pf: PartitionFunction,
    weyl: Arc<Vec<WeylElement>>,
}

impl Blattner {
    pub fn new(gd: &GradedDecomposition, kd: &KRootDatum) -> Result<Self> {
        let rs = gd.root_system();
        let functional = root_functional(rs, gd.h());
        let parts = gd.u_cap_p_weights();
        let pf = PartitionFunction::new(parts, functional)?;
        let weyl = kd.subsystem().weyl_group()?;
        Ok(Blattner {
            kd: kd.clone(),
            pf,
            weyl,
        })
    }

    fn check(&self, mu: &Weight) -> Result<Weight> {
        let sub = self.kd.subsystem();
        if mu.rank() != sub.rank() || !sub.is_dominant(mu) {
            return input(format!("{mu} is not K-dominant"));
        }
        Ok(sub.dual(mu))
    }

    /// Total multiplicity over all degrees.
    pub fn multiplicity(&self, mu: &Weight, lambda: &Weight) -> Result<i64> {
        let star = self.check(mu)?;
        let sub = self.kd.subsystem();
        let terms = exec::map(&self.weyl, |w| {
            w.sign() * self.pf.count(&(&sub.dot(w, &star) - lambda)) as i64
        });
        Ok(terms.into_iter().sum())
    }

    /// Multiplicity in degree k.
    pub fn graded(&self, mu: &Weight, lambda: &Weight, k: usize) -> Result<i64> {
        let star = self.check(mu)?;
        let sub = self.kd.subsystem();
        let terms = exec::map(&self.weyl, |w| {
            w.sign() * self.pf.count_graded(&(&sub.dot(w, &star) - lambda), k) as i64
        });
        Ok(terms.into_iter().sum())
    }

    /// No partition of any w·μ* − λ′ uses more parts than this.
    pub fn max_degree(&self, mu: &Weight, lambda: &Weight) -> Result<usize> {
        let star = self.check(mu)?;
        let sub = self.kd.subsystem();
        let f = self.pf.functional();
        let best = self
            .weyl
            .iter()
            .map(|w| {
                let v = &sub.dot(w, &star) - lambda;
                f.iter().zip(&v.0).map(|(a, b)| a * b).sum::<i64>()
            })
            .max()
            .unwrap_or(0);
        let min_part = self
            .pf
            .parts()
            .iter()
            .map(|p| f.iter().zip(&p.0).map(|(a, b)| a * b).sum::<i64>())
            .min()
            .unwrap_or(1);
        Ok((best.max(0) / min_part) as usize)
    }
}

pub fn blattner_multiplicity(
    mu: &Weight,
    lambda: &Weight,
    gd: &GradedDecomposition,
    kd: &KRootDatum,
) -> Result<i64> {
    Blattner::new(gd, kd)?.multiplicity(mu, lambda)
}

/// Oracle facts needed by the QCT report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSample {
    pub k_orbit_dim: usize,
    pub g_orbit_dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QctInput {
    pub nilcone_dim: usize,
    pub principal_orbit_dims: Vec<usize>,
    pub samples: Vec<OrbitSample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityRow {
    pub k_orbit_dim: usize,
    pub g_orbit_dim: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QctReport {
    pub label: String,
    pub degenerate: bool,
    pub components: usize,
    pub nilcone_dim: usize,
    pub principal_orbit_dims: Vec<usize>,
    pub g1_evidence: bool,
    pub parity_table: Vec<ParityRow>,
    pub principal_k_orbits_even: bool,
    pub sampled_g_orbits_even: bool,
    pub sampled_k_orbits_even: bool,
    pub sampled_k_orbits_divisible_by_4: bool,
}

pub fn qct_report(data: &QctInput) -> QctReport {
    let mut table: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for s in &data.samples {
        *table.entry((s.k_orbit_dim, s.g_orbit_dim)).or_insert(0) += 1;
    }
    let parity_table = table
        .into_iter()
        .map(|((k_orbit_dim, g_orbit_dim), count)| ParityRow {
            k_orbit_dim,
            g_orbit_dim,
            count,
        })
        .collect();
    let degenerate = data.nilcone_dim == 0;
    QctReport {
        label: "EVIDENCE".into(),
        degenerate,
        components: data.principal_orbit_dims.len(),
        nilcone_dim: data.nilcone_dim,
        principal_orbit_dims: data.principal_orbit_dims.clone(),
        parity_table,
        g1_evidence: !degenerate
            && data.principal_orbit_dims.len() == 1
            && data.principal_orbit_dims[0] == data.nilcone_dim,
        principal_k_orbits_even: data.principal_orbit_dims.iter().all(|d| d % 2 == 0),
        sampled_g_orbits_even: data.samples.iter().all(|s| s.g_orbit_dim % 2 == 0),
        sampled_k_orbits_even: data.samples.iter().all(|s| s.k_orbit_dim % 2 == 0),
        sampled_k_orbits_divisible_by_4: data.samples.iter().all(|s| s.k_orbit_dim % 4 == 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{grade, parabolic};
    use crate::realform::{k_root_datum, standard_form_catalog, CartanDecomposition, RealForm};
    use crate::rootdata::{Root, TypeLabel};

    fn setup(name: &str) -> (CartanDecomposition, KRootDatum) {
        let f = standard_form_catalog(name).unwrap();
        let cd = f.decomposition();
        let kd = k_root_datum(&cd).unwrap();
        (cd, kd)
    }

    #[test]
    fn sym_weight_examples() {
        let a = Weight(vec![2]);
        assert_eq!(
            sym_weights(std::slice::from_ref(&a), 1, 0),
            BTreeMap::from([(Weight(vec![0]), 1)])
        );
        assert_eq!(
            sym_weights(std::slice::from_ref(&a), 1, 3),
            BTreeMap::from([(Weight(vec![6]), 1)])
        );
        let (b, c) = (Weight(vec![1, 0]), Weight(vec![0, 1]));
        let s = sym_weights(&[b, c], 2, 2);
        assert_eq!(s.len(), 3);
        assert!(s.values().all(|&m| m == 1));
    }

    #[test]
    fn su11_series() {
        let (cd, kd) = setup("su(1,1)");
        let gd = grade(&cd, &kd, &[2]).unwrap();
        let s = euler_series(&Weight(vec![0]), &gd, &kd, 5);
        for (k, chi) in s.per_degree.iter().enumerate() {
            assert_eq!(
                chi,
                &VirtualCharacter::irreducible(Weight(vec![-2 * k as i64]))
            );
        }
        assert_eq!(hilbert_series(&gd, &kd, 4).unwrap(), vec![1; 5]);
    }

    #[test]
    fn su21_degree_one() {
        let (cd, kd) = setup("su(2,1)");
        let gd = grade(&cd, &kd, &[2, 2]).unwrap();
        let rs = cd.root_system();
        let mut want = VirtualCharacter::new();
        want.add_term(&rs.root_weight(&Root(vec![1, 0])), 1);
        want.add_term(&rs.root_weight(&Root(vec![0, 1])), 1);
        assert_eq!(degree_character(&Weight::zero(2), &gd, &kd, 1), want);
        assert_eq!(
            degree_character(&Weight::zero(2), &gd, &kd, 0),
            VirtualCharacter::irreducible(Weight::zero(2))
        );
    }

    #[test]
    fn vanishing_gate() {
        let (cd, kd) = setup("su(2,1)");
        let gd = grade(&cd, &kd, &[2, 2]).unwrap();
        let pd = parabolic(&gd, &kd);
        let ok = verify_vanishing(&Weight::zero(2), &gd, &pd, &kd, 8).unwrap();
        assert_eq!(ok.verdict, Verdict::Pass);
        let bad = verify_vanishing(&Weight(vec![-3, 1]), &gd, &pd, &kd, 8).unwrap();
        assert_eq!(bad.verdict, Verdict::HypothesisUnmet);
    }

    #[test]
    fn compact_hilbert_is_a_point() {
        let f = RealForm::from_parts(TypeLabel::A, 2, vec![1, 1]).unwrap();
        let cd = f.decomposition();
        let kd = k_root_datum(&cd).unwrap();
        let gd = grade(&cd, &kd, &[2, 2]).unwrap();
        assert_eq!(hilbert_series(&gd, &kd, 3).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn blattner_pins() {
        let (cd, kd) = setup("su(1,1)");
        let gd = grade(&cd, &kd, &[2]).unwrap();
        let b = Blattner::new(&gd, &kd).unwrap();
        for k in 0..6 {
            assert_eq!(
                b.multiplicity(&Weight(vec![-2 * k]), &Weight(vec![0]))
                    .unwrap(),
                1
            );
        }
        let (cd, kd) = setup("su(2,1)");
        let gd = grade(&cd, &kd, &[2, 2]).unwrap();
        let b = Blattner::new(&gd, &kd).unwrap();
        let alpha1 = cd.root_system().root_weight(&Root(vec![1, 0]));
        assert_eq!(b.multiplicity(&alpha1, &Weight::zero(2)).unwrap(), 1);
        assert_eq!(
            b.multiplicity(&Weight::zero(2), &Weight::zero(2)).unwrap(),
            1
        );
        assert!(b
            .multiplicity(&Weight(vec![-3, 1]), &Weight::zero(2))
            .is_err());
    }

    #[test]
    fn components_of_su11() {
        let (cd, kd) = setup("su(1,1)");
        let a = grade(&cd, &kd, &[2]).unwrap();
        let b = grade(&cd, &kd, &[-2]).unwrap();
        let split = components_split(&[a.clone(), b], &kd, 4).unwrap();
        assert_eq!(split.total_dims, vec![2; 5]);
        let single = components_split(&[a], &kd, 4).unwrap();
        assert_eq!(single.total_dims, single.component_dims[0]);
        assert!(components_split(&[], &kd, 4).is_err());
    }

    #[test]
    fn qct_su11_and_compact() {
        let r = qct_report(&QctInput {
            nilcone_dim: 1,
            principal_orbit_dims: vec![1, 1],
            samples: vec![],
        });
        assert!(!r.g1_evidence);
        assert_eq!(r.components, 2);
        assert_eq!(r.label, "EVIDENCE");
        let r = qct_report(&QctInput::default());
        assert!(r.degenerate);
    }
}
