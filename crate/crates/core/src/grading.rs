//! Gradings g = ⊕ gᵢ defined by a grading element H, the parabolic
//! q = l ⊕ u and the weights attached to u∩p and u∩k.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::exec;
use crate::realform::{CartanDecomposition, KRootDatum};
use crate::rootdata::{Root, RootSystem, Weight};

/// `h[i] = αᵢ(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradingElement {
    pub h: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreePiece {
    pub k: Vec<Root>,
    pub p: Vec<Root>,
}

#[derive(Clone, Debug)]
pub struct GradedDecomposition {
    rs: Arc<RootSystem>,
    h: Vec<i64>,
    pieces: BTreeMap<i64, DegreePiece>,
}

impl GradedDecomposition {
    pub fn h(&self) -> &[i64] {
        &self.h
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn pieces(&self) -> &BTreeMap<i64, DegreePiece> {
        &self.pieces
    }

    pub fn piece(&self, i: i64) -> Option<&DegreePiece> {
        self.pieces.get(&i)
    }

    pub fn dim_k(&self, i: i64) -> usize {
        let cartan = if i == 0 { self.rs.rank() } else { 0 };
        cartan + self.piece(i).map_or(0, |p| p.k.len())
    }

    pub fn dim_p(&self, i: i64) -> usize {
        self.piece(i).map_or(0, |p| p.p.len())
    }

    pub fn dim_g(&self, i: i64) -> usize {
        self.dim_k(i) + self.dim_p(i)
    }

    /// degree ↦ (dim kᵢ, dim pᵢ), including degree 0.
    pub fn dims(&self) -> BTreeMap<i64, (usize, usize)> {
        let mut out: BTreeMap<i64, (usize, usize)> = self
            .pieces
            .keys()
            .map(|&i| (i, (self.dim_k(i), self.dim_p(i))))
            .collect();
        out.insert(0, (self.dim_k(0), self.dim_p(0)));
        out
    }

    fn collect(&self, pred: impl Fn(i64) -> bool, k: bool, p: bool) -> Vec<Root> {
        let mut out = Vec::new();
        for (&i, piece) in &self.pieces {
            if pred(i) {
                if k {
                    out.extend(piece.k.iter().cloned());
                }
                if p {
                    out.extend(piece.p.iter().cloned());
                }
            }
        }
        out
    }

    pub fn u_roots(&self) -> Vec<Root> {
        self.collect(|i| i > 0, true, true)
    }

    pub fn l_roots(&self) -> Vec<Root> {
        self.collect(|i| i == 0, true, true)
    }

    pub fn u_cap_p(&self) -> Vec<Root> {
        self.collect(|i| i > 0, false, true)
    }

    pub fn u_cap_k(&self) -> Vec<Root> {
        self.collect(|i| i > 0, true, false)
    }

    pub fn p2_roots(&self) -> Vec<Root> {
        self.collect(|i| i == 2, false, true)
    }

    pub fn g2plus(&self) -> Vec<Root> {
        self.collect(|i| i >= 2, true, true)
    }

    pub fn is_even(&self) -> bool {
        self.pieces.keys().all(|i| i % 2 == 0)
    }

    /// T-weights of u∩p.
    pub fn u_cap_p_weights(&self) -> Vec<Weight> {
        self.u_cap_p()
            .iter()
            .map(|r| self.rs.root_weight(r))
            .collect()
    }

    /// The graded-decomposition invariants: ±i symmetry of dims and bracket
    /// compatibility of degree and ε on root pairs.
    pub fn check_invariants(&self, cd: &CartanDecomposition) -> Result<()> {
        for &i in self.pieces.keys() {
            if self.dim_k(i) != self.dim_k(-i) || self.dim_p(i) != self.dim_p(-i) {
                return Err(Error::Consistency(format!(
                    "dims of degree {i} and {} differ",
                    -i
                )));
            }
        }
        let roots = self.rs.all_roots();
        let eps = cd.involution();
        for a in &roots {
            for b in &roots {
                let s = a.add(b);
                if !self.rs.is_root(&s.0) {
                    continue;
                }
                if s.degree(&self.h) != a.degree(&self.h) + b.degree(&self.h) {
                    return Err(Error::Consistency(format!(
                        "degree not additive on {a} + {b}"
                    )));
                }
                if eps.eps(&s) != eps.eps(a) * eps.eps(b) {
                    return Err(Error::Consistency(format!(
                        "ε not multiplicative on {a} + {b}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn check_h(cd: &CartanDecomposition, kd: &KRootDatum, h: &[i64]) -> Result<()> {
    if h.len() != cd.rank() {
        return input(format!("H has {} entries, expected {}", h.len(), cd.rank()));
    }
    if let Some(b) = kd.simple_roots().iter().find(|b| b.degree(h) < 0) {
        return input(format!(
            "H is not K-dominant: simple K-root {b} has degree {}",
            b.degree(h)
        ));
    }
    Ok(())
}

/// Assign each root its degree Σcᵢhᵢ; `require_even` rejects odd degrees.
pub fn grade_with(
    cd: &CartanDecomposition,
    kd: &KRootDatum,
    h: &[i64],
    require_even: bool,
) -> Result<GradedDecomposition> {
    check_h(cd, kd, h)?;
    let rs = cd.root_system().clone();
    let mut pieces: BTreeMap<i64, DegreePiece> = BTreeMap::new();
    for root in rs.all_roots() {
        let d = root.degree(h);
        if require_even && d % 2 != 0 {
            return Err(Error::OddGrading {
                root: root.0.clone(),
                degree: d,
            });
        }
        let piece = pieces.entry(d).or_default();
        if cd.is_compact_root(&root) {
            piece.k.push(root);
        } else {
            piece.p.push(root);
        }
    }
    Ok(GradedDecomposition {
        rs,
        h: h.to_vec(),
        pieces,
    })
}

/// Even grading by H; H must be dominant for K.
pub fn grade(cd: &CartanDecomposition, kd: &KRootDatum, h: &[i64]) -> Result<GradedDecomposition> {
    grade_with(cd, kd, h, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicData {
    pub q_roots: Vec<Root>,
    pub two_rho_u_p: Weight,
    pub two_rho_u_k: Weight,
    pub canonical_weight: Weight,
    pub simple_l_k_roots: Vec<Root>,
}

impl ParabolicData {
    /// q ⊇ b_K, and q ⊇ b when H is dominant for the whole system.
    pub fn contains_positive(&self, roots: &[Root]) -> bool {
        roots.iter().all(|r| self.q_roots.contains(r))
    }
}

fn weight_sum(rs: &RootSystem, roots: &[Root]) -> Weight {
    roots
        .iter()
        .fold(Weight::zero(rs.rank()), |acc, r| &acc + &rs.root_weight(r))
}

pub fn parabolic(gd: &GradedDecomposition, kd: &KRootDatum) -> ParabolicData {
    let rs = &gd.rs;
    let mut q_roots = gd.l_roots();
    q_roots.extend(gd.u_roots());
    let two_rho_u_p = weight_sum(rs, &gd.u_cap_p());
    let two_rho_u_k = weight_sum(rs, &gd.u_cap_k());
    let canonical_weight = &two_rho_u_p - &two_rho_u_k;
    let simple_l_k_roots = kd
        .simple_roots()
        .into_iter()
        .filter(|b| b.degree(&gd.h) == 0)
        .collect();
    ParabolicData {
        q_roots,
        two_rho_u_p,
        two_rho_u_k,
        canonical_weight,
        simple_l_k_roots,
    }
}

/// 2ρ(u∩p) − 2ρ(u∩k) for any H, even or not.
pub fn conormal_canonical_weight(
    cd: &CartanDecomposition,
    kd: &KRootDatum,
    h: &[i64],
) -> Result<Weight> {
    let gd = grade_with(cd, kd, h, false)?;
    Ok(parabolic(&gd, kd).canonical_weight)
}

/// λ ∈ 𝕎(Q∩K): K-dominant and orthogonal to the coroots of l∩k.
pub fn is_qk_dominant(lambda: &Weight, pd: &ParabolicData, kd: &KRootDatum) -> bool {
    let rs = kd.subsystem().ambient();
    kd.is_dominant(lambda)
        && pd
            .simple_l_k_roots
            .iter()
            .all(|b| rs.pairing(lambda, b).is_ok_and(|p| p == 0))
}

fn boxes(rank: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn even_with_p2(cd: &CartanDecomposition, h: &[i64]) -> bool {
    let rs = cd.root_system();
    rs.positive_roots().iter().all(|r| r.degree(h) % 2 == 0)
        && cd.p_positive().iter().any(|r| r.degree(h).abs() == 2)
}

/// Dominant H with hᵢ ∈ {0, …, max_h}, all degrees even and p₂ ≠ 0, in
/// lexicographic order. Candidates still need the oracle to be confirmed.
pub fn search_even_gradings(cd: &CartanDecomposition, max_h: i64) -> Vec<GradingElement> {
    let cands = boxes(cd.rank(), 0, max_h);
    let keep = exec::map(&cands, |h| even_with_p2(cd, h));
    cands
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(h, _)| GradingElement { h })
        .collect()
}

/// K-dominant even H in [−bound, bound]^rank with p₂ ≠ 0 and dim u equal to
/// `u_dim`: the candidates for neutral elements of principal orbits.
pub fn principal_candidates(
    cd: &CartanDecomposition,
    kd: &KRootDatum,
    u_dim: usize,
    bound: i64,
) -> Vec<GradingElement> {
    let cands = boxes(cd.rank(), -bound, bound);
    let simple_k = kd.simple_roots();
    let rs = cd.root_system();
    let keep = exec::map(&cands, |h| {
        simple_k.iter().all(|b| b.degree(h) >= 0)
            && even_with_p2(cd, h)
            && rs.all_roots().iter().filter(|r| r.degree(h) > 0).count() == u_dim
    });
    cands
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(h, _)| GradingElement { h })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realform::{k_root_datum, standard_form_catalog, RealForm};
    use crate::rootdata::TypeLabel;

    fn setup(name: &str) -> (CartanDecomposition, KRootDatum) {
        let f = standard_form_catalog(name).unwrap();
        let cd = f.decomposition();
        let kd = k_root_datum(&cd).unwrap();
        (cd, kd)
    }

    #[test]
    fn su11_grading() {
        let (cd, kd) = setup("su(1,1)");
        let gd = grade(&cd, &kd, &[2]).unwrap();
        assert_eq!(gd.piece(2).unwrap().p, vec![Root(vec![1])]);
        assert_eq!(gd.piece(-2).unwrap().p, vec![Root(vec![-1])]);
        assert_eq!(gd.dim_k(0), 1);
        assert!(gd.u_cap_k().is_empty());
        let pd = parabolic(&gd, &kd);
        assert_eq!(pd.two_rho_u_p, Weight(vec![2]));
        assert_eq!(pd.canonical_weight, Weight(vec![2]));
    }

    #[test]
    fn su21_grading() {
        let (cd, kd) = setup("su(2,1)");
        let gd = grade(&cd, &kd, &[2, 2]).unwrap();
        let p2 = &gd.piece(2).unwrap().p;
        assert_eq!(p2, &vec![Root(vec![1, 0]), Root(vec![0, 1])]);
        assert_eq!(gd.piece(4).unwrap().k, vec![Root(vec![1, 1])]);
        let pd = parabolic(&gd, &kd);
        assert_eq!(pd.two_rho_u_p, Weight(vec![1, 1]));
        assert_eq!(pd.two_rho_u_k, Weight(vec![1, 1]));
        assert!(pd.canonical_weight.is_zero());
        assert!(is_qk_dominant(&Weight::zero(2), &pd, &kd));
        let alpha1 = cd.root_system().root_weight(&Root(vec![1, 0]));
        assert!(is_qk_dominant(&alpha1, &pd, &kd));
        gd.check_invariants(&cd).unwrap();
    }

    #[test]
    fn zero_grading_and_compact() {
        let f = RealForm::from_parts(TypeLabel::A, 2, vec![1, 1]).unwrap();
        let cd = f.decomposition();
        let kd = k_root_datum(&cd).unwrap();
        let gd = grade(&cd, &kd, &[0, 0]).unwrap();
        assert!(gd.u_roots().is_empty());
        assert_eq!(gd.dim_g(0), 8);
        let gd = grade(&cd, &kd, &[2, 0]).unwrap();
        let pd = parabolic(&gd, &kd);
        assert!(gd.u_cap_p().is_empty());
        assert_eq!(pd.canonical_weight, -&pd.two_rho_u_k);
        assert!(!is_qk_dominant(&Weight(vec![0, 1]), &pd, &kd));
        assert!(search_even_gradings(&cd, 2).is_empty());
    }

    #[test]
    fn odd_and_non_dominant_rejected() {
        let (cd, kd) = setup("su(2,1)");
        assert!(matches!(
            grade(&cd, &kd, &[1, 1]),
            Err(Error::OddGrading { .. })
        ));
        assert!(grade_with(&cd, &kd, &[1, 1], false).is_ok());
        assert!(matches!(grade(&cd, &kd, &[-2, -2]), Err(Error::Input(_))));
    }

    #[test]
    fn search_examples() {
        let (cd, _) = setup("su(1,1)");
        assert_eq!(
            search_even_gradings(&cd, 2),
            vec![GradingElement { h: vec![2] }]
        );
        let (cd, _) = setup("su(2,1)");
        assert!(search_even_gradings(&cd, 2).contains(&GradingElement { h: vec![2, 2] }));
    }

    #[test]
    fn principal_candidates_contain_known_gradings() {
        let (cd, kd) = setup("su(2,2)");
        let c = principal_candidates(&cd, &kd, 6, 6);
        assert!(c.contains(&GradingElement { h: vec![4, -6, 4] }));
        assert!(c.contains(&GradingElement { h: vec![4, -2, 4] }));
        let (cd, kd) = setup("sp(4,R)");
        let c = principal_candidates(&cd, &kd, 4, 6);
        assert!(c.contains(&GradingElement { h: vec![4, -2] }));
        assert!(c.contains(&GradingElement { h: vec![4, -6] }));
    }
}
