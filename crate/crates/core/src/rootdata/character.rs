use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{RootSubsystem, Weight};
use crate::error::{Error, Result};
use crate::linalg::Q;

/// Integer combination of irreducible characters, keyed by highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Term>", into = "Vec<Term>")]
pub struct VirtualCharacter {
    terms: BTreeMap<Weight, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Term {
    pub weight: Weight,
    pub mult: i64,
}

impl From<Vec<Term>> for VirtualCharacter {
    fn from(v: Vec<Term>) -> Self {
        let mut c = VirtualCharacter::new();
        for t in v {
            c.add_term(&t.weight, t.mult);
        }
        c
    }
}

impl From<VirtualCharacter> for Vec<Term> {
    fn from(c: VirtualCharacter) -> Self {
        c.terms
            .into_iter()
            .map(|(weight, mult)| Term { weight, mult })
            .collect()
    }
}

impl VirtualCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn irreducible(w: Weight) -> Self {
        VirtualCharacter {
            terms: BTreeMap::from([(w, 1)]),
        }
    }

    pub fn add_term(&mut self, w: &Weight, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(w);
        }
    }

    pub fn add_assign(&mut self, other: &VirtualCharacter) {
        for (w, &m) in &other.terms {
            self.add_term(w, m);
        }
    }

    pub fn sub_assign(&mut self, other: &VirtualCharacter) {
        for (w, &m) in &other.terms {
            self.add_term(w, -m);
        }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn negated(&self) -> Self {
        VirtualCharacter {
            terms: self.terms.iter().map(|(w, &m)| (w.clone(), -m)).collect(),
        }
    }

    pub fn negative_terms(&self) -> Vec<(Weight, i64)> {
        self.terms
            .iter()
            .filter(|(_, &m)| m < 0)
            .map(|(w, &m)| (w.clone(), m))
            .collect()
    }

    /// Signed total dimension.
    pub fn dimension(&self, sub: &RootSubsystem) -> Result<i64> {
        let mut d = 0i64;
        for (w, m) in self.iter() {
            d += m * sub.weyl_dimension(w)? as i64;
        }
        Ok(d)
    }

    /// Contragredient: V_μ ↦ V_{−w₀μ}.
    pub fn dual(&self, sub: &RootSubsystem) -> Self {
        let mut out = VirtualCharacter::new();
        for (w, m) in self.iter() {
            out.add_term(&sub.dual(w), m);
        }
        out
    }

    /// Expand into weights with multiplicity.
    pub fn weights(&self, sub: &RootSubsystem) -> Result<BTreeMap<Weight, i64>> {
        let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
        for (w, m) in self.iter() {
            for (mu, k) in weight_multiplicities(sub, w)? {
                *out.entry(mu).or_insert(0) += m * k as i64;
            }
        }
        out.retain(|_, m| *m != 0);
        Ok(out)
    }
}

/// Dominant weights of V_λ: every one is reachable from λ through dominant
/// weights by subtracting positive roots.
fn dominant_weights(sub: &RootSubsystem, lambda: &Weight) -> Vec<Weight> {
    let roots = sub.positive_weights();
    let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    let mut out = Vec::new();
    while let Some(mu) = queue.pop_front() {
        for b in &roots {
            let nu = &mu - b;
            if sub.is_dominant(&nu) && seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
        out.push(mu);
    }
    out
}

/// Multiplicities of the dominant weights of V_λ (Freudenthal).
pub(crate) fn dominant_multiplicities(
    sub: &RootSubsystem,
    lambda: &Weight,
) -> Result<BTreeMap<Weight, u64>> {
    if !sub.is_dominant(lambda) {
        return Err(Error::Input(format!("weight {lambda} is not dominant")));
    }
    let rs = sub.ambient();
    let mut dom = dominant_weights(sub, lambda);
    let depth = |mu: &Weight| {
        sub.ambient_height(&(lambda - mu))
            .expect("λ − μ lies in the root lattice")
    };
    dom.sort_by_key(|mu| (depth(mu), mu.clone()));
    let roots = sub.positive_weights();
    let lam_rho = &lambda.scaled(2) + sub.two_rho();
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    for mu in &dom {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        // (λ+ρ,λ+ρ) − (μ+ρ,μ+ρ) = (λ−μ, λ+μ+2ρ), here scaled by 2.
        let mu_rho = &mu.scaled(2) + sub.two_rho();
        let den =
            rs.inner(&(&lam_rho - &mu_rho), &(&lam_rho + &mu_rho)) / Q::from_integer(4.into());
        let mut num = Q::from_integer(0.into());
        for a in &roots {
            let mut k = 1;
            loop {
                let nu = mu + &a.scaled(k);
                let conj = sub.dominant_conjugate(&nu).1;
                let Some(&m) = mult.get(&conj) else { break };
                num += rs.inner(&nu, a) * Q::from_integer((2 * m as i64).into());
                k += 1;
            }
        }
        let m = num / den;
        if !m.is_integer() || m < Q::from_integer(0.into()) {
            return Err(Error::Consistency(format!(
                "Freudenthal produced multiplicity {m} at {mu}"
            )));
        }
        let m: u64 = m
            .to_integer()
            .try_into()
            .map_err(|_| Error::Consistency("multiplicity overflow".into()))?;
        mult.insert(mu.clone(), m);
    }
    Ok(dom
        .into_iter()
        .map(|mu| {
            let m = mult[&mu];
            (mu, m)
        })
        .filter(|(_, m)| *m > 0)
        .collect())
}

fn orbit(sub: &RootSubsystem, w: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        for s in 0..sub.simple_weights().len() {
            let u = sub.reflect(&v, s);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
        out.push(v);
    }
    out
}

/// All weights of V_λ with multiplicities.
pub fn weight_multiplicities(
    sub: &RootSubsystem,
    lambda: &Weight,
) -> Result<BTreeMap<Weight, u64>> {
    let mut out = BTreeMap::new();
    for (mu, m) in dominant_multiplicities(sub, lambda)? {
        for v in orbit(sub, &mu) {
            out.insert(v, m);
        }
    }
    Ok(out)
}

/// Decompose a W-invariant weight multiset (given as counts) into
/// irreducible characters by repeatedly peeling off the highest term.
pub fn decompose_counts(
    counts: &BTreeMap<Weight, i64>,
    sub: &RootSubsystem,
) -> Result<VirtualCharacter> {
    let mut rest: BTreeMap<Weight, i64> = counts
        .iter()
        .filter(|(_, &m)| m != 0)
        .map(|(w, &m)| (w.clone(), m))
        .collect();
    for (w, &m) in &rest {
        for s in 0..sub.simple_weights().len() {
            let r = sub.reflect(w, s);
            if rest.get(&r).copied().unwrap_or(0) != m {
                return Err(Error::Consistency(format!(
                    "weight multiset is not Weyl-invariant: {w} has multiplicity {m}, its reflection {r} does not"
                )));
            }
        }
    }
    let mut out = VirtualCharacter::new();
    while !rest.is_empty() {
        let top = rest
            .keys()
            .max_by(|a, b| {
                sub.rho_height(a)
                    .cmp(&sub.rho_height(b))
                    .then_with(|| a.cmp(b))
            })
            .expect("nonempty")
            .clone();
        if !sub.is_dominant(&top) {
            return Err(Error::Consistency(format!(
                "highest remaining weight {top} is not dominant"
            )));
        }
        let m = rest[&top];
        for (mu, k) in weight_multiplicities(sub, &top)? {
            let e = rest.entry(mu.clone()).or_insert(0);
            *e -= m * k as i64;
            if *e == 0 {
                rest.remove(&mu);
            }
        }
        out.add_term(&top, m);
    }
    Ok(out)
}

pub fn decompose_character(weights: &[Weight], sub: &RootSubsystem) -> Result<VirtualCharacter> {
    let mut counts = BTreeMap::new();
    for w in weights {
        *counts.entry(w.clone()).or_insert(0) += 1;
    }
    decompose_counts(&counts, sub)
}
