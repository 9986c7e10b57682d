use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{cache, Root, RootSystem, Weight};
use crate::error::{input, Error, Result};
use crate::linalg::Q;

/// Element of the Weyl group of a subsystem, as a word in its simple
/// reflections: `w = s_{word[0]} ⋯ s_{word[k-1]}`, applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn inverse(&self) -> Self {
        WeylElement {
            word: self.word.iter().rev().copied().collect(),
        }
    }
}

/// A closed subsystem of a root system with positives inherited from the
/// ambient positive system.
#[derive(Clone, Debug)]
pub struct RootSubsystem {
    rs: Arc<RootSystem>,
    positive: Vec<usize>,
    simple: Vec<usize>,
    simple_weights: Vec<Weight>,
    two_rho: Weight,
    weyl: Arc<OnceLock<Arc<Vec<WeylElement>>>>,
}

impl RootSubsystem {
    /// `roots` are positive roots of the ambient system; the set must be
    /// closed under addition inside the root system.
    pub fn new(rs: Arc<RootSystem>, roots: &[Root]) -> Result<Self> {
        let mut positive = Vec::with_capacity(roots.len());
        for r in roots {
            match rs.find(&r.0) {
                Some((i, 1)) => positive.push(i),
                _ => return input(format!("{r} is not a positive root of {}", rs.name())),
            }
        }
        positive.sort_unstable();
        positive.dedup();
        let members: HashSet<Vec<i64>> = positive
            .iter()
            .map(|&i| rs.positive_roots()[i].0.clone())
            .collect();
        let signed: Vec<Root> = positive
            .iter()
            .flat_map(|&i| {
                let r = &rs.positive_roots()[i];
                [r.clone(), r.neg()]
            })
            .collect();
        for a in &signed {
            for b in &signed {
                let s = a.add(b);
                if s.0.iter().all(|&c| c == 0) || !rs.is_root(&s.0) {
                    continue;
                }
                let pos = if s.is_positive() { s } else { s.neg() };
                if !members.contains(&pos.0) {
                    return Err(Error::Consistency(format!(
                        "subsystem not closed: {a} + {b} is missing"
                    )));
                }
            }
        }
        let simple: Vec<usize> = (0..positive.len())
            .filter(|&a| {
                let ra = &rs.positive_roots()[positive[a]];
                !positive.iter().any(|&b| {
                    let rb = &rs.positive_roots()[b];
                    let diff: Vec<i64> = ra.0.iter().zip(&rb.0).map(|(x, y)| x - y).collect();
                    b != positive[a] && members.contains(&diff)
                })
            })
            .collect();
        let simple_weights = simple
            .iter()
            .map(|&a| rs.root_weight(&rs.positive_roots()[positive[a]]))
            .collect();
        let mut two_rho = Weight::zero(rs.rank());
        for &i in &positive {
            two_rho = &two_rho + &rs.root_weight(&rs.positive_roots()[i]);
        }
        Ok(RootSubsystem {
            rs,
            positive,
            simple,
            simple_weights,
            two_rho,
            weyl: Arc::new(OnceLock::new()),
        })
    }

    pub fn full(rs: Arc<RootSystem>) -> Self {
        let roots = rs.positive_roots().to_vec();
        Self::new(rs, &roots).expect("full system is closed")
    }

    pub fn ambient(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        self.positive
            .iter()
            .map(|&i| self.rs.positive_roots()[i].clone())
            .collect()
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        self.simple
            .iter()
            .map(|&a| self.rs.positive_roots()[self.positive[a]].clone())
            .collect()
    }

    pub fn simple_weights(&self) -> &[Weight] {
        &self.simple_weights
    }

    pub fn contains(&self, root: &Root) -> bool {
        match self.rs.find(&root.0) {
            Some((i, _)) => self.positive.binary_search(&i).is_ok(),
            None => false,
        }
    }

    /// 2ρ of the subsystem (always integral).
    pub fn two_rho(&self) -> &Weight {
        &self.two_rho
    }

    /// ρ of the subsystem, possibly half-integral.
    pub fn rho(&self) -> Vec<Q> {
        self.two_rho
            .0
            .iter()
            .map(|&x| crate::linalg::q_frac(x, 2))
            .collect()
    }

    /// ⟨λ, β_s∨⟩ for the `s`-th simple root of the subsystem.
    pub fn simple_pairing(&self, w: &Weight, s: usize) -> i64 {
        self.rs.pairing_index(w, self.positive[self.simple[s]])
    }

    pub fn simple_pairings(&self, w: &Weight) -> Vec<i64> {
        (0..self.simple.len())
            .map(|s| self.simple_pairing(w, s))
            .collect()
    }

    pub fn positive_pairings(&self, w: &Weight) -> Vec<i64> {
        self.positive
            .iter()
            .map(|&i| self.rs.pairing_index(w, i))
            .collect()
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        (0..self.simple.len()).all(|s| self.simple_pairing(w, s) >= 0)
    }

    pub fn reflect(&self, w: &Weight, s: usize) -> Weight {
        let p = self.simple_pairing(w, s);
        if p == 0 {
            return w.clone();
        }
        w - &self.simple_weights[s].scaled(p)
    }

    /// Linear action w(λ).
    pub fn act(&self, el: &WeylElement, w: &Weight) -> Weight {
        el.word
            .iter()
            .rev()
            .fold(w.clone(), |acc, &s| self.reflect(&acc, s))
    }

    /// Dot action w·λ = w(λ+ρ) − ρ.
    pub fn dot(&self, el: &WeylElement, w: &Weight) -> Weight {
        let v = &w.scaled(2) + &self.two_rho;
        let v = &self.act(el, &v) - &self.two_rho;
        v.div_exact(2).expect("dot action preserves the lattice")
    }

    /// Dominant W-conjugate of λ (linear action) and the element reaching it.
    pub fn dominant_conjugate(&self, w: &Weight) -> (WeylElement, Weight) {
        let mut v = w.clone();
        let mut applied = Vec::new();
        'outer: loop {
            for s in 0..self.simple.len() {
                if self.simple_pairing(&v, s) < 0 {
                    v = self.reflect(&v, s);
                    applied.push(s);
                    continue 'outer;
                }
            }
            break;
        }
        applied.reverse();
        (WeylElement { word: applied }, v)
    }

    /// Bott's regularity step: returns `(w, w·λ, singular)`, where `w` moves
    /// λ+ρ into the dominant chamber.
    pub fn make_dominant(&self, w: &Weight) -> (WeylElement, Weight, bool) {
        let shifted = &w.scaled(2) + &self.two_rho;
        let (el, v) = self.dominant_conjugate(&shifted);
        let singular = self.simple_pairings(&v).contains(&0);
        let dom = (&v - &self.two_rho)
            .div_exact(2)
            .expect("ρ-shift is integral");
        (el, dom, singular)
    }

    /// Contragredient highest weight: dominant conjugate of −μ.
    pub fn dual(&self, mu: &Weight) -> Weight {
        self.dominant_conjugate(&-mu).1
    }

    pub fn weyl_dimension(&self, w: &Weight) -> Result<u64> {
        if !self.is_dominant(w) {
            return input(format!("weight {w} is not dominant"));
        }
        let shifted = &w.scaled(2) + &self.two_rho;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for &i in &self.positive {
            num *= self.rs.pairing_index(&shifted, i);
            den *= self.rs.pairing_index(&self.two_rho, i);
        }
        let quot = num / den;
        quot.to_u64()
            .ok_or_else(|| Error::Input(format!("dimension of V_{w} overflows u64")))
    }

    /// Number of positive roots of the subsystem made negative by `el`.
    pub fn inversions(&self, el: &WeylElement) -> usize {
        let v = self.act(el, &self.two_rho);
        self.positive_pairings(&v)
            .iter()
            .filter(|&&p| p < 0)
            .count()
    }

    /// All elements of the Weyl group with reduced words, in order of
    /// length. Read from the on-disk cache when one is configured.
    pub fn weyl_group(&self) -> Result<Arc<Vec<WeylElement>>> {
        if let Some(g) = self.weyl.get() {
            return Ok(g.clone());
        }
        let key = cache::Key::new(&self.rs, &self.simple_roots());
        let elements = match cache::load(&key).filter(|w| self.validate_group(w)) {
            Some(words) => words,
            None => {
                let words = self.enumerate_group()?;
                cache::store(&key, &words);
                words
            }
        };
        let g = Arc::new(elements);
        Ok(self.weyl.get_or_init(|| g).clone())
    }

    fn enumerate_group(&self) -> Result<Vec<WeylElement>> {
        const CAP: usize = 1_000_000;
        let start = self.two_rho.clone();
        let mut seen: HashMap<Weight, usize> = HashMap::from([(start.clone(), 0)]);
        let mut out = vec![WeylElement::identity()];
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some((v, idx)) = queue.pop_front() {
            for s in 0..self.simple.len() {
                let u = self.reflect(&v, s);
                if seen.contains_key(&u) {
                    continue;
                }
                if out.len() >= CAP {
                    return input(format!("Weyl group larger than {CAP} elements"));
                }
                let mut word = vec![s];
                word.extend_from_slice(&out[idx].word);
                seen.insert(u.clone(), out.len());
                queue.push_back((u, out.len()));
                out.push(WeylElement { word });
            }
        }
        Ok(out)
    }

    fn validate_group(&self, elements: &[WeylElement]) -> bool {
        let n = self.simple.len();
        if elements.iter().any(|e| e.word.iter().any(|&s| s >= n)) {
            return false;
        }
        let images: HashSet<Weight> = elements
            .iter()
            .map(|e| self.act(e, &self.two_rho))
            .collect();
        images.len() == elements.len()
            && images.contains(&self.two_rho)
            && images
                .iter()
                .all(|v| (0..n).all(|s| images.contains(&self.reflect(v, s))))
            && elements.iter().all(|e| self.inversions(e) == e.length())
    }

    /// ⟨λ, ρ∨⟩-style height functional used to order weights: (λ, 2ρ).
    pub fn rho_height(&self, w: &Weight) -> Q {
        self.rs.inner(w, &self.two_rho)
    }

    pub(crate) fn positive_weights(&self) -> Vec<Weight> {
        self.positive
            .iter()
            .map(|&i| self.rs.root_weight(&self.rs.positive_roots()[i]))
            .collect()
    }

    pub(crate) fn ambient_height(&self, w: &Weight) -> Option<i64> {
        self.rs.weight_in_root_lattice(w).map(|c| c.iter().sum())
    }
}
