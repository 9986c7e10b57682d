//! Borel–Weil–Bott on K/B_K and additive Euler characteristics.
//!
//! Convention: a dominant λ gives H⁰ = V_λ. Otherwise, if λ + ρ_K is
//! regular and w·λ is dominant, the only nonzero group is H^{ℓ(w)} = V_{w·λ}.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exec;
use crate::rootdata::{RootSubsystem, VirtualCharacter, Weight};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub per_degree: BTreeMap<usize, VirtualCharacter>,
}

impl CohomologyResult {
    pub fn nonzero_degrees(&self) -> Vec<usize> {
        self.per_degree
            .iter()
            .filter(|(_, c)| !c.is_empty())
            .map(|(&i, _)| i)
            .collect()
    }

    pub fn total_dimension(&self, sub: &RootSubsystem) -> crate::Result<i64> {
        self.per_degree.values().map(|c| c.dimension(sub)).sum()
    }
}

/// The single Bott term of λ: `None` when λ + ρ is singular.
pub fn bott_term(lambda: &Weight, sub: &RootSubsystem) -> Option<(usize, Weight)> {
    let (w, dom, singular) = sub.make_dominant(lambda);
    (!singular).then(|| (w.length(), dom))
}

pub fn line_cohomology(lambda: &Weight, sub: &RootSubsystem) -> CohomologyResult {
    let mut out = CohomologyResult::default();
    if let Some((deg, w)) = bott_term(lambda, sub) {
        out.per_degree.insert(deg, VirtualCharacter::irreducible(w));
    }
    out
}

/// Σ over a weight multiset (with counts) of (−1)^{ℓ(w)} V_{w·λ}.
pub fn euler_of_counts(weights: &BTreeMap<Weight, i64>, sub: &RootSubsystem) -> VirtualCharacter {
    let items: Vec<(&Weight, &i64)> = weights.iter().collect();
    let terms = exec::map(&items, |(w, &m)| {
        bott_term(w, sub).map(|(deg, dom)| (dom, if deg % 2 == 0 { m } else { -m }))
    });
    let mut out = VirtualCharacter::new();
    for (dom, m) in terms.into_iter().flatten() {
        out.add_term(&dom, m);
    }
    out
}

pub fn euler_of_weights(weights: &[Weight], sub: &RootSubsystem) -> VirtualCharacter {
    let mut counts = BTreeMap::new();
    for w in weights {
        *counts.entry(w.clone()).or_insert(0) += 1;
    }
    euler_of_counts(&counts, sub)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::rootdata::{RootSystem, TypeLabel};

    fn a1() -> RootSubsystem {
        RootSubsystem::full(Arc::new(RootSystem::new(TypeLabel::A, 1).unwrap()))
    }

    #[test]
    fn p1_pins() {
        let k = a1();
        for n in 0..5 {
            let c = line_cohomology(&Weight(vec![n]), &k);
            assert_eq!(c.nonzero_degrees(), vec![0]);
            assert_eq!(c.total_dimension(&k).unwrap(), n + 1);
        }
        assert!(line_cohomology(&Weight(vec![-1]), &k)
            .nonzero_degrees()
            .is_empty());
        let c = line_cohomology(&Weight(vec![-3]), &k);
        assert_eq!(c.nonzero_degrees(), vec![1]);
        assert_eq!(
            c.per_degree[&1],
            VirtualCharacter::irreducible(Weight(vec![1]))
        );
        assert_eq!(c.total_dimension(&k).unwrap(), 2);
    }

    #[test]
    fn euler_examples() {
        let k = a1();
        assert_eq!(
            euler_of_weights(&[Weight(vec![0])], &k),
            VirtualCharacter::irreducible(Weight(vec![0]))
        );
        assert_eq!(
            euler_of_weights(&[Weight(vec![-2])], &k),
            VirtualCharacter::irreducible(Weight(vec![0])).negated()
        );
        assert!(euler_of_weights(&[Weight(vec![1]), Weight(vec![-3])], &k).is_empty());
    }
}
