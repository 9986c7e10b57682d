use std::collections::HashMap;
use std::sync::Mutex;

use num_integer::Integer;

use super::{RootSystem, Weight};
use crate::error::{input, Result};
use crate::linalg::Q;

/// Kostant-type partition function for a finite multiset of weights.
///
/// A linear functional that is positive on every part makes the count
/// finite; the recursion is memoized per (part index, remainder).
#[derive(Debug)]
pub struct PartitionFunction {
    parts: Vec<Weight>,
    functional: Vec<i64>,
    memo: Mutex<HashMap<(usize, Weight), u64>>,
    graded_memo: Mutex<HashMap<(usize, Weight, usize), u64>>,
}

/// Integer multiple of `w ↦ Σ x_i c_i`, where x are root coordinates of `w`.
pub fn root_functional(rs: &RootSystem, c: &[i64]) -> Vec<i64> {
    let cv: Vec<Q> = c.iter().map(|&x| crate::linalg::q(x)).collect();
    let f = rs.cartan_inverse().mul_vec(&cv);
    let den = f
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    f.iter()
        .map(|x| {
            let v = x * Q::from_integer(den.clone());
            i64::try_from(v.to_integer()).expect("functional fits in i64")
        })
        .collect()
}

impl PartitionFunction {
    pub fn new(parts: Vec<Weight>, functional: Vec<i64>) -> Result<Self> {
        for p in &parts {
            if eval(&functional, p) <= 0 {
                return input(format!(
                    "part {p} is not positive for the chosen functional"
                ));
            }
        }
        Ok(PartitionFunction {
            parts,
            functional,
            memo: Mutex::default(),
            graded_memo: Mutex::default(),
        })
    }

    /// Uses the root height when every part has positive height.
    pub fn with_height(rs: &RootSystem, parts: Vec<Weight>) -> Result<Self> {
        let f = root_functional(rs, &vec![1; rs.rank()]);
        Self::new(parts, f)
    }

    pub fn parts(&self) -> &[Weight] {
        &self.parts
    }

    pub fn functional(&self) -> &[i64] {
        &self.functional
    }

    /// Number of ways to write μ as a sum of parts.
    pub fn count(&self, mu: &Weight) -> u64 {
        self.rec(0, mu)
    }

    /// Number of ways using exactly `k` parts.
    pub fn count_graded(&self, mu: &Weight, k: usize) -> u64 {
        self.rec_graded(0, mu, k)
    }

    fn rec(&self, i: usize, mu: &Weight) -> u64 {
        if eval(&self.functional, mu) < 0 {
            return 0;
        }
        if i == self.parts.len() {
            return mu.is_zero() as u64;
        }
        if let Some(&v) = self.memo.lock().expect("memo").get(&(i, mu.clone())) {
            return v;
        }
        let mut total = 0;
        let mut rest = mu.clone();
        while eval(&self.functional, &rest) >= 0 {
            total += self.rec(i + 1, &rest);
            rest = &rest - &self.parts[i];
        }
        self.memo
            .lock()
            .expect("memo")
            .insert((i, mu.clone()), total);
        total
    }

    fn rec_graded(&self, i: usize, mu: &Weight, k: usize) -> u64 {
        if eval(&self.functional, mu) < 0 {
            return 0;
        }
        if i == self.parts.len() {
            return (mu.is_zero() && k == 0) as u64;
        }
        if let Some(&v) = self
            .graded_memo
            .lock()
            .expect("memo")
            .get(&(i, mu.clone(), k))
        {
            return v;
        }
        let mut total = 0;
        let mut rest = mu.clone();
        for n in 0..=k {
            if eval(&self.functional, &rest) < 0 {
                break;
            }
            total += self.rec_graded(i + 1, &rest, k - n);
            rest = &rest - &self.parts[i];
        }
        self.graded_memo
            .lock()
            .expect("memo")
            .insert((i, mu.clone(), k), total);
        total
    }
}

fn eval(f: &[i64], w: &Weight) -> i64 {
    f.iter().zip(&w.0).map(|(a, b)| a * b).sum()
}

/// Number of ways to write μ as a nonnegative integer combination of the
/// multiset `parts`, which must have positive root height.
pub fn kostant_partition(rs: &RootSystem, mu: &Weight, parts: &[Weight]) -> Result<u64> {
    Ok(PartitionFunction::with_height(rs, parts.to_vec())?.count(mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Root, TypeLabel};

    #[test]
    fn spec_examples() {
        let a2 = RootSystem::new(TypeLabel::A, 2).unwrap();
        let roots: Vec<Weight> = a2
            .positive_roots()
            .iter()
            .map(|r| a2.root_weight(r))
            .collect();
        assert_eq!(kostant_partition(&a2, &Weight::zero(2), &roots).unwrap(), 1);
        let top = a2.root_weight(&Root(vec![1, 1]));
        assert_eq!(kostant_partition(&a2, &top, &roots).unwrap(), 2);
        let a = roots[0].clone();
        assert_eq!(
            kostant_partition(&a2, &a.scaled(3), std::slice::from_ref(&a)).unwrap(),
            1
        );
        assert!(kostant_partition(&a2, &a, &[Weight::zero(2)]).is_err());
    }

    #[test]
    fn graded_counts_sum_to_total() {
        let c2 = RootSystem::new(TypeLabel::C, 2).unwrap();
        let parts: Vec<Weight> = c2
            .positive_roots()
            .iter()
            .map(|r| c2.root_weight(r))
            .collect();
        let pf = PartitionFunction::with_height(&c2, parts).unwrap();
        let mu = c2.root_to_weight(&[4, 3]);
        let total: u64 = (0..=7).map(|k| pf.count_graded(&mu, k)).sum();
        assert_eq!(total, pf.count(&mu));
        assert!(total > 0);
    }
}
