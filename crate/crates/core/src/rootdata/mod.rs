//! Root systems of types A, B, C, D and G2, weights in fundamental-weight
//! coordinates, Weyl groups of closed subsystems and character primitives.
//!
//! Simple roots follow Bourbaki:
//!
//! | type | simple roots                                   |
//! |------|------------------------------------------------|
//! | A_n  | e_i − e_{i+1}                                  |
//! | B_n  | e_i − e_{i+1} (i < n), e_n                     |
//! | C_n  | e_i − e_{i+1} (i < n), 2e_n                    |
//! | D_n  | e_i − e_{i+1} (i < n), e_{n−1} + e_n           |
//! | G2   | α₁ short, α₂ long                              |
//!
//! `cartan[i][j] = ⟨α_i, α_j∨⟩`, so row `i` is α_i in fundamental weights.

mod cache;
mod character;
mod partition;
mod subsystem;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::linalg::{q, to_i64, RationalMatrix, Q};

pub use cache::{cache_dir, set_cache_dir, CACHE_ENV};
pub use character::{
    decompose_character, decompose_counts, weight_multiplicities, VirtualCharacter,
};
pub use partition::{kostant_partition, root_functional, PartitionFunction};
pub use subsystem::{RootSubsystem, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    G2,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "G2" | "G" => Ok(TypeLabel::G2),
            other => input(format!("unknown root system type `{other}`")),
        }
    }
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Σ cᵢhᵢ.
    pub fn degree(&self, h: &[i64]) -> i64 {
        self.0.iter().zip(h).map(|(c, x)| c * x).sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, s: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * s).collect())
    }

    /// Exact division by `d`; `None` when some coordinate is not divisible.
    pub fn div_exact(&self, d: i64) -> Option<Weight> {
        self.0
            .iter()
            .map(|x| (x % d == 0).then_some(x / d))
            .collect::<Option<Vec<_>>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scaled(-1)
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scaled(self)
    }
}

/// JSON form `{"basis": "fw" | "root", "coords": [...]}`; root-basis
/// coordinates may be rationals written as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightJson {
    pub basis: Basis,
    pub coords: Vec<serde_json::Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Fw,
    Root,
}

pub fn parse_rational(v: &serde_json::Value) -> Result<Q> {
    match v {
        serde_json::Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(q(i)),
            None => input(format!(
                "non-integer number {n}; write rationals as \"p/q\""
            )),
        },
        serde_json::Value::String(s) => parse_rational_str(s),
        other => input(format!("expected a number or \"p/q\", found {other}")),
    }
}

pub fn parse_rational_str(s: &str) -> Result<Q> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => n
            .trim()
            .parse::<i64>()
            .ok()
            .zip(d.trim().parse::<i64>().ok()),
        None => s.parse::<i64>().ok().map(|n| (n, 1)),
    };
    match parsed {
        Some((_, 0)) => input(format!("zero denominator in `{s}`")),
        Some((n, d)) => Ok(crate::linalg::q_frac(n, d)),
        None => input(format!("cannot parse `{s}` as a rational")),
    }
}

fn rational_json(x: &Q) -> serde_json::Value {
    match to_i64(x) {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::from(x.to_string()),
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    // α∨ = Σ d_j α_j∨ for each positive root
    coroots: Vec<Vec<i64>>,
    root_weights: Vec<Weight>,
    cartan_inv: RationalMatrix,
}

fn gram_matrix(label: TypeLabel, n: usize) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0i64; n]; n];
    match label {
        TypeLabel::A | TypeLabel::D => {
            for i in 0..n {
                b[i][i] = 2;
                if i + 1 < n {
                    b[i][i + 1] = -1;
                    b[i + 1][i] = -1;
                }
            }
            if label == TypeLabel::D {
                b[n - 2][n - 1] = 0;
                b[n - 1][n - 2] = 0;
                b[n - 3][n - 1] = -1;
                b[n - 1][n - 3] = -1;
            }
        }
        TypeLabel::B => {
            for i in 0..n {
                b[i][i] = if i + 1 < n { 4 } else { 2 };
                if i + 1 < n {
                    b[i][i + 1] = -2;
                    b[i + 1][i] = -2;
                }
            }
        }
        TypeLabel::C => {
            for i in 0..n {
                b[i][i] = if i + 1 < n { 2 } else { 4 };
                if i + 1 < n {
                    let v = if i + 2 == n { -2 } else { -1 };
                    b[i][i + 1] = v;
                    b[i + 1][i] = v;
                }
            }
        }
        TypeLabel::G2 => {
            b = vec![vec![2, -3], vec![-3, 6]];
        }
    }
    b
}

impl RootSystem {
    pub fn new(label: TypeLabel, rank: usize) -> Result<Self> {
        let ok = match label {
            TypeLabel::A => rank >= 1,
            TypeLabel::B | TypeLabel::C => rank >= 2,
            TypeLabel::D => rank >= 3,
            TypeLabel::G2 => rank == 2,
        };
        if !ok {
            return input(format!("invalid root system {label}{rank}"));
        }
        let gram = gram_matrix(label, rank);
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let cartan_inv = RationalMatrix::from_i64(&cartan)
            .inverse()
            .expect("Cartan matrix is invertible");

        let mut positive: Vec<Root> = (0..rank)
            .map(|i| {
                let mut c = vec![0; rank];
                c[i] = 1;
                Root(c)
            })
            .collect();
        let mut index: HashMap<Vec<i64>, usize> = positive
            .iter()
            .enumerate()
            .map(|(i, r)| (r.0.clone(), i))
            .collect();
        let mut level_start = 0;
        loop {
            let level_end = positive.len();
            for a in level_start..level_end {
                for i in 0..rank {
                    let alpha = positive[a].clone();
                    if alpha
                        .0
                        .iter()
                        .enumerate()
                        .all(|(j, &c)| c == (j == i) as i64)
                    {
                        continue;
                    }
                    let pair: i64 = (0..rank).map(|j| alpha.0[j] * cartan[j][i]).sum();
                    let mut p = 0;
                    let mut down = alpha.0.clone();
                    loop {
                        down[i] -= 1;
                        if index.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - pair > 0 {
                        let mut up = alpha.0.clone();
                        up[i] += 1;
                        if !index.contains_key(&up) {
                            index.insert(up.clone(), positive.len());
                            positive.push(Root(up));
                        }
                    }
                }
            }
            if positive.len() == level_end {
                break;
            }
            level_start = level_end;
        }

        let coroots = positive
            .iter()
            .map(|r| {
                let norm: i64 = (0..rank)
                    .map(|i| (0..rank).map(|j| r.0[i] * gram[i][j] * r.0[j]).sum::<i64>())
                    .sum();
                (0..rank).map(|j| r.0[j] * gram[j][j] / norm).collect()
            })
            .collect();
        let root_weights = positive
            .iter()
            .map(|r| {
                Weight(
                    (0..rank)
                        .map(|j| (0..rank).map(|i| r.0[i] * cartan[i][j]).sum())
                        .collect(),
                )
            })
            .collect();

        Ok(RootSystem {
            label,
            rank,
            cartan,
            gram,
            positive,
            index,
            coroots,
            root_weights,
            cartan_inv,
        })
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram_matrix(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn cartan_inverse(&self) -> &RationalMatrix {
        &self.cartan_inv
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.positive[..self.rank]
    }

    /// Positive roots followed by their negatives.
    pub fn all_roots(&self) -> Vec<Root> {
        self.positive
            .iter()
            .cloned()
            .chain(self.positive.iter().map(Root::neg))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive.len()
    }

    pub fn name(&self) -> String {
        match self.label {
            TypeLabel::G2 => "G2".into(),
            l => format!("{l}{}", self.rank),
        }
    }

    /// Index of ±α among the positive roots and the sign.
    pub fn find(&self, coords: &[i64]) -> Option<(usize, i64)> {
        if let Some(&i) = self.index.get(coords) {
            return Some((i, 1));
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.index.get(&neg).map(|&i| (i, -1))
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        coords.len() == self.rank && self.find(coords).is_some()
    }

    pub fn highest_root(&self) -> &Root {
        self.positive
            .iter()
            .max_by_key(|r| r.height())
            .expect("nonempty")
    }

    pub fn root_weight(&self, root: &Root) -> Weight {
        match self.find(&root.0) {
            Some((i, s)) => self.root_weights[i].scaled(s),
            None => self.root_to_weight(&root.0),
        }
    }

    /// Fundamental-weight coordinates of an integer combination of simple roots.
    pub fn root_to_weight(&self, coords: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|j| (0..self.rank).map(|i| coords[i] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    /// Root-basis coordinates of a weight (exact rationals).
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Q> {
        let v: Vec<Q> = w.0.iter().map(|&x| q(x)).collect();
        self.cartan_inv.transpose().mul_vec(&v)
    }

    /// Inverse of [`Self::weight_to_root_coords`]; fails on non-integral weights.
    pub fn root_coords_to_weight(&self, coords: &[Q]) -> Result<Weight> {
        if coords.len() != self.rank {
            return input(format!(
                "expected {} coordinates, got {}",
                self.rank,
                coords.len()
            ));
        }
        let fw = RationalMatrix::from_i64(&self.cartan)
            .transpose()
            .mul_vec(coords);
        fw.iter()
            .map(|x| {
                to_i64(x).ok_or_else(|| {
                    Error::Input(format!(
                        "root coordinates {coords:?} are not an integral weight"
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }

    /// Root coordinates when the weight lies in the root lattice.
    pub fn weight_in_root_lattice(&self, w: &Weight) -> Option<Vec<i64>> {
        self.weight_to_root_coords(w).iter().map(to_i64).collect()
    }

    /// ⟨λ, α∨⟩ for a root α.
    pub fn pairing(&self, w: &Weight, root: &Root) -> Result<i64> {
        if w.rank() != self.rank {
            return input(format!("weight {w} has wrong rank for {}", self.name()));
        }
        match self.find(&root.0) {
            Some((i, s)) => Ok(s * self.pairing_index(w, i)),
            None => input(format!("{root} is not a root of {}", self.name())),
        }
    }

    pub(crate) fn pairing_index(&self, w: &Weight, i: usize) -> i64 {
        self.coroots[i].iter().zip(&w.0).map(|(d, x)| d * x).sum()
    }

    /// The invariant form normalized so that short roots have norm 2.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let x = self.weight_to_root_coords(a);
        let mut acc = Q::zero();
        for (j, xj) in x.iter().enumerate() {
            if !xj.is_zero() {
                acc += xj * q(b.0[j] * self.gram[j][j]) / q(2);
            }
        }
        acc
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Parse a weight from its JSON encoding.
    pub fn weight_from_json(&self, j: &WeightJson) -> Result<Weight> {
        let coords: Vec<Q> = j.coords.iter().map(parse_rational).collect::<Result<_>>()?;
        if coords.len() != self.rank {
            return input(format!(
                "expected {} coordinates, got {}",
                self.rank,
                coords.len()
            ));
        }
        match j.basis {
            Basis::Fw => coords
                .iter()
                .map(|x| {
                    to_i64(x).ok_or_else(|| {
                        Error::Input("fundamental-weight coordinates must be integers".into())
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map(Weight),
            Basis::Root => self.root_coords_to_weight(&coords),
        }
    }

    pub fn weight_to_json(&self, w: &Weight, basis: Basis) -> WeightJson {
        let coords = match basis {
            Basis::Fw => w.0.iter().map(|&x| serde_json::Value::from(x)).collect(),
            Basis::Root => self
                .weight_to_root_coords(w)
                .iter()
                .map(rational_json)
                .collect(),
        };
        WeightJson { basis, coords }
    }
}

pub fn build_root_system(label: TypeLabel, rank: usize) -> Result<RootSystem> {
    RootSystem::new(label, rank)
}
