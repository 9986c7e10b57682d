//! Exact matrix models of (g, θ) for the classical equal-rank families.
//!
//! Nothing here uses root combinatorics to build the model. Root labels of
//! the basis are read off from ad-eigenvalues of the coroot matrices and the
//! Cartan involution is conjugation by a diagonal sign matrix; both are then
//! compared against the combinatorial data, which is what makes this an
//! independent check. All arithmetic is exact.
//!
//! Models: A_n in sl(n+1), C_n in sp(2n) for the form `[[0, I], [−I, 0]]`,
//! D_n in so(2n) for the form `[[0, I], [I, 0]]`. The invariant form ψ is the
//! trace form of the defining representation.

mod hilbert;
mod orbit;
mod triple;

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::linalg::{q, to_i64, RationalMatrix, Q};
use crate::realform::{standard_form_catalog, RealForm};
use crate::rootdata::{Root, RootSystem, TypeLabel, Weight};

pub use hilbert::coordinate_ring_dims;
pub use orbit::{
    ad_grading_dims, canonical_weight, centralizer_in_parabolic, certify_principal_grading,
    dense_orbit_check, g_orbit_dimension, nilcone_dimension, orbit_dimension,
    principal_nilpotent_search, random_nilpotent, GradingCertificate, PrincipalSearch,
};
pub use triple::{identities, jm_triple, ks_normalize, SL2Triple};

/// Per-task random stream derived from a master seed.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub(crate) fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.random_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BasisLabel {
    /// Coroot of the i-th simple root.
    Coroot(usize),
    Root(Root),
}

#[derive(Clone, Debug)]
pub struct ClassicalRealization {
    pub name: String,
    pub form: RealForm,
    /// Size of the defining matrices.
    pub n: usize,
    /// θ = conjugation by diag(theta).
    pub theta: Vec<i64>,
    basis: Vec<RationalMatrix>,
    labels: Vec<BasisLabel>,
    k_dim: usize,
    positions: Vec<(usize, usize)>,
    coord_inverse: RationalMatrix,
}

pub fn realize(name: &str) -> Result<ClassicalRealization> {
    realize_form(&standard_form_catalog(name)?)
}

/// Weights of a root in the ε-basis together with its root vector.
struct RawRoot {
    e: Vec<i64>,
    matrix: RationalMatrix,
}

fn unit(n: usize, r: usize, c: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    m[(r, c)] = Q::one();
    m
}

fn combo(n: usize, terms: &[(usize, usize, i64)]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for &(r, c, v) in terms {
        m[(r, c)] += q(v);
    }
    m
}

fn eps_vec(rank: usize, pos: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; rank];
    for &(i, s) in pos {
        v[i] += s;
    }
    v
}

/// Root vectors and coroot matrices of the matrix model.
fn model(label: TypeLabel, r: usize) -> Option<(usize, Vec<RawRoot>, Vec<RationalMatrix>)> {
    match label {
        TypeLabel::A => {
            let n = r + 1;
            let mut roots = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let mut e = vec![0; n];
                        e[i] += 1;
                        e[j] -= 1;
                        roots.push(RawRoot {
                            e,
                            matrix: unit(n, i, j),
                        });
                    }
                }
            }
            let coroots = (0..r)
                .map(|i| combo(n, &[(i, i, 1), (i + 1, i + 1, -1)]))
                .collect();
            Some((n, roots, coroots))
        }
        TypeLabel::C | TypeLabel::D => {
            let c = label == TypeLabel::C;
            let n = 2 * r;
            let sym = if c { 1 } else { -1 };
            let mut roots = Vec::new();
            for i in 0..r {
                for j in 0..r {
                    if i != j {
                        let m = combo(n, &[(i, j, 1), (r + j, r + i, -1)]);
                        roots.push(RawRoot {
                            e: eps_vec(r, &[(i, 1), (j, -1)]),
                            matrix: m,
                        });
                    }
                }
                for j in i + 1..r {
                    let up = combo(n, &[(i, r + j, 1), (j, r + i, sym)]);
                    let down = combo(n, &[(r + j, i, 1), (r + i, j, sym)]);
                    roots.push(RawRoot {
                        e: eps_vec(r, &[(i, 1), (j, 1)]),
                        matrix: up,
                    });
                    roots.push(RawRoot {
                        e: eps_vec(r, &[(i, -1), (j, -1)]),
                        matrix: down,
                    });
                }
                if c {
                    roots.push(RawRoot {
                        e: eps_vec(r, &[(i, 2)]),
                        matrix: unit(n, i, r + i),
                    });
                    roots.push(RawRoot {
                        e: eps_vec(r, &[(i, -2)]),
                        matrix: unit(n, r + i, i),
                    });
                }
            }
            let h = |i: usize| combo(n, &[(i, i, 1), (r + i, r + i, -1)]);
            let mut coroots: Vec<RationalMatrix> = (0..r - 1).map(|i| &h(i) - &h(i + 1)).collect();
            coroots.push(if c { h(r - 1) } else { h(r - 2).add(&h(r - 1)) });
            Some((n, roots, coroots))
        }
        _ => None,
    }
}

/// Sign matrix realizing the involution with the given simple-root signs.
fn theta_signs(label: TypeLabel, eps: &[i64]) -> Vec<i64> {
    let r = eps.len();
    let mut d = vec![1];
    let chain = if label == TypeLabel::A { r } else { r - 1 };
    for &e in &eps[..chain] {
        let last = *d.last().unwrap();
        d.push(last * e);
    }
    if label == TypeLabel::A {
        return d;
    }
    let x = match label {
        TypeLabel::C => eps[r - 1],
        _ => eps[r - 1] * d[r - 2] * d[r - 1],
    };
    let mut s = d.clone();
    s.extend(d.iter().map(|v| v * x));
    s
}

pub fn realize_form(form: &RealForm) -> Result<ClassicalRealization> {
    let rs = &form.rs;
    let label = rs.label();
    let rank = rs.rank();
    let Some((n, raw, coroots)) = model(label, rank) else {
        return Err(Error::OutOfScope {
            name: form.name.clone(),
            reason: format!("no matrix model for type {label}"),
        });
    };
    let theta = theta_signs(label, &form.eps.epsilon);
    let mut entries: Vec<(BasisLabel, RationalMatrix, i64)> = Vec::new();
    for (i, h) in coroots.into_iter().enumerate() {
        entries.push((BasisLabel::Coroot(i), h, 1));
    }
    let real = ClassicalRealization {
        name: form.name.clone(),
        form: form.clone(),
        n,
        theta: theta.clone(),
        basis: Vec::new(),
        labels: Vec::new(),
        k_dim: 0,
        positions: Vec::new(),
        coord_inverse: RationalMatrix::zeros(0, 0),
    };
    let coroot_mats: Vec<RationalMatrix> = entries.iter().map(|e| e.1.clone()).collect();
    let mut seen = BTreeMap::new();
    for r in raw {
        let fw = coroot_mats
            .iter()
            .map(|h| eigenvalue(h, &r.matrix))
            .collect::<Result<Vec<i64>>>()?;
        let Some(coords) = rs.weight_in_root_lattice(&Weight(fw.clone())) else {
            return Err(Error::Consistency(format!(
                "matrix root {:?} has non-root weight {fw:?}",
                r.e
            )));
        };
        if !rs.is_root(&coords) {
            return Err(Error::Consistency(format!(
                "matrix root {:?} maps to non-root {coords:?}",
                r.e
            )));
        }
        let sign = theta_eigenvalue(&theta, &r.matrix)?;
        seen.insert(coords.clone(), ());
        entries.push((BasisLabel::Root(Root(coords)), r.matrix, sign));
    }
    if seen.len() != 2 * rs.positive_roots().len() {
        return Err(Error::Consistency(format!(
            "matrix model of {} has {} roots",
            rs.name(),
            seen.len()
        )));
    }
    entries.sort_by_key(|e| (-e.2, matches!(e.0, BasisLabel::Root(_)), label_key(&e.0)));
    let k_dim = entries.iter().filter(|e| e.2 == 1).count();
    let labels: Vec<BasisLabel> = entries.iter().map(|e| e.0.clone()).collect();
    let basis: Vec<RationalMatrix> = entries.into_iter().map(|e| e.1).collect();
    let (positions, coord_inverse) = coordinate_system(n, &basis)?;
    Ok(ClassicalRealization {
        basis,
        labels,
        k_dim,
        positions,
        coord_inverse,
        ..real
    })
}

fn label_key(l: &BasisLabel) -> (usize, Vec<i64>) {
    match l {
        BasisLabel::Coroot(i) => (*i, Vec::new()),
        BasisLabel::Root(r) => (0, r.0.iter().map(|c| -c).collect()),
    }
}

/// c with [h, e] = c·e, for diagonal h.
fn eigenvalue(h: &RationalMatrix, e: &RationalMatrix) -> Result<i64> {
    let b = h.commutator(e);
    let (r, c) = first_nonzero(e).ok_or_else(|| Error::Consistency("zero root vector".into()))?;
    let ratio = &b[(r, c)] / &e[(r, c)];
    if b != e.scale(&ratio) {
        return Err(Error::Consistency(
            "root vector is not an ad-eigenvector".into(),
        ));
    }
    to_i64(&ratio).ok_or_else(|| Error::Consistency(format!("non-integral eigenvalue {ratio}")))
}

fn theta_eigenvalue(theta: &[i64], e: &RationalMatrix) -> Result<i64> {
    let (r, c) = first_nonzero(e).ok_or_else(|| Error::Consistency("zero root vector".into()))?;
    let s = theta[r] * theta[c];
    let conj = conjugate_signs(theta, e);
    if conj != e.scale(&q(s)) {
        return Err(Error::Consistency(
            "root vector is not a θ-eigenvector".into(),
        ));
    }
    Ok(s)
}

fn first_nonzero(m: &RationalMatrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !m[(r, c)].is_zero())
}

fn conjugate_signs(s: &[i64], m: &RationalMatrix) -> RationalMatrix {
    RationalMatrix::from_fn(m.rows(), m.cols(), |r, c| &m[(r, c)] * q(s[r] * s[c]))
}

/// Entry positions whose values determine an element of g, and the inverse
/// of the basis restricted to them.
fn coordinate_system(
    n: usize,
    basis: &[RationalMatrix],
) -> Result<(Vec<(usize, usize)>, RationalMatrix)> {
    let flat = RationalMatrix::from_fn(basis.len(), n * n, |i, j| basis[i].entries()[j].clone());
    let (_, pivots) = flat.rref();
    if pivots.len() != basis.len() {
        return Err(Error::Consistency(
            "basis matrices are linearly dependent".into(),
        ));
    }
    let positions: Vec<(usize, usize)> = pivots.iter().map(|&p| (p / n, p % n)).collect();
    let square = RationalMatrix::from_fn(basis.len(), basis.len(), |r, c| {
        basis[c][positions[r]].clone()
    });
    let inv = square
        .inverse()
        .ok_or_else(|| Error::Consistency("coordinate matrix is singular".into()))?;
    Ok((positions, inv))
}

impl ClassicalRealization {
    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.form.rs
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn k_dim(&self) -> usize {
        self.k_dim
    }

    pub fn p_dim(&self) -> usize {
        self.dim() - self.k_dim
    }

    pub fn k_range(&self) -> Range<usize> {
        0..self.k_dim
    }

    pub fn p_range(&self) -> Range<usize> {
        self.k_dim..self.dim()
    }

    pub fn rank(&self) -> usize {
        self.root_system().rank()
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn coroot(&self, i: usize) -> &RationalMatrix {
        let idx = self
            .labels
            .iter()
            .position(|l| *l == BasisLabel::Coroot(i))
            .expect("coroot in basis");
        &self.basis[idx]
    }

    pub fn root_index(&self, root: &Root) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| matches!(l, BasisLabel::Root(r) if r == root))
    }

    pub fn root_vector(&self, root: &Root) -> Option<&RationalMatrix> {
        self.root_index(root).map(|i| &self.basis[i])
    }

    /// Roots whose root vectors lie in p.
    pub fn p_roots(&self) -> Vec<Root> {
        self.p_range()
            .filter_map(|i| match &self.labels[i] {
                BasisLabel::Root(r) => Some(r.clone()),
                BasisLabel::Coroot(_) => None,
            })
            .collect()
    }

    pub fn k_roots(&self) -> Vec<Root> {
        self.k_range()
            .filter_map(|i| match &self.labels[i] {
                BasisLabel::Root(r) => Some(r.clone()),
                BasisLabel::Coroot(_) => None,
            })
            .collect()
    }

    pub fn theta(&self, m: &RationalMatrix) -> RationalMatrix {
        conjugate_signs(&self.theta, m)
    }

    /// Coordinates in the basis, without checking membership in g.
    pub fn coords_unchecked(&self, m: &RationalMatrix) -> Vec<Q> {
        let v: Vec<Q> = self.positions.iter().map(|&p| m[p].clone()).collect();
        self.coord_inverse.mul_vec(&v)
    }

    pub fn coords(&self, m: &RationalMatrix) -> Result<Vec<Q>> {
        if m.rows() != self.n || m.cols() != self.n {
            return input(format!("expected a {0}x{0} matrix", self.n));
        }
        let c = self.coords_unchecked(m);
        if &self.element(&c) != m {
            return input(format!("matrix is not in the Lie algebra of {}", self.name));
        }
        Ok(c)
    }

    pub fn element(&self, coords: &[Q]) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    pub fn in_k(&self, m: &RationalMatrix) -> bool {
        self.coords(m)
            .is_ok_and(|c| c[self.k_dim..].iter().all(Zero::is_zero))
    }

    pub fn in_p(&self, m: &RationalMatrix) -> bool {
        self.coords(m)
            .is_ok_and(|c| c[..self.k_dim].iter().all(Zero::is_zero))
    }

    /// Columns: coordinates of [x, b_j] for the basis elements b_j, j ∈ `from`.
    pub fn ad_matrix(&self, x: &RationalMatrix, from: Range<usize>) -> RationalMatrix {
        let cols: Vec<Vec<Q>> = from
            .map(|j| self.coords_unchecked(&x.commutator(&self.basis[j])))
            .collect();
        RationalMatrix::from_columns(self.dim(), &cols)
    }

    /// The Cartan element on which each simple root α_i takes the value hᵢ.
    pub fn cartan_element(&self, h: &[i64]) -> Result<RationalMatrix> {
        let r = self.rank();
        if h.len() != r {
            return input(format!("H has length {}, expected {r}", h.len()));
        }
        let simple: Vec<&RationalMatrix> = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                self.root_vector(&Root(e)).expect("simple root vector")
            })
            .collect();
        let a = RationalMatrix::from_fn(r, r, |i, j| {
            q(eigenvalue(self.coroot(j), simple[i]).expect("coroot eigenvalue"))
        });
        let b: Vec<Q> = h.iter().map(|&v| q(v)).collect();
        let t = a
            .solve(&b)
            .ok_or_else(|| Error::Consistency("coroot matrix is singular".into()))?;
        let mut out = RationalMatrix::zeros(self.n, self.n);
        for (j, tj) in t.iter().enumerate() {
            out = out.add(&self.coroot(j).scale(tj));
        }
        Ok(out)
    }

    /// Trace form tr(ab) of the defining representation.
    pub fn trace_form(&self, a: &RationalMatrix, b: &RationalMatrix) -> Q {
        (a * b).trace()
    }

    /// Re-verifies the model: θ² = 1, θ preserves g with the recorded
    /// eigenvalues, brackets close, the k/p split matches the catalog and
    /// the trace form is nondegenerate.
    pub fn check_invariants(&self) -> Result<()> {
        let cd = self.form.decomposition();
        if self.k_dim != cd.k_dim() || self.p_dim() != cd.p_dim() {
            return Err(Error::Consistency(format!(
                "{}: matrix model has dim k = {}, dim p = {}; root data gives {}, {}",
                self.name,
                self.k_dim,
                self.p_dim(),
                cd.k_dim(),
                cd.p_dim()
            )));
        }
        for (i, b) in self.basis.iter().enumerate() {
            let t = self.theta(b);
            if self.theta(&t) != *b {
                return Err(Error::Consistency("θ is not an involution".into()));
            }
            let want = if i < self.k_dim { b.clone() } else { -b };
            if t != want {
                return Err(Error::Consistency(format!(
                    "basis element {:?} has the wrong θ-eigenvalue",
                    self.labels[i]
                )));
            }
            if let BasisLabel::Root(r) = &self.labels[i] {
                if cd.is_compact_root(r) != (i < self.k_dim) {
                    return Err(Error::Consistency(format!(
                        "root {r} compactness disagrees with the involution"
                    )));
                }
            }
        }
        for a in &self.basis {
            for b in &self.basis {
                self.coords(&a.commutator(b))
                    .map_err(|_| Error::Consistency("bracket leaves g".into()))?;
            }
        }
        let gram = RationalMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            self.trace_form(&self.basis[i], &self.basis[j])
        });
        if gram.rank() != self.dim() {
            return Err(Error::Consistency("trace form is degenerate".into()));
        }
        Ok(())
    }
}

/// Matrix of a linear map restricted to an invariant subspace spanned by
/// the columns of `v` (full coordinates).
pub(crate) fn restrict(a: &RationalMatrix, v: &[Vec<Q>]) -> Result<RationalMatrix> {
    if v.is_empty() {
        return Ok(RationalMatrix::zeros(0, 0));
    }
    let rows = v[0].len();
    let basis = RationalMatrix::from_columns(rows, v);
    let images: Vec<Vec<Q>> = v.iter().map(|x| a.mul_vec(x)).collect();
    let cols = images
        .iter()
        .map(|y| {
            basis
                .solve(y)
                .ok_or_else(|| Error::Consistency("subspace is not invariant".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_columns(v.len(), &cols))
}

/// Integer bound on the spectral radius (Gershgorin, column sums).
pub(crate) fn spectral_bound(a: &RationalMatrix) -> i64 {
    let mut best = Q::zero();
    for c in 0..a.cols() {
        let s: Q = (0..a.rows())
            .map(|r| a[(r, c)].abs())
            .fold(Q::zero(), |x, y| x + y);
        if s > best {
            best = s;
        }
    }
    to_i64(&best.ceil()).unwrap_or(i64::MAX / 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su11_and_su21_models() {
        let r = realize("su(1,1)").unwrap();
        assert_eq!((r.k_dim(), r.p_dim()), (1, 2));
        r.check_invariants().unwrap();
        let r = realize("su(2,1)").unwrap();
        assert_eq!((r.k_dim(), r.p_dim()), (4, 4));
        r.check_invariants().unwrap();
        assert_eq!(r.k_roots(), vec![Root(vec![1, 1]), Root(vec![-1, -1])]);
    }

    #[test]
    fn catalog_models_are_consistent() {
        for (name, k, p) in [
            ("sp(4,R)", 4, 6),
            ("su(2,2)", 7, 8),
            ("sp(1,1)", 6, 4),
            ("so*(6)", 9, 6),
            ("su(3)", 8, 0),
        ] {
            let r = realize(name).unwrap();
            r.check_invariants().unwrap();
            assert_eq!((r.k_dim(), r.p_dim()), (k, p), "{name}");
        }
    }

    #[test]
    fn unsupported_types() {
        let f = RealForm::from_parts(TypeLabel::G2, 2, vec![1, -1]).unwrap();
        assert!(matches!(realize_form(&f), Err(Error::OutOfScope { .. })));
    }

    #[test]
    fn coordinates_round_trip() {
        let r = realize("sp(4,R)").unwrap();
        let x: RationalMatrix = r
            .basis()
            .iter()
            .enumerate()
            .fold(RationalMatrix::zeros(4, 4), |acc, (i, b)| {
                acc.add(&b.scale(&q(i as i64 - 3)))
            });
        let c = r.coords(&x).unwrap();
        assert_eq!(r.element(&c), x);
        assert!(r.coords(&RationalMatrix::identity(4)).is_err());
    }

    #[test]
    fn cartan_element_values() {
        let r = realize("su(2,1)").unwrap();
        let h = r.cartan_element(&[2, 2]).unwrap();
        assert_eq!(h, RationalMatrix::diagonal(&[q(2), q(0), q(-2)]));
        let a1 = r.root_vector(&Root(vec![1, 0])).unwrap();
        assert_eq!(h.commutator(a1), a1.scale(&q(2)));
    }
}
