//! Orbit dimensions, gradings and certificates computed from matrices.

use std::collections::BTreeMap;
use std::ops::Range;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{nonzero, restrict, rng, spectral_bound, ClassicalRealization};
use crate::error::{input, Error, Result};
use crate::exec;
use crate::linalg::{is_squarefree, minimal_polynomial, q, RationalMatrix, RowEchelon, Q};
use crate::rootdata::{Root, Weight};

fn rank_of(vectors: impl IntoIterator<Item = Vec<Q>>, width: usize) -> usize {
    let mut e = RowEchelon::new(width);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// ad-eigenspaces of h on span(basis[range]), as full coordinate vectors.
fn eigenspaces(
    real: &ClassicalRealization,
    h: &RationalMatrix,
    range: Range<usize>,
) -> Result<BTreeMap<i64, Vec<Vec<Q>>>> {
    let full = real.ad_matrix(h, range.clone());
    let outside = (0..real.dim())
        .filter(|i| !range.contains(i))
        .any(|i| (0..full.cols()).any(|c| !full[(i, c)].is_zero()));
    if outside {
        return input("ad H does not preserve the subspace; H must lie in k");
    }
    let m = RationalMatrix::from_fn(range.len(), range.len(), |r, c| {
        full[(range.start + r, c)].clone()
    });
    let bound = spectral_bound(&m);
    let mut out = BTreeMap::new();
    let mut total = 0;
    for i in -bound..=bound {
        let mut shifted = m.clone();
        for d in 0..range.len() {
            shifted[(d, d)] -= q(i);
        }
        let ker = shifted.nullspace();
        if ker.is_empty() {
            continue;
        }
        total += ker.len();
        let lifted = ker
            .into_iter()
            .map(|v| {
                let mut w = vec![Q::zero(); real.dim()];
                for (j, x) in v.into_iter().enumerate() {
                    w[range.start + j] = x;
                }
                w
            })
            .collect();
        out.insert(i, lifted);
    }
    if total != range.len() {
        return Err(Error::Input(format!(
            "ad H is not semisimple with integer eigenvalues: eigenspaces cover {total} of {} dimensions",
            range.len()
        )));
    }
    Ok(out)
}

/// degree ↦ (dim kᵢ, dim pᵢ) for H ∈ k.
pub fn ad_grading_dims(
    real: &ClassicalRealization,
    h: &RationalMatrix,
) -> Result<BTreeMap<i64, (usize, usize)>> {
    if !real.in_k(h) {
        return input("H is not in k");
    }
    let k = eigenspaces(real, h, real.k_range())?;
    let p = eigenspaces(real, h, real.p_range())?;
    let mut out: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    out.insert(0, (0, 0));
    for (i, v) in k {
        out.entry(i).or_default().0 = v.len();
    }
    for (i, v) in p {
        out.entry(i).or_default().1 = v.len();
    }
    Ok(out)
}

/// dim K·X = rank of ad X : k → p.
pub fn orbit_dimension(real: &ClassicalRealization, x: &RationalMatrix) -> Result<usize> {
    if !real.in_p(x) {
        return input("X is not in p");
    }
    Ok(real.ad_matrix(x, real.k_range()).rank())
}

/// dim G·X = rank of ad X on g.
pub fn g_orbit_dimension(real: &ClassicalRealization, x: &RationalMatrix) -> Result<usize> {
    real.coords(x)?;
    Ok(real.ad_matrix(x, 0..real.dim()).rank())
}

fn bracket_coords(real: &ClassicalRealization, v: &[Q], x: &RationalMatrix) -> Vec<Q> {
    real.coords_unchecked(&real.element(v).commutator(x))
}

/// [k₀, X] = p₂ and [q∩k, X] = p₂ ⊕ p^{≥3}, the tangent form of
/// L_K·X open in p₂ and Q_K·X = L_K·X + p^{≥3}.
pub fn dense_orbit_check(
    real: &ClassicalRealization,
    h: &RationalMatrix,
    x: &RationalMatrix,
) -> Result<bool> {
    if !real.in_p(x) {
        return input("X is not in p");
    }
    let k = eigenspaces(real, h, real.k_range())?;
    let p = eigenspaces(real, h, real.p_range())?;
    let dim = real.dim();
    let p2 = p.get(&2).cloned().unwrap_or_default();
    let mut span = RowEchelon::new(dim);
    for v in &p2 {
        span.insert(v.clone());
    }
    if x.is_zero() || !span.contains(&real.coords_unchecked(x)) {
        return Ok(false);
    }
    let p_high: usize = p.range(3..).map(|(_, v)| v.len()).sum();
    let k0 = k.get(&0).cloned().unwrap_or_default();
    let r0 = rank_of(k0.iter().map(|v| bracket_coords(real, v, x)), dim);
    let r_all = rank_of(
        k.range(0..)
            .flat_map(|(_, vs)| vs.iter())
            .map(|v| bracket_coords(real, v, x)),
        dim,
    );
    Ok(r0 == p2.len() && r_all == p2.len() + p_high)
}

/// Lie algebra forms of G^X ⊆ Q and K^X ⊆ Q_K: the centralizers g^X and
/// k^X lie in q = g_{≥0}.
pub fn centralizer_in_parabolic(
    real: &ClassicalRealization,
    h: &RationalMatrix,
    x: &RationalMatrix,
) -> Result<(bool, bool)> {
    if !real.in_p(x) {
        return input("X is not in p");
    }
    let dim = real.dim();
    let k = eigenspaces(real, h, real.k_range())?;
    let p = eigenspaces(real, h, real.p_range())?;
    let mut q_span = RowEchelon::new(dim);
    for v in k.range(0..).chain(p.range(0..)).flat_map(|(_, vs)| vs) {
        q_span.insert(v.clone());
    }
    let in_q = |vs: Vec<Vec<Q>>| vs.iter().all(|v| q_span.contains(v));
    let g_x = real.ad_matrix(x, 0..dim).nullspace();
    let k_range = real.k_range();
    let k_x: Vec<Vec<Q>> = real
        .ad_matrix(x, k_range.clone())
        .nullspace()
        .into_iter()
        .map(|c| {
            let mut full = vec![Q::zero(); dim];
            for (j, i) in k_range.clone().enumerate() {
                full[i] = c[j].clone();
            }
            full
        })
        .collect();
    Ok((in_q(g_x), in_q(k_x)))
}

/// dim 𝒩_θ = dim p − dim a, with dim a the least centralizer dimension in p
/// of sampled semisimple elements of p.
pub fn nilcone_dimension(real: &ClassicalRealization, seed: u64) -> Result<usize> {
    let pd = real.p_dim();
    if pd == 0 {
        return Ok(0);
    }
    const SAMPLES: usize = 6;
    const BUDGET: u64 = 60;
    let mut best: Option<usize> = None;
    let mut found = 0;
    for stream in 0..BUDGET {
        let mut r = rng(seed, 1_000_000 + stream);
        let coords: Vec<Q> = (0..real.dim())
            .map(|i| {
                if i < real.k_dim() {
                    Q::zero()
                } else {
                    q(r.random_range(-5..=5))
                }
            })
            .collect();
        let a = real.element(&coords);
        if !is_squarefree(&minimal_polynomial(&a)) {
            continue;
        }
        let z = pd - real.ad_matrix(&a, real.p_range()).rank();
        best = Some(best.map_or(z, |b| b.min(z)));
        found += 1;
        if found == SAMPLES {
            break;
        }
    }
    match best {
        Some(a) => Ok(pd - a),
        None => Err(Error::Oracle(format!(
            "no semisimple element of p among {BUDGET} samples (seed {seed})"
        ))),
    }
}

/// Weight of the Cartan on Λ^top(u∩p) ⊗ Λ^top(u∩k)*, u the positive part of ad H.
pub fn canonical_weight(real: &ClassicalRealization, h: &RationalMatrix) -> Result<Weight> {
    let k = eigenspaces(real, h, real.k_range())?;
    let p = eigenspaces(real, h, real.p_range())?;
    let u_p: Vec<Vec<Q>> = p.range(1..).flat_map(|(_, v)| v.iter().cloned()).collect();
    let u_k: Vec<Vec<Q>> = k.range(1..).flat_map(|(_, v)| v.iter().cloned()).collect();
    let mut out = Vec::with_capacity(real.rank());
    for j in 0..real.rank() {
        let ad = real.ad_matrix(real.coroot(j), 0..real.dim());
        let t = restrict(&ad, &u_p)?.trace() - restrict(&ad, &u_k)?.trace();
        let v = crate::linalg::to_i64(&t)
            .ok_or_else(|| Error::Consistency(format!("non-integral trace {t}")))?;
        out.push(v);
    }
    Ok(Weight(out))
}

/// Σ c_β E_β over a random set of p-roots positive for a random regular
/// functional; `full` takes all of them.
pub fn random_nilpotent(
    real: &ClassicalRealization,
    r: &mut ChaCha8Rng,
    full: bool,
) -> Result<RationalMatrix> {
    let roots = real.p_roots();
    if roots.is_empty() {
        return input(format!("p = 0 for {}", real.name));
    }
    let rank = real.rank();
    let positive: Vec<Root> = loop {
        let f: Vec<i64> = (0..rank).map(|_| nonzero(r, 7)).collect();
        let value = |b: &Root| b.0.iter().zip(&f).map(|(a, c)| a * c).sum::<i64>();
        if real
            .root_system()
            .positive_roots()
            .iter()
            .all(|b| value(b) != 0)
        {
            break roots.iter().filter(|b| value(b) > 0).cloned().collect();
        }
    };
    let chosen: Vec<&Root> = if full {
        positive.iter().collect()
    } else {
        loop {
            let s: Vec<&Root> = positive.iter().filter(|_| r.random_bool(0.5)).collect();
            if !s.is_empty() {
                break s;
            }
        }
    };
    let mut x = RationalMatrix::zeros(real.n, real.n);
    for b in chosen {
        let e = real.root_vector(b).expect("p root has a root vector");
        x = x.add(&e.scale(&q(nonzero(r, 3))));
    }
    Ok(x)
}

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalSearch {
    pub x: RationalMatrix,
    pub orbit_dim: usize,
    pub nilcone_dim: usize,
    pub trials: usize,
    pub seed: u64,
}

pub const SEARCH_TRIALS: usize = 100;

/// A nilpotent of maximal K-orbit dimension among seeded random trials,
/// certified against dim 𝒩_θ.
pub fn principal_nilpotent_search(
    real: &ClassicalRealization,
    seed: u64,
) -> Result<PrincipalSearch> {
    if real.p_dim() == 0 {
        return input(format!("p = 0 for {}", real.name));
    }
    let found = exec::map_range(SEARCH_TRIALS, |t| -> Result<(usize, RationalMatrix)> {
        let x = random_nilpotent(real, &mut rng(seed, t as u64), true)?;
        Ok((orbit_dimension(real, &x)?, x))
    });
    let mut best: Option<(usize, RationalMatrix)> = None;
    for f in found {
        let (d, x) = f?;
        if best.as_ref().is_none_or(|(b, _)| d > *b) {
            best = Some((d, x));
        }
    }
    let (orbit_dim, x) = best.expect("at least one trial");
    let nilcone_dim = nilcone_dimension(real, seed)?;
    if orbit_dim != nilcone_dim {
        return Err(Error::Oracle(format!(
            "largest orbit found has dimension {orbit_dim} but dim 𝒩_θ = {nilcone_dim} ({SEARCH_TRIALS} trials, seed {seed})"
        )));
    }
    Ok(PrincipalSearch {
        x,
        orbit_dim,
        nilcone_dim,
        trials: SEARCH_TRIALS,
        seed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingCertificate {
    #[serde(rename = "H")]
    pub h: Vec<i64>,
    pub x: RationalMatrix,
    pub jm_h_matches: bool,
    pub dense: bool,
    pub orbit_dim: usize,
    pub nilcone_dim: usize,
    pub confirmed: bool,
    pub seed: u64,
}

/// Confirms H as the neutral element of a principal orbit: a random X in
/// p₂ has H as its least-norm Jacobson–Morozov partner, L_K·X is dense in
/// p₂ and dim K·X = dim 𝒩_θ.
pub fn certify_principal_grading(
    real: &ClassicalRealization,
    h: &[i64],
    seed: u64,
) -> Result<GradingCertificate> {
    let hm = real.cartan_element(h)?;
    let p2: Vec<Root> = real
        .p_roots()
        .into_iter()
        .filter(|b| b.degree(h) == 2)
        .collect();
    if p2.is_empty() {
        return input(format!("p₂ = 0 for H = {h:?}"));
    }
    let nilcone_dim = nilcone_dimension(real, seed)?;
    let mut last = None;
    for attempt in 0..5u64 {
        let mut r = rng(seed, 2_000_000 + attempt);
        let mut x = RationalMatrix::zeros(real.n, real.n);
        for b in &p2 {
            x = x.add(
                &real
                    .root_vector(b)
                    .expect("root vector")
                    .scale(&q(nonzero(&mut r, 5))),
            );
        }
        let t = super::jm_triple(real, &x)?;
        let jm_h_matches = t.h == hm;
        let dense = dense_orbit_check(real, &hm, &x)?;
        let orbit_dim = orbit_dimension(real, &x)?;
        let confirmed = jm_h_matches && dense && orbit_dim == nilcone_dim;
        let cert = GradingCertificate {
            h: h.to_vec(),
            x,
            jm_h_matches,
            dense,
            orbit_dim,
            nilcone_dim,
            confirmed,
            seed,
        };
        if confirmed {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Ok(last.expect("five attempts"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::realize;

    #[test]
    fn su11_facts() {
        let r = realize("su(1,1)").unwrap();
        let x = r.root_vector(&Root(vec![1])).unwrap().clone();
        assert_eq!(orbit_dimension(&r, &x).unwrap(), 1);
        assert_eq!(
            orbit_dimension(&r, &RationalMatrix::zeros(2, 2)).unwrap(),
            0
        );
        assert_eq!(nilcone_dimension(&r, 1).unwrap(), 1);
        let h = r.cartan_element(&[2]).unwrap();
        assert_eq!(
            ad_grading_dims(&r, &h).unwrap(),
            BTreeMap::from([(-2, (0, 1)), (0, (1, 0)), (2, (0, 1))])
        );
        assert!(dense_orbit_check(&r, &h, &x).unwrap());
        assert!(!dense_orbit_check(&r, &h, &RationalMatrix::zeros(2, 2)).unwrap());
        assert_eq!(canonical_weight(&r, &h).unwrap(), Weight(vec![2]));
        let zero = RationalMatrix::zeros(2, 2);
        assert_eq!(
            ad_grading_dims(&r, &zero).unwrap(),
            BTreeMap::from([(0, (1, 2))])
        );
    }

    #[test]
    fn su21_facts() {
        let r = realize("su(2,1)").unwrap();
        assert_eq!(nilcone_dimension(&r, 3).unwrap(), 3);
        let s = principal_nilpotent_search(&r, 7).unwrap();
        assert_eq!(s.orbit_dim, 3);
        let c = certify_principal_grading(&r, &[2, 2], 7).unwrap();
        assert!(c.confirmed, "{c:?}");
        let h = r.cartan_element(&[2, 2]).unwrap();
        assert!(canonical_weight(&r, &h).unwrap().is_zero());
        let single = r.root_vector(&Root(vec![1, 0])).unwrap().clone();
        assert!(!dense_orbit_check(&r, &h, &single).unwrap());
        assert_eq!(
            centralizer_in_parabolic(&r, &h, &c.x).unwrap(),
            (true, true)
        );
        assert!(!centralizer_in_parabolic(&r, &h, &single).unwrap().0);
    }

    #[test]
    fn compact_form() {
        let r = realize("su(3)").unwrap();
        assert_eq!(nilcone_dimension(&r, 0).unwrap(), 0);
        assert!(principal_nilpotent_search(&r, 0).is_err());
    }
}
