//! Hilbert function of the closure of K·X by evaluation rank.
//!
//! dim ℂ[closure]_k is the rank of the matrix of degree-k monomials on p
//! evaluated at points Ad(g)X, with g a product of unipotent elements
//! exp(tE_β) for compact roots β and a rational torus element.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use super::{nonzero, rng, ClassicalRealization};
use crate::error::{input, Error, Result};
use crate::exec;
use crate::linalg::{q, q_frac, RationalMatrix, RowEchelon, Q};
use crate::rootdata::{Root, TypeLabel};

const BATCH: usize = 8;

/// Exponents of the degree-k monomials in m variables, graded-lex order.
fn monomials(m: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if m == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, k as u32, &mut vec![0; m], &mut out);
    out
}

fn unipotent(e: &RationalMatrix, t: &Q) -> RationalMatrix {
    let n = e.rows();
    let mut out = RationalMatrix::identity(n);
    let mut term = RationalMatrix::identity(n);
    for j in 1..=n {
        term = (&term * e).scale(&(t / q(j as i64)));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

/// p-coordinates of Ad(g)X for the sample with the given index, scaled to
/// integers (scaling a point multiplies each degree-k row by a constant).
fn sample(real: &ClassicalRealization, x: &RationalMatrix, seed: u64, index: u64) -> Vec<Q> {
    let mut r = rng(seed, 3_000_000 + index);
    let n = real.n;
    let mut g = RationalMatrix::identity(n);
    let mut g_inv = RationalMatrix::identity(n);
    for _ in 0..2 {
        for b in real.k_roots() {
            if !r.random_bool(0.7) {
                continue;
            }
            let t = q(nonzero(&mut r, 2));
            let e = real.root_vector(&b).expect("root vector");
            g = &g * &unipotent(e, &t);
            g_inv = &unipotent(e, &-t) * &g_inv;
        }
    }
    let rank = real.rank();
    let mut entry = || q_frac(nonzero(&mut r, 3), r.random_range(1..=3));
    let diag: Vec<Q> = match real.root_system().label() {
        TypeLabel::A => (0..=rank).map(|_| entry()).collect(),
        _ => {
            let t: Vec<Q> = (0..rank).map(|_| entry()).collect();
            t.iter()
                .cloned()
                .chain(t.iter().map(|v| v.recip()))
                .collect()
        }
    };
    let inv: Vec<Q> = diag.iter().map(|v| v.recip()).collect();
    g = &g * &RationalMatrix::diagonal(&diag);
    g_inv = &RationalMatrix::diagonal(&inv) * &g_inv;
    let point = &(&g * x) * &g_inv;
    let c = real.coords_unchecked(&point);
    let p: Vec<Q> = c[real.k_dim()..].to_vec();
    let den = p.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let s = Q::from_integer(den);
    p.into_iter().map(|v| v * &s).collect()
}

fn evaluate(point: &[Q], monos: &[Vec<u32>], k: usize) -> Vec<Q> {
    let powers: Vec<Vec<Q>> = point
        .iter()
        .map(|v| {
            let mut p = vec![Q::one()];
            for _ in 0..k {
                let next = p.last().unwrap() * v;
                p.push(next);
            }
            p
        })
        .collect();
    monos
        .iter()
        .map(|m| {
            m.iter().enumerate().fold(Q::one(), |acc, (i, &e)| {
                if e == 0 {
                    acc
                } else {
                    acc * &powers[i][e as usize]
                }
            })
        })
        .collect()
}

/// Monomials grouped by torus weight Σ eᵢβᵢ, β the root of the i-th p-basis
/// vector.
fn weight_blocks(roots: &[Root], monos: Vec<Vec<u32>>) -> Vec<Vec<Vec<u32>>> {
    let mut blocks: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
    for m in monos {
        let mut w = vec![0; roots.first().map_or(0, |r| r.0.len())];
        for (e, r) in m.iter().zip(roots) {
            for (a, b) in w.iter_mut().zip(&r.0) {
                *a += *e as i64 * b;
            }
        }
        blocks.entry(w).or_default().push(m);
    }
    blocks.into_values().collect()
}

/// dim ℂ[closure of K·X]_k for k = 0..=k_max.
///
/// The orbit closure is stable under the compact torus, so its ideal is
/// weight-homogeneous and the evaluation rank splits over weight blocks of
/// monomials; each block is reduced separately.
pub fn coordinate_ring_dims(
    real: &ClassicalRealization,
    x: &RationalMatrix,
    k_max: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    if !real.in_p(x) {
        return input("X is not in p");
    }
    let roots = real.p_roots();
    let mut points: Vec<Vec<Q>> = Vec::new();
    let mut dims = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let blocks = weight_blocks(&roots, monomials(roots.len(), k));
        let widest = blocks.iter().map(Vec::len).max().unwrap_or(0);
        let budget = 4 * widest + 8 * BATCH;
        let mut echelons: Vec<RowEchelon> =
            blocks.iter().map(|b| RowEchelon::new(b.len())).collect();
        let rank = |e: &[RowEchelon]| e.iter().map(RowEchelon::rank).sum::<usize>();
        let full: usize = blocks.iter().map(Vec::len).sum();
        let mut used = 0;
        let mut stable = 0;
        while rank(&echelons) < full && stable < 2 {
            if used >= budget {
                return Err(Error::Oracle(format!(
                    "evaluation rank in degree {k} not stable after {used} points (seed {seed}); partial dims {dims:?}, degree {k} ≥ {}",
                    rank(&echelons)
                )));
            }
            if points.len() < used + BATCH {
                let start = points.len() as u64;
                points.extend(exec::map_range(BATCH, |i| {
                    sample(real, x, seed, start + i as u64)
                }));
            }
            let before = rank(&echelons);
            let batch = &points[used..used + BATCH];
            let open: Vec<usize> = (0..blocks.len())
                .filter(|&b| echelons[b].rank() < blocks[b].len())
                .collect();
            let grown = exec::map(&open, |&b| {
                let mut e = echelons[b].clone();
                for p in batch {
                    let row = evaluate(p, &blocks[b], k);
                    if row.iter().any(|v| !v.is_zero()) {
                        e.insert(row);
                    }
                }
                e
            });
            for (b, e) in open.into_iter().zip(grown) {
                echelons[b] = e;
            }
            used += BATCH;
            stable = if rank(&echelons) == before {
                stable + 1
            } else {
                0
            };
        }
        dims.push(rank(&echelons));
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::realize;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(3, 2)[0], vec![2, 0, 0]);
        assert_eq!(monomials(0, 0).len(), 1);
        assert_eq!(monomials(4, 0), vec![vec![0; 4]]);
    }

    #[test]
    fn unipotent_inverse() {
        let e = RationalMatrix::from_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let t = q(3);
        assert_eq!(
            &unipotent(&e, &t) * &unipotent(&e, &-t),
            RationalMatrix::identity(3)
        );
    }

    #[test]
    fn line_and_zero() {
        let r = realize("su(1,1)").unwrap();
        let x = r.root_vector(&Root(vec![1])).unwrap().clone();
        assert_eq!(
            coordinate_ring_dims(&r, &x, 3, 1).unwrap(),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            coordinate_ring_dims(&r, &RationalMatrix::zeros(2, 2), 3, 1).unwrap(),
            vec![1, 0, 0, 0]
        );
    }
}
