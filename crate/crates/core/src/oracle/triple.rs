//! Jacobson–Morozov triples by exact linear solves, and their normalization
//! to H ∈ k, X, Y ∈ p.

use num_traits::Zero;
use serde::Serialize;

use super::ClassicalRealization;
use crate::error::{input, Error, Result};
use crate::linalg::{q, RationalMatrix, RowEchelon, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SL2Triple {
    pub h: RationalMatrix,
    pub x: RationalMatrix,
    pub y: RationalMatrix,
}

/// The six identities, in order: [H,X] = 2X, [X,Y] = H, [H,Y] = −2Y,
/// θH = H, θX = −X, θY = −Y.
pub fn identities(real: &ClassicalRealization, t: &SL2Triple) -> [bool; 6] {
    let two = q(2);
    [
        t.h.commutator(&t.x) == t.x.scale(&two),
        t.x.commutator(&t.y) == t.h,
        t.h.commutator(&t.y) == t.y.scale(&-two),
        real.theta(&t.h) == t.h,
        real.theta(&t.x) == -&t.x,
        real.theta(&t.y) == -&t.y,
    ]
}

fn frobenius(a: &RationalMatrix, b: &RationalMatrix) -> Q {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x * y)
        .sum()
}

fn is_nilpotent(x: &RationalMatrix) -> bool {
    x.pow(x.rows() as u32).is_zero()
}

/// Solves the blocks `a_i · y = b_i` simultaneously.
fn stacked_solve(blocks: &[(&RationalMatrix, Vec<Q>)]) -> Option<Vec<Q>> {
    let cols = blocks[0].0.cols();
    let rows: usize = blocks.iter().map(|(a, _)| a.rows()).sum();
    let mut m = RationalMatrix::zeros(rows, cols);
    let mut rhs = Vec::with_capacity(rows);
    let mut off = 0;
    for (a, b) in blocks {
        for r in 0..a.rows() {
            for c in 0..cols {
                m[(off + r, c)] = a[(r, c)].clone();
            }
        }
        rhs.extend(b.iter().cloned());
        off += a.rows();
    }
    m.solve(&rhs)
}

/// The triple through X whose H has least Frobenius norm. For X in a
/// graded piece g₂ of a Cartan grading this is the diagonal H of the
/// grading.
pub fn jm_triple(real: &ClassicalRealization, x: &RationalMatrix) -> Result<SL2Triple> {
    let xc = real.coords(x)?;
    if x.is_zero() {
        return input("X is zero");
    }
    if !is_nilpotent(x) {
        return input("X is not nilpotent");
    }
    let dim = real.dim();
    let a = real.ad_matrix(x, 0..dim);
    let a2 = &a * &a;
    let target: Vec<Q> = xc.iter().map(|v| v * q(-2)).collect();
    let z = a2
        .solve(&target)
        .ok_or_else(|| Error::Input("ad(X)²Z = −2X has no solution".into()))?;
    let h0 = real.element(&a.mul_vec(&z));
    let mut echelon = RowEchelon::new(dim);
    let mut dirs = Vec::new();
    for k in a2.nullspace() {
        let v = a.mul_vec(&k);
        if echelon.insert(v.clone()) {
            dirs.push(real.element(&v));
        }
    }
    let h = if dirs.is_empty() {
        h0
    } else {
        let gram =
            RationalMatrix::from_fn(dirs.len(), dirs.len(), |i, j| frobenius(&dirs[i], &dirs[j]));
        let b: Vec<Q> = dirs.iter().map(|d| -frobenius(d, &h0)).collect();
        let c = gram
            .solve(&b)
            .ok_or_else(|| Error::Consistency("normal equations are singular".into()))?;
        dirs.iter()
            .zip(&c)
            .fold(h0, |acc, (d, ci)| acc.add(&d.scale(ci)))
    };
    let y = solve_y(real, x, &h, 0..dim)?;
    let t = SL2Triple { h, x: x.clone(), y };
    let ok = identities(real, &t);
    if !(ok[0] && ok[1] && ok[2]) {
        return Err(Error::Consistency(format!(
            "triple fails bracket identities {ok:?}"
        )));
    }
    Ok(t)
}

/// Y in span(basis[range]) with [X,Y] = H and [H,Y] = −2Y.
fn solve_y(
    real: &ClassicalRealization,
    x: &RationalMatrix,
    h: &RationalMatrix,
    range: std::ops::Range<usize>,
) -> Result<RationalMatrix> {
    let dim = real.dim();
    let ax = real.ad_matrix(x, range.clone());
    let mut ah = real.ad_matrix(h, range.clone());
    for (j, i) in range.clone().enumerate() {
        ah[(i, j)] += q(2);
    }
    let hc = real.coords_unchecked(h);
    let zero = vec![Q::zero(); dim];
    let sol = stacked_solve(&[(&ax, hc), (&ah, zero)])
        .ok_or_else(|| Error::Consistency("no Y completes the triple".into()))?;
    let mut full = vec![Q::zero(); dim];
    for (j, i) in range.enumerate() {
        full[i] = sol[j].clone();
    }
    Ok(real.element(&full))
}

/// Replace H by its k-part and re-solve Y inside p.
pub fn ks_normalize(real: &ClassicalRealization, t: &SL2Triple) -> Result<SL2Triple> {
    if !real.in_p(&t.x) {
        return input("X is not in p");
    }
    let half = crate::linalg::q_frac(1, 2);
    let hk = t.h.add(&real.theta(&t.h)).scale(&half);
    if hk.commutator(&t.x) != t.x.scale(&q(2)) {
        return Err(Error::Consistency(
            "k-part of H does not satisfy [H,X] = 2X".into(),
        ));
    }
    let y = solve_y(real, &t.x, &hk, real.p_range())?;
    let out = SL2Triple {
        h: hk,
        x: t.x.clone(),
        y,
    };
    let ok = identities(real, &out);
    if ok.iter().any(|b| !b) {
        return Err(Error::Consistency(format!(
            "normalized triple fails identities {ok:?}"
        )));
    }
    Ok(out)
}
