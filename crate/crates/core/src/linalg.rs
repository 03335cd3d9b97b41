//! Fraction-free (Bareiss) elimination over an integral domain.
//!
//! Every intermediate entry is a minor of the input, so each division is
//! exact and no rationals are ever formed.

use crate::exactfield::Integral;

/// Rank of a rectangular integer matrix given as rows.
pub fn bareiss_rank<I: Integral>(mut m: Vec<Vec<I>>) -> usize {
    let rows = m.len();
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    let mut prev = I::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            let lead = m[r][col].clone();
            for c in col + 1..cols {
                let v = (m[r][c].clone() * pivot.clone() - lead.clone() * m[rank][c].clone())
                    / prev.clone();
                m[r][c] = v;
            }
            m[r][col] = I::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix, with row pivoting.
pub fn determinant<I: Integral>(m: &[Vec<I>]) -> I {
    let n = m.len();
    if n == 0 {
        return I::one();
    }
    let mut a: Vec<Vec<I>> = m.to_vec();
    let mut negate = false;
    let mut prev = I::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return I::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        eliminate_below(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// All leading principal minors `D_1, ..., D_n`.
///
/// Without pivoting, the k-th Bareiss pivot is exactly `D_k`. A zero pivot
/// stops the sweep; the remaining minors are then computed one by one.
pub fn leading_principal_minors<I: Integral>(m: &[Vec<I>]) -> Vec<I> {
    let n = m.len();
    let mut a: Vec<Vec<I>> = m.to_vec();
    let mut minors = Vec::with_capacity(n);
    let mut prev = I::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            for size in k + 1..=n {
                let sub: Vec<Vec<I>> = m[..size].iter().map(|r| r[..size].to_vec()).collect();
                minors.push(determinant(&sub));
            }
            break;
        }
        minors.push(a[k][k].clone());
        eliminate_below(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    minors
}

fn eliminate_below<I: Integral>(a: &mut [Vec<I>], k: usize, prev: &I) {
    let n = a.len();
    let cols = a[k].len();
    let pivot = a[k][k].clone();
    for r in k + 1..n {
        let lead = a[r][k].clone();
        let lead_zero = lead.is_zero();
        for c in k + 1..cols {
            // both products vanish: the update is exactly zero
            if a[r][c].is_zero() && (lead_zero || a[k][c].is_zero()) {
                continue;
            }
            let v = (a[r][c].clone() * pivot.clone() - lead.clone() * a[k][c].clone()) / prev.clone();
            a[r][c] = v;
        }
        a[r][k] = I::zero();
    }
}
