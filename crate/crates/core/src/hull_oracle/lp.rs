//! Phase-one simplex over exact rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::exact::Q;

pub(crate) struct PhaseOne {
    pub feasible: bool,
    /// Simplex multipliers of the original rows at the phase-one optimum.
    /// When infeasible, `y·A <= 0` column-wise and `y·b > 0`.
    pub multipliers: Vec<Q>,
}

/// Decides whether `{u >= 0 : A u = b}` is nonempty.
pub(crate) fn phase_one(a: &[Vec<Q>], b: &[Q]) -> PhaseOne {
    let m = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let width = ncols + m + 1;
    let rhs = width - 1;
    let mut sign = vec![Q::one(); m];
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for i in 0..m {
        if b[i].is_negative() {
            sign[i] = -Q::one();
        }
        let mut row = Vec::with_capacity(width);
        row.extend(a[i].iter().map(|x| x * &sign[i]));
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(&b[i] * &sign[i]);
        t.push(row);
    }
    // reduced costs: c_j - sum of rows, artificial costs are 1
    let mut z = vec![Q::zero(); width];
    for j in 0..ncols {
        z[j] = -t.iter().fold(Q::zero(), |acc, row| acc + &row[j]);
    }
    z[rhs] = -t.iter().fold(Q::zero(), |acc, row| acc + &row[rhs]);
    let mut basis: Vec<usize> = (ncols..ncols + m).collect();

    while let Some(col) = (0..rhs).find(|&j| z[j].is_negative()) {
        let mut best: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][col].is_positive() {
                let ratio = &t[i][rhs] / &t[i][col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        // the phase-one objective is bounded below, so a pivot row always exists
        let (r, _) = best.expect("phase one is bounded");
        pivot(&mut t, &mut z, r, col);
        basis[r] = col;
    }
    let feasible = z[rhs].is_zero();
    let multipliers = (0..m).map(|i| (Q::one() - &z[ncols + i]) * &sign[i]).collect();
    PhaseOne { feasible, multipliers }
}

fn pivot(t: &mut [Vec<Q>], z: &mut [Q], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }
    if !z[c].is_zero() {
        let f = z[c].clone();
        for (x, p) in z.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
}
