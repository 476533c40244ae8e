//! Dense two-phase simplex for the small equality-form programs behind
//! V-polytope gauges and H-polytope support values:
//! `minimize <cost, mu> subject to A mu = b, mu >= 0`.
//!
//! Columns of `A` number in the hundreds at most and there are at most 8
//! rows, so a plain tableau with Bland's rule is entirely adequate.

use crate::real::{r, Real};

/// Solves the program above; returns the optimal value, or `None` when the
/// program is infeasible (origin not in the interior, for our callers).
pub fn solve_min<S: Real>(columns: &[Vec<S>], cost: &[S], rhs: &[S]) -> Option<S> {
    let m = rhs.len();
    let n = columns.len();
    assert_eq!(cost.len(), n);
    let tol = r::<S>(1e-11);

    // Tableau layout: n structural + m artificial columns, then RHS.
    let width = n + m + 1;
    let mut t = vec![S::zero(); (m + 1) * width];
    let idx = |row: usize, col: usize| row * width + col;

    for i in 0..m {
        let flip = rhs[i] < S::zero();
        let sign = if flip { -S::one() } else { S::one() };
        for j in 0..n {
            t[idx(i, j)] = sign * columns[j][i];
        }
        t[idx(i, n + i)] = S::one();
        t[idx(i, n + m)] = sign * rhs[i];
    }

    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1 objective: minimize sum of artificials.
    for j in 0..width {
        let mut s = S::zero();
        for i in 0..m {
            s = s + t[idx(i, j)];
        }
        t[idx(m, j)] = -s;
    }
    for i in n..n + m {
        t[idx(m, i)] = t[idx(m, i)] + S::one();
    }

    let pivot = |t: &mut Vec<S>, basis: &mut Vec<usize>, row: usize, col: usize| {
        let piv = t[idx(row, col)];
        for j in 0..width {
            t[idx(row, j)] = t[idx(row, j)] / piv;
        }
        for i in 0..=m {
            if i == row {
                continue;
            }
            let factor = t[idx(i, col)];
            if factor == S::zero() {
                continue;
            }
            for j in 0..width {
                let v = t[idx(row, j)];
                t[idx(i, j)] = t[idx(i, j)] - factor * v;
            }
        }
        basis[row] = col;
    };

    let run = |t: &mut Vec<S>, basis: &mut Vec<usize>, allowed: usize| -> bool {
        for _ in 0..20_000 {
            // Bland's rule: first column with negative reduced cost.
            let mut enter = None;
            for j in 0..allowed {
                if t[idx(m, j)] < -tol {
                    enter = Some(j);
                    break;
                }
            }
            let Some(col) = enter else { return true };
            let mut best: Option<(usize, S)> = None;
            for i in 0..m {
                let a = t[idx(i, col)];
                if a > tol {
                    let ratio = t[idx(i, n + m)] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br - tol || (ratio < *br + tol && basis[i] < basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = best else { return false }; // unbounded
            pivot(t, basis, row, col);
        }
        false
    };

    // Phase 1.
    if !run(&mut t, &mut basis, n + m) {
        return None;
    }
    if t[idx(m, n + m)].abs() > r(1e-7) {
        return None; // infeasible
    }
    // Drive artificials out of the basis where possible.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| t[idx(i, j)].abs() > tol) {
                pivot(&mut t, &mut basis, i, col);
            }
        }
    }

    // Phase 2 objective.
    for j in 0..width {
        t[idx(m, j)] = S::zero();
    }
    for j in 0..n {
        t[idx(m, j)] = cost[j];
    }
    // Reduce objective row against the basis.
    for i in 0..m {
        if basis[i] < n {
            let factor = t[idx(m, basis[i])];
            if factor != S::zero() {
                for j in 0..width {
                    let v = t[idx(i, j)];
                    t[idx(m, j)] = t[idx(m, j)] - factor * v;
                }
            }
        }
    }
    if !run(&mut t, &mut basis, n) {
        return None;
    }

    let mut value = S::zero();
    for i in 0..m {
        if basis[i] < n {
            value = value + cost[basis[i]] * t[idx(i, n + m)];
        }
    }
    Some(value)
}
