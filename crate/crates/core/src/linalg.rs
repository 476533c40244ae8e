//! Small dense vector and matrix helpers over plain slices.
//!
//! Dimensions here are tiny (n <= 8), so everything is written directly
//! against `&[S]` without a vector type.

use crate::real::{r, Real};

#[inline]
pub fn dot<S: Real>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(S::zero(), |acc, (&x, &y)| acc + x * y)
}

#[inline]
pub fn norm2<S: Real>(a: &[S]) -> S {
    dot(a, a).sqrt()
}

#[inline]
pub fn add<S: Real>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

#[inline]
pub fn sub<S: Real>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

#[inline]
pub fn scale<S: Real>(a: &[S], s: S) -> Vec<S> {
    a.iter().map(|&x| x * s).collect()
}

#[inline]
pub fn neg<S: Real>(a: &[S]) -> Vec<S> {
    a.iter().map(|&x| -x).collect()
}

/// `a + s * b`.
#[inline]
pub fn axpy<S: Real>(a: &[S], s: S, b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(&x, &y)| x + s * y).collect()
}

#[inline]
pub fn is_zero<S: Real>(a: &[S]) -> bool {
    a.iter().all(|&x| x == S::zero())
}

/// Euclidean unit vector in the direction of `a`.
pub fn normalize<S: Real>(a: &[S]) -> Vec<S> {
    let n = norm2(a);
    assert!(n > S::zero(), "cannot normalize the zero vector");
    scale(a, S::one() / n)
}

/// Angle in radians between two nonzero vectors.
pub fn angle<S: Real>(a: &[S], b: &[S]) -> S {
    let c = dot(a, b) / (norm2(a) * norm2(b));
    c.min(S::one()).max(-S::one()).acos()
}

/// Orthonormal basis of the Euclidean complement of `x` (Gram-Schmidt
/// against the coordinate directions).
pub fn complement_basis<S: Real>(x: &[S]) -> Vec<Vec<S>> {
    let n = x.len();
    let mut basis: Vec<Vec<S>> = vec![normalize(x)];
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let mut e = vec![S::zero(); n];
        e[i] = S::one();
        for b in &basis {
            let p = dot(&e, b);
            for (ek, &bk) in e.iter_mut().zip(b) {
                *ek = *ek - p * bk;
            }
        }
        let len = norm2(&e);
        if len > r(1e-8) {
            basis.push(scale(&e, S::one() / len));
        }
    }
    assert_eq!(basis.len(), n, "complement basis incomplete");
    basis.remove(0);
    basis
}

/// Eigenvalues of a symmetric matrix (row-major, n x n) by cyclic Jacobi
/// rotations, ascending order.  Sizes here never exceed 8.
pub fn symmetric_eigenvalues<S: Real>(mat: &[S], n: usize) -> Vec<S> {
    assert_eq!(mat.len(), n * n);
    let mut a = mat.to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    for _sweep in 0..64 {
        let mut off = S::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off = off + a[idx(i, j)] * a[idx(i, j)];
            }
        }
        if off.sqrt() <= r(1e-30) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[idx(p, q)];
                if apq.abs() <= r(1e-300) {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                let theta = (aqq - app) / (r::<S>(2.0) * apq);
                let t = {
                    let s = if theta >= S::zero() { S::one() } else { -S::one() };
                    s / (theta.abs() + (theta * theta + S::one()).sqrt())
                };
                let c = S::one() / (t * t + S::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<S> = (0..n).map(|i| a[idx(i, i)]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_basis_is_orthonormal() {
        let x = [3.0_f64, 4.0, 0.0];
        let basis = complement_basis(&x);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!((norm2(b) - 1.0).abs() < 1e-12);
            assert!(dot(b, &x).abs() < 1e-12);
        }
        assert!(dot(&basis[0], &basis[1]).abs() < 1e-12);
    }

    #[test]
    fn jacobi_diagonalizes_known_matrix() {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let m = [2.0_f64, 1.0, 1.0, 2.0];
        let eig = symmetric_eigenvalues(&m, 2);
        assert!((eig[0] - 1.0).abs() < 1e-12);
        assert!((eig[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_handles_rank_deficiency() {
        // projection onto span{(1,1,0)}: eigenvalues 0, 0, 2
        let m = [1.0_f64, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        let eig = symmetric_eigenvalues(&m, 3);
        assert!(eig[0].abs() < 1e-12);
        assert!(eig[1].abs() < 1e-12);
        assert!((eig[2] - 2.0).abs() < 1e-12);
    }
}
