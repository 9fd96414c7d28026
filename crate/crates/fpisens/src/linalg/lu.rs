//! Dense LU with partial pivoting.
//!
//! Serves as the direct solver for small systems and as the oracle the
//! iterative solvers are tested against. Pivot selection uses
//! [`Scalar::pivot_mag`], so a complex-step run picks the same pivots as the
//! real run it shadows.

use crate::error::LinalgError;
use crate::linalg::matrix::DenseMat;
use crate::scalar::Scalar;

/// LU factorization with row pivoting.
pub struct LuFactors<S> {
    n: usize,
    lu: Vec<S>,
    perm: Vec<usize>,
}

pub fn factor<S: Scalar>(m: &DenseMat<S>) -> Result<LuFactors<S>, LinalgError> {
    let n = m.n;
    let mut lu = m.a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let mut p = k;
        let mut best = lu[k * n + k].pivot_mag();
        for i in (k + 1)..n {
            let mag = lu[i * n + k].pivot_mag();
            if mag > best {
                best = mag;
                p = i;
            }
        }
        // scale singularity test against the row's largest entry
        let row_scale = (0..n)
            .map(|j| lu[p * n + j].pivot_mag())
            .fold(0.0f64, f64::max);
        if best <= row_scale * 1e-300 || best == 0.0 {
            return Err(LinalgError::Singular { pivot: k });
        }
        if p != k {
            perm.swap(k, p);
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
        }
        let pivot = lu[k * n + k];
        for i in (k + 1)..n {
            let f = lu[i * n + k] / pivot;
            lu[i * n + k] = f;
            for j in (k + 1)..n {
                let v = lu[i * n + j] - f * lu[k * n + j];
                lu[i * n + j] = v;
            }
        }
    }
    Ok(LuFactors { n, lu, perm })
}

impl<S: Scalar> LuFactors<S> {
    pub fn solve(&self, b: &[S]) -> Vec<S> {
        let n = self.n;
        let mut x: Vec<S> = self.perm.iter().map(|&p| b[p]).collect();
        // forward
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc;
        }
        // backward
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        x
    }
}

/// One-shot dense solve.
pub fn solve_dense<S: Scalar>(m: &DenseMat<S>, b: &[S]) -> Result<Vec<S>, LinalgError> {
    Ok(factor(m)?.solve(b))
}

/// In-place pivoted LU of a small block stored row-major; returns the pivot
/// permutation. Used for the diagonal blocks in Gauss-Seidel sweeps.
pub fn factor_block<S: Scalar>(b: usize, blk: &mut [S]) -> Result<Vec<usize>, LinalgError> {
    let mut perm: Vec<usize> = (0..b).collect();
    for k in 0..b {
        let mut p = k;
        let mut best = blk[k * b + k].pivot_mag();
        for i in (k + 1)..b {
            let mag = blk[i * b + k].pivot_mag();
            if mag > best {
                best = mag;
                p = i;
            }
        }
        if best == 0.0 {
            return Err(LinalgError::Singular { pivot: k });
        }
        if p != k {
            perm.swap(k, p);
            for j in 0..b {
                blk.swap(k * b + j, p * b + j);
            }
        }
        let pivot = blk[k * b + k];
        for i in (k + 1)..b {
            let f = blk[i * b + k] / pivot;
            blk[i * b + k] = f;
            for j in (k + 1)..b {
                let v = blk[i * b + j] - f * blk[k * b + j];
                blk[i * b + j] = v;
            }
        }
    }
    Ok(perm)
}

/// Solve with a block factored by [`factor_block`].
pub fn solve_block<S: Scalar>(b: usize, blk: &[S], perm: &[usize], rhs: &[S], out: &mut [S]) {
    for (i, &p) in perm.iter().enumerate() {
        out[i] = rhs[p];
    }
    for i in 1..b {
        let mut acc = out[i];
        for j in 0..i {
            acc -= blk[i * b + j] * out[j];
        }
        out[i] = acc;
    }
    for i in (0..b).rev() {
        let mut acc = out[i];
        for j in (i + 1)..b {
            acc -= blk[i * b + j] * out[j];
        }
        out[i] = acc / blk[i * b + i];
    }
}
