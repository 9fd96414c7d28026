//! Block Gauss-Seidel sweeps and their exact dual.
//!
//! With a fixed sweep count and zero initial guess the sweep is a linear
//! operator in the right-hand side, independent of it. Its exact transpose is
//! realized by backward-ordered sweeps on the transposed matrix, which is what
//! the adjoint uses when strict duality with the tangent is required.
//!
//! Ordering is ascending cell index for forward sweeps; duality depends on it.

use crate::error::LinalgError;
use crate::linalg::lu::{factor_block, solve_block};
use crate::linalg::matrix::Matrix;
use crate::scalar::Scalar;

struct DiagFactors<S> {
    b: usize,
    blocks: Vec<S>,
    perms: Vec<usize>,
}

fn factor_diagonal<S: Scalar>(a: &Matrix<S>) -> Result<DiagFactors<S>, LinalgError> {
    let (n_blocks, b) = match a {
        Matrix::Banded(m) => (m.n_blocks, m.b),
        Matrix::Dense(m) => (m.n, 1),
    };
    let mut blocks = vec![S::zero(); n_blocks * b * b];
    let mut perms = vec![0usize; n_blocks * b];
    for ib in 0..n_blocks {
        let blk = &mut blocks[ib * b * b..(ib + 1) * b * b];
        for ii in 0..b {
            for jj in 0..b {
                blk[ii * b + jj] = a.get(ib * b + ii, ib * b + jj);
            }
        }
        let perm = factor_block(b, blk).map_err(|_| LinalgError::SingularBlock { cell: ib })?;
        perms[ib * b..(ib + 1) * b].copy_from_slice(&perm);
    }
    Ok(DiagFactors { b, blocks, perms })
}

/// Shared sweep core. `backward` reverses the cell ordering.
fn sweeps_core<S: Scalar>(
    a: &Matrix<S>,
    rhs: &[S],
    n_sweeps: usize,
    backward: bool,
) -> Result<Vec<S>, LinalgError> {
    a.check_len(rhs.len())?;
    let diag = factor_diagonal(a)?;
    let b = diag.b;
    let n_blocks = rhs.len() / b;
    let mut x = vec![S::zero(); rhs.len()];
    let mut local = vec![S::zero(); b];
    let mut sol = vec![S::zero(); b];
    let order: Vec<usize> = if backward {
        (0..n_blocks).rev().collect()
    } else {
        (0..n_blocks).collect()
    };
    for _ in 0..n_sweeps {
        for &ib in &order {
            // local rhs = rhs_i - sum_{j != i} A_ij x_j, using current x
            for ii in 0..b {
                local[ii] = rhs[ib * b + ii];
            }
            match a {
                Matrix::Banded(m) => {
                    let jb_lo = ib.saturating_sub(m.bw);
                    let jb_hi = (ib + m.bw).min(n_blocks - 1);
                    for jb in jb_lo..=jb_hi {
                        if jb == ib {
                            continue;
                        }
                        let blk = m.block(ib, jb).unwrap();
                        let xs = &x[jb * b..(jb + 1) * b];
                        for ii in 0..b {
                            let mut acc = local[ii];
                            for jj in 0..b {
                                acc -= blk[ii * b + jj] * xs[jj];
                            }
                            local[ii] = acc;
                        }
                    }
                }
                Matrix::Dense(m) => {
                    let mut acc = local[0];
                    for j in 0..m.n {
                        if j != ib {
                            acc -= m.get(ib, j) * x[j];
                        }
                    }
                    local[0] = acc;
                }
            }
            let blk = &diag.blocks[ib * b * b..(ib + 1) * b * b];
            let perm = &diag.perms[ib * b..(ib + 1) * b];
            solve_block(b, blk, perm, &local, &mut sol);
            x[ib * b..(ib + 1) * b].copy_from_slice(&sol);
        }
    }
    Ok(x)
}

/// Exactly `n_sweeps` forward sweeps from a zero initial guess.
pub fn gauss_seidel_sweeps<S: Scalar>(
    a: &Matrix<S>,
    rhs: &[S],
    n_sweeps: usize,
) -> Result<Vec<S>, LinalgError> {
    sweeps_core(a, rhs, n_sweeps, false)
}

/// The exact transpose of the operator realized by [`gauss_seidel_sweeps`]:
/// `n_sweeps` backward-ordered sweeps on the transposed matrix, so that
/// `<c, GS(A) b> == <GS_dual(A) c, b>` to round-off for any `b`, `c`.
pub fn gauss_seidel_dual_sweeps<S: Scalar>(
    a: &Matrix<S>,
    rhs: &[S],
    n_sweeps: usize,
) -> Result<Vec<S>, LinalgError> {
    let at = a.transpose();
    sweeps_core(&at, rhs, n_sweeps, true)
}
