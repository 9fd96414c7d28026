//! Flexible GMRES with restart and optional Gauss-Seidel preconditioning.
//!
//! Arnoldi orthogonalization uses the conjugate inner product; the small
//! least-squares problem is triangularized with plane rotations written in
//! plain field arithmetic, i.e. the analytic continuation of the real
//! algorithm. Convergence tests use real-part norms throughout, so a
//! complex-step shadow run performs the same number of iterations as the real
//! run it differentiates.

use crate::error::LinalgError;
use crate::linalg::gauss_seidel::gauss_seidel_sweeps;
use crate::linalg::matrix::Matrix;
use crate::linalg::LinearSolveConfig;
use crate::scalar::{cdot, cnorm, re_norm, Scalar};

/// Outcome of an iterative (or direct) linear solve.
#[derive(Clone, Debug)]
pub struct LinearSolveResult<S> {
    pub solution: Vec<S>,
    /// True relative residual `||b - A x|| / ||b||` (real-part norms).
    pub achieved_rel_residual: f64,
    pub iterations_used: usize,
    /// True relative residual recorded at each restart boundary.
    pub residual_history: Vec<f64>,
}

pub fn gmres_solve<S: Scalar>(
    a: &Matrix<S>,
    b: &[S],
    cfg: &LinearSolveConfig,
) -> Result<LinearSolveResult<S>, LinalgError> {
    a.check_len(b.len())?;
    let n = b.len();
    let m = cfg.restart.max(1);
    let tol = cfg.rel_tolerance;
    let bnorm = re_norm(b);
    if bnorm == 0.0 {
        return Ok(LinearSolveResult {
            solution: vec![S::zero(); n],
            achieved_rel_residual: 0.0,
            iterations_used: 0,
            residual_history: vec![0.0],
        });
    }

    let mut x = vec![S::zero(); n];
    let mut r = b.to_vec();
    let mut iters = 0usize;
    let mut history = Vec::new();
    let mut achieved = 1.0;

    'outer: loop {
        let beta = cnorm(&r);
        if beta == 0.0 {
            achieved = 0.0;
            history.push(0.0);
            break;
        }
        // Krylov basis v, preconditioned directions z, Hessenberg column-major
        let mut v: Vec<Vec<S>> = Vec::with_capacity(m + 1);
        let mut z: Vec<Vec<S>> = Vec::with_capacity(m);
        let mut h: Vec<Vec<S>> = Vec::with_capacity(m);
        let mut cs: Vec<S> = Vec::with_capacity(m);
        let mut sn: Vec<S> = Vec::with_capacity(m);
        let mut g: Vec<S> = vec![S::zero(); m + 1];
        g[0] = S::from_re(beta);
        v.push(r.iter().map(|ri| ri.scale(1.0 / beta)).collect());

        let mut j_used = 0usize;
        let mut broke_down = false;
        for j in 0..m {
            let zj = if cfg.precond_sweeps > 0 {
                gauss_seidel_sweeps(a, &v[j], cfg.precond_sweeps)?
            } else {
                v[j].clone()
            };
            let mut w = a.apply(&zj);
            z.push(zj);
            let mut hj = vec![S::zero(); j + 2];
            for (i, vi) in v.iter().enumerate().take(j + 1) {
                let hij = cdot(vi, &w);
                for (wk, vk) in w.iter_mut().zip(vi) {
                    *wk -= hij * *vk;
                }
                hj[i] = hij;
            }
            let wnorm = cnorm(&w);
            hj[j + 1] = S::from_re(wnorm);

            // apply accumulated rotations to the new column
            for i in 0..j {
                let t0 = cs[i] * hj[i] + sn[i] * hj[i + 1];
                let t1 = -sn[i] * hj[i] + cs[i] * hj[i + 1];
                hj[i] = t0;
                hj[i + 1] = t1;
            }
            // new rotation eliminating hj[j+1]
            let denom = (hj[j] * hj[j] + hj[j + 1] * hj[j + 1]).sqrt();
            if denom.re() == 0.0 || !denom.re().is_finite() {
                broke_down = true;
                j_used = j + 1;
                iters += 1;
                break;
            }
            let c_new = hj[j] / denom;
            let s_new = hj[j + 1] / denom;
            hj[j] = c_new * hj[j] + s_new * hj[j + 1];
            hj[j + 1] = S::zero();
            cs.push(c_new);
            sn.push(s_new);
            g[j + 1] = -s_new * g[j];
            g[j] = c_new * g[j];
            h.push(hj);

            iters += 1;
            j_used = j + 1;
            let est = g[j + 1].re().abs() / bnorm;
            let lucky = wnorm <= f64::EPSILON * beta;
            if est <= tol || iters >= cfg.max_iterations || lucky {
                break;
            }
            v.push(w.iter().map(|wk| wk.scale(1.0 / wnorm)).collect());
        }

        // back-substitution on the j_used x j_used triangle
        let k = j_used;
        if k > 0 && !broke_down {
            let mut y = vec![S::zero(); k];
            for i in (0..k).rev() {
                let mut acc = g[i];
                for l in (i + 1)..k {
                    acc -= h[l][i] * y[l];
                }
                y[i] = acc / h[i][i];
            }
            for (yi, zi) in y.iter().zip(&z) {
                for (xk, zk) in x.iter_mut().zip(zi) {
                    *xk += *yi * *zk;
                }
            }
        }
        r = a.residual_of(&x, b);
        achieved = re_norm(&r) / bnorm;
        history.push(achieved);
        if broke_down {
            if achieved <= tol {
                break 'outer;
            }
            return Err(LinalgError::Breakdown { iteration: iters });
        }
        if achieved <= tol || iters >= cfg.max_iterations {
            break 'outer;
        }
    }

    Ok(LinearSolveResult {
        solution: x,
        achieved_rel_residual: achieved,
        iterations_used: iters,
        residual_history: history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::lu::solve_dense;
    use crate::linalg::matrix::DenseMat;
    use crate::linalg::{LinearMethod, LinearSolveConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg(tol: f64) -> LinearSolveConfig {
        LinearSolveConfig {
            method: LinearMethod::Gmres,
            rel_tolerance: tol,
            max_iterations: 600,
            restart: 60,
            n_sweeps: 5,
            precond_sweeps: 0,
        }
    }

    #[test]
    fn identity_converges_in_one_iteration() {
        let a = Matrix::Dense(DenseMat::<f64>::identity(4));
        let b = vec![1.0, 2.0, 3.0, 4.0];
        let r = gmres_solve(&a, &b, &cfg(1e-12)).unwrap();
        assert_eq!(r.iterations_used, 1);
        for (x, e) in r.solution.iter().zip(&b) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_system() {
        let mut m = DenseMat::<f64>::zeros(2);
        m.set(0, 0, 2.0);
        m.set(1, 1, 4.0);
        let r = gmres_solve(&Matrix::Dense(m), &[2.0, 4.0], &cfg(1e-12)).unwrap();
        assert!((r.solution[0] - 1.0).abs() < 1e-12);
        assert!((r.solution[1] - 1.0).abs() < 1e-12);
        assert!(r.achieved_rel_residual <= 1e-12);
    }

    #[test]
    fn random_system_matches_direct_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 20;
        let mut m = DenseMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j {
                    10.0 + rng.gen::<f64>()
                } else {
                    rng.gen::<f64>() - 0.5
                };
                m.set(i, j, v);
            }
        }
        let b: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let direct = solve_dense(&m, &b).unwrap();
        let r = gmres_solve(&Matrix::Dense(m), &b, &cfg(1e-10)).unwrap();
        let num: f64 = r
            .solution
            .iter()
            .zip(&direct)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        let den: f64 = direct.iter().map(|y| y * y).sum::<f64>().sqrt();
        assert!(num / den <= 1e-9, "gmres vs direct: {}", num / den);
    }

    #[test]
    fn restart_history_is_monotone() {
        // force several restarts with a small restart length
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 30;
        let mut m = DenseMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j {
                    4.0 + rng.gen::<f64>()
                } else {
                    0.8 * (rng.gen::<f64>() - 0.5)
                };
                m.set(i, j, v);
            }
        }
        let b: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
        let mut c = cfg(1e-12);
        c.restart = 5;
        let r = gmres_solve(&Matrix::Dense(m), &b, &c).unwrap();
        for w in r.residual_history.windows(2) {
            assert!(
                w[1] <= w[0] * (1.0 + 1e-12),
                "restart residuals increased: {:?}",
                r.residual_history
            );
        }
        assert!(r.achieved_rel_residual <= 1e-12);
    }

    #[test]
    fn preconditioned_solve_converges_faster() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 40;
        let mut m = DenseMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j {
                    3.0 + rng.gen::<f64>()
                } else if (i as isize - j as isize).abs() == 1 {
                    -1.0
                } else {
                    0.0
                };
                m.set(i, j, v);
            }
        }
        let a = Matrix::Dense(m);
        let b: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
        let plain = gmres_solve(&a, &b, &cfg(1e-10)).unwrap();
        let mut pc = cfg(1e-10);
        pc.precond_sweeps = 3;
        let pre = gmres_solve(&a, &b, &pc).unwrap();
        assert!(pre.achieved_rel_residual <= 1e-10);
        assert!(pre.iterations_used <= plain.iterations_used);
    }

    #[test]
    fn singular_system_reports_nonconvergence_not_crash() {
        let mut m = DenseMat::<f64>::zeros(3);
        m.set(0, 0, 1.0);
        m.set(1, 1, 1.0);
        // third row/col all zero -> singular; rhs has a component outside range
        let b = vec![1.0, 1.0, 1.0];
        let mut c = cfg(1e-12);
        c.max_iterations = 50;
        match gmres_solve(&Matrix::Dense(m), &b, &c) {
            Ok(r) => assert!(r.achieved_rel_residual > 1e-12),
            Err(LinalgError::Breakdown { .. }) => {}
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }
}
