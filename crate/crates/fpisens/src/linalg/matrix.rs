//! Square matrix storage: dense row-major and block-banded.
//!
//! The 1D meshes in this crate produce block-tridiagonal (first-order stencil)
//! and block-pentadiagonal (MUSCL stencil) Jacobians, so a block-banded layout
//! with bandwidth 1 or 2 covers every system matrix we assemble. Banded
//! storage round-trips to dense exactly: entries are stored, never recomputed.

use crate::error::LinalgError;
use crate::scalar::Scalar;

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMat<S> {
    pub n: usize,
    pub a: Vec<S>,
}

impl<S: Scalar> DenseMat<S> {
    pub fn zeros(n: usize) -> Self {
        DenseMat {
            n,
            a: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = S::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "from_rows requires a square layout");
            a.extend_from_slice(r);
        }
        DenseMat { n, a }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.a[i * self.n + j] = v;
    }

    pub fn matvec(&self, x: &[S], y: &mut [S]) {
        let n = self.n;
        for i in 0..n {
            let row = &self.a[i * n..(i + 1) * n];
            let mut acc = S::zero();
            for j in 0..n {
                acc += row[j] * x[j];
            }
            y[i] = acc;
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.a[j * n + i] = self.a[i * n + j];
            }
        }
        t
    }
}

/// Block-banded square matrix: `n_blocks` block rows of `b x b` blocks, with
/// block bandwidth `bw` (1 = block-tridiagonal, 2 = block-pentadiagonal).
/// Row-block `i` stores slots for column blocks `i-bw ..= i+bw`; slots that
/// fall outside the matrix stay zero and are never read.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockBanded<S> {
    pub n_blocks: usize,
    pub b: usize,
    pub bw: usize,
    blocks: Vec<S>,
}

impl<S: Scalar> BlockBanded<S> {
    pub fn zeros(n_blocks: usize, b: usize, bw: usize) -> Self {
        let slots = 2 * bw + 1;
        BlockBanded {
            n_blocks,
            b,
            bw,
            blocks: vec![S::zero(); n_blocks * slots * b * b],
        }
    }

    pub fn n(&self) -> usize {
        self.n_blocks * self.b
    }

    #[inline]
    fn slot(&self, ib: usize, jb: usize) -> Option<usize> {
        let d = jb as isize - ib as isize;
        if d.unsigned_abs() > self.bw || jb >= self.n_blocks {
            return None;
        }
        let slots = 2 * self.bw + 1;
        let s = (d + self.bw as isize) as usize;
        Some((ib * slots + s) * self.b * self.b)
    }

    /// Entry accessor in scalar (not block) indices; zero outside the band.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        let (ib, ii) = (i / self.b, i % self.b);
        let (jb, jj) = (j / self.b, j % self.b);
        match self.slot(ib, jb) {
            Some(base) => self.blocks[base + ii * self.b + jj],
            None => S::zero(),
        }
    }

    /// Entry setter; panics if `(i, j)` lies outside the band.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        let (ib, ii) = (i / self.b, i % self.b);
        let (jb, jj) = (j / self.b, j % self.b);
        let base = self
            .slot(ib, jb)
            .expect("entry outside the block band");
        self.blocks[base + ii * self.b + jj] = v;
    }

    pub fn matvec(&self, x: &[S], y: &mut [S]) {
        let b = self.b;
        for ib in 0..self.n_blocks {
            let jb_lo = ib.saturating_sub(self.bw);
            let jb_hi = (ib + self.bw).min(self.n_blocks - 1);
            for ii in 0..b {
                let mut acc = S::zero();
                for jb in jb_lo..=jb_hi {
                    let base = self.slot(ib, jb).unwrap();
                    let row = &self.blocks[base + ii * b..base + (ii + 1) * b];
                    let xs = &x[jb * b..(jb + 1) * b];
                    for jj in 0..b {
                        acc += row[jj] * xs[jj];
                    }
                }
                y[ib * b + ii] = acc;
            }
        }
    }

    /// Transpose: blocks transposed, off-diagonals mirrored. Applying it twice
    /// restores the original storage bitwise.
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_blocks, self.b, self.bw);
        let b = self.b;
        for ib in 0..self.n_blocks {
            let jb_lo = ib.saturating_sub(self.bw);
            let jb_hi = (ib + self.bw).min(self.n_blocks - 1);
            for jb in jb_lo..=jb_hi {
                let src = self.slot(ib, jb).unwrap();
                let dst = t.slot(jb, ib).unwrap();
                for ii in 0..b {
                    for jj in 0..b {
                        t.blocks[dst + jj * b + ii] = self.blocks[src + ii * b + jj];
                    }
                }
            }
        }
        t
    }

    pub fn to_dense(&self) -> DenseMat<S> {
        let n = self.n();
        let mut d = DenseMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                d.a[i * n + j] = self.get(i, j);
            }
        }
        d
    }

    /// Mutable view of the diagonal block of block row `ib` (row-major `b*b`).
    pub fn diag_block_mut(&mut self, ib: usize) -> &mut [S] {
        let base = self.slot(ib, ib).unwrap();
        &mut self.blocks[base..base + self.b * self.b]
    }

    pub fn diag_block(&self, ib: usize) -> &[S] {
        let base = self.slot(ib, ib).unwrap();
        &self.blocks[base..base + self.b * self.b]
    }

    pub fn block(&self, ib: usize, jb: usize) -> Option<&[S]> {
        self.slot(ib, jb)
            .map(|base| &self.blocks[base..base + self.b * self.b])
    }
}

/// System matrix: dense or block-banded.
#[derive(Clone, Debug, PartialEq)]
pub enum Matrix<S> {
    Dense(DenseMat<S>),
    Banded(BlockBanded<S>),
}

impl<S: Scalar> Matrix<S> {
    pub fn n(&self) -> usize {
        match self {
            Matrix::Dense(m) => m.n,
            Matrix::Banded(m) => m.n(),
        }
    }

    pub fn matvec(&self, x: &[S], y: &mut [S]) {
        match self {
            Matrix::Dense(m) => m.matvec(x, y),
            Matrix::Banded(m) => m.matvec(x, y),
        }
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        let mut y = vec![S::zero(); self.n()];
        self.matvec(x, &mut y);
        y
    }

    pub fn transpose(&self) -> Self {
        match self {
            Matrix::Dense(m) => Matrix::Dense(m.transpose()),
            Matrix::Banded(m) => Matrix::Banded(m.transpose()),
        }
    }

    pub fn to_dense(&self) -> DenseMat<S> {
        match self {
            Matrix::Dense(m) => m.clone(),
            Matrix::Banded(m) => m.to_dense(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        match self {
            Matrix::Dense(m) => m.get(i, j),
            Matrix::Banded(m) => m.get(i, j),
        }
    }

    /// Add `d[i]` to each diagonal entry.
    pub fn add_diag(&mut self, d: &[S]) {
        match self {
            Matrix::Dense(m) => {
                let n = m.n;
                for i in 0..n {
                    let v = m.a[i * n + i] + d[i];
                    m.a[i * n + i] = v;
                }
            }
            Matrix::Banded(m) => {
                let b = m.b;
                for ib in 0..m.n_blocks {
                    let blk = m.diag_block_mut(ib);
                    for ii in 0..b {
                        blk[ii * b + ii] += d[ib * b + ii];
                    }
                }
            }
        }
    }

    pub fn check_len(&self, len: usize) -> Result<(), LinalgError> {
        if self.n() != len {
            Err(LinalgError::Dimension { n: self.n(), len })
        } else {
            Ok(())
        }
    }

    /// Residual `b - A x` using the real-part norm convention of the caller.
    pub fn residual_of(&self, x: &[S], b: &[S]) -> Vec<S> {
        let mut ax = vec![S::zero(); self.n()];
        self.matvec(x, &mut ax);
        b.iter().zip(ax).map(|(bi, axi)| *bi - axi).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_banded() -> BlockBanded<f64> {
        // 4 block rows, 2x2 blocks, bandwidth 1, filled with a deterministic
        // pattern
        let mut m = BlockBanded::zeros(4, 2, 1);
        let mut v = 1.0;
        for ib in 0..4usize {
            for jb in ib.saturating_sub(1)..=(ib + 1).min(3) {
                for ii in 0..2 {
                    for jj in 0..2 {
                        m.set(ib * 2 + ii, jb * 2 + jj, v);
                        v += 0.5;
                    }
                }
            }
        }
        m
    }

    #[test]
    fn banded_matches_dense_matvec() {
        let m = sample_banded();
        let d = m.to_dense();
        let x: Vec<f64> = (0..8).map(|i| 0.3 * i as f64 - 1.0).collect();
        let mut y1 = vec![0.0; 8];
        let mut y2 = vec![0.0; 8];
        m.matvec(&x, &mut y1);
        d.matvec(&x, &mut y2);
        // identical summation order is not guaranteed, but values must agree
        for (a, b) in y1.iter().zip(&y2) {
            assert!((a - b).abs() <= 1e-15 * b.abs().max(1.0));
        }
    }

    #[test]
    fn transpose_round_trip_is_bitwise() {
        let m = sample_banded();
        let tt = m.transpose().transpose();
        assert_eq!(m, tt);
        let d = DenseMat::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let t = d.transpose();
        assert_eq!(t.get(0, 1), 3.0);
        assert_eq!(t.get(1, 0), 2.0);
        assert_eq!(d.transpose().transpose(), d);
    }

    #[test]
    fn banded_transpose_matches_dense_transpose() {
        let m = sample_banded();
        let t1 = m.transpose().to_dense();
        let t2 = m.to_dense().transpose();
        assert_eq!(t1, t2);
    }

    #[test]
    fn identity_transpose_is_identity() {
        let i4 = DenseMat::<f64>::identity(4);
        assert_eq!(i4.transpose(), i4);
    }
}
