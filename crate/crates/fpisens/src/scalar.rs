//! Scalar abstraction shared by every solver in the crate.
//!
//! All numerics (residuals, Jacobian assembly, linear solvers, time stepping)
//! are written once over [`Scalar`] and instantiated at `f64`, at [`C64`] for
//! complex-step runs, and at [`BC64`] (nested complex) for the mixed second
//! directional derivatives that stand in for Hessian-vector products.
//!
//! The complex type is deliberately not a general-purpose complex number: its
//! division, square root and absolute value are tuned so that the real part of
//! every operation reproduces, bit for bit, the computation the plain `f64`
//! path performs, while the imaginary part carries first-derivative
//! information. Branch decisions always go through [`Scalar::re`].

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Field operations plus the handful of nonlinear primitives the solvers need.
pub trait Scalar:
    Copy
    + Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Embed a real number.
    fn from_re(x: f64) -> Self;
    /// Real part. Every tolerance test, comparison and branch uses this, so
    /// that derivative-carrying runs follow the control flow of the real run.
    fn re(self) -> f64;
    /// Complex conjugate (identity for `f64`).
    fn conj(self) -> Self;
    /// Square root on the branch with positive real part. For derivative
    /// arguments this is `sqrt(re) + im/(2 sqrt(re))`, which keeps the real
    /// part identical to the `f64` path.
    fn sqrt(self) -> Self;
    /// `|x|` extended as `sign(re(x)) * x`: smooth almost everywhere and
    /// derivative-correct away from `re(x) == 0`.
    fn sabs(self) -> Self;
    /// Multiply by a real factor.
    fn scale(self, f: f64) -> Self;
    /// L1 magnitude of all components; used for pivot selection so that tiny
    /// imaginary parts cannot flip a pivot choice.
    fn pivot_mag(self) -> f64;
}

impl Scalar for f64 {
    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn from_re(x: f64) -> Self {
        x
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn sabs(self) -> Self {
        if self < 0.0 {
            -self
        } else {
            self
        }
    }
    #[inline]
    fn scale(self, f: f64) -> Self {
        self * f
    }
    #[inline]
    fn pivot_mag(self) -> f64 {
        self.abs()
    }
}

/// Complex number over any scalar, so `Cx<Cx<f64>>` gives bicomplex numbers.
#[derive(Clone, Copy, PartialEq)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

/// Complex double: the workhorse of complex-step differentiation.
pub type C64 = Cx<f64>;
/// Bicomplex double: two independent infinitesimal directions, used for the
/// mixed second derivatives behind the Fréchet Hessian-vector products.
pub type BC64 = Cx<Cx<f64>>;

impl<T: Scalar> Cx<T> {
    #[inline]
    pub fn new(re: T, im: T) -> Self {
        Cx { re, im }
    }
    /// `x + i*h*dir`, the canonical complex-step perturbation.
    #[inline]
    pub fn step(x: T, h_dir: T) -> Self {
        Cx { re: x, im: h_dir }
    }
    /// Lift a value with zero imaginary part.
    #[inline]
    pub fn lift(x: T) -> Self {
        Cx {
            re: x,
            im: T::zero(),
        }
    }
}

impl<T: Scalar> fmt::Debug for Cx<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}+{:?}i)", self.re, self.im)
    }
}

impl<T: Scalar> Add for Cx<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Cx::new(self.re + o.re, self.im + o.im)
    }
}
impl<T: Scalar> Sub for Cx<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Cx::new(self.re - o.re, self.im - o.im)
    }
}
impl<T: Scalar> Mul for Cx<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Cx::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl<T: Scalar> Div for Cx<T> {
    type Output = Self;
    /// Smith's algorithm. The `|c| >= |d|` branch reduces to `re/c` exactly
    /// when the denominator's imaginary part is infinitesimal, which keeps
    /// complex-step real parts pinned to the real-path computation.
    #[inline]
    fn div(self, o: Self) -> Self {
        let (a, b, c, d) = (self.re, self.im, o.re, o.im);
        if d.pivot_mag() <= c.pivot_mag() {
            let r = d / c;
            let den = c + d * r;
            Cx::new((a + b * r) / den, (b - a * r) / den)
        } else {
            let r = c / d;
            let den = c * r + d;
            Cx::new((a * r + b) / den, (b * r - a) / den)
        }
    }
}

impl<T: Scalar> Neg for Cx<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Cx::new(-self.re, -self.im)
    }
}
impl<T: Scalar> AddAssign for Cx<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}
impl<T: Scalar> SubAssign for Cx<T> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}
impl<T: Scalar> MulAssign for Cx<T> {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}
impl<T: Scalar> DivAssign for Cx<T> {
    #[inline]
    fn div_assign(&mut self, o: Self) {
        *self = *self / o;
    }
}
impl<T: Scalar> Sum for Cx<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(<Self as Scalar>::zero(), |a, b| a + b)
    }
}

impl<T: Scalar> Scalar for Cx<T> {
    #[inline]
    fn zero() -> Self {
        Cx::new(T::zero(), T::zero())
    }
    #[inline]
    fn one() -> Self {
        Cx::new(T::one(), T::zero())
    }
    #[inline]
    fn from_re(x: f64) -> Self {
        Cx::new(T::from_re(x), T::zero())
    }
    #[inline]
    fn re(self) -> f64 {
        self.re.re()
    }
    #[inline]
    fn conj(self) -> Self {
        Cx::new(self.re, -self.im)
    }
    #[inline]
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Cx::new(s, self.im / s.scale(2.0))
    }
    #[inline]
    fn sabs(self) -> Self {
        if self.re() < 0.0 {
            -self
        } else {
            self
        }
    }
    #[inline]
    fn scale(self, f: f64) -> Self {
        Cx::new(self.re.scale(f), self.im.scale(f))
    }
    #[inline]
    fn pivot_mag(self) -> f64 {
        self.re.pivot_mag() + self.im.pivot_mag()
    }
}

/// Extract the first-derivative payload of a complex-step result.
#[inline]
pub fn im_over_h(z: C64, h: f64) -> f64 {
    z.im / h
}

/// Mixed second derivative payload of a bicomplex evaluation with inner step
/// `h1` and outer step `h2`: coefficient of `i1*i2`.
#[inline]
pub fn im_im_over_h(z: BC64, h1: f64, h2: f64) -> f64 {
    z.im.im / (h1 * h2)
}

/// Euclidean norm of the real parts of a vector. This is the norm all
/// termination and monitoring logic uses, in both real and complex runs.
pub fn re_norm<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(|x| x.re() * x.re()).sum::<f64>().sqrt()
}

/// Conjugate (Hermitian) inner product `sum conj(a_i) b_i`.
pub fn cdot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x.conj() * *y;
    }
    acc
}

/// Norm from the conjugate inner product, as a real number.
pub fn cnorm<S: Scalar>(v: &[S]) -> f64 {
    let mut acc = 0.0;
    for x in v {
        acc += (x.conj() * *x).re();
    }
    acc.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: f64 = 1e-40;

    #[test]
    fn complex_mul_tracks_derivative() {
        // d/dx (x*x) = 2x at x = 3
        let x = C64::step(3.0, H);
        let y = x * x;
        assert_eq!(y.re, 9.0);
        assert!((im_over_h(y, H) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn complex_div_real_part_is_bitwise_pinned() {
        let a = C64::step(1.7, 2.3 * H);
        let b = C64::step(0.9, -1.1 * H);
        let q = a / b;
        assert_eq!(q.re, 1.7 / 0.9);
        // quotient rule: (a'b - ab')/b^2
        let expect = (2.3 * 0.9 - 1.7 * (-1.1)) / (0.9 * 0.9);
        assert!((im_over_h(q, H) / expect - 1.0).abs() < 1e-13);
    }

    #[test]
    fn genuine_complex_division() {
        // (1+i)/(1+i) = 1
        let z = C64::new(1.0, 1.0);
        let q = z / z;
        assert_eq!(q.re, 1.0);
        assert_eq!(q.im, 0.0);
        // 1/i = -i, exercises the |d| > |c| branch
        let q2 = C64::new(1.0, 0.0) / C64::new(0.0, 1.0);
        assert_eq!(q2.re, 0.0);
        assert_eq!(q2.im, -1.0);
    }

    #[test]
    fn sqrt_is_derivative_exact() {
        let x = C64::step(4.0, H);
        let s = x.sqrt();
        assert_eq!(s.re, 2.0);
        assert!((im_over_h(s, H) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sabs_matches_abs_and_sign() {
        let x = C64::step(-2.0, 3.0 * H);
        let a = x.sabs();
        assert_eq!(a.re, 2.0);
        assert!((im_over_h(a, H) + 3.0).abs() < 1e-13);
        assert_eq!((-5.0f64).sabs(), 5.0);
    }

    #[test]
    fn bicomplex_mixed_second_derivative() {
        // f(x) = x^3: f'' = 6x at x = 2 -> 12
        let h1 = 1e-30;
        let h2 = 1e-35;
        let x: BC64 = Cx::new(C64::step(2.0, h1), C64::step(h2, 0.0));
        let y = x * x * x;
        assert!((im_im_over_h(y, h1, h2) - 12.0).abs() < 1e-10);
        assert_eq!(y.re.re, 8.0);
    }

    #[test]
    fn real_embedding_is_exact() {
        // complex ops on zero-imaginary inputs reproduce the real path bitwise
        let xs = [0.37, -1.25e3, 9.0, 1e-8];
        for &a in &xs {
            for &b in &xs {
                let ca = C64::lift(a);
                let cb = C64::lift(b);
                assert_eq!((ca * cb).re, a * b);
                assert_eq!((ca / cb).re, a / b);
                assert_eq!((ca + cb).re, a + b);
                assert_eq!((ca - cb).re, a - b);
            }
        }
        assert_eq!(C64::lift(2.25).sqrt().re, 2.25f64.sqrt());
    }
}
