use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::SplitError;
use crate::jet::Scalar;

/// Split-complex number `re + h im` with `h^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Split<T> {
    pub re: T,
    pub im: T,
}

/// Default scale-relative tolerance of the zero-divisor test.
pub const ZERO_DIVISOR_TOL: f64 = 1e-12;

impl<T: Scalar> Split<T> {
    pub fn new(re: T, im: T) -> Self {
        Split { re, im }
    }

    pub fn constant(re: f64, im: f64) -> Self {
        Split { re: T::cst(re), im: T::cst(im) }
    }

    pub fn real(x: T) -> Self {
        Split { re: x, im: T::cst(0.0) }
    }

    pub fn h() -> Self {
        Split::constant(0.0, 1.0)
    }

    pub fn conj(self) -> Self {
        Split { re: self.re, im: -self.im }
    }

    /// `w w_bar = re^2 - im^2`, the Lorentzian square of `(re, im)`.
    pub fn norm_form(self) -> T {
        self.re * self.re - self.im * self.im
    }

    pub fn scale(self, s: T) -> Self {
        Split { re: self.re * s, im: self.im * s }
    }

    /// `e^re (cosh im + h sinh im)`
    pub fn exp(self) -> Self {
        let e = self.re.exp();
        Split { re: e * self.im.cosh(), im: e * self.im.sinh() }
    }

    /// Multiply by `h`.
    pub fn mul_h(self) -> Self {
        Split { re: self.im, im: self.re }
    }

    pub fn powi(self, n: i32) -> Self {
        if n < 0 {
            return self.powi(-n).recip_unchecked();
        }
        let mut acc = Split::constant(1.0, 0.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// Inverse without the zero-divisor check; non-finite on zero divisors.
    pub fn recip_unchecked(self) -> Self {
        let d = self.norm_form();
        Split { re: self.re / d, im: -self.im / d }
    }

    pub fn value(&self) -> Split<f64> {
        Split { re: self.re.value(), im: self.im.value() }
    }
}

impl Split<f64> {
    /// `sqrt(|re^2 - im^2|)`
    pub fn modulus(self) -> f64 {
        self.norm_form().abs().sqrt()
    }

    /// Euclidean length of the coefficient pair.
    pub fn euclid(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_zero_divisor(self, tol: f64) -> bool {
        (self.re.abs() - self.im.abs()).abs() <= tol * (self.re.abs() + self.im.abs())
    }

    pub fn inverse(self) -> Result<Self, SplitError> {
        if self.is_zero_divisor(ZERO_DIVISOR_TOL) {
            return Err(SplitError::ZeroDivisor { re: self.re, im: self.im });
        }
        Ok(self.recip_unchecked())
    }
}

impl Default for Split<f64> {
    fn default() -> Self {
        Split { re: 0.0, im: 0.0 }
    }
}

impl<T: Scalar> Add for Split<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Split { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<T: Scalar> Sub for Split<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Split { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<T: Scalar> Mul for Split<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Split { re: self.re * o.re + self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl<T: Scalar> Div for Split<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip_unchecked()
    }
}

impl<T: Scalar> Neg for Split<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Split { re: -self.re, im: -self.im }
    }
}

impl<T: Scalar> Add<f64> for Split<T> {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        Split { re: self.re + o, im: self.im }
    }
}

impl<T: Scalar> Mul<f64> for Split<T> {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        Split { re: self.re * o, im: self.im * o }
    }
}
