//! Complex numbers over any [`Scalar`], so holomorphic data can carry jets.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::jet::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cplx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> Cplx<T> {
    pub fn new(re: T, im: T) -> Self {
        Cplx { re, im }
    }

    pub fn constant(re: f64, im: f64) -> Self {
        Cplx { re: T::cst(re), im: T::cst(im) }
    }

    pub fn real(x: T) -> Self {
        Cplx { re: x, im: T::cst(0.0) }
    }

    pub fn i() -> Self {
        Cplx::constant(0.0, 1.0)
    }

    pub fn conj(self) -> Self {
        Cplx { re: self.re, im: -self.im }
    }

    /// `|z|^2`
    pub fn norm_sq(self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, s: T) -> Self {
        Cplx { re: self.re * s, im: self.im * s }
    }

    pub fn recip(self) -> Self {
        let d = self.norm_sq();
        Cplx { re: self.re / d, im: -self.im / d }
    }

    pub fn exp(self) -> Self {
        let e = self.re.exp();
        Cplx { re: e * self.im.cos(), im: e * self.im.sin() }
    }

    pub fn powi(self, n: i32) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = Cplx::constant(1.0, 0.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// Multiply by `i`.
    pub fn mul_i(self) -> Self {
        Cplx { re: -self.im, im: self.re }
    }

    pub fn value(&self) -> Cplx<f64> {
        Cplx { re: self.re.value(), im: self.im.value() }
    }
}

impl Cplx<f64> {
    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl<T: Scalar> Add for Cplx<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cplx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<T: Scalar> Sub for Cplx<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cplx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<T: Scalar> Mul for Cplx<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Cplx { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl<T: Scalar> Div for Cplx<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<T: Scalar> Neg for Cplx<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cplx { re: -self.re, im: -self.im }
    }
}

impl<T: Scalar> Add<f64> for Cplx<T> {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        Cplx { re: self.re + o, im: self.im }
    }
}

impl<T: Scalar> Mul<f64> for Cplx<T> {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        Cplx { re: self.re * o, im: self.im * o }
    }
}

impl Default for Cplx<f64> {
    fn default() -> Self {
        Cplx { re: 0.0, im: 0.0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_identity() {
        let z = Cplx::<f64>::new(0.0, std::f64::consts::PI).exp();
        assert!((z.re + 1.0).abs() < 1e-15 && z.im.abs() < 1e-15);
    }

    #[test]
    fn division_round_trip() {
        let a = Cplx::new(1.5, -0.3);
        let b = Cplx::new(-0.2, 2.0);
        let c = (a / b) * b;
        assert!((c - a).abs() < 1e-15);
    }
}
