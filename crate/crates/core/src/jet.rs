//! Forward-mode differentiation by truncated Taylor arithmetic.
//!
//! [`Taylor`] carries a univariate series to order 4, [`Jet2`] carries the
//! value and all partials up to order 2 in two variables. Both implement
//! [`Scalar`], so closed-form maps can be written once and evaluated on plain
//! floats or on jets.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Real scalar arithmetic shared by `f64` and the jet types.
pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(c: f64) -> Self;
    fn value(&self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn powf(self, p: f64) -> Self;
    fn recip(self) -> Self;

    fn powi(self, n: i32) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = Self::cst(1.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for f64 {
    fn cst(c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
    fn recip(self) -> Self {
        1.0 / self
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

/// Highest order carried by [`Taylor`].
pub const TAYLOR_ORDER: usize = 4;
const NT: usize = TAYLOR_ORDER + 1;

/// Univariate truncated Taylor series `c[0] + c[1] d + ... + c[4] d^4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Taylor {
    pub c: [f64; NT],
}

const FACT: [f64; NT] = [1.0, 1.0, 2.0, 6.0, 24.0];

impl Taylor {
    pub fn constant(x: f64) -> Self {
        let mut c = [0.0; NT];
        c[0] = x;
        Taylor { c }
    }

    /// The independent variable evaluated at `t`.
    pub fn variable(t: f64) -> Self {
        let mut c = [0.0; NT];
        c[0] = t;
        c[1] = 1.0;
        Taylor { c }
    }

    pub fn from_derivatives(d: [f64; NT]) -> Self {
        let mut c = [0.0; NT];
        for k in 0..NT {
            c[k] = d[k] / FACT[k];
        }
        Taylor { c }
    }

    /// k-th derivative at the expansion point.
    pub fn deriv(&self, k: usize) -> f64 {
        self.c[k] * FACT[k]
    }

    pub fn derivatives(&self) -> [f64; NT] {
        let mut d = [0.0; NT];
        for k in 0..NT {
            d[k] = self.deriv(k);
        }
        d
    }

    /// Series of the derivative; the top coefficient is lost.
    pub fn differentiate(&self) -> Self {
        let mut c = [0.0; NT];
        for k in 0..NT - 1 {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Taylor { c }
    }

    /// Substitute `inner` (whose constant term is ignored) into the
    /// polynomial `sum c_k d^k`.
    pub fn compose_increment(&self, inner: &Taylor) -> Taylor {
        let mut d = *inner;
        d.c[0] = 0.0;
        let mut out = Taylor::constant(self.c[NT - 1]);
        for k in (0..NT - 1).rev() {
            out = out * d + self.c[k];
        }
        out
    }

    /// Reversion of a series with `c[1] != 0`: returns the coefficients of the
    /// inverse map's increment (constant term zero).
    pub fn revert(&self) -> Option<Taylor> {
        let a1 = self.c[1];
        if a1 == 0.0 || !a1.is_finite() {
            return None;
        }
        let (a2, a3, a4) = (self.c[2], self.c[3], self.c[4]);
        let b1 = 1.0 / a1;
        let b2 = -a2 / a1.powi(3);
        let b3 = (2.0 * a2 * a2 - a1 * a3) / a1.powi(5);
        let b4 = (5.0 * a1 * a2 * a3 - a1 * a1 * a4 - 5.0 * a2.powi(3)) / a1.powi(7);
        Some(Taylor { c: [0.0, b1, b2, b3, b4] })
    }

    fn map(self, f: impl Fn(f64) -> f64) -> Self {
        let mut c = self.c;
        for x in c.iter_mut() {
            *x = f(*x);
        }
        Taylor { c }
    }

    fn sin_cos(self) -> (Self, Self) {
        let a = self.c;
        let mut s = [0.0; NT];
        let mut co = [0.0; NT];
        s[0] = a[0].sin();
        co[0] = a[0].cos();
        for k in 1..NT {
            let (mut ss, mut cc) = (0.0, 0.0);
            for j in 1..=k {
                ss += j as f64 * a[j] * co[k - j];
                cc -= j as f64 * a[j] * s[k - j];
            }
            s[k] = ss / k as f64;
            co[k] = cc / k as f64;
        }
        (Taylor { c: s }, Taylor { c: co })
    }

    fn sinh_cosh(self) -> (Self, Self) {
        let a = self.c;
        let mut s = [0.0; NT];
        let mut co = [0.0; NT];
        s[0] = a[0].sinh();
        co[0] = a[0].cosh();
        for k in 1..NT {
            let (mut ss, mut cc) = (0.0, 0.0);
            for j in 1..=k {
                ss += j as f64 * a[j] * co[k - j];
                cc += j as f64 * a[j] * s[k - j];
            }
            s[k] = ss / k as f64;
            co[k] = cc / k as f64;
        }
        (Taylor { c: s }, Taylor { c: co })
    }
}

impl Add for Taylor {
    type Output = Taylor;
    fn add(self, o: Taylor) -> Taylor {
        let mut c = self.c;
        for k in 0..NT {
            c[k] += o.c[k];
        }
        Taylor { c }
    }
}

impl Sub for Taylor {
    type Output = Taylor;
    fn sub(self, o: Taylor) -> Taylor {
        let mut c = self.c;
        for k in 0..NT {
            c[k] -= o.c[k];
        }
        Taylor { c }
    }
}

impl Mul for Taylor {
    type Output = Taylor;
    fn mul(self, o: Taylor) -> Taylor {
        let mut c = [0.0; NT];
        for k in 0..NT {
            for i in 0..=k {
                c[k] += self.c[i] * o.c[k - i];
            }
        }
        Taylor { c }
    }
}

impl Div for Taylor {
    type Output = Taylor;
    fn div(self, o: Taylor) -> Taylor {
        let mut q = [0.0; NT];
        for k in 0..NT {
            let mut acc = self.c[k];
            for i in 1..=k {
                acc -= o.c[i] * q[k - i];
            }
            q[k] = acc / o.c[0];
        }
        Taylor { c: q }
    }
}

impl Neg for Taylor {
    type Output = Taylor;
    fn neg(self) -> Taylor {
        self.map(|x| -x)
    }
}

impl Add<f64> for Taylor {
    type Output = Taylor;
    fn add(mut self, o: f64) -> Taylor {
        self.c[0] += o;
        self
    }
}

impl Sub<f64> for Taylor {
    type Output = Taylor;
    fn sub(mut self, o: f64) -> Taylor {
        self.c[0] -= o;
        self
    }
}

impl Mul<f64> for Taylor {
    type Output = Taylor;
    fn mul(self, o: f64) -> Taylor {
        self.map(|x| x * o)
    }
}

impl Div<f64> for Taylor {
    type Output = Taylor;
    fn div(self, o: f64) -> Taylor {
        self.map(|x| x / o)
    }
}

impl Scalar for Taylor {
    fn cst(c: f64) -> Self {
        Taylor::constant(c)
    }
    fn value(&self) -> f64 {
        self.c[0]
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn sinh(self) -> Self {
        self.sinh_cosh().0
    }
    fn cosh(self) -> Self {
        self.sinh_cosh().1
    }
    fn exp(self) -> Self {
        let a = self.c;
        let mut e = [0.0; NT];
        e[0] = a[0].exp();
        for k in 1..NT {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * a[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        Taylor { c: e }
    }
    fn ln(self) -> Self {
        let a = self.c;
        let mut l = [0.0; NT];
        l[0] = a[0].ln();
        for k in 1..NT {
            let mut acc = 0.0;
            for j in 1..k {
                acc += j as f64 * l[j] * a[k - j];
            }
            l[k] = (a[k] - acc / k as f64) / a[0];
        }
        Taylor { c: l }
    }
    fn sqrt(self) -> Self {
        let a = self.c;
        let mut r = [0.0; NT];
        r[0] = a[0].sqrt();
        for k in 1..NT {
            let mut acc = a[k];
            for j in 1..k {
                acc -= r[j] * r[k - j];
            }
            r[k] = acc / (2.0 * r[0]);
        }
        Taylor { c: r }
    }
    fn powf(self, p: f64) -> Self {
        let a = self.c;
        let mut y = [0.0; NT];
        y[0] = a[0].powf(p);
        for k in 1..NT {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += (p * j as f64 - (k - j) as f64) * a[j] * y[k - j];
            }
            y[k] = acc / (k as f64 * a[0]);
        }
        Taylor { c: y }
    }
    fn recip(self) -> Self {
        Taylor::constant(1.0) / self
    }
}

/// Value and partial derivatives up to order 2 in two variables `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Jet2 {
    pub val: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
}

impl Jet2 {
    pub fn constant(x: f64) -> Self {
        Jet2 { val: x, ..Default::default() }
    }

    pub fn var_u(u: f64) -> Self {
        Jet2 { val: u, du: 1.0, ..Default::default() }
    }

    pub fn var_v(v: f64) -> Self {
        Jet2 { val: v, dv: 1.0, ..Default::default() }
    }

    /// Compose with a scalar function given its value and first two
    /// derivatives at `self.val`.
    pub fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        Jet2 {
            val: f0,
            du: f1 * self.du,
            dv: f1 * self.dv,
            duu: f2 * self.du * self.du + f1 * self.duu,
            duv: f2 * self.du * self.dv + f1 * self.duv,
            dvv: f2 * self.dv * self.dv + f1 * self.dvv,
        }
    }

    fn scale(self, s: f64) -> Self {
        Jet2 {
            val: self.val * s,
            du: self.du * s,
            dv: self.dv * s,
            duu: self.duu * s,
            duv: self.duv * s,
            dvv: self.dvv * s,
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 {
            val: self.val + o.val,
            du: self.du + o.du,
            dv: self.dv + o.dv,
            duu: self.duu + o.duu,
            duv: self.duv + o.duv,
            dvv: self.dvv + o.dvv,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            val: self.val * o.val,
            du: self.du * o.val + self.val * o.du,
            dv: self.dv * o.val + self.val * o.dv,
            duu: self.duu * o.val + 2.0 * self.du * o.du + self.val * o.duu,
            duv: self.duv * o.val + self.du * o.dv + self.dv * o.du + self.val * o.duv,
            dvv: self.dvv * o.val + 2.0 * self.dv * o.dv + self.val * o.dvv,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(mut self, o: f64) -> Jet2 {
        self.val += o;
        self
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(mut self, o: f64) -> Jet2 {
        self.val -= o;
        self
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, o: f64) -> Jet2 {
        self.scale(o)
    }
}

impl Div<f64> for Jet2 {
    type Output = Jet2;
    fn div(self, o: f64) -> Jet2 {
        self.scale(1.0 / o)
    }
}

impl Scalar for Jet2 {
    fn cst(c: f64) -> Self {
        Jet2::constant(c)
    }
    fn value(&self) -> f64 {
        self.val
    }
    fn sin(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }
    fn sinh(self) -> Self {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(s, c, s)
    }
    fn cosh(self) -> Self {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(c, s, c)
    }
    fn exp(self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }
    fn ln(self) -> Self {
        let x = self.val;
        self.chain(x.ln(), 1.0 / x, -1.0 / (x * x))
    }
    fn sqrt(self) -> Self {
        let r = self.val.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.val))
    }
    fn powf(self, p: f64) -> Self {
        let x = self.val;
        self.chain(x.powf(p), p * x.powf(p - 1.0), p * (p - 1.0) * x.powf(p - 2.0))
    }
    fn recip(self) -> Self {
        let x = self.val;
        self.chain(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taylor_matches_closed_derivatives() {
        let t = Taylor::variable(0.3);
        let f = (t * 2.0).sin() * t.exp();
        let d = f.derivatives();
        let x: f64 = 0.3;
        let exact1 = (2.0 * (2.0 * x).cos() + (2.0 * x).sin()) * x.exp();
        assert!((d[1] - exact1).abs() < 1e-13);
        let g = t.sqrt().ln();
        assert!((g.deriv(3) - 1.0 / (x * x * x)).abs() < 1e-10);
    }

    #[test]
    fn reversion_inverts_exp() {
        let s = Taylor::variable(0.0).exp() - 1.0;
        let inv = s.revert().unwrap();
        // inverse of e^t - 1 is ln(1 + y)
        let expected = [0.0, 1.0, -0.5, 1.0 / 3.0, -0.25];
        for k in 0..5 {
            assert!((inv.c[k] - expected[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn jet2_product_rule() {
        let u = Jet2::var_u(0.4);
        let v = Jet2::var_v(-0.7);
        let f = u * u * v + (u * v).sin();
        let (x, y) = (0.4_f64, -0.7_f64);
        assert!((f.duv - (2.0 * x + (x * y).cos() - x * y * (x * y).sin())).abs() < 1e-14);
        assert!((f.dvv + x * x * (x * y).sin()).abs() < 1e-14);
    }
}
