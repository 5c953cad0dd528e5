//! Fixed-size helpers for three-dimensional ambients.

use serde::{Deserialize, Serialize};

use crate::lorentz::{CausalClass, Signature};

pub type V3 = [f64; 3];

pub fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(s: f64, a: V3) -> V3 {
    [s * a[0], s * a[1], s * a[2]]
}

/// `a + s b`
pub fn axpy(a: V3, s: f64, b: V3) -> V3 {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

pub fn dot_e(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm_e(a: V3) -> f64 {
    dot_e(a, a).sqrt()
}

pub fn cross_e(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Determinant of the matrix with rows `a`, `b`, `c`.
pub fn det3(a: V3, b: V3, c: V3) -> f64 {
    dot_e(a, cross_e(b, c))
}

pub fn max_abs_diff(a: V3, b: V3) -> f64 {
    (0..3).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}

/// The three-dimensional ambients used by curves and surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Euclidean3,
    Lorentz3,
    Index2_3,
}

impl Ambient {
    pub fn index(self) -> usize {
        match self {
            Ambient::Euclidean3 => 0,
            Ambient::Lorentz3 => 1,
            Ambient::Index2_3 => 2,
        }
    }

    pub fn signature(self) -> Signature {
        Signature::new(3, self.index()).expect("valid three-dimensional signature")
    }

    pub fn weights(self) -> V3 {
        match self {
            Ambient::Euclidean3 => [1.0, 1.0, 1.0],
            Ambient::Lorentz3 => [1.0, 1.0, -1.0],
            Ambient::Index2_3 => [1.0, -1.0, -1.0],
        }
    }

    /// `(-1)^nu`
    pub fn parity(self) -> f64 {
        if self.index() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn dot(self, a: V3, b: V3) -> f64 {
        let w = self.weights();
        w[0] * a[0] * b[0] + w[1] * a[1] * b[1] + w[2] * a[2] * b[2]
    }

    /// Index-weighted cross product: `<a x b, x> = det(x, a, b)`.
    pub fn cross(self, a: V3, b: V3) -> V3 {
        let w = self.weights();
        let c = cross_e(a, b);
        [w[0] * c[0], w[1] * c[1], w[2] * c[2]]
    }

    /// `sqrt(|<a,a>|)`
    pub fn fake_norm(self, a: V3) -> f64 {
        self.dot(a, a).abs().sqrt()
    }

    /// Causal class with the scale-relative zero tolerance.
    pub fn classify(self, a: V3, tol: f64) -> CausalClass {
        CausalClass::from_square(self.dot(a, a), dot_e(a, a), tol)
    }

    /// Raise the index: the coefficient vector `Id a` such that
    /// `<a, x> = (Id a) . x`.
    pub fn lower(self, a: V3) -> V3 {
        let w = self.weights();
        [w[0] * a[0], w[1] * a[1], w[2] * a[2]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lorentz_cross_of_basis() {
        let l = Ambient::Lorentz3;
        assert_eq!(l.cross([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]), [0.0, 0.0, -1.0]);
        assert_eq!(l.cross([0.0, 0.0, 1.0], [0.0, 1.0, 0.0]), [-1.0, 0.0, 0.0]);
        assert_eq!(
            Ambient::Euclidean3.cross([0.0, 1.0, 0.0], [0.0, 0.0, 1.0]),
            [1.0, 0.0, 0.0]
        );
    }
}
