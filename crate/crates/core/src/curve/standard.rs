//! Closed-form helices, horocycles and constant pseudo-torsion curves.

use serde::{Deserialize, Serialize};

use super::{CurveError, CurveModel};
use crate::jet::{Scalar, Taylor};
use crate::vec3::Ambient;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StandardCurve {
    Beta1 { a: f64, b: f64 },
    Beta2 { a: f64, b: f64 },
    Beta3 { a: f64, b: f64 },
    Beta4 { a: f64, b: f64 },
    Beta5 { a: f64 },
    Beta6 { a: f64 },
    Gamma1 { r: f64 },
    Gamma2 { r: f64 },
    Gamma3,
    /// Unit-speed horocycle of the hyperbolic plane at level `c < 0`.
    Horocycle { c: f64 },
    /// Semi-lightlike graph `(s, f, f)` with
    /// `f = (b / ct^2) e^(ct s) + c s + d`.
    ConstantCtorsion { ctorsion: f64, b: f64, c: f64, d: f64 },
}

pub const DEFAULT_DOMAIN: (f64, f64) = (-5.0, 5.0);

fn invalid(msg: impl Into<String>) -> CurveError {
    CurveError::InvalidParameters(msg.into())
}

pub fn standard_curve(kind: StandardCurve) -> Result<CurveModel, CurveError> {
    use StandardCurve::*;
    let l3 = Ambient::Lorentz3;
    let model = match kind {
        Beta1 { a, b } | Beta4 { a, b } => {
            let c = (a * a + b * b).sqrt();
            if c == 0.0 {
                return Err(invalid("a and b cannot both vanish"));
            }
            if matches!(kind, Beta1 { .. }) {
                CurveModel::from_jets(Ambient::Euclidean3, DEFAULT_DOMAIN, move |s: Taylor| {
                    let x = s / c;
                    [x.cos() * a, x.sin() * a, x * b]
                })
            } else {
                CurveModel::from_jets(l3, DEFAULT_DOMAIN, move |s: Taylor| {
                    let x = s / c;
                    [x * b, x.sinh() * a, x.cosh() * a]
                })
            }
        }
        Beta2 { a, b } | Beta3 { a, b } => {
            let c2 = (a * a - b * b).abs();
            if c2 <= 1e-14 * (a * a + b * b) {
                return Err(invalid("a = +-b makes the curve lightlike"));
            }
            let c = c2.sqrt();
            if matches!(kind, Beta2 { .. }) {
                CurveModel::from_jets(l3, DEFAULT_DOMAIN, move |s: Taylor| {
                    let x = s / c;
                    [x.cos() * a, x.sin() * a, x * b]
                })
            } else {
                CurveModel::from_jets(l3, DEFAULT_DOMAIN, move |s: Taylor| {
                    let x = s / c;
                    [x * b, x.cosh() * a, x.sinh() * a]
                })
            }
        }
        Beta5 { a } => CurveModel::from_jets(l3, DEFAULT_DOMAIN, move |s: Taylor| {
            let s2 = s * s;
            let s3 = s2 * s;
            [s2 * (a / 2.0), s3 * (a * a / 6.0), s + s3 * (a * a / 6.0)]
        }),
        Beta6 { a } => CurveModel::from_jets(l3, DEFAULT_DOMAIN, move |s: Taylor| {
            let s2 = s * s;
            let s3 = s2 * s;
            [s2 * (a / 2.0), s - s3 * (a * a / 6.0), -(s3 * (a * a / 6.0))]
        }),
        Gamma1 { r } | Gamma2 { r } => {
            if !(r > 0.0) {
                return Err(invalid("r must be positive"));
            }
            let sr = r.sqrt();
            if matches!(kind, Gamma1 { .. }) {
                CurveModel::from_jets(l3, DEFAULT_DOMAIN, move |p: Taylor| {
                    let x = p / sr;
                    [p * sr, x.cosh() * r, x.sinh() * r]
                })
            } else {
                CurveModel::from_jets(l3, DEFAULT_DOMAIN, move |p: Taylor| {
                    let x = p / sr;
                    [x.cos() * r, x.sin() * r, p * sr]
                })
            }
        }
        Gamma3 => CurveModel::from_jets(l3, DEFAULT_DOMAIN, |p: Taylor| {
            let p2 = p * p;
            let p3 = p2 * p;
            [p3 * (-0.25) + p / 3.0, p2 * 0.5, p3 * (-0.25) - p / 3.0]
        }),
        Horocycle { c } => {
            if !(c < 0.0) {
                return Err(invalid("the horocycle level c must be negative"));
            }
            // Lightlike v = -c (0, 1, 1), w1 = e1, w2 = e3.
            let v = [0.0, -c, -c];
            CurveModel::from_jets(l3, DEFAULT_DOMAIN, move |s: Taylor| {
                let q = s * s * (-1.0 / (2.0 * c));
                [q * v[0] + s, q * v[1], q * v[2] + 1.0]
            })
        }
        ConstantCtorsion { ctorsion, b, c, d } => {
            if ctorsion == 0.0 {
                return Err(invalid("pseudo-torsion must be non-zero"));
            }
            if b == 0.0 {
                return Err(invalid("b must be non-zero"));
            }
            CurveModel::semi_lightlike_graph(DEFAULT_DOMAIN, move |s: Taylor| {
                (s * ctorsion).exp() * (b / (ctorsion * ctorsion)) + s * c + d
            })
        }
    };
    Ok(model.with_label(format!("{kind:?}")))
}
