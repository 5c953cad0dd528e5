//! Named closed-form surfaces.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{SurfaceError, SurfaceModel, UvRect};
use crate::jet::{Jet2, Scalar};
use crate::quad::adaptive_simpson;
use crate::vec3::Ambient;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum NamedSurface {
    /// The plane `z = 0`.
    Plane { ambient: Ambient },
    /// Round sphere in `R^3`.
    Sphere { radius: f64 },
    /// Circular cylinder about the `z`-axis.
    Cylinder { ambient: Ambient, radius: f64 },
    /// De Sitter space `S^2_1` with the position vector as normal.
    DeSitter,
    /// Upper sheet of the hyperboloid `H^2` with the position vector as
    /// normal.
    HyperbolicPlane,
    /// Anti-de Sitter space `H^2_1` in `R^3_2`.
    AntiDeSitter,
    /// Surfaces realizing the constant-curvature Fermi metrics; the `u = 0`
    /// curve is spacelike unless `timelike_base`.
    ConstantCurvature { k: i8, ambient: Ambient, timelike_base: bool },
}

fn rect(u0: f64, u1: f64, v0: f64, v1: f64) -> UvRect {
    UvRect::new(u0, u1, v0, v1).expect("static rectangle")
}

/// Jet of `u -> int_0^u h(t) dt` from the integrand and its derivative.
fn primitive(u: Jet2, h: fn(f64) -> f64, dh: fn(f64) -> f64) -> Jet2 {
    let x = u.val;
    let value = adaptive_simpson(h, 0.0, x, 1e-12);
    u.chain(value, h(x), dh(x))
}

fn sqrt_two_minus_cosh_sq(t: f64) -> f64 {
    (2.0 - t.cosh().powi(2)).sqrt()
}

fn d_sqrt_two_minus_cosh_sq(t: f64) -> f64 {
    -t.cosh() * t.sinh() / sqrt_two_minus_cosh_sq(t)
}

fn sqrt_one_plus_sin_sq(t: f64) -> f64 {
    (1.0 + t.sin().powi(2)).sqrt()
}

fn d_sqrt_one_plus_sin_sq(t: f64) -> f64 {
    t.sin() * t.cos() / sqrt_one_plus_sin_sq(t)
}

/// Graph `(u, v, f(u, v))`.
pub fn graph(
    ambient: Ambient,
    domain: UvRect,
    f: impl Fn(Jet2, Jet2) -> Jet2 + Send + Sync + 'static,
) -> SurfaceModel {
    SurfaceModel::from_jets(ambient, domain, move |u, v| [u, v, f(u, v)]).with_label("graph")
}

pub fn named_surface(kind: NamedSurface) -> Result<SurfaceModel, SurfaceError> {
    use NamedSurface::*;
    let bad = |msg: &str| Err(SurfaceError::InvalidParameters(msg.into()));
    let l3 = Ambient::Lorentz3;
    let r32 = Ambient::Index2_3;
    // Acosh of sqrt(2) bounds the domain of the first elliptic integrand.
    let edge = 0.88;
    let m = match kind {
        Plane { ambient } => {
            SurfaceModel::from_jets(ambient, rect(-2.0, 2.0, -2.0, 2.0), |u, v| [u, v, u * 0.0]).with_label("plane")
        }
        Sphere { radius } => {
            if !(radius > 0.0) {
                return bad("radius must be positive");
            }
            SurfaceModel::from_jets(Ambient::Euclidean3, rect(-1.4, 1.4, 0.0, TAU), move |u, v| {
                [u.cos() * v.cos() * radius, u.cos() * v.sin() * radius, u.sin() * radius]
            })
            .with_label("sphere")
        }
        Cylinder { ambient, radius } => {
            if !(radius > 0.0) {
                return bad("radius must be positive");
            }
            if ambient == r32 {
                return bad("circular cylinders need e1, e2 of equal sign");
            }
            SurfaceModel::from_jets(ambient, rect(-2.0, 2.0, 0.0, TAU), move |u, v| {
                [v.cos() * radius, v.sin() * radius, u]
            })
            .with_label("cylinder")
        }
        DeSitter => SurfaceModel::from_jets(l3, rect(-2.0, 2.0, 0.0, TAU), |u, v| {
            [u.cosh() * v.cos(), u.cosh() * v.sin(), u.sinh()]
        })
        .with_reversed_normal(true)
        .with_label("de Sitter"),
        HyperbolicPlane => SurfaceModel::from_jets(l3, rect(0.1, 2.0, 0.0, TAU), |u, v| {
            [u.sinh() * v.cos(), u.sinh() * v.sin(), u.cosh()]
        })
        .with_reversed_normal(true)
        .with_label("hyperbolic plane"),
        AntiDeSitter => SurfaceModel::from_jets(r32, rect(-2.0, 2.0, 0.0, TAU), |u, v| {
            [u.sinh(), u.cosh() * v.cos(), u.cosh() * v.sin()]
        })
        .with_label("anti-de Sitter"),
        ConstantCurvature { k, ambient, timelike_base } => {
            if ambient != l3 && ambient != r32 {
                return bad("constant-curvature realizations live in L^3 or R^3_2");
            }
            let m = match (k, ambient == l3, timelike_base) {
                (1, true, false) => named_surface(DeSitter)?,
                (1, false, false) => SurfaceModel::from_jets(r32, rect(-edge, edge, -2.0, 2.0), |u, v| {
                    [u.cosh() * v.sinh(), u.cosh() * v.cosh(), primitive(u, sqrt_two_minus_cosh_sq, d_sqrt_two_minus_cosh_sq)]
                }),
                (1, true, true) => SurfaceModel::from_jets(l3, rect(-1.4, 1.4, -2.0, 2.0), |u, v| {
                    [u.sin(), u.cos() * v.cosh(), u.cos() * v.sinh()]
                }),
                (1, false, true) => SurfaceModel::from_jets(r32, rect(-1.4, 1.4, 0.0, TAU), |u, v| {
                    [primitive(u, sqrt_one_plus_sin_sq, d_sqrt_one_plus_sin_sq), u.cos() * v.cos(), u.cos() * v.sin()]
                }),
                (-1, true, false) => SurfaceModel::from_jets(l3, rect(-1.4, 1.4, 0.0, TAU), |u, v| {
                    [u.cos() * v.cos(), u.cos() * v.sin(), primitive(u, sqrt_one_plus_sin_sq, d_sqrt_one_plus_sin_sq)]
                }),
                (-1, false, false) => SurfaceModel::from_jets(r32, rect(-1.4, 1.4, -2.0, 2.0), |u, v| {
                    [u.cos() * v.sinh(), u.cos() * v.cosh(), u.sin()]
                }),
                (-1, true, true) => SurfaceModel::from_jets(l3, rect(-edge, edge, -2.0, 2.0), |u, v| {
                    [primitive(u, sqrt_two_minus_cosh_sq, d_sqrt_two_minus_cosh_sq), u.cosh() * v.cosh(), u.cosh() * v.sinh()]
                }),
                (-1, false, true) => SurfaceModel::from_jets(r32, rect(-2.0, 2.0, 0.0, TAU), |u, v| {
                    [u.sinh(), u.cosh() * v.cos(), u.cosh() * v.sin()]
                }),
                _ => return bad("k must be 1 or -1"),
            };
            m.with_label(format!("constant K = {k} in {ambient:?}"))
        }
    };
    Ok(m)
}

