//! Surfaces of revolution about the `z`-axis.

use std::f64::consts::TAU;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{curvatures, fundamental_forms, Jet2x2, SurfaceClass, SurfaceError, SurfaceModel, UvRect};
use crate::curve::{CurveError, CurveModel};
use crate::lorentz::CausalClass;
use crate::vec3::Ambient;

/// Orbit type of the rotation about the `z`-axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RevolutionKind {
    /// `(f cos v, f sin v, g)`, for ambients where `e1`, `e2` have equal sign.
    Circular,
    /// `(f sinh v, f cosh v, g)`, for ambients where `e1`, `e2` have opposite
    /// signs.
    Hyperbolic,
}

fn check_kind(amb: Ambient, kind: RevolutionKind) -> Result<(), SurfaceError> {
    let w = amb.weights();
    let same = w[0] == w[1];
    match (kind, same) {
        (RevolutionKind::Circular, true) | (RevolutionKind::Hyperbolic, false) => Ok(()),
        _ => Err(SurfaceError::InvalidParameters(format!("{kind:?} rotation is not an isometry of {amb:?}"))),
    }
}

/// Surface swept by the profile `(f(u), 0, g(u))`. The `v`-range defaults to
/// `(0, 2 pi)` for circular and `(-2, 2)` for hyperbolic orbits.
pub fn revolution_surface(profile: &CurveModel, kind: RevolutionKind) -> Result<SurfaceModel, SurfaceError> {
    let amb = profile.ambient();
    check_kind(amb, kind)?;
    let (lo, hi) = profile.domain();
    for u in profile.sample_params(64).into_iter().chain([lo, hi]) {
        let p = profile.position(u)?;
        if p[1].abs() > 1e-12 * (1.0 + p[0].abs() + p[2].abs()) {
            return Err(SurfaceError::ProfileOffPlane { u });
        }
        if !(p[0] > 0.0) {
            return Err(SurfaceError::ProfileOnAxis { u });
        }
    }
    let base = profile.clone();
    let eval = move |u: f64, v: f64| -> Result<Jet2x2, SurfaceError> {
        let j = base.jet(u)?;
        let (f, f1, f2) = (j.value[0], j.d1[0], j.d2[0]);
        let (g, g1, g2) = (j.value[2], j.d1[2], j.d2[2]);
        let (a, b, da, db) = match kind {
            RevolutionKind::Circular => (v.cos(), v.sin(), -v.sin(), v.cos()),
            RevolutionKind::Hyperbolic => (v.sinh(), v.cosh(), v.cosh(), v.sinh()),
        };
        // Second v-derivative of the orbit is -(a, b) or +(a, b).
        let s = if kind == RevolutionKind::Circular { -1.0 } else { 1.0 };
        Ok(Jet2x2 {
            value: [f * a, f * b, g],
            du: [f1 * a, f1 * b, g1],
            dv: [f * da, f * db, 0.0],
            duu: [f2 * a, f2 * b, g2],
            duv: [f1 * da, f1 * db, 0.0],
            dvv: [s * f * a, s * f * b, 0.0],
        })
    };
    let (v0, v1) = match kind {
        RevolutionKind::Circular => (0.0, TAU),
        RevolutionKind::Hyperbolic => (-2.0, 2.0),
    };
    let mut m = SurfaceModel::from_raw(amb, UvRect::new(lo, hi, v0, v1)?, Arc::new(eval));
    if let Some(l) = profile.label() {
        m = m.with_label(format!("revolution of {l}"));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantKCheck {
    pub eps_alpha: i8,
    /// `max |f'' + eps_alpha K f|`
    pub ode_residual: f64,
    /// `max |g'^2 - expected|` for the height relation.
    pub height_residual: f64,
    /// `max |K_numeric - K|` on the sampled meridian.
    pub curvature_error: f64,
}

/// Checks the constant-curvature relations for a unit-speed profile.
pub fn revolution_constant_k_check(
    profile: &CurveModel,
    kind: RevolutionKind,
    k: f64,
    samples: usize,
) -> Result<ConstantKCheck, SurfaceError> {
    let surface = revolution_surface(profile, kind)?;
    let amb = profile.ambient();
    let v_mid = 0.5 * (surface.domain().v0 + surface.domain().v1);
    let tol = 1e-8 * profile.tolerance_factor();
    let mut eps_alpha = None;
    let mut out = ConstantKCheck { eps_alpha: 0, ode_residual: 0.0, height_residual: 0.0, curvature_error: 0.0 };
    for u in profile.sample_params(samples) {
        let j = profile.jet(u)?;
        let forms = fundamental_forms(&surface, u, v_mid)?;
        let speed = forms.first[0];
        if (speed.abs() - 1.0).abs() > tol {
            return Err(CurveError::NotUnitSpeed { t: u, speed_sq: speed }.into());
        }
        let eps = if speed > 0.0 { 1i8 } else { -1 };
        if *eps_alpha.get_or_insert(eps) != eps {
            return Err(SurfaceError::InvalidParameters("profile changes causal character".into()));
        }
        let (f, f1, f2, g1) = (j.value[0], j.d1[0], j.d2[0], j.d1[2]);
        let e = eps as f64;
        let expected = match kind {
            RevolutionKind::Circular => amb.parity() * (e - f1 * f1),
            RevolutionKind::Hyperbolic => -e - f1 * f1,
        };
        if expected < -tol {
            return Err(SurfaceError::NegativeIntegrand { u });
        }
        out.ode_residual = out.ode_residual.max((f2 + e * k * f).abs());
        out.height_residual = out.height_residual.max((g1 * g1 - expected).abs());
        let rep = curvatures(&surface, u, v_mid)?;
        out.curvature_error = out.curvature_error.max((rep.k - k).abs());
    }
    out.eps_alpha = eps_alpha.unwrap_or(0);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RevolutionCausality {
    pub params: Vec<f64>,
    /// Causal class of the meridian `v = 0` tangent.
    pub profile_classes: Vec<CausalClass>,
    pub surface_classes: Vec<SurfaceClass>,
    pub matches: bool,
    /// Parameters where the meridian is lightlike while both neighbours are
    /// not.
    pub isolated_lightlike: Vec<f64>,
}

/// Compares the causal character of the surface with that of its meridian.
pub fn revolution_causality(
    profile: &CurveModel,
    kind: RevolutionKind,
    samples: usize,
) -> Result<RevolutionCausality, SurfaceError> {
    let surface = revolution_surface(profile, kind)?;
    let amb = profile.ambient();
    let v_probe = if surface.domain().contains(surface.domain().u0, 0.0) { 0.0 } else { surface.domain().v0 };
    let params = profile.sample_params(samples);
    let mut profile_classes = Vec::with_capacity(samples);
    let mut surface_classes = Vec::with_capacity(samples);
    for &u in &params {
        let j = surface.jet(u, v_probe)?;
        profile_classes.push(amb.classify(j.du, 1e-9 * profile.tolerance_factor()));
        surface_classes.push(fundamental_forms(&surface, u, v_probe)?.class);
    }
    let matches = profile_classes.iter().zip(&surface_classes).all(|(p, s)| {
        matches!(
            (p, s),
            (CausalClass::Spacelike, SurfaceClass::Spacelike)
                | (CausalClass::Timelike, SurfaceClass::Timelike)
                | (CausalClass::Lightlike, SurfaceClass::Lightlike)
        )
    });
    let isolated_lightlike = (0..samples)
        .filter(|&i| {
            profile_classes[i] == CausalClass::Lightlike
                && (i == 0 || profile_classes[i - 1] != CausalClass::Lightlike)
                && (i + 1 == samples || profile_classes[i + 1] != CausalClass::Lightlike)
        })
        .map(|i| params[i])
        .collect();
    Ok(RevolutionCausality { params, profile_classes, surface_classes, matches, isolated_lightlike })
}
