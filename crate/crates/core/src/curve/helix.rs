//! Helix detection and the standard families.

use serde::Serialize;

use super::frame::{cartan_frame_unoriented, CartanKind};
use super::{frenet_apparatus, CurveError, CurveModel};
use crate::lorentz::CausalClass;
use crate::vec3::{self, Ambient, V3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HelixType {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardFamily {
    Beta1,
    Beta2,
    Beta3,
    Beta4,
    Beta5,
    Beta6,
    Gamma1,
    Gamma2,
    Gamma3,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HelixReport {
    pub is_helix: bool,
    /// `tau / kappa` for admissible curves, the pseudo-torsion otherwise,
    /// at the first sample.
    pub invariant: f64,
    /// Largest deviation of the sampled invariant from its first value.
    pub spread: f64,
    pub axis: Option<V3>,
    pub axis_class: Option<CausalClass>,
    pub helix_type: Option<HelixType>,
    pub family: Option<StandardFamily>,
}

const SAMPLES: usize = 33;
const RATIO_TOL: f64 = 1e-8;

fn type_from_axis(amb: Ambient, class: CausalClass) -> Option<HelixType> {
    if amb == Ambient::Euclidean3 {
        return None;
    }
    Some(match class {
        CausalClass::Spacelike => HelixType::Hyperbolic,
        CausalClass::Timelike => HelixType::Elliptic,
        CausalClass::Lightlike => HelixType::Parabolic,
    })
}

/// Standard helix congruent to a unit-speed admissible helix with constant
/// `kappa`, `tau` and the given indicators of tangent and normal.
pub fn standard_family(amb: Ambient, eps: i8, eps_normal: i8, kappa: f64, tau: f64) -> Option<StandardFamily> {
    let tie = (kappa - tau.abs()).abs() <= RATIO_TOL * kappa.max(tau.abs());
    match amb {
        Ambient::Euclidean3 => Some(StandardFamily::Beta1),
        Ambient::Lorentz3 => Some(match (eps, eps_normal) {
            (-1, _) if tie => StandardFamily::Beta5,
            (-1, _) if kappa > tau.abs() => StandardFamily::Beta3,
            (-1, _) => StandardFamily::Beta2,
            (1, -1) => StandardFamily::Beta4,
            (1, _) if tie => StandardFamily::Beta6,
            (1, _) if kappa < tau.abs() => StandardFamily::Beta3,
            (1, _) => StandardFamily::Beta2,
            _ => return None,
        }),
        Ambient::Index2_3 => None,
    }
}

pub fn helix_classify(c: &CurveModel) -> Result<HelixReport, CurveError> {
    let amb = c.ambient();
    let params = c.sample_params(SAMPLES);
    let tol = 1e-9 * c.tolerance_factor();
    let j0 = c.jet(params[0])?;
    let lightlike_tangent = amb.classify(j0.d1, tol) == CausalClass::Lightlike;
    let semi = amb == Ambient::Lorentz3
        && !lightlike_tangent
        && amb.classify(j0.d2, tol) == CausalClass::Lightlike
        && vec3::norm_e(j0.d2) > 1e-12;
    if lightlike_tangent || semi {
        return cartan_helix(c, &params);
    }
    let frames = params.iter().map(|&s| frenet_apparatus(c, s)).collect::<Result<Vec<_>, _>>()?;
    let f0 = frames[0];
    let ratio = f0.tau / f0.kappa;
    let spread = frames.iter().map(|f| (f.tau / f.kappa - ratio).abs()).fold(0.0, f64::max);
    let is_helix = spread <= RATIO_TOL * c.tolerance_factor() * (1.0 + ratio.abs());
    if !is_helix {
        return Ok(HelixReport {
            is_helix,
            invariant: ratio,
            spread,
            axis: None,
            axis_class: None,
            helix_type: None,
            family: None,
        });
    }
    let axis = if f0.tau.abs() <= RATIO_TOL * f0.kappa {
        f0.binormal
    } else {
        let coeff = amb.parity() * f0.eps as f64 * f0.kappa / f0.tau;
        vec3::axpy(f0.tangent, coeff, f0.binormal)
    };
    let class = amb.classify(axis, 1e-9);
    let kappa_const = frames.iter().all(|f| (f.kappa - f0.kappa).abs() <= RATIO_TOL * f0.kappa * c.tolerance_factor());
    let family = if kappa_const {
        standard_family(amb, f0.eps, f0.eps_normal, f0.kappa, f0.tau)
    } else {
        None
    };
    Ok(HelixReport {
        is_helix,
        invariant: ratio,
        spread,
        axis: Some(axis),
        axis_class: Some(class),
        helix_type: type_from_axis(amb, class),
        family,
    })
}

fn cartan_helix(c: &CurveModel, params: &[f64]) -> Result<HelixReport, CurveError> {
    let frames = params.iter().map(|&t| cartan_frame_unoriented(c, t)).collect::<Result<Vec<_>, _>>()?;
    let f0 = frames[0];
    let ct = f0.pseudo_torsion;
    let spread = frames.iter().map(|f| (f.pseudo_torsion - ct).abs()).fold(0.0, f64::max);
    let tol = RATIO_TOL * c.tolerance_factor();
    if f0.kind == CartanKind::SemiLightlike {
        let axis = f0.normal;
        return Ok(HelixReport {
            is_helix: true,
            invariant: ct,
            spread,
            axis: Some(axis),
            axis_class: Some(CausalClass::Lightlike),
            helix_type: Some(HelixType::Parabolic),
            family: None,
        });
    }
    let is_helix = spread <= tol * (1.0 + ct.abs());
    if !is_helix {
        return Ok(HelixReport {
            is_helix,
            invariant: ct,
            spread,
            axis: None,
            axis_class: None,
            helix_type: None,
            family: None,
        });
    }
    let (axis, helix_type, family) = if ct.abs() <= tol {
        (f0.binormal, HelixType::Parabolic, StandardFamily::Gamma3)
    } else if ct > 0.0 {
        (vec3::axpy(f0.tangent, -1.0 / ct, f0.binormal), HelixType::Hyperbolic, StandardFamily::Gamma1)
    } else {
        (vec3::axpy(f0.tangent, -1.0 / ct, f0.binormal), HelixType::Elliptic, StandardFamily::Gamma2)
    };
    Ok(HelixReport {
        is_helix,
        invariant: ct,
        spread,
        axis: Some(axis),
        axis_class: Some(Ambient::Lorentz3.classify(axis, 1e-9)),
        helix_type: Some(helix_type),
        family: Some(family),
    })
}
