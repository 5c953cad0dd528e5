//! Causal precedence and hyperbolic angles in `L^n`.

use serde::Serialize;

use super::{inner, CausalClass, LorentzError, Vector, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeOrientation {
    Future,
    Past,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CausalRelations {
    /// `p << q`: `q - p` timelike and future-directed.
    pub chron: bool,
    /// `p <= q`: `q - p` causal and future-directed.
    pub causal: bool,
    pub separation: Option<CausalClass>,
    pub time_orientation: Option<TimeOrientation>,
    /// Angle between `q - p` and `e_n` when `q - p` is timelike.
    pub hyperbolic_angle: Option<f64>,
    /// Lorentz factor `cosh` of that angle.
    pub gamma: Option<f64>,
}

fn check_lorentz(v: &Vector) -> Result<(), LorentzError> {
    let sig = v.sig();
    if sig.nu() != 1 {
        return Err(LorentzError::SignatureMismatch { left: super::Signature::lorentz(sig.n()), right: sig });
    }
    Ok(())
}

/// Orientation of a non-spacelike vector relative to `e_n`; `None` for
/// spacelike or zero vectors.
pub fn time_orientation(v: &Vector, tol: f64) -> Result<Option<TimeOrientation>, LorentzError> {
    check_lorentz(v)?;
    if v.is_zero() {
        return Ok(None);
    }
    let class = super::causal_character(v, tol)?.class;
    if class == CausalClass::Spacelike {
        return Ok(None);
    }
    let en = Vector::basis(v.sig(), v.sig().n() - 1);
    Ok(Some(if inner(v, &en)? < 0.0 { TimeOrientation::Future } else { TimeOrientation::Past }))
}

/// Hyperbolic angle between two timelike vectors in the same time cone.
pub fn hyperbolic_angle(u: &Vector, v: &Vector) -> Result<f64, LorentzError> {
    check_lorentz(u)?;
    let uu = inner(u, u)?;
    let vv = inner(v, v)?;
    let uv = inner(u, v)?;
    if uu >= 0.0 || vv >= 0.0 {
        return Err(LorentzError::NotHyperbolic("hyperbolic angle needs timelike vectors".into()));
    }
    if uv >= 0.0 {
        return Err(LorentzError::NotHyperbolic("vectors lie in opposite time cones".into()));
    }
    let c = -uv / (uu * vv).sqrt();
    Ok(c.max(1.0).acosh())
}

pub fn causal_relations(p: &Vector, q: &Vector) -> Result<CausalRelations, LorentzError> {
    check_lorentz(p)?;
    let d = q.sub(p)?;
    let mut rel = CausalRelations {
        chron: false,
        causal: false,
        separation: None,
        time_orientation: None,
        hyperbolic_angle: None,
        gamma: None,
    };
    if d.is_zero() {
        return Ok(rel);
    }
    let class = super::causal_character(&d, DEFAULT_TOL)?.class;
    let orient = time_orientation(&d, DEFAULT_TOL)?;
    rel.separation = Some(class);
    rel.time_orientation = orient;
    let future = orient == Some(TimeOrientation::Future);
    rel.chron = future && class == CausalClass::Timelike;
    rel.causal = future;
    if class == CausalClass::Timelike {
        let en = Vector::basis(d.sig(), d.sig().n() - 1);
        let oriented = if future { d.clone() } else { d.scaled(-1.0) };
        let phi = hyperbolic_angle(&oriented, &en)?;
        rel.hyperbolic_angle = Some(phi);
        rel.gamma = Some(phi.cosh());
    }
    Ok(rel)
}
