//! Frenet and Cartan trihedra.

use serde::Serialize;

use super::{CurveError, CurveModel};
use crate::lorentz::{CausalClass, DEFAULT_TOL};
use crate::vec3::{self, Ambient, V3};

/// Frenet apparatus of a unit-speed admissible curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrenetData {
    pub s: f64,
    pub tangent: V3,
    pub normal: V3,
    pub binormal: V3,
    pub kappa: f64,
    pub tau: f64,
    /// Indicator of the tangent.
    pub eps: i8,
    /// Coindicator: indicator of the osculating plane.
    pub eta: i8,
    pub eps_normal: i8,
    pub eps_binormal: i8,
    /// Largest mismatch in the derivative equations for `N` and `B`.
    pub residual: f64,
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else {
        -1
    }
}

fn unit_speed_check(c: &CurveModel, s: f64, d1: V3) -> Result<i8, CurveError> {
    let amb = c.ambient();
    let q = amb.dot(d1, d1);
    let tol = DEFAULT_TOL * c.tolerance_factor();
    if vec3::norm_e(d1) <= 1e-12 {
        return Err(CurveError::NotRegular { t: s });
    }
    if amb.classify(d1, tol) == CausalClass::Lightlike {
        return Err(CurveError::LightlikeTangent { t: s });
    }
    if (q.abs() - 1.0).abs() > 1e-8 * c.tolerance_factor() {
        return Err(CurveError::NotUnitSpeed { t: s, speed_sq: q });
    }
    Ok(sign(q))
}

pub fn frenet_apparatus(c: &CurveModel, s: f64) -> Result<FrenetData, CurveError> {
    let amb = c.ambient();
    let j = c.jet(s)?;
    let eps = unit_speed_check(c, s, j.d1)?;
    let tol = DEFAULT_TOL * c.tolerance_factor();
    let n2 = vec3::norm_e(j.d2);
    if n2 <= 1e-12 {
        return Err(CurveError::NotBiregular { t: s });
    }
    let q2 = amb.dot(j.d2, j.d2);
    if q2.abs() <= tol * n2 * n2 {
        return Err(CurveError::DegenerateOsculatingPlane { t: s });
    }
    let kappa = q2.abs().sqrt();
    let eps_n = sign(q2);
    let eps_b = (amb.parity() as i8) * eps * eps_n;
    let (e, en, eb) = (eps as f64, eps_n as f64, eps_b as f64);
    let t = j.d1;
    let n = vec3::scale(1.0 / kappa, j.d2);
    let b = vec3::scale(eb, amb.cross(t, n));
    let tau = eb * amb.dot(j.d3, b) / kappa;

    let dkappa = en * amb.dot(j.d2, j.d3) / kappa;
    let dn = vec3::scale(1.0 / kappa, vec3::axpy(j.d3, -dkappa, n));
    let db = vec3::scale(eb, amb.cross(t, dn));
    let dn_model = vec3::axpy(vec3::scale(-e * en * kappa, t), tau, b);
    let db_model = vec3::scale(-amb.parity() * e * tau, n);
    let residual = vec3::max_abs_diff(dn, dn_model).max(vec3::max_abs_diff(db, db_model));
    Ok(FrenetData {
        s,
        tangent: t,
        normal: n,
        binormal: b,
        kappa,
        tau,
        eps,
        eta: eps * eps_n,
        eps_normal: eps_n,
        eps_binormal: eps_b,
        residual,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CartanKind {
    /// `(eps, eta) = (0, 1)`
    Lightlike,
    /// `(eps, eta) = (1, 0)`
    SemiLightlike,
}

impl CartanKind {
    /// `(eps, eta)`
    pub fn indicators(self) -> (i8, i8) {
        match self {
            CartanKind::Lightlike => (0, 1),
            CartanKind::SemiLightlike => (1, 0),
        }
    }
}

/// Cartan apparatus of a lightlike (arc-photon) or semi-lightlike
/// (unit-speed) curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CartanData {
    /// Parameter at which the frame was computed; negated when `flipped`.
    pub t: f64,
    pub kind: CartanKind,
    pub tangent: V3,
    pub normal: V3,
    pub binormal: V3,
    pub pseudo_torsion: f64,
    pub eps: i8,
    pub eta: i8,
    /// The parameter was reflected to make the frame positive.
    pub flipped: bool,
    pub det: f64,
    /// Mismatch in the derivative equation for `N`.
    pub residual: f64,
}

fn cartan_kind(c: &CurveModel, t: f64, d1: V3, d2: V3) -> Result<CartanKind, CurveError> {
    let amb = c.ambient();
    if amb != Ambient::Lorentz3 {
        return Err(CurveError::NotCartanCurve { t, reason: "Cartan frames live in L^3".into() });
    }
    let f = c.tolerance_factor();
    let (q1, q2) = (amb.dot(d1, d1), amb.dot(d2, d2));
    let (n1, n2) = (vec3::dot_e(d1, d1), vec3::dot_e(d2, d2));
    if n1 <= 1e-24 {
        return Err(CurveError::NotRegular { t });
    }
    let light1 = q1.abs() <= 1e-8 * f * n1.max(1.0);
    let light2 = q2.abs() <= 1e-8 * f * n2.max(1.0);
    if light1 && (q2 - 1.0).abs() <= 1e-8 * f * n2.max(1.0) {
        Ok(CartanKind::Lightlike)
    } else if (q1 - 1.0).abs() <= 1e-8 * f * n1.max(1.0) && light2 && n2 > 1e-24 {
        Ok(CartanKind::SemiLightlike)
    } else {
        Err(CurveError::NotCartanCurve {
            t,
            reason: format!("<a',a'> = {q1:e}, <a'',a''> = {q2:e}; reparametrize first"),
        })
    }
}

/// Lightlike `B` with `<B,T> = -eta` and `<B,N> = -eps`.
fn solve_binormal(t_vec: V3, n_vec: V3, eps: f64, eta: f64, at: f64) -> Result<V3, CurveError> {
    let amb = Ambient::Lorentz3;
    let (a1, a2) = (amb.lower(t_vec), amb.lower(n_vec));
    let g = [[vec3::dot_e(a1, a1), vec3::dot_e(a1, a2)], [vec3::dot_e(a1, a2), vec3::dot_e(a2, a2)]];
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if det.abs() <= 1e-14 * (g[0][0] * g[1][1]).max(1e-300) {
        return Err(CurveError::NoAdmissibleBinormal { t: at });
    }
    let (r1, r2) = (-eta, -eps);
    let y1 = (g[1][1] * r1 - g[0][1] * r2) / det;
    let y2 = (g[0][0] * r2 - g[1][0] * r1) / det;
    let b0 = vec3::add(vec3::scale(y1, a1), vec3::scale(y2, a2));
    let k = amb.cross(t_vec, n_vec);
    let bk = amb.dot(b0, k);
    let kk = amb.dot(k, k);
    let bb = amb.dot(b0, b0);
    let s = if kk.abs() <= 1e-12 * vec3::dot_e(k, k) {
        if bk.abs() <= 1e-14 {
            return Err(CurveError::NoAdmissibleBinormal { t: at });
        }
        -bb / (2.0 * bk)
    } else {
        let disc = bk * bk - kk * bb;
        if disc < 0.0 {
            return Err(CurveError::NoAdmissibleBinormal { t: at });
        }
        let r = disc.sqrt();
        let (s1, s2) = ((-bk + r) / kk, (-bk - r) / kk);
        let pos = |s: f64| vec3::det3(t_vec, n_vec, vec3::axpy(b0, s, k));
        if pos(s1) > pos(s2) {
            s1
        } else {
            s2
        }
    };
    Ok(vec3::axpy(b0, s, k))
}

/// Frame at `t` without any orientation repair; `det` may be negative.
pub fn cartan_frame_unoriented(c: &CurveModel, t: f64) -> Result<CartanData, CurveError> {
    let amb = Ambient::Lorentz3;
    let j = c.jet(t)?;
    let kind = cartan_kind(c, t, j.d1, j.d2)?;
    let (eps, eta) = kind.indicators();
    let (tv, nv) = (j.d1, j.d2);
    let b = solve_binormal(tv, nv, eps as f64, eta as f64, t)?;
    let ct = -amb.dot(j.d3, b);
    let model = match kind {
        CartanKind::Lightlike => vec3::axpy(b, ct, tv),
        CartanKind::SemiLightlike => vec3::scale(ct, nv),
    };
    Ok(CartanData {
        t,
        kind,
        tangent: tv,
        normal: nv,
        binormal: b,
        pseudo_torsion: ct,
        eps,
        eta,
        flipped: false,
        det: vec3::det3(tv, nv, b),
        residual: vec3::max_abs_diff(j.d3, model),
    })
}

/// Cartan apparatus with positive `(T, N, B)`. When the frame at `t` is
/// negative the parameter is reflected and the frame of `s -> alpha(-s)` at
/// `-t` is returned with `flipped` set. Reflection cannot repair lightlike
/// curves, whose orientation is reparametrization invariant; those yield
/// [`CurveError::NoAdmissibleBinormal`].
pub fn cartan_apparatus(c: &CurveModel, t: f64) -> Result<CartanData, CurveError> {
    let data = cartan_frame_unoriented(c, t)?;
    if data.det > 0.0 {
        return Ok(data);
    }
    let reflected = c.reflected();
    let mut flipped = cartan_frame_unoriented(&reflected, -t)?;
    if flipped.det <= 0.0 {
        return Err(CurveError::NoAdmissibleBinormal { t });
    }
    flipped.flipped = true;
    Ok(flipped)
}
