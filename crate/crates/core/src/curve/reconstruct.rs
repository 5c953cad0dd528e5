//! Curves from their invariants by integrating the frame equations.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::CurveError;
use crate::ode;
use crate::vec3::{self, Ambient, V3};

/// Scalar function of the curve parameter.
#[derive(Clone)]
pub struct Profile {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    label: String,
}

impl Profile {
    pub fn constant(v: f64) -> Self {
        Profile { f: Arc::new(move |_| v), label: format!("const:{v}") }
    }

    /// `a + b t`
    pub fn linear(a: f64, b: f64) -> Self {
        Profile { f: Arc::new(move |t| a + b * t), label: format!("linear:{a},{b}") }
    }

    pub fn from_fn(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Profile { f: Arc::new(f), label: label.into() }
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[derive(Clone, Debug)]
pub enum ReconstructionKind {
    Admissible { kappa: Profile, tau: Profile },
    Lightlike { ctorsion: Profile },
    SemiLightlike { ctorsion: Profile },
}

#[derive(Clone, Debug)]
pub struct ReconstructionSpec {
    pub kind: ReconstructionKind,
    pub ambient: Ambient,
    pub initial_point: V3,
    /// `(T, N, B)` at `start`.
    pub initial_frame: [V3; 3],
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReconstructionSample {
    pub param: f64,
    pub point: V3,
    pub frame: [V3; 3],
    /// `kappa` or the pseudo-torsion.
    pub first_invariant: f64,
    /// `tau`, zero for Cartan kinds.
    pub second_invariant: f64,
}

/// Deviation of `(<T,T>, <N,N>, <B,B>, <T,N>, <T,B>, <N,B>)` from the
/// initial values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DriftReport {
    pub initial_products: [f64; 6],
    pub max_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reconstruction {
    pub samples: Vec<ReconstructionSample>,
    pub drift: DriftReport,
    pub step: f64,
}

fn products(amb: Ambient, f: &[V3; 3]) -> [f64; 6] {
    let [t, n, b] = *f;
    [amb.dot(t, t), amb.dot(n, n), amb.dot(b, b), amb.dot(t, n), amb.dot(t, b), amb.dot(n, b)]
}

const FRAME_TOL: f64 = 1e-9;

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= FRAME_TOL * (1.0 + b.abs())
}

fn unit_indicator(x: f64) -> Option<f64> {
    if near(x, 1.0) {
        Some(1.0)
    } else if near(x, -1.0) {
        Some(-1.0)
    } else {
        None
    }
}

fn validate(spec: &ReconstructionSpec) -> Result<(f64, f64), CurveError> {
    let amb = spec.ambient;
    let f = &spec.initial_frame;
    let p = products(amb, f);
    let det = vec3::det3(f[0], f[1], f[2]);
    let bad = |m: &str| Err(CurveError::InvalidFrame(m.to_string()));
    if !(det > 0.0) {
        return bad("frame is not positively oriented");
    }
    match &spec.kind {
        ReconstructionKind::Admissible { .. } => {
            let (Some(e), Some(en)) = (unit_indicator(p[0]), unit_indicator(p[1])) else {
                return bad("T and N must be unit and non-lightlike");
            };
            if !near(p[2], amb.parity() * e * en) {
                return bad("<B,B> must equal (-1)^nu eps eps_N");
            }
            if !(near(p[3], 0.0) && near(p[4], 0.0) && near(p[5], 0.0)) {
                return bad("frame is not orthogonal");
            }
            if !near(det, 1.0) {
                return bad("frame determinant must be 1");
            }
            Ok((e, en))
        }
        ReconstructionKind::Lightlike { .. } | ReconstructionKind::SemiLightlike { .. } => {
            if amb != Ambient::Lorentz3 {
                return bad("Cartan frames live in L^3");
            }
            let (eps, eta) = match spec.kind {
                ReconstructionKind::Lightlike { .. } => (0.0, 1.0),
                _ => (1.0, 0.0),
            };
            let want = [eps, eta, 0.0, 0.0, -eta, -eps];
            if p.iter().zip(want).any(|(a, b)| !near(*a, b)) {
                return bad("frame violates the Cartan conditions");
            }
            Ok((eps, eta))
        }
    }
}

fn unpack(y: &[f64; 12]) -> [V3; 4] {
    std::array::from_fn(|k| [y[3 * k], y[3 * k + 1], y[3 * k + 2]])
}

fn pack(v: [V3; 4]) -> [f64; 12] {
    std::array::from_fn(|i| v[i / 3][i % 3])
}

pub fn reconstruct_curve(spec: &ReconstructionSpec) -> Result<Reconstruction, CurveError> {
    if !(spec.step > 0.0) {
        return Err(CurveError::InvalidStep(spec.step));
    }
    let (i1, i2) = validate(spec)?;
    let amb = spec.ambient;
    let length = spec.end - spec.start;
    let steps = (length.abs() / spec.step).round().max(1.0) as usize;
    let h = length / steps as f64;
    let nu_sign = amb.parity();

    let rhs = |t: f64, y: &[f64; 12]| -> [f64; 12] {
        let [tv, nv, bv, _] = unpack(y);
        let (dt, dn, db) = match &spec.kind {
            ReconstructionKind::Admissible { kappa, tau } => {
                let (k, ta) = (kappa.eval(t), tau.eval(t));
                let (e, en) = (i1, i2);
                (
                    vec3::scale(k, nv),
                    vec3::axpy(vec3::scale(-e * en * k, tv), ta, bv),
                    vec3::scale(-nu_sign * e * ta, nv),
                )
            }
            ReconstructionKind::Lightlike { ctorsion } => {
                let c = ctorsion.eval(t);
                (nv, vec3::axpy(bv, c, tv), vec3::scale(c, nv))
            }
            ReconstructionKind::SemiLightlike { ctorsion } => {
                let c = ctorsion.eval(t);
                (nv, vec3::scale(c, nv), vec3::axpy(tv, -c, bv))
            }
        };
        pack([dt, dn, db, tv])
    };
    let invariants = |t: f64| match &spec.kind {
        ReconstructionKind::Admissible { kappa, tau } => (kappa.eval(t), tau.eval(t)),
        ReconstructionKind::Lightlike { ctorsion } | ReconstructionKind::SemiLightlike { ctorsion } => {
            (ctorsion.eval(t), 0.0)
        }
    };

    let [t0, n0, b0] = spec.initial_frame;
    let y0 = pack([t0, n0, b0, spec.initial_point]);
    let traj = ode::rk4_trajectory(rhs, spec.start, y0, h, steps);
    let initial = products(amb, &spec.initial_frame);
    let mut max_drift = 0.0f64;
    let samples = traj
        .iter()
        .map(|(t, y)| {
            let [tv, nv, bv, p] = unpack(y);
            let frame = [tv, nv, bv];
            let pr = products(amb, &frame);
            for k in 0..6 {
                max_drift = max_drift.max((pr[k] - initial[k]).abs());
            }
            let (a, b) = invariants(*t);
            ReconstructionSample { param: *t, point: p, frame, first_invariant: a, second_invariant: b }
        })
        .collect();
    Ok(Reconstruction { samples, drift: DriftReport { initial_products: initial, max_drift }, step: h })
}
