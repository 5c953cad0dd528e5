//! Curves in three-dimensional pseudo-Euclidean ambients.

mod frame;
mod helix;
mod reconstruct;
mod reparam;
mod standard;

pub use frame::{cartan_apparatus, cartan_frame_unoriented, frenet_apparatus, CartanData, CartanKind, FrenetData};
pub use helix::{helix_classify, standard_family, HelixReport, HelixType, StandardFamily};
pub use reconstruct::{
    reconstruct_curve, DriftReport, Profile, ReconstructionKind, ReconstructionSample, ReconstructionSpec,
    Reconstruction,
};
pub use reparam::{new_parameter, reparametrize, ReparamMode};
pub use standard::{standard_curve, StandardCurve};

use std::sync::Arc;

use serde::Serialize;

use crate::jet::{Scalar, Taylor};
use crate::lorentz::{CausalClass, DEFAULT_TOL};
use crate::vec3::{self, Ambient, V3};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum CurveError {
    #[error("parameter {t} lies outside the domain ({lo}, {hi})")]
    OutsideDomain { t: f64, lo: f64, hi: f64 },
    #[error("curve is not regular at t = {t}")]
    NotRegular { t: f64 },
    #[error("curve is not unit speed at t = {t}: <a', a'> = {speed_sq}")]
    NotUnitSpeed { t: f64, speed_sq: f64 },
    #[error("curve is not biregular at t = {t}")]
    NotBiregular { t: f64 },
    #[error("tangent is lightlike at t = {t}")]
    LightlikeTangent { t: f64 },
    #[error("osculating plane is degenerate at t = {t}")]
    DegenerateOsculatingPlane { t: f64 },
    #[error("not a lightlike or semi-lightlike curve in Cartan normalisation at t = {t}: {reason}")]
    NotCartanCurve { t: f64, reason: String },
    #[error("no lightlike binormal solves the Cartan conditions at t = {t}")]
    NoAdmissibleBinormal { t: f64 },
    #[error("reparametrization precondition fails at t = {t}: {reason}")]
    Reparametrization { t: f64, reason: String },
    #[error("arclength is not invertible: {0}")]
    NonInvertibleArclength(String),
    #[error("invalid initial frame: {0}")]
    InvalidFrame(String),
    #[error("step must be positive, got {0}")]
    InvalidStep(f64),
    #[error("invalid curve parameters: {0}")]
    InvalidParameters(String),
    #[error("at least two samples are needed, got {0}")]
    TooFewSamples(usize),
}

/// Step of the central differences used for black-box curves.
pub const BLACK_BOX_STEP: f64 = 1e-4;

pub(crate) type TaylorMap = dyn Fn(Taylor) -> [Taylor; 3] + Send + Sync;

#[derive(Clone)]
pub(crate) enum CurveEval {
    Jets(Arc<TaylorMap>),
    BlackBox(Arc<dyn Fn(f64) -> V3 + Send + Sync>),
    Reparam { base: Arc<CurveModel>, table: Arc<reparam::ArcTable> },
    Reflected(Arc<CurveModel>),
}

/// A parametrised curve `I -> R^3_nu` with derivative jets.
#[derive(Clone)]
pub struct CurveModel {
    eval: CurveEval,
    domain: (f64, f64),
    ambient: Ambient,
    label: Option<String>,
}

impl std::fmt::Debug for CurveModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CurveModel")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("ambient", &self.ambient)
            .field("exact", &self.is_exact())
            .finish()
    }
}

/// Position and first four derivatives at a parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveJet {
    pub t: f64,
    pub value: V3,
    pub d1: V3,
    pub d2: V3,
    pub d3: V3,
    pub d4: V3,
}

impl CurveModel {
    /// Closed form evaluated on Taylor series, giving exact derivatives.
    pub fn from_jets(
        ambient: Ambient,
        domain: (f64, f64),
        f: impl Fn(Taylor) -> [Taylor; 3] + Send + Sync + 'static,
    ) -> Self {
        CurveModel { eval: CurveEval::Jets(Arc::new(f)), domain, ambient, label: None }
    }

    /// Values only; derivatives by central differences with step
    /// [`BLACK_BOX_STEP`].
    pub fn black_box(ambient: Ambient, domain: (f64, f64), f: impl Fn(f64) -> V3 + Send + Sync + 'static) -> Self {
        CurveModel { eval: CurveEval::BlackBox(Arc::new(f)), domain, ambient, label: None }
    }

    /// `s -> (s, f(s), f(s))` in `L^3`.
    pub fn semi_lightlike_graph(domain: (f64, f64), f: impl Fn(Taylor) -> Taylor + Send + Sync + 'static) -> Self {
        CurveModel::from_jets(Ambient::Lorentz3, domain, move |s| {
            let y = f(s);
            [s, y, y]
        })
        .with_label("semi-lightlike graph")
    }

    pub(crate) fn from_eval(eval: CurveEval, ambient: Ambient, domain: (f64, f64)) -> Self {
        CurveModel { eval, domain, ambient, label: None }
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = (lo.min(hi), lo.max(hi));
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// False when some layer falls back to finite differences.
    pub fn is_exact(&self) -> bool {
        match &self.eval {
            CurveEval::Jets(_) => true,
            CurveEval::BlackBox(_) => false,
            CurveEval::Reparam { base, .. } | CurveEval::Reflected(base) => base.is_exact(),
        }
    }

    /// Multiplier applied to tolerances for inexact models.
    pub fn tolerance_factor(&self) -> f64 {
        if self.is_exact() {
            1.0
        } else {
            100.0
        }
    }

    /// The same trace traversed backwards: `t -> alpha(-t)`.
    pub fn reflected(&self) -> CurveModel {
        let (lo, hi) = self.domain;
        CurveModel {
            eval: CurveEval::Reflected(Arc::new(self.clone())),
            domain: (-hi, -lo),
            ambient: self.ambient,
            label: self.label.as_ref().map(|l| format!("{l} (reflected)")),
        }
    }

    fn check_domain(&self, t: f64) -> Result<(), CurveError> {
        let (lo, hi) = self.domain;
        if !(t >= lo && t <= hi) {
            return Err(CurveError::OutsideDomain { t, lo, hi });
        }
        Ok(())
    }

    /// Components evaluated on a Taylor argument.
    pub fn series(&self, p: Taylor) -> Result<[Taylor; 3], CurveError> {
        let t = p.c[0];
        self.check_domain(t)?;
        match &self.eval {
            CurveEval::Jets(f) => Ok(f(p)),
            CurveEval::BlackBox(f) => {
                let d = fd_derivatives(f.as_ref(), t);
                Ok(std::array::from_fn(|i| {
                    let s = Taylor::from_derivatives([d[0][i], d[1][i], d[2][i], d[3][i], 0.0]);
                    s.compose_increment(&p)
                }))
            }
            CurveEval::Reparam { base, table } => {
                let q = table.inverse_series(base, t)?.compose_increment(&p);
                base.series(q)
            }
            CurveEval::Reflected(base) => base.series(-p),
        }
    }

    pub fn position(&self, t: f64) -> Result<V3, CurveError> {
        let s = self.series(Taylor::constant(t))?;
        Ok([s[0].c[0], s[1].c[0], s[2].c[0]])
    }

    pub fn jet(&self, t: f64) -> Result<CurveJet, CurveError> {
        let s = self.series(Taylor::variable(t))?;
        let d = |k: usize| [s[0].deriv(k), s[1].deriv(k), s[2].deriv(k)];
        Ok(CurveJet { t, value: d(0), d1: d(1), d2: d(2), d3: d(3), d4: d(4) })
    }

    /// `n` parameters spread over the domain, endpoints excluded.
    pub fn sample_params(&self, n: usize) -> Vec<f64> {
        let (lo, hi) = self.domain;
        (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
    }
}

fn fd_derivatives(f: &(dyn Fn(f64) -> V3 + Send + Sync), t: f64) -> [V3; 4] {
    let h = BLACK_BOX_STEP;
    let (m2, m1, c, p1, p2) = (f(t - 2.0 * h), f(t - h), f(t), f(t + h), f(t + 2.0 * h));
    let d1 = std::array::from_fn(|i| (p1[i] - m1[i]) / (2.0 * h));
    let d2 = std::array::from_fn(|i| (p1[i] - 2.0 * c[i] + m1[i]) / (h * h));
    let d3 = std::array::from_fn(|i| (p2[i] - 2.0 * p1[i] + 2.0 * m1[i] - m2[i]) / (2.0 * h * h * h));
    [c, d1, d2, d3]
}

pub(crate) fn tdot(amb: Ambient, a: &[Taylor; 3], b: &[Taylor; 3]) -> Taylor {
    let w = amb.weights();
    a[0] * b[0] * w[0] + a[1] * b[1] * w[1] + a[2] * b[2] * w[2]
}

pub(crate) fn tderiv(a: &[Taylor; 3]) -> [Taylor; 3] {
    [a[0].differentiate(), a[1].differentiate(), a[2].differentiate()]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveSample {
    pub t: f64,
    pub class: CausalClass,
    /// Causal type of `span(a', a'')`, absent where the two are dependent.
    pub osculating: Option<CausalClass>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveClassification {
    pub samples: Vec<CurveSample>,
    pub constant_class: Option<CausalClass>,
    pub biregular: bool,
    pub admissible: bool,
}

/// Causal type of the plane spanned by `a`, `b` from the sign of its Gram
/// determinant.
pub(crate) fn plane_class(amb: Ambient, a: V3, b: V3, tol: f64) -> CausalClass {
    let g = amb.dot(a, a) * amb.dot(b, b) - amb.dot(a, b).powi(2);
    let scale = vec3::dot_e(a, a) * vec3::dot_e(b, b);
    if g.abs() <= tol * scale {
        CausalClass::Lightlike
    } else if g > 0.0 {
        if amb.dot(a, a) + amb.dot(b, b) > 0.0 {
            CausalClass::Spacelike
        } else {
            CausalClass::Timelike
        }
    } else {
        CausalClass::Timelike
    }
}

pub fn classify_curve(c: &CurveModel, samples: usize) -> Result<CurveClassification, CurveError> {
    if samples < 2 {
        return Err(CurveError::TooFewSamples(samples));
    }
    let tol = DEFAULT_TOL * c.tolerance_factor();
    let amb = c.ambient();
    let mut out = Vec::with_capacity(samples);
    let mut biregular = true;
    let mut admissible = true;
    for t in c.sample_params(samples) {
        let j = c.jet(t)?;
        let n1 = vec3::norm_e(j.d1);
        if n1 <= 1e-12 {
            return Err(CurveError::NotRegular { t });
        }
        let class = amb.classify(j.d1, tol);
        let indep = vec3::norm_e(vec3::cross_e(j.d1, j.d2)) > 1e-8 * n1 * vec3::norm_e(j.d2).max(1e-300);
        let osculating = indep.then(|| plane_class(amb, j.d1, j.d2, tol));
        biregular &= indep;
        admissible &= indep && class != CausalClass::Lightlike && osculating != Some(CausalClass::Lightlike);
        out.push(CurveSample { t, class, osculating });
    }
    let first = out[0].class;
    let constant_class = out.iter().all(|s| s.class == first).then_some(first);
    Ok(CurveClassification { samples: out, constant_class, biregular, admissible })
}

pub(crate) fn scalar_sqrt_abs<T: Scalar>(x: T) -> T {
    if x.value() < 0.0 {
        (-x).sqrt()
    } else {
        x.sqrt()
    }
}
