//! Critical surfaces from Weierstrass-Enneper data.
//!
//! Spacelike surfaces in `R^3` and `L^3` come from complex data, timelike
//! surfaces in `L^3` from split-complex data. Every surface is written as
//! `x = c + 2 Re int phi`, where `phi` is the isotropic integrand built from
//! `(f, g)` or from `F`.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::Cplx;
use crate::jet::Taylor;
use crate::split::Split;
use crate::surface::{SurfaceError, UvRect};
use crate::vec3::{Ambient, V3};

mod generate;
mod named;
mod regularity;

pub use generate::{generate, GeneratedSurface, PathOrder};
pub use named::{gallery_manifest, named_weierstrass, NamedKind, NamedWeierstrass};
pub use regularity::{regularity_check, MaskClause, RegularityReport};

/// Points closer than this to a declared pole or a degenerate locus are
/// rejected or masked.
pub const GUARD_BAND: f64 = 1e-6;

/// Conformal factors below this count as vanishing.
pub const LAMBDA_SQ_FLOOR: f64 = 1e-14;

#[derive(Debug, Error)]
pub enum WeierstrassError {
    #[error("({u}, {v}) lies on a declared pole")]
    OnPole { u: f64, v: f64 },
    #[error("integration path to ({u}, {v}) passes through a declared pole")]
    PathThroughPole { u: f64, v: f64 },
    #[error("({u}, {v}) lies outside the data domain")]
    OutsideDomain { u: f64, v: f64 },
    #[error("{0}")]
    AmbientMismatch(&'static str),
    #[error("data is not of the second kind")]
    NotTypeII,
    #[error("surface is not regular at ({u}, {v})")]
    Irregular { u: f64, v: f64 },
    #[error("unknown named surface '{0}'")]
    UnknownKind(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

pub type Result<T> = std::result::Result<T, WeierstrassError>;

/// Target space and causal character of the generated surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeierstrassAmbient {
    R3,
    L3Spacelike,
    L3Timelike,
}

impl WeierstrassAmbient {
    pub fn ambient(self) -> Ambient {
        match self {
            WeierstrassAmbient::R3 => Ambient::Euclidean3,
            _ => Ambient::Lorentz3,
        }
    }

    pub fn is_split(self) -> bool {
        self == WeierstrassAmbient::L3Timelike
    }
}

pub type ComplexFn = Arc<dyn Fn(Cplx<Taylor>) -> Cplx<Taylor> + Send + Sync>;
pub type SplitFn = Arc<dyn Fn(Split<Taylor>) -> Split<Taylor> + Send + Sync>;

/// A holomorphic (or split-holomorphic) map, evaluated on Taylor-valued
/// arguments so the derivative comes for free.
#[derive(Clone)]
pub enum Holomorphic {
    Complex(ComplexFn),
    Split(SplitFn),
}

impl Holomorphic {
    pub fn complex(f: impl Fn(Cplx<Taylor>) -> Cplx<Taylor> + Send + Sync + 'static) -> Self {
        Holomorphic::Complex(Arc::new(f))
    }

    pub fn split(f: impl Fn(Split<Taylor>) -> Split<Taylor> + Send + Sync + 'static) -> Self {
        Holomorphic::Split(Arc::new(f))
    }

    fn is_split(&self) -> bool {
        matches!(self, Holomorphic::Split(_))
    }
}

impl std::fmt::Debug for Holomorphic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(if self.is_split() { "Holomorphic::Split(..)" } else { "Holomorphic::Complex(..)" })
    }
}

#[derive(Clone, Debug)]
pub enum WeierstrassKind {
    TypeI { f: Holomorphic, g: Holomorphic },
    TypeII { big_f: Holomorphic },
}

/// Declared singular set, in domain coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Singularity {
    Point { u: f64, v: f64 },
    /// The two null lines `u - u0 = +-(v - v0)` through a split-complex pole.
    NullLines { u: f64, v: f64 },
}

impl Singularity {
    fn distance(&self, u: f64, v: f64) -> f64 {
        match *self {
            Singularity::Point { u: a, v: b } => (u - a).hypot(v - b),
            Singularity::NullLines { u: a, v: b } => {
                let (du, dv) = (u - a, v - b);
                (du - dv).abs().min((du + dv).abs()) / std::f64::consts::SQRT_2
            }
        }
    }

    /// Whether the axis-aligned segment between two points meets the set.
    fn meets_segment(&self, p: (f64, f64), q: (f64, f64)) -> bool {
        match *self {
            Singularity::Point { u, v } => {
                let (lo_u, hi_u) = (p.0.min(q.0), p.0.max(q.0));
                let (lo_v, hi_v) = (p.1.min(q.1), p.1.max(q.1));
                let cu = u.clamp(lo_u, hi_u);
                let cv = v.clamp(lo_v, hi_v);
                (cu - u).hypot(cv - v) < GUARD_BAND
            }
            Singularity::NullLines { u, v } => {
                let lines = |s: f64, x: (f64, f64)| (x.0 - u) - s * (x.1 - v);
                [1.0, -1.0].iter().any(|&s| {
                    let (a, b) = (lines(s, p), lines(s, q));
                    a * b <= 0.0 || self.distance(p.0, p.1) < GUARD_BAND || self.distance(q.0, q.1) < GUARD_BAND
                })
            }
        }
    }
}

/// Weierstrass-Enneper data on a rectangle of the parameter plane.
///
/// When a chart is present the domain coordinate is `zeta` and the data
/// functions are evaluated at `z = chart(zeta)`; the integrand picks up the
/// factor `chart'(zeta)`.
#[derive(Clone, Debug)]
pub struct WeierstrassData {
    pub kind: WeierstrassKind,
    pub ambient: WeierstrassAmbient,
    pub chart: Option<Holomorphic>,
    pub poles: Vec<Singularity>,
    pub basepoint: (f64, f64),
    pub domain: UvRect,
    pub constants: V3,
    pub description: String,
}

impl WeierstrassData {
    pub fn new(kind: WeierstrassKind, ambient: WeierstrassAmbient, basepoint: (f64, f64), domain: UvRect) -> Result<Self> {
        let split = ambient.is_split();
        let consistent = match &kind {
            WeierstrassKind::TypeI { f, g } => f.is_split() == split && g.is_split() == split,
            WeierstrassKind::TypeII { big_f } => big_f.is_split() == split,
        };
        if !consistent {
            return Err(WeierstrassError::AmbientMismatch(
                "timelike data must be split-complex and spacelike data complex",
            ));
        }
        if !domain.contains(basepoint.0, basepoint.1) {
            return Err(WeierstrassError::OutsideDomain { u: basepoint.0, v: basepoint.1 });
        }
        Ok(WeierstrassData {
            kind,
            ambient,
            chart: None,
            poles: Vec::new(),
            basepoint,
            domain,
            constants: [0.0; 3],
            description: String::new(),
        })
    }

    pub fn with_chart(mut self, chart: Holomorphic) -> Result<Self> {
        if chart.is_split() != self.ambient.is_split() {
            return Err(WeierstrassError::AmbientMismatch("chart must use the same number system as the data"));
        }
        self.chart = Some(chart);
        Ok(self)
    }

    pub fn with_poles(mut self, poles: Vec<Singularity>) -> Result<Self> {
        if poles.iter().any(|p| p.distance(self.basepoint.0, self.basepoint.1) < GUARD_BAND) {
            return Err(WeierstrassError::OnPole { u: self.basepoint.0, v: self.basepoint.1 });
        }
        self.poles = poles;
        Ok(self)
    }

    pub fn with_constants(mut self, c: V3) -> Self {
        self.constants = c;
        self
    }

    pub fn with_description(mut self, d: impl Into<String>) -> Self {
        self.description = d.into();
        self
    }

    pub(crate) fn check_point(&self, u: f64, v: f64) -> Result<()> {
        if !self.domain.contains(u, v) {
            return Err(WeierstrassError::OutsideDomain { u, v });
        }
        if self.poles.iter().any(|p| p.distance(u, v) < GUARD_BAND) {
            return Err(WeierstrassError::OnPole { u, v });
        }
        Ok(())
    }

    pub(crate) fn check_path(&self, corners: &[(f64, f64)]) -> Result<()> {
        let end = corners[corners.len() - 1];
        for w in corners.windows(2) {
            if self.poles.iter().any(|p| p.meets_segment(w[0], w[1])) {
                return Err(WeierstrassError::PathThroughPole { u: end.0, v: end.1 });
            }
        }
        Ok(())
    }
}

/// `C` or `C'` over Taylor coefficients, with `unit^2 = SQUARE`.
pub(crate) trait Algebra:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    const SQUARE: f64;
    fn parts(re: Taylor, im: Taylor) -> Self;
    fn re(self) -> Taylor;
    fn im(self) -> Taylor;

    fn cst(re: f64, im: f64) -> Self {
        Self::parts(Taylor::constant(re), Taylor::constant(im))
    }

    fn unit() -> Self {
        Self::cst(0.0, 1.0)
    }

    fn half(self) -> Self {
        Self::parts(self.re() * 0.5, self.im() * 0.5)
    }

    /// `z z_bar`: `|z|^2` or the Lorentzian norm form.
    fn norm(self) -> Taylor {
        let (a, b) = (self.re(), self.im());
        a * a - b * b * Self::SQUARE
    }

    /// Derivative series in the real direction, which is the algebra
    /// derivative for holomorphic maps.
    fn differentiate(self) -> Self {
        Self::parts(self.re().differentiate(), self.im().differentiate())
    }
}

impl Algebra for Cplx<Taylor> {
    const SQUARE: f64 = -1.0;
    fn parts(re: Taylor, im: Taylor) -> Self {
        Cplx::new(re, im)
    }
    fn re(self) -> Taylor {
        self.re
    }
    fn im(self) -> Taylor {
        self.im
    }
}

impl Algebra for Split<Taylor> {
    const SQUARE: f64 = 1.0;
    fn parts(re: Taylor, im: Taylor) -> Self {
        Split::new(re, im)
    }
    fn re(self) -> Taylor {
        self.re
    }
    fn im(self) -> Taylor {
        self.im
    }
}

/// Data functions and chart derivative at one point, along one real direction.
pub(crate) struct LocalData<Z> {
    pub f: Z,
    pub g: Z,
    pub chart_d: Z,
}

/// Evaluation of the data in a fixed algebra.
pub(crate) trait Evaluate<Z: Algebra> {
    fn local(&self, zeta: Z) -> LocalData<Z>;
}

pub(crate) struct Eval<'a, Z> {
    f: Box<dyn Fn(Z) -> Z + 'a>,
    g: Box<dyn Fn(Z) -> Z + 'a>,
    chart: Option<Box<dyn Fn(Z) -> Z + 'a>>,
}

impl<Z: Algebra> Evaluate<Z> for Eval<'_, Z> {
    fn local(&self, zeta: Z) -> LocalData<Z> {
        let (z, chart_d) = match &self.chart {
            Some(c) => {
                let z = c(zeta);
                (z, z.differentiate())
            }
            None => (zeta, Z::cst(1.0, 0.0)),
        };
        LocalData { f: (self.f)(z), g: (self.g)(z), chart_d }
    }
}

fn pick_complex(h: &Holomorphic) -> Box<dyn Fn(Cplx<Taylor>) -> Cplx<Taylor> + '_> {
    match h {
        Holomorphic::Complex(f) => Box::new(move |z| f(z)),
        Holomorphic::Split(_) => unreachable!("checked at construction"),
    }
}

fn pick_split(h: &Holomorphic) -> Box<dyn Fn(Split<Taylor>) -> Split<Taylor> + '_> {
    match h {
        Holomorphic::Split(f) => Box::new(move |z| f(z)),
        Holomorphic::Complex(_) => unreachable!("checked at construction"),
    }
}

fn build_eval<'a, Z: Algebra + 'a>(
    data: &'a WeierstrassData,
    pick: impl Fn(&'a Holomorphic) -> Box<dyn Fn(Z) -> Z + 'a>,
) -> Eval<'a, Z> {
    let (f, g): (Box<dyn Fn(Z) -> Z + 'a>, Box<dyn Fn(Z) -> Z + 'a>) = match &data.kind {
        WeierstrassKind::TypeI { f, g } => (pick(f), pick(g)),
        WeierstrassKind::TypeII { big_f } => (pick(big_f), Box::new(|z| z)),
    };
    let chart = data.chart.as_ref().map(&pick);
    Eval { f, g, chart }
}

pub(crate) fn complex_eval(data: &WeierstrassData) -> Eval<'_, Cplx<Taylor>> {
    build_eval(data, pick_complex)
}

pub(crate) fn split_eval(data: &WeierstrassData) -> Eval<'_, Split<Taylor>> {
    build_eval(data, pick_split)
}

/// The isotropic integrand with respect to the domain coordinate.
pub(crate) fn integrand<Z: Algebra>(ambient: WeierstrassAmbient, d: &LocalData<Z>) -> [Z; 3] {
    let one = Z::cst(1.0, 0.0);
    let g2 = d.g * d.g;
    let (f, g, k) = (d.f, d.g, d.chart_d);
    let phi = match ambient {
        WeierstrassAmbient::R3 => [(f * (one - g2)).half(), (Z::unit() * f * (one + g2)).half(), f * g],
        WeierstrassAmbient::L3Spacelike => [(f * (one + g2)).half(), (Z::unit() * f * (one - g2)).half(), -(f * g)],
        WeierstrassAmbient::L3Timelike => [(f * (one - g2)).half(), f * g, (f * (one + g2)).half()],
    };
    [phi[0] * k, phi[1] * k, phi[2] * k]
}

/// The domain coordinate as a Taylor-valued algebra element, moving along
/// `u` (`along_v = false`) or `v`.
pub(crate) fn coordinate<Z: Algebra>(u: f64, v: f64, along_v: bool) -> Z {
    if along_v {
        Z::parts(Taylor::constant(u), Taylor::variable(v))
    } else {
        Z::parts(Taylor::variable(u), Taylor::constant(v))
    }
}

/// Closed-form Gaussian curvature of spacelike data of the second kind.
pub fn type_ii_gaussian_curvature(data: &WeierstrassData, u: f64, v: f64) -> Result<f64> {
    if data.chart.is_some() || !matches!(data.kind, WeierstrassKind::TypeII { .. }) {
        return Err(WeierstrassError::NotTypeII);
    }
    let nu = match data.ambient {
        WeierstrassAmbient::R3 => 0,
        WeierstrassAmbient::L3Spacelike => 1,
        WeierstrassAmbient::L3Timelike => {
            return Err(WeierstrassError::AmbientMismatch("the closed curvature formula is for spacelike data"))
        }
    };
    data.check_point(u, v)?;
    let local = complex_eval(data).local(coordinate(u, v, false));
    let f_sq = local.f.norm().c[0];
    let parity = if nu == 0 { 1.0 } else { -1.0 };
    let r2 = u * u + v * v;
    let denom = f_sq * (parity + r2).powi(4);
    if f_sq < LAMBDA_SQ_FLOOR || (parity + r2).abs() < GUARD_BAND {
        return Err(WeierstrassError::Irregular { u, v });
    }
    Ok(-parity * 4.0 / denom)
}
