//! Surfaces in three-dimensional pseudo-Euclidean ambients and intrinsic
//! two-dimensional metrics.

mod forms;
pub mod gallery;
mod intrinsic;
mod revolution;
mod scroll;
mod umbilic;

pub use forms::{
    curvature_grid, curvatures, fundamental_forms, weingarten_asymmetry, CurvatureReport, Diagonalizability,
    FundamentalForms, GridSample, Principal, SurfaceClass,
};
pub use gallery::{named_surface, NamedSurface};
pub use intrinsic::{
    christoffel, christoffel_geodesics, constant_curvature_g, curvature_from_g, fermi_chart, riemann_formula_patch,
    ConstantCurvatureG, FermiChart, GeodesicRun, GeodesicSample, GeodesicStart, MetricJet, MetricPatch, RiemannField,
    RiemannLimit,
};
pub use revolution::{revolution_causality, revolution_constant_k_check, revolution_surface, ConstantKCheck,
    RevolutionCausality, RevolutionKind};
pub use scroll::{b_scroll, BScroll, BScrollSample};
pub use umbilic::{umbilic_surface_check, UmbilicKind, UmbilicReport};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::CurveError;
use crate::jet::Jet2;
use crate::vec3::{Ambient, V3};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("({u}, {v}) lies outside the parameter rectangle")]
    OutsideDomain { u: f64, v: f64 },
    #[error("surface is not regular at ({u}, {v})")]
    NotRegular { u: f64, v: f64 },
    #[error("tangent plane is degenerate at ({u}, {v})")]
    Degenerate { u: f64, v: f64 },
    #[error("invalid surface parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("profile touches the rotation axis at u = {u}")]
    ProfileOnAxis { u: f64 },
    #[error("profile leaves the plane y = 0 at u = {u}")]
    ProfileOffPlane { u: f64 },
    #[error("integrand of the height function is negative at u = {u}")]
    NegativeIntegrand { u: f64 },
    #[error("metric degenerates at ({u}, {v})")]
    MetricDegenerate { u: f64, v: f64 },
    #[error("Fermi chart folds at distance {distance} from the base geodesic")]
    ChartFold { distance: f64 },
    #[error("base geodesic must be unit speed and non-lightlike, got <g', g'> = {speed_sq}")]
    BadBaseGeodesic { speed_sq: f64 },
    #[error("G vanishes or has the wrong sign at u = {u}")]
    GCrossesZero { u: f64 },
    #[error("the formula is singular at the origin")]
    AtOrigin,
    #[error("patch is not totally umbilic (residual {residual:e})")]
    NotUmbilic { residual: f64 },
}

/// Position and partial derivatives up to order 2 at one parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct Jet2x2 {
    pub value: V3,
    pub du: V3,
    pub dv: V3,
    pub duu: V3,
    pub duv: V3,
    pub dvv: V3,
}

impl Jet2x2 {
    fn from_components(c: [Jet2; 3]) -> Self {
        let get = |f: fn(&Jet2) -> f64| [f(&c[0]), f(&c[1]), f(&c[2])];
        Jet2x2 {
            value: get(|j| j.val),
            du: get(|j| j.du),
            dv: get(|j| j.dv),
            duu: get(|j| j.duu),
            duv: get(|j| j.duv),
            dvv: get(|j| j.dvv),
        }
    }
}

/// Closed rectangle `[u0, u1] x [v0, v1]` of parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UvRect {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl UvRect {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Result<Self, SurfaceError> {
        if !(u0 < u1 && v0 < v1) {
            return Err(SurfaceError::InvalidParameters(format!("empty rectangle [{u0}, {u1}] x [{v0}, {v1}]")));
        }
        Ok(UvRect { u0, u1, v0, v1 })
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        u >= self.u0 && u <= self.u1 && v >= self.v0 && v <= self.v1
    }

    /// Cell-centred grid of `nu * nv` points, row-major in `v`.
    pub fn grid(&self, nu: usize, nv: usize) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(nu * nv);
        for j in 0..nv {
            for i in 0..nu {
                let u = self.u0 + (self.u1 - self.u0) * (i as f64 + 0.5) / nu as f64;
                let v = self.v0 + (self.v1 - self.v0) * (j as f64 + 0.5) / nv as f64;
                out.push((u, v));
            }
        }
        out
    }

    /// Vertex grid including the boundary, `(nu + 1) * (nv + 1)` points.
    pub fn vertices(&self, nu: usize, nv: usize) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity((nu + 1) * (nv + 1));
        for j in 0..=nv {
            for i in 0..=nu {
                let u = self.u0 + (self.u1 - self.u0) * i as f64 / nu as f64;
                let v = self.v0 + (self.v1 - self.v0) * j as f64 / nv as f64;
                out.push((u.clamp(self.u0, self.u1), v.clamp(self.v0, self.v1)));
            }
        }
        out
    }
}

pub(crate) type Jet2Map = dyn Fn(Jet2, Jet2) -> [Jet2; 3] + Send + Sync;
pub(crate) type RawMap = dyn Fn(f64, f64) -> Result<Jet2x2, SurfaceError> + Send + Sync;

#[derive(Clone)]
enum SurfaceEval {
    Jets(Arc<Jet2Map>),
    BlackBox(Arc<dyn Fn(f64, f64) -> V3 + Send + Sync>),
    Raw(Arc<RawMap>),
}

/// Finite-difference step for black-box surfaces.
pub const BLACK_BOX_STEP: f64 = 2e-3;

/// A parametrised surface `x: U -> R^3_nu`.
#[derive(Clone)]
pub struct SurfaceModel {
    eval: SurfaceEval,
    domain: UvRect,
    ambient: Ambient,
    flip_normal: bool,
    label: Option<String>,
}

impl std::fmt::Debug for SurfaceModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SurfaceModel")
            .field("label", &self.label)
            .field("ambient", &self.ambient)
            .field("domain", &self.domain)
            .field("flip_normal", &self.flip_normal)
            .finish_non_exhaustive()
    }
}

impl SurfaceModel {
    pub fn from_jets(
        ambient: Ambient,
        domain: UvRect,
        f: impl Fn(Jet2, Jet2) -> [Jet2; 3] + Send + Sync + 'static,
    ) -> Self {
        Self::new(SurfaceEval::Jets(Arc::new(f)), ambient, domain)
    }

    /// A surface known only through point evaluations; derivatives come from
    /// Richardson-extrapolated central differences.
    pub fn black_box(ambient: Ambient, domain: UvRect, f: impl Fn(f64, f64) -> V3 + Send + Sync + 'static) -> Self {
        Self::new(SurfaceEval::BlackBox(Arc::new(f)), ambient, domain)
    }

    pub(crate) fn from_raw(ambient: Ambient, domain: UvRect, f: Arc<RawMap>) -> Self {
        Self::new(SurfaceEval::Raw(f), ambient, domain)
    }

    fn new(eval: SurfaceEval, ambient: Ambient, domain: UvRect) -> Self {
        SurfaceModel { eval, domain, ambient, flip_normal: false, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_domain(mut self, domain: UvRect) -> Self {
        self.domain = domain;
        self
    }

    /// Use `-(x_u x x_v)` as the unit normal.
    pub fn with_reversed_normal(mut self, flip: bool) -> Self {
        self.flip_normal = flip;
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn domain(&self) -> UvRect {
        self.domain
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn normal_reversed(&self) -> bool {
        self.flip_normal
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.eval, SurfaceEval::BlackBox(_))
    }

    pub fn tolerance_factor(&self) -> f64 {
        if self.is_exact() {
            1.0
        } else {
            100.0
        }
    }

    pub fn jet(&self, u: f64, v: f64) -> Result<Jet2x2, SurfaceError> {
        if !self.domain.contains(u, v) {
            return Err(SurfaceError::OutsideDomain { u, v });
        }
        match &self.eval {
            SurfaceEval::Jets(f) => Ok(Jet2x2::from_components(f(Jet2::var_u(u), Jet2::var_v(v)))),
            SurfaceEval::BlackBox(f) => Ok(fd_jet(f.as_ref(), u, v)),
            SurfaceEval::Raw(f) => f(u, v),
        }
    }

    pub fn position(&self, u: f64, v: f64) -> Result<V3, SurfaceError> {
        if !self.domain.contains(u, v) {
            return Err(SurfaceError::OutsideDomain { u, v });
        }
        match &self.eval {
            SurfaceEval::Jets(f) => {
                let c = f(Jet2::constant(u), Jet2::constant(v));
                Ok([c[0].val, c[1].val, c[2].val])
            }
            SurfaceEval::BlackBox(f) => Ok(f(u, v)),
            SurfaceEval::Raw(f) => f(u, v).map(|j| j.value),
        }
    }
}

fn fd_jet(f: &(dyn Fn(f64, f64) -> V3 + Send + Sync), u: f64, v: f64) -> Jet2x2 {
    let at = |a: f64, b: f64| f(u + a, v + b);
    let comb = |terms: &[(f64, V3)], d: f64| -> V3 {
        std::array::from_fn(|i| terms.iter().map(|(w, p)| w * p[i]).sum::<f64>() / d)
    };
    let rich = |g: &dyn Fn(f64) -> V3| -> V3 {
        let (a, b) = (g(BLACK_BOX_STEP), g(BLACK_BOX_STEP / 2.0));
        std::array::from_fn(|i| (4.0 * b[i] - a[i]) / 3.0)
    };
    let c = at(0.0, 0.0);
    let du = rich(&|h| comb(&[(1.0, at(h, 0.0)), (-1.0, at(-h, 0.0))], 2.0 * h));
    let dv = rich(&|h| comb(&[(1.0, at(0.0, h)), (-1.0, at(0.0, -h))], 2.0 * h));
    let duu = rich(&|h| comb(&[(1.0, at(h, 0.0)), (-2.0, c), (1.0, at(-h, 0.0))], h * h));
    let dvv = rich(&|h| comb(&[(1.0, at(0.0, h)), (-2.0, c), (1.0, at(0.0, -h))], h * h));
    let duv = rich(&|h| {
        comb(&[(1.0, at(h, h)), (-1.0, at(h, -h)), (-1.0, at(-h, h)), (1.0, at(-h, -h))], 4.0 * h * h)
    });
    Jet2x2 { value: c, du, dv, duu, duv, dvv }
}
