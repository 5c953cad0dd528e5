//! Intrinsic geometry of two-dimensional metrics: Christoffel symbols,
//! geodesics, Fermi charts and curvature of `ds^2 = e du^2 + G dv^2`.

use std::cell::RefCell;
use std::sync::Arc;

use serde::Serialize;

use super::{SurfaceError, SurfaceModel, UvRect};
use crate::jet::{Jet2, Scalar};
use crate::ode::rk4_step;

/// Metric coefficients and their first partials at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricJet {
    pub g: [[f64; 2]; 2],
    /// `dg[k][i][j]` is the partial of `g_ij` along coordinate `k`.
    pub dg: [[[f64; 2]; 2]; 2],
}

impl MetricJet {
    pub fn det(&self) -> f64 {
        self.g[0][0] * self.g[1][1] - self.g[0][1] * self.g[1][0]
    }

    pub fn inverse(&self) -> [[f64; 2]; 2] {
        let d = self.det();
        [[self.g[1][1] / d, -self.g[0][1] / d], [-self.g[1][0] / d, self.g[0][0] / d]]
    }

    pub fn dot(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let g = self.g;
        a[0] * (g[0][0] * b[0] + g[0][1] * b[1]) + a[1] * (g[1][0] * b[0] + g[1][1] * b[1])
    }
}

type MetricEval = dyn Fn(f64, f64) -> Result<MetricJet, SurfaceError> + Send + Sync;

/// A two-dimensional metric `g_ij(u, v)` of index `nu`.
#[derive(Clone)]
pub struct MetricPatch {
    eval: Arc<MetricEval>,
    domain: UvRect,
    nu: usize,
}

impl std::fmt::Debug for MetricPatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetricPatch").field("domain", &self.domain).field("nu", &self.nu).finish_non_exhaustive()
    }
}

impl MetricPatch {
    /// Metric from closed-form `(g11, g12, g22)`.
    pub fn from_components(
        nu: usize,
        domain: UvRect,
        g: impl Fn(Jet2, Jet2) -> [Jet2; 3] + Send + Sync + 'static,
    ) -> Self {
        let eval = move |u: f64, v: f64| {
            let [a, b, c] = g(Jet2::var_u(u), Jet2::var_v(v));
            Ok(MetricJet {
                g: [[a.val, b.val], [b.val, c.val]],
                dg: [[[a.du, b.du], [b.du, c.du]], [[a.dv, b.dv], [b.dv, c.dv]]],
            })
        };
        MetricPatch { eval: Arc::new(eval), domain, nu }
    }

    /// Induced metric of a surface; the index is read off at the centre of
    /// the parameter rectangle.
    pub fn from_surface(m: &SurfaceModel) -> Result<Self, SurfaceError> {
        let amb = m.ambient();
        let surface = m.clone();
        let eval = move |u: f64, v: f64| {
            let j = surface.jet(u, v)?;
            let d = |a, b| amb.dot(a, b);
            let (e, f, g) = (d(j.du, j.du), d(j.du, j.dv), d(j.dv, j.dv));
            let eu = 2.0 * d(j.duu, j.du);
            let ev = 2.0 * d(j.duv, j.du);
            let fu = d(j.duu, j.dv) + d(j.du, j.duv);
            let fv = d(j.duv, j.dv) + d(j.du, j.dvv);
            let gu = 2.0 * d(j.duv, j.dv);
            let gv = 2.0 * d(j.dvv, j.dv);
            Ok(MetricJet { g: [[e, f], [f, g]], dg: [[[eu, fu], [fu, gu]], [[ev, fv], [fv, gv]]] })
        };
        let domain = m.domain();
        let centre = eval(0.5 * (domain.u0 + domain.u1), 0.5 * (domain.v0 + domain.v1))?;
        let nu = match (centre.det() > 0.0, centre.g[0][0] > 0.0) {
            (true, true) => 0,
            (false, _) => 1,
            (true, false) => 2,
        };
        Ok(MetricPatch { eval: Arc::new(eval), domain, nu })
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn domain(&self) -> UvRect {
        self.domain
    }

    pub fn at(&self, u: f64, v: f64) -> Result<MetricJet, SurfaceError> {
        if !self.domain.contains(u, v) {
            return Err(SurfaceError::OutsideDomain { u, v });
        }
        let m = (self.eval)(u, v)?;
        let scale = m.g.iter().flatten().map(|x| x * x).sum::<f64>();
        if m.det().abs() <= 1e-12 * scale.max(1e-300) {
            return Err(SurfaceError::MetricDegenerate { u, v });
        }
        Ok(m)
    }

    fn parity(&self) -> f64 {
        if self.nu % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// `gamma[k][i][j]`, the Christoffel symbol of the second kind.
pub fn christoffel(p: &MetricPatch, u: f64, v: f64) -> Result<[[[f64; 2]; 2]; 2], SurfaceError> {
    let m = p.at(u, v)?;
    Ok(christoffel_of(&m))
}

fn christoffel_of(m: &MetricJet) -> [[[f64; 2]; 2]; 2] {
    let inv = m.inverse();
    let mut gamma = [[[0.0; 2]; 2]; 2];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                gk[i][j] = (0..2)
                    .map(|r| 0.5 * inv[k][r] * (m.dg[i][r][j] + m.dg[j][r][i] - m.dg[r][i][j]))
                    .sum();
            }
        }
    }
    gamma
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeodesicStart {
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeodesicSample {
    pub s: f64,
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    /// `<gamma', gamma'>`
    pub speed_sq: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicRun {
    pub samples: Vec<GeodesicSample>,
    /// `max |<gamma', gamma'> - <gamma'(0), gamma'(0)>|`
    pub max_drift: f64,
}

fn geodesic_rhs<'a>(
    p: &'a MetricPatch,
    err: &'a RefCell<Option<SurfaceError>>,
) -> impl Fn(f64, &[f64; 4]) -> [f64; 4] + 'a {
    move |_, y| match p.at(y[0], y[1]) {
        Ok(m) => {
            let g = christoffel_of(&m);
            let vel = [y[2], y[3]];
            let acc = |k: usize| -> f64 {
                -(0..2).map(|i| (0..2).map(|j| g[k][i][j] * vel[i] * vel[j]).sum::<f64>()).sum::<f64>()
            };
            [y[2], y[3], acc(0), acc(1)]
        }
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            [0.0; 4]
        }
    }
}

fn integrate(p: &MetricPatch, y0: [f64; 4], h: f64, steps: usize) -> Result<Vec<[f64; 4]>, SurfaceError> {
    let err = RefCell::new(None);
    let rhs = geodesic_rhs(p, &err);
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push(y);
    for k in 0..steps {
        y = rk4_step(&rhs, k as f64 * h, &y, h);
        if let Some(e) = err.borrow_mut().take() {
            return Err(e);
        }
        out.push(y);
    }
    Ok(out)
}

/// RK4 integration of the geodesic equations with step `h`.
pub fn christoffel_geodesics(
    p: &MetricPatch,
    start: GeodesicStart,
    h: f64,
    steps: usize,
) -> Result<GeodesicRun, SurfaceError> {
    if !(h.is_finite() && h != 0.0) {
        return Err(SurfaceError::InvalidParameters(format!("step must be nonzero, got {h}")));
    }
    let states = integrate(p, [start.u, start.v, start.du, start.dv], h, steps)?;
    let mut samples = Vec::with_capacity(states.len());
    for (k, y) in states.iter().enumerate() {
        let m = p.at(y[0], y[1])?;
        samples.push(GeodesicSample {
            s: k as f64 * h,
            u: y[0],
            v: y[1],
            du: y[2],
            dv: y[3],
            speed_sq: m.dot([y[2], y[3]], [y[2], y[3]]),
        });
    }
    let q0 = samples[0].speed_sq;
    let max_drift = samples.iter().map(|s| (s.speed_sq - q0).abs()).fold(0.0, f64::max);
    Ok(GeodesicRun { samples, max_drift })
}

/// Numerically built Fermi chart `x(u, v) = gamma_v(u)` around a base
/// geodesic, with `gamma_v` the geodesic leaving `gamma(v)` orthogonally.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FermiChart {
    pub nu: usize,
    pub eps_gamma: i8,
    pub u_grid: Vec<f64>,
    pub v_grid: Vec<f64>,
    /// Patch coordinates of `x(u, v)`, indexed `[iv][iu]`.
    pub points: Vec<Vec<[f64; 2]>>,
    /// `(E, F, G)` of the chart, indexed `[iv][iu]`.
    pub metric: Vec<Vec<[f64; 3]>>,
    pub max_abs_f: f64,
    /// `max |E - (-1)^nu eps_gamma|`
    pub max_e_error: f64,
    /// `max |G_u(0, v)|`
    pub max_boundary_gu: f64,
}

impl FermiChart {
    pub fn g(&self, iv: usize, iu: usize) -> f64 {
        self.metric[iv][iu][2]
    }
}

const FERMI_SUBSTEP: f64 = 5e-3;
const FERMI_DV: f64 = 1e-5;
const FERMI_CONDITION: f64 = 1e6;

fn advance(p: &MetricPatch, y: [f64; 4], dist: f64) -> Result<[f64; 4], SurfaceError> {
    if dist == 0.0 {
        return Ok(y);
    }
    let n = (dist.abs() / FERMI_SUBSTEP).ceil().max(1.0) as usize;
    Ok(*integrate(p, y, dist / n as f64, n)?.last().expect("non-empty"))
}

fn unit_normal(p: &MetricPatch, y: [f64; 4]) -> Result<[f64; 2], SurfaceError> {
    let m = p.at(y[0], y[1])?;
    let w = [m.g[0][0] * y[2] + m.g[0][1] * y[3], m.g[1][0] * y[2] + m.g[1][1] * y[3]];
    let n = [-w[1], w[0]];
    let q = m.dot(n, n);
    if q.abs() <= 1e-14 {
        return Err(SurfaceError::MetricDegenerate { u: y[0], v: y[1] });
    }
    let s = 1.0 / q.abs().sqrt();
    // Keep (gamma', n) positively oriented in the coordinate plane.
    let sign = if y[2] * n[1] - y[3] * n[0] >= 0.0 { 1.0 } else { -1.0 };
    Ok([sign * s * n[0], sign * s * n[1]])
}

/// Orthogonal geodesic through `base`, sampled at `offsets` (which must be
/// sorted and contain `0`).
fn transversal(p: &MetricPatch, base: [f64; 4], offsets: &[f64]) -> Result<Vec<[f64; 4]>, SurfaceError> {
    let n = unit_normal(p, base)?;
    let y0 = [base[0], base[1], n[0], n[1]];
    let mut out = vec![[0.0; 4]; offsets.len()];
    let zero = offsets.iter().position(|&x| x == 0.0).expect("offsets contain 0");
    out[zero] = y0;
    let mut y = y0;
    let mut at = 0.0;
    for k in zero + 1..offsets.len() {
        y = advance(p, y, offsets[k] - at)?;
        at = offsets[k];
        out[k] = y;
    }
    let (mut y, mut at) = (y0, 0.0);
    for k in (0..zero).rev() {
        y = advance(p, y, offsets[k] - at)?;
        at = offsets[k];
        out[k] = y;
    }
    Ok(out)
}

/// Fermi chart of half-width `width` around the base geodesic from `start`,
/// which must have unit speed, over `length` of its parameter.
pub fn fermi_chart(
    p: &MetricPatch,
    start: GeodesicStart,
    length: f64,
    nv: usize,
    width: f64,
    nu_half: usize,
) -> Result<FermiChart, SurfaceError> {
    let m0 = p.at(start.u, start.v)?;
    let speed_sq = m0.dot([start.du, start.dv], [start.du, start.dv]);
    if (speed_sq.abs() - 1.0).abs() > 1e-9 {
        return Err(SurfaceError::BadBaseGeodesic { speed_sq });
    }
    let eps_gamma: i8 = if speed_sq > 0.0 { 1 } else { -1 };
    let e_expected = p.parity() * eps_gamma as f64;
    let u_grid: Vec<f64> = (0..=2 * nu_half).map(|i| -width + width * i as f64 / nu_half as f64).collect();
    let eta = 1e-2f64.min(width / 4.0);
    let mut offsets = u_grid.clone();
    offsets.extend([-2.0 * eta, -eta, eta, 2.0 * eta]);
    offsets.sort_by(f64::total_cmp);
    offsets.dedup();
    let idx = |x: f64| offsets.iter().position(|&o| o == x).expect("offset present");
    let v_grid: Vec<f64> = (0..=nv).map(|i| length * i as f64 / nv as f64).collect();
    let mut base = [start.u, start.v, start.du, start.dv];
    let mut at = 0.0;
    let mut chart = FermiChart {
        nu: p.nu(),
        eps_gamma,
        u_grid: u_grid.clone(),
        v_grid: v_grid.clone(),
        points: Vec::new(),
        metric: Vec::new(),
        max_abs_f: 0.0,
        max_e_error: 0.0,
        max_boundary_gu: 0.0,
    };
    for &v in &v_grid {
        base = advance(p, base, v - at)?;
        at = v;
        let here = transversal(p, base, &offsets)?;
        let plus = transversal(p, advance(p, base, FERMI_DV)?, &offsets)?;
        let minus = transversal(p, advance(p, base, -FERMI_DV)?, &offsets)?;
        let g_at = |k: usize| -> Result<([f64; 3], f64, f64), SurfaceError> {
            let y = here[k];
            let m = p.at(y[0], y[1])?;
            let xu = [y[2], y[3]];
            let xv = [(plus[k][0] - minus[k][0]) / (2.0 * FERMI_DV), (plus[k][1] - minus[k][1]) / (2.0 * FERMI_DV)];
            let efg = [m.dot(xu, xu), m.dot(xu, xv), m.dot(xv, xv)];
            Ok((efg, condition(efg), xu[0] * xv[1] - xu[1] * xv[0]))
        };
        let orientation = g_at(idx(0.0))?.2.signum();
        let mut row_pts = Vec::with_capacity(u_grid.len());
        let mut row_metric = Vec::with_capacity(u_grid.len());
        for &u in &u_grid {
            let k = idx(u);
            let (efg, cond, jac) = g_at(k)?;
            if !(cond < FERMI_CONDITION) || jac.signum() != orientation {
                return Err(SurfaceError::ChartFold { distance: u.abs() });
            }
            chart.max_abs_f = chart.max_abs_f.max(efg[1].abs());
            chart.max_e_error = chart.max_e_error.max((efg[0] - e_expected).abs());
            row_pts.push([here[k][0], here[k][1]]);
            row_metric.push(efg);
        }
        let gs: Vec<f64> = [-2.0 * eta, -eta, eta, 2.0 * eta]
            .iter()
            .map(|&o| g_at(idx(o)).map(|x| x.0[2]))
            .collect::<Result<_, _>>()?;
        let gu = (gs[0] - 8.0 * gs[1] + 8.0 * gs[2] - gs[3]) / (12.0 * eta);
        chart.max_boundary_gu = chart.max_boundary_gu.max(gu.abs());
        chart.points.push(row_pts);
        chart.metric.push(row_metric);
    }
    Ok(chart)
}

/// Condition number of the chart Jacobian measured in the metric,
/// `sqrt(|l_max| / |l_min|)` for the eigenvalues of the Gram matrix.
fn condition(efg: [f64; 3]) -> f64 {
    let [e, f, g] = efg;
    let mean = 0.5 * (e + g);
    let rad = (0.25 * (e - g).powi(2) + f * f).sqrt();
    let (a, b) = ((mean + rad).abs(), (mean - rad).abs());
    let (lo, hi) = (a.min(b), a.max(b));
    if lo == 0.0 {
        return f64::INFINITY;
    }
    (hi / lo).sqrt()
}

/// Gaussian curvature of `ds^2 = (-1)^nu eps_gamma du^2 + G dv^2`.
pub fn curvature_from_g(
    g: impl Fn(Jet2, Jet2) -> Jet2,
    nu: usize,
    eps_gamma: i8,
    u: f64,
    v: f64,
) -> Result<f64, SurfaceError> {
    let gj = g(Jet2::var_u(u), Jet2::constant(v));
    if gj.val.abs() <= 1e-12 || gj.val.signum() != eps_gamma as f64 {
        return Err(SurfaceError::GCrossesZero { u });
    }
    let abs = if gj.val < 0.0 { -gj } else { gj };
    let root = abs.sqrt();
    let parity = if nu % 2 == 0 { 1.0 } else { -1.0 };
    Ok(-parity * eps_gamma as f64 * root.duu / root.val)
}

/// Closed-form `G` of a Fermi metric with constant curvature and the
/// boundary data `G(0, v) = eps_gamma`, `G_u(0, v) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ConstantCurvatureG {
    /// `G = sign`
    Affine { sign: f64 },
    /// `G = sign cos^2(a u)`
    Cos { sign: f64, a: f64 },
    /// `G = sign cosh^2(a u)`
    Cosh { sign: f64, a: f64 },
}

impl ConstantCurvatureG {
    pub fn eval<S: Scalar>(&self, u: S) -> S {
        match *self {
            ConstantCurvatureG::Affine { sign } => S::cst(sign) + u * 0.0,
            ConstantCurvatureG::Cos { sign, a } => {
                let c = (u * a).cos();
                c * c * sign
            }
            ConstantCurvatureG::Cosh { sign, a } => {
                let c = (u * a).cosh();
                c * c * sign
            }
        }
    }

    pub fn label(&self) -> String {
        let s = |sign: f64| if sign < 0.0 { "-" } else { "" };
        match *self {
            ConstantCurvatureG::Affine { sign } => format!("{}1", s(sign)),
            ConstantCurvatureG::Cos { sign, a } => format!("{}cos^2({a} u)", s(sign)),
            ConstantCurvatureG::Cosh { sign, a } => format!("{}cosh^2({a} u)", s(sign)),
        }
    }
}

pub fn constant_curvature_g(k: f64, nu: usize, eps_gamma: i8) -> ConstantCurvatureG {
    let parity = if nu % 2 == 0 { 1.0 } else { -1.0 };
    let sign = eps_gamma as f64;
    let c = parity * sign * k;
    if c > 0.0 {
        ConstantCurvatureG::Cos { sign, a: c.sqrt() }
    } else if c < 0.0 {
        ConstantCurvatureG::Cosh { sign, a: (-c).sqrt() }
    } else {
        ConstantCurvatureG::Affine { sign }
    }
}

type GField = dyn Fn(Jet2, Jet2) -> Jet2 + Send + Sync;

/// `H(x, y) = (G(u, v) - u^2) / u^4` in polar coordinates `x = u cos v`,
/// `y = u sin v` of a Riemannian Fermi metric `du^2 + G dv^2`.
#[derive(Clone)]
pub struct RiemannField {
    g: Arc<GField>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RiemannLimit {
    pub h0: f64,
    pub minus_three_h0: f64,
    pub k_origin: f64,
    pub agrees: bool,
}

pub fn riemann_formula_patch(g: impl Fn(Jet2, Jet2) -> Jet2 + Send + Sync + 'static) -> RiemannField {
    RiemannField { g: Arc::new(g) }
}

impl RiemannField {
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, SurfaceError> {
        let u = x.hypot(y);
        if u == 0.0 {
            return Err(SurfaceError::AtOrigin);
        }
        let v = y.atan2(x);
        let g = (self.g)(Jet2::constant(u), Jet2::constant(v)).val;
        if g <= 0.0 {
            return Err(SurfaceError::GCrossesZero { u });
        }
        Ok((g - u * u) / (u * u * u * u))
    }

    fn ring_mean(&self, r: f64) -> Result<f64, SurfaceError> {
        let n = 8;
        let mut acc = 0.0;
        for i in 0..n {
            let th = std::f64::consts::TAU * i as f64 / n as f64;
            acc += self.eval(r * th.cos(), r * th.sin())?;
        }
        Ok(acc / n as f64)
    }

    /// Richardson-extrapolated `H(0, 0)` compared with the curvature at the
    /// origin, within `tol`.
    pub fn origin_limit(&self, tol: f64) -> Result<RiemannLimit, SurfaceError> {
        let r = 0.08;
        let hs = [self.ring_mean(r)?, self.ring_mean(r / 2.0)?, self.ring_mean(r / 4.0)?];
        let r1 = [(4.0 * hs[1] - hs[0]) / 3.0, (4.0 * hs[2] - hs[1]) / 3.0];
        let h0 = (16.0 * r1[1] - r1[0]) / 15.0;
        let g = self.g.clone();
        let k_origin = curvature_from_g(move |u, v| g(u, v), 0, 1, 1e-3, 0.0)?;
        Ok(RiemannLimit { h0, minus_three_h0: -3.0 * h0, k_origin, agrees: (-3.0 * h0 - k_origin).abs() <= tol })
    }
}
