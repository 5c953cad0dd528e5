//! Split-complex arithmetic and analysis.

mod generalized;
mod number;

pub use generalized::{GeneralizedComplex, SystemClass};
pub use number::{Split, ZERO_DIVISOR_TOL};

use std::sync::Arc;

use serde::Serialize;

use crate::jet::Jet2;
use crate::quad;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum SplitError {
    #[error("{re} + h {im} is a zero divisor")]
    ZeroDivisor { re: f64, im: f64 },
    #[error("point ({x}, {y}) lies outside the domain")]
    OutsideDomain { x: f64, y: f64 },
    #[error("field is not Lorentz-harmonic: residual {residual:e}")]
    NotHarmonic { residual: f64 },
}

/// Closed axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Rect { x0: x0.min(x1), x1: x0.max(x1), y0: y0.min(y1), y1: y0.max(y1) }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }
}

/// Step of the central differences used for black-box functions.
pub const BLACK_BOX_STEP: f64 = 1e-5;

type JetMap = dyn Fn(Split<Jet2>) -> Split<Jet2> + Send + Sync;
type ValueMap = dyn Fn(Split<f64>) -> Split<f64> + Send + Sync;

#[derive(Clone)]
enum Evaluator {
    Jets(Arc<JetMap>),
    BlackBox(Arc<ValueMap>),
}

/// `f(x + h y) = phi(x, y) + h psi(x, y)` with access to partials up to
/// order two.
#[derive(Clone)]
pub struct SplitFunction {
    eval: Evaluator,
    domain: Option<Rect>,
}

impl std::fmt::Debug for SplitFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.eval {
            Evaluator::Jets(_) => "jets",
            Evaluator::BlackBox(_) => "black-box",
        };
        f.debug_struct("SplitFunction").field("kind", &kind).field("domain", &self.domain).finish()
    }
}

/// Real and split parts with their partials at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitJet {
    pub phi: Jet2,
    pub psi: Jet2,
}

impl SplitFunction {
    /// Closed form evaluated on jets, so derivatives are exact.
    pub fn closed(f: impl Fn(Split<Jet2>) -> Split<Jet2> + Send + Sync + 'static) -> Self {
        SplitFunction { eval: Evaluator::Jets(Arc::new(f)), domain: None }
    }

    /// Values only; derivatives come from central differences.
    pub fn black_box(f: impl Fn(Split<f64>) -> Split<f64> + Send + Sync + 'static) -> Self {
        SplitFunction { eval: Evaluator::BlackBox(Arc::new(f)), domain: None }
    }

    pub fn with_domain(mut self, domain: Rect) -> Self {
        self.domain = Some(domain);
        self
    }

    pub fn domain(&self) -> Option<Rect> {
        self.domain
    }

    fn check(&self, w: Split<f64>) -> Result<(), SplitError> {
        match self.domain {
            Some(r) if !r.contains(w.re, w.im) => Err(SplitError::OutsideDomain { x: w.re, y: w.im }),
            _ => Ok(()),
        }
    }

    pub fn value(&self, w: Split<f64>) -> Result<Split<f64>, SplitError> {
        self.check(w)?;
        Ok(match &self.eval {
            Evaluator::Jets(f) => f(Split::new(Jet2::constant(w.re), Jet2::constant(w.im))).value(),
            Evaluator::BlackBox(f) => f(w),
        })
    }

    pub fn jets(&self, w: Split<f64>) -> Result<SplitJet, SplitError> {
        self.check(w)?;
        Ok(match &self.eval {
            Evaluator::Jets(f) => {
                let out = f(Split::new(Jet2::var_u(w.re), Jet2::var_v(w.im)));
                SplitJet { phi: out.re, psi: out.im }
            }
            Evaluator::BlackBox(f) => {
                let s = BLACK_BOX_STEP;
                let at = |dx: f64, dy: f64| f(Split::new(w.re + dx, w.im + dy));
                let c = at(0.0, 0.0);
                let (xp, xm, yp, ym) = (at(s, 0.0), at(-s, 0.0), at(0.0, s), at(0.0, -s));
                let (pp, pm, mp, mm) = (at(s, s), at(s, -s), at(-s, s), at(-s, -s));
                let part = |g: fn(&Split<f64>) -> f64| Jet2 {
                    val: g(&c),
                    du: (g(&xp) - g(&xm)) / (2.0 * s),
                    dv: (g(&yp) - g(&ym)) / (2.0 * s),
                    duu: (g(&xp) - 2.0 * g(&c) + g(&xm)) / (s * s),
                    duv: (g(&pp) - g(&pm) - g(&mp) + g(&mm)) / (4.0 * s * s),
                    dvv: (g(&yp) - 2.0 * g(&c) + g(&ym)) / (s * s),
                };
                SplitJet { phi: part(|z| z.re), psi: part(|z| z.im) }
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SplitDerivative {
    pub dw: Split<f64>,
    pub dwbar: Split<f64>,
    /// `max(|phi_x - psi_y|, |phi_y - psi_x|)`
    pub cr_residual: f64,
    pub dalembertian_phi: f64,
    pub dalembertian_psi: f64,
    pub split_holomorphic: bool,
}

/// Default tolerance on the Euclidean size of `df/dw_bar`.
pub const HOLOMORPHY_TOL: f64 = 1e-8;

pub fn differentiate(f: &SplitFunction, w: Split<f64>, tol: f64) -> Result<SplitDerivative, SplitError> {
    let SplitJet { phi, psi } = f.jets(w)?;
    let dw = Split::new(0.5 * (phi.du + psi.dv), 0.5 * (psi.du + phi.dv));
    let dwbar = Split::new(0.5 * (phi.du - psi.dv), 0.5 * (psi.du - phi.dv));
    let cr_residual = (phi.du - psi.dv).abs().max((phi.dv - psi.du).abs());
    Ok(SplitDerivative {
        dw,
        dwbar,
        cr_residual,
        dalembertian_phi: phi.duu - phi.dvv,
        dalembertian_psi: psi.duu - psi.dvv,
        split_holomorphic: dwbar.euclid() < tol * dw.euclid().max(1.0),
    })
}

/// `4 d/dw_bar d/dw f` assembled from second partials.
pub fn wirtinger_mixed(f: &SplitFunction, w: Split<f64>) -> Result<Split<f64>, SplitError> {
    let SplitJet { phi, psi } = f.jets(w)?;
    // d/dw f = A + h B with A = (phi_x + psi_y)/2, B = (psi_x + phi_y)/2.
    let (ax, ay) = (0.5 * (phi.duu + psi.duv), 0.5 * (phi.duv + psi.dvv));
    let (bx, by) = (0.5 * (psi.duu + phi.duv), 0.5 * (psi.duv + phi.dvv));
    Ok(Split::new(2.0 * (ax - by), 2.0 * (bx - ay)))
}

/// Piecewise-smooth integration path.
#[derive(Clone)]
pub enum SplitPath {
    /// Straight segments through the listed vertices.
    Polyline(Vec<Split<f64>>),
    /// `t -> (gamma(t), gamma'(t))` on `[t0, t1]`, split into `panels`.
    Curve {
        eval: Arc<dyn Fn(f64) -> (Split<f64>, Split<f64>) + Send + Sync>,
        t0: f64,
        t1: f64,
        panels: usize,
    },
}

impl SplitPath {
    /// Counter-clockwise boundary of a rectangle.
    pub fn rectangle(r: Rect) -> Self {
        SplitPath::Polyline(vec![
            Split::new(r.x0, r.y0),
            Split::new(r.x1, r.y0),
            Split::new(r.x1, r.y1),
            Split::new(r.x0, r.y1),
            Split::new(r.x0, r.y0),
        ])
    }

    /// Horizontal leg first, then vertical.
    pub fn l_shaped(from: Split<f64>, to: Split<f64>) -> Self {
        SplitPath::Polyline(vec![from, Split::new(to.re, from.im), to])
    }
}

/// `int_gamma f(w) dw` by 32-point Gauss-Legendre on each segment.
pub fn integrate(f: &SplitFunction, path: &SplitPath) -> Result<Split<f64>, SplitError> {
    let err = std::cell::RefCell::new(None);
    let guarded = |w: Split<f64>| match f.value(w) {
        Ok(v) => v,
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            Split::default()
        }
    };
    let mut total = Split::default();
    match path {
        SplitPath::Polyline(pts) => {
            for seg in pts.windows(2) {
                let (a, b) = (seg[0], seg[1]);
                let d = b - a;
                total = total + quad::gauss_legendre(|t| guarded(a + d * t) * d, 0.0, 1.0);
            }
        }
        SplitPath::Curve { eval, t0, t1, panels } => {
            let n = (*panels).max(1);
            let h = (t1 - t0) / n as f64;
            for k in 0..n {
                let lo = t0 + k as f64 * h;
                let g = |t| {
                    let (p, dp) = eval(t);
                    guarded(p) * dp
                };
                total = total + quad::gauss_legendre(g, lo, lo + h);
            }
        }
    }
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Lorentz-conjugate `psi` of a Lorentz-harmonic `phi`, normalised to vanish
/// at the basepoint.
#[derive(Clone)]
pub struct LorentzConjugate {
    phi: Arc<dyn Fn(Jet2, Jet2) -> Jet2 + Send + Sync>,
    base: (f64, f64),
}

/// Residual bound on the d'Alembertian of `phi` at the basepoint.
pub const HARMONIC_TOL: f64 = 1e-8;

pub fn lorentz_conjugate(
    phi: impl Fn(Jet2, Jet2) -> Jet2 + Send + Sync + 'static,
    base: (f64, f64),
) -> Result<LorentzConjugate, SplitError> {
    let conj = LorentzConjugate { phi: Arc::new(phi), base };
    conj.check_harmonic(base.0, base.1)?;
    Ok(conj)
}

impl LorentzConjugate {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        (self.phi)(Jet2::var_u(x), Jet2::var_v(y))
    }

    fn check_harmonic(&self, x: f64, y: f64) -> Result<(), SplitError> {
        let j = self.jet(x, y);
        let residual = (j.duu - j.dvv).abs();
        if residual > HARMONIC_TOL * (1.0 + j.duu.abs() + j.dvv.abs()) {
            return Err(SplitError::NotHarmonic { residual });
        }
        Ok(())
    }

    /// `psi(x, y) = int phi_y(s, y0) ds + int phi_x(x, t) dt` along the L-path.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, SplitError> {
        self.check_harmonic(x, y)?;
        let (x0, y0) = self.base;
        let horiz = quad::gauss_legendre_composite(|s| self.jet(s, y0).dv, x0, x, 0.25);
        let vert = quad::gauss_legendre_composite(|t| self.jet(x, t).du, y0, y, 0.25);
        Ok(horiz + vert)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_squared_is_one() {
        let h = Split::<f64>::h();
        assert_eq!(h * h, Split::new(1.0, 0.0));
    }

    #[test]
    fn zero_divisor_product() {
        let z = Split::new(1.0, 1.0) * Split::new(1.0, -1.0);
        assert_eq!(z, Split::new(0.0, 0.0));
        assert!(Split::new(2.0, -2.0).inverse().is_err());
    }

    #[test]
    fn conjugate_field_is_w_bar() {
        let f = SplitFunction::closed(|w| w.conj());
        let d = differentiate(&f, Split::new(0.3, 0.1), HOLOMORPHY_TOL).unwrap();
        assert!(!d.split_holomorphic);
        assert!((d.dwbar.re - 1.0).abs() < 1e-15);
    }
}
