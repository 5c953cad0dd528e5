//! Unit-speed and arc-photon reparametrization.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{scalar_sqrt_abs, tdot, tderiv, CurveError, CurveEval, CurveModel};
use crate::jet::{Scalar, Taylor};
use crate::quad;
use crate::vec3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReparamMode {
    UnitSpeed,
    ArcPhoton,
}

const PANEL: f64 = 0.25;

/// Cumulative new parameter `s(t)` at panel knots, measured from `t_ref`.
pub(crate) struct ArcTable {
    mode: ReparamMode,
    knots: Vec<f64>,
    cum: Vec<f64>,
}

fn speed_series(base: &CurveModel, mode: ReparamMode, t: f64) -> Result<Taylor, CurveError> {
    let amb = base.ambient();
    let a = base.series(Taylor::variable(t))?;
    let d1 = tderiv(&a);
    let mut sigma = match mode {
        ReparamMode::UnitSpeed => scalar_sqrt_abs(tdot(amb, &d1, &d1)),
        ReparamMode::ArcPhoton => {
            let d2 = tderiv(&d1);
            let q = tdot(amb, &d2, &d2);
            let q = if q.value() < 0.0 { -q } else { q };
            q.powf(0.25)
        }
    };
    let valid = match mode {
        ReparamMode::UnitSpeed => 4,
        ReparamMode::ArcPhoton => 3,
    };
    for k in valid..sigma.c.len() {
        sigma.c[k] = 0.0;
    }
    Ok(sigma)
}

fn check_point(base: &CurveModel, mode: ReparamMode, t: f64) -> Result<f64, CurveError> {
    let amb = base.ambient();
    let tol = 1e-9 * base.tolerance_factor();
    let j = base.jet(t)?;
    let d1 = j.d1;
    let n1 = vec3::dot_e(d1, d1);
    let q1 = amb.dot(d1, d1);
    match mode {
        ReparamMode::UnitSpeed => {
            if q1.abs() <= tol * n1 || n1 == 0.0 {
                return Err(CurveError::Reparametrization { t, reason: "tangent is lightlike".into() });
            }
            Ok(q1.abs().sqrt())
        }
        ReparamMode::ArcPhoton => {
            if q1.abs() > tol.max(1e-8) * n1.max(1.0) {
                return Err(CurveError::Reparametrization { t, reason: "curve is not lightlike".into() });
            }
            let q2 = amb.dot(j.d2, j.d2);
            if q2 <= tol * vec3::dot_e(j.d2, j.d2) || q2 <= 0.0 {
                return Err(CurveError::Reparametrization { t, reason: "<a'', a''> vanishes".into() });
            }
            Ok(q2.powf(0.25))
        }
    }
}

impl ArcTable {
    fn build(base: &CurveModel, mode: ReparamMode) -> Result<(ArcTable, f64), CurveError> {
        let (lo, hi) = base.domain();
        let t_ref = 0.0f64.clamp(lo, hi);
        let panels = ((hi - lo) / PANEL).ceil().max(1.0) as usize;
        let h = (hi - lo) / panels as f64;
        let knots: Vec<f64> = (0..=panels).map(|k| lo + k as f64 * h).collect();
        let err = std::cell::RefCell::new(None);
        let speed = |t: f64| match check_point(base, mode, t) {
            Ok(s) => s,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                0.0
            }
        };
        let mut cum = vec![0.0; knots.len()];
        for k in 0..panels {
            cum[k + 1] = cum[k] + quad::gauss_legendre(&speed, knots[k], knots[k + 1]);
        }
        let ends = [speed(lo), speed(hi)];
        let err = err.into_inner();
        if let Some(e) = err {
            return Err(e);
        }
        if ends.iter().any(|s| *s <= 0.0) {
            return Err(CurveError::NonInvertibleArclength("zero speed at an endpoint".into()));
        }
        let table = ArcTable { mode, knots, cum };
        let shift = table.s_of(base, t_ref)?;
        let cum = table.cum.iter().map(|c| c - shift).collect();
        Ok((ArcTable { cum, ..table }, t_ref))
    }

    fn s_of(&self, base: &CurveModel, t: f64) -> Result<f64, CurveError> {
        let k = self.panel(t);
        let partial = quad::gauss_legendre(
            |x| speed_series(base, self.mode, x).map(|s| s.c[0]).unwrap_or(f64::NAN),
            self.knots[k],
            t,
        );
        if !partial.is_finite() {
            return Err(CurveError::NonInvertibleArclength(format!("speed undefined near t = {t}")));
        }
        Ok(self.cum[k] + partial)
    }

    fn panel(&self, t: f64) -> usize {
        let n = self.knots.len() - 1;
        match self.knots.binary_search_by(|k| k.total_cmp(&t)) {
            Ok(i) => i.min(n - 1),
            Err(i) => i.saturating_sub(1).min(n - 1),
        }
    }

    /// Old parameter `t` with `s(t) = s`.
    fn invert(&self, base: &CurveModel, s: f64) -> Result<f64, CurveError> {
        let n = self.knots.len() - 1;
        let k = match self.cum.binary_search_by(|c| c.total_cmp(&s)) {
            Ok(i) => i.min(n - 1),
            Err(i) => i.saturating_sub(1).min(n - 1),
        };
        let (mut a, mut b) = (self.knots[k], self.knots[k + 1]);
        let span = self.cum[k + 1] - self.cum[k];
        if span <= 0.0 {
            return Err(CurveError::NonInvertibleArclength("flat panel".into()));
        }
        let mut t = a + (b - a) * ((s - self.cum[k]) / span).clamp(0.0, 1.0);
        for _ in 0..60 {
            let f = self.s_of(base, t)? - s;
            if f > 0.0 {
                b = t;
            } else {
                a = t;
            }
            let d = speed_series(base, self.mode, t)?.c[0];
            let mut next = t - f / d;
            if !(next > a && next < b) || !next.is_finite() {
                next = 0.5 * (a + b);
            }
            if (next - t).abs() <= 1e-15 * (1.0 + t.abs()) {
                t = next;
                break;
            }
            t = next;
        }
        Ok(t)
    }

    /// Series of the old parameter as a function of the new one around `s`.
    pub(crate) fn inverse_series(&self, base: &CurveModel, s: f64) -> Result<Taylor, CurveError> {
        let t = self.invert(base, s)?;
        let sigma = speed_series(base, self.mode, t)?;
        let mut primitive = Taylor::constant(0.0);
        for k in 0..sigma.c.len() - 1 {
            primitive.c[k + 1] = sigma.c[k] / (k + 1) as f64;
        }
        let mut inc = primitive
            .revert()
            .ok_or_else(|| CurveError::NonInvertibleArclength(format!("zero speed at t = {t}")))?;
        inc.c[0] = t;
        Ok(inc)
    }
}

/// Reparametrize by arclength (`UnitSpeed`) or so that `<a'', a''> = 1`
/// (`ArcPhoton`). The new parameter vanishes at the old parameter `0`, or at
/// the nearest domain end when `0` lies outside.
pub fn reparametrize(c: &CurveModel, mode: ReparamMode) -> Result<CurveModel, CurveError> {
    let (table, _) = ArcTable::build(c, mode)?;
    let lo = *table.cum.first().expect("non-empty");
    let hi = *table.cum.last().expect("non-empty");
    let base = Arc::new(c.clone());
    let label = c.label().map(|l| format!("{l} ({mode:?})"));
    let mut out = CurveModel::from_eval(CurveEval::Reparam { base, table: Arc::new(table) }, c.ambient(), (lo, hi));
    if let Some(l) = label {
        out = out.with_label(l);
    }
    Ok(out)
}

/// New parameter as a function of the old one, for diagnostics.
pub fn new_parameter(c: &CurveModel, mode: ReparamMode, t: f64) -> Result<f64, CurveError> {
    let (table, _) = ArcTable::build(c, mode)?;
    table.s_of(c, t)
}
