use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::generate::{corners, integrand_derivatives, PathOrder};
use super::{
    complex_eval, coordinate, split_eval, Algebra, Evaluate, WeierstrassAmbient, WeierstrassData, GUARD_BAND,
    LAMBDA_SQ_FLOOR,
};
use crate::jet::Taylor;
use crate::lorentz::DEFAULT_TOL;
use crate::vec3;

/// Which regularity clause excluded a grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskClause {
    /// `|g| = 1`, degenerate in `L^3` only.
    UnitCircle,
    /// `f` (or `F`) vanishes.
    FVanishes,
    /// `g` takes a real split-complex value.
    GReal,
    /// `f` (or `F`) is a zero divisor.
    ZeroDivisor,
    /// The point or its integration path meets a declared pole.
    Pole,
    /// `lambda^2` vanishes with no clause above nearby.
    Degenerate,
}

impl MaskClause {
    pub fn describe(self) -> &'static str {
        match self {
            MaskClause::UnitCircle => "|g| = 1",
            MaskClause::FVanishes => "F = 0",
            MaskClause::GReal => "g real",
            MaskClause::ZeroDivisor => "f zero divisor",
            MaskClause::Pole => "declared pole",
            MaskClause::Degenerate => "vanishing conformal factor",
        }
    }
}

/// Mask over a cell-centred grid, row-major in `v`.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub nu: usize,
    pub nv: usize,
    pub points: Vec<(f64, f64)>,
    pub masked: Vec<bool>,
    pub clauses: Vec<Option<MaskClause>>,
    pub lambda_sq: Vec<f64>,
}

impl RegularityReport {
    pub fn masked_count(&self) -> usize {
        self.masked.iter().filter(|m| **m).count()
    }

    pub fn clause_counts(&self) -> BTreeMap<MaskClause, usize> {
        let mut out = BTreeMap::new();
        for c in self.clauses.iter().flatten() {
            *out.entry(*c).or_insert(0) += 1;
        }
        out
    }
}

/// Clause distances `|q| / |grad q|` for each clause of the ambient.
fn clause_distances<Z: Algebra, E: Evaluate<Z>>(eval: &E, amb: WeierstrassAmbient, u: f64, v: f64) -> Vec<(MaskClause, f64)> {
    let along_u = eval.local(coordinate::<Z>(u, v, false));
    let along_v = eval.local(coordinate::<Z>(u, v, true));
    let level = |q: &dyn Fn(&super::LocalData<Z>) -> Taylor| {
        let (a, b) = (q(&along_u), q(&along_v));
        let grad = a.c[1].hypot(b.c[1]);
        if a.c[0] == 0.0 {
            0.0
        } else if grad == 0.0 {
            f64::INFINITY
        } else {
            a.c[0].abs() / grad
        }
    };
    let f_zero = || {
        let (f, df) = (along_u.f, along_u.f.differentiate());
        let m = f.norm().c[0].sqrt();
        let dm = df.norm().c[0].sqrt();
        if m == 0.0 {
            0.0
        } else if dm == 0.0 {
            f64::INFINITY
        } else {
            m / dm
        }
    };
    match amb {
        WeierstrassAmbient::R3 => vec![(MaskClause::FVanishes, f_zero())],
        WeierstrassAmbient::L3Spacelike => vec![
            (MaskClause::FVanishes, f_zero()),
            (MaskClause::UnitCircle, level(&|d| d.g.norm() - 1.0)),
        ],
        WeierstrassAmbient::L3Timelike => vec![
            (MaskClause::ZeroDivisor, level(&|d| d.f.norm())),
            (MaskClause::GReal, level(&|d| d.g.im())),
        ],
    }
}

fn check_point(data: &WeierstrassData, u: f64, v: f64) -> (Option<MaskClause>, f64) {
    if data.check_point(u, v).is_err() || data.check_path(&corners(data, u, v, PathOrder::UFirst)).is_err() {
        return (Some(MaskClause::Pole), f64::NAN);
    }
    let [du, dv, ..] = integrand_derivatives(data, u, v);
    let amb = data.ambient.ambient();
    let lambda_sq = amb.dot(du, du).abs();
    let det = amb.dot(du, du) * amb.dot(dv, dv) - amb.dot(du, dv).powi(2);
    let flat = det.abs() <= DEFAULT_TOL * vec3::dot_e(du, du) * vec3::dot_e(dv, dv);
    let distances = if data.ambient.is_split() {
        clause_distances(&split_eval(data), data.ambient, u, v)
    } else {
        clause_distances(&complex_eval(data), data.ambient, u, v)
    };
    let nearest = distances.iter().copied().min_by(|a, b| a.1.total_cmp(&b.1));
    let clause = match nearest {
        Some((c, d)) if d < GUARD_BAND || d.is_nan() => Some(c),
        Some((c, _)) if lambda_sq < LAMBDA_SQ_FLOOR || flat => Some(c),
        None if lambda_sq < LAMBDA_SQ_FLOOR || flat => Some(MaskClause::Degenerate),
        _ if !lambda_sq.is_finite() => Some(MaskClause::Degenerate),
        _ => None,
    };
    (clause, lambda_sq)
}

/// Mask the grid points where the generated surface fails to be regular.
pub fn regularity_check(data: &WeierstrassData, nu: usize, nv: usize) -> RegularityReport {
    let points = data.domain.grid(nu, nv);
    let results: Vec<_> = points.par_iter().map(|&(u, v)| check_point(data, u, v)).collect();
    let clauses: Vec<_> = results.iter().map(|r| r.0).collect();
    RegularityReport {
        nu,
        nv,
        masked: clauses.iter().map(Option::is_some).collect(),
        lambda_sq: results.iter().map(|r| r.1).collect(),
        clauses,
        points,
    }
}
