use std::ops::{Add, Mul};
use std::sync::Arc;

use rayon::prelude::*;

use super::regularity::{regularity_check, RegularityReport};
use super::{
    complex_eval, coordinate, integrand, split_eval, Algebra, Evaluate, Result, WeierstrassAmbient, WeierstrassData,
    WeierstrassError,
};
use crate::jet::Taylor;
use crate::quad::gauss_legendre_composite;
use crate::surface::{Jet2x2, SurfaceError, SurfaceModel};
use crate::vec3::V3;

/// Longest quadrature panel along an integration path.
const PANEL: f64 = 0.25;

/// Which leg of the axis-aligned path from the basepoint comes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathOrder {
    /// Along `u` at the basepoint's `v`, then along `v`.
    UFirst,
    /// Along `v` at the basepoint's `u`, then along `u`.
    VFirst,
}

#[derive(Clone, Copy, Default)]
struct Acc(V3);

impl Add for Acc {
    type Output = Acc;
    fn add(self, o: Acc) -> Acc {
        Acc([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Mul<f64> for Acc {
    type Output = Acc;
    fn mul(self, s: f64) -> Acc {
        Acc([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

fn value_parts<Z: Algebra>(phi: &[Z; 3], k: usize) -> ([f64; 3], [f64; 3]) {
    let re = [phi[0].re().c[k], phi[1].re().c[k], phi[2].re().c[k]];
    let im = [phi[0].im().c[k], phi[1].im().c[k], phi[2].im().c[k]];
    (re, im)
}

fn phi_at<Z: Algebra, E: Evaluate<Z>>(eval: &E, amb: WeierstrassAmbient, u: f64, v: f64) -> [Z; 3] {
    integrand(amb, &eval.local(coordinate::<Z>(u, v, false)))
}

/// `2 Re int phi dzeta` from `from` to `to` along an axis-aligned segment.
fn leg<Z: Algebra, E: Evaluate<Z>>(eval: &E, amb: WeierstrassAmbient, from: (f64, f64), to: (f64, f64)) -> V3 {
    if from.1 == to.1 {
        let v = from.1;
        let f = |t: f64| Acc(value_parts(&phi_at(eval, amb, t, v), 0).0.map(|x| 2.0 * x));
        gauss_legendre_composite(f, from.0, to.0, PANEL).0
    } else {
        let u = from.0;
        let f = |t: f64| Acc(value_parts(&phi_at(eval, amb, u, t), 0).1.map(|x| 2.0 * Z::SQUARE * x));
        gauss_legendre_composite(f, from.1, to.1, PANEL).0
    }
}

pub(crate) fn corners(data: &WeierstrassData, u: f64, v: f64, order: PathOrder) -> [(f64, f64); 3] {
    let (u0, v0) = data.basepoint;
    match order {
        PathOrder::UFirst => [(u0, v0), (u, v0), (u, v)],
        PathOrder::VFirst => [(u0, v0), (u0, v), (u, v)],
    }
}

fn position_in<Z: Algebra, E: Evaluate<Z>>(eval: &E, data: &WeierstrassData, u: f64, v: f64, order: PathOrder) -> V3 {
    let c = corners(data, u, v, order);
    let a = leg(eval, data.ambient, c[0], c[1]);
    let b = leg(eval, data.ambient, c[1], c[2]);
    [0, 1, 2].map(|i| data.constants[i] + a[i] + b[i])
}

/// Surface derivatives read off the integrand: `x_u = 2 Re phi` and
/// `x_v = 2 Re(unit phi)`.
fn derivatives<Z: Algebra>(phi: &[Z; 3]) -> [V3; 5] {
    let s = Z::SQUARE;
    let (re, im) = value_parts(phi, 0);
    let (re1, im1) = value_parts(phi, 1);
    [
        re.map(|x| 2.0 * x),
        im.map(|x| 2.0 * s * x),
        re1.map(|x| 2.0 * x),
        im1.map(|x| 2.0 * s * x),
        re1.map(|x| 2.0 * s * x),
    ]
}

fn jet_in<Z: Algebra, E: Evaluate<Z>>(eval: &E, data: &WeierstrassData, u: f64, v: f64) -> Jet2x2 {
    let [du, dv, duu, duv, dvv] = derivatives(&phi_at(eval, data.ambient, u, v));
    let value = position_in(eval, data, u, v, PathOrder::UFirst);
    Jet2x2 { value, du, dv, duu, duv, dvv }
}

/// Bilinear square `<phi, phi>` of the integrand, as (re, im) parts.
fn null_square<Z: Algebra, E: Evaluate<Z>>(eval: &E, data: &WeierstrassData, u: f64, v: f64) -> (f64, f64) {
    let w = data.ambient.ambient().weights();
    let phi = phi_at(eval, data.ambient, u, v);
    let mut acc = Z::cst(0.0, 0.0);
    for (p, wk) in phi.iter().zip(w) {
        acc = acc + Z::parts(Taylor::constant(wk), Taylor::constant(0.0)) * *p * *p;
    }
    (acc.re().c[0], acc.im().c[0])
}

/// Closed conformal factor `lambda^2` from the data.
fn closed_factor<Z: Algebra, E: Evaluate<Z>>(eval: &E, amb: WeierstrassAmbient, u: f64, v: f64) -> f64 {
    let d = eval.local(coordinate::<Z>(u, v, false));
    let chart = d.chart_d.norm().c[0].abs();
    let f2 = d.f.norm().c[0];
    let g2 = d.g.norm().c[0];
    match amb {
        WeierstrassAmbient::R3 => f2 * (1.0 + g2).powi(2) * chart,
        WeierstrassAmbient::L3Spacelike => f2 * (1.0 - g2).powi(2) * chart,
        WeierstrassAmbient::L3Timelike => 4.0 * f2.abs() * d.g.im().c[0].powi(2) * chart,
    }
}

macro_rules! dispatch {
    ($data:expr, $call:ident ( $($arg:expr),* )) => {
        if $data.ambient.is_split() {
            $call(&split_eval($data), $($arg),*)
        } else {
            $call(&complex_eval($data), $($arg),*)
        }
    };
}

pub(crate) fn checked_position(data: &WeierstrassData, u: f64, v: f64, order: PathOrder) -> Result<V3> {
    data.check_point(u, v)?;
    data.check_path(&corners(data, u, v, order))?;
    Ok(dispatch!(data, position_in(data, u, v, order)))
}

pub(crate) fn checked_jet(data: &WeierstrassData, u: f64, v: f64) -> Result<Jet2x2> {
    data.check_point(u, v)?;
    data.check_path(&corners(data, u, v, PathOrder::UFirst))?;
    Ok(dispatch!(data, jet_in(data, u, v)))
}

pub(crate) fn integrand_derivatives(data: &WeierstrassData, u: f64, v: f64) -> [V3; 5] {
    if data.ambient.is_split() {
        derivatives(&phi_at(&split_eval(data), data.ambient, u, v))
    } else {
        derivatives(&phi_at(&complex_eval(data), data.ambient, u, v))
    }
}

/// A surface generated from Weierstrass data, with its regularity report on
/// a cell-centred grid.
pub struct GeneratedSurface {
    pub data: Arc<WeierstrassData>,
    pub surface: SurfaceModel,
    pub regularity: RegularityReport,
}

impl GeneratedSurface {
    /// Position along a chosen path order.
    pub fn position_along(&self, u: f64, v: f64, order: PathOrder) -> Result<V3> {
        checked_position(&self.data, u, v, order)
    }

    /// Modulus of `<phi, phi>`; zero for isothermal data.
    pub fn null_defect(&self, u: f64, v: f64) -> Result<f64> {
        self.data.check_point(u, v)?;
        let (a, b) = dispatch!(&self.data, null_square(&self.data, u, v));
        Ok(if self.data.ambient.is_split() { a.abs().max(b.abs()) } else { a.hypot(b) })
    }

    /// `lambda^2` from the closed factor formula of the ambient.
    pub fn closed_conformal_factor(&self, u: f64, v: f64) -> Result<f64> {
        self.data.check_point(u, v)?;
        Ok(dispatch!(&self.data, closed_factor(self.data.ambient, u, v)))
    }

    /// Grid points kept by the regularity mask.
    pub fn unmasked(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.regularity.points.iter().zip(&self.regularity.masked).filter(|(_, m)| !**m).map(|(p, _)| *p)
    }
}

/// Build the surface and check every grid point and its integration path.
pub fn generate(data: WeierstrassData, nu: usize, nv: usize) -> Result<GeneratedSurface> {
    let grid = data.domain.grid(nu, nv);
    grid.par_iter().try_for_each(|&(u, v)| {
        data.check_point(u, v)?;
        data.check_path(&corners(&data, u, v, PathOrder::UFirst))
    })?;
    let regularity = regularity_check(&data, nu, nv);
    let data = Arc::new(data);
    let shared = Arc::clone(&data);
    let raw = move |u: f64, v: f64| -> std::result::Result<Jet2x2, SurfaceError> {
        checked_jet(&shared, u, v).map_err(|e| match e {
            WeierstrassError::Surface(s) => s,
            WeierstrassError::OutsideDomain { u, v } => SurfaceError::OutsideDomain { u, v },
            _ => SurfaceError::NotRegular { u, v },
        })
    };
    let surface = SurfaceModel::from_raw(data.ambient.ambient(), data.domain, Arc::new(raw));
    let surface = if data.description.is_empty() { surface } else { surface.with_label(data.description.clone()) };
    Ok(GeneratedSurface { data, surface, regularity })
}
