use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    Holomorphic, Result, Singularity, WeierstrassAmbient, WeierstrassData, WeierstrassError, WeierstrassKind,
};
use crate::complex::Cplx;
use crate::jet::{Jet2, Scalar};
use crate::split::Split;
use crate::surface::{SurfaceModel, UvRect};
use crate::vec3::V3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedKind {
    EnneperR3,
    EnneperL3Spacelike,
    CatalanR3,
    CatenoidL3Spacelike,
    HennebergR3,
    EnneperL3Timelike,
    CatenoidL3Timelike,
}

impl NamedKind {
    pub const ALL: [NamedKind; 7] = [
        NamedKind::EnneperR3,
        NamedKind::EnneperL3Spacelike,
        NamedKind::CatalanR3,
        NamedKind::CatenoidL3Spacelike,
        NamedKind::HennebergR3,
        NamedKind::EnneperL3Timelike,
        NamedKind::CatenoidL3Timelike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedKind::EnneperR3 => "enneper_r3",
            NamedKind::EnneperL3Spacelike => "enneper_l3_spacelike",
            NamedKind::CatalanR3 => "catalan_r3",
            NamedKind::CatenoidL3Spacelike => "catenoid_l3_spacelike",
            NamedKind::HennebergR3 => "henneberg_r3",
            NamedKind::EnneperL3Timelike => "enneper_l3_timelike",
            NamedKind::CatenoidL3Timelike => "catenoid_l3_timelike",
        }
    }
}

impl FromStr for NamedKind {
    type Err = WeierstrassError;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        NamedKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| WeierstrassError::UnknownKind(s.to_string()))
    }
}

/// A named surface: its closed form, the data generating it and where the
/// generated surface is masked.
pub struct NamedWeierstrass {
    pub kind: NamedKind,
    pub data: WeierstrassData,
    pub closed_form: SurfaceModel,
    /// For data whose integral differs from the closed form by more than a
    /// constant, the closed form the data actually integrates to.
    pub integrated_form: Option<SurfaceModel>,
    pub mask_description: &'static str,
}

fn enneper_r3<S: Scalar>(u: S, v: S) -> [S; 3] {
    let (u2, v2) = (u * u, v * v);
    [u - u2 * u / 3.0 + u * v2, -v + v2 * v / 3.0 - u2 * v, u2 - v2]
}

fn enneper_l3_spacelike<S: Scalar>(u: S, v: S) -> [S; 3] {
    let (u2, v2) = (u * u, v * v);
    [u + u2 * u / 3.0 - u * v2, -v - v2 * v / 3.0 + u2 * v, v2 - u2]
}

fn catalan<S: Scalar>(u: S, v: S) -> [S; 3] {
    [
        u - u.sin() * v.cosh(),
        -(u.cos() * v.cosh()) + 1.0,
        (u * 0.5).sin() * (v * 0.5).sinh() * -4.0,
    ]
}

fn catenoid_l3_spacelike<S: Scalar>(u: S, v: S, height: f64) -> [S; 3] {
    let r2 = u * u + v * v;
    [u - u / r2, v - v / r2, r2.ln() * -height]
}

fn henneberg<S: Scalar>(u: S, v: S) -> [S; 3] {
    let (u3, v3) = (u * 3.0, v * 3.0);
    [
        u.sinh() * v.cos() * 2.0 - u3.sinh() * v3.cos() * (2.0 / 3.0),
        u.sinh() * v.sin() * 2.0 + u3.sinh() * v3.sin() * (2.0 / 3.0),
        (u * 2.0).cosh() * (v * 2.0).cos() * 2.0,
    ]
}

fn enneper_l3_timelike<S: Scalar>(u: S, v: S) -> [S; 3] {
    let (u2, v2) = (u * u, v * v);
    [v - u2 * v - v2 * v / 3.0, u * v * 2.0, v + u2 * v + v2 * v / 3.0]
}

fn catenoid_l3_timelike<S: Scalar>(u: S, v: S, height: f64) -> [S; 3] {
    let q = u * u - v * v;
    [-(u / q) - u, (q * q).ln() * (height / 2.0), -(u / q) + u]
}

type ClosedForm = fn(Jet2, Jet2) -> [Jet2; 3];

fn model(kind: NamedKind, form: ClosedForm, amb: WeierstrassAmbient, domain: UvRect) -> SurfaceModel {
    SurfaceModel::from_jets(amb.ambient(), domain, form).with_label(kind.name())
}

fn complex(f: fn(Cplx<crate::jet::Taylor>) -> Cplx<crate::jet::Taylor>) -> Holomorphic {
    Holomorphic::complex(f)
}

fn split(f: fn(Split<crate::jet::Taylor>) -> Split<crate::jet::Taylor>) -> Holomorphic {
    Holomorphic::split(f)
}

fn rect(u0: f64, u1: f64, v0: f64, v1: f64) -> UvRect {
    UvRect::new(u0, u1, v0, v1).expect("static rectangle")
}

/// Closed form paired with its generating data. Integration constants pin
/// the basepoint image to the closed form.
pub fn named_weierstrass(kind: NamedKind) -> Result<NamedWeierstrass> {
    use WeierstrassAmbient::*;
    let one_c = || complex(|_| Cplx::constant(1.0, 0.0));
    let (data, closed, closed_f64, integrated, mask): (WeierstrassData, ClosedForm, fn(f64, f64) -> V3, Option<ClosedForm>, _) =
        match kind {
            NamedKind::EnneperR3 => (
                WeierstrassData::new(
                    WeierstrassKind::TypeI { f: one_c(), g: complex(|z| z) },
                    R3,
                    (0.0, 0.0),
                    rect(-1.5, 1.5, -1.5, 1.5),
                )?
                .with_description("f = 1, g = z"),
                enneper_r3,
                enneper_r3,
                None,
                "none",
            ),
            NamedKind::EnneperL3Spacelike => (
                WeierstrassData::new(
                    WeierstrassKind::TypeI { f: one_c(), g: complex(|z| z) },
                    L3Spacelike,
                    (0.0, 0.0),
                    rect(-1.5, 1.5, -1.5, 1.5),
                )?
                .with_description("f = 1, g = z"),
                enneper_l3_spacelike,
                enneper_l3_spacelike,
                None,
                "unit circle |z| = 1",
            ),
            NamedKind::CatalanR3 => (
                WeierstrassData::new(
                    WeierstrassKind::TypeII {
                        big_f: complex(|z| (z.recip() - z.powi(3).recip()) * Cplx::i()),
                    },
                    R3,
                    (1.0, 0.5),
                    rect(-3.0, 3.0, -1.5, 1.5),
                )?
                .with_chart(complex(|s| -(s * Cplx::constant(0.0, -0.5)).exp()))?
                .with_description("F(z) = i(1/z - 1/z^3), z = -exp(-i zeta / 2)"),
                catalan,
                catalan,
                None,
                "F = 0 at zeta = 0",
            ),
            NamedKind::CatenoidL3Spacelike => (
                WeierstrassData::new(
                    WeierstrassKind::TypeII { big_f: complex(|z| z.powi(2).recip()) },
                    L3Spacelike,
                    (2.0, 0.3),
                    rect(0.25, 2.5, -1.2, 1.2),
                )?
                .with_poles(vec![Singularity::Point { u: 0.0, v: 0.0 }])?
                .with_description("F(z) = 1/z^2"),
                |u, v| catenoid_l3_spacelike(u, v, 2.0),
                |u, v| catenoid_l3_spacelike(u, v, 2.0),
                Some(|u, v| catenoid_l3_spacelike(u, v, 1.0)),
                "unit circle |z| = 1",
            ),
            NamedKind::HennebergR3 => (
                WeierstrassData::new(
                    WeierstrassKind::TypeII { big_f: complex(|z| -z.powi(4).recip() + 1.0) },
                    R3,
                    (0.4, 0.3),
                    rect(-0.8, 0.8, -3.0, 3.0),
                )?
                .with_chart(complex(|s| -(-s).exp()))?
                .with_description("F(z) = 1 - 1/z^4, z = -exp(-zeta)"),
                henneberg,
                henneberg,
                None,
                "F = 0 on the points u = 0, v = k pi / 2",
            ),
            NamedKind::EnneperL3Timelike => (
                WeierstrassData::new(
                    WeierstrassKind::TypeII { big_f: split(|_| Split::constant(0.0, 1.0)) },
                    L3Timelike,
                    (0.3, 0.4),
                    rect(-1.0, 1.0, -1.0, 1.0),
                )?
                .with_description("F(w) = h"),
                enneper_l3_timelike,
                enneper_l3_timelike,
                None,
                "real axis v = 0",
            ),
            NamedKind::CatenoidL3Timelike => (
                WeierstrassData::new(
                    WeierstrassKind::TypeII { big_f: split(|w| w.powi(2).recip_unchecked()) },
                    L3Timelike,
                    (1.5, 0.4),
                    rect(1.0, 2.5, -0.8, 0.8),
                )?
                .with_poles(vec![Singularity::NullLines { u: 0.0, v: 0.0 }])?
                .with_description("F(w) = 1/w^2"),
                |u, v| catenoid_l3_timelike(u, v, 2.0),
                |u, v| catenoid_l3_timelike(u, v, 2.0),
                Some(|u, v| catenoid_l3_timelike(u, v, 1.0)),
                "real axis v = 0",
            ),
        };
    let (u0, v0) = data.basepoint;
    let domain = data.domain;
    let data = data.with_constants(closed_f64(u0, v0));
    let amb = data.ambient;
    Ok(NamedWeierstrass {
        kind,
        closed_form: model(kind, closed, amb, domain),
        integrated_form: integrated.map(|f| model(kind, f, amb, domain)),
        data,
        mask_description: mask,
    })
}

/// JSON listing of the gallery: data, domain, basepoint and mask for each
/// named surface.
pub fn gallery_manifest() -> Value {
    let entries: Vec<Value> = NamedKind::ALL
        .into_iter()
        .map(|kind| {
            let n = named_weierstrass(kind).expect("gallery entries are valid");
            let d = &n.data;
            json!({
                "name": kind.name(),
                "ambient": d.ambient,
                "kind": match d.kind { WeierstrassKind::TypeI { .. } => "type_i", WeierstrassKind::TypeII { .. } => "type_ii" },
                "data": d.description,
                "domain": { "u": [d.domain.u0, d.domain.u1], "v": [d.domain.v0, d.domain.v1] },
                "basepoint": [d.basepoint.0, d.basepoint.1],
                "poles": d.poles,
                "mask": n.mask_description,
                "integrates_to_closed_form": n.integrated_form.is_none(),
            })
        })
        .collect();
    json!({ "surfaces": entries })
}
