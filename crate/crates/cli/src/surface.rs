use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use minkgeo::complex::Cplx;
use minkgeo::curve::{standard_curve, CurveModel, StandardCurve};
use minkgeo::export;
use minkgeo::jet::{Jet2, Scalar, Taylor};
use minkgeo::quad::adaptive_simpson;
use minkgeo::split::Split;
use minkgeo::surface::{
    b_scroll, constant_curvature_g, curvature_grid, curvatures, fermi_chart, named_surface, revolution_causality,
    revolution_constant_k_check, revolution_surface, GeodesicStart, GridSample, MetricPatch, NamedSurface,
    RevolutionKind, SurfaceModel, UvRect,
};
use minkgeo::vec3::Ambient;
use minkgeo::weierstrass::{
    generate, named_weierstrass, Holomorphic, NamedKind, Singularity, WeierstrassAmbient, WeierstrassData,
    WeierstrassKind,
};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::failure::{Classified, Failure, SurfaceClassified};
use crate::parse;

#[derive(Args)]
pub struct Outputs {
    /// Cells per direction, `NUxNV`.
    #[arg(long, value_parser = parse::grid, default_value = "32x32")]
    grid: (usize, usize),
    /// Wavefront OBJ mesh.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Curvature table.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SurfaceName {
    Plane,
    Sphere,
    Cylinder,
    DeSitter,
    HyperbolicPlane,
    AntiDeSitter,
    ConstantCurvature,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScrollCurve {
    Gamma1,
    Gamma2,
    Gamma3,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RevolutionProfile {
    /// Meridian of the unit sphere in `R^3`.
    Sphere,
    /// Vertical line at unit distance, in `R^3`.
    Cylinder,
    /// `(cosh t, 0, sinh t)` in `L^3`.
    DeSitter,
    /// `(sinh t, 0, cosh t)` in `L^3`.
    HyperbolicPlane,
    /// Unit-curvature profile for hyperbolic rotation in `R^3_2`.
    IndexTwo,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FermiModel {
    Plane,
    Sphere,
    DeSitter,
    Hyperbolic,
}

#[derive(Subcommand)]
pub enum SurfaceCmd {
    /// A surface from the built-in gallery.
    Named {
        #[arg(value_enum)]
        name: SurfaceName,
        #[arg(long, value_parser = parse::ambient, default_value = "e3")]
        ambient: Ambient,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Curvature sign for `constant-curvature`.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i8,
        #[arg(long)]
        timelike_base: bool,
        #[command(flatten)]
        out: Outputs,
    },
    /// Critical surface from Weierstrass data.
    Weierstrass {
        /// JSON data file.
        #[arg(long, conflicts_with = "named")]
        data: Option<PathBuf>,
        /// A gallery entry such as `enneper_r3`.
        #[arg(long)]
        named: Option<String>,
        /// Also write the gallery manifest.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[command(flatten)]
        out: Outputs,
    },
    /// Ruled surface along the binormal of a lightlike helix.
    Bscroll {
        #[arg(long, value_enum, default_value = "gamma2")]
        curve: ScrollCurve,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, value_parser = parse::pair, allow_hyphen_values = true, default_value = "-1,1")]
        trange: (f64, f64),
        #[arg(long, value_parser = parse::pair, allow_hyphen_values = true, default_value = "-3,3")]
        range: (f64, f64),
        #[command(flatten)]
        out: Outputs,
    },
    /// Surface of revolution from a built-in profile.
    Revolution {
        #[arg(long, value_enum)]
        profile: RevolutionProfile,
        #[command(flatten)]
        out: Outputs,
    },
    /// Numerical Fermi chart around a geodesic.
    Fermi {
        #[arg(long, value_enum)]
        model: FermiModel,
        #[arg(long, value_parser = parse::positive, default_value_t = 1.0)]
        length: f64,
        #[arg(long, value_parser = parse::positive, default_value_t = 0.5)]
        width: f64,
        #[arg(long, default_value_t = 8)]
        nv: usize,
        #[arg(long, default_value_t = 10)]
        nu_half: usize,
        /// CSV of the chart metric.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn rect(u0: f64, u1: f64, v0: f64, v1: f64) -> anyhow::Result<UvRect> {
    UvRect::new(u0, u1, v0, v1).map_err(|e| Failure::Usage.wrap(e))
}

fn range_of(values: impl Iterator<Item = f64>) -> Value {
    let v: Vec<f64> = values.collect();
    if v.is_empty() {
        return Value::Null;
    }
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    json!({ "mean": mean, "min": lo, "max": hi })
}

/// Curvature summary over a grid; the mesh and table are written when asked.
fn export_surface(m: &SurfaceModel, out: &Outputs) -> anyhow::Result<(Vec<GridSample>, Value)> {
    let (nu, nv) = out.grid;
    let samples = curvature_grid(m, nu, nv);
    crate::write_to(&out.output, |w| Ok(export::write_obj(w, m, nu, nv)?))?;
    crate::write_to(&out.csv, |w| Ok(export::write_curvature_csv(w, &samples)?))?;
    let ok = || samples.iter().filter_map(|s| s.curvature.as_ref());
    let summary = json!({
        "grid": [nu, nv],
        "K": range_of(ok().map(|c| c.k)),
        "H": range_of(ok().map(|c| c.h)),
        "failed_points": samples.iter().filter(|s| s.curvature.is_none()).count(),
    });
    Ok((samples, summary))
}

fn profile(amb: Ambient, domain: (f64, f64), f: fn(Taylor) -> Taylor, g: fn(Taylor) -> Taylor) -> CurveModel {
    CurveModel::from_jets(amb, domain, move |t: Taylor| [f(t), t * 0.0, g(t)])
}

fn index_two_height(t: Taylor) -> Taylor {
    let x = t.c[0];
    let h = |s: f64| (2.0 - s.cosh().powi(2)).sqrt();
    let value = adaptive_simpson(h, 0.0, x, 1e-12);
    let dh = -x.cosh() * x.sinh() / h(x);
    Taylor::from_derivatives([value, h(x), dh, 0.0, 0.0]).compose_increment(&(t - x))
}

fn revolution_profile(p: RevolutionProfile) -> (CurveModel, RevolutionKind, Option<f64>) {
    match p {
        RevolutionProfile::Sphere => (
            profile(Ambient::Euclidean3, (-1.2, 1.2), |t| t.cos(), |t| t.sin()),
            RevolutionKind::Circular,
            Some(1.0),
        ),
        RevolutionProfile::Cylinder => (
            profile(Ambient::Euclidean3, (-1.0, 1.0), |t| t * 0.0 + 1.0, |t| t),
            RevolutionKind::Circular,
            Some(0.0),
        ),
        RevolutionProfile::DeSitter => (
            profile(Ambient::Lorentz3, (-1.5, 1.5), |t| t.cosh(), |t| t.sinh()),
            RevolutionKind::Circular,
            Some(1.0),
        ),
        RevolutionProfile::HyperbolicPlane => (
            profile(Ambient::Lorentz3, (0.2, 1.5), |t| t.sinh(), |t| t.cosh()),
            RevolutionKind::Circular,
            Some(-1.0),
        ),
        RevolutionProfile::IndexTwo => (
            profile(Ambient::Index2_3, (-0.8, 0.8), |t| t.cosh(), index_two_height),
            RevolutionKind::Hyperbolic,
            Some(1.0),
        ),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DataFile {
    named: Option<String>,
    ambient: Option<WeierstrassAmbient>,
    f: Option<String>,
    g: Option<String>,
    #[serde(rename = "F")]
    big_f: Option<String>,
    basepoint: Option<(f64, f64)>,
    domain: Option<DomainSpec>,
    #[serde(default)]
    poles: Vec<Singularity>,
}

#[derive(Deserialize)]
struct DomainSpec {
    u: (f64, f64),
    v: (f64, f64),
}

fn complex_catalog(name: &str) -> Option<Holomorphic> {
    type C = Cplx<Taylor>;
    let f: fn(C) -> C = match name {
        "one" => |_| Cplx::constant(1.0, 0.0),
        "unit" => |_| Cplx::constant(0.0, 1.0),
        "identity" => |z| z,
        "square" => |z| z * z,
        "cube" => |z| z.powi(3),
        "inverse" => |z| z.recip(),
        "inverse_square" => |z| z.powi(2).recip(),
        "exp" => |z| z.exp(),
        _ => return None,
    };
    Some(Holomorphic::complex(f))
}

fn split_catalog(name: &str) -> Option<Holomorphic> {
    type S = Split<Taylor>;
    let f: fn(S) -> S = match name {
        "one" => |_| Split::constant(1.0, 0.0),
        "unit" => |_| Split::constant(0.0, 1.0),
        "identity" => |w| w,
        "square" => |w| w * w,
        "cube" => |w| w.powi(3),
        "inverse" => |w| w.recip_unchecked(),
        "inverse_square" => |w| w.powi(2).recip_unchecked(),
        "exp" => |w| w.exp(),
        _ => return None,
    };
    Some(Holomorphic::split(f))
}

fn weierstrass_data(file: DataFile) -> anyhow::Result<WeierstrassData> {
    if let Some(name) = &file.named {
        let kind: NamedKind = name.parse().map_err(|e| Failure::Usage.wrap(e))?;
        return Ok(named_weierstrass(kind).precondition()?.data);
    }
    let usage = |m: &str| Failure::Usage.because(m.to_string());
    let amb = file.ambient.ok_or_else(|| usage("data needs 'ambient' or 'named'"))?;
    let lookup = |key: &str, name: &Option<String>| -> anyhow::Result<Holomorphic> {
        let name = name.as_deref().ok_or_else(|| usage(&format!("data needs '{key}'")))?;
        let found = if amb.is_split() { split_catalog(name) } else { complex_catalog(name) };
        found.ok_or_else(|| usage(&format!("'{name}' is not in the function catalog")))
    };
    let description = match (&file.big_f, &file.f, &file.g) {
        (Some(big_f), _, _) => format!("F = {big_f}"),
        (None, f, g) => format!("f = {}, g = {}", f.as_deref().unwrap_or("?"), g.as_deref().unwrap_or("?")),
    };
    let kind = if file.big_f.is_some() {
        WeierstrassKind::TypeII { big_f: lookup("F", &file.big_f)? }
    } else {
        WeierstrassKind::TypeI { f: lookup("f", &file.f)?, g: lookup("g", &file.g)? }
    };
    let d = file.domain.ok_or_else(|| usage("data needs 'domain'"))?;
    let domain = rect(d.u.0, d.u.1, d.v.0, d.v.1)?;
    let base = file.basepoint.unwrap_or(((d.u.0 + d.u.1) / 2.0, (d.v.0 + d.v.1) / 2.0));
    let data = WeierstrassData::new(kind, amb, base, domain).precondition()?;
    Ok(data.with_poles(file.poles).precondition()?.with_description(description))
}

fn fermi_patch(model: FermiModel) -> anyhow::Result<(MetricPatch, GeodesicStart, f64)> {
    let big = rect(-3.0, 3.0, -3.0, 3.0)?;
    Ok(match model {
        FermiModel::Plane => (
            MetricPatch::from_components(0, big, |u, _| [u * 0.0 + 1.0, Jet2::constant(0.0), Jet2::constant(1.0)]),
            GeodesicStart { u: 0.0, v: 0.0, du: 1.0, dv: 0.0 },
            0.0,
        ),
        FermiModel::Sphere => (
            MetricPatch::from_components(0, big, |u, v| {
                let c = Jet2::constant(4.0) / (u * u + v * v + 1.0).powi(2);
                [c, Jet2::constant(0.0), c]
            }),
            GeodesicStart { u: 1.0, v: 0.0, du: 0.0, dv: 1.0 },
            1.0,
        ),
        FermiModel::DeSitter => {
            let m = named_surface(NamedSurface::DeSitter).classified()?;
            (MetricPatch::from_surface(&m).classified()?, GeodesicStart { u: 0.0, v: 3.0, du: 0.0, dv: 1.0 }, 1.0)
        }
        FermiModel::Hyperbolic => (
            MetricPatch::from_components(0, rect(-3.0, 3.0, -50.0, 50.0)?, |u, _| {
                [Jet2::constant(1.0), Jet2::constant(0.0), u.cosh() * u.cosh()]
            }),
            GeodesicStart { u: 0.0, v: 0.0, du: 0.0, dv: 1.0 },
            -1.0,
        ),
    })
}

pub fn run(cmd: SurfaceCmd) -> anyhow::Result<()> {
    match cmd {
        SurfaceCmd::Named { name, ambient, radius, k, timelike_base, out } => {
            let kind = match name {
                SurfaceName::Plane => NamedSurface::Plane { ambient },
                SurfaceName::Sphere => NamedSurface::Sphere { radius },
                SurfaceName::Cylinder => NamedSurface::Cylinder { ambient, radius },
                SurfaceName::DeSitter => NamedSurface::DeSitter,
                SurfaceName::HyperbolicPlane => NamedSurface::HyperbolicPlane,
                SurfaceName::AntiDeSitter => NamedSurface::AntiDeSitter,
                SurfaceName::ConstantCurvature => NamedSurface::ConstantCurvature { k, ambient, timelike_base },
            };
            let m = named_surface(kind).classified()?;
            let (_, mut summary) = export_surface(&m, &out)?;
            summary["surface"] = json!(format!("{name:?}"));
            summary["ambient"] = json!(m.ambient());
            crate::print_report(&summary)
        }
        SurfaceCmd::Weierstrass { data, named, manifest, out } => {
            let file = match (&data, named) {
                (Some(p), None) => {
                    let text = std::fs::read_to_string(p)?;
                    serde_json::from_str::<DataFile>(&text).map_err(|e| Failure::Usage.wrap(e))?
                }
                (None, Some(n)) => DataFile {
                    named: Some(n),
                    ambient: None,
                    f: None,
                    g: None,
                    big_f: None,
                    basepoint: None,
                    domain: None,
                    poles: Vec::new(),
                },
                _ => return Err(Failure::Usage.because("give exactly one of --data and --named")),
            };
            let data = weierstrass_data(file)?;
            let (nu, nv) = out.grid;
            let generated = generate(data, nu, nv).precondition()?;
            crate::write_to(&manifest, |w| Ok(export::write_json(w, &minkgeo::weierstrass::gallery_manifest())?))?;
            crate::write_to(&out.output, |w| Ok(export::write_obj(w, &generated.surface, nu, nv)?))?;
            let unmasked: Vec<(f64, f64)> = generated.unmasked().collect();
            let checks: Vec<(f64, f64)> = unmasked
                .par_iter()
                .map(|&(u, v)| {
                    let h = curvatures(&generated.surface, u, v).map(|c| c.h.abs()).unwrap_or(f64::NAN);
                    (h, generated.null_defect(u, v).unwrap_or(f64::NAN))
                })
                .collect();
            if let Some(path) = &out.csv {
                let samples = curvature_grid(&generated.surface, nu, nv);
                let mut w = crate::create(path)?;
                export::write_curvature_csv(&mut w, &samples)?;
            }
            let max = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0, |a: f64, b| if b.is_nan() { f64::NAN } else { a.max(b) });
            let max_h = max(&mut checks.iter().map(|c| c.0));
            if max_h.is_nan() {
                return Err(Failure::Numerical.because("curvature failed at an unmasked grid point"));
            }
            let r = &generated.regularity;
            let clauses: serde_json::Map<String, Value> =
                r.clause_counts().into_iter().map(|(c, n)| (c.describe().to_string(), json!(n))).collect();
            crate::print_report(&json!({
                "data": generated.data.description,
                "ambient": generated.data.ambient,
                "grid": [nu, nv],
                "maxH": max_h,
                "max_null_defect": max(&mut checks.iter().map(|c| c.1)),
                "masked": r.masked_count(),
                "mask_clauses": clauses,
            }))
        }
        SurfaceCmd::Bscroll { curve, r, trange, range, out } => {
            let kind = match curve {
                ScrollCurve::Gamma1 => StandardCurve::Gamma1 { r },
                ScrollCurve::Gamma2 => StandardCurve::Gamma2 { r },
                ScrollCurve::Gamma3 => StandardCurve::Gamma3,
            };
            let alpha = standard_curve(kind).precondition()?.with_domain(range.0, range.1);
            let (nu, nv) = out.grid;
            let scroll = b_scroll(&alpha, trange, nu.max(nv)).classified()?;
            let (_, mut summary) = export_surface(&scroll.surface, &out)?;
            summary["K_residual"] = json!(scroll.max_k_error);
            summary["H_residual"] = json!(scroll.max_h_error);
            summary["diagnosis_mismatches"] = json!(scroll.diagnosis_mismatches);
            summary["orientation"] = json!(scroll.samples.first().map(|s| s.orientation));
            crate::print_report(&summary)
        }
        SurfaceCmd::Revolution { profile, out } => {
            let (curve, kind, k) = revolution_profile(profile);
            let m = revolution_surface(&curve, kind).classified()?;
            let (_, mut summary) = export_surface(&m, &out)?;
            let causal = revolution_causality(&curve, kind, 16).classified()?;
            summary["profile"] = json!(format!("{profile:?}"));
            summary["causal_character_matches"] = json!(causal.matches);
            summary["isolated_lightlike"] = json!(causal.isolated_lightlike);
            if let Some(k) = k {
                summary["constant_k"] = json!(revolution_constant_k_check(&curve, kind, k, 16).classified()?);
            }
            crate::print_report(&summary)
        }
        SurfaceCmd::Fermi { model, length, width, nv, nu_half, output } => {
            if nv == 0 || nu_half == 0 {
                return Err(Failure::Usage.because("--nv and --nu-half must be positive"));
            }
            let (patch, start, k) = fermi_patch(model)?;
            let chart = fermi_chart(&patch, start, length, nv, width, nu_half).classified()?;
            let expected = constant_curvature_g(k, chart.nu, chart.eps_gamma);
            let mut g_error = 0.0f64;
            for (iv, row) in chart.metric.iter().enumerate() {
                for (iu, &u) in chart.u_grid.iter().enumerate() {
                    g_error = g_error.max((row[iu][2] - expected.eval(u)).abs());
                    let _ = iv;
                }
            }
            crate::write_to(&output, |w| {
                writeln!(w, "u,v,E,F,G")?;
                for (row, &v) in chart.metric.iter().zip(&chart.v_grid) {
                    for (efg, &u) in row.iter().zip(&chart.u_grid) {
                        let rec = [u, v, efg[0], efg[1], efg[2]].map(export::fmt17);
                        writeln!(w, "{}", rec.join(","))?;
                    }
                }
                Ok(())
            })?;
            crate::print_report(&json!({
                "model": format!("{model:?}"),
                "expected_G": expected.label(),
                "max_G_error": g_error,
                "max_E_error": chart.max_e_error,
                "max_abs_F": chart.max_abs_f,
                "max_boundary_Gu": chart.max_boundary_gu,
            }))
        }
    }
}
