use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use minkgeo::curve::{
    cartan_apparatus, cartan_frame_unoriented, frenet_apparatus, helix_classify, reconstruct_curve, standard_curve,
    CurveError, CurveModel, Profile, ReconstructionKind, ReconstructionSpec, StandardCurve,
};
use minkgeo::export::{self, CurveRow};
use minkgeo::vec3::{Ambient, V3};
use serde_json::json;

use crate::failure::{Classified, Failure};
use crate::parse;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CurveName {
    Beta1,
    Beta2,
    Beta3,
    Beta4,
    Beta5,
    Beta6,
    Gamma1,
    Gamma2,
    Gamma3,
    Horocycle,
    ConstantCtorsion,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Admissible,
    Lightlike,
    SemiLightlike,
}

#[derive(Subcommand)]
pub enum CurveCmd {
    /// Sample a named curve with its frame and invariants.
    Named {
        #[arg(value_enum)]
        name: CurveName,
        /// Radius of the lightlike helices.
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        b: f64,
        /// Horocycle level, or the linear coefficient of the constant pseudo-torsion graph.
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        d: f64,
        /// Pseudo-torsion of the constant pseudo-torsion graph.
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        ctorsion: f64,
        #[arg(long, value_parser = parse::pair, allow_hyphen_values = true, default_value = "0,1")]
        range: (f64, f64),
        #[arg(long, value_parser = parse::positive, default_value_t = 0.01)]
        step: f64,
        /// CSV of samples.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Integrate the frame equations for prescribed invariants.
    Reconstruct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_parser = parse::ambient)]
        ambient: Option<Ambient>,
        /// `const:V` or `linear:A,B`
        #[arg(long, value_parser = profile, allow_hyphen_values = true)]
        kappa: Option<Profile>,
        #[arg(long, value_parser = profile, allow_hyphen_values = true)]
        tau: Option<Profile>,
        #[arg(long, value_parser = profile, allow_hyphen_values = true)]
        ctorsion: Option<Profile>,
        #[arg(long, value_parser = parse::triple, allow_hyphen_values = true, default_value = "0,0,0")]
        point: [f64; 3],
        /// JSON file with the initial frame `[T, N, B]`.
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long, value_parser = parse::pair, allow_hyphen_values = true, default_value = "0,10")]
        range: (f64, f64),
        #[arg(long, value_parser = parse::positive, default_value_t = 1e-3)]
        step: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn profile(s: &str) -> Result<Profile, String> {
    let (kind, rest) = s.split_once(':').ok_or_else(|| format!("expected 'const:V' or 'linear:A,B', got '{s}'"))?;
    match kind {
        "const" => rest.trim().parse().map(Profile::constant).map_err(|_| format!("'{rest}' is not a number")),
        "linear" => parse::pair(rest).map(|(a, b)| Profile::linear(a, b)),
        _ => Err(format!("unknown profile '{kind}'")),
    }
}

fn standard(name: CurveName, r: f64, a: f64, b: f64, c: f64, d: f64, ctorsion: f64) -> StandardCurve {
    match name {
        CurveName::Beta1 => StandardCurve::Beta1 { a, b },
        CurveName::Beta2 => StandardCurve::Beta2 { a, b },
        CurveName::Beta3 => StandardCurve::Beta3 { a, b },
        CurveName::Beta4 => StandardCurve::Beta4 { a, b },
        CurveName::Beta5 => StandardCurve::Beta5 { a },
        CurveName::Beta6 => StandardCurve::Beta6 { a },
        CurveName::Gamma1 => StandardCurve::Gamma1 { r },
        CurveName::Gamma2 => StandardCurve::Gamma2 { r },
        CurveName::Gamma3 => StandardCurve::Gamma3,
        CurveName::Horocycle => StandardCurve::Horocycle { c },
        CurveName::ConstantCtorsion => StandardCurve::ConstantCtorsion { ctorsion, b, c, d },
    }
}

fn params((lo, hi): (f64, f64), step: f64) -> anyhow::Result<Vec<f64>> {
    if !(hi > lo) {
        return Err(Failure::Usage.because("range must be increasing"));
    }
    let n = ((hi - lo) / step).round().max(1.0) as usize;
    Ok((0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect())
}

/// A frame row and whether it came from the Frenet or the Cartan equations.
fn sample(c: &CurveModel, t: f64) -> Result<(CurveRow, bool, Option<f64>), CurveError> {
    let position = c.position(t)?;
    match frenet_apparatus(c, t) {
        Ok(f) => Ok((
            CurveRow {
                param: t,
                position,
                tangent: f.tangent,
                normal: f.normal,
                binormal: f.binormal,
                kappa_or_ctorsion: f.kappa,
                tau: Some(f.tau),
            },
            false,
            None,
        )),
        Err(CurveError::LightlikeTangent { .. } | CurveError::DegenerateOsculatingPlane { .. }) => {
            let k = match cartan_apparatus(c, t) {
                Err(CurveError::NoAdmissibleBinormal { .. }) => cartan_frame_unoriented(c, t)?,
                other => other?,
            };
            let row = CurveRow {
                param: t,
                position,
                tangent: k.tangent,
                normal: k.normal,
                binormal: k.binormal,
                kappa_or_ctorsion: k.pseudo_torsion,
                tau: None,
            };
            Ok((row, true, Some(k.det)))
        }
        Err(e) => Err(e),
    }
}

fn max_spread(values: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = values.collect();
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if v.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

fn write_rows(output: &Option<PathBuf>, rows: &[CurveRow]) -> anyhow::Result<()> {
    crate::write_to(output, |w| Ok(export::write_curve_csv(w, rows)?))
}

pub fn run(cmd: CurveCmd) -> anyhow::Result<()> {
    match cmd {
        CurveCmd::Named { name, r, a, b, c, d, ctorsion, range, step, output } => {
            let ts = params(range, step)?;
            let curve = standard_curve(standard(name, r, a, b, c, d, ctorsion)).precondition()?.with_domain(range.0, range.1);
            let samples: Vec<_> = ts.iter().map(|&t| sample(&curve, t)).collect::<Result<_, _>>().precondition()?;
            let cartan = samples[0].1;
            let rows: Vec<CurveRow> = samples.iter().map(|s| s.0.clone()).collect();
            let helix = helix_classify(&curve).precondition()?;
            let first = &rows[0];
            let mut report = json!({
                "curve": format!("{name:?}").to_lowercase(),
                "ambient": curve.ambient(),
                "frame": if cartan { "cartan" } else { "frenet" },
                "samples": rows.len(),
                "helix": helix.is_helix,
                "helix_type": helix.helix_type,
                "family": helix.family,
                "invariant_spread": max_spread(rows.iter().map(|r| r.kappa_or_ctorsion)),
            });
            if cartan {
                report["ctorsion"] = json!(first.kappa_or_ctorsion);
                report["orientation"] = json!(samples[0].2);
            } else {
                report["kappa"] = json!(first.kappa_or_ctorsion);
                report["tau"] = json!(first.tau);
                report["tau_spread"] = json!(max_spread(rows.iter().filter_map(|r| r.tau)));
            }
            write_rows(&output, &rows)?;
            crate::print_report(&report)
        }
        CurveCmd::Reconstruct { kind, ambient, kappa, tau, ctorsion, point, frame, range, step, output } => {
            let missing = |what: &str| Failure::Usage.because(format!("--{what} is required for this kind"));
            let (rkind, default_ambient) = match kind {
                Kind::Admissible => (
                    ReconstructionKind::Admissible {
                        kappa: kappa.ok_or_else(|| missing("kappa"))?,
                        tau: tau.ok_or_else(|| missing("tau"))?,
                    },
                    Ambient::Euclidean3,
                ),
                Kind::Lightlike => {
                    (ReconstructionKind::Lightlike { ctorsion: ctorsion.ok_or_else(|| missing("ctorsion"))? }, Ambient::Lorentz3)
                }
                Kind::SemiLightlike => (
                    ReconstructionKind::SemiLightlike { ctorsion: ctorsion.ok_or_else(|| missing("ctorsion"))? },
                    Ambient::Lorentz3,
                ),
            };
            let initial_frame = match &frame {
                Some(p) => {
                    let text = std::fs::read_to_string(p)?;
                    serde_json::from_str::<[V3; 3]>(&text).map_err(|e| Failure::Usage.wrap(e))?
                }
                None => default_frame(kind),
            };
            let spec = ReconstructionSpec {
                kind: rkind,
                ambient: ambient.unwrap_or(default_ambient),
                initial_point: point,
                initial_frame,
                start: range.0,
                end: range.1,
                step,
            };
            let rec = reconstruct_curve(&spec).precondition()?;
            let cartan = !matches!(kind, Kind::Admissible);
            let rows: Vec<CurveRow> = rec
                .samples
                .iter()
                .map(|s| CurveRow {
                    param: s.param,
                    position: s.point,
                    tangent: s.frame[0],
                    normal: s.frame[1],
                    binormal: s.frame[2],
                    kappa_or_ctorsion: s.first_invariant,
                    tau: (!cartan).then_some(s.second_invariant),
                })
                .collect();
            write_rows(&output, &rows)?;
            let end = rows.last().expect("at least one sample");
            crate::print_report(&json!({
                "kind": format!("{kind:?}").to_lowercase(),
                "ambient": spec.ambient,
                "samples": rows.len(),
                "step": rec.step,
                "end_point": end.position,
                "drift": rec.drift,
            }))
        }
    }
}

fn default_frame(kind: Kind) -> [V3; 3] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        Kind::Admissible => [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        Kind::Lightlike => [[0.0, h, h], [-1.0, 0.0, 0.0], [0.0, -h, h]],
        Kind::SemiLightlike => [[1.0, 0.0, 0.0], [0.0, h, h], [0.0, -h, h]],
    }
}
