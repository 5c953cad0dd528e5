//! B-scrolls over lightlike curves.

use std::sync::Arc;

use serde::Serialize;

use super::{curvatures, Diagonalizability, Jet2x2, SurfaceError, SurfaceModel, UvRect};
use crate::curve::{cartan_frame_unoriented, CartanKind, CurveError, CurveModel};
use crate::vec3::{self, Ambient};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BScrollSample {
    pub phi: f64,
    pub t: f64,
    pub k: f64,
    pub h: f64,
    pub k_expected: f64,
    pub h_expected: f64,
    /// `det(T, N, B)`
    pub orientation: f64,
    pub ctorsion: f64,
    pub diagonalizable: Diagonalizability,
    /// The lower-left entry `D (1 + t c')` of the shape matrix is nonzero.
    pub expected_non_diagonalizable: bool,
}

#[derive(Clone, Debug)]
pub struct BScroll {
    pub surface: SurfaceModel,
    pub samples: Vec<BScrollSample>,
    pub max_k_error: f64,
    pub max_h_error: f64,
    /// Samples whose diagnosis disagrees with the closed form.
    pub diagnosis_mismatches: usize,
}

/// Ruled surface `x(phi, t) = alpha(phi) + t B(phi)` over a lightlike curve
/// with arc-photon parameter, checked on an `n x n` grid.
pub fn b_scroll(alpha: &CurveModel, t_range: (f64, f64), n: usize) -> Result<BScroll, SurfaceError> {
    if alpha.ambient() != Ambient::Lorentz3 {
        return Err(CurveError::NotCartanCurve { t: 0.0, reason: "B-scrolls live in L^3".into() }.into());
    }
    let (lo, hi) = alpha.domain();
    for phi in alpha.sample_params(5) {
        let d = cartan_frame_unoriented(alpha, phi)?;
        if d.kind != CartanKind::Lightlike {
            return Err(CurveError::NotCartanCurve { t: phi, reason: "base curve is not lightlike".into() }.into());
        }
    }
    let base = alpha.clone();
    let eval = move |phi: f64, t: f64| -> Result<Jet2x2, SurfaceError> {
        let d = cartan_frame_unoriented(&base, phi)?;
        let j = base.jet(phi)?;
        let c = d.pseudo_torsion;
        let dc = -Ambient::Lorentz3.dot(j.d4, d.binormal);
        let (tt, nn, bb) = (d.tangent, d.normal, d.binormal);
        let comb = |a: f64, b: f64, e: f64| vec3::add(vec3::add(vec3::scale(a, tt), vec3::scale(b, nn)), vec3::scale(e, bb));
        Ok(Jet2x2 {
            value: vec3::axpy(j.value, t, bb),
            du: comb(1.0, t * c, 0.0),
            dv: bb,
            duu: comb(t * c * c, 1.0 + t * dc, t * c),
            duv: comb(0.0, c, 0.0),
            dvv: [0.0; 3],
        })
    };
    let domain = UvRect::new(lo, hi, t_range.0, t_range.1)?;
    let surface = SurfaceModel::from_raw(Ambient::Lorentz3, domain, Arc::new(eval))
        .with_label(format!("B-scroll over {}", alpha.label().unwrap_or("curve")));
    let mut samples = Vec::new();
    let (mut max_k_error, mut max_h_error, mut diagnosis_mismatches) = (0.0f64, 0.0f64, 0);
    let factor = alpha.tolerance_factor();
    for (phi, t) in domain.grid(n, n) {
        let d = cartan_frame_unoriented(alpha, phi)?;
        let j = alpha.jet(phi)?;
        let c = d.pseudo_torsion;
        let dc = -Ambient::Lorentz3.dot(j.d4, d.binormal);
        let rep = curvatures(&surface, phi, t)?;
        let (k_expected, h_expected) = (c * c * d.det * d.det, c * d.det);
        let expected_non_diagonalizable = (d.det * (1.0 + t * dc)).abs() > 1e-8 * factor;
        let expected = if expected_non_diagonalizable { Diagonalizability::No } else { Diagonalizability::Yes };
        if rep.diagonalizable != expected {
            diagnosis_mismatches += 1;
        }
        max_k_error = max_k_error.max((rep.k - k_expected).abs());
        max_h_error = max_h_error.max((rep.h - h_expected).abs());
        samples.push(BScrollSample {
            phi,
            t,
            k: rep.k,
            h: rep.h,
            k_expected,
            h_expected,
            orientation: d.det,
            ctorsion: c,
            diagonalizable: rep.diagonalizable,
            expected_non_diagonalizable,
        });
    }
    Ok(BScroll { surface, samples, max_k_error, max_h_error, diagnosis_mismatches })
}
