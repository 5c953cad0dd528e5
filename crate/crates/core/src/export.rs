//! Mesh, table and report writers with a locale-independent 17-digit float
//! format.

use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::surface::{Diagonalizability, GridSample, SurfaceError, SurfaceModel};
use crate::vec3::V3;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("mesh needs at least one cell in each direction")]
    EmptyGrid,
}

/// `x` with 17 significant digits in scientific notation.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        // Adding zero folds -0 into +0.
        format!("{:.16e}", x + 0.0)
    } else {
        x.to_string()
    }
}

/// Wavefront OBJ of the surface over the `nu x nv` cell grid of its domain.
/// Each cell becomes two triangles, counterclockwise in `(u, v)`.
pub fn write_obj<W: Write>(mut w: W, m: &SurfaceModel, nu: usize, nv: usize) -> Result<(), ExportError> {
    if nu == 0 || nv == 0 {
        return Err(ExportError::EmptyGrid);
    }
    if let Some(label) = m.label() {
        writeln!(w, "o {label}")?;
    }
    for (u, v) in m.domain().vertices(nu, nv) {
        let p = m.position(u, v)?;
        writeln!(w, "v {} {} {}", fmt17(p[0]), fmt17(p[1]), fmt17(p[2]))?;
    }
    let row = nu + 1;
    for j in 0..nv {
        for i in 0..nu {
            let a = j * row + i + 1;
            let (b, c, d) = (a + 1, a + 1 + row, a + row);
            writeln!(w, "f {a} {b} {c}")?;
            writeln!(w, "f {a} {c} {d}")?;
        }
    }
    Ok(())
}

pub const CURVATURE_COLUMNS: [&str; 11] = ["u", "v", "E", "F", "G", "e", "f", "g", "H", "K", "diag_flag"];

fn diag_flag(d: Diagonalizability) -> &'static str {
    match d {
        Diagonalizability::Yes => "yes",
        Diagonalizability::No => "no",
        Diagonalizability::Inconclusive => "inconclusive",
    }
}

/// Curvature table of a grid; cells a sample could not provide stay empty.
pub fn write_curvature_csv<W: Write>(w: W, samples: &[GridSample]) -> Result<(), ExportError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CURVATURE_COLUMNS)?;
    for s in samples {
        let mut rec = vec![fmt17(s.u), fmt17(s.v)];
        match &s.forms {
            Some(f) => rec.extend(f.first.iter().map(|x| fmt17(*x))),
            None => rec.extend(["", "", ""].map(String::from)),
        }
        match s.forms.as_ref().and_then(|f| f.second) {
            Some(ii) => rec.extend(ii.iter().map(|x| fmt17(*x))),
            None => rec.extend(["", "", ""].map(String::from)),
        }
        match &s.curvature {
            Some(c) => rec.extend([fmt17(c.h), fmt17(c.k), diag_flag(c.diagonalizable).to_string()]),
            None => rec.extend(["", "", ""].map(String::from)),
        }
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

/// One sample of a curve and its frame.
#[derive(Clone, Debug)]
pub struct CurveRow {
    pub param: f64,
    pub position: V3,
    pub tangent: V3,
    pub normal: V3,
    pub binormal: V3,
    /// Curvature for Frenet curves, pseudo-torsion for Cartan curves.
    pub kappa_or_ctorsion: f64,
    pub tau: Option<f64>,
}

pub const CURVE_COLUMNS: [&str; 15] =
    ["param", "x", "y", "z", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz", "kappa_or_ctorsion", "tau"];

pub fn write_curve_csv<W: Write>(w: W, rows: &[CurveRow]) -> Result<(), ExportError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CURVE_COLUMNS)?;
    for r in rows {
        let mut rec = vec![fmt17(r.param)];
        for v in [r.position, r.tangent, r.normal, r.binormal] {
            rec.extend(v.iter().map(|x| fmt17(*x)));
        }
        rec.push(fmt17(r.kappa_or_ctorsion));
        rec.push(r.tau.map(fmt17).unwrap_or_default());
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

struct Fixed17;

impl serde_json::ser::Formatter for Fixed17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// JSON with every float written by [`fmt17`]. Non-finite floats become
/// `null`, as in `serde_json`.
pub fn write_json<W: Write, T: Serialize + ?Sized>(w: W, value: &T) -> Result<(), ExportError> {
    let v = serde_json::to_value(value)?;
    let mut ser = serde_json::Serializer::with_formatter(w, Fixed17);
    v.serialize(&mut ser)?;
    Ok(())
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String, ExportError> {
    let mut buf = Vec::new();
    write_json(&mut buf, value)?;
    Ok(String::from_utf8(buf).expect("JSON output is UTF-8"))
}
