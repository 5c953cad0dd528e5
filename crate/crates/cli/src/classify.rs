use std::path::PathBuf;

use anyhow::Context;
use clap::Subcommand;
use minkgeo::lorentz::{self, causal_character, causal_relations, classify_transform, Matrix, Signature, Vector};
use serde::Deserialize;
use serde_json::json;

use crate::failure::{Classified, Failure};
use crate::parse;

#[derive(Subcommand)]
pub enum ClassifyCmd {
    /// Causal character of a vector.
    Vector {
        /// `n,nu`
        #[arg(long, value_parser = parse::signature)]
        sig: (usize, usize),
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coords: Vec<f64>,
        #[arg(long, default_value_t = lorentz::DEFAULT_TOL, value_parser = parse::positive)]
        tol: f64,
    },
    /// Membership, component and conjugacy class of a matrix.
    Transform {
        /// JSON file: a matrix as an array of rows, or `{"matrix": .., "signature": [n, nu]}`.
        #[arg(long)]
        file: PathBuf,
        /// `n,nu`; defaults to the file's signature or to `n,1`.
        #[arg(long, value_parser = parse::signature)]
        sig: Option<(usize, usize)>,
        #[arg(long, default_value_t = lorentz::DEFAULT_TOL, value_parser = parse::positive)]
        tol: f64,
    },
    /// Causal relations between two events of `L^n`.
    Relation {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        q: Vec<f64>,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TransformFile {
    Bare(Vec<Vec<f64>>),
    Tagged { matrix: Vec<Vec<f64>>, signature: Option<(usize, usize)> },
}

fn signature((n, nu): (usize, usize)) -> anyhow::Result<Signature> {
    Signature::new(n, nu).map_err(|e| Failure::Usage.wrap(e))
}

pub fn run(cmd: ClassifyCmd) -> anyhow::Result<()> {
    match cmd {
        ClassifyCmd::Vector { sig, coords, tol } => {
            let v = Vector::new(signature(sig)?, coords).map_err(|e| Failure::Usage.wrap(e))?;
            let r = causal_character(&v, tol).precondition()?;
            crate::print_report(&json!({ "class": r.class, "indicator": r.indicator, "fake_norm": r.fake_norm }))
        }
        ClassifyCmd::Transform { file, sig, tol } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("cannot read {}", file.display()))?;
            let parsed: TransformFile = serde_json::from_str(&text).map_err(|e| Failure::Usage.wrap(e))?;
            let (rows, file_sig) = match parsed {
                TransformFile::Bare(m) => (m, None),
                TransformFile::Tagged { matrix, signature } => (matrix, signature),
            };
            let m = Matrix::from_rows(&rows).map_err(|e| Failure::Usage.wrap(e))?;
            let sig = signature(sig.or(file_sig).unwrap_or((m.rows(), 1)))?;
            let r = classify_transform(&m, sig, tol).precondition()?;
            crate::print_report(&json!({
                "member": r.is_member,
                "residual": r.residual,
                "component": r.component,
                "conjugacy": r.conjugacy,
                "angle": r.angle,
                "det": r.det_total,
                "det_spatial": r.det_spatial,
                "det_temporal": r.det_temporal,
                "fixed_direction": r.fixed_direction,
            }))
        }
        ClassifyCmd::Relation { p, q } => {
            if p.len() != q.len() {
                return Err(Failure::Usage.because("p and q must have the same length"));
            }
            let sig = signature((p.len(), 1))?;
            let (p, q) = (Vector::new(sig, p).precondition()?, Vector::new(sig, q).precondition()?);
            let r = causal_relations(&p, &q).precondition()?;
            crate::print_report(&r)
        }
    }
}
