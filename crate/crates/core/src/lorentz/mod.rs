//! Indefinite-metric linear algebra over `R^n_nu`.

mod causal;
mod matrix;
mod transform;

pub use causal::{causal_relations, hyperbolic_angle, time_orientation, CausalRelations, TimeOrientation};
pub use matrix::Matrix;
pub use transform::{
    classify_transform, margulis_invariant, real_cubic_roots, Component, Conjugacy, PseudoOrthReport,
};

use std::fmt;

use serde::{Deserialize, Serialize};

/// Default scale-relative zero tolerance for causal classification.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum LorentzError {
    #[error("invalid signature: n = {n}, nu = {nu}")]
    InvalidSignature { n: usize, nu: usize },
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector has no causal character")]
    ZeroVector,
    #[error("input vectors are linearly dependent")]
    DependentInput,
    #[error("span of the first {index} vectors is degenerate")]
    DegenerateChain { index: usize },
    #[error("expected {expected} arguments, found {found}")]
    WrongArgumentCount { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix rows have different lengths")]
    RaggedMatrix,
    #[error("transformation is not hyperbolic: {0}")]
    NotHyperbolic(String),
}

/// Dimension `n` and index `nu` of `R^n_nu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    n: usize,
    nu: usize,
}

impl Signature {
    pub fn new(n: usize, nu: usize) -> Result<Self, LorentzError> {
        if n == 0 || nu > n {
            return Err(LorentzError::InvalidSignature { n, nu });
        }
        Ok(Signature { n, nu })
    }

    pub fn euclidean(n: usize) -> Self {
        Signature::new(n, 0).expect("n >= 1")
    }

    pub fn lorentz(n: usize) -> Self {
        Signature::new(n, 1).expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    /// `+1` for the first `n - nu` coordinates, `-1` for the rest.
    pub fn weight(&self, i: usize) -> f64 {
        if i < self.n - self.nu {
            1.0
        } else {
            -1.0
        }
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.weight(i)).collect()
    }

    /// `(-1)^nu`
    pub fn parity(&self) -> f64 {
        if self.nu % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// The diagonal matrix `Id_{n-nu,nu}`.
    pub fn metric(&self) -> Matrix {
        Matrix::diag(&self.weights())
    }

    fn check(&self, other: &Signature) -> Result<(), LorentzError> {
        if self != other {
            return Err(LorentzError::SignatureMismatch { left: *self, right: *other });
        }
        Ok(())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^{}_{}", self.n, self.nu)
    }
}

/// A vector of `R^n_nu`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vector {
    coords: Vec<f64>,
    sig: Signature,
}

impl Vector {
    pub fn new(sig: Signature, coords: Vec<f64>) -> Result<Self, LorentzError> {
        if coords.len() != sig.n {
            return Err(LorentzError::DimensionMismatch { expected: sig.n, found: coords.len() });
        }
        Ok(Vector { coords, sig })
    }

    pub fn zero(sig: Signature) -> Self {
        Vector { coords: vec![0.0; sig.n], sig }
    }

    /// The `i`-th canonical basis vector (0-based).
    pub fn basis(sig: Signature, i: usize) -> Self {
        let mut v = Vector::zero(sig);
        v.coords[i] = 1.0;
        v
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| *x == 0.0)
    }

    pub fn norm_e_sq(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum()
    }

    pub fn scaled(&self, s: f64) -> Vector {
        Vector { coords: self.coords.iter().map(|x| s * x).collect(), sig: self.sig }
    }

    /// `self + s * other`
    pub fn axpy(&self, s: f64, other: &Vector) -> Result<Vector, LorentzError> {
        self.sig.check(&other.sig)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + s * b).collect();
        Ok(Vector { coords, sig: self.sig })
    }

    pub fn add(&self, other: &Vector) -> Result<Vector, LorentzError> {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector, LorentzError> {
        self.axpy(-1.0, other)
    }

    /// Coefficients `Id x`, so that `<x, y> = (Id x) . y`.
    pub fn lowered(&self) -> Vec<f64> {
        self.coords.iter().enumerate().map(|(i, x)| self.sig.weight(i) * x).collect()
    }
}

/// Causal character of a vector, line, plane or curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

impl CausalClass {
    /// `1`, `-1` or `0`.
    pub fn indicator(self) -> i8 {
        match self {
            CausalClass::Spacelike => 1,
            CausalClass::Timelike => -1,
            CausalClass::Lightlike => 0,
        }
    }

    /// Classify a squared pseudo-norm, treating `|sq| <= tol * euclid_sq` as zero.
    pub fn from_square(sq: f64, euclid_sq: f64, tol: f64) -> Self {
        if sq.abs() <= tol * euclid_sq {
            CausalClass::Lightlike
        } else if sq > 0.0 {
            CausalClass::Spacelike
        } else {
            CausalClass::Timelike
        }
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CausalClass::Spacelike => "spacelike",
            CausalClass::Timelike => "timelike",
            CausalClass::Lightlike => "lightlike",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CausalReport {
    pub class: CausalClass,
    pub indicator: i8,
    pub fake_norm: f64,
}

pub fn inner(x: &Vector, y: &Vector) -> Result<f64, LorentzError> {
    x.sig.check(&y.sig)?;
    Ok(x.coords
        .iter()
        .zip(&y.coords)
        .enumerate()
        .map(|(i, (a, b))| x.sig.weight(i) * a * b)
        .sum())
}

fn sq(x: &Vector) -> f64 {
    inner(x, x).expect("same signature")
}

pub fn causal_character(x: &Vector, tol: f64) -> Result<CausalReport, LorentzError> {
    if x.is_zero() {
        return Err(LorentzError::ZeroVector);
    }
    let s = sq(x);
    let class = CausalClass::from_square(s, x.norm_e_sq(), tol);
    Ok(CausalReport { class, indicator: class.indicator(), fake_norm: s.abs().sqrt() })
}

fn common_signature(vs: &[Vector]) -> Result<Option<Signature>, LorentzError> {
    let Some(first) = vs.first() else { return Ok(None) };
    for v in vs {
        first.sig.check(&v.sig)?;
    }
    Ok(Some(first.sig))
}

fn rows_matrix(vs: &[Vector]) -> Matrix {
    let rows: Vec<Vec<f64>> = vs.iter().map(|v| v.coords.clone()).collect();
    Matrix::from_rows(&rows).expect("equal lengths")
}

/// Rank of a family of vectors with scale-relative tolerance.
pub fn rank(vs: &[Vector], tol: f64) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rows_matrix(vs).rank(tol)
}

/// A linearly independent family spanning a subspace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubspaceBasis {
    vectors: Vec<Vector>,
    claimed_dim: usize,
    sig: Signature,
}

impl SubspaceBasis {
    pub fn new(sig: Signature, vectors: Vec<Vector>) -> Result<Self, LorentzError> {
        if let Some(s) = common_signature(&vectors)? {
            sig.check(&s)?;
        }
        if rank(&vectors, 1e-12) != vectors.len() {
            return Err(LorentzError::DependentInput);
        }
        Ok(SubspaceBasis { claimed_dim: vectors.len(), vectors, sig })
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.claimed_dim
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    /// Whether `other` spans the same subspace.
    pub fn same_span(&self, other: &SubspaceBasis, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        rank(&all, tol) == self.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceType {
    Spacelike,
    Timelike,
    Lightlike,
    /// Indefinite non-degenerate subspace of an ambient with index above one.
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubspaceReport {
    pub causal_type: SubspaceType,
    pub complement: SubspaceBasis,
    pub non_degenerate: bool,
}

/// Causal type of `S`, a basis of `S^perp`, and whether `S + S^perp` is direct.
pub fn subspace_analysis(s: &SubspaceBasis, tol: f64) -> Result<SubspaceReport, LorentzError> {
    let sig = s.sig;
    let complement_rows: Vec<Vec<f64>> = s.vectors.iter().map(|v| v.lowered()).collect();
    let complement = if complement_rows.is_empty() {
        (0..sig.n).map(|i| Vector::basis(sig, i)).collect()
    } else {
        Matrix::from_rows(&complement_rows)?
            .null_space(1e-12)
            .into_iter()
            .map(|c| Vector::new(sig, c))
            .collect::<Result<Vec<_>, _>>()?
    };
    let complement = SubspaceBasis::new(sig, complement)?;
    if s.dim() == 0 {
        return Ok(SubspaceReport { causal_type: SubspaceType::Spacelike, complement, non_degenerate: true });
    }
    let gram = gram_matrix(&s.vectors, &s.vectors)?;
    let scale = s.vectors.iter().map(Vector::norm_e_sq).fold(0.0, f64::max);
    let ev = gram.symmetric_eigenvalues();
    let degenerate = ev.iter().any(|l| l.abs() <= tol * scale);
    let causal_type = if degenerate {
        SubspaceType::Lightlike
    } else if ev.iter().all(|l| *l > 0.0) {
        SubspaceType::Spacelike
    } else if ev.iter().all(|l| *l < 0.0) || sig.nu == 1 {
        SubspaceType::Timelike
    } else {
        SubspaceType::Unclassified
    };
    Ok(SubspaceReport { causal_type, complement, non_degenerate: !degenerate })
}

/// Pseudo-orthogonalize a chain of vectors, failing on degenerate partial spans.
pub fn gram_schmidt_adapted(vs: &[Vector], tol: f64) -> Result<Vec<Vector>, LorentzError> {
    common_signature(vs)?;
    if rank(vs, 1e-12) != vs.len() {
        return Err(LorentzError::DependentInput);
    }
    let mut out: Vec<Vector> = Vec::with_capacity(vs.len());
    for (k, u) in vs.iter().enumerate() {
        let mut w = u.clone();
        for prev in &out {
            let c = inner(u, prev)? / sq(prev);
            w = w.axpy(-c, prev)?;
        }
        if sq(&w).abs() <= tol * w.norm_e_sq() {
            return Err(LorentzError::DegenerateChain { index: k + 1 });
        }
        out.push(w);
    }
    Ok(out)
}

/// [`gram_schmidt_adapted`] followed by division by the fake norms.
pub fn orthonormalize(vs: &[Vector], tol: f64) -> Result<Vec<Vector>, LorentzError> {
    Ok(gram_schmidt_adapted(vs, tol)?
        .into_iter()
        .map(|w| {
            let n = sq(&w).abs().sqrt();
            w.scaled(1.0 / n)
        })
        .collect())
}

/// Matrix of pairwise products `<u_i, v_j>`.
pub fn gram_matrix(us: &[Vector], vs: &[Vector]) -> Result<Matrix, LorentzError> {
    let mut all = us.to_vec();
    all.extend(vs.iter().cloned());
    common_signature(&all)?;
    let mut m = Matrix::zeros(us.len(), vs.len());
    for (i, u) in us.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            m[(i, j)] = inner(u, v)?;
        }
    }
    Ok(m)
}

/// Invertibility of a square matrix, judged by its reduced rank.
pub fn is_invertible(m: &Matrix, tol: f64) -> bool {
    m.is_square() && m.rank(tol) == m.rows()
}

/// Index-`nu` cross product of `n - 1` vectors: the unique `v` with
/// `<v, x> = det(x, v_1, ..., v_{n-1})`.
pub fn cross_product(vs: &[Vector]) -> Result<Vector, LorentzError> {
    let sig = common_signature(vs)?.ok_or(LorentzError::WrongArgumentCount { expected: 1, found: 0 })?;
    let n = sig.n;
    if vs.len() + 1 != n {
        return Err(LorentzError::WrongArgumentCount { expected: n - 1, found: vs.len() });
    }
    let rows = rows_matrix(vs);
    let coords = (0..n)
        .map(|i| {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| rows[(r, if c < i { c } else { c + 1 })]);
            let cofactor = if i % 2 == 0 { 1.0 } else { -1.0 } * minor.det();
            sig.weight(i) * cofactor
        })
        .collect();
    Vector::new(sig, coords)
}

/// Metric trace and determinant of a bilinear form (given by its matrix in
/// canonical coordinates) computed in an orthonormal basis.
pub fn metric_trace_det(form: &Matrix, basis: &[Vector]) -> Result<(f64, f64), LorentzError> {
    let sig = common_signature(basis)?.ok_or(LorentzError::WrongArgumentCount { expected: 1, found: 0 })?;
    if basis.len() != sig.n {
        return Err(LorentzError::WrongArgumentCount { expected: sig.n, found: basis.len() });
    }
    let b = |x: &Vector, y: &Vector| -> f64 {
        let fy = form.mul_vec(y.coords());
        x.coords().iter().zip(&fy).map(|(a, c)| a * c).sum()
    };
    let tr = basis.iter().map(|v| sq(v).signum() * b(v, v)).sum();
    let m = Matrix::from_fn(sig.n, sig.n, |i, j| b(&basis[i], &basis[j]));
    Ok((tr, m.det()))
}
