//! Geometry of pseudo-Euclidean space `R^n_nu` and Lorentz-Minkowski space.
//!
//! The crate is organised bottom-up: [`jet`] supplies forward-mode
//! differentiation, [`lorentz`] the indefinite linear algebra, and the curve,
//! surface, split-complex and Weierstrass layers build on both.

pub mod complex;
pub mod curve;
pub mod export;
pub mod jet;
pub mod lorentz;
pub mod ode;
pub mod quad;
pub mod split;
pub mod surface;
pub mod vec3;
pub mod weierstrass;
