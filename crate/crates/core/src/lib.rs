//! Numerical verification of conformal-rescaling constructions over
//! Lorentzian box charts.
//!
//! The crate parses user-defined metric tensors, diffeomorphisms, and scale
//! functions from a small expression language, derives the local scale
//! factor, the rescaled chart, and the conformal metric, and then measures
//! (rather than assumes) the determinant identities, measure equalities, and
//! inner-product axioms that the construction is supposed to satisfy. Every
//! check reports a defect and a tolerance, so a scenario run shows exactly
//! which identities hold, to what precision, and where they break.
//!
//! All numerical kernels are generic over the scalar type via [`Real`]
//! (`f32` or `f64`); the scenario and report layers work in `f64`.

pub mod conformal;
pub mod fieldlang;
pub mod fixtures;
pub mod geometry;
pub mod inner_space;
pub mod quadrature;
pub mod real;
pub mod report;
pub mod sample;
pub mod scenario;
pub mod suite;

pub use real::Real;

/// `f64` instantiations of the generic core types.
pub type Dual64 = fieldlang::Dual<f64>;
pub type SquareMatrix64 = geometry::SquareMatrix<f64>;
pub type BoxDomain64 = quadrature::BoxDomain<f64>;
pub type ConformalSystem64 = conformal::ConformalSystem<f64>;

/// `f32` instantiations, for callers trading precision for speed.
pub type Dual32 = fieldlang::Dual<f32>;
pub type SquareMatrix32 = geometry::SquareMatrix<f32>;
pub type BoxDomain32 = quadrature::BoxDomain<f32>;
pub type ConformalSystem32 = conformal::ConformalSystem<f32>;
