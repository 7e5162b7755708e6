//! Scalar abstraction for all numerical kernels.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Floating-point scalar the toolkit is generic over: `f32` or `f64`.
///
/// Everything downstream (dual numbers, matrices, quadrature, the conformal
/// machinery) works for any `Real`; the crate root exposes `f64` aliases and
/// the scenario layer instantiates with `f64`.
pub trait Real: Float + FloatConst + Debug + Display + Send + Sync + 'static {
    /// Conversion from an `f64` literal (lossy for `f32`).
    fn lit(v: f64) -> Self;

    /// Conversion to `f64` for diagnostics and reports (lossless for `f32`).
    fn to_f64_lossy(self) -> f64;
}

impl Real for f32 {
    fn lit(v: f64) -> Self {
        v as f32
    }

    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    fn lit(v: f64) -> Self {
        v
    }

    fn to_f64_lossy(self) -> f64 {
        self
    }
}
