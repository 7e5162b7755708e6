//! The scale factor, the rescaled chart, the conformal metric, and the
//! Jacobian identities that tie them together.
//!
//! Everything is derived from a bundle of four ingredients: a Lorentzian
//! metric `g`, a diffeomorphism into a second chart, a positive scale
//! function `f`, and a base point. The local scale factor is
//!
//! ```text
//! lambda = [ (f / |det g|) * (det J)^2 ]^(1/(2D))
//! ```
//!
//! and the rescaled chart accumulates `1/lambda` along straight coordinate
//! segments from the base point. `1/lambda dx` is generally not an exact
//! form, so the chart depends on the path; this module measures that
//! discrepancy (`exactness_defect`, `chart_jacobian_defect`) instead of
//! assuming it away, while the algebraic identities between the determinant
//! factors are checked through `jacobian_identity_defect` and
//! `composition_identity_defect`.
//!
//! The chart is defined only on the compact domain box: every segment it
//! integrates over must stay inside, and points outside are rejected. No
//! attempt is made to extend the chart globally when the form is not
//! exact.

use thiserror::Error;

use crate::fieldlang::{EvalError, Expression};
use crate::geometry::{CoordinateMap, GeometryError, MetricField, SquareMatrix};
use crate::quadrature::{gauss_legendre_nodes, BoxDomain, QuadratureError};
use crate::real::Real;

/// Absolute tolerance for the segment integrals behind the rescaled chart.
pub const CHART_INTEGRAL_TOL: f64 = 1e-10;

/// Maximum bisection depth of the adaptive segment integration.
pub const CHART_MAX_DEPTH: usize = 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConformalError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Domain(#[from] QuadratureError),
    #[error("scale function is nonpositive ({value}) at ({point})")]
    NonpositiveScaleFunction { value: f64, point: String },
    #[error("determinant of g is nonnegative ({det}) at ({point})")]
    NonLorentzianDeterminant { det: f64, point: String },
    #[error("Jacobian determinant vanishes at ({point})")]
    SingularJacobian { point: String },
    #[error("scale-factor radicand is nonpositive ({radicand}) at ({point})")]
    NonpositiveRadicand { radicand: f64, point: String },
    #[error(
        "adaptive segment integration did not reach tolerance {requested} \
         (achieved {achieved}) within depth {CHART_MAX_DEPTH}"
    )]
    ChartIntegralNonConvergent { requested: f64, achieved: f64 },
    #[error("point ({point}) lies outside the scenario domain")]
    PointOutsideDomain { point: String },
    #[error("dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },
}

/// Which scale function drives the rescaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalePreset {
    /// `f = 1`: the canonical volume survives the rescaling.
    Unit,
    /// `f = |det g|^{-1/2}`.
    InverseSqrtDet,
    /// `f = |det g| (det J)^{-2}`, which forces the scale factor to 1.
    LambdaOne,
    /// `f` given explicitly as an expression.
    Custom,
}

impl ScalePreset {
    pub fn name(self) -> &'static str {
        match self {
            ScalePreset::Unit => "unit",
            ScalePreset::InverseSqrtDet => "inverse_sqrt_det",
            ScalePreset::LambdaOne => "lambda_one",
            ScalePreset::Custom => "custom",
        }
    }
}

/// The scale function `f`, required positive on the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleChoice {
    preset: ScalePreset,
    custom: Option<Expression>,
}

impl ScaleChoice {
    pub fn unit() -> Self {
        Self {
            preset: ScalePreset::Unit,
            custom: None,
        }
    }

    pub fn inverse_sqrt_det() -> Self {
        Self {
            preset: ScalePreset::InverseSqrtDet,
            custom: None,
        }
    }

    pub fn lambda_one() -> Self {
        Self {
            preset: ScalePreset::LambdaOne,
            custom: None,
        }
    }

    pub fn custom(f: Expression) -> Self {
        Self {
            preset: ScalePreset::Custom,
            custom: Some(f),
        }
    }

    pub fn preset(&self) -> ScalePreset {
        self.preset
    }

    pub fn custom_expression(&self) -> Option<&Expression> {
        self.custom.as_ref()
    }
}

/// The full bundle: metric, diffeomorphism, scale choice, base point, and
/// the box the constructions live on. Immutable after construction; all
/// operations are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalSystem<T> {
    metric: MetricField,
    map: CoordinateMap,
    scale: ScaleChoice,
    base_point: Vec<T>,
    domain: BoxDomain<T>,
}

impl<T: Real> ConformalSystem<T> {
    pub fn new(
        metric: MetricField,
        map: CoordinateMap,
        scale: ScaleChoice,
        base_point: Vec<T>,
        domain: BoxDomain<T>,
    ) -> Result<Self, ConformalError> {
        let dim = metric.dim();
        if map.dim() != dim || domain.dim() != dim || base_point.len() != dim {
            return Err(ConformalError::DimensionMismatch {
                detail: format!(
                    "metric {}, map {}, domain {}, base point {}",
                    dim,
                    map.dim(),
                    domain.dim(),
                    base_point.len()
                ),
            });
        }
        if let Some(f) = &scale.custom {
            if f.dimension() != dim {
                return Err(ConformalError::DimensionMismatch {
                    detail: format!("scale function dimension {}", f.dimension()),
                });
            }
        }
        if !domain.contains(&base_point) {
            return Err(ConformalError::PointOutsideDomain {
                point: format_point(&base_point),
            });
        }
        Ok(Self {
            metric,
            map,
            scale,
            base_point,
            domain,
        })
    }

    pub fn dimension(&self) -> usize {
        self.metric.dim()
    }

    pub fn metric(&self) -> &MetricField {
        &self.metric
    }

    pub fn map(&self) -> &CoordinateMap {
        &self.map
    }

    pub fn scale(&self) -> &ScaleChoice {
        &self.scale
    }

    pub fn base_point(&self) -> &[T] {
        &self.base_point
    }

    pub fn domain(&self) -> &BoxDomain<T> {
        &self.domain
    }

    /// The scale function `f` at a point; positive by contract.
    pub fn scale_function(&self, point: &[T]) -> Result<T, ConformalError> {
        let value = match self.scale.preset {
            ScalePreset::Unit => T::one(),
            ScalePreset::InverseSqrtDet => {
                let det_abs = self.lorentzian_det_abs(point)?;
                T::one() / det_abs.sqrt()
            }
            ScalePreset::LambdaOne => {
                let det_abs = self.lorentzian_det_abs(point)?;
                let jdet = self.nonsingular_jacobian_det(point)?;
                det_abs / (jdet * jdet)
            }
            ScalePreset::Custom => self
                .scale
                .custom
                .as_ref()
                .expect("custom preset carries an expression")
                .evaluate(point)?,
        };
        if !(value > T::zero()) || !value.is_finite() {
            return Err(ConformalError::NonpositiveScaleFunction {
                value: value.to_f64_lossy(),
                point: format_point(point),
            });
        }
        Ok(value)
    }

    /// The local scale factor
    /// `lambda = [ (f/|det g|) (det J)^2 ]^(1/(2D))`, positive real branch.
    pub fn scale_factor(&self, point: &[T]) -> Result<T, ConformalError> {
        let f = self.scale_function(point)?;
        let det_abs = self.lorentzian_det_abs(point)?;
        let jdet = self.nonsingular_jacobian_det(point)?;
        let radicand = f / det_abs * (jdet * jdet);
        if !(radicand > T::zero()) || !radicand.is_finite() {
            return Err(ConformalError::NonpositiveRadicand {
                radicand: radicand.to_f64_lossy(),
                point: format_point(point),
            });
        }
        let exponent = T::one() / T::lit(2.0 * self.dimension() as f64);
        Ok(radicand.powf(exponent))
    }

    /// Inverts the scale-factor relation: given a factor value at `point`,
    /// returns the scale function that produces it,
    /// `f = lambda^(2D) |det g| (det J)^{-2}`.
    pub fn scale_function_from_factor(&self, lambda: T, point: &[T]) -> Result<T, ConformalError> {
        if !(lambda > T::zero()) || !lambda.is_finite() {
            return Err(ConformalError::NonpositiveRadicand {
                radicand: lambda.to_f64_lossy(),
                point: format_point(point),
            });
        }
        let det_abs = self.lorentzian_det_abs(point)?;
        let jdet = self.nonsingular_jacobian_det(point)?;
        Ok(lambda.powi(2 * self.dimension() as i32) * det_abs / (jdet * jdet))
    }

    /// The conformal metric `lambda^2 g` at a point.
    pub fn conformal_metric(&self, point: &[T]) -> Result<SquareMatrix<T>, ConformalError> {
        let lambda = self.scale_factor(point)?;
        let factor = lambda * lambda;
        let g = self.metric.evaluate(point)?;
        let mut q = SquareMatrix::zeros(g.dim());
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                q.set(i, j, factor * g.get(i, j));
            }
        }
        Ok(q)
    }

    /// Rescaled-chart image of `point`: componentwise accumulation of
    /// `1/lambda` along the straight segment from the base point.
    pub fn chart_point(&self, point: &[T]) -> Result<Vec<T>, ConformalError> {
        self.chart_segment(&self.base_point, point)
    }

    /// Chart displacement along the straight segment from `from` to `to`:
    /// `(to - from)^mu * ∫ 1/lambda` along the segment.
    pub fn chart_segment(&self, from: &[T], to: &[T]) -> Result<Vec<T>, ConformalError> {
        for p in [from, to] {
            if !self.domain.contains(p) {
                return Err(ConformalError::PointOutsideDomain {
                    point: format_point(p),
                });
            }
        }
        let integral = self.inverse_scale_integral(from, to)?;
        Ok(from
            .iter()
            .zip(to)
            .map(|(a, b)| (*b - *a) * integral)
            .collect())
    }

    /// `∫_0^1 1/lambda(from + t (to - from)) dt` by adaptive bisection of
    /// 16-point Gauss–Legendre panels.
    fn inverse_scale_integral(&self, from: &[T], to: &[T]) -> Result<T, ConformalError> {
        let (nodes, weights) = gauss_legendre_nodes::<T>(16);
        let eval = |t: T| -> Result<T, ConformalError> {
            let p: Vec<T> = from
                .iter()
                .zip(to)
                .map(|(a, b)| *a + t * (*b - *a))
                .collect();
            Ok(T::one() / self.scale_factor(&p)?)
        };
        let panel = |a: T, b: T, eval: &dyn Fn(T) -> Result<T, ConformalError>| {
            let half = (b - a) / T::lit(2.0);
            let mid = (a + b) / T::lit(2.0);
            let mut acc = T::zero();
            for (x, w) in nodes.iter().zip(&weights) {
                acc = acc + *w * eval(mid + half * *x)?;
            }
            Ok::<T, ConformalError>(acc * half)
        };
        let tol = T::lit(CHART_INTEGRAL_TOL);
        // iterative bisection stack: (a, b, whole-panel estimate, tol, depth)
        let whole = panel(T::zero(), T::one(), &eval)?;
        let mut stack = vec![(T::zero(), T::one(), whole, tol, 0usize)];
        let mut total = T::zero();
        while let Some((a, b, estimate, tol, depth)) = stack.pop() {
            let mid = (a + b) / T::lit(2.0);
            let left = panel(a, mid, &eval)?;
            let right = panel(mid, b, &eval)?;
            let refined = left + right;
            let gap = (estimate - refined).abs();
            if gap <= tol {
                total = total + refined;
                continue;
            }
            if depth >= CHART_MAX_DEPTH {
                return Err(ConformalError::ChartIntegralNonConvergent {
                    requested: CHART_INTEGRAL_TOL,
                    achieved: gap.to_f64_lossy(),
                });
            }
            let half_tol = tol / T::lit(2.0);
            stack.push((a, mid, left, half_tol, depth + 1));
            stack.push((mid, b, right, half_tol, depth + 1));
        }
        Ok(total)
    }

    /// Gap between the straight-segment chart displacement from `from` to
    /// `to` and the axis-by-axis two-leg route, max over components. Zero
    /// (up to quadrature tolerance) exactly when the accumulated one-form is
    /// path-independent between the two points.
    pub fn exactness_defect(&self, from: &[T], to: &[T]) -> Result<T, ConformalError> {
        let straight = self.chart_segment(from, to)?;
        let mut legged = vec![T::zero(); self.dimension()];
        let mut current = from.to_vec();
        for axis in 0..self.dimension() {
            let mut next = current.clone();
            next[axis] = to[axis];
            if next != current {
                let step = self.chart_segment(&current, &next)?;
                for (acc, s) in legged.iter_mut().zip(&step) {
                    *acc = *acc + *s;
                }
            }
            current = next;
        }
        Ok(straight
            .iter()
            .zip(&legged)
            .fold(T::zero(), |acc, (s, l)| acc.max((*s - *l).abs())))
    }

    /// Central-difference Jacobian of the rescaled chart at `point`,
    /// compared against `1/lambda(point) * identity` in the max norm.
    ///
    /// For constant scale factors the two agree to finite-difference noise;
    /// in general the gap quantifies how far the accumulated one-form is
    /// from having the pointwise Jacobian the algebraic identities use.
    pub fn chart_jacobian_defect(&self, point: &[T]) -> Result<T, ConformalError> {
        let dim = self.dimension();
        let h = T::lit(1e-5) * self.domain.diagonal();
        let lambda = self.scale_factor(point)?;
        let target = T::one() / lambda;
        let mut defect = T::zero();
        for axis in 0..dim {
            let mut plus = point.to_vec();
            let mut minus = point.to_vec();
            plus[axis] = plus[axis] + h;
            minus[axis] = minus[axis] - h;
            let x_plus = self.chart_point(&plus)?;
            let x_minus = self.chart_point(&minus)?;
            for component in 0..dim {
                let derivative = (x_plus[component] - x_minus[component]) / (T::lit(2.0) * h);
                let expected = if component == axis { target } else { T::zero() };
                defect = defect.max((derivative - expected).abs());
            }
        }
        Ok(defect)
    }

    /// Relative defect of the determinant identity
    /// `lambda^D = (f/|det g|)^{1/2} |det J|`.
    pub fn jacobian_identity_defect(&self, point: &[T]) -> Result<T, ConformalError> {
        let lambda = self.scale_factor(point)?;
        let lhs = lambda.powi(self.dimension() as i32);
        let f = self.scale_function(point)?;
        let det_abs = self.lorentzian_det_abs(point)?;
        let jdet_abs = self.nonsingular_jacobian_det(point)?.abs();
        let rhs = (f / det_abs).sqrt() * jdet_abs;
        Ok((lhs - rhs).abs() / lhs)
    }

    /// Absolute defect of the three-factor composition identity: the
    /// product of `lambda^D`, `(|det g|/f)^{1/2} (det J)^{-2}`, and
    /// `|det J|` must be 1.
    pub fn composition_identity_defect(&self, point: &[T]) -> Result<T, ConformalError> {
        let lambda = self.scale_factor(point)?;
        let f = self.scale_function(point)?;
        let det_abs = self.lorentzian_det_abs(point)?;
        let jdet_abs = self.nonsingular_jacobian_det(point)?.abs();
        let factor_chart = lambda.powi(self.dimension() as i32);
        let factor_between = (det_abs / f).sqrt() / (jdet_abs * jdet_abs);
        let factor_map = jdet_abs;
        Ok((factor_chart * factor_between * factor_map - T::one()).abs())
    }

    fn lorentzian_det_abs(&self, point: &[T]) -> Result<T, ConformalError> {
        let det = self.metric.determinant(point)?;
        if det >= T::zero() {
            return Err(ConformalError::NonLorentzianDeterminant {
                det: det.to_f64_lossy(),
                point: format_point(point),
            });
        }
        Ok(det.abs())
    }

    fn nonsingular_jacobian_det(&self, point: &[T]) -> Result<T, ConformalError> {
        let jdet = self.map.jacobian_det(point)?;
        if jdet.abs() <= T::lit(1e-12) {
            return Err(ConformalError::SingularJacobian {
                point: format_point(point),
            });
        }
        Ok(jdet)
    }
}

fn format_point<T: Real>(point: &[T]) -> String {
    point
        .iter()
        .map(|c| format!("{c}"))
        .collect::<Vec<_>>()
        .join(", ")
}
