//! Box domains, tensor-product quadrature rules, and the measure
//! functionals built on them.
//!
//! All integration happens over axis-aligned boxes. Node contributions are
//! accumulated with pairwise summation in a fixed order, so results are
//! reproducible regardless of how callers schedule the evaluations.

use thiserror::Error;

use crate::conformal::{ConformalError, ConformalSystem, ScalePreset};
use crate::geometry::MetricField;
use crate::real::Real;

/// Hard cap on tensor-product node counts, to keep accidental
/// `order^dimension` blowups from running away.
pub const NODE_BUDGET: usize = 1 << 24;

pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("domain bounds must satisfy lower < upper componentwise (axis {axis})")]
    InvalidBounds { axis: usize },
    #[error("domain dimension mismatch: lower has {lower}, upper has {upper}")]
    BoundsLength { lower: usize, upper: usize },
    #[error("quadrature order {order} is outside 1..={MAX_ORDER}")]
    InvalidOrder { order: usize },
    #[error("{nodes} tensor-product nodes exceed the budget of {NODE_BUDGET}")]
    NodeBudgetExceeded { nodes: usize },
    #[error("integrand failed at node ({coords}): {detail}")]
    NodeEvaluation { coords: String, detail: String },
    #[error("dimension mismatch between rule inputs: {detail}")]
    DimensionMismatch { detail: String },
    #[error("determinant of the metric is {det} >= 0 at node ({coords})")]
    NonLorentzianNode { det: f64, coords: String },
    #[error("measure conditions require the lambda_one preset, scenario uses {found}")]
    PresetMismatch { found: String },
    #[error(transparent)]
    Conformal(#[from] Box<ConformalError>),
}

impl From<ConformalError> for QuadratureError {
    fn from(e: ConformalError) -> Self {
        QuadratureError::Conformal(Box::new(e))
    }
}

/// Axis-aligned integration region with strictly positive volume.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDomain<T> {
    lower: Vec<T>,
    upper: Vec<T>,
}

impl<T: Real> BoxDomain<T> {
    pub fn new(lower: Vec<T>, upper: Vec<T>) -> Result<Self, QuadratureError> {
        if lower.len() != upper.len() {
            return Err(QuadratureError::BoundsLength {
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        for (axis, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) {
                return Err(QuadratureError::InvalidBounds { axis });
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            lower: vec![T::zero(); dim],
            upper: vec![T::one(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn volume(&self) -> T {
        self.lower
            .iter()
            .zip(&self.upper)
            .fold(T::one(), |acc, (lo, hi)| acc * (*hi - *lo))
    }

    pub fn contains(&self, point: &[T]) -> bool {
        point.len() == self.dim()
            && point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(p, (lo, hi))| *p >= *lo && *p <= *hi)
    }

    /// Euclidean length of the main diagonal.
    pub fn diagonal(&self) -> T {
        self.lower
            .iter()
            .zip(&self.upper)
            .fold(T::zero(), |acc, (lo, hi)| acc + (*hi - *lo) * (*hi - *lo))
            .sqrt()
    }

    /// The 2^D corner points, in lexicographic order.
    pub fn corners(&self) -> Vec<Vec<T>> {
        let d = self.dim();
        (0..(1usize << d))
            .map(|mask| {
                (0..d)
                    .map(|axis| {
                        if mask >> axis & 1 == 0 {
                            self.lower[axis]
                        } else {
                            self.upper[axis]
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    GaussLegendre,
    Midpoint,
}

/// Tensor-product rule: the same 1-d scheme of `order` nodes on every axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub order: usize,
}

impl QuadratureRule {
    pub fn new(kind: RuleKind, order: usize) -> Result<Self, QuadratureError> {
        if order == 0 || order > MAX_ORDER {
            return Err(QuadratureError::InvalidOrder { order });
        }
        Ok(Self { kind, order })
    }

    pub fn gauss_legendre(order: usize) -> Result<Self, QuadratureError> {
        Self::new(RuleKind::GaussLegendre, order)
    }

    pub fn midpoint(order: usize) -> Result<Self, QuadratureError> {
        Self::new(RuleKind::Midpoint, order)
    }

    /// Default accuracy/cost tradeoff per dimension: order 16 up to three
    /// dimensions, 8 in four, 4 above that.
    pub fn default_for_dimension(dim: usize) -> Self {
        let order = match dim {
            0..=3 => 16,
            4 => 8,
            _ => 4,
        };
        Self {
            kind: RuleKind::GaussLegendre,
            order,
        }
    }

    /// Nodes and weights on `[a, b]`.
    pub fn nodes_1d<T: Real>(&self, a: T, b: T) -> (Vec<T>, Vec<T>) {
        match self.kind {
            RuleKind::GaussLegendre => {
                let (ref_nodes, ref_weights) = gauss_legendre_nodes::<T>(self.order);
                let half = (b - a) / T::lit(2.0);
                let mid = (a + b) / T::lit(2.0);
                let nodes = ref_nodes.iter().map(|x| mid + half * *x).collect();
                let weights = ref_weights.iter().map(|w| half * *w).collect();
                (nodes, weights)
            }
            RuleKind::Midpoint => {
                let n = self.order;
                let h = (b - a) / T::lit(n as f64);
                let nodes = (0..n).map(|i| a + h * T::lit(i as f64 + 0.5)).collect();
                let weights = vec![h; n];
                (nodes, weights)
            }
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre polynomial.
pub fn gauss_legendre_nodes<T: Real>(order: usize) -> (Vec<T>, Vec<T>) {
    let n = order;
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let half = (n + 1) / 2;
    for i in 0..half {
        // Tricomi-style initial guess, then Newton
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = T::lit(guess);
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() * (x.abs() + T::one()) {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // the middle node is exactly zero
        let mid = n / 2;
        nodes[mid] = T::zero();
        let (_, d) = legendre_with_derivative(n, T::zero());
        weights[mid] = T::lit(2.0) / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p_prev = T::one();
    let mut p = x;
    if n == 0 {
        return (T::one(), T::zero());
    }
    for k in 2..=n {
        let kf = T::lit(k as f64);
        let next = ((T::lit(2.0) * kf - T::one()) * x * p - (kf - T::one()) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let derivative = T::lit(n as f64) * (x * p - p_prev) / (x * x - T::one());
    (p, derivative)
}

/// Deterministic pairwise summation.
pub fn pairwise_sum<T: Real>(values: &[T]) -> T {
    match values.len() {
        0 => T::zero(),
        1..=8 => values.iter().fold(T::zero(), |acc, v| acc + *v),
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

fn format_point<T: Real>(point: &[T]) -> String {
    point
        .iter()
        .map(|c| format!("{c}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Tensor-product quadrature of `field` over `domain`.
///
/// A node evaluation failure aborts the whole integral with the offending
/// node coordinates; nodes are never silently skipped.
pub fn integrate<T, F>(
    mut field: F,
    domain: &BoxDomain<T>,
    rule: &QuadratureRule,
) -> Result<T, QuadratureError>
where
    T: Real,
    F: FnMut(&[T]) -> Result<T, QuadratureError>,
{
    let dim = domain.dim();
    if rule.order == 0 || rule.order > MAX_ORDER {
        return Err(QuadratureError::InvalidOrder { order: rule.order });
    }
    let total = rule.order.checked_pow(dim as u32).unwrap_or(usize::MAX);
    if total > NODE_BUDGET {
        return Err(QuadratureError::NodeBudgetExceeded { nodes: total });
    }
    let axes: Vec<(Vec<T>, Vec<T>)> = (0..dim)
        .map(|axis| rule.nodes_1d(domain.lower[axis], domain.upper[axis]))
        .collect();
    let mut contributions = Vec::with_capacity(total);
    let mut index = vec![0usize; dim];
    let mut point = vec![T::zero(); dim];
    loop {
        let mut weight = T::one();
        for axis in 0..dim {
            point[axis] = axes[axis].0[index[axis]];
            weight = weight * axes[axis].1[index[axis]];
        }
        let value = field(&point).map_err(|e| match e {
            QuadratureError::NodeEvaluation { .. } | QuadratureError::NonLorentzianNode { .. } => e,
            other => QuadratureError::NodeEvaluation {
                coords: format_point(&point),
                detail: other.to_string(),
            },
        })?;
        contributions.push(weight * value);
        // odometer increment
        let mut axis = 0;
        loop {
            if axis == dim {
                return Ok(pairwise_sum(&contributions));
            }
            index[axis] += 1;
            if index[axis] < rule.order {
                break;
            }
            index[axis] = 0;
            axis += 1;
        }
        if dim == 0 {
            return Ok(pairwise_sum(&contributions));
        }
    }
}

/// Volume functional `∫ |det g|^{1/2}` over the domain; requires
/// `det g < 0` at every node.
pub fn riemann_volume<T: Real>(
    g: &MetricField,
    domain: &BoxDomain<T>,
    rule: &QuadratureRule,
) -> Result<T, QuadratureError> {
    integrate(
        |p| {
            let det = g.determinant(p).map_err(|e| node_error(p, &e))?;
            if det >= T::zero() {
                return Err(QuadratureError::NonLorentzianNode {
                    det: det.to_f64_lossy(),
                    coords: format_point(p),
                });
            }
            Ok(det.abs().sqrt())
        },
        domain,
        rule,
    )
}

/// Rescaled-chart volume functional evaluated in the source chart:
/// `∫ |f · det g|^{1/2}` over the system's domain.
pub fn conformal_volume<T: Real>(
    sys: &ConformalSystem<T>,
    rule: &QuadratureRule,
) -> Result<T, QuadratureError> {
    integrate(
        |p| {
            let f = sys.scale_function(p).map_err(|e| node_error(p, &e))?;
            let det = sys.metric().determinant(p).map_err(|e| node_error(p, &e))?;
            if det >= T::zero() {
                return Err(QuadratureError::NonLorentzianNode {
                    det: det.to_f64_lossy(),
                    coords: format_point(p),
                });
            }
            Ok((f * det).abs().sqrt())
        },
        sys.domain(),
        rule,
    )
}

fn node_error<T: Real, E: std::fmt::Display>(point: &[T], e: &E) -> QuadratureError {
    QuadratureError::NodeEvaluation {
        coords: format_point(point),
        detail: e.to_string(),
    }
}

/// Outcome of probing which determinant condition the diffeomorphism
/// satisfies, and which measure equality follows, under the `lambda_one`
/// scale choice.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureConditionReport<T> {
    /// Max over sample points of the relative defect of `|det J| = |g|^{1/2}`.
    pub sqrt_condition_defect: T,
    /// Max over sample points of the relative defect of `|det J| = |g|`.
    pub det_condition_defect: T,
    pub sqrt_condition_holds: bool,
    pub det_condition_holds: bool,
    /// `∫ |g| |det J|^{-1}`, the measure the lambda_one choice induces.
    pub measure_value: T,
    /// `∫ |g|^{1/2}`, the canonical volume.
    pub riemann_value: T,
    /// `∫ 1`, the bare box volume.
    pub box_volume: T,
    pub riemann_defect: T,
    pub box_defect: T,
    pub matches_riemann: bool,
    pub matches_box: bool,
}

impl<T: Real> MeasureConditionReport<T> {
    /// Each condition should hold exactly when its measure equality does.
    pub fn consistent(&self) -> bool {
        self.sqrt_condition_holds == self.matches_riemann
            && self.det_condition_holds == self.matches_box
    }
}

fn relative_gap<T: Real>(a: T, b: T) -> T {
    (a - b).abs() / a.abs().max(b.abs()).max(T::one())
}

/// Probes the two determinant conditions over `sample_points` and compares
/// the induced measure against the canonical volume and the box volume.
pub fn measure_conditions<T: Real>(
    sys: &ConformalSystem<T>,
    rule: &QuadratureRule,
    sample_points: &[Vec<T>],
    identity_tol: T,
    quad_tol: T,
) -> Result<MeasureConditionReport<T>, QuadratureError> {
    if sys.scale().preset() != ScalePreset::LambdaOne {
        return Err(QuadratureError::PresetMismatch {
            found: sys.scale().preset().name().to_string(),
        });
    }
    let mut sqrt_defect = T::zero();
    let mut det_defect = T::zero();
    for p in sample_points {
        let det_g_abs = sys
            .metric()
            .determinant(p)
            .map_err(|e| node_error(p, &e))?
            .abs();
        let jdet_abs = sys
            .map()
            .jacobian_det(p)
            .map_err(|e| node_error(p, &e))?
            .abs();
        sqrt_defect = sqrt_defect.max(relative_gap(jdet_abs, det_g_abs.sqrt()));
        det_defect = det_defect.max(relative_gap(jdet_abs, det_g_abs));
    }
    let measure_value = integrate(
        |p| {
            let det_g_abs = sys
                .metric()
                .determinant(p)
                .map_err(|e| node_error(p, &e))?
                .abs();
            let jdet_abs = sys
                .map()
                .jacobian_det(p)
                .map_err(|e| node_error(p, &e))?
                .abs();
            Ok(det_g_abs / jdet_abs)
        },
        sys.domain(),
        rule,
    )?;
    let riemann_value = riemann_volume(sys.metric(), sys.domain(), rule)?;
    let box_volume = sys.domain().volume();
    let riemann_defect = relative_gap(measure_value, riemann_value);
    let box_defect = relative_gap(measure_value, box_volume);
    Ok(MeasureConditionReport {
        sqrt_condition_defect: sqrt_defect,
        det_condition_defect: det_defect,
        sqrt_condition_holds: sqrt_defect <= identity_tol,
        det_condition_holds: det_defect <= identity_tol,
        measure_value,
        riemann_value,
        box_volume,
        riemann_defect,
        box_defect,
        matches_riemann: riemann_defect <= quad_tol,
        matches_box: box_defect <= quad_tol,
    })
}
