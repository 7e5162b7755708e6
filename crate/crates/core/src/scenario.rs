//! Scenario files: a JSON document bundling a metric grid, a
//! diffeomorphism, a scale choice, numerics configuration, and the field
//! corpus for the inner-product audit. Loading validates every invariant on
//! a deterministic sample set before any suite runs.

use std::fmt;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::conformal::{ConformalError, ConformalSystem, ScaleChoice, ScalePreset};
use crate::fieldlang::{parse, Expression};
use crate::geometry::{CoordinateMap, GeometryError, MetricField, MAX_DIMENSION};
use crate::inner_space::{Axiom, VectorFieldElement};
use crate::quadrature::{BoxDomain, QuadratureError, QuadratureRule, RuleKind, MAX_ORDER};
use crate::sample::validation_points;

pub const DEFAULT_IDENTITY_TOL: f64 = 1e-10;
pub const DEFAULT_QUAD_TOL: f64 = 1e-8;

/// Fixed tolerance of the axiom audit.
pub const AUDIT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario file `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("scenario document is malformed: {0}")]
    Document(#[from] serde_json::Error),
    #[error("field `{field}`: {source}")]
    Expression {
        field: String,
        source: crate::fieldlang::ParseError,
    },
    #[error("dimension {dim} is outside 1..={MAX_DIMENSION}")]
    BadDimension { dim: usize },
    #[error("field `{field}` has length {found}, expected {expected}")]
    BadLength {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("quadrature kind `{0}` is not one of gauss_legendre, midpoint")]
    BadRuleKind(String),
    #[error("expected_exactness `{0}` is not one of exact, path_dependent, unconstrained")]
    BadExactness(String),
    #[error("expected_degeneracies entry `{0}` is not a known axiom")]
    BadAxiom(String),
    #[error("tolerance `{field}` must be positive, got {value}")]
    BadTolerance { field: String, value: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Conformal(#[from] ConformalError),
    #[error("validation failed at point ({point}): {detail}")]
    Validation { point: String, detail: String },
}

/// How the rescaled chart is expected to behave on this scenario's domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    /// Constant scale factor: path independence to rounding.
    Exact,
    /// Genuinely path-dependent: the defect must be clearly visible.
    PathDependent,
    /// No expectation; the defect is reported but not judged.
    Unconstrained,
}

impl Exactness {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exact" => Exactness::Exact,
            "path_dependent" => Exactness::PathDependent,
            "unconstrained" => Exactness::Unconstrained,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Exactness::Exact => "exact",
            Exactness::PathDependent => "path_dependent",
            Exactness::Unconstrained => "unconstrained",
        }
    }
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    dimension: usize,
    metric: Vec<Vec<String>>,
    diffeomorphism: Vec<String>,
    scale: ScaleSpec,
    base_point: Vec<f64>,
    domain: DomainSpec,
    #[serde(default)]
    quadrature: Option<QuadSpec>,
    #[serde(default)]
    field_corpus: Vec<FieldSpec>,
    #[serde(default)]
    tolerances: Option<TolSpec>,
    #[serde(default)]
    expected_exactness: Option<String>,
    #[serde(default)]
    expected_degeneracies: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
enum ScaleSpec {
    Unit,
    InverseSqrtDet,
    LambdaOne,
    Custom { f: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainSpec {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadSpec {
    #[serde(default = "default_kind")]
    kind: String,
    order: usize,
}

fn default_kind() -> String {
    "gauss_legendre".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSpec {
    label: String,
    components: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TolSpec {
    #[serde(default = "default_identity_tol")]
    identity_tol: f64,
    #[serde(default = "default_quad_tol")]
    quad_tol: f64,
}

fn default_identity_tol() -> f64 {
    DEFAULT_IDENTITY_TOL
}

fn default_quad_tol() -> f64 {
    DEFAULT_QUAD_TOL
}

/// A fully validated scenario, ready for suite runs.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub system: ConformalSystem<f64>,
    pub rule: QuadratureRule,
    pub corpus: Vec<VectorFieldElement>,
    pub identity_tol: f64,
    pub quad_tol: f64,
    pub expected_exactness: Exactness,
    pub expected_degeneracies: Vec<Axiom>,
}

impl Scenario {
    pub fn dimension(&self) -> usize {
        self.system.dimension()
    }

    /// The deterministic validation sample set for this scenario.
    pub fn validation_points(&self) -> Vec<Vec<f64>> {
        validation_points(self.system.domain(), &self.name)
    }
}

/// Loads and validates a scenario from a file path.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    scenario_from_json(&text)
}

/// Loads and validates a scenario from a JSON string.
pub fn scenario_from_json(text: &str) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    build_scenario(file)
}

fn parse_field(
    source: &str,
    dimension: usize,
    field: impl Fn() -> String,
) -> Result<Expression, ScenarioError> {
    parse(source, dimension).map_err(|source| ScenarioError::Expression {
        field: field(),
        source,
    })
}

fn build_scenario(file: ScenarioFile) -> Result<Scenario, ScenarioError> {
    let dim = file.dimension;
    if dim == 0 || dim > MAX_DIMENSION {
        return Err(ScenarioError::BadDimension { dim });
    }

    if file.metric.len() != dim {
        return Err(ScenarioError::BadLength {
            field: "metric".into(),
            expected: dim,
            found: file.metric.len(),
        });
    }
    let mut grid = Vec::with_capacity(dim);
    for (i, row) in file.metric.iter().enumerate() {
        if row.len() != dim {
            return Err(ScenarioError::BadLength {
                field: format!("metric[{i}]"),
                expected: dim,
                found: row.len(),
            });
        }
        let mut parsed = Vec::with_capacity(dim);
        for (j, source) in row.iter().enumerate() {
            parsed.push(parse_field(source, dim, || format!("metric[{i}][{j}]"))?);
        }
        grid.push(parsed);
    }
    let metric = MetricField::from_grid(grid)?;

    if file.diffeomorphism.len() != dim {
        return Err(ScenarioError::BadLength {
            field: "diffeomorphism".into(),
            expected: dim,
            found: file.diffeomorphism.len(),
        });
    }
    let components = file
        .diffeomorphism
        .iter()
        .enumerate()
        .map(|(i, source)| parse_field(source, dim, || format!("diffeomorphism[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let map = CoordinateMap::new(components)?;

    let scale = match &file.scale {
        ScaleSpec::Unit => ScaleChoice::unit(),
        ScaleSpec::InverseSqrtDet => ScaleChoice::inverse_sqrt_det(),
        ScaleSpec::LambdaOne => ScaleChoice::lambda_one(),
        ScaleSpec::Custom { f } => ScaleChoice::custom(parse_field(f, dim, || "scale.f".into())?),
    };

    if file.base_point.len() != dim {
        return Err(ScenarioError::BadLength {
            field: "base_point".into(),
            expected: dim,
            found: file.base_point.len(),
        });
    }
    let domain = BoxDomain::new(file.domain.lower.clone(), file.domain.upper.clone())?;
    if domain.dim() != dim {
        return Err(ScenarioError::BadLength {
            field: "domain".into(),
            expected: dim,
            found: domain.dim(),
        });
    }

    let rule = match &file.quadrature {
        None => QuadratureRule::default_for_dimension(dim),
        Some(spec) => {
            let kind = match spec.kind.as_str() {
                "gauss_legendre" => RuleKind::GaussLegendre,
                "midpoint" => RuleKind::Midpoint,
                other => return Err(ScenarioError::BadRuleKind(other.to_string())),
            };
            if spec.order == 0 || spec.order > MAX_ORDER {
                return Err(QuadratureError::InvalidOrder { order: spec.order }.into());
            }
            QuadratureRule::new(kind, spec.order)?
        }
    };

    let corpus = file
        .field_corpus
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            if spec.components.len() != dim {
                return Err(ScenarioError::BadLength {
                    field: format!("field_corpus[{i}].components"),
                    expected: dim,
                    found: spec.components.len(),
                });
            }
            let components = spec
                .components
                .iter()
                .enumerate()
                .map(|(j, source)| {
                    parse_field(source, dim, || format!("field_corpus[{i}].components[{j}]"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(VectorFieldElement::new(spec.label.clone(), components))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let (identity_tol, quad_tol) = match &file.tolerances {
        None => (DEFAULT_IDENTITY_TOL, DEFAULT_QUAD_TOL),
        Some(t) => (t.identity_tol, t.quad_tol),
    };
    for (name, value) in [("identity_tol", identity_tol), ("quad_tol", quad_tol)] {
        if !(value > 0.0) {
            return Err(ScenarioError::BadTolerance {
                field: name.into(),
                value,
            });
        }
    }

    let expected_exactness = match &file.expected_exactness {
        None => Exactness::Unconstrained,
        Some(name) => {
            Exactness::from_name(name).ok_or_else(|| ScenarioError::BadExactness(name.clone()))?
        }
    };
    let expected_degeneracies = file
        .expected_degeneracies
        .iter()
        .map(|name| Axiom::from_name(name).ok_or_else(|| ScenarioError::BadAxiom(name.clone())))
        .collect::<Result<Vec<_>, _>>()?;

    let system = ConformalSystem::new(metric, map, scale, file.base_point.clone(), domain)?;

    let scenario = Scenario {
        name: file.name,
        system,
        rule,
        corpus,
        identity_tol,
        quad_tol,
        expected_exactness,
        expected_degeneracies,
    };
    validate_on_sample_set(&scenario)?;
    Ok(scenario)
}

fn format_point(point: &[f64]) -> String {
    point
        .iter()
        .map(|c| format!("{c}"))
        .collect::<Vec<_>>()
        .join(", ")
}

// Geometry invariants checked on the validation sample set: det g < 0,
// Lorentzian signature, non-singular Jacobian, positive scale function,
// finite positive scale factor, det Q < 0.
fn validate_on_sample_set(scenario: &Scenario) -> Result<(), ScenarioError> {
    let system = &scenario.system;
    let dim = system.dimension();
    for point in scenario.validation_points() {
        let fail = |detail: String| ScenarioError::Validation {
            point: format_point(&point),
            detail,
        };
        let det = system
            .metric()
            .determinant(&point)
            .map_err(|e| fail(e.to_string()))?;
        if det >= 0.0 {
            return Err(fail(format!("det g = {det} >= 0")));
        }
        let signature = system
            .metric()
            .signature(&point)
            .map_err(|e| fail(e.to_string()))?;
        if signature != (dim - 1, 1, 0) {
            return Err(fail(format!(
                "signature {signature:?} is not ({}, 1, 0)",
                dim - 1
            )));
        }
        let jdet = system
            .map()
            .jacobian_det(&point)
            .map_err(|e| fail(e.to_string()))?;
        if jdet.abs() <= 1e-12 {
            return Err(fail(format!("det J = {jdet} is singular")));
        }
        let f = system
            .scale_function(&point)
            .map_err(|e| fail(e.to_string()))?;
        if !(f > 0.0) {
            return Err(fail(format!("scale function f = {f} <= 0")));
        }
        let lambda = system
            .scale_factor(&point)
            .map_err(|e| fail(e.to_string()))?;
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(fail(format!("scale factor lambda = {lambda}")));
        }
        let q_det = system
            .conformal_metric(&point)
            .map_err(|e| fail(e.to_string()))?
            .det();
        if q_det >= 0.0 {
            return Err(fail(format!("det Q = {q_det} >= 0")));
        }
    }
    Ok(())
}

impl ScalePreset {
    /// Human-readable summary of a scenario's scale choice.
    pub fn describe(self) -> &'static str {
        match self {
            ScalePreset::Unit => "f = 1",
            ScalePreset::InverseSqrtDet => "f = |det g|^(-1/2)",
            ScalePreset::LambdaOne => "f = |det g| (det J)^(-2)",
            ScalePreset::Custom => "custom f expression",
        }
    }
}
