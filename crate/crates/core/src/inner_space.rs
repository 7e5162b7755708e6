//! The piecewise-Riemannian inner product, norm, and distance over vector
//! fields, plus an empirical audit of the metric-space axioms.
//!
//! The pairing is
//!
//! ```text
//! <X, Y> = ∫ w |Q(X,Y)| / ∫ w        with w = |f det g|^{1/2}, Q = lambda^2 g
//! ```
//!
//! The absolute value makes values nonnegative but the form non-bilinear,
//! and the Lorentzian signature of `Q` admits null directions, so
//! definiteness, Cauchy–Schwarz, and the triangle inequality cannot be taken
//! for granted. `axiom_audit` probes them over a field corpus and reports
//! what actually holds, with witnesses for every violation.
//!
//! The audit covers only what is empirically testable on a finite corpus:
//! completeness of the induced space and any function-space classification
//! are outside its reach and deliberately out of scope.

use std::fmt;

use thiserror::Error;

use crate::conformal::{ConformalError, ConformalSystem};
use crate::fieldlang::Expression;
use crate::geometry::SquareMatrix;
use crate::quadrature::{conformal_volume, integrate, QuadratureError, QuadratureRule};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InnerSpaceError {
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Conformal(#[from] Box<ConformalError>),
    #[error("measure denominator is not positive ({value})")]
    DegenerateDenominator { value: f64 },
    #[error("field `{label}` has {found} components, scenario dimension is {expected}")]
    ComponentCount {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("axiom audit needs a corpus of at least 3 fields, got {found}")]
    CorpusTooSmall { found: usize },
}

impl From<ConformalError> for InnerSpaceError {
    fn from(e: ConformalError) -> Self {
        InnerSpaceError::Conformal(Box::new(e))
    }
}

/// A vector field on the scenario chart, one expression per component.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldElement {
    label: String,
    components: Vec<Expression>,
}

impl VectorFieldElement {
    pub fn new(label: impl Into<String>, components: Vec<Expression>) -> Self {
        Self {
            label: label.into(),
            components,
        }
    }

    pub fn zero(dimension: usize) -> Self {
        Self {
            label: "0".into(),
            components: (0..dimension)
                .map(|_| Expression::constant(dimension, 0.0))
                .collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Expression] {
        &self.components
    }

    pub fn evaluate<T: Real>(&self, point: &[T]) -> Result<Vec<T>, InnerSpaceError> {
        self.components
            .iter()
            .map(|c| {
                c.evaluate(point)
                    .map_err(|e| InnerSpaceError::Conformal(Box::new(ConformalError::Eval(e))))
            })
            .collect()
    }

    pub fn difference(&self, other: &VectorFieldElement) -> VectorFieldElement {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.difference(b))
            .collect();
        Self {
            label: format!("{} - {}", self.label, other.label),
            components,
        }
    }

    pub fn scaled(&self, factor: f64) -> VectorFieldElement {
        Self {
            label: format!("{factor}*{}", self.label),
            components: self.components.iter().map(|c| c.scaled(factor)).collect(),
        }
    }

    fn check_dimension(&self, expected: usize) -> Result<(), InnerSpaceError> {
        if self.components.len() != expected {
            return Err(InnerSpaceError::ComponentCount {
                label: self.label.clone(),
                expected,
                found: self.components.len(),
            });
        }
        Ok(())
    }
}

// Contraction Q(x, y) written symmetrically in x and y, so that swapping the
// arguments produces a bit-identical float result.
fn symmetric_contraction<T: Real>(q: &SquareMatrix<T>, x: &[T], y: &[T]) -> T {
    let n = q.dim();
    let mut acc = T::zero();
    for i in 0..n {
        acc = acc + q.get(i, i) * x[i] * y[i];
        for j in (i + 1)..n {
            acc = acc + q.get(i, j) * (x[i] * y[j] + x[j] * y[i]);
        }
    }
    acc
}

/// `<X, Y>`: measure-weighted average of `|Q(X,Y)|`. Nonnegative by
/// construction, and exactly symmetric in its arguments.
pub fn inner<T: Real>(
    sys: &ConformalSystem<T>,
    x: &VectorFieldElement,
    y: &VectorFieldElement,
    rule: &QuadratureRule,
) -> Result<T, InnerSpaceError> {
    let dim = sys.dimension();
    x.check_dimension(dim)?;
    y.check_dimension(dim)?;
    let denominator = conformal_volume(sys, rule)?;
    if !(denominator > T::zero()) {
        return Err(InnerSpaceError::DegenerateDenominator {
            value: denominator.to_f64_lossy(),
        });
    }
    let numerator = integrate(
        |p| {
            let weight = weight_at(sys, p)?;
            let q = sys
                .conformal_metric(p)
                .map_err(|e| quadrature_node_error(p, &e))?;
            let xv = x.evaluate(p).map_err(|e| quadrature_node_error(p, &e))?;
            let yv = y.evaluate(p).map_err(|e| quadrature_node_error(p, &e))?;
            Ok(weight * symmetric_contraction(&q, &xv, &yv).abs())
        },
        sys.domain(),
        rule,
    )?;
    Ok(numerator / denominator)
}

fn weight_at<T: Real>(sys: &ConformalSystem<T>, p: &[T]) -> Result<T, QuadratureError> {
    let f = sys
        .scale_function(p)
        .map_err(|e| quadrature_node_error(p, &e))?;
    let det = sys
        .metric()
        .determinant(p)
        .map_err(|e| quadrature_node_error(p, &e))?;
    Ok((f * det).abs().sqrt())
}

fn quadrature_node_error<T: Real, E: fmt::Display>(p: &[T], e: &E) -> QuadratureError {
    QuadratureError::NodeEvaluation {
        coords: p
            .iter()
            .map(|c| format!("{c}"))
            .collect::<Vec<_>>()
            .join(", "),
        detail: e.to_string(),
    }
}

/// `||X|| = <X, X>^{1/2}`.
pub fn norm<T: Real>(
    sys: &ConformalSystem<T>,
    x: &VectorFieldElement,
    rule: &QuadratureRule,
) -> Result<T, InnerSpaceError> {
    Ok(inner(sys, x, x, rule)?.sqrt())
}

/// `d(X, Y) = ||X - Y||`, with the difference field in both pairing slots.
pub fn distance<T: Real>(
    sys: &ConformalSystem<T>,
    x: &VectorFieldElement,
    y: &VectorFieldElement,
    rule: &QuadratureRule,
) -> Result<T, InnerSpaceError> {
    let diff = x.difference(y);
    norm(sys, &diff, rule)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    Symmetry,
    Nonnegativity,
    Homogeneity,
    PointIdentity,
    Definiteness,
    CauchySchwarz,
    Triangle,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Symmetry,
        Axiom::Nonnegativity,
        Axiom::Homogeneity,
        Axiom::PointIdentity,
        Axiom::Definiteness,
        Axiom::CauchySchwarz,
        Axiom::Triangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Symmetry => "symmetry",
            Axiom::Nonnegativity => "nonnegativity",
            Axiom::Homogeneity => "homogeneity",
            Axiom::PointIdentity => "point_identity",
            Axiom::Definiteness => "definiteness",
            Axiom::CauchySchwarz => "cauchy_schwarz",
            Axiom::Triangle => "triangle",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Axiom::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomVerdict {
    Held,
    Violated,
    NotApplicable,
}

impl fmt::Display for AxiomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomVerdict::Held => "held",
            AxiomVerdict::Violated => "violated",
            AxiomVerdict::NotApplicable => "not-applicable",
        })
    }
}

/// Concrete inputs that reproduce a probe, most useful for violations.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomWitness<T> {
    pub inputs: Vec<String>,
    pub violation: T,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomRecord<T> {
    pub axiom: Axiom,
    pub probes: usize,
    pub max_violation: T,
    pub verdict: AxiomVerdict,
    /// For violated axioms: every violating probe, in probe order.
    /// For held axioms: the single worst probe, as evidence of the margin.
    pub witnesses: Vec<AxiomWitness<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport<T> {
    pub records: Vec<AxiomRecord<T>>,
}

impl<T: Real> AuditReport<T> {
    pub fn record(&self, axiom: Axiom) -> &AxiomRecord<T> {
        self.records
            .iter()
            .find(|r| r.axiom == axiom)
            .expect("audit covers every axiom")
    }
}

struct ProbeLog<T> {
    probes: usize,
    max_violation: T,
    worst: Option<AxiomWitness<T>>,
    violations: Vec<AxiomWitness<T>>,
    tol: T,
}

impl<T: Real> ProbeLog<T> {
    fn new(tol: T) -> Self {
        Self {
            probes: 0,
            max_violation: T::zero(),
            worst: None,
            violations: Vec::new(),
            tol,
        }
    }

    fn push(&mut self, inputs: Vec<String>, violation: T, detail: String) {
        self.probes += 1;
        let witness = AxiomWitness {
            inputs,
            violation,
            detail,
        };
        if violation > self.tol {
            self.violations.push(witness.clone());
        }
        if self.worst.is_none() || violation > self.max_violation {
            self.max_violation = violation.max(self.max_violation);
            self.worst = Some(witness);
        }
    }

    fn finish(self, axiom: Axiom) -> AxiomRecord<T> {
        let verdict = if self.probes == 0 {
            AxiomVerdict::NotApplicable
        } else if self.violations.is_empty() {
            AxiomVerdict::Held
        } else {
            AxiomVerdict::Violated
        };
        let witnesses = if self.violations.is_empty() {
            self.worst.into_iter().collect()
        } else {
            self.violations
        };
        AxiomRecord {
            axiom,
            probes: self.probes,
            max_violation: self.max_violation,
            verdict,
            witnesses,
        }
    }
}

/// Homogeneity probe constants: sign flip, contraction, expansion.
pub const HOMOGENEITY_FACTORS: [f64; 4] = [-2.0, -1.0, 0.5, 3.0];

/// Empirically tests the inner-product and metric axioms over all pairs and
/// triples of the corpus. Definiteness probes additionally pair each field
/// with the zero field, where null directions of `Q` surface as zero
/// distance between distinct fields.
pub fn axiom_audit<T: Real>(
    sys: &ConformalSystem<T>,
    corpus: &[VectorFieldElement],
    rule: &QuadratureRule,
    tol: T,
    sample_points: &[Vec<T>],
) -> Result<AuditReport<T>, InnerSpaceError> {
    if corpus.len() < 3 {
        return Err(InnerSpaceError::CorpusTooSmall {
            found: corpus.len(),
        });
    }
    let dim = sys.dimension();
    for field in corpus {
        field.check_dimension(dim)?;
    }

    let norms: Vec<T> = corpus
        .iter()
        .map(|x| norm(sys, x, rule))
        .collect::<Result<_, _>>()?;

    let mut symmetry = ProbeLog::new(tol);
    let mut nonnegativity = ProbeLog::new(tol);
    for (i, x) in corpus.iter().enumerate() {
        for y in corpus.iter().skip(i + 1) {
            let xy = inner(sys, x, y, rule)?;
            let yx = inner(sys, y, x, rule)?;
            symmetry.push(
                vec![x.label().into(), y.label().into()],
                (xy - yx).abs(),
                format!("<X,Y> = {xy}, <Y,X> = {yx}"),
            );
            // the absolute value also forces <X,-Y> = <X,Y>; record it
            let x_neg_y = inner(sys, x, &y.scaled(-1.0), rule)?;
            let negative_part = if xy < T::zero() { -xy } else { T::zero() };
            nonnegativity.push(
                vec![x.label().into(), y.label().into()],
                negative_part.max((x_neg_y - xy).abs()),
                format!("<X,Y> = {xy}, <X,-Y> = {x_neg_y}"),
            );
        }
    }

    let mut homogeneity = ProbeLog::new(tol);
    for (x, x_norm) in corpus.iter().zip(&norms) {
        for factor in HOMOGENEITY_FACTORS {
            let scaled = x.scaled(factor);
            let scaled_norm = norm(sys, &scaled, rule)?;
            let expected = T::lit(factor.abs()) * *x_norm;
            let violation = (scaled_norm - expected).abs() / expected.max(T::one());
            homogeneity.push(
                vec![x.label().into(), format!("c={factor}")],
                violation,
                format!("||cX|| = {scaled_norm}, |c|*||X|| = {expected}"),
            );
        }
    }

    let mut point_identity = ProbeLog::new(tol);
    for x in corpus {
        let d = distance(sys, x, x, rule)?;
        point_identity.push(vec![x.label().into()], d, format!("d(X,X) = {d}"));
    }

    // zero-augmented pairs: null directions show up as d(X, 0) = 0
    let zero = VectorFieldElement::zero(dim);
    let mut extended: Vec<&VectorFieldElement> = corpus.iter().collect();
    extended.push(&zero);
    let mut definiteness = ProbeLog::new(tol);
    for i in 0..extended.len() {
        for j in (i + 1)..extended.len() {
            let (x, y) = (extended[i], extended[j]);
            let d = distance(sys, x, y, rule)?;
            if d > tol {
                definiteness.push(
                    vec![x.label().into(), y.label().into()],
                    T::zero(),
                    format!("d = {d} > 0"),
                );
                continue;
            }
            let mut max_pointwise_gap = T::zero();
            for p in sample_points {
                let xv = x.evaluate(p)?;
                let yv = y.evaluate(p)?;
                for (a, b) in xv.iter().zip(&yv) {
                    max_pointwise_gap = max_pointwise_gap.max((*a - *b).abs());
                }
            }
            definiteness.push(
                vec![x.label().into(), y.label().into()],
                max_pointwise_gap,
                format!(
                    "d = {d} but fields differ pointwise by {max_pointwise_gap} (null degeneracy)"
                ),
            );
        }
    }

    let mut cauchy_schwarz = ProbeLog::new(tol);
    for i in 0..corpus.len() {
        for j in (i + 1)..corpus.len() {
            let xy = inner(sys, &corpus[i], &corpus[j], rule)?;
            let bound = norms[i] * norms[j];
            let violation = (xy - bound).max(T::zero()) / bound.max(T::one());
            cauchy_schwarz.push(
                vec![corpus[i].label().into(), corpus[j].label().into()],
                violation,
                format!("<X,Y> = {xy}, ||X||*||Y|| = {bound}"),
            );
        }
    }

    let mut triangle = ProbeLog::new(tol);
    for i in 0..corpus.len() {
        for k in (i + 1)..corpus.len() {
            let d_ik = distance(sys, &corpus[i], &corpus[k], rule)?;
            for (m, mid) in corpus.iter().enumerate() {
                if m == i || m == k {
                    continue;
                }
                let via =
                    distance(sys, &corpus[i], mid, rule)? + distance(sys, mid, &corpus[k], rule)?;
                let violation = (d_ik - via).max(T::zero()) / via.max(T::one());
                triangle.push(
                    vec![
                        corpus[i].label().into(),
                        mid.label().into(),
                        corpus[k].label().into(),
                    ],
                    violation,
                    format!("d(X,Z) = {d_ik}, d(X,Y)+d(Y,Z) = {via}"),
                );
            }
        }
    }

    Ok(AuditReport {
        records: vec![
            symmetry.finish(Axiom::Symmetry),
            nonnegativity.finish(Axiom::Nonnegativity),
            homogeneity.finish(Axiom::Homogeneity),
            point_identity.finish(Axiom::PointIdentity),
            definiteness.finish(Axiom::Definiteness),
            cauchy_schwarz.finish(Axiom::CauchySchwarz),
            triangle.finish(Axiom::Triangle),
        ],
    })
}

#[cfg(test)]
mod tests;
