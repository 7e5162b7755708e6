use super::*;
use crate::conformal::{ConformalSystem, ScaleChoice};
use crate::fieldlang::parse;
use crate::geometry::{CoordinateMap, MetricField};
use crate::quadrature::BoxDomain;
use crate::sample::validation_points;

fn field(label: &str, components: &[&str]) -> VectorFieldElement {
    let dim = components.len();
    VectorFieldElement::new(
        label,
        components.iter().map(|s| parse(s, dim).unwrap()).collect(),
    )
}

fn trivial_minkowski(domain: BoxDomain<f64>) -> ConformalSystem<f64> {
    let base = domain.lower().to_vec();
    ConformalSystem::new(
        MetricField::minkowski(2),
        CoordinateMap::identity(2),
        ScaleChoice::unit(),
        base,
        domain,
    )
    .unwrap()
}

fn rule() -> QuadratureRule {
    QuadratureRule::gauss_legendre(16).unwrap()
}

fn corpus() -> Vec<VectorFieldElement> {
    vec![
        field("e0", &["1", "0"]),
        field("e1", &["0", "1"]),
        field("null_diag", &["1", "1"]),
    ]
}

#[test]
fn inner_constant_timelike_field() {
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let e0 = field("e0", &["1", "0"]);
    let value = inner(&sys, &e0, &e0, &rule()).unwrap();
    assert!((value - 1.0).abs() <= 1e-14);
}

#[test]
fn inner_null_field_vanishes() {
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let null = field("null_diag", &["1", "1"]);
    let value = inner(&sys, &null, &null, &rule()).unwrap();
    assert_eq!(value, 0.0);
}

#[test]
fn inner_linear_field_closed_form() {
    // |Q(X,Y)| = |-x0| integrates to 1/2 over the unit square
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let x = field("x", &["x0", "0"]);
    let y = field("e0", &["1", "0"]);
    let value = inner(&sys, &x, &y, &rule()).unwrap();
    assert!((value - 0.5).abs() <= 1e-13);
}

#[test]
fn norm_values() {
    let sys = trivial_minkowski(BoxDomain::unit(2));
    assert!((norm(&sys, &field("e0", &["1", "0"]), &rule()).unwrap() - 1.0).abs() <= 1e-14);
    assert_eq!(
        norm(&sys, &field("zero", &["0", "0"]), &rule()).unwrap(),
        0.0
    );
    // ||X||^2 = <X,X> = integral of |-(x0)^2| = 1/3
    let x = field("x", &["x0", "0"]);
    assert!((norm(&sys, &x, &rule()).unwrap() - (1.0_f64 / 3.0).sqrt()).abs() <= 1e-13);
}

#[test]
fn distance_values() {
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let e0 = field("e0", &["1", "0"]);
    let zero = VectorFieldElement::zero(2);
    assert_eq!(distance(&sys, &e0, &e0, &rule()).unwrap(), 0.0);
    let d = distance(&sys, &e0, &zero, &rule()).unwrap();
    let n = norm(&sys, &e0, &rule()).unwrap();
    assert_eq!(d.to_bits(), n.to_bits());
    assert!((d - 1.0).abs() <= 1e-14);
}

#[test]
fn inner_is_bitwise_symmetric() {
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let fields = [
        field("a", &["x0", "sin(x1)"]),
        field("b", &["exp(x0)", "x1^2 + 0.5"]),
        field("c", &["1", "x0*x1"]),
    ];
    for x in &fields {
        for y in &fields {
            let xy = inner(&sys, x, y, &rule()).unwrap();
            let yx = inner(&sys, y, x, &rule()).unwrap();
            assert_eq!(xy.to_bits(), yx.to_bits(), "{} vs {}", x.label(), y.label());
        }
    }
}

#[test]
fn inner_is_invariant_under_argument_negation() {
    // the absolute value forces <X,-Y> = <X,Y>
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let x = field("a", &["x0", "sin(x1)"]);
    let y = field("b", &["exp(x0)", "x1^2 + 0.5"]);
    let xy = inner(&sys, &x, &y, &rule()).unwrap();
    let x_neg_y = inner(&sys, &x, &y.scaled(-1.0), &rule()).unwrap();
    assert!((xy - x_neg_y).abs() <= 1e-14 * xy.max(1.0));
}

#[test]
fn norm_is_absolutely_homogeneous() {
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let x = field("a", &["x0 + 0.3", "sin(x1)"]);
    let base = norm(&sys, &x, &rule()).unwrap();
    for c in HOMOGENEITY_FACTORS {
        let scaled = norm(&sys, &x.scaled(c), &rule()).unwrap();
        let expected = c.abs() * base;
        assert!(
            (scaled - expected).abs() / expected.max(1.0) <= 1e-12,
            "c = {c}: {scaled} vs {expected}"
        );
    }
}

#[test]
fn constant_fields_normalize_away_the_domain_size() {
    // constant Q and constant fields: the measure ratio cancels exactly
    let small = trivial_minkowski(BoxDomain::unit(2));
    let big = trivial_minkowski(BoxDomain::new(vec![0.0, 0.0], vec![7.0, 3.0]).unwrap());
    let x = field("a", &["2", "0.5"]);
    let y = field("b", &["1", "3"]);
    // |Q(x,y)| = |-2*1 + 0.5*3| = 0.5
    for sys in [&small, &big] {
        let value = inner(sys, &x, &y, &rule()).unwrap();
        assert!((value - 0.5).abs() <= 1e-12 * 0.5, "{value}");
    }
}

#[test]
fn audit_on_trivial_minkowski_corpus() {
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let sample = validation_points(sys.domain(), "audit-test");
    let report = axiom_audit(&sys, &corpus(), &rule(), 1e-12, &sample).unwrap();

    for axiom in [
        Axiom::Symmetry,
        Axiom::Nonnegativity,
        Axiom::Homogeneity,
        Axiom::PointIdentity,
    ] {
        let record = report.record(axiom);
        assert_eq!(record.verdict, AxiomVerdict::Held, "{axiom}");
        assert!(
            record.max_violation <= 1e-12,
            "{axiom}: {}",
            record.max_violation
        );
    }

    // null direction (1,1): zero distance from the zero field
    let definiteness = report.record(Axiom::Definiteness);
    assert_eq!(definiteness.verdict, AxiomVerdict::Violated);
    assert!(definiteness
        .witnesses
        .iter()
        .any(|w| w.inputs == vec!["null_diag".to_string(), "0".to_string()]));
    assert!(definiteness
        .witnesses
        .iter()
        .all(|w| w.detail.contains("null degeneracy")));

    // <e0, null_diag> = 1 while ||null_diag|| = 0
    let cs = report.record(Axiom::CauchySchwarz);
    assert_eq!(cs.verdict, AxiomVerdict::Violated);
    assert!(cs
        .witnesses
        .iter()
        .any(|w| w.inputs.contains(&"null_diag".to_string())));

    let triangle = report.record(Axiom::Triangle);
    assert_eq!(triangle.verdict, AxiomVerdict::Held);
}

#[test]
fn audit_of_repeated_element_holds_everything() {
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let e0 = field("e0", &["1", "0"]);
    let corpus = vec![e0.clone(), e0.clone(), e0];
    let sample = validation_points(sys.domain(), "audit-repeat");
    let report = axiom_audit(&sys, &corpus, &rule(), 1e-12, &sample).unwrap();
    for axiom in [
        Axiom::Symmetry,
        Axiom::Nonnegativity,
        Axiom::Homogeneity,
        Axiom::PointIdentity,
        Axiom::Definiteness,
        Axiom::CauchySchwarz,
        Axiom::Triangle,
    ] {
        assert_ne!(
            report.record(axiom).verdict,
            AxiomVerdict::Violated,
            "{axiom}"
        );
    }
}

#[test]
fn audit_requires_three_fields() {
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let corpus = vec![field("e0", &["1", "0"])];
    let sample = vec![vec![0.5, 0.5]];
    assert!(matches!(
        axiom_audit(&sys, &corpus, &rule(), 1e-12, &sample),
        Err(InnerSpaceError::CorpusTooSmall { found: 1 })
    ));
}

#[test]
fn rejects_mismatched_field_dimension() {
    let sys = trivial_minkowski(BoxDomain::unit(2));
    let bad = field("bad", &["1", "0", "0"]);
    let e0 = field("e0", &["1", "0"]);
    assert!(matches!(
        inner(&sys, &bad, &e0, &rule()),
        Err(InnerSpaceError::ComponentCount { .. })
    ));
}
