//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `--nocapture`) before asserting.

use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use confspace_core::conformal::{ConformalSystem, ScaleChoice};
use confspace_core::fieldlang::parse;
use confspace_core::fixtures::{fixture_names, load_fixture};
use confspace_core::geometry::{CoordinateMap, MetricField};
use confspace_core::inner_space::{
    axiom_audit, distance, inner, norm, Axiom, AxiomVerdict, VectorFieldElement,
};
use confspace_core::quadrature::{
    conformal_volume, integrate, measure_conditions, riemann_volume, BoxDomain, QuadratureRule,
};
use confspace_core::sample::{halton_points, validation_points};
use confspace_core::scenario::AUDIT_TOL;

fn verdict(number: u32, label: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {number:02} ({label}): {}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "acceptance {number:02} ({label}): {detail}");
}

fn field(label: &str, components: &[&str]) -> VectorFieldElement {
    let dim = components.len();
    VectorFieldElement::new(
        label,
        components.iter().map(|s| parse(s, dim).unwrap()).collect(),
    )
}

fn simpson(h: impl Fn(f64) -> f64, panels: usize) -> f64 {
    let n = panels * 2;
    let step = 1.0 / n as f64;
    let mut acc = h(0.0) + h(1.0);
    for i in 1..n {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += weight * h(i as f64 * step);
    }
    acc * step / 3.0
}

#[test]
fn acceptance_01_composition_identity_on_every_fixture() {
    let mut max_defect = 0.0_f64;
    let mut worst = String::new();
    for name in fixture_names() {
        let scenario = load_fixture(name).unwrap();
        let points = halton_points(scenario.system.domain(), 100, &scenario.name);
        for p in &points {
            let defect = scenario.system.composition_identity_defect(p).unwrap();
            if defect > max_defect {
                max_defect = defect;
                worst = name.to_string();
            }
        }
    }
    verdict(
        1,
        "composition identity",
        max_defect <= 1e-10,
        &format!("max defect {max_defect:.3e} (worst fixture: {worst}) at 100 points per fixture, tolerance 1e-10"),
    );
}

#[test]
fn acceptance_02_scale_round_trip_on_random_scenarios() {
    let mut rng = StdRng::seed_from_u64(0x5eed_c0de);
    let mut max_defect = 0.0_f64;
    for _ in 0..100 {
        let a0: f64 = rng.random_range(-0.5..0.5);
        let a1: f64 = rng.random_range(-0.5..0.5);
        let b0: f64 = rng.random_range(-0.5..0.5);
        let b1: f64 = rng.random_range(-0.5..0.5);
        let c1: f64 = rng.random_range(0.5..2.0);
        let c2: f64 = rng.random_range(-0.5..0.5);
        let c3: f64 = rng.random_range(0.5..2.0);
        let d0: f64 = rng.random_range(-1.0..1.0);
        let d1: f64 = rng.random_range(-1.0..1.0);
        let d2: f64 = rng.random_range(-1.0..1.0);
        let metric = MetricField::from_grid(vec![
            vec![
                parse(&format!("-exp({a0:?} + {a1:?}*x1)"), 2).unwrap(),
                parse("0", 2).unwrap(),
            ],
            vec![
                parse("0", 2).unwrap(),
                parse(&format!("exp({b0:?} + {b1:?}*x0)"), 2).unwrap(),
            ],
        ])
        .unwrap();
        let map = CoordinateMap::new(vec![
            parse(&format!("{c1:?}*x0 + {c2:?}*x1^2"), 2).unwrap(),
            parse(&format!("{c3:?}*x1"), 2).unwrap(),
        ])
        .unwrap();
        let scale =
            ScaleChoice::custom(parse(&format!("exp({d0:?} + {d1:?}*x0 + {d2:?}*x1)"), 2).unwrap());
        let sys: ConformalSystem<f64> =
            ConformalSystem::new(metric, map, scale, vec![0.0, 0.0], BoxDomain::unit(2)).unwrap();
        let points = halton_points(sys.domain(), 16, "roundtrip");
        for p in &points {
            let f = sys.scale_function(p).unwrap();
            let lambda = sys.scale_factor(p).unwrap();
            let recovered = sys.scale_function_from_factor(lambda, p).unwrap();
            max_defect = max_defect.max((recovered - f).abs() / f);
        }
    }
    verdict(
        2,
        "scale-function round trip",
        max_defect <= 1e-10,
        &format!("max relative defect {max_defect:.3e} over 100 random scenarios, tolerance 1e-10"),
    );
}

#[test]
fn acceptance_03_lambda_one_preset_freezes_the_metric() {
    let mut max_lambda_defect = 0.0_f64;
    let mut max_component_defect = 0.0_f64;
    for name in ["lambda_one_preset", "minkowski_scaled"] {
        let scenario = load_fixture(name).unwrap();
        for p in scenario.validation_points() {
            let lambda = scenario.system.scale_factor(&p).unwrap();
            max_lambda_defect = max_lambda_defect.max((lambda - 1.0).abs());
            let q = scenario.system.conformal_metric(&p).unwrap();
            let g = scenario.system.metric().evaluate(&p).unwrap();
            for i in 0..q.dim() {
                for j in 0..q.dim() {
                    max_component_defect =
                        max_component_defect.max((q.get(i, j) - g.get(i, j)).abs());
                }
            }
        }
    }
    verdict(
        3,
        "unit scale factor preset",
        max_lambda_defect <= 1e-12 && max_component_defect <= 1e-12,
        &format!(
            "max |lambda - 1| = {max_lambda_defect:.3e}, max |Q - g| = {max_component_defect:.3e}, tolerance 1e-12"
        ),
    );
}

#[test]
fn acceptance_04_canonical_measure_for_unit_scale() {
    let mut bit_identical = true;
    for name in ["minkowski_unit", "curved_exp", "minkowski_3d"] {
        let scenario = load_fixture(name).unwrap();
        let conformal = conformal_volume(&scenario.system, &scenario.rule).unwrap();
        let riemann = riemann_volume(
            scenario.system.metric(),
            scenario.system.domain(),
            &scenario.rule,
        )
        .unwrap();
        bit_identical &= conformal.to_bits() == riemann.to_bits();
    }
    let curved = load_fixture("curved_exp").unwrap();
    let value = conformal_volume(&curved.system, &curved.rule).unwrap();
    let expected = std::f64::consts::E - 1.0;
    let gap = (value - expected).abs();
    verdict(
        4,
        "canonical measure",
        bit_identical && gap <= 1e-10,
        &format!("bit-identical on unit-scale fixtures: {bit_identical}; curved value {value:.12} vs e-1, gap {gap:.3e}"),
    );
}

#[test]
fn acceptance_05_flat_measure_equals_box_volume() {
    let scenario = load_fixture("flat_measure").unwrap();
    let value = conformal_volume(&scenario.system, &scenario.rule).unwrap();
    let box_volume = scenario.system.domain().volume();
    let gap = (value - box_volume).abs();
    verdict(
        5,
        "flat measure",
        gap <= 1e-10,
        &format!("measure {value:.15} vs box volume {box_volume}, gap {gap:.3e}, tolerance 1e-10"),
    );
}

#[test]
fn acceptance_06_unit_scale_determinant_formula() {
    let mut max_defect = 0.0_f64;
    for name in ["minkowski_unit", "curved_exp", "minkowski_3d"] {
        let scenario = load_fixture(name).unwrap();
        for p in scenario.validation_points() {
            let q_det = scenario.system.conformal_metric(&p).unwrap().det();
            let jdet = scenario.system.map().jacobian_det(&p).unwrap();
            let expected = -(jdet * jdet);
            max_defect = max_defect.max((q_det - expected).abs() / expected.abs());
        }
    }
    verdict(
        6,
        "unit-scale determinant formula",
        max_defect <= 1e-10,
        &format!(
            "max relative defect {max_defect:.3e} across unit-scale fixtures, tolerance 1e-10"
        ),
    );
}

#[test]
fn acceptance_07_measure_conditions_on_scaled_fixture() {
    let scenario = load_fixture("minkowski_scaled").unwrap();
    let sample = scenario.validation_points();
    let report = measure_conditions(
        &scenario.system,
        &scenario.rule,
        &sample,
        scenario.identity_tol,
        scenario.quad_tol,
    )
    .unwrap();
    let ok = report.sqrt_condition_holds
        && !report.det_condition_holds
        && report.matches_riemann
        && !report.matches_box
        && report.consistent();
    verdict(
        7,
        "determinant conditions",
        ok,
        &format!(
            "|det J|=|det g|^(1/2): held={} (defect {:.3e}); |det J|=|det g|: held={} (defect {:.3e}); measure {} vs canonical {} vs box {}",
            report.sqrt_condition_holds,
            report.sqrt_condition_defect,
            report.det_condition_holds,
            report.det_condition_defect,
            report.measure_value,
            report.riemann_value,
            report.box_volume,
        ),
    );
}

#[test]
fn acceptance_08_chart_matches_closed_form_and_simpson_oracle() {
    // scale factor e^{x0} over Minkowski with the identity map
    let sys: ConformalSystem<f64> = ConformalSystem::new(
        MetricField::minkowski(2),
        CoordinateMap::identity(2),
        ScaleChoice::custom(parse("exp(4*x0)", 2).unwrap()),
        vec![0.0, 0.0],
        BoxDomain::unit(2),
    )
    .unwrap();
    let points = halton_points(sys.domain(), 20, "chart-oracle");
    let mut max_closed_gap = 0.0_f64;
    let mut max_oracle_gap = 0.0_f64;
    for p in &points {
        let x = sys.chart_point(p).unwrap();
        let factor = (1.0 - (-p[0]).exp()) / p[0];
        let oracle_integral = simpson(|t| (-(t * p[0])).exp(), 50_000);
        for mu in 0..2 {
            max_closed_gap = max_closed_gap.max((x[mu] - p[mu] * factor).abs());
            max_oracle_gap = max_oracle_gap.max((x[mu] - p[mu] * oracle_integral).abs());
        }
    }
    verdict(
        8,
        "chart construction oracle",
        max_closed_gap <= 1e-9 && max_oracle_gap <= 1e-9,
        &format!(
            "20 points: max gap to closed form {max_closed_gap:.3e}, to Simpson oracle {max_oracle_gap:.3e}, tolerance 1e-9"
        ),
    );
}

#[test]
fn acceptance_09_path_dependence_is_distinguished() {
    let pathdep = load_fixture("pathdep_probe").unwrap();
    let base = pathdep.system.base_point().to_vec();
    let mut pathdep_defect = 0.0_f64;
    for q in halton_points(pathdep.system.domain(), 8, &pathdep.name) {
        pathdep_defect = pathdep_defect.max(pathdep.system.exactness_defect(&base, &q).unwrap());
    }
    let threshold = 10.0 * pathdep.identity_tol;

    let mut constant_defect = 0.0_f64;
    for name in [
        "minkowski_unit",
        "minkowski_scaled",
        "flat_measure",
        "lambda_one_preset",
    ] {
        let scenario = load_fixture(name).unwrap();
        let base = scenario.system.base_point().to_vec();
        for q in halton_points(scenario.system.domain(), 8, &scenario.name) {
            constant_defect =
                constant_defect.max(scenario.system.exactness_defect(&base, &q).unwrap());
        }
    }
    verdict(
        9,
        "path-dependence honesty",
        pathdep_defect > threshold && constant_defect <= 1e-12,
        &format!(
            "path-dependent defect {pathdep_defect:.3e} > {threshold:.1e}; constant-scale defect {constant_defect:.3e} <= 1e-12"
        ),
    );
}

#[test]
fn acceptance_10_inner_product_values_and_audit() {
    let scenario = load_fixture("minkowski_unit").unwrap();
    let sys = &scenario.system;
    let rule = &scenario.rule;

    let e0 = field("e0", &["1", "0"]);
    let null = field("null_diag", &["1", "1"]);
    let linear = field("x", &["x0", "0"]);
    let zero = VectorFieldElement::zero(2);

    let timelike_inner = inner(sys, &e0, &e0, rule).unwrap();
    let null_inner = inner(sys, &null, &null, rule).unwrap();
    let linear_inner = inner(sys, &linear, &e0, rule).unwrap();
    let norm_e0 = norm(sys, &e0, rule).unwrap();
    let dist_e0_zero = distance(sys, &e0, &zero, rule).unwrap();
    let dist_self = distance(sys, &null, &null, rule).unwrap();
    let values_ok = (timelike_inner - 1.0).abs() <= 1e-10
        && null_inner.abs() <= 1e-10
        && (linear_inner - 0.5).abs() <= 1e-10
        && (norm_e0 - 1.0).abs() <= 1e-10
        && (dist_e0_zero - 1.0).abs() <= 1e-10
        && dist_self == 0.0;

    let sample = validation_points(sys.domain(), &scenario.name);
    let report = axiom_audit(sys, &scenario.corpus, rule, AUDIT_TOL, &sample).unwrap();
    let held_ok = [
        Axiom::Symmetry,
        Axiom::Nonnegativity,
        Axiom::Homogeneity,
        Axiom::PointIdentity,
    ]
    .into_iter()
    .all(|axiom| {
        let record = report.record(axiom);
        record.verdict == AxiomVerdict::Held && record.max_violation <= 1e-12
    });
    let definiteness = report.record(Axiom::Definiteness);
    let null_witness = definiteness.verdict == AxiomVerdict::Violated
        && definiteness
            .witnesses
            .iter()
            .any(|w| w.inputs.contains(&"null_diag".to_string()));

    verdict(
        10,
        "inner-product audit",
        values_ok && held_ok && null_witness,
        &format!(
            "<e0,e0>={timelike_inner}, <null,null>={null_inner}, <x,e0>={linear_inner}; held axioms to 1e-12: {held_ok}; definiteness violated with null witness: {null_witness}"
        ),
    );
}

#[test]
fn acceptance_11_gauss_legendre_exactness() {
    let mut max_gap = 0.0_f64;
    for order in [2usize, 4, 8] {
        let rule = QuadratureRule::gauss_legendre(order).unwrap();
        let max_degree = 2 * order - 1;
        let domain1 = BoxDomain::<f64>::unit(1);
        for degree in 0..=max_degree {
            let value =
                integrate(|p: &[f64]| Ok(p[0].powi(degree as i32)), &domain1, &rule).unwrap();
            max_gap = max_gap.max((value - 1.0 / (degree as f64 + 1.0)).abs());
        }
        let domain2 = BoxDomain::<f64>::unit(2);
        for dx in 0..=max_degree {
            for dy in 0..=max_degree {
                let value = integrate(
                    |p: &[f64]| Ok(p[0].powi(dx as i32) * p[1].powi(dy as i32)),
                    &domain2,
                    &rule,
                )
                .unwrap();
                let exact = 1.0 / ((dx as f64 + 1.0) * (dy as f64 + 1.0));
                max_gap = max_gap.max((value - exact).abs());
            }
        }
    }
    verdict(
        11,
        "quadrature exactness",
        max_gap <= 1e-12,
        &format!("max monomial error {max_gap:.3e} for orders 2, 4, 8 in one and two dimensions"),
    );
}

#[test]
fn acceptance_12_json_reports_are_byte_identical() {
    let binary = env!("CARGO_BIN_EXE_confspace");
    let run = || {
        Command::new(binary)
            .args([
                "check",
                "minkowski_unit",
                "--suite",
                "all",
                "--format",
                "json",
            ])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    let ok = first.status.code() == Some(0) && first.stdout == second.stdout;
    verdict(
        12,
        "deterministic reports",
        ok,
        &format!(
            "two runs produced {} and {} bytes, identical: {}",
            first.stdout.len(),
            second.stdout.len(),
            first.stdout == second.stdout
        ),
    );
}
