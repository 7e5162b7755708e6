use super::*;
use crate::fieldlang::parse;

fn expressions(dim: usize, sources: &[&str]) -> Vec<Expression> {
    sources.iter().map(|s| parse(s, dim).unwrap()).collect()
}

fn metric(dim: usize, grid: &[&[&str]]) -> MetricField {
    let rows: Vec<Vec<Expression>> = grid
        .iter()
        .map(|row| row.iter().map(|s| parse(s, dim).unwrap()).collect())
        .collect();
    MetricField::from_grid(rows).unwrap()
}

fn central_jacobian(map: &CoordinateMap, p: &[f64], h: f64) -> SquareMatrix<f64> {
    let n = map.dim();
    let mut j = SquareMatrix::zeros(n);
    for col in 0..n {
        let mut plus = p.to_vec();
        let mut minus = p.to_vec();
        plus[col] += h;
        minus[col] -= h;
        let fp = map.apply(&plus).unwrap();
        let fm = map.apply(&minus).unwrap();
        for row in 0..n {
            j.set(row, col, (fp[row] - fm[row]) / (2.0 * h));
        }
    }
    j
}

// Deterministic family of curved Lorentzian scenarios used by the
// transformation-law properties.
struct RandomScenario {
    g_tilde: MetricField,
    map: CoordinateMap,
}

fn random_scenarios(count: usize, seed: u64) -> Vec<(RandomScenario, Vec<[f64; 2]>)> {
    let mut state = seed;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| {
            let a0 = next() - 0.5;
            let a1 = next() - 0.5;
            let b0 = next() - 0.5;
            let b1 = next() - 0.5;
            let c1 = 0.5 + 1.5 * next();
            let c2 = next() - 0.5;
            let c3 = 0.5 + 1.5 * next();
            let g_tilde = metric(
                2,
                &[
                    &[&format!("-exp({a0:?} + {a1:?}*x1)"), "0"],
                    &["0", &format!("exp({b0:?} + {b1:?}*x0)")],
                ],
            );
            let map = CoordinateMap::new(expressions(
                2,
                &[&format!("{c1:?}*x0 + {c2:?}*x1^2"), &format!("{c3:?}*x1")],
            ))
            .unwrap();
            let points: Vec<[f64; 2]> = (0..4).map(|_| [next(), next()]).collect();
            ((RandomScenario { g_tilde, map }), points)
        })
        .collect()
}

#[test]
fn jacobian_of_linear_map() {
    let map = CoordinateMap::new(expressions(2, &["2*x0", "x1"])).unwrap();
    let j = map.jacobian(&[0.3, -0.7]).unwrap();
    assert_eq!(
        j,
        SquareMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]])
    );
}

#[test]
fn jacobian_of_identity_map_is_identity() {
    for dim in 1..=4 {
        let map = CoordinateMap::identity(dim);
        let p: Vec<f64> = (0..dim).map(|i| 0.1 * i as f64 + 0.3).collect();
        let j = map.jacobian(&p).unwrap();
        assert_eq!(j, SquareMatrix::identity(dim));
        assert_eq!(j.det(), 1.0);
    }
}

#[test]
fn jacobian_matches_finite_differences() {
    let map = CoordinateMap::new(expressions(2, &["x0 + x1^2", "x1"])).unwrap();
    let p = [0.0, 3.0];
    let j = map.jacobian(&p).unwrap();
    assert_eq!(j.get(0, 0), 1.0);
    assert_eq!(j.get(0, 1), 6.0);
    assert_eq!(j.get(1, 0), 0.0);
    assert_eq!(j.get(1, 1), 1.0);
    let fd = central_jacobian(&map, &p, 1e-6);
    for row in 0..2 {
        for col in 0..2 {
            assert!((j.get(row, col) - fd.get(row, col)).abs() <= 1e-6);
        }
    }
}

#[test]
fn signature_of_curved_metric() {
    let g = metric(2, &[&["-exp(2*x1)", "0"], &["0", "1"]]);
    for p in [[0.0, 0.0], [0.5, 0.9], [1.0, 0.2]] {
        assert_eq!(g.signature(&p).unwrap(), (1, 1, 0));
    }
}

#[test]
fn metric_rejects_asymmetric_grid() {
    let rows = vec![expressions(2, &["-1", "x0"]), expressions(2, &["x1", "1"])];
    assert!(matches!(
        MetricField::from_grid(rows),
        Err(GeometryError::AsymmetricComponents { row: 0, col: 1 })
    ));
}

#[test]
fn metric_evaluation_is_bitwise_symmetric() {
    let g = metric(
        2,
        &[&["-exp(2*x1)", "sin(x0)*0.25"], &["sin(x0)*0.25", "1"]],
    );
    let m = g.evaluate(&[0.37, 0.81]).unwrap();
    assert_eq!(m.get(0, 1), m.get(1, 0));
}

#[test]
fn pullback_along_identity_is_unchanged() {
    let g = metric(2, &[&["-exp(2*x1)", "0"], &["0", "1"]]);
    let map = CoordinateMap::identity(2);
    let p = [0.4, 0.6];
    let pulled = pullback_metric(&g, &map, &p).unwrap();
    assert_eq!(pulled, g.evaluate(&p).unwrap());
}

#[test]
fn pullback_along_constant_scaling() {
    let g = MetricField::minkowski(2);
    let map = CoordinateMap::new(expressions(2, &["2*x0", "2*x1"])).unwrap();
    let pulled = pullback_metric(&g, &map, &[0.3, 0.3]).unwrap();
    assert_eq!(
        pulled,
        SquareMatrix::from_rows(&[vec![-4.0, 0.0], vec![0.0, 4.0]])
    );
}

#[test]
fn pullback_determinant_law_on_random_scenarios() {
    for (scenario, points) in random_scenarios(100, 20240601) {
        for p in points {
            let pulled = pullback_metric(&scenario.g_tilde, &scenario.map, &p).unwrap();
            let left = pulled.det();
            let image = scenario.map.apply(&p).unwrap();
            let jdet = scenario.map.jacobian_det(&p).unwrap();
            let right = scenario.g_tilde.determinant(&image).unwrap() * jdet * jdet;
            let denom = left.abs().max(right.abs()).max(1e-30);
            assert!(
                (left - right).abs() / denom <= 1e-10,
                "det law defect {} at {p:?}",
                (left - right).abs() / denom
            );
        }
    }
}

#[test]
fn pullback_preserves_lorentzian_signature() {
    for (scenario, points) in random_scenarios(25, 7) {
        for p in points {
            let pulled = pullback_metric(&scenario.g_tilde, &scenario.map, &p).unwrap();
            assert_eq!(matrix_signature(&pulled).unwrap(), (1, 1, 0));
        }
    }
}

#[test]
fn arc_length_defect_vanishes_for_pullback_metric() {
    // g constructed as the pullback of g̃ detects no defect
    let (scenario, points) = random_scenarios(1, 99).pop().unwrap();
    for p in points {
        let v = [0.8, -0.4];
        let pulled = pullback_metric(&scenario.g_tilde, &scenario.map, &p).unwrap();
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                acc += pulled.get(i, j) * v[i] * v[j];
            }
        }
        // rebuild the pullback as an explicit metric is not possible for
        // expression grids; compare against the transported form directly
        let image = scenario.map.apply(&p).unwrap();
        let jv = scenario.map.jacobian(&p).unwrap().mul_vec(&v);
        let g_image = scenario.g_tilde.evaluate(&image).unwrap();
        let mut there = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                there += g_image.get(i, j) * jv[i] * jv[j];
            }
        }
        assert!((acc - there).abs() <= 1e-12 * acc.abs().max(1.0));
    }
}

#[test]
fn arc_length_defect_zero_for_identity() {
    let g = MetricField::minkowski(2);
    let defect = arc_length_defect(
        &g,
        &g,
        &CoordinateMap::identity(2),
        &[0.2, 0.9],
        &[1.0, 2.0],
    )
    .unwrap();
    assert_eq!(defect, 0.0);
}

#[test]
fn arc_length_defect_detects_non_invariance() {
    // both charts Minkowski but the map doubles lengths: defect 3|η(v,v)|
    let g = MetricField::minkowski(2);
    let map = CoordinateMap::new(expressions(2, &["2*x0", "2*x1"])).unwrap();
    let v = [0.6_f64, 0.8]; // η(v,v) = -0.36 + 0.64 = 0.28
    let defect = arc_length_defect(&g, &g, &map, &[0.5, 0.5], &v).unwrap();
    let eta: f64 = -v[0] * v[0] + v[1] * v[1];
    assert!((defect - 3.0 * eta.abs()).abs() <= 1e-14);
}

#[test]
fn rejects_dimension_above_maximum() {
    let exprs: Vec<Expression> = (0..9)
        .map(|i| parse(&format!("x{i}"), 9).unwrap())
        .collect();
    assert!(matches!(
        CoordinateMap::new(exprs),
        Err(GeometryError::DimensionTooLarge { dim: 9 })
    ));
}
