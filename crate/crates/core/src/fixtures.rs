//! Bundled scenarios, embedded at compile time. They double as schema
//! examples; the same files live under `crates/core/fixtures/`.

use crate::scenario::{scenario_from_json, Scenario, ScenarioError};

pub const FIXTURES: &[(&str, &str)] = &[
    (
        "minkowski_unit",
        include_str!("../fixtures/minkowski_unit.json"),
    ),
    (
        "minkowski_scaled",
        include_str!("../fixtures/minkowski_scaled.json"),
    ),
    ("curved_exp", include_str!("../fixtures/curved_exp.json")),
    (
        "flat_measure",
        include_str!("../fixtures/flat_measure.json"),
    ),
    (
        "lambda_one_preset",
        include_str!("../fixtures/lambda_one_preset.json"),
    ),
    (
        "pathdep_probe",
        include_str!("../fixtures/pathdep_probe.json"),
    ),
    (
        "minkowski_3d",
        include_str!("../fixtures/minkowski_3d.json"),
    ),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(name, _)| *name).collect()
}

pub fn fixture_source(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn load_fixture(name: &str) -> Result<Scenario, ScenarioError> {
    let source = fixture_source(name).ok_or_else(|| ScenarioError::Io {
        path: name.to_string(),
        source: std::io::Error::new(
            std::io::ErrorKind::NotFound,
            "no bundled fixture with this name",
        ),
    })?;
    scenario_from_json(source)
}
