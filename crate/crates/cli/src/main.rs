//! Command-line front end: scenario loading, suite orchestration, and
//! report emission.
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
//! load error (including evaluation failures inside a suite).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use confspace_core::fixtures;
use confspace_core::report::Verdict;
use confspace_core::scenario::{load_scenario, scenario_from_json, Scenario};
use confspace_core::suite::{run_suite, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "confspace",
    about = "checks scale-factor, conformal-metric, measure, and inner-product identities over Lorentzian box charts",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a check suite against a scenario file or bundled fixture
    Check {
        /// Path to a scenario file, or the name of a bundled fixture
        scenario: String,

        /// Which checks to run
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,

        /// Override the per-axis quadrature order (1..=64)
        #[arg(long)]
        quad_order: Option<usize>,

        /// Override the identity tolerance
        #[arg(long)]
        tol: Option<f64>,

        /// Override the quadrature comparison tolerance
        #[arg(long)]
        quad_tol: Option<f64>,

        /// Report format
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,

        /// Write the report to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Load a scenario and report whether it satisfies all invariants
    Validate {
        /// Path to a scenario file, or the name of a bundled fixture
        scenario: String,
    },

    /// List the bundled fixtures
    ListFixtures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Identities,
    Measures,
    Examples,
    Inner,
    Audit,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(arg: SuiteArg) -> Suite {
        match arg {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Measures => Suite::Measures,
            SuiteArg::Examples => Suite::Examples,
            SuiteArg::Inner => Suite::Inner,
            SuiteArg::Audit => Suite::Audit,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn resolve_scenario(argument: &str) -> Result<Scenario, String> {
    let path = Path::new(argument);
    if path.exists() {
        return load_scenario(path).map_err(|e| e.to_string());
    }
    if let Some(source) = fixtures::fixture_source(argument) {
        return scenario_from_json(source).map_err(|e| e.to_string());
    }
    Err(format!(
        "`{argument}` is neither an existing file nor a bundled fixture \
         (fixtures: {})",
        fixtures::fixture_names().join(", ")
    ))
}

fn check(
    scenario_arg: &str,
    suite: SuiteArg,
    quad_order: Option<usize>,
    tol: Option<f64>,
    quad_tol: Option<f64>,
    format: FormatArg,
    out: Option<&Path>,
) -> Result<Verdict, String> {
    let mut scenario = resolve_scenario(scenario_arg)?;
    if let Some(order) = quad_order {
        scenario.rule = confspace_core::quadrature::QuadratureRule::new(scenario.rule.kind, order)
            .map_err(|e| e.to_string())?;
    }
    if let Some(tol) = tol {
        if !(tol > 0.0) {
            return Err(format!("--tol must be positive, got {tol}"));
        }
        scenario.identity_tol = tol;
    }
    if let Some(quad_tol) = quad_tol {
        if !(quad_tol > 0.0) {
            return Err(format!("--quad-tol must be positive, got {quad_tol}"));
        }
        scenario.quad_tol = quad_tol;
    }
    let report = run_suite(&scenario, suite.into()).map_err(|e| e.to_string())?;
    let document = match format {
        FormatArg::Text => report.render_text(),
        FormatArg::Json => report.render_json(),
    };
    match out {
        Some(path) => std::fs::write(path, &document)
            .map_err(|e| format!("cannot write report to `{}`: {e}", path.display()))?,
        None => print!("{document}"),
    }
    Ok(report.overall())
}

fn validate(scenario_arg: &str) -> Result<(), String> {
    let scenario = resolve_scenario(scenario_arg)?;
    println!(
        "scenario `{}` is valid: D={}, scale {}, corpus of {}, rule {:?} order {}",
        scenario.name,
        scenario.dimension(),
        scenario.system.scale().preset().name(),
        scenario.corpus.len(),
        scenario.rule.kind,
        scenario.rule.order,
    );
    Ok(())
}

fn list_fixtures() {
    for name in fixtures::fixture_names() {
        match fixtures::load_fixture(name) {
            Ok(scenario) => println!(
                "{name}: D={}, scale {}, {}",
                scenario.dimension(),
                scenario.system.scale().preset().name(),
                scenario.system.scale().preset().describe(),
            ),
            Err(e) => println!("{name}: failed to load ({e})"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            scenario,
            suite,
            quad_order,
            tol,
            quad_tol,
            format,
            out,
        } => match check(
            &scenario,
            suite,
            quad_order,
            tol,
            quad_tol,
            format,
            out.as_deref(),
        ) {
            Ok(Verdict::Pass) => ExitCode::SUCCESS,
            Ok(Verdict::Fail) => ExitCode::from(1),
            Err(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
        },
        Command::Validate { scenario } => match validate(&scenario) {
            Ok(()) => ExitCode::SUCCESS,
            Err(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
        },
        Command::ListFixtures => {
            list_fixtures();
            ExitCode::SUCCESS
        }
    }
}
