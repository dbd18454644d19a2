//! Scenario files shipped with the binary.

use crate::dsl::{parse_scenario, Scenario};
use crate::error::{CliError, Result};

pub const FIXTURES: &[(&str, &str)] = &[
    ("n3-stable-right", include_str!("../fixtures/n3-stable-right.qc")),
    ("n3-stable-left", include_str!("../fixtures/n3-stable-left.qc")),
    ("n3-exact-right", include_str!("../fixtures/n3-exact-right.qc")),
    ("n3-exact-left", include_str!("../fixtures/n3-exact-left.qc")),
    ("n3-injectives-right", include_str!("../fixtures/n3-injectives-right.qc")),
    ("n3-projectives-left", include_str!("../fixtures/n3-projectives-left.qc")),
    ("n3-closure", include_str!("../fixtures/n3-closure.qc")),
    ("a2-nonrigid", include_str!("../fixtures/a2-nonrigid.qc")),
];

pub fn fixture_text(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| CliError::UnknownFixture(name.to_string()))
}

pub fn fixture(name: &str) -> Result<Scenario> {
    parse_scenario(fixture_text(name)?)
}

/// First comment line of a fixture.
pub fn description(text: &str) -> &str {
    text.lines()
        .find_map(|l| l.strip_prefix("# "))
        .unwrap_or("")
}

/// Reads a scenario from a path, or from an embedded fixture when the
/// argument has the form `fixture:NAME`.
pub fn load_text(arg: &str) -> Result<String> {
    match arg.strip_prefix("fixture:") {
        Some(name) => Ok(fixture_text(name)?.to_string()),
        None => std::fs::read_to_string(arg).map_err(|source| CliError::Io {
            path: arg.to_string(),
            source,
        }),
    }
}
