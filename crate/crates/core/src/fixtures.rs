//! Built-in example quivers and the contractions between them.

use crate::error::{Error, Result};
use crate::io::parse_valid;
use crate::quiver::DimerQuiver;

const FILES: &[(&str, &str)] = &[
    ("c3_hex", include_str!("../fixtures/c3_hex.dimer")),
    ("fig1i_Q", include_str!("../fixtures/fig1i_Q.dimer")),
    ("fig1i_Qp", include_str!("../fixtures/fig1i_Qp.dimer")),
    ("fig1ii_Q", include_str!("../fixtures/fig1ii_Q.dimer")),
    ("fig1ii_Qp", include_str!("../fixtures/fig1ii_Qp.dimer")),
    ("fig1iii_Q", include_str!("../fixtures/fig1iii_Q.dimer")),
    ("fig1iii_Qp", include_str!("../fixtures/fig1iii_Qp.dimer")),
    (
        "fig1iii_Qp_reduced",
        include_str!("../fixtures/fig1iii_Qp_reduced.dimer"),
    ),
    ("fig1iv_Q", include_str!("../fixtures/fig1iv_Q.dimer")),
    ("fig1iv_Qp", include_str!("../fixtures/fig1iv_Qp.dimer")),
    ("fig1iv_Qp_reduced", include_str!("../fixtures/fig1iv_Qp_reduced.dimer")),
    ("non_example_unit", include_str!("../fixtures/non_example_unit.dimer")),
    ("permanent_2cycle", include_str!("../fixtures/permanent_2cycle.dimer")),
];

/// Sources and unreduced targets of the four `fig1` maps.
pub const FIGURE_ONE_QUIVERS: [&str; 8] = [
    "fig1i_Q",
    "fig1i_Qp",
    "fig1ii_Q",
    "fig1ii_Qp",
    "fig1iii_Q",
    "fig1iii_Qp",
    "fig1iv_Q",
    "fig1iv_Qp",
];

/// A named contraction: contract `arrows` in `source`; the result is
/// isomorphic to `target`, and to `reduced` once removable 2-cycles are gone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixtureMap {
    pub name: &'static str,
    pub source: &'static str,
    pub arrows: &'static [&'static str],
    pub target: &'static str,
    pub reduced: &'static str,
}

pub const MAPS: [FixtureMap; 4] = [
    FixtureMap {
        name: "fig1i_map",
        source: "fig1i_Q",
        arrows: &["g1", "g2", "g3", "g4"],
        target: "fig1i_Qp",
        reduced: "fig1i_Qp",
    },
    FixtureMap {
        name: "fig1ii_map",
        source: "fig1ii_Q",
        arrows: &["gA", "gB"],
        target: "fig1ii_Qp",
        reduced: "fig1ii_Qp",
    },
    FixtureMap {
        name: "fig1iii_map",
        source: "fig1iii_Q",
        arrows: &["c"],
        target: "fig1iii_Qp",
        reduced: "fig1iii_Qp_reduced",
    },
    FixtureMap {
        name: "fig1iv_map",
        source: "fig1iv_Q",
        arrows: &["g"],
        target: "fig1iv_Qp",
        reduced: "fig1iv_Qp_reduced",
    },
];

pub fn quiver_names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(name, _)| *name)
}

/// Canonical file text of a fixture.
pub fn text(name: &str) -> Result<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn quiver(name: &str) -> Result<DimerQuiver> {
    parse_valid(text(name)?)
}

pub fn map(name: &str) -> Result<&'static FixtureMap> {
    MAPS.iter()
        .find(|m| m.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}
