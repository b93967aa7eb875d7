//! Approximation-preserving reductions between market-choice transportation
//! and facility location, with constructive back-translation.
//!
//! Every forward construction appends dummy vertices after the original ones
//! and returns a [`ReductionCertificate`] recording the correspondence. The
//! translators use the certificate and the reduced instance alone, so reduce
//! and translate can run as separate steps.
//!
//! | direction      | dummies                         | source recovered from         |
//! |----------------|---------------------------------|-------------------------------|
//! | `TmcToCfl`     | one facility per client         | dummy opening cost = penalty  |
//! | `UtmcToUfl`    | one uncapacitated facility each | dummy opening cost = penalty  |
//! | `CflmcToCfl`   | one facility per client         | dummy opening cost = penalty  |
//! | `CflToTmc`     | one client per facility         | dummy penalty = opening cost  |

mod gadget;
mod normalize;
mod translate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Instance, Kind, ModelError, ValidationReport};
use crate::transport::TransportError;

pub use gadget::{cfl_to_tmc, cflmc_to_cfl, reduce, tmc_to_cfl, utmc_to_ufl};
pub use normalize::{normalize_dummy_clients, normalize_dummy_service, NormalizeStep, Normalized};
pub use translate::{
    source_instance, translate, translate_cfl_solution_to_tmc, translate_tmc_solution_to_cfl,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    TmcToCfl,
    CflToTmc,
    UtmcToUfl,
    CflmcToCfl,
}

impl Direction {
    /// Dummies are facilities (one per original client).
    pub fn adds_facilities(self) -> bool {
        !matches!(self, Direction::CflToTmc)
    }

    pub fn source_kind(self) -> Kind {
        match self {
            Direction::TmcToCfl => Kind::Tmc,
            Direction::CflToTmc => Kind::Cfl,
            Direction::UtmcToUfl => Kind::Utmc,
            Direction::CflmcToCfl => Kind::Cflmc,
        }
    }

    pub fn target_kind(self) -> Kind {
        match self {
            Direction::TmcToCfl | Direction::CflmcToCfl => Kind::Cfl,
            Direction::CflToTmc => Kind::Tmc,
            Direction::UtmcToUfl => Kind::Ufl,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::TmcToCfl => "tmc-to-cfl",
            Direction::CflToTmc => "cfl-to-tmc",
            Direction::UtmcToUfl => "utmc-to-ufl",
            Direction::CflmcToCfl => "cflmc-to-cfl",
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How dummy cross costs are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Shortest two-hop detour; keeps the four-point inequality.
    Metric,
    /// Maximum unit cost of the source.
    General,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Metric => "metric",
            Mode::General => "general",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "metric" => Ok(Mode::Metric),
            "general" => Ok(Mode::General),
            other => Err(format!(
                "unknown mode `{other}` (expected metric or general)"
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("reduction {direction:?} expects a {expected} instance, got {found}")]
    WrongKind {
        direction: Direction,
        expected: Kind,
        found: Kind,
    },
    #[error("metric mode requires costs satisfying the four-point triangle inequality")]
    NotMetric,
    #[error("{direction:?} does not support {mode:?} mode")]
    UnsupportedMode { direction: Direction, mode: Mode },
    #[error("source facility location instance is infeasible: demand {demand} > supply {supply}")]
    Infeasible { demand: i64, supply: i64 },
    #[error("certificate does not match the reduced instance: {0}")]
    CertificateMismatch(String),
    #[error("solution is infeasible for the reduced instance: {0}")]
    InfeasibleSolution(ValidationReport),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error("malformed certificate: {0}")]
    Parse(String),
}

/// Correspondence between a reduced instance and its source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionCertificate {
    direction: Direction,
    mode: Mode,
    /// `(index in reduced, original index)`, ascending.
    dummy_map: Vec<(usize, usize)>,
    #[serde(default)]
    iub: Option<i64>,
    /// `(m, n)` of the source.
    source_dims: (usize, usize),
}

impl ReductionCertificate {
    pub(crate) fn new(
        direction: Direction,
        mode: Mode,
        source_dims: (usize, usize),
        iub: Option<i64>,
    ) -> Self {
        let (m, n) = source_dims;
        let dummy_map = if direction.adds_facilities() {
            (0..n).map(|j| (m + j, j)).collect()
        } else {
            (0..m).map(|i| (n + i, i)).collect()
        };
        ReductionCertificate {
            direction,
            mode,
            dummy_map,
            iub,
            source_dims,
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dummy_map(&self) -> &[(usize, usize)] {
        &self.dummy_map
    }

    pub fn iub(&self) -> Option<i64> {
        self.iub
    }

    pub fn source_dims(&self) -> (usize, usize) {
        self.source_dims
    }

    /// Original index a dummy stands for.
    pub fn original_of(&self, dummy: usize) -> Option<usize> {
        self.dummy_map
            .iter()
            .find(|&&(d, _)| d == dummy)
            .map(|&(_, o)| o)
    }

    /// Dummy standing for an original index.
    pub fn dummy_of(&self, original: usize) -> Option<usize> {
        self.dummy_map
            .iter()
            .find(|&&(_, o)| o == original)
            .map(|&(d, _)| d)
    }

    /// Check the certificate describes `reduced`.
    pub fn validate_against(&self, reduced: &Instance) -> Result<(), ReductionError> {
        let (m, n) = self.source_dims;
        let mismatch = |what: String| Err(ReductionError::CertificateMismatch(what));
        if reduced.kind() != self.direction.target_kind() {
            return mismatch(format!(
                "reduced instance is {}, direction targets {}",
                reduced.kind(),
                self.direction.target_kind()
            ));
        }
        let (expect_m, expect_n, base, count) = if self.direction.adds_facilities() {
            (m + n, n, m, n)
        } else {
            (m, n + m, n, m)
        };
        if reduced.m() != expect_m || reduced.n() != expect_n {
            return mismatch(format!(
                "reduced instance is {}x{}, expected {expect_m}x{expect_n}",
                reduced.m(),
                reduced.n()
            ));
        }
        let expected: Vec<(usize, usize)> = (0..count).map(|k| (base + k, k)).collect();
        if self.dummy_map != expected {
            return mismatch("dummy map does not cover exactly the appended indices".into());
        }
        if (self.direction == Direction::CflToTmc) != self.iub.is_some() {
            return mismatch("instance upper bound present iff direction is cfl-to-tmc".into());
        }
        if self.direction == Direction::UtmcToUfl && self.mode != Mode::Metric {
            return mismatch("utmc-to-ufl is metric only".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ReductionError> {
        serde_json::from_str(text).map_err(|e| ReductionError::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_maps_are_mutually_inverse() {
        for cert in [
            ReductionCertificate::new(Direction::TmcToCfl, Mode::Metric, (2, 3), None),
            ReductionCertificate::new(Direction::CflToTmc, Mode::General, (3, 2), Some(9)),
        ] {
            for &(d, o) in cert.dummy_map() {
                assert_eq!(cert.original_of(d), Some(o));
                assert_eq!(cert.dummy_of(o), Some(d));
                assert_eq!(cert.dummy_of(cert.original_of(d).unwrap()), Some(d));
            }
        }
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = ReductionCertificate::new(Direction::CflToTmc, Mode::Metric, (2, 1), Some(11));
        let text = cert.to_json();
        assert!(text.contains("\"cfl-to-tmc\""));
        assert_eq!(ReductionCertificate::from_json(&text).unwrap(), cert);
        assert!(ReductionCertificate::from_json(&text.replacen('{', "{\"x\":1,", 1)).is_err());
    }
}
