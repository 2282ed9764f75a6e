//! Deadlocks, the deadlock attractor, and product factorization of areas.

mod cells;
mod deadlock;
mod factor;
mod oracle;

use serde::Serialize;
use thiserror::Error;

pub use cells::CellDecomposition;
pub use deadlock::{doomed_region, find_deadlocks};
pub use factor::{factorize, recompose, splits_as_product, Factor, EXHAUSTIVE_BLOCK_LIMIT};
pub use oracle::GridOracle;

use crate::area::CubicalArea;
use crate::cube::Cube;
use crate::error::AlgebraError;
use crate::interval::{format_rational, Rational};
use crate::pv::PvError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("grid step must be 1/m for a positive integer m, got {0}")]
    BadStep(String),
    #[error(transparent)]
    Program(#[from] PvError),
}

/// Everything the analyses say about one model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    #[serde(serialize_with = "points_as_text")]
    pub deadlocks: Vec<Vec<Rational>>,
    pub doomed: CubicalArea,
    pub factorization: Vec<Factor>,
}

impl AnalysisReport {
    pub fn new(model: &CubicalArea, ambient: &Cube) -> Result<Self, AlgebraError> {
        let cells = CellDecomposition::build(model, ambient)?;
        let deadlocks = deadlock::deadlock_cells(&cells)
            .into_iter()
            .map(|i| cells.representative(i))
            .collect();
        let doomed = cells.area_of(&deadlock::doomed_cells(&cells));
        Ok(AnalysisReport {
            deadlocks,
            doomed,
            factorization: factorize(model),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Points as lists of `"p/q"` strings.
pub fn point_to_text(p: &[Rational]) -> Vec<String> {
    p.iter().map(format_rational).collect()
}

fn points_as_text<S: serde::Serializer>(points: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(points.iter().map(|p| point_to_text(p)))
}
