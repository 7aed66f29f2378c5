//! Exact geometry of `P²` over finite fields, used to check the link
//! formulas against explicit quadratic transformations and to examine the
//! position of conjugate points.

pub mod closed_point;
pub mod configuration;
pub mod cremona;
pub mod field;
pub mod geometry;
pub mod poly;
pub mod scan;

use thiserror::Error;

use crate::cycle::{CycleError, OrbitId};
use cremona::PointLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("characteristic {0} is excluded (must not be 2 or 3)")]
    BadCharacteristic(u64),
    #[error("extension degree {0} is not supported")]
    UnsupportedExtension(usize),
    #[error("no point of the requested degree found in {0} attempts")]
    SamplingExhausted(usize),
    #[error("expected a closed point of degree 6, got degree {0}")]
    WrongClosedPointDegree(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("line profile {0:?} matches none of the known configurations")]
    UnclassifiableConfiguration(Vec<usize>),
    #[error("centre {0} is repeated")]
    RepeatedCenter(PointLabel),
    #[error("point {0} would get negative multiplicity {1}")]
    NegativeMultiplicity(PointLabel, i64),
    #[error("image class has line degree {0} < 1")]
    DegenerateImage(i64),
    #[error("the three centres are collinear")]
    CollinearCenters,
    #[error("no point labelled {0}")]
    UnknownPoint(PointLabel),
    #[error("point {0} lies on a contracted line")]
    PointOnContractedLine(PointLabel),
    #[error("orbit {0} is not part of the cycle")]
    UnknownOrbit(OrbitId),
    #[error("orbit {0}: number of labels differs from its degree")]
    OrbitLabelMismatch(OrbitId),
    #[error("line degree {0} is not a multiple of 3")]
    NotAnticanonicalMultiple(i64),
    #[error("multiplicities differ within orbit {0}")]
    NotGaloisInvariant(OrbitId),
    #[error("point {0} carries a multiplicity but belongs to no orbit")]
    UnassignedPoint(PointLabel),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}
