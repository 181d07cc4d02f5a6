use thiserror::Error;

use crate::report::CheckOutcome;

#[derive(Debug, Error)]
pub enum GyroError {
    #[error("element outside the carrier: {0}")]
    Carrier(String),

    #[error("radial value {value} outside [0, {bound})")]
    RadialDomain { value: f64, bound: f64 },

    #[error("malformed table: {0}")]
    Shape(String),

    #[error("table parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("table violates {} ({} witnesses)", .0.check, .0.witnesses.len())]
    Axiom(Box<CheckOutcome>),
}

#[derive(Debug, Error)]
pub enum CosetError {
    #[error("subset is empty")]
    EmptySubset,

    #[error("subset index {0} is outside the carrier")]
    OutOfRange(usize),

    #[error("subset is not a subgyrogroup: {0}")]
    NotSubgyrogroup(String),

    #[error("subset is not an L-subgyrogroup: {0}")]
    NotLSubgyrogroup(String),

    #[error("cosets overlap: {a} and {b} share element {shared}")]
    Overlap { a: usize, b: usize, shared: usize },

    #[error("coset depends on the representative: {0}")]
    RepresentativeDependence(String),

    #[error("unknown coset id {0}")]
    UnknownCoset(usize),
}

/// A chain that breaks one of its laws at index `index`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ChainViolation {
    pub law: String,
    pub index: usize,
    pub witness: serde_json::Value,
}

#[derive(Debug, Error)]
pub enum PrenormError {
    #[error("chain has no sets")]
    EmptyChain,

    #[error("chain set {index} lives in a carrier of size {got}, expected {expected}")]
    Universe { index: usize, expected: usize, got: usize },

    #[error("element index {0} is outside the carrier")]
    OutOfRange(usize),

    #[error("radius {value} at index {index} outside [0, {bound})")]
    Radius { index: usize, value: f64, bound: f64 },

    #[error("depth {depth} needs {} radii, chain has {len}", .depth + 1)]
    TooShort { depth: u32, len: usize },

    #[error("depth {depth} exceeds the supported maximum {max}")]
    DepthTooLarge { depth: u32, max: u32 },

    #[error("chain parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("malformed chain file: {0}")]
    Format(String),

    #[error("chain violates {} at index {}: {}", .0.law, .0.index, .0.witness)]
    Violation(ChainViolation),

    #[error("W is not contained in V: {0} ∈ W \\ V")]
    NotContained(String),

    #[error("neighborhood must contain the identity")]
    MissingIdentity,

    #[error("prenorm and partition disagree: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Coset(#[from] CosetError),
}
