use thiserror::Error;

use crate::rootdata::Root;
use crate::scalar::Affine;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("root e{k}-e{l} is not a positive root of sl({n})")]
    InvalidRoot { k: usize, l: usize, n: usize },

    #[error("rank mismatch: expected sl({expected}), found sl({found})")]
    RankMismatch { expected: usize, found: usize },

    #[error("{0} requires a numeric weight")]
    SymbolicWeight(&'static str),

    #[error("power of eta_{generator} does not terminate; a truncation bound is required")]
    UnboundedSeries { generator: usize },

    #[error("s_{root}(1) is an infinite series; a truncation bound is required")]
    BoundRequired { root: Root },

    #[error("pairing <lambda+rho, alpha> = {pairing}, expected {expected}")]
    PairingMismatch { pairing: Affine, expected: u32 },

    #[error("chain step {step} ({root}): pairing {pairing} is not a positive integer")]
    InvalidChainStep { step: usize, root: Root, pairing: Affine },

    #[error("E_{{{i},{j}}} is not a lowering generator")]
    NotLowering { i: usize, j: usize },

    #[error("series has a non-polynomial monomial: {0}")]
    NonPolynomial(String),

    #[error("vector is not a weight vector")]
    NotWeightVector,

    #[error("vector is zero")]
    ZeroVector,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
