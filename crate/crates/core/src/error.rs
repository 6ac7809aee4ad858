use thiserror::Error;

use crate::instance::Gender;

#[derive(Debug, Error)]
pub enum Error {
    #[error("player {player} of {gender} assigns rank {rank} to more than one pair")]
    DuplicateRank {
        gender: Gender,
        player: usize,
        rank: usize,
    },
    #[error("psa player {player} assigns rank {rank} to more than one pair")]
    DuplicatePsaRank { player: usize, rank: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("player count {0} is not a positive multiple of 3")]
    PlayerCountNotMultipleOf3(usize),
    #[error("families overlap on {0}")]
    OverlappingFamilies(String),
    #[error("player {player} of {gender} has no family")]
    UncoveredPlayer { gender: Gender, player: usize },
    #[error("player {0} has no triple")]
    UncoveredPsaPlayer(usize),
    #[error("instance too large: size {size} exceeds limit {limit}")]
    InstanceTooLarge { size: usize, limit: usize },
    #[error("search budget of {0} nodes exceeded")]
    Timeout(u64),
    #[error("adversarial preferences need an even n >= 2, got {0}")]
    OddN(usize),
    #[error("element w{0} is in {1} edges; every w must be padded to exactly 3")]
    NotDegree3Padded(usize, usize),
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("matching does not follow the ring structure: {0}")]
    NonCanonicalMatching(String),
    #[error("invalid 3DM instance: {0}")]
    InvalidDm(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
