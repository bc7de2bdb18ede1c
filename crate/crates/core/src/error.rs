use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation word {0:?}")]
    InvalidPermutation(String),

    #[error("sequence has a repeated entry at positions {0} and {1}")]
    DuplicateEntry(usize, usize),

    #[error("pattern {0} has no cliff")]
    NoCliff(String),

    #[error("{0} is not an untranslated join-irreducible")]
    NotUntranslated(String),

    #[error("subset {subset:?} of [{n}] does not encode a join-irreducible")]
    InvalidSubset { subset: Vec<usize>, n: usize },

    #[error("{0} is not a join-irreducible")]
    NotJoinIrreducible(String),

    #[error("position {position} is not a descent of {perm}")]
    NotADescent { perm: String, position: usize },

    #[error("{lower} is not below {upper}")]
    NotComparable { lower: String, upper: String },

    #[error("{what} supports n <= {max}, got n = {n}")]
    Capacity {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("size mismatch: expected S_{expected}, got S_{got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("({0}, {1}) is not a cover relation")]
    NotACover(String, String),

    #[error(
        "contracted set is not an order ideal: {contracted} is contracted but {forced} is not"
    )]
    NotAnIdeal { contracted: String, forced: String },

    #[error("{0} is not the bottom of its congruence class")]
    NotABottom(String),

    #[error("congruence contracts an atom; reduce to the parabolic subarrangement first")]
    AtomContracted,

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("operation requires an H-family")]
    RequiresHFamily,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
