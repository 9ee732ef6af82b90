use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed oracle `{text}`: {reason}")]
    ParseOracle { text: String, reason: String },

    #[error("oracle period must be nonempty")]
    EmptyPeriod,

    #[error("oracle index {0} out of range (indices start at 1)")]
    IndexOutOfRange(usize),

    #[error("unknown letter `{ch}` at position {pos} (expected one of a,b,c,d,x,B,C,D)")]
    ParseWord { ch: char, pos: usize },

    #[error("word `{0}` has an odd number of a-letters and does not fix the first level")]
    OddParity(String),

    #[error("depth {depth} is too small to reach a nucleus for a word of length {len} (need {required})")]
    DepthTooSmall {
        depth: usize,
        len: usize,
        required: usize,
    },

    #[error("invalid group spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error("letter `{0}` is not allowed here")]
    DisallowedLetter(char),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
