use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("modulus {0} out of range (1..={max})", max = crate::words::MAX_MODULUS)]
    BadModulus(u32),

    #[error("polynomial is not right divisible; remainder {remainder}")]
    NotRightDivisible { remainder: String },

    #[error("word {0} is not in A^1 (empty or ends with x)")]
    NotInA1(String),

    #[error("index {0} is not admissible")]
    NonAdmissibleIndex(String),

    #[error("word {0} is not admissible")]
    NonAdmissibleWord(String),

    #[error("relation for forest {forest} and word {word} has non-admissible term {term}")]
    NonAdmissibleOutput { forest: String, word: String, term: String },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("twist y{j} out of range for r = {r}")]
    TwistOutOfRange { j: u32, r: u32 },

    #[error("unknown law: {0}")]
    UnknownLaw(String),

    #[error("unknown mutation: {0}")]
    UnknownMutation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
