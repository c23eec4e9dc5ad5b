use crate::term::Term;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("sort error: {0}")]
    Sort(String),

    /// Step or recursion budget exceeded. Never a refutation.
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { steps: u64 },

    /// A symbol has neither a definition nor an applicable rule.
    #[error("stuck term: {0}")]
    Stuck(Term),

    #[error("unbound variable `{0}`")]
    Unbound(String),

    #[error("integer overflow in `{0}`")]
    Overflow(String),

    #[error("no layer `{0}`")]
    Index(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("plan error: {0}")]
    Plan(String),

    #[error("grammar `{name}` derives {count} properties, above the ceiling of {ceiling}")]
    GrammarTooLarge { name: String, count: usize, ceiling: usize },

    #[error("grammar `{name}`: {msg}")]
    Grammar { name: String, msg: String },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_fuel(&self) -> bool {
        matches!(self, Error::FuelExhausted { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
