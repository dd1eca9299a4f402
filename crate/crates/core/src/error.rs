use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("precision of {digits} digits is outside the supported range [{min}, {max}]")]
    Precision { digits: u32, min: u32, max: u32 },

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("unknown proof-chain selector `{0}`")]
    UnknownSelector(String),

    #[error("pole: a+b+(a-b)x vanishes at x = {x}")]
    Pole { x: f64 },

    #[error("bound family {family} is not valid: {reason}")]
    InvalidFamily { family: String, reason: String },

    #[error("no bound family enabled")]
    EmptyFamilies,

    #[error("grid must be strictly increasing (violated at index {index})")]
    UnorderedGrid { index: usize },

    #[error("degenerate parameters: a = b and the linear coefficient vanishes")]
    DegenerateParams,

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("serialization failed: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(value: f64, domain: &'static str) -> Error {
    Error::Domain { value, domain }
}
