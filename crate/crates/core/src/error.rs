use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: String,
        domain: &'static str,
    },
    #[error("non-finite value while evaluating {context}")]
    NonFinite { context: String },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: impl ToString, domain: &'static str) -> Self {
        Error::Domain {
            name,
            value: value.to_string(),
            domain,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
