use thiserror::Error;

/// Errors raised by model construction and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{name} = {value} is outside {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A model or measure parameter failed validation.
    #[error("invalid parameter #{position} ({name} = {value}): {reason}")]
    Parameter {
        name: String,
        position: usize,
        value: String,
        reason: String,
    },

    /// Text could not be parsed.
    #[error("parse error at '{token}': {reason}")]
    Parse { token: String, reason: String },

    /// The model lacks the moment the operation needs.
    #[error("moment condition violated: {0}")]
    Moment(String),

    /// A sample value is unusable.
    #[error("data error at index {index}: {reason}")]
    Data { index: usize, reason: String },

    /// The sample is empty or too small.
    #[error("sample too small: need at least {needed} values, got {got}")]
    SampleSize { needed: usize, got: usize },

    /// A closed form was evaluated at a singular parameter.
    #[error("singular parameter: {0}")]
    Singularity(String),

    /// A risk measure would be infinite for the given weights.
    #[error("measure not integrable: {0}")]
    Finiteness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_open_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "(0, 1)",
        })
    }
}
