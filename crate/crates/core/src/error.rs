use thiserror::Error;

use crate::density::DensityApproximation;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A group is too large to enumerate under the configured cap.
    #[error("group of order {order} exceeds the enumeration cap of {cap}")]
    CapExceeded { order: u64, cap: usize },

    /// A group is too large to construct at all.
    #[error("group of order {order} exceeds the order limit of {limit}")]
    OrderLimit { order: String, limit: usize },

    /// The prime sieve would have to grow past its configured cap.
    #[error("prime sieve cap of {cap} exceeded: {what}")]
    SieveCap { cap: u64, what: String },

    /// The density search ran out of primes before reaching the tolerance.
    #[error(
        "prime bound {bound} exhausted before convergence; best product {} is {} above the target",
        .best.product.to_decimal(12),
        .best.error.to_decimal(12)
    )]
    DensityExhausted {
        bound: u64,
        best: Box<DensityApproximation>,
    },

    /// Malformed textual input.
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(position: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            position: position.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by exceeding a size or resource limit.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. }
                | Error::OrderLimit { .. }
                | Error::SieveCap { .. }
                | Error::DensityExhausted { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
