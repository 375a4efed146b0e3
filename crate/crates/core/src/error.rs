use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input that does not describe a well-formed table or multiset.
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported order {0}: only order-3 tables can be classified")]
    UnsupportedOrder(usize),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error(
        "capacity exceeded: n = {n} gives C(n+2,2)^4 = {candidates} candidate tables \
         (limit n <= {limit}; pass an override to proceed)"
    )]
    Capacity { n: u64, candidates: u128, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
