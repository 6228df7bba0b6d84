use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("n = {0} is not supported (the weighted projective line P(1,n) needs n >= 2)")]
    UnsupportedOrder(u32),
    #[error("{what} index {index} out of range for n = {n}")]
    IndexOutOfRange { what: &'static str, index: i64, n: u32 },
    #[error("operands live over different n ({0} vs {1})")]
    OrderMismatch(u32, u32),
    #[error("Adams operation index must be at least 1, got {0}")]
    InvalidAdamsIndex(i64),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_order(n: u32) -> Result<()> {
    if n < 2 {
        Err(Error::UnsupportedOrder(n))
    } else {
        Ok(())
    }
}
