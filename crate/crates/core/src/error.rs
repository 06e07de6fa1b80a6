use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("galois exponent {k} is not coprime to modulus {n}")]
    NonCoprimeGalois { k: i64, n: u64 },
    #[error("generator {g} is not coprime to modulus {n}")]
    NonCoprimeGenerator { g: u64, n: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("degree of a field over a non-subfield")]
    NotNested,
    #[error("{0} is not a squarefree integer different from 0 and 1")]
    NotSquarefree(i64),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid table {table}: {msg}")]
    InvalidTable { table: String, msg: String },
    #[error("enumeration needs {needed} tuples, above the bound {bound}")]
    EnumerationBound { needed: u128, bound: u64 },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
