use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid ring element: {0}")]
    InvalidElement(String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("ideal {0} is not nil")]
    NotNil(String),
    #[error("{0} is not idempotent modulo the given ideal")]
    NotIdempotentModulo(String),
    #[error("idempotent lifting did not converge within {0} iterations")]
    LiftDidNotConverge(usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("element set is not a submodule")]
    NotASubmodule,
    #[error("the zero module has an empty spectrum")]
    ZeroModule,
    #[error("Spec(M) is empty")]
    EmptySpectrum,
    #[error("T must be a non-empty set of prime submodules")]
    EmptyT,
    #[error("T is not a closed subset of Spec(M)")]
    NotClosed,
    #[error("prime index {0} is out of range")]
    PrimeIndex(usize),
    #[error("idempotent {0} is trivial")]
    TrivialIdempotent(String),
    #[error("invalid multiplicative set: {0}")]
    InvalidMultiplicativeSet(String),
    #[error("{what} count {count} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        count: usize,
        cap: usize,
    },
    #[error("unknown export format `{0}`")]
    UnknownFormat(String),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
