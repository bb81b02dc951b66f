use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound 2^20")]
    ModulusTooLarge(u64),
    #[error("cannot combine elements of GF({0}) and GF({1})")]
    FieldMismatch(u32, u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not a primitive element of GF({1})")]
    NotPrimitive(u32, u32),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("empty index selection")]
    EmptySelection,
    #[error("matrix has a singular square submatrix; code is not MDS")]
    NotMds,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix has a nonzero diagonal entry")]
    NonZeroDiagonal,
    #[error("generator matrix is not in standard form [I | A]")]
    NotStandardForm,
    #[error("requested {rows}x{cols} block does not fit inside the Singleton array of GF({p})")]
    DoesNotFit { p: u32, rows: usize, cols: usize },
    #[error("invalid hierarchy: {0}")]
    InvalidHierarchy(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size guard exceeded: {what} needs {needed} entries, limit {limit}")]
    SizeGuard { what: &'static str, needed: u128, limit: u128 },
    #[error("stabilizer generators invalid: {0}")]
    InvalidStabilizer(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. })
    }
}

/// Fails with [`Error::SizeGuard`] when `base^exp` exceeds `limit`.
pub(crate) fn guard_pow(what: &'static str, base: u32, exp: usize, limit: u128) -> Result<u128> {
    let mut needed: u128 = 1;
    for _ in 0..exp {
        needed = needed.saturating_mul(base as u128);
        if needed > limit {
            return Err(Error::SizeGuard { what, needed, limit });
        }
    }
    Ok(needed)
}
