use thiserror::Error;

/// Errors reported by field construction, character sums, enumeration and
/// the code builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field GF({p}^{m}) exceeds the supported size cap of 2^20 elements")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative power of zero")]
    NegativePowerOfZero,
    #[error("leading coefficient is zero; polynomial is not a quadratic")]
    NotQuadratic,
    #[error("operation requires a degree-2 extension, got m = {0}")]
    DegreeNotTwo(u32),
    #[error("construction requires an odd prime")]
    OddPrimeRequired,
    #[error("basis elements are linearly dependent")]
    DependentBasis,
    #[error("enumeration requires {required} steps, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("weight distribution is inconsistent: {0}")]
    InconsistentMoments(String),
}

pub type Result<T> = std::result::Result<T, Error>;
