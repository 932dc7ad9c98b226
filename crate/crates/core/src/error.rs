use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is not monic irreducible over the prime field")]
    ReducibleModulus,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} requires a nonzero argument")]
    ZeroInput(&'static str),
    #[error("{0} is not a monic irreducible polynomial")]
    InvalidPlace(String),
    #[error("basis is not linearly independent over F_q")]
    DependentBasis,
    #[error("invalid Drinfeld module: {0}")]
    InvalidModule(String),
    #[error("enumeration budget exceeded: need {required} elements (divisor degree {degree}), budget {budget}")]
    BudgetExceeded { degree: i64, required: String, budget: u64 },
    #[error("element is not torsion")]
    NotTorsion,
    #[error("set is not closed under the module action")]
    NotClosed,
    #[error("expected rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("module does not have good reduction at this place")]
    NotGoodReduction,
    #[error("precision too low: {0}")]
    Precision(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("log log undefined: |m| must exceed e")]
    LogLogUndefined,
}
