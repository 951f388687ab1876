use thiserror::Error;

/// Every failure the library reports. Variants name the violated condition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NonPrimeP(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("modulus must be monic of degree {expected} with coefficients below p")]
    BadModulus { expected: u32 },
    #[error("field of size {0} is too large for this operation")]
    FieldTooLarge(u128),
    #[error("gamma must be nonzero")]
    ZeroGamma,
    #[error("wp^2 - 4 gamma is not squarefree")]
    NonSquarefreeDiscriminant,
    #[error("level a must be at least 1")]
    InvalidLevel,
    #[error("place degree {degree} does not divide level {level}")]
    NotADivisor { degree: u32, level: u32 },
    #[error("cyclotomic operands live in different rings (p = {0} and p = {1})")]
    MixedPrimes(u32, u32),
    #[error("cyclotomic integer is not rational: {0}")]
    NotRational(String),
    #[error("estimated cost {cost:.3e} exceeds budget {budget:.3e}")]
    BudgetExceeded { cost: f64, budget: f64 },
    #[error("angle undefined: |Kl| = 2 q^(d/2) at place of degree {degree}")]
    DegenerateAngle { degree: u32 },
    #[error("embedding index {k} is not a unit modulo {p}")]
    InvalidEmbedding { k: u32, p: u32 },
    #[error("functional equation sign cannot be determined from the given coefficients")]
    SignUndetermined,
    #[error("coefficients do not satisfy a functional equation")]
    NoFunctionalEquation,
    #[error("root finder did not converge after {0} iterations")]
    RootFindingFailure(usize),
    #[error("polynomial of degree {degree} exceeds the root-finding limit {limit}")]
    RootFindingBudget { degree: usize, limit: usize },
    #[error("closed form and oracle disagree at n = {n}: {closed} vs {oracle}")]
    OracleMismatch { n: usize, closed: String, oracle: String },
    #[error("Sha candidate is not an integer: {0}")]
    NonIntegerSha(String),
    #[error("central value vanishes")]
    VanishingCentralValue,
    #[error("angle margin {margin:e} to {target} is below epsilon_a = {epsilon:e}")]
    MarginViolation { target: String, margin: f64, epsilon: f64 },
    #[error("empty sample")]
    EmptySample,
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
