use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a generator tuple needs at least two entries, got {0}")]
    TooFewGenerators(usize),

    #[error("generators must be positive")]
    NonPositiveGenerator,

    #[error("duplicate generator {0}")]
    DuplicateGenerator(u64),

    #[error("generators are not coprime (gcd = {0})")]
    NotCoprime(u64),

    /// The smallest generator is 1, so every level of the Apéry set collapses.
    #[error("degenerate tuple: the smallest generator is 1")]
    DegenerateTuple,

    #[error("{name} = {value} is outside the domain (need {name} >= 3)")]
    Domain { name: &'static str, value: u32 },

    #[error("{0} is too large for the table-based oracle")]
    TooLarge(String),

    #[error("denumerant table covers n <= {cap}, but n = {requested} was requested")]
    BeyondTable { cap: usize, requested: usize },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("no closed form covers {0}")]
    NotCovered(String),

    #[error("malformed denumerant table: {0}")]
    MalformedTable(String),
}
