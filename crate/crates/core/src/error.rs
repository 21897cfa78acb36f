use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("generator index {index} out of range for alphabet of size {alphabet}")]
    InvalidGenerator { index: usize, alphabet: usize },

    #[error("alphabet mismatch: expected {expected} generators, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    #[error("no root of trivial word")]
    TrivialWord,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown generator `{name}` at position {pos}")]
    UnknownGenerator { name: String, pos: usize },

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("relator {index} is trivial after free reduction")]
    TrivialRelator { index: usize },

    #[error("power must be at least 2, got {0}")]
    PowerTooSmall(u64),

    #[error("presentation has no relators")]
    NoRelators,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group generated by the images has order above the bound {bound}")]
    OrderBoundExceeded { bound: usize },

    #[error("relator {index} is not killed by the quotient map")]
    RelatorNotKilled { index: usize },

    #[error("word does not lie in the subgroup")]
    NotInSubgroup,

    #[error("coset action is not transitive")]
    NotTransitive,

    #[error("signature is not hyperbolic (volume {volume})")]
    NotHyperbolic { volume: String },

    #[error("invalid abelian invariants: {0}")]
    InvalidInvariants(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("inconsistent action: {0}")]
    InconsistentAction(String),

    #[error("case ({0}) does not apply to this signature")]
    CaseNotApplicable(char),

    #[error("hypothesis violated: presentation p-deficiency is {0}, expected 0")]
    NonzeroDeficiency(String),

    #[error("invalid catalog line {line}: {msg}")]
    Catalog { line: usize, msg: String },
}
