pub mod abelian;
pub mod error;
pub mod fuchsian;
pub mod invariants;
pub mod presentation;
pub mod quotient;
pub mod rewrite;
pub mod scalar;
pub mod verify;
pub mod words;

pub type ExactRational = num_rational::Ratio<num_bigint::BigInt>;
pub type IntMatrix = abelian::Matrix<num_bigint::BigInt>;
