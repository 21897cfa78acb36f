//! Scalar abstractions shared by the integer linear algebra and the exact
//! rational formulas.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer ring usable for Smith normal form and exact valuation weights.
///
/// Implemented for the machine integers and for [`BigInt`]. Machine integers
/// are only safe while intermediate entries stay in range; the crate-level
/// aliases use `BigInt`.
pub trait IntScalar:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
}

impl<T> IntScalar for T where
    T: Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// A rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^k` in the scalar type `T`.
    pub fn pow<T: IntScalar>(self, k: u32) -> T {
        let base = T::from_u64(self.0).expect("prime fits in scalar");
        num_traits::pow(base, k as usize)
    }

    /// `p^{-k}` as an exact rational.
    pub fn inverse_power<T: IntScalar>(self, k: u32) -> Ratio<T> {
        Ratio::new(T::one(), self.pow(k))
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest `k` with `p^k | n`.
pub fn nu_p_int<T: IntScalar>(n: &T, p: Prime) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = T::from_u64(p.get()).expect("prime fits in scalar");
    let mut k = 0;
    let mut m = n.abs();
    while m.is_multiple_of(&p) {
        m = m / p.clone();
        k += 1;
    }
    Ok(k)
}

/// Renders a rational as `num/den` in lowest terms, integers included.
pub fn rational_string<T: IntScalar>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub(crate) fn ratio_int(n: i64) -> Ratio<BigInt> {
    Ratio::from_integer(big(n))
}

pub(crate) fn one_minus<T: IntScalar>(r: Ratio<T>) -> Ratio<T> {
    Ratio::one() - r
}
