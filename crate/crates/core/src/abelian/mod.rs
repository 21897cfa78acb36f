//! Abelianisation: exponent matrices, Smith normal form, elementary divisors,
//! abelian p-deficiency and `d_p`.

mod matrix;
mod snf;

pub use matrix::Matrix;
pub use snf::{smith_normal_form, SnfResult};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::FinitePresentation;
use crate::scalar::{nu_p_int, one_minus, ratio_int, IntScalar, Prime};
use crate::words::Valuation;
use crate::{ExactRational, IntMatrix};

/// `Z^rank ⊕ C_{d_1} ⊕ … ⊕ C_{d_s}` with `d_1 | d_2 | …` and every `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    rank: usize,
    divisors: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn new(rank: usize, divisors: Vec<BigInt>) -> Result<Self> {
        if divisors.iter().any(|d| *d < BigInt::from(2)) {
            return Err(Error::InvalidInvariants(
                "elementary divisors must be at least 2".into(),
            ));
        }
        if divisors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidInvariants(
                "elementary divisors must form a divisibility chain".into(),
            ));
        }
        Ok(AbelianInvariants { rank, divisors })
    }

    /// Normalises an arbitrary direct sum of cyclic groups `C_{e_i}` (orders
    /// `e_i ≥ 1`) plus free rank into invariant factor form.
    pub fn from_cyclic_orders(rank: usize, orders: &[u64]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &e) in orders.iter().enumerate() {
            m[(i, i)] = BigInt::from(e);
        }
        let mut inv = invariants_from_snf(n, &smith_normal_form(&m));
        inv.rank += rank;
        inv
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            rank,
            divisors: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// `r - 1 + Σ_i (1 - p^{-ν_p(d_i)})`.
    pub fn abelian_p_deficiency(&self, p: Prime) -> ExactRational {
        self.divisors.iter().fold(ratio_int(self.rank as i64 - 1), |acc, d| {
            let k = nu_p_int(d, p).expect("divisors are nonzero");
            acc + one_minus(p.inverse_power::<BigInt>(k))
        })
    }

    /// `dim_{F_p} Hom(G, C_p)`.
    pub fn d_p(&self, p: Prime) -> usize {
        let pb = BigInt::from(p.get());
        self.rank + self.divisors.iter().filter(|d| d.is_multiple_of(&pb)).count()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.divisors.iter().map(|d| format!("C{d}")).collect();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".into() } else { format!("Z^{}", self.rank) });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `|X| × |R|` matrix whose columns are the relators' exponent sums.
pub fn exponent_matrix(p: &FinitePresentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.rank(), p.relators().len());
    for (j, r) in p.relators().iter().enumerate() {
        for (i, e) in r.exponent_sums().into_iter().enumerate() {
            m[(i, j)] = BigInt::from(e);
        }
    }
    m
}

fn invariants_from_snf(generators: usize, snf: &SnfResult<BigInt>) -> AbelianInvariants {
    let diag = snf.diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let divisors = diag.into_iter().filter(|d| *d > BigInt::one()).collect();
    AbelianInvariants {
        rank: generators - nonzero,
        divisors,
    }
}

/// Invariants of `Z^X / M_R Z^R`, the abelianisation of the presented group.
pub fn abelian_invariants(p: &FinitePresentation) -> AbelianInvariants {
    invariants_from_snf(p.rank(), &smith_normal_form(&exponent_matrix(p)))
}

/// Largest `k` with `p^k` dividing every coordinate; infinite for zero.
pub fn nu_p_vector<T: IntScalar>(v: &[T], p: Prime) -> Valuation {
    v.iter()
        .filter(|x| !x.is_zero())
        .map(|x| nu_p_int(x, p).expect("nonzero"))
        .min()
        .map_or(Valuation::Infinite, Valuation::Finite)
}

/// Abelian p-deficiency of the presentation read as an abelian presentation.
pub fn abelian_p_deficiency_presentation(p: &FinitePresentation, prime: Prime) -> ExactRational {
    p.relators().iter().fold(ratio_int(p.rank() as i64 - 1), |acc, r| {
        acc - nu_p_vector(&r.exponent_sums(), prime).weight::<BigInt>(prime)
    })
}

pub fn abelian_p_deficiency_group(inv: &AbelianInvariants, p: Prime) -> ExactRational {
    inv.abelian_p_deficiency(p)
}

/// Upper bound for the p-deficiency of the group presented by `p`, obtained
/// from its abelianisation.
pub fn upper_bound_de(p: &FinitePresentation, prime: Prime) -> ExactRational {
    abelian_invariants(p).abelian_p_deficiency(prime)
}

pub fn d_p(inv: &AbelianInvariants, p: Prime) -> usize {
    inv.d_p(p)
}
