//! Free-group words in run-length canonical form.
//!
//! A [`Word`] stores maximal runs `(generator, exponent)` with no two adjacent
//! runs on the same generator, so every value is freely reduced by
//! construction. Each word carries the size of its ambient alphabet and
//! binary operations refuse to mix alphabets.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{nu_p_int, IntScalar, Prime};

/// A generator or its inverse.
///
/// The derived order is the shortlex letter order `x < x⁻¹ < y < y⁻¹ < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    alphabet: usize,
    runs: Vec<(usize, i64)>,
}

/// `word = conjugator · root^exponent · conjugator⁻¹` with `root` cyclically
/// reduced and not a proper power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDecomposition {
    pub conjugator: Word,
    pub root: Word,
    pub exponent: u64,
}

impl RootDecomposition {
    pub fn reassemble(&self) -> Word {
        self.root
            .pow(self.exponent as i64)
            .conjugate_by(&self.conjugator)
            .expect("components share an alphabet")
    }
}

/// p-adic valuation of a word, vector or integer. The identity (or zero) has
/// infinite valuation and weight zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    /// `p^{-k}`, or `0` for an infinite valuation.
    pub fn weight<T: IntScalar>(self, p: Prime) -> Ratio<T> {
        match self {
            Valuation::Finite(k) => p.inverse_power(k),
            Valuation::Infinite => Ratio::zero(),
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(k) => Some(k),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Freely reduces a raw letter sequence.
pub fn reduce(alphabet: usize, letters: &[Letter]) -> Result<Word> {
    Word::from_runs(
        alphabet,
        letters.iter().map(|l| (l.generator, l.sign())),
    )
}

impl Word {
    pub fn identity(alphabet: usize) -> Self {
        Word {
            alphabet,
            runs: Vec::new(),
        }
    }

    pub fn generator(alphabet: usize, index: usize) -> Result<Self> {
        Word::from_runs(alphabet, [(index, 1)])
    }

    /// Builds the free reduction of the product of `g^e` over the given runs.
    pub fn from_runs<I>(alphabet: usize, runs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in runs {
            if g >= alphabet {
                return Err(Error::InvalidGenerator { index: g, alphabet });
            }
            push_run(&mut out, g, e);
        }
        Ok(Word {
            alphabet,
            runs: out,
        })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn runs(&self) -> &[(usize, i64)] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Letter length.
    pub fn len(&self) -> u64 {
        self.runs.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.runs
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize))
            .collect()
    }

    /// The same word viewed over a larger alphabet.
    pub fn widen(&self, alphabet: usize) -> Result<Word> {
        if alphabet < self.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet,
                found: alphabet,
            });
        }
        Ok(Word {
            alphabet,
            runs: self.runs.clone(),
        })
    }

    fn check_alphabet(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet,
                found: other.alphabet,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Word) -> Result<Word> {
        self.check_alphabet(other)?;
        let mut runs = self.runs.clone();
        for &(g, e) in &other.runs {
            push_run(&mut runs, g, e);
        }
        Ok(Word {
            alphabet: self.alphabet,
            runs,
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            alphabet: self.alphabet,
            runs: self.runs.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let (conj, core) = self.cyclic_reduction();
        if core.runs.is_empty() || n == 0 {
            return Word::identity(self.alphabet);
        }
        if let [(g, e)] = core.runs[..] {
            let power = Word {
                alphabet: self.alphabet,
                runs: vec![(g, e.checked_mul(n).expect("exponent overflow"))],
            };
            return power.conjugate_by(&conj).expect("same alphabet");
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut runs = Vec::new();
        for _ in 0..n.unsigned_abs() {
            for &(g, e) in &base.runs {
                push_run(&mut runs, g, e);
            }
        }
        Word {
            alphabet: self.alphabet,
            runs,
        }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Word) -> Result<Word> {
        g.mul(self)?.mul(&g.inverse())
    }

    /// Exponent-sum vector, i.e. the image in the free abelian group.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0; self.alphabet];
        for &(g, e) in &self.runs {
            v[g] += e;
        }
        v
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: u64) -> Word {
        let mut left = n;
        let mut runs = Vec::new();
        for &(g, e) in &self.runs {
            if left == 0 {
                break;
            }
            let take = e.unsigned_abs().min(left);
            runs.push((g, e.signum() * take as i64));
            left -= take;
        }
        Word {
            alphabet: self.alphabet,
            runs,
        }
    }

    /// Splits `self = g · core · g⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduction(&self) -> (Word, Word) {
        let mut core: std::collections::VecDeque<(usize, i64)> = self.runs.iter().copied().collect();
        let mut conj = Vec::new();
        while core.len() >= 2 {
            let (g, a) = *core.front().unwrap();
            let (h, b) = *core.back().unwrap();
            if g != h || a.signum() == b.signum() {
                break;
            }
            let c = a.abs().min(b.abs());
            conj.push((g, a.signum() * c));
            let na = a - a.signum() * c;
            let nb = b - b.signum() * c;
            if na == 0 {
                core.pop_front();
            } else {
                core.front_mut().unwrap().1 = na;
            }
            if nb == 0 {
                core.pop_back();
            } else {
                core.back_mut().unwrap().1 = nb;
            }
        }
        let mut conj_runs = Vec::new();
        for (g, e) in conj {
            push_run(&mut conj_runs, g, e);
        }
        (
            Word {
                alphabet: self.alphabet,
                runs: conj_runs,
            },
            Word {
                alphabet: self.alphabet,
                runs: core.into_iter().collect(),
            },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.cyclic_reduction().0.is_identity()
    }

    /// Maximal root: `self = g · u^m · g⁻¹` with `m` as large as possible.
    pub fn maximal_root(&self) -> Result<RootDecomposition> {
        if self.is_identity() {
            return Err(Error::TrivialWord);
        }
        let (conjugator, core) = self.cyclic_reduction();
        if core.runs.len() == 1 {
            let (g, e) = core.runs[0];
            return Ok(RootDecomposition {
                conjugator,
                root: Word {
                    alphabet: self.alphabet,
                    runs: vec![(g, e.signum())],
                },
                exponent: e.unsigned_abs(),
            });
        }
        // Cyclic run sequence: the last run merges into the first when both
        // use the same generator (same sign, as the core is cyclically reduced).
        let mut cyc = core.runs.clone();
        if cyc.len() >= 2 && cyc[0].0 == cyc[cyc.len() - 1].0 {
            let (_, e) = cyc.pop().unwrap();
            cyc[0].1 += e;
        }
        let n = cyc.len();
        let period = (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| (0..n).all(|i| cyc[i] == cyc[(i + d) % n]))
            .expect("full length is always a period");
        let exponent = (n / period) as u64;
        let root = core.prefix(core.len() / exponent);
        Ok(RootDecomposition {
            conjugator,
            root,
            exponent,
        })
    }

    /// Largest `k` such that `self = v^{p^k}` for some word `v`.
    pub fn nu_p(&self, p: Prime) -> Valuation {
        match self.maximal_root() {
            Ok(rd) => Valuation::Finite(
                nu_p_int(&(rd.exponent as i128), p).expect("root exponent is positive"),
            ),
            Err(_) => Valuation::Infinite,
        }
    }

    /// Shortest `v` with `v^n = self` and `p ∤ n`; returns `(v, n)`.
    pub fn p_prime_root(&self, p: Prime) -> Result<(Word, u64)> {
        let rd = self.maximal_root()?;
        let k = nu_p_int(&(rd.exponent as i128), p)?;
        let pk: u64 = p.pow::<i128>(k) as u64;
        let v = rd.root.pow(pk as i64).conjugate_by(&rd.conjugator)?;
        Ok((v, rd.exponent / pk))
    }

    /// Renders the word as `x^2*y^-3*x`, or `1` for the identity.
    pub fn to_text<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.runs.is_empty() {
            return "1".to_string();
        }
        self.runs
            .iter()
            .map(|&(g, e)| {
                let name = names.get(g).map(|s| s.as_ref().to_string()).unwrap_or_else(|| format!("g{g}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn push_run(runs: &mut Vec<(usize, i64)>, g: usize, e: i64) {
    if e == 0 {
        return;
    }
    match runs.last_mut() {
        Some(last) if last.0 == g => {
            last.1 += e;
            if last.1 == 0 {
                runs.pop();
            }
        }
        _ => runs.push((g, e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(runs: &[(usize, i64)]) -> Word {
        Word::from_runs(2, runs.iter().copied()).unwrap()
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    const X: usize = 0;
    const Y: usize = 1;

    #[test]
    fn reduce_examples() {
        let x = Letter::new(X, false);
        let y = Letter::new(Y, false);
        assert!(reduce(2, &[x, x.inv()]).unwrap().is_identity());
        assert_eq!(reduce(2, &[x, y, y.inv(), x]).unwrap(), w(&[(X, 2)]));
        assert_eq!(
            reduce(2, &[x, y, x.inv()]).unwrap(),
            w(&[(X, 1), (Y, 1), (X, -1)])
        );
        assert_eq!(
            reduce(2, &[Letter::new(2, false)]),
            Err(Error::InvalidGenerator { index: 2, alphabet: 2 })
        );
    }

    #[test]
    fn maximal_root_examples() {
        let rd = w(&[(X, 6)]).maximal_root().unwrap();
        assert!(rd.conjugator.is_identity());
        assert_eq!(rd.root, w(&[(X, 1)]));
        assert_eq!(rd.exponent, 6);

        let xy = w(&[(X, 1), (Y, 1)]);
        let rd = xy.pow(4).maximal_root().unwrap();
        assert!(rd.conjugator.is_identity());
        assert_eq!(rd.root, xy);
        assert_eq!(rd.exponent, 4);

        let rd = w(&[(Y, 1), (X, 2), (Y, -1)]).maximal_root().unwrap();
        assert_eq!(rd.conjugator, w(&[(Y, 1)]));
        assert_eq!(rd.root, w(&[(X, 1)]));
        assert_eq!(rd.exponent, 2);

        assert_eq!(Word::identity(2).maximal_root(), Err(Error::TrivialWord));
    }

    #[test]
    fn root_of_core_starting_and_ending_on_same_generator() {
        // (x y x)^3 = x y x^2 y x^2 y x
        let u = w(&[(X, 1), (Y, 1), (X, 1)]);
        let rd = u.pow(3).maximal_root().unwrap();
        assert_eq!(rd.root, u);
        assert_eq!(rd.exponent, 3);
        assert_eq!(rd.reassemble(), u.pow(3));
        // x^2 y x is not a proper power
        let v = w(&[(X, 2), (Y, 1), (X, 1)]);
        assert_eq!(v.maximal_root().unwrap().exponent, 1);
    }

    #[test]
    fn nu_p_examples() {
        assert_eq!(w(&[(X, 6)]).nu_p(p(2)), Valuation::Finite(1));
        assert_eq!(w(&[(X, 1), (Y, 1)]).pow(4).nu_p(p(2)), Valuation::Finite(2));
        let comm = w(&[(X, 1), (Y, 1), (X, -1), (Y, -1)]);
        assert_eq!(comm.nu_p(p(3)), Valuation::Finite(0));
        assert_eq!(Word::identity(2).nu_p(p(2)), Valuation::Infinite);
    }

    #[test]
    fn p_prime_root_examples() {
        assert_eq!(w(&[(X, 6)]).p_prime_root(p(2)).unwrap(), (w(&[(X, 2)]), 3));
        assert_eq!(w(&[(X, 4)]).p_prime_root(p(2)).unwrap(), (w(&[(X, 4)]), 1));
        let xy = w(&[(X, 1), (Y, 1)]);
        assert_eq!(xy.pow(9).p_prime_root(p(2)).unwrap(), (xy.clone(), 9));
        assert_eq!(xy.pow(9).p_prime_root(p(3)).unwrap(), (xy.pow(9), 1));
        assert_eq!(Word::identity(2).p_prime_root(p(2)), Err(Error::TrivialWord));
    }

    #[test]
    fn weights() {
        let two = p(2);
        assert_eq!(Valuation::Finite(2).weight::<i64>(two), Ratio::new(1, 4));
        assert_eq!(Valuation::Infinite.weight::<i64>(two), Ratio::zero());
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let a = Word::generator(2, 0).unwrap();
        let b = Word::generator(3, 0).unwrap();
        assert_eq!(
            a.mul(&b),
            Err(Error::AlphabetMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn text_rendering() {
        let names = ["x", "y"];
        assert_eq!(w(&[(X, 2), (Y, -3), (X, 1)]).to_text(&names), "x^2*y^-3*x");
        assert_eq!(Word::identity(2).to_text(&names), "1");
    }

    #[test]
    fn huge_exponents_stay_compact() {
        let big = w(&[(X, 1 << 40)]);
        assert_eq!(big.nu_p(p(2)), Valuation::Finite(40));
        let mixed = w(&[(X, 1 << 20), (Y, 3)]).pow(8);
        assert_eq!(mixed.nu_p(p(2)), Valuation::Finite(3));
        assert_eq!(mixed.runs().len(), 16);
    }
}
