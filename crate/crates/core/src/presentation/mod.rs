//! Finite presentations `⟨X | R⟩` and their exact p-deficiency.

mod parser;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ratio_int, Prime};
use crate::words::Word;
use crate::ExactRational;

pub use parser::parse_word;

/// Generators plus freely reduced, non-trivial relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitePresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl FinitePresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, name) in generators.iter().enumerate() {
            if generators[..i].contains(name) {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        for (index, r) in relators.iter().enumerate() {
            if r.alphabet() != generators.len() {
                return Err(Error::AlphabetMismatch {
                    expected: generators.len(),
                    found: r.alphabet(),
                });
            }
            if r.is_identity() {
                return Err(Error::TrivialRelator { index });
            }
        }
        Ok(FinitePresentation {
            generators,
            relators,
        })
    }

    /// The free group on the given generator names.
    pub fn free<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        FinitePresentation::new(names.into_iter().map(Into::into).collect(), Vec::new())
    }

    /// Generator names `prefix1, prefix2, …`.
    /// `C_{e_1} * … * C_{e_s} * F_r` on generators `x1..xs, y1..yr`.
    pub fn free_product_of_cyclics(orders: &[u64], free_rank: usize) -> Result<Self> {
        let s = orders.len();
        let mut names = FinitePresentation::numbered_names("x", s);
        names.extend(FinitePresentation::numbered_names("y", free_rank));
        let relators = orders
            .iter()
            .enumerate()
            .map(|(i, &e)| Word::from_runs(s + free_rank, [(i, e as i64)]))
            .collect::<Result<Vec<_>>>()?;
        FinitePresentation::new(names, relators)
    }

    pub fn numbered_names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        parser::parse(text)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.generators)
    }

    /// Same generators with `extra` appended to the relators. Trivial words
    /// in `extra` are skipped.
    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut relators = self.relators.clone();
        relators.extend(extra.into_iter().filter(|w| !w.is_identity()));
        FinitePresentation::new(self.generators.clone(), relators)
    }

    /// `|X| - 1 - Σ_r p^{-ν_p(r)}`.
    pub fn p_deficiency(&self, p: Prime) -> ExactRational {
        let size: ExactRational = self
            .relators
            .iter()
            .map(|r| r.nu_p(p).weight(p))
            .fold(ExactRational::zero(), |a, b| a + b);
        ratio_int(self.rank() as i64 - 1) - size
    }

    /// Replaces every relator `r` by `r^n`.
    pub fn power_up(&self, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::PowerTooSmall(n));
        }
        if self.relators.is_empty() {
            return Err(Error::NoRelators);
        }
        FinitePresentation::new(
            self.generators.clone(),
            self.relators.iter().map(|r| r.pow(n as i64)).collect(),
        )
    }

    /// Replaces every relator by its primitive p′-root.
    pub fn p_prime_root_presentation(&self, p: Prime) -> Self {
        let relators = self
            .relators
            .iter()
            .map(|r| r.p_prime_root(p).expect("relators are non-trivial").0)
            .collect();
        FinitePresentation {
            generators: self.generators.clone(),
            relators,
        }
    }

    pub fn word_text(&self, w: &Word) -> String {
        w.to_text(&self.generators)
    }
}

impl FromStr for FinitePresentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FinitePresentation::parse(s)
    }
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r)).collect();
        if rels.is_empty() {
            write!(f, "< {} | >", self.generators.join(", "))
        } else {
            write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
        }
    }
}
