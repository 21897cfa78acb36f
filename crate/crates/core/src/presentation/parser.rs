//! Recursive-descent parser for presentations such as
//! `< x, y | x^2 = y^5 = (x*y)^5 = 1 >`.
//!
//! A chain `w1 = … = wk = 1` contributes `w1, …, wk`; a chain without the
//! trailing `1` contributes `w_i · w_{i+1}⁻¹` for consecutive pairs.

use crate::error::{Error, Result};
use crate::words::Word;

use super::FinitePresentation;

pub(super) fn parse(text: &str) -> Result<FinitePresentation> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        names: Vec::new(),
    };
    p.presentation()
}

/// Parses a single word over the given generator names.
pub fn parse_word<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Word> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        names: names.iter().map(|s| s.as_ref().to_string()).collect(),
    };
    let (w, _) = p.word()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: Vec<String>,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return Err(self.error("expected identifier")),
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("integer `{text}` out of range"),
        })
    }

    fn presentation(&mut self) -> Result<FinitePresentation> {
        self.expect(b'<')?;
        loop {
            let pos = {
                self.skip_ws();
                self.pos
            };
            let name = self.ident()?;
            if self.names.contains(&name) {
                self.pos = pos;
                return Err(Error::DuplicateGenerator(name));
            }
            self.names.push(name);
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect(b'|')?;
        let mut relators = Vec::new();
        loop {
            match self.peek() {
                Some(b'>') => {
                    self.pos += 1;
                    break;
                }
                None => return Err(self.error("unterminated presentation, expected `>`")),
                _ => {}
            }
            self.chain(&mut relators)?;
            match self.peek() {
                Some(b',') | Some(b';') => self.pos += 1,
                Some(b'>') => {}
                _ => return Err(self.error("expected `,`, `;` or `>`")),
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("unexpected input after `>`"));
        }
        FinitePresentation::new(std::mem::take(&mut self.names), relators)
    }

    fn chain(&mut self, out: &mut Vec<Word>) -> Result<()> {
        let mut words = vec![self.word()?];
        while self.peek() == Some(b'=') {
            self.pos += 1;
            words.push(self.word()?);
        }
        if words.len() == 1 {
            out.push(words.pop().unwrap().0);
        } else if words.last().unwrap().1 {
            words.pop();
            out.extend(words.into_iter().map(|(w, _)| w));
        } else {
            for pair in words.windows(2) {
                out.push(pair[0].0.mul(&pair[1].0.inverse())?);
            }
        }
        Ok(())
    }

    /// Returns the word and whether it was written as the bare literal `1`.
    fn word(&mut self) -> Result<(Word, bool)> {
        let mut acc = Word::identity(self.names.len());
        let mut factors = 0;
        let mut literal_one = false;
        loop {
            match self.peek() {
                Some(b'*') if factors > 0 => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'(' || c == b'1' => {}
                _ if factors == 0 => return Err(self.error("expected a word")),
                _ => break,
            }
            let (f, is_one) = self.factor()?;
            literal_one = factors == 0 && is_one;
            acc = acc.mul(&f)?;
            factors += 1;
        }
        Ok((acc, literal_one && factors == 1))
    }

    fn factor(&mut self) -> Result<(Word, bool)> {
        let mut is_one = false;
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let (w, _) = self.word()?;
                self.expect(b')')?;
                w
            }
            Some(b'1') => {
                let start = self.pos;
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos = start;
                    return Err(self.error("only the literal `1` may appear as a factor"));
                }
                is_one = true;
                Word::identity(self.names.len())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let pos = self.pos;
                let name = self.ident()?;
                let index = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(Error::UnknownGenerator { name, pos })?;
                Word::generator(self.names.len(), index)?
            }
            _ => return Err(self.error("expected generator, `(` or `1`")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok((base.pow(e), false));
        }
        Ok((base, is_one))
    }
}
