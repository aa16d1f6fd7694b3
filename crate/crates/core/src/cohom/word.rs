//! Words in abstract generators and their text syntax.
//!
//! Generators are the letters `a..z` (`a` is generator 0). A word is a
//! product of terms separated by `*`; a term is a letter, a parenthesized
//! word or a commutator `[u,v] = u^-1 v^-1 u v`, optionally raised to an
//! integer power with `^`, e.g. `(a*b)^7`, `[a,b]^4`, `a^-1*b`.

use std::fmt;

use thiserror::Error;

use crate::gf::FpMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unexpected character {found:?} at position {pos} in {input:?}")]
    Unexpected {
        input: String,
        pos: usize,
        found: Option<char>,
    },
    #[error("generator {letter} is outside the {count} available generators")]
    UnknownGenerator { letter: char, count: usize },
}

/// A letter is a generator index with a sign: `(g, true)` is `g`,
/// `(g, false)` is `g^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub positive: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            positive: !self.positive,
        }
    }

    /// Column index in a coset table: `2 * gen` or `2 * gen + 1`.
    pub fn column(self) -> usize {
        2 * self.gen + usize::from(!self.positive)
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word {
            letters: vec![Letter {
                gen: g,
                positive: true,
            }],
        }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, plus one.
    pub fn generator_bound(&self) -> usize {
        self.letters.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    /// Evaluates the word with generator `i` mapped to `images[i]`, with
    /// inverses supplied in `inverses[i]`.
    pub fn evaluate(&self, images: &[FpMatrix], inverses: &[FpMatrix]) -> FpMatrix {
        let first = &images[0];
        let mut acc = FpMatrix::identity(first.p(), first.rows());
        for l in &self.letters {
            let m = if l.positive {
                &images[l.gen]
            } else {
                &inverses[l.gen]
            };
            acc = &acc * m;
        }
        acc
    }

    pub fn parse(input: &str, generators: usize) -> Result<Word, WordError> {
        let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser {
            input,
            chars: &chars,
            pos: 0,
            generators,
        };
        let w = parser.word()?;
        if parser.pos != chars.len() {
            return Err(parser.unexpected());
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        // a word u^k with u of several syllables prints as (u)^k
        let n = self.letters.len();
        if let Some(period) = (1..n).find(|&p| n % p == 0 && (p..n).all(|i| self.letters[i] == self.letters[i - p])) {
            let base = Word::from_letters(self.letters[..period].iter().copied());
            if base.letters.windows(2).any(|w| w[0] != w[1]) {
                return write!(f, "({base})^{}", n / period);
            }
        }
        write_syllables(&self.letters, f)
    }
}

/// Letters with runs of one letter written as powers, e.g. `a^2*b^-1`.
fn write_syllables(letters: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut j = i;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        if i > 0 {
            write!(f, "*")?;
        }
        let name = (b'a' + l.gen as u8) as char;
        let n = (j - i) as i64;
        let e = if l.positive { n } else { -n };
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
        i = j;
    }
    Ok(())
}

struct Parser<'a> {
    input: &'a str,
    chars: &'a [char],
    pos: usize,
    generators: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn unexpected(&self) -> WordError {
        WordError::Unexpected {
            input: self.input.to_string(),
            pos: self.pos,
            found: self.peek(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), WordError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut w = self.term()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            w = w.mul(&self.term()?);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, WordError> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                w
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Word::commutator(&u, &v)
            }
            Some('1') => {
                self.pos += 1;
                Word::identity()
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                let g = (c as u8 - b'a') as usize;
                if g >= self.generators {
                    return Err(WordError::UnknownGenerator {
                        letter: c,
                        count: self.generators,
                    });
                }
                Word::generator(g)
            }
            _ => return Err(self.unexpected()),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i64, WordError> {
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = s.parse().map_err(|_| self.unexpected())?;
        Ok(if neg { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let w = Word::parse("(a*b)^3", 2).unwrap();
        assert_eq!(w.len(), 6);
        let c = Word::parse("[a,b]", 2).unwrap();
        assert_eq!(c.to_string(), "a^-1*b^-1*a*b");
        assert_eq!(Word::parse("a*a^-1", 1).unwrap(), Word::identity());
        assert_eq!(Word::parse("b^-2", 2).unwrap().to_string(), "b^-2");
        assert!(Word::parse("c", 2).is_err());
        assert!(Word::parse("a^", 2).is_err());
        assert!(Word::parse("(a", 2).is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["a^2", "a*b^-1*a^3", "[a,b]^4", "(a*b*a*b^2)^5", "1"] {
            let w = Word::parse(s, 2).unwrap();
            assert_eq!(Word::parse(&w.to_string(), 2).unwrap(), w);
        }
    }

    #[test]
    fn periodic_words_print_as_powers() {
        assert_eq!(Word::parse("a*b*a*b*a*b", 2).unwrap().to_string(), "(a*b)^3");
        assert_eq!(Word::parse("(a*b^-1*a*b)^4", 2).unwrap().to_string(), "(a*b^-1*a*b)^4");
        assert_eq!(Word::parse("a*b*a", 2).unwrap().to_string(), "a*b*a");
    }

    #[test]
    fn evaluate_matches_product() {
        let a = FpMatrix::from_rows(2, &[&[1, 1], &[0, 1]]);
        let b = FpMatrix::from_rows(2, &[&[0, 1], &[1, 1]]);
        let imgs = vec![a.clone(), b.clone()];
        let invs: Vec<FpMatrix> = imgs.iter().map(|m| m.inverse().unwrap()).collect();
        let w = Word::parse("a*b^-1", 2).unwrap();
        assert_eq!(w.evaluate(&imgs, &invs), &a * &invs[1]);
        assert!(Word::parse("(a*b)^2", 2).unwrap().evaluate(&imgs, &invs).is_identity());
    }
}
