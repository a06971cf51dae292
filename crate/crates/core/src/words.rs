//! Free-group words over [`GeneratorId`] with run-length exponents.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactmat::{generator_matrix, GeneratorId, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub symbol: GeneratorId,
    pub exponent: i64,
}

impl Letter {
    pub fn new(symbol: GeneratorId, exponent: i64) -> Self {
        assert!(exponent != 0, "letter exponent must be nonzero");
        Letter { symbol, exponent }
    }

    pub fn inverse(&self) -> Letter {
        Letter {
            symbol: self.symbol.clone(),
            exponent: -self.exponent,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.symbol)
        } else {
            write!(f, "{}^{}", self.symbol, self.exponent)
        }
    }
}

/// A word as a sequence of letters.
///
/// Words built by parsing keep the letters as written; every combinator
/// returns a reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Letters taken verbatim, without reduction.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn generator(symbol: GeneratorId) -> Self {
        Word {
            letters: vec![Letter::new(symbol, 1)],
        }
    }

    pub fn letter(symbol: GeneratorId, exponent: i64) -> Self {
        if exponent == 0 {
            Word::empty()
        } else {
            Word {
                letters: vec![Letter::new(symbol, exponent)],
            }
        }
    }

    /// Reduced product of the given pieces.
    pub fn product<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut letters = Vec::new();
        for p in parts {
            letters.extend(p.letters.iter().cloned());
        }
        free_reduce(&Word { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of unit letters, i.e. the sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &GeneratorId> {
        self.letters.iter().map(|l| &l.symbol)
    }

    /// Substitute each symbol by a word; symbols not mapped are kept.
    pub fn substitute(&self, map: impl Fn(&GeneratorId) -> Option<Word>) -> Word {
        let mut letters = Vec::new();
        for l in &self.letters {
            match map(&l.symbol) {
                Some(w) => {
                    let piece = power(&w, l.exponent);
                    letters.extend(piece.letters);
                }
                None => letters.push(l.clone()),
            }
        }
        free_reduce(&Word { letters })
    }

    /// Rename symbols one-for-one.
    pub fn rename(&self, map: impl Fn(&GeneratorId) -> GeneratorId) -> Word {
        let letters = self
            .letters
            .iter()
            .map(|l| Letter::new(map(&l.symbol), l.exponent))
            .collect();
        free_reduce(&Word { letters })
    }

    fn unit_letters(&self) -> Vec<(GeneratorId, bool)> {
        let mut out = Vec::with_capacity(self.length() as usize);
        for l in &self.letters {
            for _ in 0..l.exponent.unsigned_abs() {
                out.push((l.symbol.clone(), l.exponent < 0));
            }
        }
        out
    }

    fn from_units(units: &[(GeneratorId, bool)]) -> Word {
        let letters = units
            .iter()
            .map(|(s, neg)| Letter::new(s.clone(), if *neg { -1 } else { 1 }))
            .collect();
        free_reduce(&Word { letters })
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        Word::product([self, rhs])
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl From<GeneratorId> for Word {
    fn from(g: GeneratorId) -> Self {
        Word::generator(g)
    }
}

/// Merge adjacent letters with equal symbols and drop zero exponents, to fixpoint.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.letters.len());
    for l in &w.letters {
        if l.exponent == 0 {
            continue;
        }
        match stack.last_mut() {
            Some(top) if top.symbol == l.symbol => {
                top.exponent += l.exponent;
                if top.exponent == 0 {
                    stack.pop();
                }
            }
            _ => stack.push(l.clone()),
        }
    }
    Word { letters: stack }
}

pub fn inverse(w: &Word) -> Word {
    let letters = w.letters.iter().rev().map(Letter::inverse).collect();
    free_reduce(&Word { letters })
}

pub fn power(w: &Word, k: i64) -> Word {
    let base = if k < 0 { inverse(w) } else { free_reduce(w) };
    let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
    for _ in 0..k.unsigned_abs() {
        letters.extend(base.letters.iter().cloned());
    }
    free_reduce(&Word { letters })
}

/// `v⁻¹ u v`.
pub fn conjugate(u: &Word, v: &Word) -> Word {
    Word::product([&inverse(v), u, v])
}

/// `u⁻¹ v⁻¹ u v`.
pub fn commutator(u: &Word, v: &Word) -> Word {
    Word::product([&inverse(u), &inverse(v), u, v])
}

/// Product of generator matrices, left to right.
pub fn evaluate(w: &Word, n: usize) -> Result<IntMatrix> {
    evaluate_with(w, n, |g| generator_matrix(g, n))
}

/// Evaluation through an arbitrary symbol assignment.
pub fn evaluate_with(
    w: &Word,
    n: usize,
    mut lookup: impl FnMut(&GeneratorId) -> Result<IntMatrix>,
) -> Result<IntMatrix> {
    let mut acc = IntMatrix::identity(n);
    for l in &w.letters {
        let m = lookup(&l.symbol)?;
        if m.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} evaluates to a {}x{} matrix, expected {n}",
                l.symbol,
                m.dim(),
                m.dim()
            )));
        }
        acc = acc.mul(&m.pow(l.exponent)?);
    }
    Ok(acc)
}

fn cmp_units(a: &[(GeneratorId, bool)], b: &[(GeneratorId, bool)]) -> Ordering {
    a.cmp(b)
}

fn least_rotation(units: &[(GeneratorId, bool)]) -> Vec<(GeneratorId, bool)> {
    let len = units.len();
    let mut best: Option<Vec<(GeneratorId, bool)>> = None;
    for s in 0..len {
        let rot: Vec<_> = units[s..].iter().chain(&units[..s]).cloned().collect();
        if best.as_ref().is_none_or(|b| cmp_units(&rot, b) == Ordering::Less) {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

/// Remove conjugating letters: repeatedly fold the last letter into the front.
pub fn cyclic_reduce(w: &Word) -> Word {
    let mut cur = free_reduce(w);
    while cur.letters.len() >= 2 && cur.letters[0].symbol == cur.letters[cur.letters.len() - 1].symbol
    {
        let last = cur.letters.pop().expect("nonempty");
        cur.letters[0].exponent += last.exponent;
        if cur.letters[0].exponent == 0 {
            cur.letters.remove(0);
        }
    }
    cur
}

/// Canonical representative of `w` up to cyclic conjugation and inversion.
///
/// Cyclically reduce, then take the lexicographically least rotation of the
/// unit-letter spelling of the word and of its inverse. Letters compare by
/// symbol, then positive before negative.
pub fn cyclic_normal_form(w: &Word) -> Word {
    let reduced = cyclic_reduce(w);
    let fwd = least_rotation(&reduced.unit_letters());
    let bwd = least_rotation(&inverse(&reduced).unit_letters());
    let best = if cmp_units(&bwd, &fwd) == Ordering::Less {
        bwd
    } else {
        fwd
    };
    Word::from_units(&best)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

struct Scanner<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Scanner<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.base + self.pos, message)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_separators(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace() || b == b'*') {
            self.pos += 1;
        }
        self.pos > start
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an index"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(self.base + start, "index too large"))
    }

    fn signed(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits == self.pos {
            return Err(self.err("expected an integer exponent"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(self.base + start, "exponent out of range"))
    }

    fn symbol(&mut self) -> Result<GeneratorId> {
        let start = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
            _ => return Err(self.err("expected a generator")),
        }
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        let ident = &self.text[start..self.pos];
        if self.peek() != Some(b'(') {
            return Ok(GeneratorId::Named(ident.to_string()));
        }
        let two = match ident {
            "E" | "T" => true,
            "F" | "S" => false,
            _ => {
                return Err(Error::parse(
                    self.base + start,
                    format!("unknown indexed generator {ident:?}"),
                ))
            }
        };
        self.pos += 1;
        let i = self.index()?;
        let g = if two {
            self.expect(b',')?;
            let j = self.index()?;
            if ident == "E" {
                GeneratorId::E(i, j)
            } else {
                GeneratorId::T(i, j)
            }
        } else if ident == "F" {
            GeneratorId::F(i)
        } else {
            GeneratorId::S(i)
        };
        self.expect(b')')?;
        Ok(g)
    }
}

/// Parse the word grammar; positions in errors are byte offsets plus `base`.
pub(crate) fn parse_word_at(text: &str, base: usize) -> Result<Word> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(Word::empty());
    }
    let mut sc = Scanner {
        text,
        bytes: text.as_bytes(),
        pos: 0,
        base,
    };
    let mut letters = Vec::new();
    sc.skip_separators();
    while sc.peek().is_some() {
        let symbol = sc.symbol()?;
        let exponent = if sc.peek() == Some(b'^') {
            sc.pos += 1;
            sc.signed()?
        } else {
            1
        };
        if exponent != 0 {
            letters.push(Letter::new(symbol, exponent));
        }
        if !sc.skip_separators() && sc.peek().is_some() {
            return Err(sc.err("expected a separator between tokens"));
        }
    }
    Ok(Word { letters })
}

pub fn parse_word(text: &str) -> Result<Word> {
    parse_word_at(text, 0)
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}
