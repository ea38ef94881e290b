//! Cipher tokens and their wire format.
//!
//! A label below `N` is written as its alphabet symbol. A label `>= N` is a
//! numeral, written `#digits#`; within one block all numerals are
//! zero-padded to the width of the widest. The escapes make every stream
//! decodable without knowing the widths out of band.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::alphabet::Alphabet;
use crate::error::{parse, validation, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Token {
    Letter(usize),
    Numeral { value: BigUint, width: usize },
}

impl Token {
    pub fn value(&self) -> BigUint {
        match self {
            Token::Letter(l) => BigUint::from(*l),
            Token::Numeral { value, .. } => value.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TokenStream {
    tokens: Vec<Token>,
}

impl TokenStream {
    /// Checks the letter/numeral split against `alphabet`.
    pub fn new(tokens: Vec<Token>, alphabet: &Alphabet) -> Result<Self> {
        let n = alphabet.len();
        for t in &tokens {
            match t {
                Token::Letter(l) if *l >= n => {
                    return Err(validation(format!("letter label {l} is not below {n}")))
                }
                Token::Numeral { value, width } => {
                    if *value < BigUint::from(n) {
                        return Err(validation(format!("numeral {value} is below {n}")));
                    }
                    if value.to_string().len() > *width {
                        return Err(validation(format!("numeral {value} wider than {width}")));
                    }
                }
                _ => {}
            }
        }
        Ok(Self { tokens })
    }

    /// One block of labels: small ones become letters, the rest numerals
    /// sharing the widest numeral's width.
    pub fn from_labels(labels: &[BigUint], alphabet: &Alphabet) -> Self {
        let n = BigUint::from(alphabet.len());
        let width = labels
            .iter()
            .filter(|l| **l >= n)
            .map(|l| l.to_string().len())
            .max()
            .unwrap_or(0);
        let tokens = labels
            .iter()
            .map(|l| {
                if *l < n {
                    Token::Letter(l.to_usize().expect("label below N"))
                } else {
                    Token::Numeral {
                        value: l.clone(),
                        width,
                    }
                }
            })
            .collect();
        Self { tokens }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn values(&self) -> Vec<BigUint> {
        self.tokens.iter().map(Token::value).collect()
    }

    /// Canonical rendering with `#...#` numerals.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.render_with(alphabet, true)
    }

    /// Numerals as bare zero-padded digits. Only decodable when the reader
    /// knows the width (and the alphabet has no digit symbols).
    pub fn render_compat(&self, alphabet: &Alphabet) -> String {
        self.render_with(alphabet, false)
    }

    fn render_with(&self, alphabet: &Alphabet, escape: bool) -> String {
        let mut out = String::new();
        for t in &self.tokens {
            match t {
                Token::Letter(l) => out.push(alphabet.symbol(*l).expect("checked label")),
                Token::Numeral { value, width } => {
                    if escape {
                        out.push('#');
                    }
                    write!(out, "{value:0>width$}", width = *width).unwrap();
                    if escape {
                        out.push('#');
                    }
                }
            }
        }
        out
    }

    /// Parses the canonical format.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut rest = text;
        while let Some(c) = rest.chars().next() {
            if c == '#' {
                let body = &rest[1..];
                let end = body
                    .find('#')
                    .ok_or_else(|| parse("unterminated numeral escape"))?;
                tokens.push(numeral(&body[..end])?);
                rest = &body[end + 1..];
            } else {
                let l = alphabet
                    .label(c)
                    .ok_or_else(|| parse(format!("character {c:?} is not in the alphabet")))?;
                tokens.push(Token::Letter(l));
                rest = &rest[c.len_utf8()..];
            }
        }
        Self::new(tokens, alphabet)
    }

    /// Parses bare digit runs in fixed `width` groups, e.g. `X032121MBD`
    /// with width 3 gives labels 23, 32, 121, 12, 1, 3.
    pub fn parse_compat(text: &str, alphabet: &Alphabet, width: usize) -> Result<Self> {
        if alphabet.has_digits() {
            return Err(validation("bare numerals are ambiguous when the alphabet has digits"));
        }
        if width == 0 {
            return Err(validation("numeral width must be positive"));
        }
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if chars[i].is_ascii_digit() {
                let end = chars[i..]
                    .iter()
                    .position(|c| !c.is_ascii_digit())
                    .map_or(chars.len(), |p| i + p);
                let run: String = chars[i..end].iter().collect();
                if !run.len().is_multiple_of(width) {
                    return Err(parse(format!(
                        "digit run {run:?} is not a multiple of width {width}"
                    )));
                }
                for group in run.as_bytes().chunks(width) {
                    tokens.push(numeral(std::str::from_utf8(group).unwrap())?);
                }
                i = end;
            } else {
                let l = alphabet
                    .label(chars[i])
                    .ok_or_else(|| parse(format!("character {:?} is not in the alphabet", chars[i])))?;
                tokens.push(Token::Letter(l));
                i += 1;
            }
        }
        Self::new(tokens, alphabet)
    }
}

fn numeral(digits: &str) -> Result<Token> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse(format!("bad numeral {digits:?}")));
    }
    Ok(Token::Numeral {
        value: digits.parse().expect("ascii digits"),
        width: digits.len(),
    })
}
