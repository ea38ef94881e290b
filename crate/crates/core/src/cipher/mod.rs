//! Block cipher over a labeled alphabet.
//!
//! Plaintext is cut into blocks of `L` symbols, each block packed into a
//! number `n_i` (fixed-width decimal labels). One top index `q` is chosen so
//! that every `n_i < d_{q+1}`, and each block is replaced by its greedy
//! representation `(c_q, ..., c_{k-1})` of length `s = q - k + 2`, written
//! back as letters. The key is `(a_1..a_k, s)` plus `L`.

mod alphabet;
mod token;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{parse, validation, Error, Result};
use crate::recurrence::RecurrenceSpec;
use crate::representation::{represent_with, reconstruct_with, PositiveTerms, Representation};

pub use alphabet::{number_to_text, text_to_number, Alphabet, DEFAULT_SYMBOLS};
pub use token::{Token, TokenStream};

pub const DEFAULT_BLOCK_LEN: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherKey {
    spec: RecurrenceSpec,
    s: usize,
    block_len: usize,
}

impl CipherKey {
    pub fn new(spec: RecurrenceSpec, s: usize, block_len: usize) -> Result<Self> {
        spec.require_positive()?;
        if s == 0 {
            return Err(validation("block representation length s must be at least 1"));
        }
        if block_len == 0 {
            return Err(validation("plaintext block length must be at least 1"));
        }
        Ok(Self { spec, s, block_len })
    }

    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// Top sequence index `q = s + k - 2`.
    pub fn top(&self) -> usize {
        self.s + self.spec.degree() - 2
    }

    /// `a_1,...,a_k,s` as an explicit decimal list.
    pub fn render_list(&self) -> String {
        format!("{},{}", self.spec.list(), self.s)
    }

    /// Parses `a_1,...,a_k,s`.
    pub fn parse_list(list: &str, block_len: usize) -> Result<Self> {
        let (coeffs, s) = list
            .rsplit_once(',')
            .ok_or_else(|| parse("key list needs coefficients and s"))?;
        let s = s
            .trim()
            .parse()
            .map_err(|_| parse(format!("bad s {s:?}")))?;
        Self::new(RecurrenceSpec::from_list(coeffs)?, s, block_len)
    }

    /// Reads coefficients written as equal-width zero-padded decimals run
    /// together, e.g. `18101303` (k = 4, width 2) or `182010013003` (width 3).
    pub fn parse_compact_coeffs(text: &str, k: usize) -> Result<RecurrenceSpec> {
        if k == 0 || text.is_empty() || !text.len().is_multiple_of(k) || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse(format!(
                "{text:?} does not split into {k} equal decimal fields"
            )));
        }
        let width = text.len() / k;
        let coeffs = text
            .as_bytes()
            .chunks(width)
            .map(|c| std::str::from_utf8(c).unwrap().parse::<num_bigint::BigInt>().unwrap());
        RecurrenceSpec::new(coeffs)
    }
}

/// Key file: `k`, the coefficients, `s`, `L`, and the alphabet symbols
/// (last symbol pads), one per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyFile {
    pub key: CipherKey,
    pub alphabet: Alphabet,
}

impl fmt::Display for KeyFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = self.key.spec();
        writeln!(f, "{}", spec.degree())?;
        let coeffs: Vec<String> = spec.coeffs().iter().map(ToString::to_string).collect();
        writeln!(f, "{}", coeffs.join(" "))?;
        writeln!(f, "{}", self.key.s())?;
        writeln!(f, "{}", self.key.block_len())?;
        writeln!(f, "{}", self.alphabet.symbols())
    }
}

impl FromStr for KeyFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let [k, coeffs, s, l, symbols] = lines[..] else {
            return Err(parse(format!("key file needs 5 lines, found {}", lines.len())));
        };
        let spec: RecurrenceSpec = format!("{k} {coeffs}").parse()?;
        let num = |t: &str, what: &str| -> Result<usize> {
            t.parse().map_err(|_| parse(format!("bad {what} {t:?}")))
        };
        let key = CipherKey::new(spec, num(s, "s")?, num(l, "block length")?)?;
        Ok(Self {
            key,
            alphabet: Alphabet::from_symbols(symbols)?,
        })
    }
}

/// Encrypts one block number into `s` tokens.
pub fn encrypt_block(key: &CipherKey, n: &BigUint, alphabet: &Alphabet) -> Result<TokenStream> {
    let mut terms = PositiveTerms::new(key.spec())?;
    encrypt_block_with(&mut terms, key, n, alphabet)
}

fn encrypt_block_with(
    terms: &mut PositiveTerms,
    key: &CipherKey,
    n: &BigUint,
    alphabet: &Alphabet,
) -> Result<TokenStream> {
    let rep = represent_with(terms, n, Some(key.s()))?;
    Ok(TokenStream::from_labels(rep.coeffs(), alphabet))
}

/// Inverse of [`encrypt_block`]: the tokens are coefficients of `d_q..d_{k-1}`.
pub fn decrypt_block(key: &CipherKey, tokens: &TokenStream) -> Result<BigUint> {
    let mut terms = PositiveTerms::new(key.spec())?;
    decrypt_block_with(&mut terms, key, tokens)
}

fn decrypt_block_with(terms: &mut PositiveTerms, key: &CipherKey, tokens: &TokenStream) -> Result<BigUint> {
    if tokens.len() != key.s() {
        return Err(Error::Frame(format!(
            "block has {} tokens, key expects {}",
            tokens.len(),
            key.s()
        )));
    }
    let rep = Representation::new(key.spec().degree(), key.top(), tokens.values())?;
    reconstruct_with(terms, &rep)
}

/// Cuts a cipher text into blocks of `s` tokens.
pub fn split_blocks(cipher_text: &str, s: usize, alphabet: &Alphabet) -> Result<Vec<TokenStream>> {
    if s == 0 {
        return Err(validation("block length s must be at least 1"));
    }
    let stream = TokenStream::parse(cipher_text, alphabet)?;
    if stream.len() % s != 0 {
        return Err(Error::Frame(format!(
            "{} tokens do not split into blocks of {s}",
            stream.len()
        )));
    }
    stream
        .tokens()
        .chunks(s)
        .map(|c| TokenStream::new(c.to_vec(), alphabet))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encrypted {
    pub key: CipherKey,
    pub cipher_text: String,
    /// Pad symbols appended to fill the last block.
    pub padding: usize,
}

fn pad_blocks(block_len: usize, plaintext: &str, alphabet: &Alphabet) -> Result<(Vec<BigUint>, usize)> {
    if plaintext.is_empty() {
        return Err(validation("plaintext is empty"));
    }
    if block_len == 0 {
        return Err(validation("plaintext block length must be at least 1"));
    }
    let mut symbols: Vec<char> = plaintext.chars().collect();
    let padding = (block_len - symbols.len() % block_len) % block_len;
    symbols.extend(std::iter::repeat_n(alphabet.pad(), padding));
    let blocks = symbols
        .chunks(block_len)
        .map(|b| text_to_number(&b.iter().collect::<String>(), alphabet))
        .collect::<Result<Vec<_>>>()?;
    Ok((blocks, padding))
}

fn encrypt_blocks(
    terms: &mut PositiveTerms,
    key: CipherKey,
    blocks: &[BigUint],
    padding: usize,
    alphabet: &Alphabet,
) -> Result<Encrypted> {
    let mut cipher_text = String::new();
    for n in blocks {
        cipher_text.push_str(&encrypt_block_with(terms, &key, n, alphabet)?.render(alphabet));
    }
    Ok(Encrypted {
        key,
        cipher_text,
        padding,
    })
}

/// Encrypts a whole message; `s` is derived from the largest block number.
pub fn encrypt_message(
    spec: &RecurrenceSpec,
    block_len: usize,
    plaintext: &str,
    alphabet: &Alphabet,
) -> Result<Encrypted> {
    let (blocks, padding) = pad_blocks(block_len, plaintext, alphabet)?;
    let mut terms = PositiveTerms::new(spec)?;
    let max = blocks.iter().max().expect("at least one block");
    let q = terms.top_index(max);
    let key = CipherKey::new(spec.clone(), q + 2 - spec.degree(), block_len)?;
    encrypt_blocks(&mut terms, key, &blocks, padding, alphabet)
}

/// Encrypts under a fixed key; a block too large for its `s` is a range error.
pub fn encrypt_with_key(key: &CipherKey, plaintext: &str, alphabet: &Alphabet) -> Result<Encrypted> {
    let (blocks, padding) = pad_blocks(key.block_len(), plaintext, alphabet)?;
    let mut terms = PositiveTerms::new(key.spec())?;
    encrypt_blocks(&mut terms, key.clone(), &blocks, padding, alphabet)
}

/// Decrypts a whole message. Pad symbols added at encryption stay in the output.
pub fn decrypt_message(key: &CipherKey, cipher_text: &str, alphabet: &Alphabet) -> Result<String> {
    let mut terms = PositiveTerms::new(key.spec())?;
    let mut out = String::new();
    for block in split_blocks(cipher_text, key.s(), alphabet)? {
        let n = decrypt_block_with(&mut terms, key, &block)?;
        out.push_str(&number_to_text(&n, key.block_len(), alphabet)?);
    }
    Ok(out)
}
