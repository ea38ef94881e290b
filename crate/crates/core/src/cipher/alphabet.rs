use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{validation, Error, Result};

/// Symbols labeled `0..N-1` in order, plus the symbol used to pad the last block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    labels: HashMap<char, usize>,
    pad: char,
    width: usize,
}

/// `A..Z` then `x` (the blank), labels 0..26.
pub const DEFAULT_SYMBOLS: &str = "ABCDEFGHIJKLMNOPQRSTUVWXYZx";

impl Alphabet {
    pub fn new(symbols: &str, pad: char) -> Result<Self> {
        let symbols: Vec<char> = symbols.chars().collect();
        if symbols.is_empty() {
            return Err(validation("alphabet is empty"));
        }
        let mut labels = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if c == '#' || c.is_whitespace() || c.is_control() {
                return Err(validation(format!("symbol {c:?} is reserved")));
            }
            if labels.insert(c, i).is_some() {
                return Err(validation(format!("duplicate symbol {c:?}")));
            }
        }
        if !labels.contains_key(&pad) {
            return Err(validation(format!("pad symbol {pad:?} is not in the alphabet")));
        }
        let width = (symbols.len() - 1).to_string().len();
        Ok(Self {
            symbols,
            labels,
            pad,
            width,
        })
    }

    /// Alphabet whose last symbol is the pad, the convention of key files.
    pub fn from_symbols(symbols: &str) -> Result<Self> {
        let pad = symbols
            .chars()
            .last()
            .ok_or_else(|| validation("alphabet is empty"))?;
        Self::new(symbols, pad)
    }

    /// Number of symbols `N`.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Decimal digits in the largest label, `N - 1`.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pad(&self) -> char {
        self.pad
    }

    pub fn label(&self, c: char) -> Option<usize> {
        self.labels.get(&c).copied()
    }

    pub fn symbol(&self, label: usize) -> Option<char> {
        self.symbols.get(label).copied()
    }

    pub fn symbols(&self) -> String {
        self.symbols.iter().collect()
    }

    pub fn has_digits(&self) -> bool {
        self.symbols.iter().any(char::is_ascii_digit)
    }

    fn group_base(&self) -> BigUint {
        BigUint::from(10u32).pow(self.width as u32)
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::new(DEFAULT_SYMBOLS, 'x').expect("default alphabet is valid")
    }
}

/// Packs the labels of `text` as fixed-width decimal groups into one number.
pub fn text_to_number(text: &str, alphabet: &Alphabet) -> Result<BigUint> {
    let base = alphabet.group_base();
    let mut n = BigUint::zero();
    for c in text.chars() {
        let label = alphabet
            .label(c)
            .ok_or_else(|| validation(format!("character {c:?} is not in the alphabet")))?;
        n = n * &base + label;
    }
    Ok(n)
}

/// Unpacks exactly `length` symbols from `n`.
pub fn number_to_text(n: &BigUint, length: usize, alphabet: &Alphabet) -> Result<String> {
    let base = alphabet.group_base();
    let mut rest = n.clone();
    let mut out = Vec::with_capacity(length);
    for _ in 0..length {
        let (q, group) = rest.div_rem(&base);
        let sym = group
            .to_usize()
            .and_then(|g| alphabet.symbol(g))
            .ok_or_else(|| Error::Decode(format!("label group {group} is not in the alphabet")))?;
        out.push(sym);
        rest = q;
    }
    if !rest.is_zero() {
        return Err(Error::Decode(format!(
            "{n} does not fit in {length} symbols"
        )));
    }
    Ok(out.into_iter().rev().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_table() {
        let a = Alphabet::default();
        assert_eq!(a.len(), 27);
        assert_eq!(a.width(), 2);
        assert_eq!(a.label('A'), Some(0));
        assert_eq!(a.label('J'), Some(9));
        assert_eq!(a.label('x'), Some(26));
        assert_eq!(a.pad(), 'x');
    }

    #[test]
    fn packing_examples() {
        let a = Alphabet::default();
        assert_eq!(text_to_number("JOHN", &a).unwrap(), BigUint::from(9_140_713u32));
        assert_eq!(text_to_number("xAxD", &a).unwrap(), BigUint::from(26_002_603u32));
        assert_eq!(text_to_number("A", &a).unwrap(), BigUint::zero());
        assert!(matches!(text_to_number("JOHN!", &a), Err(Error::Validation(_))));
    }

    #[test]
    fn unpacking_examples() {
        let a = Alphabet::default();
        assert_eq!(number_to_text(&9_140_713u32.into(), 4, &a).unwrap(), "JOHN");
        assert_eq!(number_to_text(&0u32.into(), 1, &a).unwrap(), "A");
        assert_eq!(number_to_text(&14_062_626u32.into(), 4, &a).unwrap(), "OGxx");
        // group 27 has no symbol
        assert!(matches!(number_to_text(&27u32.into(), 1, &a), Err(Error::Decode(_))));
        // too many groups
        assert!(matches!(number_to_text(&100u32.into(), 1, &a), Err(Error::Decode(_))));
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new("AB#", 'A').is_err());
        assert!(Alphabet::new("ABA", 'A').is_err());
        assert!(Alphabet::new("AB", 'C').is_err());
        assert!(Alphabet::new("", 'A').is_err());
        let small = Alphabet::from_symbols("0123456789").unwrap();
        assert_eq!((small.width(), small.pad()), (1, '9'));
        assert!(small.has_digits());
    }
}
