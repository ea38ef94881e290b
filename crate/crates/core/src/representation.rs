//! Greedy quotient-remainder representation of naturals over the terms of
//! a positive recurrence.
//!
//! For `d_q <= n < d_{q+1}`, dividing successively by `d_q, d_{q-1}, ..., d_k`
//! and keeping the last remainder as the coefficient of `d_{k-1} = 1` gives
//! `n = c_q d_q + ... + c_k d_k + c_{k-1}`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{validation, Error, Result};
use crate::recurrence::{RecurrenceSpec, SequenceTable};

/// Coefficients `(c_q, c_{q-1}, ..., c_{k-1})`, highest index first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    k: usize,
    q: usize,
    coeffs: Vec<BigUint>,
}

impl Representation {
    /// Checks `coeffs.len() == q - k + 2`.
    pub fn new(k: usize, q: usize, coeffs: Vec<BigUint>) -> Result<Self> {
        if q + 1 < k || coeffs.len() != q + 2 - k {
            return Err(validation(format!(
                "top index {q} with degree {k} needs {} coefficients, got {}",
                (q + 2).saturating_sub(k),
                coeffs.len()
            )));
        }
        Ok(Self { k, q, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Top sequence index `q`.
    pub fn top(&self) -> usize {
        self.q
    }

    /// Number of coefficients, `s = q - k + 2`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigUint> {
        self.coeffs
    }

    /// Pairs `(sequence index, coefficient)` from the top down.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.coeffs.iter().enumerate().map(move |(t, c)| (self.q - t, c))
    }
}

/// The nonnegative terms of a positive recurrence, grown on demand.
#[derive(Debug, Clone)]
pub struct PositiveTerms {
    table: SequenceTable,
    terms: Vec<BigUint>,
}

impl PositiveTerms {
    pub fn new(spec: &RecurrenceSpec) -> Result<Self> {
        spec.require_positive()?;
        let table = spec.generate(spec.degree() - 1)?;
        let terms = table
            .values()
            .iter()
            .map(|v| v.to_biguint().expect("positive spec"))
            .collect();
        Ok(Self { table, terms })
    }

    pub fn spec(&self) -> &RecurrenceSpec {
        self.table.spec()
    }

    /// `d_i`, extending the table as needed.
    pub fn get(&mut self, i: usize) -> &BigUint {
        while self.terms.len() <= i {
            let v = self.table.push_next().to_biguint().expect("positive spec");
            self.terms.push(v);
        }
        &self.terms[i]
    }

    /// Largest `q >= k-1` with `d_q <= n` (ties go to the larger index).
    pub fn top_index(&mut self, n: &BigUint) -> usize {
        let k = self.spec().degree();
        let mut q = k - 1;
        while self.get(q + 1) <= n {
            q += 1;
        }
        q
    }
}

/// Largest `q` with `d_q <= n`; `n = 0` gives `k - 1`.
pub fn canonical_q(spec: &RecurrenceSpec, n: &BigUint) -> Result<usize> {
    Ok(PositiveTerms::new(spec)?.top_index(n))
}

/// Greedy representation of `n`. With `fixed_s`, the result has exactly
/// that many coefficients (zeros on the left) or a range error if `n` does
/// not fit below `d_{q+1}` for `q = fixed_s + k - 2`.
pub fn represent(spec: &RecurrenceSpec, n: &BigUint, fixed_s: Option<usize>) -> Result<Representation> {
    let mut terms = PositiveTerms::new(spec)?;
    represent_with(&mut terms, n, fixed_s)
}

/// [`represent`] against a caller-held term cache.
pub fn represent_with(
    terms: &mut PositiveTerms,
    n: &BigUint,
    fixed_s: Option<usize>,
) -> Result<Representation> {
    let k = terms.spec().degree();
    let q = match fixed_s {
        None => terms.top_index(n),
        Some(0) => return Err(validation("representation length must be at least 1")),
        Some(s) => {
            let q = s + k - 2;
            if n >= terms.get(q + 1) {
                return Err(Error::Range(format!(
                    "{n} needs more than {s} coefficients (d_{} = {})",
                    q + 1,
                    terms.get(q + 1)
                )));
            }
            q
        }
    };
    let mut rem = n.clone();
    let mut coeffs = Vec::with_capacity(q + 2 - k);
    for j in (k..=q).rev() {
        let (c, r) = rem.div_rem(terms.get(j));
        coeffs.push(c);
        rem = r;
    }
    // d_{k-1} = 1 takes whatever is left.
    coeffs.push(rem);
    Representation::new(k, q, coeffs)
}

/// `sum c_j d_j` over the representation's indices.
pub fn reconstruct(spec: &RecurrenceSpec, rep: &Representation) -> Result<BigUint> {
    let mut terms = PositiveTerms::new(spec)?;
    reconstruct_with(&mut terms, rep)
}

pub fn reconstruct_with(terms: &mut PositiveTerms, rep: &Representation) -> Result<BigUint> {
    if rep.degree() != terms.spec().degree() {
        return Err(validation("representation degree does not match spec"));
    }
    let mut acc = BigUint::zero();
    for (j, c) in rep.terms() {
        if !c.is_zero() {
            acc += c * terms.get(j);
        }
    }
    Ok(acc)
}

/// Whether every running remainder respects the quotient-remainder bounds:
/// before dividing by `d_j` it is below `d_{j+1}`, after it is below `d_j`.
pub fn is_canonical(spec: &RecurrenceSpec, rep: &Representation) -> Result<bool> {
    let mut terms = PositiveTerms::new(spec)?;
    let k = spec.degree();
    if rep.degree() != k {
        return Err(validation("representation degree does not match spec"));
    }
    // The running remainder at level j is the partial sum over indices <= j,
    // so both bounds reduce to partial_j < d_{j+1} for every j.
    let mut partial = BigUint::zero();
    for (j, c) in rep.terms().collect::<Vec<_>>().into_iter().rev() {
        partial += c * terms.get(j);
        if &partial >= terms.get(j + 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: &[i64]) -> RecurrenceSpec {
        RecurrenceSpec::new(a.iter().copied()).unwrap()
    }

    fn nat(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn coeffs(rep: &Representation) -> Vec<u64> {
        rep.coeffs().iter().map(|c| u64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn canonical_q_examples() {
        let s = spec(&[18, 10, 13, 3]);
        assert_eq!(canonical_q(&s, &nat(9_140_713)).unwrap(), 8);
        let fib = spec(&[1, 1]);
        assert_eq!(canonical_q(&fib, &nat(1)).unwrap(), 2);
        assert_eq!(canonical_q(&fib, &nat(100)).unwrap(), 11);
        assert_eq!(canonical_q(&fib, &nat(0)).unwrap(), 1);
        assert!(canonical_q(&spec(&[1, -1]), &nat(3)).is_err());
    }

    #[test]
    fn worked_example_blocks() {
        let s = spec(&[18, 10, 13, 3]);
        let cases: [(u64, [u64; 6]); 4] = [
            (9_140_713, [4, 4, 18, 8, 15, 5]),
            (26_070_018, [12, 3, 4, 13, 1, 13]),
            (26_002_603, [12, 2, 12, 7, 13, 13]),
            (14_062_626, [6, 10, 10, 1, 3, 6]),
        ];
        for (n, want) in cases {
            let rep = represent(&s, &nat(n), None).unwrap();
            assert_eq!(coeffs(&rep), want, "n = {n}");
            assert_eq!(rep.top(), 8);
            assert!(is_canonical(&s, &rep).unwrap());
            assert_eq!(reconstruct(&s, &rep).unwrap(), nat(n));
        }
    }

    #[test]
    fn reconstruct_examples() {
        let s = spec(&[18, 10, 13, 3]);
        let rep = Representation::new(4, 8, [6u32, 10, 10, 1, 3, 6].map(BigUint::from).to_vec()).unwrap();
        assert_eq!(reconstruct(&s, &rep).unwrap(), nat(14_062_626));
        let zero = Representation::new(2, 4, vec![BigUint::zero(); 4]).unwrap();
        assert_eq!(reconstruct(&spec(&[1, 1]), &zero).unwrap(), nat(0));
        assert!(Representation::new(2, 4, vec![BigUint::zero(); 3]).is_err());
    }

    #[test]
    fn fixed_length_padding_and_range() {
        let s = spec(&[2, 3, 1]);
        assert_eq!(coeffs(&represent(&s, &nat(0), Some(3)).unwrap()), [0, 0, 0]);
        let fib = spec(&[1, 1]);
        // 4 = 3 + 1 -> d_4 + d_2; s = 5 means q = 5.
        let rep = represent(&fib, &nat(4), Some(5)).unwrap();
        assert_eq!(coeffs(&rep), [0, 1, 0, 1, 0]);
        // d_6 = 8 is out of reach for q = 5.
        assert!(matches!(represent(&fib, &nat(8), Some(5)), Err(Error::Range(_))));
        assert!(represent(&fib, &nat(1), Some(0)).is_err());
    }

    #[test]
    fn duplicate_terms_prefer_higher_index() {
        // a_1 = 1 makes d_k = d_{k-1} = 1.
        let s = spec(&[1, 2, 2]);
        let rep = represent(&s, &nat(1), None).unwrap();
        assert_eq!(rep.top(), 3);
        assert_eq!(coeffs(&rep), [1, 0]);
    }

    #[test]
    fn non_canonical_vectors_are_flagged() {
        let fib = spec(&[1, 1]);
        // 2 = d_3, but also d_2 + d_1.
        let alt = Representation::new(2, 3, vec![nat(0), nat(1), nat(1)]).unwrap();
        assert_eq!(reconstruct(&fib, &alt).unwrap(), nat(2));
        assert!(!is_canonical(&fib, &alt).unwrap());
        let canon = represent(&fib, &nat(2), Some(3)).unwrap();
        assert_eq!(coeffs(&canon), [1, 0, 0]);
        assert!(is_canonical(&fib, &canon).unwrap());
    }
}
