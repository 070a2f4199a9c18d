//! Exact integer-coefficient Laurent polynomials in n variables.
//!
//! Terms are kept in a `BTreeMap` from exponent vectors to nonzero
//! coefficients, so equality is structural, iteration order is the
//! lexicographic monomial order, and values are hashable nowhere but
//! comparable everywhere.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Laurent polynomial with `i64` coefficients and `i32` exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<i32>, i64>,
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = LaurentPoly::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPoly::constant(nvars, 1)
    }

    /// The variable `x_i`, 1-indexed.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(1 <= i && i <= nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        let mut p = LaurentPoly::zero(nvars);
        p.terms.insert(e, 1);
        p
    }

    /// Single term `c * x^e`.
    pub fn monomial(nvars: usize, e: Vec<i32>, c: i64) -> Self {
        assert_eq!(e.len(), nvars);
        let mut p = LaurentPoly::zero(nvars);
        if c != 0 {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, e: Vec<i32>, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = checked_add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.insert_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.insert_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term(e, checked_mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    fn lead(&self) -> Option<(&Vec<i32>, i64)> {
        self.terms.last_key_value().map(|(e, &c)| (e, c))
    }

    /// Exact division in the Laurent ring. Fails with `InexactDivision`
    /// when no Laurent polynomial quotient with integer coefficients
    /// exists.
    ///
    /// Both operands are first shifted so every variable has minimum
    /// exponent zero. Monomials are units, so divisibility is unchanged,
    /// and the lowest corner of a product over an integral domain never
    /// cancels, which makes the shifted quotient an ordinary polynomial
    /// whenever one exists. Ordinary division by lexicographic
    /// leading-term elimination then either strips one quotient term per
    /// round or hits a leading term the divisor's cannot divide, which
    /// proves inexactness on the spot.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        let self_min = self.min_exponents();
        let div_min = divisor.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|&x| -x).collect::<Vec<i32>>();
        let mut rem = self.mul(&LaurentPoly::monomial(self.nvars, neg(&self_min), 1));
        let shifted = divisor.mul(&LaurentPoly::monomial(self.nvars, neg(&div_min), 1));
        let (de, dc) = shifted.lead().expect("nonzero divisor");
        let de = de.clone();
        let mut quotient = LaurentPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.lead() {
            if rc % dc != 0 {
                return Err(Error::InexactDivision);
            }
            let mut te = Vec::with_capacity(self.nvars);
            for (a, b) in re.iter().zip(&de) {
                if a < b {
                    return Err(Error::InexactDivision);
                }
                te.push(a - b);
            }
            let t = LaurentPoly::monomial(self.nvars, te, rc / dc);
            quotient = quotient.add(&t);
            rem = rem.sub(&t.mul(&shifted));
        }
        let unshift: Vec<i32> = self_min.iter().zip(&div_min).map(|(a, b)| a - b).collect();
        Ok(quotient.mul(&LaurentPoly::monomial(self.nvars, unshift, 1)))
    }

    /// Per-variable minimum exponent over all terms; zero for the zero
    /// polynomial. Negating this gives the denominator vector.
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m = vec![i32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (slot, &x) in m.iter_mut().zip(e) {
                *slot = (*slot).min(x);
            }
        }
        if self.terms.is_empty() {
            m.fill(0);
        }
        m
    }

    /// Denominator exponent vector: `d_i` is the exponent of `x_i` in the
    /// monomial denominator when the value is written over one.
    pub fn d_vector(&self) -> Vec<i32> {
        self.min_exponents().iter().map(|&x| -x).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            for (i, &exp) in e.iter().enumerate() {
                if exp == 1 {
                    parts.push(format!("x{}", i + 1));
                } else if exp != 0 {
                    parts.push(format!("x{}^{}", i + 1, exp));
                }
            }
            if parts.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}
