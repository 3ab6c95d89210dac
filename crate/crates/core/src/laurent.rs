//! Laurent polynomials in one variable `A` with arbitrary-precision integer
//! coefficients.
//!
//! Terms are stored sparsely, keyed by exponent. A stored coefficient is never
//! zero and the zero polynomial has no terms, so structural equality is
//! polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid polynomial at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coef * A^exp`.
    pub fn monomial(coef: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coef.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// The loop value `δ = -A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    /// `δ^k`.
    pub fn delta_power(k: u32) -> Self {
        Self::delta().pow(k)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `(-A^3)^k` for any integer `k`; the framing unit of the bracket.
    pub fn framing_unit(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(sign, 3 * k)
    }

    fn add_term(&mut self, exp: i64, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest minus lowest exponent; zero for the zero polynomial.
    pub fn breadth(&self) -> u64 {
        match (self.max_degree(), self.min_degree()) {
            (Some(hi), Some(lo)) => (hi - lo) as u64,
            _ => 0,
        }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// `(exponent, coefficient)` pairs sorted by descending exponent; the
    /// structured form used in reports.
    pub fn terms_desc(&self) -> Vec<(i64, BigInt)> {
        self.terms.iter().rev().map(|(e, c)| (*e, c.clone())).collect()
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Finds `j` with `self = (-A^3)^j * other`, if any. Both zero gives `Some(0)`.
    pub fn framing_ratio(&self, other: &Self) -> Option<i64> {
        match (self.min_degree(), other.min_degree()) {
            (None, None) => Some(0),
            (Some(a), Some(b)) => {
                let d = a - b;
                if d % 3 != 0 {
                    return None;
                }
                let j = d / 3;
                (&Self::framing_unit(j) * other == *self).then_some(j)
            }
            _ => None,
        }
    }

    /// Evaluates at an integer point; only meaningful for `A = ±1`.
    pub fn eval_unit(&self, a: i64) -> BigInt {
        assert!(a == 1 || a == -1, "only A = 1 and A = -1 are supported");
        self.terms.iter().map(|(e, c)| if a == -1 && e.rem_euclid(2) == 1 { -c.clone() } else { c.clone() }).sum()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Structured form: `[[exponent, coefficient], ...]` by descending exponent.
/// Coefficients outside the 64-bit range are written as decimal strings.
impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            match c.to_i64() {
                Some(small) => seq.serialize_element(&(e, small))?,
                None => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents with explicit signs, e.g. `A^1 - A^-3 - A^-5`.
    /// Unit coefficients are omitted except on the constant term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if *e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "A^{e}")?;
            } else {
                write!(f, "{mag}A^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    /// Accepts the canonical rendering and small variations of it: `A` for
    /// `A^1`, an optional `*` between coefficient and variable, arbitrary
    /// whitespace, and repeated exponents.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let err = |pos: usize, msg: &str| ParsePolyError { pos, msg: msg.to_string() };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let read_digits = |pos: &mut usize| -> &str {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            &s[start..*pos]
        };

        let mut out = LaurentPoly::zero();
        let mut first = true;
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(err(pos, "empty input"));
        }
        while pos < bytes.len() {
            let mut negative = false;
            if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                negative = bytes[pos] == b'-';
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(err(pos, "expected '+' or '-'"));
            }
            first = false;

            let term_start = pos;
            let digits = read_digits(&mut pos);
            let mut coef = if digits.is_empty() {
                BigInt::one()
            } else {
                digits.parse::<BigInt>().map_err(|_| err(term_start, "bad coefficient"))?
            };
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                skip_ws(&mut pos);
            }
            let mut exp = 0i64;
            if pos < bytes.len() && bytes[pos] == b'A' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let mut eneg = false;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        eneg = true;
                        pos += 1;
                    }
                    let e_start = pos;
                    let ed = read_digits(&mut pos);
                    if ed.is_empty() {
                        return Err(err(e_start, "expected exponent"));
                    }
                    exp = ed.parse::<i64>().map_err(|_| err(e_start, "exponent out of range"))?;
                    if eneg {
                        exp = -exp;
                    }
                }
            } else if digits.is_empty() {
                return Err(err(term_start, "expected a term"));
            }
            if negative {
                coef = -coef;
            }
            out.add_term(exp, coef);
            skip_ws(&mut pos);
        }
        Ok(out)
    }
}
