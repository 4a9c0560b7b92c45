//! Exact Laurent polynomials in `q` with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z[q, q^-1]` in canonical form: no stored zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_term(1, 0)
    }

    /// `coeff * q^exp`.
    pub fn from_term(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// `q^exp`.
    pub fn monomial(exp: i64) -> Self {
        Self::from_term(1, exp)
    }

    /// `q^exp`, negated when `negative`.
    pub fn signed_monomial(negative: bool, exp: i64) -> Self {
        Self::from_term(if negative { -1 } else { 1 }, exp)
    }

    /// `(q - 1)^k`, expanded.
    pub fn t_power(k: u32) -> Self {
        // Binomial expansion: coefficient of q^i is C(k, i) (-1)^(k-i).
        let mut p = Self::zero();
        let mut binom = BigInt::one();
        for i in 0..=k {
            let c = if (k - i).is_multiple_of(2) {
                binom.clone()
            } else {
                -binom.clone()
            };
            p.add_term(i64::from(i), c);
            binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// All exponents `>= 0`, i.e. an element of `Z[q]`.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// All exponents `<= 0`, i.e. an element of `Z[q^-1]`.
    pub fn is_inverse_polynomial(&self) -> bool {
        self.max_exp().is_none_or(|e| e <= 0)
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self * q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    /// `self += a * b`, without allocating the intermediate product.
    pub fn add_product(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                self.add_term(ea + eb, ca * cb);
            }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact substitution `q = q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        if q0.is_zero() {
            return match self.min_exp() {
                Some(e) if e < 0 => Err(Error::ZeroEvaluation),
                _ => Ok(BigRational::from_integer(self.coeff(0))),
            };
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut power = num_traits::pow(q0.clone(), e.unsigned_abs() as usize);
            if *e < 0 {
                power = power.recip();
            }
            acc += power * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Substitution at an integer; only defined when `self` lies in `Z[q]` or `q0 = ±1`.
    pub fn eval_int(&self, q0: &BigInt) -> Result<BigInt> {
        let r = self.eval(&BigRational::from_integer(q0.clone()))?;
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(Error::OutOfRange(format!(
                "{self} at q={q0} is not an integer"
            )))
        }
    }
}

impl Add for &LaurentPoly {
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
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            match *e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if *e == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) grammar, ignoring whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let compact: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let digits = |pos: &mut usize| -> String {
            let start = *pos;
            while *pos < compact.len() && compact[*pos].is_ascii_digit() {
                *pos += 1;
            }
            compact[start..*pos].iter().collect()
        };
        let mut p = LaurentPoly::zero();
        let mut pos = 0;
        while pos < compact.len() {
            let negative = match compact[pos] {
                '+' => {
                    pos += 1;
                    false
                }
                '-' => {
                    pos += 1;
                    true
                }
                _ if pos == 0 => false,
                _ => return Err(err("missing sign between terms")),
            };
            let coeff_text = digits(&mut pos);
            let mut has_q = false;
            if pos < compact.len() && compact[pos] == '*' {
                if coeff_text.is_empty() {
                    return Err(err("'*' without coefficient"));
                }
                pos += 1;
                if compact.get(pos) != Some(&'q') {
                    return Err(err("expected 'q' after '*'"));
                }
            }
            let mut exp = 0i64;
            if compact.get(pos) == Some(&'q') {
                has_q = true;
                pos += 1;
                exp = 1;
                if compact.get(pos) == Some(&'^') {
                    pos += 1;
                    let exp_negative = compact.get(pos) == Some(&'-');
                    if exp_negative {
                        pos += 1;
                    }
                    let e = digits(&mut pos);
                    let e: i64 = e.parse().map_err(|_| err("bad exponent"))?;
                    exp = if exp_negative { -e } else { e };
                }
            }
            if coeff_text.is_empty() && !has_q {
                return Err(err("empty term"));
            }
            let mut coeff = if coeff_text.is_empty() {
                BigInt::one()
            } else {
                coeff_text
                    .parse::<BigInt>()
                    .map_err(|_| err("bad coefficient"))?
            };
            if negative {
                coeff = -coeff;
            }
            p.add_term(exp, coeff);
        }
        Ok(p)
    }
}

// JSON form: {"<exp>": "<coeff>", ...}, exponents descending.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TermsVisitor;

        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from exponent strings to coefficient strings")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((e, c)) = access.next_entry::<String, String>()? {
                    let e: i64 = e.parse().map_err(de::Error::custom)?;
                    let c: BigInt = c.parse().map_err(de::Error::custom)?;
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }

        deserializer.deserialize_map(TermsVisitor)
    }
}
