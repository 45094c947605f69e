use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Laurent polynomial in `A` with exact `i64` coefficients.
///
/// Zero coefficients are never stored. The arithmetic operators panic on
/// coefficient overflow; the `checked_*` methods return `None` instead.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coefficient: i64, exponent: i64) -> Self {
        let mut p = Self::zero();
        if coefficient != 0 {
            p.terms.insert(exponent, coefficient);
        }
        p
    }

    /// `−A² − A⁻²`, the value of a single circle in the unreduced bracket.
    pub fn loop_value() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c).expect("coefficient overflow");
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: i64) -> Option<()> {
        if coefficient == 0 {
            return Some(());
        }
        let c = self.coefficient(exponent).checked_add(coefficient)?;
        if c == 0 {
            self.terms.remove(&exponent);
        } else {
            self.terms.insert(exponent, c);
        }
        Some(())
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c)?;
        }
        Some(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1.checked_add(e2)?, c1.checked_mul(c2)?)?;
            }
        }
        Some(out)
    }

    pub fn checked_pow(&self, exponent: u32) -> Option<Self> {
        let mut out = Self::one();
        for _ in 0..exponent {
            out = out.checked_mul(self)?;
        }
        Some(out)
    }

    pub fn pow(&self, exponent: u32) -> Self {
        self.checked_pow(exponent).expect("coefficient overflow")
    }

    /// Multiply by `A^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, *c)).collect() }
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        self.checked_add(rhs).expect("coefficient overflow")
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        &self + &rhs
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.checked_neg().expect("coefficient overflow")))
                .collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        &self - &rhs
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        self.checked_mul(rhs).expect("coefficient overflow")
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc + p)
    }
}

/// Terms in ascending exponent order, e.g. `-A^-9 + A^-1 + A^3 + A^7`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let magnitude = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (e, magnitude) {
                (0, m) => write!(f, "{m}")?,
                (e, 1) => write!(f, "A^{e}")?,
                (e, m) => write!(f, "{m}A^{e}")?,
            }
        }
        Ok(())
    }
}

/// JSON object from exponent (as a string) to coefficient, ascending.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.terms() {
            map.serialize_entry(&e.to_string(), &c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TermsVisitor;

        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = LaurentPolynomial;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from integer exponent strings to integer coefficients")
            }

            fn visit_map<M: MapAccess<'de>>(self, mut access: M) -> Result<Self::Value, M::Error> {
                let mut p = LaurentPolynomial::zero();
                while let Some((key, c)) = access.next_entry::<String, i64>()? {
                    let e: i64 = key
                        .parse()
                        .map_err(|_| de::Error::custom(format!("invalid exponent {key:?}")))?;
                    p.add_term(e, c).ok_or_else(|| de::Error::custom("coefficient overflow"))?;
                }
                Ok(p)
            }
        }

        deserializer.deserialize_map(TermsVisitor)
    }
}
