use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// An integer Laurent polynomial in `A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * A^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// The loop value `d = -A^2 - A^-2`.
    pub fn d() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coefficient(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// The exact quotient `self / divisor`, if it is a Laurent polynomial.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(dl), Some(dh)) = (divisor.min_exponent(), divisor.max_exponent()) else {
            return Err(Error::NonLaurentResult);
        };
        let lead = divisor.coefficient(dh);
        let Some(floor) = self.min_exponent() else {
            return Ok(Self::zero());
        };
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some(h) = rem.max_exponent() {
            // Every term of an exact quotient is at least floor - dl.
            let e = h - dh;
            let c = rem.coefficient(h);
            if e < floor - dl || c % lead != 0 {
                return Err(Error::NonLaurentResult);
            }
            let q = Self::monomial(c / lead, e);
            rem = &rem - &(&q * divisor);
            quotient = &quotient + &q;
        }
        Ok(quotient)
    }

    /// `{"A": {"<exponent>": coefficient}}`.
    pub fn to_json(&self) -> Value {
        let inner: serde_json::Map<String, Value> = self.terms.iter().map(|(e, c)| (e.to_string(), json!(c))).collect();
        json!({ "A": inner })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let inner = v
            .get("A")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("expected {\"A\": {...}}".into()))?;
        let mut p = Self::zero();
        for (k, c) in inner {
            let e: i32 = k.parse().map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
            let c = c.as_i64().ok_or_else(|| Error::Parse(format!("bad coefficient for {k}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => f.write_str("A")?,
                (1, _) => write!(f, "A^{e}")?,
                (_, 1) => write!(f, "{a}A")?,
                _ => write!(f, "{a}A^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_squared() {
        let d2 = LaurentPoly::d().pow(2);
        assert_eq!(d2, LaurentPoly::from_terms([(4, 1), (0, 2), (-4, 1)]));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = LaurentPoly::from_terms([(1, 2), (1, -2)]);
        assert!(p.is_zero());
        assert_eq!(p.to_json(), json!({"A": {}}));
    }

    #[test]
    fn exact_division() {
        let d = LaurentPoly::d();
        let p = &d * &LaurentPoly::from_terms([(3, 5), (-7, -2)]);
        assert_eq!(p.div_exact(&d).unwrap(), LaurentPoly::from_terms([(3, 5), (-7, -2)]));
        assert!(matches!(LaurentPoly::one().div_exact(&d), Err(Error::NonLaurentResult)));
        assert!(matches!(
            LaurentPoly::monomial(1, 0).div_exact(&LaurentPoly::monomial(2, 0)),
            Err(Error::NonLaurentResult)
        ));
        assert_eq!(
            LaurentPoly::monomial(3, 2).div_exact(&LaurentPoly::monomial(1, 5)).unwrap(),
            LaurentPoly::monomial(3, -3)
        );
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(5, -1), (-3, -1), (-7, 1)]);
        assert_eq!(p.to_string(), "-A^5 - A^-3 + A^-7");
        assert_eq!(LaurentPoly::from_terms([(1, 2), (0, -3)]).to_string(), "2A - 3");
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::d();
        assert_eq!(p.to_json(), json!({"A": {"-2": -1, "2": -1}}));
        assert_eq!(LaurentPoly::from_json(&p.to_json()).unwrap(), p);
    }
}
