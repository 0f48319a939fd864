use std::ops::{Add, Mul};

use super::LaurentPoly;
use crate::error::{Error, Result};

/// A quotient of Laurent polynomials, kept unreduced until
/// [`to_laurent`](Self::to_laurent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalExpr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalExpr {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NonLaurentResult);
        }
        Ok(RationalExpr { num, den })
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        self.num.div_exact(&self.den)
    }
}

impl From<LaurentPoly> for RationalExpr {
    fn from(p: LaurentPoly) -> Self {
        RationalExpr {
            num: p,
            den: LaurentPoly::one(),
        }
    }
}

impl Add for &RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: &RationalExpr) -> RationalExpr {
        if self.den == rhs.den {
            return RationalExpr {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        RationalExpr {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Mul for &RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: &RationalExpr) -> RationalExpr {
        RationalExpr {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}
