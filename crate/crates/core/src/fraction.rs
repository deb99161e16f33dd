//! Quotients of Laurent polynomials, used for the intermediate sums whose
//! individual terms are not polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// `num / den` with `den != 0`.
///
/// The denominator is kept with lowest exponent 0 and a positive leading
/// coefficient. Equality is decided by cross-multiplication, so it never
/// depends on how far a fraction happens to be reduced.
#[derive(Clone)]
pub struct LaurentFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentFraction {
    /// Builds `num / den`, cancelling common factors when they can be found.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroDenominator);
        }
        let mut f = Self { num, den };
        f.reduce();
        Ok(f)
    }

    /// Like [`LaurentFraction::new`] but skips the gcd search; only the unit
    /// normalization of the denominator is applied.
    pub fn new_unreduced(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroDenominator);
        }
        let mut f = Self { num, den };
        f.orient();
        Ok(f)
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Collapses to a polynomial; fails when the denominator does not divide
    /// the numerator.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        self.num.exact_div(&self.den)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new_unreduced(self.den.clone(), self.num.clone())
    }

    /// Applies `A -> A^e` to numerator and denominator.
    pub fn substitute_power(&self, e: i64) -> Self {
        let mut f = Self {
            num: self.num.substitute_power(e),
            den: self.den.substitute_power(e),
        };
        f.orient();
        f
    }

    /// Multiplies by a polynomial, then tries to cancel.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut f = Self {
            num: &self.num * p,
            den: self.den.clone(),
        };
        f.reduce();
        f
    }

    fn orient(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        let shift = -self.den.min_exp().expect("nonzero denominator");
        let mut num = self.num.shift(shift);
        let mut den = self.den.shift(shift);
        if den.leading_coeff().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        self.num = num;
        self.den = den;
    }

    fn reduce(&mut self) {
        self.orient();
        if self.den.is_one() {
            return;
        }
        if let Some(g) = self.num.gcd(&self.den) {
            if !g.is_one() {
                self.num = self.num.exact_div(&g).expect("gcd divides numerator");
                self.den = self.den.exact_div(&g).expect("gcd divides denominator");
                self.orient();
            }
        }
    }
}

impl PartialEq for LaurentFraction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for LaurentFraction {}

impl From<LaurentPoly> for LaurentFraction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn add_frac(a: &LaurentFraction, b: &LaurentFraction) -> LaurentFraction {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        let mut f = LaurentFraction {
            num: &a.num + &b.num,
            den: a.den.clone(),
        };
        f.reduce();
        return f;
    }
    // Cross-denominators divided by whatever common factor is found.
    let g = a.den.gcd(&b.den).unwrap_or_else(LaurentPoly::one);
    let a_co = a.den.exact_div(&g).expect("gcd divides");
    let b_co = b.den.exact_div(&g).expect("gcd divides");
    let mut f = LaurentFraction {
        num: &a.num * &b_co + &b.num * &a_co,
        den: &a.den * &b_co,
    };
    f.reduce();
    f
}

fn mul_frac(a: &LaurentFraction, b: &LaurentFraction) -> LaurentFraction {
    if a.is_zero() || b.is_zero() {
        return LaurentFraction::zero();
    }
    let mut f = LaurentFraction {
        num: &a.num * &b.num,
        den: &a.den * &b.den,
    };
    f.reduce();
    f
}

impl Neg for LaurentFraction {
    type Output = LaurentFraction;
    fn neg(self) -> LaurentFraction {
        LaurentFraction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &LaurentFraction {
    type Output = LaurentFraction;
    fn neg(self) -> LaurentFraction {
        -self.clone()
    }
}

macro_rules! forward_frac_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&LaurentFraction> for &LaurentFraction {
            type Output = LaurentFraction;
            fn $method(self, rhs: &LaurentFraction) -> LaurentFraction {
                $body(self, rhs)
            }
        }
        impl $trait<LaurentFraction> for LaurentFraction {
            type Output = LaurentFraction;
            fn $method(self, rhs: LaurentFraction) -> LaurentFraction {
                $body(&self, &rhs)
            }
        }
        impl $trait<&LaurentFraction> for LaurentFraction {
            type Output = LaurentFraction;
            fn $method(self, rhs: &LaurentFraction) -> LaurentFraction {
                $body(&self, rhs)
            }
        }
        impl $trait<LaurentFraction> for &LaurentFraction {
            type Output = LaurentFraction;
            fn $method(self, rhs: LaurentFraction) -> LaurentFraction {
                $body(self, &rhs)
            }
        }
    };
}

forward_frac_binop!(Add, add, add_frac);
forward_frac_binop!(Sub, sub, |a: &LaurentFraction, b: &LaurentFraction| add_frac(a, &-b));
forward_frac_binop!(Mul, mul, mul_frac);

impl std::iter::Sum for LaurentFraction {
    fn sum<I: Iterator<Item = LaurentFraction>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn q(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(4 * e)
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            LaurentFraction::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(Error::DivisionByZeroDenominator)
        ));
    }

    #[test]
    fn additive_inverse() {
        let f = LaurentFraction::from_poly(p(&[(3, 2), (-1, -5)]));
        let s = &f + &(-&f);
        assert!(s.is_zero());
        assert!(s.denom().is_one());
    }

    #[test]
    fn equality_by_cross_multiplication() {
        // q^-1/(q - 1) == 1/(q^2 - q)
        let a = LaurentFraction::new_unreduced(q(-1), q(1) - q(0)).unwrap();
        let b = LaurentFraction::new_unreduced(LaurentPoly::one(), q(2) - q(1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reciprocal_product_is_one() {
        let a = p(&[(0, 1), (4, -1), (6, 3)]);
        let b = p(&[(-2, 2), (1, 1)]);
        let x = LaurentFraction::new(a.clone(), b.clone()).unwrap();
        let y = LaurentFraction::new(b, a).unwrap();
        let prod = &x * &y;
        assert_eq!(prod, LaurentFraction::one());
        assert!(prod.denom().is_one() && prod.numer().is_one());
    }

    #[test]
    fn canonical_orientation() {
        let f = LaurentFraction::new_unreduced(LaurentPoly::one(), p(&[(-3, -2), (-1, 1)])).unwrap();
        assert_eq!(f.denom().min_exp(), Some(0));
        assert!(f.denom().leading_coeff().unwrap().is_positive());
        // (1) / (A^-1 - 2A^-3) = A^3 / (A^2 - 2)
        assert_eq!(f.numer(), &LaurentPoly::monomial(3));
    }

    #[test]
    fn to_poly_examples() {
        let f = LaurentFraction::new_unreduced(p(&[(4, 1), (-4, -1)]), p(&[(2, 1), (-2, -1)])).unwrap();
        assert_eq!(f.to_poly().unwrap(), p(&[(2, 1), (-2, 1)]));
        let z = LaurentFraction::new_unreduced(LaurentPoly::zero(), p(&[(1, 1), (0, 3)])).unwrap();
        assert!(z.to_poly().unwrap().is_zero());
        let g = LaurentFraction::new(LaurentPoly::one(), q(0) - q(1)).unwrap();
        assert!(matches!(g.to_poly(), Err(Error::RemainderNonzero { .. })));
    }

    #[test]
    fn sums_with_unrelated_denominators_reduce() {
        // 1/(1-q) - q/(1-q) = 1
        let d = q(0) - q(1);
        let a = LaurentFraction::new(LaurentPoly::one(), d.clone()).unwrap();
        let b = LaurentFraction::new(q(1), d.clone()).unwrap();
        assert_eq!((&a - &b).to_poly().unwrap(), LaurentPoly::one());
        // 1/(1-q) + 1/(1+q) = 2/(1-q^2)
        let c = LaurentFraction::new(LaurentPoly::one(), q(0) + q(1)).unwrap();
        let s = &a + &c;
        assert_eq!(s, LaurentFraction::new(LaurentPoly::constant(2), q(0) - q(2)).unwrap());
        assert_eq!(s.denom(), &(q(2) - q(0)));
    }
}
