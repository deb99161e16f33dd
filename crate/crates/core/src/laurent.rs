//! Laurent polynomials in the Kauffman variable `A` with arbitrary precision
//! integer coefficients.
//!
//! Everything else in the crate computes in this ring. The quantum variables
//! are embedded as `𝔮 = A^2` and `q = A^4`, so every quantity that shows up in
//! the coefficient formulas (including `q^{k(k+3)/4}` and the half-twist
//! monomials) has an integer exponent in `A`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::render::{render, Variable};

/// Element of `Z[A, A^-1]`.
///
/// Terms are kept sorted by ascending exponent with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `A^e`.
    pub fn monomial(e: i64) -> Self {
        Self {
            terms: vec![(e, BigInt::one())],
        }
    }

    /// `c * A^e`.
    pub fn term(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    /// `(-1)^sign_exp * A^e`, the shape of every framing and twist factor.
    pub fn signed_monomial(sign_exp: i64, e: i64) -> Self {
        let c = if sign_exp.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::term(c, e)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, 0)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs;
    /// repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    /// Assumes `terms` is sorted ascending with distinct exponents.
    fn from_sorted(mut terms: Vec<(i64, BigInt)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + ExactSizeIterator {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Coefficient of the highest power of `A`.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Value at `A = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Largest `d` dividing every exponent (0 for the zero polynomial and for
    /// a constant).
    pub fn exponent_gcd(&self) -> i64 {
        self.terms.iter().fold(0i64, |g, (e, _)| g.gcd(e))
    }

    /// Whether every exponent is divisible by `d`.
    pub fn exponents_divisible_by(&self, d: i64) -> bool {
        self.terms.iter().all(|(e, _)| e.rem_euclid(d) == 0)
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Multiplies by `A^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return Self::term(num_traits::pow(c.clone(), n as usize), e * i64::from(n));
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces `A` by `A^e`, i.e. every exponent `n` becomes `n * e`.
    ///
    /// With `e = -1` this is the involution `q -> 1/q`; with `e = 2` or `4` it
    /// embeds a polynomial in `𝔮` or `q` into `A`.
    pub fn substitute_power(&self, e: i64) -> Self {
        assert!(e != 0, "substitute_power: exponent must be nonzero");
        let mut terms: Vec<(i64, BigInt)> =
            self.terms.iter().map(|(x, c)| (x * e, c.clone())).collect();
        if e < 0 {
            terms.reverse();
        }
        Self { terms }
    }

    /// Exponent-wise inverse of `substitute_power` for `e > 0`; `None` when
    /// some exponent is not a multiple of `e`.
    pub fn compress_exponents(&self, e: i64) -> Option<Self> {
        assert!(e > 0);
        if !self.exponents_divisible_by(e) {
            return None;
        }
        Some(Self {
            terms: self.terms.iter().map(|(x, c)| (x / e, c.clone())).collect(),
        })
    }

    /// Returns `c` with `self = divisor * c`, or the remainder left by long
    /// division when no such `c` exists in `Z[A, A^-1]`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZeroDenominator);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (amin, amax) = (self.terms[0].0, self.terms.last().unwrap().0);
        let (bmin, bmax) = (divisor.terms[0].0, divisor.terms.last().unwrap().0);
        let lc = divisor.leading_coeff().unwrap();
        let qmin = amin - bmin;
        let qmax = amax - bmax;
        if qmax < qmin {
            return Err(Error::RemainderNonzero {
                remainder: self.clone(),
            });
        }

        let span = (amax - amin) as usize + 1;
        let mut rem = vec![BigInt::zero(); span];
        for (e, c) in &self.terms {
            rem[(e - amin) as usize] = c.clone();
        }
        let collect_rem = |rem: Vec<BigInt>| {
            Self::from_sorted(
                rem.into_iter()
                    .enumerate()
                    .map(|(i, c)| (amin + i as i64, c))
                    .collect(),
            )
        };

        let mut quotient: Vec<(i64, BigInt)> = Vec::new();
        for pos in (0..span).rev() {
            if rem[pos].is_zero() {
                continue;
            }
            let top = amin + pos as i64;
            let qe = top - bmax;
            if qe < qmin {
                return Err(Error::RemainderNonzero {
                    remainder: collect_rem(rem),
                });
            }
            let (qc, r) = rem[pos].div_rem(lc);
            if !r.is_zero() {
                return Err(Error::RemainderNonzero {
                    remainder: collect_rem(rem),
                });
            }
            for (eb, cb) in &divisor.terms {
                let idx = (qe + eb - amin) as usize;
                rem[idx] -= &qc * cb;
            }
            quotient.push((qe, qc));
        }
        quotient.reverse();
        Ok(Self::from_sorted(quotient))
    }

    /// Greatest common divisor, normalized to lowest exponent 0 and positive
    /// leading coefficient.
    ///
    /// Uses heuristic integer evaluation (GCDHEU); a candidate is only
    /// accepted after it divides both inputs exactly, so a returned value is
    /// always a true gcd. `None` means the heuristic gave up.
    pub fn gcd(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(other.unit_normalized());
        }
        if other.is_zero() {
            return Some(self.unit_normalized());
        }
        let a = self.unit_normalized();
        let b = other.unit_normalized();
        let cg = a.content().gcd(&b.content());
        let pa = a.primitive_part();
        let pb = b.primitive_part();
        if pa.len() == 1 || pb.len() == 1 {
            return Some(Self::constant(cg));
        }
        if pa == pb {
            return Some(pa.scale(&cg));
        }

        // Compress a common exponent stride so the evaluation points stay small.
        let step = pa.exponent_gcd().gcd(&pb.exponent_gcd()).max(1);
        let pa = pa.compress_exponents(step).unwrap();
        let pb = pb.compress_exponents(step).unwrap();

        let norm = |p: &LaurentPoly| p.terms.iter().map(|(_, c)| c.abs()).max().unwrap();
        let mut xi: BigInt = norm(&pa).min(norm(&pb)) * 2u32 + 29u32;
        for _ in 0..8 {
            let ga = pa.eval_poly_at(&xi);
            let gb = pb.eval_poly_at(&xi);
            let gamma = ga.gcd(&gb);
            if !gamma.is_zero() {
                let candidate = Self::from_xi_adic(gamma, &xi).unit_normalized().primitive_part();
                if !candidate.is_zero()
                    && pa.exact_div(&candidate).is_ok()
                    && pb.exact_div(&candidate).is_ok()
                {
                    return Some(candidate.substitute_power(step).scale(&cg));
                }
            }
            xi = xi * 73794u32 / 27011u32;
        }
        None
    }

    /// Removes the unit `±A^e`: lowest exponent 0, positive leading coefficient.
    pub fn unit_normalized(&self) -> Self {
        let Some(min) = self.min_exp() else {
            return Self::zero();
        };
        let shifted = self.shift(-min);
        if shifted.leading_coeff().unwrap().is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x / &c)).collect(),
        }
    }

    /// Horner evaluation of a polynomial with nonnegative exponents.
    fn eval_poly_at(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut prev = self.max_exp().unwrap_or(0);
        for (e, c) in self.terms.iter().rev() {
            for _ in 0..(prev - e) {
                acc *= x;
            }
            acc += c;
            prev = *e;
        }
        for _ in 0..prev {
            acc *= x;
        }
        acc
    }

    /// Balanced base-`xi` digits of `value`, read as polynomial coefficients.
    fn from_xi_adic(mut value: BigInt, xi: &BigInt) -> Self {
        let half: BigInt = xi / 2u32;
        let mut terms = Vec::new();
        let mut e = 0i64;
        while !value.is_zero() {
            let mut d = value.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            value = (&value - &d) / xi;
            terms.push((e, d));
            e += 1;
        }
        Self::from_sorted(terms)
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { terms: out }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.scale(c).shift(*e);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.scale(c).shift(*e);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut acc = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        Self::from_sorted(
            acc.into_iter()
                .enumerate()
                .map(|(i, c)| (lo + i as i64, c))
                .collect(),
        )
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Variable::A).expect("A-rendering always succeeds"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &LaurentPoly, b: &LaurentPoly| a.add_ref(b));
forward_binop!(Sub, sub, |a: &LaurentPoly, b: &LaurentPoly| a.add_ref(&-b));
forward_binop!(Mul, mul, |a: &LaurentPoly, b: &LaurentPoly| a.mul_ref(b));

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_ref(&-rhs);
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.mul_ref(rhs);
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn additive_inverse_is_empty() {
        let a = LaurentPoly::monomial(2);
        let s = &a + &(-&a);
        assert!(s.is_zero());
        assert_eq!(s.len(), 0);
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(2, 1), (-2, -1)]);
        let b = p(&[(2, 1), (-2, 1)]);
        assert_eq!(a * b, p(&[(4, 1), (-4, -1)]));
    }

    #[test]
    fn monomial_unit() {
        assert!((LaurentPoly::monomial(3) * LaurentPoly::monomial(-3)).is_one());
    }

    #[test]
    fn exact_div_examples() {
        let a = p(&[(4, 1), (-4, -1)]);
        let b = p(&[(2, 1), (-2, -1)]);
        assert_eq!(a.exact_div(&b).unwrap(), p(&[(2, 1), (-2, 1)]));
        assert_eq!(a.exact_div(&LaurentPoly::one()).unwrap(), a);

        let err = p(&[(2, 1), (0, 1)]).exact_div(&p(&[(2, 1), (0, -1)]));
        match err {
            Err(Error::RemainderNonzero { remainder }) => {
                assert_eq!(remainder, LaurentPoly::constant(2))
            }
            other => panic!("expected remainder, got {other:?}"),
        }
    }

    #[test]
    fn exact_div_rejects_non_divisible_coefficient() {
        // 3A^2 / 2A: leading coefficients do not divide.
        let r = LaurentPoly::term(3, 2).exact_div(&LaurentPoly::term(2, 1));
        assert!(matches!(r, Err(Error::RemainderNonzero { .. })));
    }

    #[test]
    fn exact_div_by_zero() {
        assert_eq!(
            LaurentPoly::one().exact_div(&LaurentPoly::zero()),
            Err(Error::DivisionByZeroDenominator)
        );
    }

    #[test]
    fn substitute_power_examples() {
        let f = p(&[(2, 1), (-2, -1)]);
        assert_eq!(f.substitute_power(-1), p(&[(-2, 1), (2, -1)]));
        assert_eq!(p(&[(1, 1), (0, 1)]).substitute_power(2), p(&[(2, 1), (0, 1)]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (1 - A^4)(1 + A^2) and (1 - A^4)(2 - A^8)
        let common = p(&[(0, 1), (4, -1)]);
        let a = &common * &p(&[(0, 1), (2, 1)]);
        let b = &common * &p(&[(0, 2), (8, -1)]);
        let g = a.shift(-7).gcd(&b.shift(3)).unwrap();
        assert_eq!(g, common.unit_normalized());
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = p(&[(0, 6), (1, 6)]);
        let b = p(&[(0, 4), (2, -4)]);
        // 6(1+A), 4(1-A)(1+A)
        assert_eq!(a.gcd(&b).unwrap(), p(&[(0, 2), (1, 2)]));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = p(&[(-1, 2), (3, -1), (0, 5)]);
        let mut acc = LaurentPoly::one();
        for n in 0..6u32 {
            assert_eq!(f.pow(n), acc);
            acc = &acc * &f;
        }
    }
}
