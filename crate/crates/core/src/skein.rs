//! Skein module of the solid torus, `Z[A, A^-1][z]`.
//!
//! Two bases matter here: the Chebyshev basis `e_i` (eigenvectors of the full
//! twist, eigenvalue `μ_i`) and the cyclotomic basis
//! `R_n = ∏_{i<n} (z - λ_{2i})`. The change-of-basis coefficients `t`, `s`,
//! the twist action `d^{(p)}_{k,j}` in the `R` basis and the pairing
//! `<R_k, e_{2i}>` give an independent route to the coefficients that the
//! [`crate::cyclotomic`] module computes from closed formulas.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::fraction::LaurentFraction;
use crate::laurent::LaurentPoly;
use crate::qcalc::{self, QSymbolCache};

/// Polynomial in `z` with Laurent-polynomial coefficients, `coeffs[n]` being
/// the coefficient of `z^n`. Trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZPoly {
    coeffs: Vec<LaurentPoly>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn z() -> Self {
        Self::from_coeffs(vec![LaurentPoly::zero(), LaurentPoly::one()])
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<LaurentPoly>) -> Self {
        while coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> LaurentPoly {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(LaurentPoly::is_one)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul_z(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(LaurentPoly::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Value at `z = x` (Horner).
    pub fn eval(&self, x: &LaurentPoly) -> LaurentPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(LaurentPoly::zero(), |acc, c| &acc * x + c)
    }

    /// Coordinates of `self` in a monic triangular basis (`basis(n)` has degree
    /// exactly `n`), by peeling off the top degree repeatedly.
    pub fn expand_in_basis(&self, basis: impl Fn(usize) -> ZPoly) -> Vec<LaurentPoly> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut rest = self.clone();
        let mut out = vec![LaurentPoly::zero(); deg + 1];
        while let Some(d) = rest.degree() {
            let b = basis(d);
            debug_assert!(b.is_monic() && b.degree() == Some(d));
            let c = rest.coeffs[d].clone();
            rest = &rest - &b.scale(&c);
            out[d] = c;
        }
        out
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| format!("({c})z^{n}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![LaurentPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(out)
    }
}

/// `e_0 = 1`, `e_1 = z`, `e_i = z e_{i-1} - e_{i-2}`.
pub fn chebyshev_e(i: u32) -> ZPoly {
    let mut prev = ZPoly::one();
    if i == 0 {
        return prev;
    }
    let mut cur = ZPoly::z();
    for _ in 1..i {
        let next = &cur.mul_z() - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Kauffman bracket of `e_i` in the plane, `(-1)^i [i+1]`.
pub fn bracket_e(i: u32) -> LaurentPoly {
    let v = qcalc::bracket(i64::from(i) + 1);
    if i.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// `λ_i = -𝔮^{i+1} - 𝔮^{-i-1}`.
pub fn eigenvalue_lambda(i: u32) -> LaurentPoly {
    let e = 2 * (i64::from(i) + 1);
    LaurentPoly::from_terms([(e, -1), (-e, -1)])
}

/// `R_n = ∏_{i=0}^{n-1} (z - λ_{2i})`.
pub fn r_basis(n: u32) -> ZPoly {
    (0..n).fold(ZPoly::one(), |acc, i| {
        let factor = ZPoly::from_coeffs(vec![-eigenvalue_lambda(2 * i), LaurentPoly::one()]);
        &acc * &factor
    })
}

fn check_triangle(k: u32, i: u32, what: &str) -> Result<()> {
    if i > k {
        return Err(Error::IndexOutOfRange(format!("{what} needs i <= k, got k = {k}, i = {i}")));
    }
    Ok(())
}

/// `t_{k,i} = {2k+1}! {2i+2} / ({k+i+2}! {k-i}!)`, the coordinates of `R_k`
/// in the `e` basis.
pub fn t_coeff(cache: &QSymbolCache, k: u32, i: u32) -> Result<LaurentPoly> {
    check_triangle(k, i, "t_coeff")?;
    let num = cache.brace_fact(2 * k + 1) * qcalc::brace(2 * i64::from(i) + 2);
    let den = cache.brace_fact(k + i + 2) * cache.brace_fact(k - i);
    num.exact_div(&den)
}

/// `s_{i,j} = (-1)^{i+j} [i+1+j choose i-j]`, the coordinates of `e_i` in the
/// `R` basis.
pub fn s_coeff(i: u32, j: u32) -> Result<LaurentPoly> {
    check_triangle(i, j, "s_coeff")?;
    let b = qcalc::qbinom_balanced(i + 1 + j, i64::from(i - j));
    Ok(if (i + j).is_multiple_of(2) { b } else { -b })
}

/// Lower-triangular coefficient table `m[k][i]`, `0 <= i <= k <= k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMatrix {
    rows: Vec<Vec<LaurentPoly>>,
}

impl BasisMatrix {
    /// The `t` table (R in terms of e).
    pub fn t_matrix(cache: &QSymbolCache, k_max: u32) -> Self {
        let rows = (0..=k_max)
            .map(|k| (0..=k).map(|i| t_coeff(cache, k, i).expect("in range")).collect())
            .collect();
        Self { rows }
    }

    /// The `s` table (e in terms of R).
    pub fn s_matrix(k_max: u32) -> Self {
        let rows = (0..=k_max)
            .map(|i| (0..=i).map(|j| s_coeff(i, j).expect("in range")).collect())
            .collect();
        Self { rows }
    }

    pub fn k_max(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn get(&self, k: u32, i: u32) -> Option<&LaurentPoly> {
        self.rows.get(k as usize)?.get(i as usize)
    }

    pub fn is_unit_lower_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(k, row)| row.len() == k + 1 && row[k].is_one())
    }

    /// Matrix product restricted to the triangle.
    pub fn compose(&self, other: &BasisMatrix) -> BasisMatrix {
        let n = self.rows.len().min(other.rows.len());
        let rows = (0..n)
            .map(|k| {
                (0..=k)
                    .map(|j| {
                        (j..=k)
                            .map(|i| &self.rows[k][i] * &other.rows[i][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        BasisMatrix { rows }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(k, row)| {
            row.iter()
                .enumerate()
                .all(|(j, v)| if j == k { v.is_one() } else { v.is_zero() })
        })
    }
}

/// Coefficients of the `p`-th power of the twist map in the `R` basis,
/// `t^p(R_k) = Σ_j d^{(p)}_{k,j} R_j`, computed as `Σ_i t_{k,i} μ_i^p s_{i,j}`.
pub fn twist_coeff_d(cache: &QSymbolCache, k: u32, j: u32, p: i64) -> Result<LaurentPoly> {
    check_triangle(k, j, "twist_coeff_d")?;
    let mut acc = LaurentPoly::zero();
    for i in j..=k {
        acc += t_coeff(cache, k, i)? * qcalc::framing_mu_pow(i, p) * s_coeff(i, j)?;
    }
    Ok(acc)
}

/// Masbaum's coefficient of `R_k` in `ω^p`:
/// `c_{k,p} = Σ_l (-1)^l 𝔮^{2pl(l+1)} {2l+1} / ({k+l+1}! {k-l}!)`.
pub fn masbaum_c(cache: &QSymbolCache, k: u32, p: i64) -> LaurentFraction {
    // Common denominator {2k+1}! {k}!.
    let mut num = LaurentPoly::zero();
    for l in 0..=k {
        let li = i64::from(l);
        let term = LaurentPoly::signed_monomial(li, 4 * p * li * (li + 1))
            * qcalc::brace(2 * li + 1)
            * qcalc::brace_range(k + l + 2, 2 * k + 1)
            * qcalc::brace_range(k - l + 1, k);
        num += term;
    }
    let den = cache.brace_fact(2 * k + 1) * cache.brace_fact(k);
    LaurentFraction::new(num, den).expect("nonzero denominator")
}

/// `<R_k, e_{2i}>`, modelled as `R_k(λ_{2i}) <e_{2i}>`: the `e_{2i}`-colored
/// meridian acts on the core by the scalar `λ_{2i}`.
pub fn pairing_r_e(k: u32, i: u32) -> LaurentPoly {
    r_basis(k).eval(&eigenvalue_lambda(2 * i)) * bracket_e(2 * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn zp(coeffs: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(coeffs.iter().map(|&c| LaurentPoly::constant(c)).collect())
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_e(0), ZPoly::one());
        assert_eq!(chebyshev_e(2), zp(&[-1, 0, 1]));
        assert_eq!(chebyshev_e(3), zp(&[0, -2, 0, 1]));
        for i in 0..10 {
            let e = chebyshev_e(i);
            assert_eq!(e.degree(), Some(i as usize));
            assert!(e.is_monic());
        }
    }

    #[test]
    fn bracket_e_examples() {
        assert!(bracket_e(0).is_one());
        assert_eq!(bracket_e(1), p(&[(2, -1), (-2, -1)]));
        assert_eq!(bracket_e(2), p(&[(4, 1), (0, 1), (-4, 1)]));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(eigenvalue_lambda(0), p(&[(2, -1), (-2, -1)]));
        assert_eq!(eigenvalue_lambda(2), p(&[(6, -1), (-6, -1)]));
        for i in 0..=10 {
            assert_eq!(eigenvalue_lambda(i).eval_at_one(), (-2).into());
        }
    }

    #[test]
    fn r_basis_examples() {
        assert_eq!(r_basis(0), ZPoly::one());
        let r1 = ZPoly::from_coeffs(vec![p(&[(2, 1), (-2, 1)]), LaurentPoly::one()]);
        assert_eq!(r_basis(1), r1);
        let f2 = ZPoly::from_coeffs(vec![p(&[(6, 1), (-6, 1)]), LaurentPoly::one()]);
        assert_eq!(r_basis(2), &r1 * &f2);
        for n in 0..8 {
            assert!(r_basis(n).is_monic());
            assert_eq!(r_basis(n).degree(), Some(n as usize));
        }
    }

    #[test]
    fn t_and_s_examples() {
        let cache = QSymbolCache::default();
        assert!(t_coeff(&cache, 0, 0).unwrap().is_one());
        assert_eq!(t_coeff(&cache, 1, 0).unwrap(), qcalc::bracket(2));
        for k in 0..=10 {
            assert!(t_coeff(&cache, k, k).unwrap().is_one());
        }
        assert!(s_coeff(0, 0).unwrap().is_one());
        assert_eq!(s_coeff(1, 0).unwrap(), -qcalc::bracket(2));
        assert!(s_coeff(2, 2).unwrap().is_one());
        assert!(matches!(t_coeff(&cache, 1, 2), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(s_coeff(0, 1), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn basis_expansion_reproduces_t_and_s() {
        let cache = QSymbolCache::default();
        for k in 0..=10u32 {
            let coords = r_basis(k).expand_in_basis(|n| chebyshev_e(n as u32));
            for i in 0..=k {
                assert_eq!(coords[i as usize], t_coeff(&cache, k, i).unwrap(), "t({k},{i})");
            }
            let coords = chebyshev_e(k).expand_in_basis(|n| r_basis(n as u32));
            for j in 0..=k {
                assert_eq!(coords[j as usize], s_coeff(k, j).unwrap(), "s({k},{j})");
            }
        }
    }

    #[test]
    fn matrices_are_mutually_inverse() {
        let cache = QSymbolCache::default();
        let t = BasisMatrix::t_matrix(&cache, 12);
        let s = BasisMatrix::s_matrix(12);
        assert!(t.is_unit_lower_triangular());
        assert!(s.is_unit_lower_triangular());
        assert!(t.compose(&s).is_identity());
        assert!(s.compose(&t).is_identity());
    }

    #[test]
    fn twist_examples() {
        let cache = QSymbolCache::default();
        for k in 0..=8 {
            for j in 0..=k {
                let d0 = twist_coeff_d(&cache, k, j, 0).unwrap();
                assert_eq!(d0.is_one(), k == j);
                assert_eq!(d0.is_zero(), k != j);
            }
            for pp in -4..=4 {
                assert_eq!(
                    twist_coeff_d(&cache, k, k, pp).unwrap(),
                    qcalc::framing_mu_pow(k, pp)
                );
            }
        }
        let expect = qcalc::bracket(2) * p(&[(0, 1), (3, 1)]);
        assert_eq!(twist_coeff_d(&cache, 1, 0, 1).unwrap(), expect);
    }

    #[test]
    fn twist_and_inverse_twist_compose_to_identity() {
        let cache = QSymbolCache::default();
        for k in 0..=10u32 {
            for j in 0..=k {
                let v: LaurentPoly = (j..=k)
                    .map(|i| {
                        twist_coeff_d(&cache, k, i, 1).unwrap()
                            * twist_coeff_d(&cache, i, j, -1).unwrap()
                    })
                    .sum();
                assert_eq!(v.is_one(), k == j, "k={k} j={j}");
                assert_eq!(v.is_zero(), k != j, "k={k} j={j}");
            }
        }
    }

    #[test]
    fn masbaum_examples() {
        let cache = QSymbolCache::default();
        for pp in [-3, -2, -1, 1, 2, 3] {
            assert_eq!(masbaum_c(&cache, 0, pp), LaurentFraction::one());
        }
        for k in 0..=8u32 {
            let ki = i64::from(k);
            let expect = LaurentFraction::new(
                LaurentPoly::signed_monomial(ki, ki * (ki + 3)),
                qcalc::brace_fact(k),
            )
            .unwrap();
            assert_eq!(masbaum_c(&cache, k, 1), expect, "k = {k}");
        }
        let expect = LaurentFraction::new(p(&[(4, -1), (12, -1)]), qcalc::brace(1)).unwrap();
        assert_eq!(masbaum_c(&cache, 1, 2), expect);
    }

    #[test]
    fn pairing_examples() {
        assert!(pairing_r_e(1, 0).is_zero());
        assert_eq!(pairing_r_e(1, 1), -(qcalc::brace(3) * qcalc::brace(2)));
        assert!(pairing_r_e(3, 1).is_zero());
    }

    #[test]
    fn pairing_orthogonality_and_diagonal() {
        for k in 0..=12u32 {
            for i in 0..k {
                assert!(pairing_r_e(k, i).is_zero(), "k={k} i={i}");
            }
            let diag = qcalc::brace_fact(2 * k + 1).exact_div(&qcalc::brace(1)).unwrap();
            let diag = if k % 2 == 0 { diag } else { -diag };
            assert_eq!(pairing_r_e(k, k), diag, "k={k}");
        }
    }
}
