//! Cyclotomic coefficients `H_k` and colored Jones polynomials `J'_N` of the
//! double twist knots `K_{p,r}` and `K_{p,s/2}`.
//!
//! Two independent routes to `J'_N(K_{p,s/2})` are provided:
//!
//! * [`jones_half`] sums `H_k · {N+k}!/({N-1-k}!{N})` with
//!   `H_k = (-1)^k Σ_j d_{k,j,p} c'_{j,p} c̃'_{j,s/2}`, everything in `{n}` form;
//! * [`jones_walsh`] uses `𝔮^{-2p(N²-1)} Σ_k (-1)^k c'_{k,p} c̃'_{k,s/2} · block`
//!   with both coefficients computed from their `(q;q)` forms.
//!
//! Each sum is accumulated over one common denominator and collapsed with a
//! single exact division.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::bailey;
use crate::error::{Error, Result};
use crate::fraction::LaurentFraction;
use crate::laurent::LaurentPoly;
use crate::qcalc::{self, QSymbolCache};

fn cache() -> &'static QSymbolCache {
    static CACHE: OnceLock<QSymbolCache> = OnceLock::new();
    CACHE.get_or_init(QSymbolCache::default)
}

/// Twist region opposite the `p` full twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    FullTwists(i64),
    /// `s` odd half twists, `m = (s + 1) / 2`.
    HalfTwists { s: i64, m: i64 },
}

/// `K_{p,r}` or `K_{p,s/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KnotSpec {
    pub p: i64,
    pub region: Region,
}

impl KnotSpec {
    pub fn full(p: i64, r: i64) -> Result<Self> {
        if p == 0 || r == 0 {
            return Err(Error::InvalidKnot(format!("p and r must be nonzero, got p = {p}, r = {r}")));
        }
        Ok(Self { p, region: Region::FullTwists(r) })
    }

    pub fn half(p: i64, s: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidKnot("p must be nonzero".into()));
        }
        if s % 2 == 0 {
            return Err(Error::InvalidKnot(format!("s must be odd, got {s}")));
        }
        Ok(Self {
            p,
            region: Region::HalfTwists { s, m: (s + 1) / 2 },
        })
    }

    pub fn is_half(&self) -> bool {
        matches!(self.region, Region::HalfTwists { .. })
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.region {
            Region::FullTwists(r) => write!(f, "K_{{{},{}}}", self.p, r),
            Region::HalfTwists { s, .. } => write!(f, "K_{{{},{}/2}}", self.p, s),
        }
    }
}

/// Which assembly formula produced a [`JonesResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    /// `Σ H_k · block` with `H_k` from `d`, `c'` and `c̃'`.
    Theorem,
    /// `Σ (-1)^k c'_{k,p} c'_{k,r} · block`.
    FullTwist,
    /// The `𝔮^{-2p(N²-1)}`-prefactored single sum over `c'` and `c̃'`.
    Walsh,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Theorem => "theorem",
            Route::FullTwist => "full-twist",
            Route::Walsh => "walsh",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesResult {
    pub knot: KnotSpec,
    pub n: u32,
    pub value: LaurentPoly,
    pub route: Route,
}

fn require_half(knot: &KnotSpec) -> Result<i64> {
    match knot.region {
        Region::HalfTwists { s, .. } => Ok(s),
        Region::FullTwists(_) => Err(Error::InvalidKnot(format!("{knot} has no half-twist region"))),
    }
}

fn require_full(knot: &KnotSpec) -> Result<i64> {
    match knot.region {
        Region::FullTwists(r) => Ok(r),
        Region::HalfTwists { .. } => Err(Error::InvalidKnot(format!("{knot} has no full-twist region"))),
    }
}

/// `{k}! Σ_l sign(l) A^{2w l(l+1)} {2l+1} / ({k+l+1}! {k-l}!)`, as a
/// polynomial. `w = 2p` with alternating sign gives `c'`, `w = s` without
/// sign gives `{k}! c̃'`.
fn brace_sum_scaled(k: u32, w: i64, alternating: bool, extra: &LaurentPoly) -> Result<LaurentPoly> {
    // Common denominator {2k+1}! {k}!; the leading {k}! cancels it.
    let mut num = LaurentPoly::zero();
    for l in 0..=k {
        let li = i64::from(l);
        let sign = if alternating { li } else { 0 };
        num += LaurentPoly::signed_monomial(sign, 2 * w * li * (li + 1))
            * qcalc::brace(2 * li + 1)
            * qcalc::brace_range(k + l + 2, 2 * k + 1)
            * qcalc::brace_range(k - l + 1, k);
    }
    (num * extra).exact_div(&cache().brace_fact(2 * k + 1))
}

/// `c'_{k,p} = {k}! Σ_l (-1)^l 𝔮^{2pl(l+1)} {2l+1} / ({k+l+1}! {k-l}!)`.
pub fn c_prime(k: u32, p: i64) -> Result<LaurentPoly> {
    brace_sum_scaled(k, 2 * p, true, &LaurentPoly::one())
}

/// `{k}! c̃'_{k,s/2}`, a polynomial.
pub fn c_tilde_prime_scaled(k: u32, s: i64) -> Result<LaurentPoly> {
    brace_sum_scaled(k, s, false, &cache().brace_fact(k))
}

/// `c̃'_{k,s/2} = {k}! Σ_l 𝔮^{sl(l+1)} {2l+1} / ({k+l+1}! {k-l}!)`.
pub fn c_tilde_prime(k: u32, s: i64) -> Result<LaurentFraction> {
    LaurentFraction::new(c_tilde_prime_scaled(k, s)?, cache().brace_fact(k))
}

/// `{k-j}! d_{k,j,p}`, a polynomial.
pub fn d_kjp_scaled(k: u32, j: u32, p: i64) -> Result<LaurentPoly> {
    if j > k {
        return Err(Error::IndexOutOfRange(format!("d_kjp needs j <= k, got k = {k}, j = {j}")));
    }
    // Common denominator {2k+2}! {k-j}!; {k-j}!/({k-i}!{i-j}!) is a balanced binomial.
    let mut num = LaurentPoly::zero();
    for i in j..=k {
        let ii = i64::from(i);
        num += LaurentPoly::signed_monomial(ii + i64::from(j), -4 * p * ii * (ii + 2))
            * qcalc::brace(2 * ii + 2)
            * cache().brace_fact(i + 1 + j)
            * qcalc::brace_range(k + i + 3, 2 * k + 2)
            * qcalc::qbinom_balanced(k - j, ii - i64::from(j));
    }
    num.exact_div(&cache().brace_fact(2 * k + 2))
}

/// `d_{k,j,p} = Σ_{i=j}^{k} (-1)^{i+j} 𝔮^{-2pi(i+2)} {2i+2} {i+1+j}! / ({k+i+2}! {k-i}! {i-j}!)`.
pub fn d_kjp(k: u32, j: u32, p: i64) -> Result<LaurentFraction> {
    LaurentFraction::new(d_kjp_scaled(k, j, p)?, cache().brace_fact(k - j))
}

fn integral_or_fail(k: u32, knot: &KnotSpec, scaled: LaurentPoly, den: LaurentPoly) -> Result<LaurentPoly> {
    let fail = |num: LaurentPoly, den: LaurentPoly| Error::IntegralityFailure {
        k,
        knot: knot.to_string(),
        residual: LaurentFraction::new_unreduced(num, den).expect("nonzero denominator"),
    };
    let h = scaled.exact_div(&den).map_err(|_| fail(scaled.clone(), den.clone()))?;
    if !h.exponents_divisible_by(2) {
        return Err(fail(h, LaurentPoly::one()));
    }
    Ok(h)
}

/// `H_k(K_{p,s/2}) = (-1)^k Σ_j d_{k,j,p} c'_{j,p} c̃'_{j,s/2}`.
///
/// Computed as `({k}! H_k) / {k}!` with
/// `{k}! d c̃' = [k choose j] ({k-j}! d) ({j}! c̃')`; a nonzero remainder or an
/// odd `A`-exponent is reported as [`Error::IntegralityFailure`].
pub fn h_coeff_half(k: u32, knot: &KnotSpec) -> Result<LaurentPoly> {
    let s = require_half(knot)?;
    let mut acc = LaurentPoly::zero();
    for j in 0..=k {
        acc += qcalc::qbinom_balanced(k, i64::from(j))
            * d_kjp_scaled(k, j, knot.p)?
            * c_prime(j, knot.p)?
            * c_tilde_prime_scaled(j, s)?;
    }
    let acc = acc * LaurentPoly::signed_monomial(i64::from(k), 0);
    integral_or_fail(k, knot, acc, cache().brace_fact(k))
}

/// `H_k(K_{p,r}) = (-1)^k c'_{k,p} c'_{k,r}`.
pub fn h_coeff_int(k: u32, knot: &KnotSpec) -> Result<LaurentPoly> {
    let r = require_full(knot)?;
    let h = LaurentPoly::signed_monomial(i64::from(k), 0) * c_prime(k, knot.p)? * c_prime(k, r)?;
    integral_or_fail(k, knot, h, LaurentPoly::one())
}

/// `H_k` for either family.
pub fn h_coeff(k: u32, knot: &KnotSpec) -> Result<LaurentPoly> {
    if knot.is_half() {
        h_coeff_half(k, knot)
    } else {
        h_coeff_int(k, knot)
    }
}

/// `Σ_{k<N} H_k · {N+k}!/({N-1-k}!{N})` for precomputed `H_0, ..., H_{N-1}`.
pub fn assemble_jones(n: u32, h: &[LaurentPoly]) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("colour N must be positive".into()));
    }
    if h.len() < n as usize {
        return Err(Error::IndexOutOfRange(format!("need H_0..H_{}, got {} values", n - 1, h.len())));
    }
    let mut acc = LaurentPoly::zero();
    for (k, hk) in h.iter().take(n as usize).enumerate() {
        acc += hk * &qcalc::cyclo_block(n, k as u32)?;
    }
    Ok(acc)
}

fn coeffs_upto(n: u32, knot: &KnotSpec) -> Result<Vec<LaurentPoly>> {
    (0..n).into_par_iter().map(|k| h_coeff(k, knot)).collect()
}

pub fn jones_half(n: u32, knot: &KnotSpec) -> Result<JonesResult> {
    require_half(knot)?;
    let value = assemble_jones(n, &coeffs_upto(n, knot)?)?;
    Ok(JonesResult { knot: *knot, n, value, route: Route::Theorem })
}

pub fn jones_int(n: u32, knot: &KnotSpec) -> Result<JonesResult> {
    require_full(knot)?;
    let value = assemble_jones(n, &coeffs_upto(n, knot)?)?;
    Ok(JonesResult { knot: *knot, n, value, route: Route::FullTwist })
}

/// `(-1)^k q^{(k²+3k)/4} Σ_l sign(l) q^{e(l)} (1-q^{2l+1}) (q;q)_k / ((q;q)_{k+l+1} (q;q)_{k-l})`,
/// multiplied by `extra` before the collapse.
fn pochhammer_sum(k: u32, exponent: impl Fn(i64) -> i64, alternating: bool, extra: &LaurentPoly) -> Result<LaurentPoly> {
    let ki = i64::from(k);
    // Common denominator (q;q)_{2k+1} (q;q)_k; the leading (q;q)_k cancels it.
    let mut num = LaurentPoly::zero();
    for l in 0..=k {
        let li = i64::from(l);
        let sign = if alternating { li } else { 0 };
        num += LaurentPoly::signed_monomial(sign, 4 * exponent(li))
            * qcalc::pochhammer(2 * li + 1, 1)
            * qcalc::pochhammer(i64::from(k + l + 2), k - l)
            * qcalc::pochhammer(i64::from(k - l + 1), l);
    }
    let num = num * LaurentPoly::signed_monomial(ki, ki * (ki + 3)) * extra;
    num.exact_div(&cache().q_fact(2 * k + 1))
}

/// `c'_{k,p}` from its `(q;q)` form:
/// `(-1)^k q^{(k²+3k)/4} Σ_l (-1)^l q^{l(l+1)p+l(l-1)/2} (1-q^{2l+1}) (q;q)_k / ((q;q)_{k+l+1}(q;q)_{k-l})`.
pub fn c_prime_qform(k: u32, p: i64) -> Result<LaurentPoly> {
    pochhammer_sum(k, |l| l * (l + 1) * p + l * (l - 1) / 2, true, &LaurentPoly::one())
}

/// `(q;q)_k c̃'_{k,s/2}` from the `(q;q)` form
/// `(-1)^k q^{(k²+3k)/4} Σ_l q^{sl(l+1)/2+l(l-1)/2} (1-q^{2l+1}) (q;q)_k / ((q;q)_{k+l+1}(q;q)_{k-l})`.
pub fn c_tilde_prime_qform_scaled(k: u32, s: i64) -> Result<LaurentPoly> {
    // s l(l+1)/2 + l(l-1)/2 is an integer for odd s.
    pochhammer_sum(k, |l| (s * l * (l + 1) + l * (l - 1)) / 2, false, &cache().q_fact(k))
}

/// `J'_N = 𝔮^{-2p(N²-1)} Σ_k (-1)^k c'_{k,p} c̃'_{k,s/2} · {N+k}!/({N-1-k}!{N})`.
pub fn jones_walsh(n: u32, knot: &KnotSpec) -> Result<JonesResult> {
    let s = require_half(knot)?;
    if n == 0 {
        return Err(Error::IndexOutOfRange("colour N must be positive".into()));
    }
    let terms: Vec<LaurentPoly> = (0..n)
        .into_par_iter()
        .map(|k| -> Result<LaurentPoly> {
            let block = qcalc::cyclo_block(n, k)?.exact_div(&cache().q_fact(k))?;
            Ok(LaurentPoly::signed_monomial(i64::from(k), 0)
                * c_prime_qform(k, knot.p)?
                * c_tilde_prime_qform_scaled(k, s)?
                * block)
        })
        .collect::<Result<_>>()?;
    let ni = i64::from(n);
    let value: LaurentPoly = terms.into_iter().sum::<LaurentPoly>().shift(-4 * knot.p * (ni * ni - 1));
    Ok(JonesResult { knot: *knot, n, value, route: Route::Walsh })
}

/// `H_k` rebuilt from the chain-sum forms, as a fraction.
pub fn h_coeff_multisum(k: u32, knot: &KnotSpec) -> Result<LaurentFraction> {
    let c = cache();
    let sign = LaurentPoly::signed_monomial(i64::from(k), 0);
    match knot.region {
        Region::FullTwists(r) => {
            let h = sign * bailey::multisum_c_prime(c, k, knot.p) * bailey::multisum_c_prime(c, k, r);
            Ok(h.into())
        }
        Region::HalfTwists { m, .. } => {
            if m < 1 {
                return Err(Error::IndexOutOfRange(format!("chain sums need s >= 1, got {knot}")));
            }
            let mut acc = LaurentFraction::zero();
            for j in 0..=k {
                let cp = bailey::multisum_c_prime(c, j, knot.p);
                let ct = bailey::multisum_c_tilde(c, j, m as u32)?;
                acc = acc + bailey::multisum_d(c, k, j, knot.p)? * ct.mul_poly(&cp);
            }
            Ok(acc.mul_poly(&sign))
        }
    }
}

/// Cross-validations attached to a [`CoeffTable`] entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Exact collapse to `Z[𝔮^{±1}]`.
    Integrality,
    /// Agreement with the chain-sum route.
    MultiSum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffEntry {
    pub h: LaurentPoly,
    pub checks: BTreeSet<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub knot: KnotSpec,
    pub entries: Vec<CoeffEntry>,
}

impl CoeffTable {
    /// Computes `H_0, ..., H_{max_k}` in parallel. With `cross_check`, every
    /// entry is also compared against the chain-sum route (half-twist knots
    /// need `s >= 1` for this).
    pub fn build(knot: &KnotSpec, max_k: u32, cross_check: bool) -> Result<Self> {
        let entries = (0..=max_k)
            .into_par_iter()
            .map(|k| Self::compute_entry(knot, k, cross_check))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { knot: *knot, entries })
    }

    /// One entry, with the optional chain-sum cross-check.
    pub fn compute_entry(knot: &KnotSpec, k: u32, cross_check: bool) -> Result<CoeffEntry> {
        let h = h_coeff(k, knot)?;
        let mut checks = BTreeSet::from([Check::Integrality]);
        if cross_check {
            let other = h_coeff_multisum(k, knot)?;
            if other != LaurentFraction::from_poly(h.clone()) {
                return Err(Error::IntegralityFailure {
                    k,
                    knot: knot.to_string(),
                    residual: other - LaurentFraction::from_poly(h),
                });
            }
            checks.insert(Check::MultiSum);
        }
        Ok(CoeffEntry { h, checks })
    }

    pub fn from_entries(knot: KnotSpec, entries: Vec<CoeffEntry>) -> Self {
        Self { knot, entries }
    }

    pub fn max_k(&self) -> u32 {
        self.entries.len() as u32 - 1
    }

    pub fn h(&self, k: u32) -> Option<&LaurentPoly> {
        self.entries.get(k as usize).map(|e| &e.h)
    }

    /// `J'_N` from the stored coefficients, for `N <= max_k + 1`.
    pub fn jones(&self, n: u32) -> Result<LaurentPoly> {
        let h: Vec<LaurentPoly> = self.entries.iter().map(|e| e.h.clone()).collect();
        assemble_jones(n, &h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein;

    fn q(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(4 * e)
    }

    /// `𝔮^e` terms.
    fn fq(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (2 * e, c)))
    }

    fn frac(n: LaurentPoly, d: LaurentPoly) -> LaurentFraction {
        LaurentFraction::new(n, d).unwrap()
    }

    fn half(p: i64, s: i64) -> KnotSpec {
        KnotSpec::half(p, s).unwrap()
    }

    #[test]
    fn knot_spec_validation() {
        assert!(KnotSpec::half(0, 1).is_err());
        assert!(KnotSpec::half(1, 2).is_err());
        assert!(KnotSpec::full(1, 0).is_err());
        assert_eq!(half(2, 1).region, Region::HalfTwists { s: 1, m: 1 });
        assert_eq!(half(2, -3).region, Region::HalfTwists { s: -3, m: -1 });
        assert_eq!(half(2, -3).to_string(), "K_{2,-3/2}");
        assert_eq!(KnotSpec::full(1, -2).unwrap().to_string(), "K_{1,-2}");
    }

    #[test]
    fn c_prime_examples() {
        for p in [-3, -2, -1, 1, 2, 3] {
            assert!(c_prime(0, p).unwrap().is_one());
        }
        for k in 0..=10u32 {
            let ki = i64::from(k);
            assert_eq!(c_prime(k, 1).unwrap(), LaurentPoly::signed_monomial(ki, ki * (ki + 3)));
        }
        assert_eq!(c_prime(1, 2).unwrap(), fq(&[(2, -1), (6, -1)]));
        assert_eq!(c_prime(1, -1).unwrap(), fq(&[(-2, 1)]));
    }

    #[test]
    fn c_prime_matches_masbaum() {
        let c = cache();
        for k in 0..=6 {
            for p in [-2, -1, 1, 2] {
                let m = skein::masbaum_c(c, k, p).mul_poly(&c.brace_fact(k));
                assert_eq!(m, c_prime(k, p).unwrap().into());
            }
        }
    }

    #[test]
    fn c_tilde_prime_examples() {
        for s in [1, 3, 5] {
            assert_eq!(c_tilde_prime(0, s).unwrap(), LaurentFraction::one());
        }
        assert_eq!(c_tilde_prime(1, 1).unwrap(), frac(q(1), q(1) - q(0)));
        assert_eq!(c_tilde_prime_scaled(1, 1).unwrap(), fq(&[(1, 1)]));
        assert_eq!(
            c_tilde_prime(1, 3).unwrap(),
            frac(q(1) - q(2) + q(3), q(1) - q(0))
        );
    }

    #[test]
    fn d_kjp_examples() {
        for p in [-3, -2, -1, 1, 2, 3] {
            assert_eq!(d_kjp(0, 0, p).unwrap(), LaurentFraction::one());
        }
        for k in 0..=6u32 {
            let ki = i64::from(k);
            for p in [-1, 2] {
                assert_eq!(d_kjp(k, k, p).unwrap(), fq(&[(-2 * p * ki * (ki + 2), 1)]).into());
            }
        }
        assert_eq!(d_kjp(1, 0, 1).unwrap(), frac(q(-1), q(1) - q(0)));
        assert_eq!(d_kjp(1, 0, -1).unwrap(), frac(q(2), q(0) - q(1)));
        assert!(matches!(d_kjp(0, 1, 1), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn h_coeff_examples() {
        for knot in [half(1, 1), half(-2, 3), KnotSpec::full(2, -1).unwrap()] {
            assert!(h_coeff(0, &knot).unwrap().is_one());
        }
        assert!(h_coeff_half(1, &half(1, 1)).unwrap().is_zero());
        assert_eq!(h_coeff_half(1, &half(2, 1)).unwrap(), fq(&[(-4, -1)]));
        let k11 = KnotSpec::full(1, 1).unwrap();
        assert_eq!(h_coeff_int(1, &k11).unwrap(), fq(&[(4, -1)]));
        for k in 0..=8u32 {
            let ki = i64::from(k);
            assert_eq!(h_coeff_int(k, &k11).unwrap(), LaurentPoly::signed_monomial(ki, 2 * ki * (ki + 3)));
        }
        assert!(matches!(h_coeff_half(1, &k11), Err(Error::InvalidKnot(_))));
    }

    #[test]
    fn jones_examples() {
        let expect = fq(&[(-2, 1), (-6, 1), (-8, -1)]);
        assert_eq!(jones_half(2, &half(2, 1)).unwrap().value, expect);
        assert_eq!(jones_walsh(2, &half(2, 1)).unwrap().value, expect);
        assert!(jones_half(2, &half(1, 1)).unwrap().value.is_one());
        assert!(jones_walsh(2, &half(1, 1)).unwrap().value.is_one());
        let k11 = KnotSpec::full(1, 1).unwrap();
        assert_eq!(jones_int(2, &k11).unwrap().value, fq(&[(2, 1), (6, 1), (8, -1)]));
        for knot in [half(3, -1), half(-1, 5)] {
            assert!(jones_half(1, &knot).unwrap().value.is_one());
            assert!(jones_walsh(1, &knot).unwrap().value.is_one());
        }
        assert!(jones_int(1, &k11).unwrap().value.is_one());
        assert!(jones_half(0, &half(1, 1)).is_err());
    }

    #[test]
    fn jones_int_is_symmetric() {
        for n in 1..=5 {
            for p in [-2, -1, 1, 2] {
                for r in [-2, -1, 1, 2] {
                    let a = jones_int(n, &KnotSpec::full(p, r).unwrap()).unwrap();
                    let b = jones_int(n, &KnotSpec::full(r, p).unwrap()).unwrap();
                    assert_eq!(a.value, b.value);
                }
            }
        }
    }

    #[test]
    fn routes_agree_small_grid() {
        for n in 1..=5 {
            for p in [-2, -1, 1, 2] {
                for s in [-1, 1, 3] {
                    let knot = half(p, s);
                    let a = jones_half(n, &knot).unwrap();
                    let b = jones_walsh(n, &knot).unwrap();
                    assert_eq!(a.value, b.value, "{knot} N={n}");
                    assert_eq!(a.value.eval_at_one(), 1.into());
                }
            }
        }
    }

    #[test]
    fn qform_matches_brace_form() {
        for k in 0..=8 {
            for p in [-3, -1, 1, 3] {
                assert_eq!(c_prime_qform(k, p).unwrap(), c_prime(k, p).unwrap());
            }
        }
        assert_eq!(c_prime_qform(1, 1).unwrap(), LaurentPoly::term(-1, 4));
        for k in 0..=6 {
            for s in [-1, 1, 3] {
                let lhs = LaurentFraction::new(c_tilde_prime_qform_scaled(k, s).unwrap(), cache().q_fact(k)).unwrap();
                assert_eq!(lhs, c_tilde_prime(k, s).unwrap());
            }
        }
    }

    #[test]
    fn skein_bridge() {
        let c = cache();
        for k in 0..=5u32 {
            for j in 0..=k {
                for p in [-2, -1, 1, 2] {
                    let lhs = d_kjp(k, j, p).unwrap().mul_poly(&c.brace_fact(2 * k + 1));
                    let rhs = skein::twist_coeff_d(c, k, j, -4 * p).unwrap() * c.brace_fact(2 * j + 1);
                    assert_eq!(lhs, rhs.into(), "k={k} j={j} p={p}");
                }
            }
        }
    }

    #[test]
    fn multisum_agreement() {
        let c = cache();
        for k in 0..=5u32 {
            for p in [-2, -1, 1, 2] {
                assert_eq!(bailey::multisum_c_prime(c, k, p), c_prime(k, p).unwrap());
                for j in 0..=k {
                    assert_eq!(bailey::multisum_d(c, k, j, p).unwrap(), d_kjp(k, j, p).unwrap());
                }
            }
            for m in 1..=3u32 {
                let s = 2 * i64::from(m) - 1;
                assert_eq!(bailey::multisum_c_tilde(c, k, m).unwrap(), c_tilde_prime(k, s).unwrap());
            }
        }
    }

    #[test]
    fn q_inversion() {
        for k in 0..=4u32 {
            for j in 0..=k {
                for p in [-2, -1, 1, 2] {
                    assert_eq!(d_kjp(k, j, p).unwrap().substitute_power(-1), d_kjp(k, j, -p).unwrap());
                }
            }
        }
    }

    #[test]
    fn coeff_table_with_cross_check() {
        for knot in [half(2, 1), half(-1, 3), KnotSpec::full(2, -3).unwrap()] {
            let t = CoeffTable::build(&knot, 4, true).unwrap();
            assert!(t.h(0).unwrap().is_one());
            assert_eq!(t.max_k(), 4);
            for e in &t.entries {
                assert!(e.h.exponents_divisible_by(2));
                assert!(e.checks.contains(&Check::MultiSum));
            }
            if knot.is_half() {
                assert_eq!(t.jones(5).unwrap(), jones_walsh(5, &knot).unwrap().value);
            }
        }
        assert!(CoeffTable::build(&half(1, -1), 2, true).is_err());
        assert!(CoeffTable::build(&half(1, -1), 2, false).is_ok());
    }
}
