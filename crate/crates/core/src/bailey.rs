//! Bailey pairs, the Bailey chain, and the multi-sum expressions for the
//! coefficients `c'_{k,p}`, `c̃'_{k,s/2}` and `d_{k,j,p}`.
//!
//! A pair `(α, β)` relative to `x = q^{x_exp}` satisfies
//!
//! ```text
//! β_k = Σ_{j=0}^{k} α_j / ((q;q)_{k-j} (xq;q)_{k+j})
//! ```
//!
//! and one chain step maps it to `α'_k = x^k q^{k²} α_k`,
//! `β'_k = Σ_j x^j q^{j²} β_j / (q;q)_{k-j}`. Iterating the step along a
//! pair whose `β` is a single reciprocal Pochhammer symbol produces sums over
//! nonincreasing index chains `k_L >= ... >= k_1 >= 0` in which every
//! summand is a product of Gaussian binomials and monomials; those are the
//! manifestly integral forms computed here.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fraction::LaurentFraction;
use crate::laurent::LaurentPoly;
use crate::qcalc::{self, QSymbolCache};

/// Index-to-value rule backing a [`Sequence`].
pub type Generator = Arc<dyn Fn(u32) -> LaurentFraction + Send + Sync>;

/// Lazily evaluated sequence with memoized terms. Clones share the memo.
#[derive(Clone)]
pub struct Sequence {
    rule: Generator,
    memo: Arc<Mutex<Vec<Option<LaurentFraction>>>>,
}

impl Sequence {
    pub fn new(rule: impl Fn(u32) -> LaurentFraction + Send + Sync + 'static) -> Self {
        Self {
            rule: Arc::new(rule),
            memo: Arc::new(Mutex::new(Vec::new())),
        }
    }

    pub fn get(&self, k: u32) -> LaurentFraction {
        let idx = k as usize;
        if let Some(Some(v)) = self.memo.lock().unwrap().get(idx) {
            return v.clone();
        }
        let v = (self.rule)(k);
        let mut memo = self.memo.lock().unwrap();
        if memo.len() <= idx {
            memo.resize(idx + 1, None);
        }
        memo[idx] = Some(v.clone());
        v
    }
}

/// `q^e` as a Laurent polynomial in `A`.
fn q_pow(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(4 * e)
}

fn frac(num: LaurentPoly, den: LaurentPoly) -> LaurentFraction {
    LaurentFraction::new(num, den).expect("Pochhammer denominators are nonzero")
}

#[derive(Clone)]
pub struct BaileyPair {
    pub alpha: Sequence,
    pub beta: Sequence,
    /// `x = q^{x_exp}`.
    pub x_exp: i64,
    pub label: String,
}

impl fmt::Debug for BaileyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaileyPair({}, x = q^{})", self.label, self.x_exp)
    }
}

impl BaileyPair {
    pub fn new(
        label: impl Into<String>,
        x_exp: i64,
        alpha: impl Fn(u32) -> LaurentFraction + Send + Sync + 'static,
        beta: impl Fn(u32) -> LaurentFraction + Send + Sync + 'static,
    ) -> Self {
        Self {
            alpha: Sequence::new(alpha),
            beta: Sequence::new(beta),
            x_exp,
            label: label.into(),
        }
    }

    /// `α_k = (-1)^k q^{k²+k+k(k-1)/2} (1-q^{2k+1})/(1-q)`, `β_k = 1/(q;q)_k`,
    /// `x = q`. Seeds the chain behind `c'_{k,p}`.
    pub fn twist() -> Self {
        Self::new(
            "twist",
            1,
            |k| {
                let k = i64::from(k);
                let num = LaurentPoly::signed_monomial(k, 4 * (k * k + k + k * (k - 1) / 2))
                    * (q_pow(0) - q_pow(2 * k + 1));
                frac(num, q_pow(0) - q_pow(1))
            },
            |k| frac(LaurentPoly::one(), qcalc::pochhammer(1, k)),
        )
    }

    /// `α_k = q^{k²} (1-q^{2k+1})/(1-q)`, `β_k = 1/(q;q)_k²`, `x = q`. Seeds
    /// the chain behind `c̃'_{k,s/2}`.
    pub fn half_twist() -> Self {
        Self::new(
            "half-twist",
            1,
            |k| {
                let k = i64::from(k);
                let num = q_pow(k * k) * (q_pow(0) - q_pow(2 * k + 1));
                frac(num, q_pow(0) - q_pow(1))
            },
            |k| frac(LaurentPoly::one(), qcalc::pochhammer(1, k).pow(2)),
        )
    }

    /// The pair relative to `x = q^{2j+2}`:
    /// `α_l = (-1)^l x^l q^{l²+l(l-1)/2} (1-xq^{2l})/(1-x) (x;q)_l/(q;q)_l`,
    /// `β_l = 1/(q;q)_l`. Its chain produces `d_{k,j,-p}`.
    pub fn shifted_twist(j: u32) -> Self {
        let x = 2 * i64::from(j) + 2;
        Self::new(
            format!("shifted-twist(j={j})"),
            x,
            move |l| {
                let li = i64::from(l);
                let num = LaurentPoly::signed_monomial(li, 4 * (x * li + li * li + li * (li - 1) / 2))
                    * (q_pow(0) - q_pow(x + 2 * li))
                    * qcalc::pochhammer(x, l);
                let den = (q_pow(0) - q_pow(x)) * qcalc::pochhammer(1, l);
                frac(num, den)
            },
            |l| frac(LaurentPoly::one(), qcalc::pochhammer(1, l)),
        )
    }

    /// `Σ_{j<=k} α_j / ((q;q)_{k-j} (xq;q)_{k+j})`, the right side of the
    /// defining relation.
    pub fn relation_sum(&self, k: u32) -> LaurentFraction {
        relation_sum(&self.alpha, self.x_exp, k)
    }
}

fn relation_sum(alpha: &Sequence, x_exp: i64, k: u32) -> LaurentFraction {
    (0..=k)
        .map(|j| {
            let den = qcalc::pochhammer(1, k - j) * qcalc::pochhammer(x_exp + 1, k + j);
            let a = alpha.get(j);
            frac(a.numer().clone(), a.denom() * &den)
        })
        .sum()
}

/// Outcome of checking the defining relation for `k = 0..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaileyReport {
    pub label: String,
    pub checked: u32,
    pub failures: Vec<u32>,
}

impl BaileyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_bailey_pair(pair: &BaileyPair, max_k: u32) -> BaileyReport {
    let failures = (0..=max_k)
        .filter(|&k| pair.relation_sum(k) != pair.beta.get(k))
        .collect();
    BaileyReport {
        label: pair.label.clone(),
        checked: max_k + 1,
        failures,
    }
}

/// One step along the Bailey chain.
pub fn chain_step(pair: &BaileyPair) -> BaileyPair {
    let x = pair.x_exp;
    let alpha = pair.alpha.clone();
    let beta = pair.beta.clone();
    BaileyPair::new(
        format!("{}'", pair.label),
        x,
        move |k| {
            let k = i64::from(k);
            alpha.get(k as u32).mul_poly(&q_pow(x * k + k * k))
        },
        move |k| {
            (0..=k)
                .map(|j| {
                    let ji = i64::from(j);
                    let b = beta.get(j);
                    frac(
                        b.numer() * &q_pow(x * ji + ji * ji),
                        b.denom() * &qcalc::pochhammer(1, k - j),
                    )
                })
                .sum()
        },
    )
}

/// Both sides of the Bailey lemma for `pair` and its chain successor at
/// index `k`:
/// `Σ_j α'_j/((q;q)_{k-j}(xq;q)_{k+j}) = Σ_j x^j q^{j²}/(q;q)_{k-j} Σ_{i<=j} α_i/((q;q)_{j-i}(xq;q)_{j+i})`.
pub fn bailey_lemma_check(pair: &BaileyPair, k: u32) -> bool {
    let next = chain_step(pair);
    let lhs = next.relation_sum(k);
    let x = pair.x_exp;
    let rhs: LaurentFraction = (0..=k)
        .map(|j| {
            let ji = i64::from(j);
            let inner = pair.relation_sum(j);
            frac(
                inner.numer() * &q_pow(x * ji + ji * ji),
                inner.denom() * &qcalc::pochhammer(1, k - j),
            )
        })
        .sum();
    lhs == rhs
}

/// Nonincreasing index chain `k_L >= k_{L-1} >= ... >= k_1 >= 0`, stored top
/// first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    parts: Vec<u32>,
}

impl Chain {
    /// Parts from the top `k_L` down to `k_1`.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn top(&self) -> u32 {
        self.parts[0]
    }

    /// `k_1`.
    pub fn bottom(&self) -> u32 {
        *self.parts.last().unwrap()
    }

    /// Consecutive `(k_{i+1}, k_i)` for `i = L-1, ..., 1`.
    pub fn steps(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Streams all chains of the given length with fixed top, in lexicographic
/// order of `(k_L, ..., k_1)`.
pub fn enumerate_chains(top: u32, length: usize) -> ChainIter {
    assert!(length >= 1, "chain length must be positive");
    let mut parts = vec![0; length];
    parts[0] = top;
    ChainIter { next: Some(parts) }
}

pub struct ChainIter {
    next: Option<Vec<u32>>,
}

impl Iterator for ChainIter {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let bump = (1..succ.len()).rev().find(|&i| succ[i] < succ[i - 1]);
        if let Some(i) = bump {
            succ[i] += 1;
            for v in &mut succ[i + 1..] {
                *v = 0;
            }
            self.next = Some(succ);
        }
        Some(Chain { parts: cur })
    }
}

/// Number of chains, `C(top + length - 1, length - 1)`.
pub fn chain_count(top: u32, length: usize) -> u128 {
    let n = u128::from(top) + length as u128 - 1;
    let r = length as u128 - 1;
    (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ over chains` of `∏ q^{weight(k_{i+1}, k_i)} [k_{i+1} choose k_i]_q`,
/// each summand scaled by `scale(chain)`.
fn chain_sum(
    cache: &QSymbolCache,
    top: u32,
    length: usize,
    weight: impl Fn(i64, i64) -> i64,
    scale: impl Fn(&Chain) -> LaurentPoly,
) -> LaurentPoly {
    let mut total = LaurentPoly::zero();
    for chain in enumerate_chains(top, length) {
        let mut term = scale(&chain);
        for (upper, lower) in chain.steps() {
            term = term
                * q_pow(weight(i64::from(upper), i64::from(lower)))
                * cache.qbinom(upper, i64::from(lower));
        }
        total += term;
    }
    total
}

/// `c'_{k,p}` as a chain sum:
/// `p > 0`: `(-1)^k q^{k(k+3)/4} Σ ∏ q^{k_i²+k_i} [k_{i+1}, k_i]_q` over chains of length `p`;
/// `p < 0`: `q^{-k(k+3)/4} Σ ∏ q^{-k_i k_{i+1}-k_i} [k_{i+1}, k_i]_q` over chains of length `|p|`.
pub fn multisum_c_prime(cache: &QSymbolCache, k: u32, p: i64) -> LaurentPoly {
    assert!(p != 0, "p must be nonzero");
    let ki = i64::from(k);
    let length = p.unsigned_abs() as usize;
    let one = |_: &Chain| LaurentPoly::one();
    if p > 0 {
        let s = chain_sum(cache, k, length, |_, lo| lo * lo + lo, one);
        s * LaurentPoly::signed_monomial(ki, ki * (ki + 3))
    } else {
        let s = chain_sum(cache, k, length, |up, lo| -lo * up - lo, one);
        s * LaurentPoly::monomial(-ki * (ki + 3))
    }
}

/// `c̃'_{k,(2m-1)/2} = (-1)^k q^{k(k+3)/4} Σ 1/(q;q)_{k_1} ∏ q^{k_i²+k_i} [k_{i+1}, k_i]_q`
/// over chains of length `m >= 1`.
pub fn multisum_c_tilde(cache: &QSymbolCache, k: u32, m: u32) -> Result<LaurentFraction> {
    if m == 0 {
        return Err(Error::IndexOutOfRange("multi-sum for c̃' needs m >= 1".into()));
    }
    let ki = i64::from(k);
    let qk = cache.q_fact(k);
    // Common denominator (q;q)_k: (q;q)_k / (q;q)_{k_1} = (q^{k_1+1}; q)_{k-k_1}.
    let s = chain_sum(cache, k, m as usize, |_, lo| lo * lo + lo, |c| {
        qcalc::pochhammer(i64::from(c.bottom()) + 1, k - c.bottom())
    });
    let num = s * LaurentPoly::signed_monomial(ki, ki * (ki + 3));
    Ok(frac(num, qk))
}

/// `d_{k,j,p}` as a chain sum over chains of length `|p|` with top `k - j`.
///
/// With `x = q^{2j+2}` each chain step carries `x^{k_i} q^{k_i²}`, so the
/// weights are `q^{k_i²+(2j+2)k_i}` for `p < 0` and, after `q -> 1/q`,
/// `q^{-k_i k_{i+1}-(2j+2)k_i}` for `p > 0`:
///
/// * `p > 0`: `(-1)^{k-j} q^{(j+1)(j-k)-pj(j+2)} / (q;q)_{k-j} Σ ∏ q^{-k_i k_{i+1}-(2j+2)k_i} [k_{i+1}, k_i]_q`
/// * `p < 0`: `q^{(k(k+3)-j(j+3))/2+|p|j(j+2)} / (q;q)_{k-j} Σ ∏ q^{k_i²+(2j+2)k_i} [k_{i+1}, k_i]_q`
pub fn multisum_d(cache: &QSymbolCache, k: u32, j: u32, p: i64) -> Result<LaurentFraction> {
    if j > k {
        return Err(Error::IndexOutOfRange(format!(
            "multisum_d needs j <= k, got k = {k}, j = {j}"
        )));
    }
    assert!(p != 0, "p must be nonzero");
    let (ki, ji) = (i64::from(k), i64::from(j));
    let shift = 2 * ji + 2;
    let length = p.unsigned_abs() as usize;
    let one = |_: &Chain| LaurentPoly::one();
    let (prefactor, s) = if p > 0 {
        let s = chain_sum(cache, k - j, length, |up, lo| -lo * up - shift * lo, one);
        let e = (ji + 1) * (ji - ki) - p * ji * (ji + 2);
        (LaurentPoly::signed_monomial(ki - ji, 4 * e), s)
    } else {
        let s = chain_sum(cache, k - j, length, |_, lo| lo * lo + shift * lo, one);
        let e = (ki * (ki + 3) - ji * (ji + 3)) / 2 + (-p) * ji * (ji + 2);
        (q_pow(e), s)
    };
    Ok(frac(prefactor * s, cache.q_fact(k - j)))
}

/// `d_{k,j,p}` read off the Bailey chain of [`BaileyPair::shifted_twist`]:
/// `d_{k,j,-|p|} = q^{(k(k+3)-j(j+3))/2 + |p|j(j+2)} β^{(|p|)}_{k-j}`, where
/// `β^{(|p|)}` is the `β` sequence after `|p|-1` chain steps, and
/// `d_{k,j,p}(q) = d_{k,j,-p}(1/q)`.
///
/// This path goes through the pair relation itself instead of the closed
/// chain sums, and is used to cross-check [`multisum_d`].
pub fn d_via_bailey_chain(k: u32, j: u32, p: i64) -> Result<LaurentFraction> {
    if j > k {
        return Err(Error::IndexOutOfRange(format!(
            "d_via_bailey_chain needs j <= k, got k = {k}, j = {j}"
        )));
    }
    assert!(p != 0, "p must be nonzero");
    let (ki, ji) = (i64::from(k), i64::from(j));
    let steps = p.unsigned_abs() - 1;
    let mut pair = BaileyPair::shifted_twist(j);
    for _ in 0..steps {
        pair = chain_step(&pair);
    }
    let e = (ki * (ki + 3) - ji * (ji + 3)) / 2 + p.abs() * ji * (ji + 2);
    let negative = pair.beta.get(k - j).mul_poly(&q_pow(e));
    Ok(if p < 0 {
        negative
    } else {
        negative.substitute_power(-1)
    })
}
