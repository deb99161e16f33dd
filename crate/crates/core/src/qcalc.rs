//! Quantum integers and the combinatorial symbols built from them.
//!
//! Conventions, all as Laurent polynomials in `A` (`𝔮 = A^2`, `q = A^4`):
//!
//! * `{n} = 𝔮^n - 𝔮^-n`, `[n] = {n}/{1}`, and their factorials;
//! * `(q^a; q)_k = (1 - q^a)(1 - q^{a+1})...(1 - q^{a+k-1})`, so `(x; q)_0 = 1`;
//! * the Gaussian binomial `(q;q)_n / ((q;q)_i (q;q)_{n-i})`.

use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// `{n} = A^{2n} - A^{-2n}`.
pub fn brace(n: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(2 * n, 1), (-2 * n, -1)])
}

/// `[n] = A^{2(n-1)} + A^{2(n-3)} + ... + A^{-2(n-1)}`, odd in `n`.
pub fn bracket(n: i64) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let m = n.abs();
    let sign = n.signum();
    LaurentPoly::from_terms((0..m).map(|t| (2 * (m - 1 - 2 * t), sign)))
}

/// `{n}! = {n}{n-1}...{1}`.
pub fn brace_fact(n: u32) -> LaurentPoly {
    brace_range(1, n)
}

/// `[n]! = [n][n-1]...[1]`.
pub fn bracket_fact(n: u32) -> LaurentPoly {
    (1..=i64::from(n)).map(bracket).product()
}

/// `{lo}{lo+1}...{hi}`, empty (= 1) when `lo > hi`.
pub fn brace_range(lo: u32, hi: u32) -> LaurentPoly {
    (lo..=hi).map(|t| brace(i64::from(t))).product()
}

/// Balanced binomial `[n]! / ([i]! [n-i]!)`, zero outside `0 <= i <= n`.
pub fn qbinom_balanced(n: u32, i: i64) -> LaurentPoly {
    if i < 0 || i > i64::from(n) {
        return LaurentPoly::zero();
    }
    let i = i as u32;
    let den = bracket_fact(i) * bracket_fact(n - i);
    bracket_fact(n)
        .exact_div(&den)
        .expect("balanced binomial is a Laurent polynomial")
}

/// `(q^a; q)_k`.
pub fn pochhammer(a: i64, k: u32) -> LaurentPoly {
    (0..i64::from(k))
        .map(|j| LaurentPoly::from_terms([(0, 1), (4 * (a + j), -1)]))
        .product()
}

/// Gaussian binomial in `q`, zero outside `0 <= i <= n`.
pub fn qbinom(n: u32, i: i64) -> LaurentPoly {
    if i < 0 || i > i64::from(n) {
        return LaurentPoly::zero();
    }
    let i = i as u32;
    let den = pochhammer(1, i) * pochhammer(1, n - i);
    pochhammer(1, n)
        .exact_div(&den)
        .expect("Gaussian binomial is a polynomial")
}

/// `{N+k}! / ({N-1-k}! {N})`, the block multiplying `H_k` in the cyclotomic
/// expansion. Computed as the product `{t}` over `N-k <= t <= N+k`, `t != N`.
pub fn cyclo_block(n: u32, k: u32) -> Result<LaurentPoly> {
    if k >= n {
        return Err(Error::IndexOutOfRange(format!(
            "cyclotomic block needs k < N, got N = {n}, k = {k}"
        )));
    }
    Ok(brace_range(n - k, n - 1) * brace_range(n + 1, n + k))
}

/// Framing factor `μ_i = (-1)^i A^{i^2 + 2i}`.
pub fn framing_mu(i: u32) -> LaurentPoly {
    let i = i64::from(i);
    LaurentPoly::signed_monomial(i, i * i + 2 * i)
}

/// `μ_i^p` for any integer `p`.
pub fn framing_mu_pow(i: u32, p: i64) -> LaurentPoly {
    let i = i64::from(i);
    LaurentPoly::signed_monomial(i * p, p * (i * i + 2 * i))
}

/// Whether `(a, b, c)` is an admissible color triple.
pub fn admissible(a: u32, b: u32, c: u32) -> bool {
    (a + b + c).is_multiple_of(2) && a.abs_diff(b) <= c && c <= a + b
}

/// Half-twist eigenvalue `δ(c; a, b) = (-1)^{(a+b-c)/2} A^{-a-b+c-(a²+b²-c²)/2}`.
pub fn half_twist_delta(c: u32, a: u32, b: u32) -> Result<LaurentPoly> {
    if !admissible(a, b, c) {
        return Err(Error::NotAdmissible { c, a, b });
    }
    let (a, b, c) = (i64::from(a), i64::from(b), i64::from(c));
    // a+b+c even makes a²+b²-c² even as well.
    let e = -a - b + c - (a * a + b * b - c * c) / 2;
    Ok(LaurentPoly::signed_monomial((a + b - c) / 2, e))
}

/// Memo tables for the factorial-like symbols.
///
/// Each instance owns its tables; entries up to `max_index` are stored,
/// larger requests are computed on the fly. Lookups and fills go through a
/// lock, so one cache can be shared by parallel workers.
pub struct QSymbolCache {
    max_index: u32,
    brace_fact: RwLock<Vec<LaurentPoly>>,
    bracket_fact: RwLock<Vec<LaurentPoly>>,
    q_fact: RwLock<Vec<LaurentPoly>>,
    gaussian: RwLock<Vec<Vec<LaurentPoly>>>,
}

impl Default for QSymbolCache {
    fn default() -> Self {
        Self::new(64)
    }
}

impl QSymbolCache {
    pub fn new(max_index: u32) -> Self {
        Self {
            max_index,
            brace_fact: RwLock::new(vec![LaurentPoly::one()]),
            bracket_fact: RwLock::new(vec![LaurentPoly::one()]),
            q_fact: RwLock::new(vec![LaurentPoly::one()]),
            gaussian: RwLock::new(Vec::new()),
        }
    }

    pub fn max_index(&self) -> u32 {
        self.max_index
    }

    fn prefix_product(
        &self,
        table: &RwLock<Vec<LaurentPoly>>,
        n: u32,
        factor: impl Fn(u32) -> LaurentPoly,
        direct: impl Fn(u32) -> LaurentPoly,
    ) -> LaurentPoly {
        if n > self.max_index {
            return direct(n);
        }
        if let Some(v) = table.read().unwrap().get(n as usize) {
            return v.clone();
        }
        let mut t = table.write().unwrap();
        while t.len() <= n as usize {
            let next = t.len() as u32;
            let v = t.last().unwrap() * &factor(next);
            t.push(v);
        }
        t[n as usize].clone()
    }

    pub fn brace_fact(&self, n: u32) -> LaurentPoly {
        self.prefix_product(&self.brace_fact, n, |t| brace(i64::from(t)), brace_fact)
    }

    pub fn bracket_fact(&self, n: u32) -> LaurentPoly {
        self.prefix_product(&self.bracket_fact, n, |t| bracket(i64::from(t)), bracket_fact)
    }

    /// `(q;q)_n`.
    pub fn q_fact(&self, n: u32) -> LaurentPoly {
        self.prefix_product(
            &self.q_fact,
            n,
            |t| LaurentPoly::from_terms([(0, 1), (4 * i64::from(t), -1)]),
            |n| pochhammer(1, n),
        )
    }

    /// Gaussian binomial, memoized by row.
    pub fn qbinom(&self, n: u32, i: i64) -> LaurentPoly {
        if i < 0 || i > i64::from(n) {
            return LaurentPoly::zero();
        }
        if n > self.max_index {
            return qbinom(n, i);
        }
        if let Some(row) = self.gaussian.read().unwrap().get(n as usize) {
            return row[i as usize].clone();
        }
        let mut rows = self.gaussian.write().unwrap();
        while rows.len() <= n as usize {
            let m = rows.len() as u32;
            // Pascal: [m, i] = [m-1, i-1] + q^i [m-1, i]
            let row: Vec<LaurentPoly> = (0..=m)
                .map(|i| {
                    if i == 0 || i == m {
                        return LaurentPoly::one();
                    }
                    let prev = &rows[m as usize - 1];
                    &prev[i as usize - 1] + &prev[i as usize].shift(4 * i64::from(i))
                })
                .collect();
            rows.push(row);
        }
        rows[n as usize][i as usize].clone()
    }
}
