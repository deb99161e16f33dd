//! Verification suites: exact identity checks across every module, run in
//! parallel and reported in a fixed order.

use std::fmt;

use clap::ValueEnum;
use cyclojones::bailey::{self, BaileyPair};
use cyclojones::cyclotomic::{self, CoeffTable};
use cyclojones::qcalc::{self, QSymbolCache};
use cyclojones::skein::{self, BasisMatrix};
use cyclojones::{eval_unit_root, KnotSpec, LaurentFraction, LaurentPoly};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::format::{poly_from_json, poly_to_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Laurent,
    Qcalc,
    Skein,
    Bailey,
    Cross,
    Integrality,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

/// Parameter ranges for the suites. `max_k = None` lets each suite use its
/// own default bound.
#[derive(Clone, Debug)]
pub struct Grid {
    pub max_k: Option<u32>,
    pub max_n: u32,
    pub p_values: Vec<i64>,
    pub m_values: Vec<i64>,
    pub seed: u64,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            max_k: None,
            max_n: 8,
            p_values: vec![-3, -2, -1, 1, 2, 3],
            m_values: vec![1, 2, 3],
            seed: 0x5eed,
        }
    }
}

impl Grid {
    fn k_or(&self, default: u32) -> u32 {
        self.max_k.unwrap_or(default)
    }

    fn k_capped(&self, cap: u32) -> u32 {
        self.max_k.map_or(cap, |k| k.min(cap))
    }

    fn s_values(&self) -> impl Iterator<Item = i64> + '_ {
        self.m_values.iter().map(|m| 2 * m - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub params: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {} [{}]", c.id, c.params));
            if let Some(d) = &c.diagnostic {
                out.push_str(&format!(": {d}"));
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "suite {}: {} checks, {} failed\n",
            self.suite,
            self.checks.len(),
            failed
        ));
        out
    }
}

type CheckFn = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

struct Job {
    id: &'static str,
    params: String,
    run: CheckFn,
}

fn job(id: &'static str, params: String, run: impl Fn() -> Result<(), String> + Send + Sync + 'static) -> Job {
    Job { id, params, run: Box::new(run) }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: cyclojones::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run_suite(suite: Suite, grid: &Grid) -> VerificationReport {
    let mut jobs = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Laurent {
        laurent_jobs(grid, &mut jobs);
    }
    if all || suite == Suite::Qcalc {
        qcalc_jobs(&mut jobs);
    }
    if all || suite == Suite::Skein {
        skein_jobs(grid, &mut jobs);
    }
    if all || suite == Suite::Bailey {
        bailey_jobs(grid, &mut jobs);
    }
    if all || suite == Suite::Cross {
        cross_jobs(grid, &mut jobs);
    }
    if all || suite == Suite::Integrality {
        integrality_jobs(grid, &mut jobs);
    }
    let checks: Vec<CheckOutcome> = jobs
        .par_iter()
        .map(|j| {
            let result = (j.run)();
            CheckOutcome {
                id: j.id.to_string(),
                params: j.params.clone(),
                passed: result.is_ok(),
                diagnostic: result.err(),
            }
        })
        .collect();
    VerificationReport {
        suite: suite.to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

pub fn random_poly(rng: &mut StdRng) -> LaurentPoly {
    let n = rng.gen_range(0..10);
    let terms: Vec<(i64, BigInt)> = (0..n)
        .map(|_| {
            let e = rng.gen_range(-40..=40);
            let mut c = BigInt::from(rng.gen_range(-1000i64..=1000));
            if rng.gen_bool(0.2) {
                c *= BigInt::from(rng.gen::<u64>()) * BigInt::from(rng.gen::<u64>());
            }
            (e, c)
        })
        .collect();
    LaurentPoly::from_terms(terms)
}

fn laurent_jobs(grid: &Grid, jobs: &mut Vec<Job>) {
    let seed = grid.seed;
    jobs.push(job("laurent.ring-axioms", format!("seed={seed} cases=200"), move || {
        let mut rng = StdRng::seed_from_u64(seed);
        for case in 0..200 {
            let (a, b, c) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
            let ok = &a + &b == &b + &a
                && &a * &b == &b * &a
                && &(&a * &b) * &c == &a * &(&b * &c)
                && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                && (&a + &(-&a)).is_zero();
            ensure(ok, || format!("case {case}: a = {a}, b = {b}, c = {c}"))?;
        }
        Ok(())
    }));
    jobs.push(job("laurent.exact-div", format!("seed={} cases=200", seed + 1), move || {
        let mut rng = StdRng::seed_from_u64(seed + 1);
        for case in 0..200 {
            let (a, b) = (random_poly(&mut rng), random_poly(&mut rng));
            if b.is_zero() {
                continue;
            }
            let q = core((&a * &b).exact_div(&b))?;
            ensure(q == a, || format!("case {case}: ({a})({b}) / ({b}) = {q}"))?;
        }
        Ok(())
    }));
    jobs.push(job("laurent.involution", format!("seed={} cases=200", seed + 2), move || {
        let mut rng = StdRng::seed_from_u64(seed + 2);
        for case in 0..200 {
            let a = random_poly(&mut rng);
            ensure(a.substitute_power(-1).substitute_power(-1) == a, || format!("case {case}: {a}"))?;
        }
        Ok(())
    }));
    jobs.push(job("laurent.eval-homomorphism", format!("seed={} cases=50", seed + 3), move || {
        let mut rng = StdRng::seed_from_u64(seed + 3);
        for case in 0..50 {
            let (a, b) = (random_poly(&mut rng), random_poly(&mut rng));
            let (k, n) = (rng.gen_range(-8i64..=8), rng.gen_range(1u64..=32));
            let lhs = eval_unit_root(&a, k, n).mul(&eval_unit_root(&b, k, n));
            let rhs = eval_unit_root(&(&a * &b), k, n);
            let mass = |f: &LaurentPoly| -> BigInt { f.terms().map(|(_, c)| BigInt::from(c.magnitude().clone())).sum() };
            let scale = (mass(&a) + 1) * (mass(&b) + 1);
            ensure(lhs.close_to_scaled(&rhs, 60, &scale), || format!("case {case}: k={k} n={n}"))?;
        }
        Ok(())
    }));
    jobs.push(job("laurent.json-roundtrip", format!("seed={} cases=1000", seed + 4), move || {
        let mut rng = StdRng::seed_from_u64(seed + 4);
        for case in 0..1000 {
            let a = random_poly(&mut rng);
            let text = poly_to_json(&a);
            let back = poly_from_json(&text).map_err(|e| e.to_string())?;
            ensure(back == a && poly_to_json(&back) == text, || format!("case {case}: {text}"))?;
        }
        Ok(())
    }));
}

fn qcalc_jobs(jobs: &mut Vec<Job>) {
    for a in 0..=20u32 {
        jobs.push(job("qcalc.delta-squared", format!("a={a} b,c<=20"), move || {
            for b in 0..=20u32 {
                for c in 0..=20u32 {
                    if !qcalc::admissible(a, b, c) {
                        continue;
                    }
                    let d = core(qcalc::half_twist_delta(c, a, b))?;
                    let rhs = core(qcalc::framing_mu(c).exact_div(&(qcalc::framing_mu(a) * qcalc::framing_mu(b))))?;
                    ensure(&d * &d == rhs, || format!("c={c} b={b}: δ = {d}"))?;
                }
            }
            Ok(())
        }));
    }
    for n in 0..=16u32 {
        jobs.push(job("qcalc.balanced-gaussian", format!("n={n}"), move || {
            for i in 0..=i64::from(n) {
                let lhs = qcalc::qbinom_balanced(n, i);
                let rhs = LaurentPoly::monomial(-2 * i * (i64::from(n) - i)) * qcalc::qbinom(n, i);
                ensure(lhs == rhs, || format!("i={i}: {lhs} vs {rhs}"))?;
            }
            Ok(())
        }));
    }
    for n in 1..=8u32 {
        jobs.push(job("qcalc.block-pochhammer", format!("N={n}"), move || {
            let ni = i64::from(n);
            for k in 0..n {
                let ki = i64::from(k);
                let lhs = core(qcalc::cyclo_block(n, k))?;
                let rhs = LaurentPoly::signed_monomial(ki, -2 * ki * (ki + 1))
                    * qcalc::pochhammer(1 - ni, k)
                    * qcalc::pochhammer(1 + ni, k);
                ensure(lhs == rhs, || format!("k={k}"))?;
            }
            Ok(())
        }));
    }
}

fn skein_jobs(grid: &Grid, jobs: &mut Vec<Job>) {
    let kmax = grid.k_or(12);
    jobs.push(job("skein.t-s-inverse", format!("k<={kmax}"), move || {
        let cache = QSymbolCache::default();
        let t = BasisMatrix::t_matrix(&cache, kmax);
        let s = BasisMatrix::s_matrix(kmax);
        ensure(t.is_unit_lower_triangular() && s.is_unit_lower_triangular(), || "not unitriangular".into())?;
        ensure(t.compose(&s).is_identity() && s.compose(&t).is_identity(), || "t s != I".into())
    }));
    for k in 0..=kmax {
        jobs.push(job("skein.basis-expansion", format!("k={k}"), move || {
            let cache = QSymbolCache::default();
            let coords = skein::r_basis(k).expand_in_basis(|n| skein::chebyshev_e(n as u32));
            for i in 0..=k {
                ensure(coords[i as usize] == core(skein::t_coeff(&cache, k, i))?, || format!("t({k},{i})"))?;
            }
            Ok(())
        }));
        jobs.push(job("skein.pairing", format!("k={k}"), move || {
            for i in 0..k {
                let v = skein::pairing_r_e(k, i);
                ensure(v.is_zero(), || format!("<R_{k}, e_{}> = {v}", 2 * i))?;
            }
            let diag = core(qcalc::brace_fact(2 * k + 1).exact_div(&qcalc::brace(1)))?;
            let diag = if k % 2 == 0 { diag } else { -diag };
            let v = skein::pairing_r_e(k, k);
            ensure(v == diag, || format!("diagonal {v}"))
        }));
    }
}

fn bailey_jobs(grid: &Grid, jobs: &mut Vec<Job>) {
    let kmax = grid.k_or(12);
    let chain_k = grid.k_capped(10);
    let lemma_k = grid.k_capped(8);
    type Maker = fn() -> BaileyPair;
    let pairs: [(&str, Maker); 2] = [("twist", BaileyPair::twist), ("half-twist", BaileyPair::half_twist)];
    for (name, make) in pairs {
        jobs.push(job("bailey.pair", format!("{name} K={kmax}"), move || {
            let r = bailey::verify_bailey_pair(&make(), kmax);
            ensure(r.passed(), || format!("fails at {:?}", r.failures))
        }));
        for steps in 1..=3u32 {
            jobs.push(job("bailey.chain-step", format!("{name} steps={steps} K={chain_k}"), move || {
                let mut pair = make();
                for _ in 0..steps {
                    pair = bailey::chain_step(&pair);
                }
                let r = bailey::verify_bailey_pair(&pair, chain_k);
                ensure(r.passed(), || format!("fails at {:?}", r.failures))
            }));
        }
        for steps in 0..=2u32 {
            jobs.push(job("bailey.lemma", format!("{name} steps={steps} k<={lemma_k}"), move || {
                let mut pair = make();
                for _ in 0..steps {
                    pair = bailey::chain_step(&pair);
                }
                for k in 0..=lemma_k {
                    ensure(bailey::bailey_lemma_check(&pair, k), || format!("k={k}"))?;
                }
                Ok(())
            }));
        }
    }
    let shifted_k = grid.k_capped(6);
    for j in 0..=2u32 {
        jobs.push(job("bailey.shifted-pair", format!("j={j} K={shifted_k}"), move || {
            let r = bailey::verify_bailey_pair(&BaileyPair::shifted_twist(j), shifted_k);
            ensure(r.passed(), || format!("fails at {:?}", r.failures))
        }));
    }
    jobs.push(job("bailey.chain-count", "top<=8 length<=5".into(), || {
        for top in 0..=8 {
            for len in 1..=5 {
                let n = bailey::enumerate_chains(top, len).count() as u128;
                ensure(n == bailey::chain_count(top, len), || format!("top={top} length={len}: {n}"))?;
            }
        }
        Ok(())
    }));
}

fn cross_jobs(grid: &Grid, jobs: &mut Vec<Job>) {
    let kmax = grid.k_or(10);
    for &p in &grid.p_values {
        for k in 0..=kmax {
            jobs.push(job("cross.c-prime", format!("k={k} p={p}"), move || {
                let cache = QSymbolCache::default();
                let single = core(cyclotomic::c_prime(k, p))?;
                let multi = bailey::multisum_c_prime(&cache, k, p);
                ensure(multi == single, || format!("multi-sum {multi} vs {single}"))?;
                let qform = core(cyclotomic::c_prime_qform(k, p))?;
                ensure(qform == single, || format!("(q;q) form {qform} vs {single}"))?;
                let m = skein::masbaum_c(&cache, k, p).mul_poly(&cache.brace_fact(k));
                ensure(m == single.clone().into(), || format!("skein {m} vs {single}"))
            }));
            jobs.push(job("cross.d", format!("k={k} p={p} j<=k"), move || {
                let cache = QSymbolCache::default();
                for j in 0..=k {
                    let single = core(cyclotomic::d_kjp(k, j, p))?;
                    let multi = core(bailey::multisum_d(&cache, k, j, p))?;
                    ensure(multi == single, || format!("j={j}: multi-sum {multi} vs {single}"))?;
                }
                Ok(())
            }));
        }
    }
    let chain_k = grid.k_capped(6);
    for &p in grid.p_values.iter().filter(|p| p.abs() <= 2) {
        for k in 0..=chain_k {
            jobs.push(job("cross.d-chain", format!("k={k} p={p} j<=k"), move || {
                for j in 0..=k {
                    let single = core(cyclotomic::d_kjp(k, j, p))?;
                    let chain = core(bailey::d_via_bailey_chain(k, j, p))?;
                    ensure(chain == single, || format!("j={j}: chain {chain} vs {single}"))?;
                }
                Ok(())
            }));
        }
    }
    for &m in &grid.m_values {
        for k in 0..=kmax {
            jobs.push(job("cross.c-tilde", format!("k={k} m={m}"), move || {
                if m < 1 {
                    return Err(format!("chain sums need m >= 1, got {m}"));
                }
                let cache = QSymbolCache::default();
                let single = core(cyclotomic::c_tilde_prime(k, 2 * m - 1))?;
                let multi = core(bailey::multisum_c_tilde(&cache, k, m as u32))?;
                ensure(multi == single, || format!("multi-sum {multi} vs {single}"))?;
                let qform = LaurentFraction::new(
                    core(cyclotomic::c_tilde_prime_qform_scaled(k, 2 * m - 1))?,
                    cache.q_fact(k),
                )
                .map_err(|e| e.to_string())?;
                ensure(qform == single, || format!("(q;q) form {qform} vs {single}"))
            }));
        }
    }
    let max_n = grid.max_n;
    for &p in &grid.p_values {
        for s in grid.s_values() {
            jobs.push(job("cross.walsh", format!("p={p} s={s} N<={max_n}"), move || {
                let knot = KnotSpec::half(p, s).map_err(|e| e.to_string())?;
                let table = core(CoeffTable::build(&knot, max_n.saturating_sub(1), false))?;
                for n in 1..=max_n {
                    let theorem = core(table.jones(n))?;
                    let walsh = core(cyclotomic::jones_walsh(n, &knot))?.value;
                    ensure(theorem == walsh, || format!("N={n}: {theorem} vs {walsh}"))?;
                    ensure(theorem.eval_at_one() == BigInt::from(1), || format!("N={n}: J'_N(1) != 1"))?;
                }
                Ok(())
            }));
        }
    }
    let bridge_k = grid.k_capped(8);
    for &p in &grid.p_values {
        for k in 0..=bridge_k {
            jobs.push(job("cross.skein-bridge", format!("k={k} p={p} j<=k"), move || {
                let cache = QSymbolCache::default();
                for j in 0..=k {
                    let lhs = core(cyclotomic::d_kjp(k, j, p))?.mul_poly(&cache.brace_fact(2 * k + 1));
                    let rhs = core(skein::twist_coeff_d(&cache, k, j, -4 * p))? * cache.brace_fact(2 * j + 1);
                    ensure(lhs == rhs.clone().into(), || format!("j={j}: {lhs} vs {rhs}"))?;
                }
                Ok(())
            }));
        }
    }
    let inv_k = grid.k_capped(6);
    for &p in grid.p_values.iter().filter(|p| p.abs() <= 2) {
        jobs.push(job("cross.q-inversion", format!("p={p} k<={inv_k}"), move || {
            for k in 0..=inv_k {
                for j in 0..=k {
                    let lhs = core(cyclotomic::d_kjp(k, j, p))?.substitute_power(-1);
                    let rhs = core(cyclotomic::d_kjp(k, j, -p))?;
                    ensure(lhs == rhs, || format!("k={k} j={j}"))?;
                }
            }
            Ok(())
        }));
    }
}

fn integrality_jobs(grid: &Grid, jobs: &mut Vec<Job>) {
    let kmax = grid.k_or(10);
    let mut knots = Vec::new();
    for &p in &grid.p_values {
        for s in grid.s_values() {
            knots.push((p, Some(s), None));
        }
    }
    for &p in &grid.p_values {
        for &r in &grid.p_values {
            if r >= p {
                knots.push((p, None, Some(r)));
            }
        }
    }
    for (p, s, r) in knots {
        for k in 0..=kmax {
            let params = match (s, r) {
                (Some(s), _) => format!("p={p} s={s} k={k}"),
                (_, Some(r)) => format!("p={p} r={r} k={k}"),
                _ => unreachable!(),
            };
            jobs.push(job("integrality.h", params, move || {
                let knot = match (s, r) {
                    (Some(s), _) => KnotSpec::half(p, s),
                    (_, Some(r)) => KnotSpec::full(p, r),
                    _ => unreachable!(),
                }
                .map_err(|e| e.to_string())?;
                let h = core(cyclotomic::h_coeff(k, &knot))?;
                ensure(h.exponents_divisible_by(2), || format!("odd A-exponent in {h}"))?;
                ensure(k > 0 || h.is_one(), || format!("H_0 = {h}"))
            }));
        }
    }
}
