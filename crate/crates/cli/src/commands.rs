//! The four subcommands. Each returns the bytes for stdout plus an exit
//! status; timing and other run-dependent notes go to stderr only.

use std::collections::BTreeSet;
use std::time::Instant;

use cyclojones::cyclotomic::{self, Check, CoeffEntry, CoeffTable};
use cyclojones::numeric::eval_unit_root;
use cyclojones::{KnotSpec, LaurentPoly, Region};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::args::{Cli, CoeffsArgs, Command, EvalArgs, JonesArgs, RouteArg, VerifyArgs};
use crate::cache::{check_name, CoeffCache};
use crate::error::CliError;
use crate::format::{poly_table, Format, PolyJson};
use crate::verify::{run_suite, Grid};

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, ..Self::default() }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let jobs = match &cli.command {
        Command::Coeffs(a) => a.jobs,
        Command::Jones(a) => a.jobs,
        Command::Verify(a) => a.jobs,
        Command::Eval(a) => a.jobs,
    };
    with_jobs(jobs, || match cli.command {
        Command::Coeffs(a) => cmd_coeffs(&a),
        Command::Jones(a) => cmd_jones(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Eval(a) => cmd_eval(&a),
    })?
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--jobs must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn knot_json(knot: &KnotSpec) -> serde_json::Value {
    match knot.region {
        Region::FullTwists(r) => json!({"name": knot.to_string(), "p": knot.p, "r": r}),
        Region::HalfTwists { s, .. } => json!({"name": knot.to_string(), "p": knot.p, "s": s}),
    }
}

fn to_json_line(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("plain data serializes");
    s.push('\n');
    s
}

/// `H_0..=H_max_k`, reading and refreshing the cache when one is configured.
pub fn coeff_table(
    knot: &KnotSpec,
    max_k: u32,
    cross_check: bool,
    cache: Option<&CoeffCache>,
    cache_check: f64,
) -> Result<CoeffTable, CliError> {
    let mut wanted = BTreeSet::from([Check::Integrality]);
    if cross_check {
        wanted.insert(Check::MultiSum);
    }
    let cached: Vec<Option<CoeffEntry>> = (0..=max_k)
        .map(|k| {
            cache
                .and_then(|c| c.load(knot, k))
                .filter(|e| e.checks.is_superset(&wanted))
        })
        .collect();
    let missing: Vec<u32> = (0..=max_k).filter(|&k| cached[k as usize].is_none()).collect();
    // Recompute every stride-th cache hit.
    let stride = if cache_check > 0.0 { (1.0 / cache_check.min(1.0)).ceil() as usize } else { usize::MAX };
    let hits: Vec<u32> = (0..=max_k).filter(|&k| cached[k as usize].is_some()).collect();
    let spot: Vec<u32> = hits.iter().copied().step_by(stride.max(1)).collect();

    let fresh: Vec<(u32, CoeffEntry)> = missing
        .par_iter()
        .map(|&k| Ok((k, CoeffTable::compute_entry(knot, k, cross_check)?)))
        .collect::<Result<_, cyclojones::Error>>()?;
    let spot_failures: Vec<u32> = spot
        .par_iter()
        .map(|&k| Ok((k, cyclotomic::h_coeff(k, knot)?)))
        .collect::<Result<Vec<_>, cyclojones::Error>>()?
        .into_iter()
        .filter(|(k, h)| &cached[*k as usize].as_ref().unwrap().h != h)
        .map(|(k, _)| k)
        .collect();
    if !spot_failures.is_empty() {
        return Err(CliError::Failed(format!(
            "cached H_k for {knot} differs from recomputation at k = {spot_failures:?}"
        )));
    }

    let mut entries = cached;
    for (k, e) in fresh {
        if let Some(c) = cache {
            c.store(knot, k, &e)?;
        }
        entries[k as usize] = Some(e);
    }
    let entries = entries
        .into_iter()
        .map(|e| {
            let mut e = e.expect("every k filled");
            e.checks.retain(|c| wanted.contains(c));
            e
        })
        .collect();
    Ok(CoeffTable::from_entries(*knot, entries))
}

fn cmd_coeffs(a: &CoeffsArgs) -> Result<Outcome, CliError> {
    let knot = a.knot.knot()?;
    if !(0.0..=1.0).contains(&a.cache_check) {
        return Err(CliError::Usage("--cache-check must lie in [0, 1]".into()));
    }
    let cache = a.cache_dir.as_ref().map(CoeffCache::new);
    let table = coeff_table(&knot, a.max_k, a.cross_check, cache.as_ref(), a.cache_check)?;
    let stdout = match a.output.format {
        Format::Json => {
            let entries: Vec<_> = table
                .entries
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    json!({
                        "k": k,
                        "H": PolyJson::from(&e.h),
                        "checks": e.checks.iter().map(|&c| check_name(c)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            to_json_line(&json!({"knot": knot_json(&knot), "max_k": a.max_k, "entries": entries}))
        }
        Format::Text => {
            let rows = rows(&table, |k| format!("H_{k}"));
            poly_table(Format::Text, ("k", "H_k"), &rows, a.output.display)?
        }
        f => poly_table(f, ("k", "H_k"), &rows(&table, |k| k.to_string()), a.output.display)?,
    };
    Ok(Outcome::ok(stdout))
}

fn rows(table: &CoeffTable, label: impl Fn(usize) -> String) -> Vec<(String, LaurentPoly)> {
    table.entries.iter().enumerate().map(|(k, e)| (label(k), e.h.clone())).collect()
}

fn cmd_jones(a: &JonesArgs) -> Result<Outcome, CliError> {
    let knot = a.knot.knot()?;
    if a.n == 0 {
        return Err(CliError::Usage("--N must be at least 1".into()));
    }
    let mut results = Vec::new();
    if knot.is_half() {
        if matches!(a.route, RouteArg::Theorem | RouteArg::Both) {
            results.push(cyclotomic::jones_half(a.n, &knot)?);
        }
        if matches!(a.route, RouteArg::Walsh | RouteArg::Both) {
            results.push(cyclotomic::jones_walsh(a.n, &knot)?);
        }
    } else {
        if a.route != RouteArg::Theorem {
            return Err(CliError::Usage(format!("{knot} only has the theorem route")));
        }
        results.push(cyclotomic::jones_int(a.n, &knot)?);
    }
    let agree = results.windows(2).all(|w| w[0].value == w[1].value);
    let stdout = match a.output.format {
        Format::Json => {
            let rs: Vec<_> = results
                .iter()
                .map(|r| json!({"route": r.route.to_string(), "value": PolyJson::from(&r.value)}))
                .collect();
            to_json_line(&json!({"knot": knot_json(&knot), "N": a.n, "results": rs}))
        }
        Format::Text if results.len() == 1 => {
            format!("{}\n", cyclojones::render(&results[0].value, a.output.display)?)
        }
        f => {
            let rows: Vec<_> = results.iter().map(|r| (r.route.to_string(), r.value.clone())).collect();
            let text = poly_table(f, ("route", "J'_N"), &rows, a.output.display)?;
            if f == Format::Text {
                text.replace(" = ", ": ")
            } else {
                text
            }
        }
    };
    let mut out = Outcome::ok(stdout);
    if !agree {
        out.code = 1;
        out.stderr = format!("routes disagree for {knot} at N = {}\n", a.n);
    }
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let p_values: Vec<i64> = (a.p_range.lo..=a.p_range.hi).filter(|&p| p != 0).collect();
    let m_values: Vec<i64> = (a.m_range.lo..=a.m_range.hi).collect();
    if p_values.is_empty() || m_values.is_empty() {
        return Err(CliError::Usage("parameter grids must be nonempty".into()));
    }
    let grid = Grid {
        max_k: a.max_k,
        max_n: a.max_n,
        p_values,
        m_values,
        ..Grid::default()
    };
    let start = Instant::now();
    let report = run_suite(a.suite, &grid);
    let elapsed = start.elapsed();
    let stdout = match a.format {
        Format::Json => to_json_line(&report),
        Format::Text => report.to_text(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let fmt_err = |e: csv::Error| CliError::Format(e.to_string());
            w.write_record(["id", "params", "passed", "diagnostic"]).map_err(fmt_err)?;
            for c in &report.checks {
                let passed = c.passed.to_string();
                let diag = c.diagnostic.as_deref().unwrap_or("");
                w.write_record([c.id.as_str(), c.params.as_str(), passed.as_str(), diag])
                    .map_err(fmt_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Format(e.to_string()))?)
                .expect("csv output is utf-8")
        }
        Format::Latex => return Err(CliError::Usage("verify has no LaTeX output".into())),
    };
    Ok(Outcome {
        stdout,
        stderr: format!(
            "verify {}: {} checks in {:.2} s\n",
            report.suite,
            report.checks.len(),
            elapsed.as_secs_f64()
        ),
        code: if report.passed { 0 } else { 1 },
    })
}

/// `J'_1..=J'_N` of either family from one coefficient table.
pub fn jones_series(knot: &KnotSpec, max_n: u32) -> Result<Vec<LaurentPoly>, CliError> {
    let table = CoeffTable::build(knot, max_n.saturating_sub(1), false)?;
    (1..=max_n).map(|n| Ok(table.jones(n)?)).collect()
}

fn cmd_eval(a: &EvalArgs) -> Result<Outcome, CliError> {
    let knot = a.knot.knot()?;
    if a.n == 0 || a.root_n == 0 {
        return Err(CliError::Usage("--N and --root-n must be positive".into()));
    }
    let values = jones_series(&knot, a.n)?;
    let rows: Vec<(u32, String, String)> = values
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let (re, im) = eval_unit_root(f, a.root_k, a.root_n).to_decimal(a.digits);
            (i as u32 + 1, re, im)
        })
        .collect();
    let stdout = match a.format {
        Format::Json => {
            let rs: Vec<_> = rows.iter().map(|(n, re, im)| json!({"N": n, "re": re, "im": im})).collect();
            to_json_line(&json!({
                "knot": knot_json(&knot),
                "root": {"k": a.root_k, "n": a.root_n},
                "digits": a.digits,
                "rows": rs,
            }))
        }
        Format::Text => rows.iter().map(|(n, re, im)| format!("N={n}\t{re}\t{im}\n")).collect(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let fmt_err = |e: csv::Error| CliError::Format(e.to_string());
            w.write_record(["N", "re", "im"]).map_err(fmt_err)?;
            for (n, re, im) in &rows {
                w.write_record([n.to_string().as_str(), re, im]).map_err(fmt_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Format(e.to_string()))?)
                .expect("csv output is utf-8")
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{rll}\n$N$ & $\\Re$ & $\\Im$ \\\\\n\\hline\n");
            for (n, re, im) in &rows {
                out.push_str(&format!("{n} & {re} & {im} \\\\\n"));
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    };
    Ok(Outcome::ok(stdout))
}
