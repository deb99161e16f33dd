use std::process::{Command, Output};

use cyclojones::cyclotomic::{self, CoeffTable};
use cyclojones::numeric::{eval_unit_root, HiComplex, DEFAULT_BITS};
use cyclojones::{qcalc, KnotSpec, LaurentPoly};
use cyclojones_cli::format::{poly_from_json, poly_to_json};
use num_bigint::BigInt;
use proptest::prelude::*;

fn cyclojones(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclojones"))
        .args(args)
        .env_remove("CYCLOJONES_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeffs_text_examples() {
    let o = cyclojones(&["coeffs", "--p", "2", "--s", "1", "--max-k", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H_0 = 1\nH_1 = -𝔮^-4\n");
    let o = cyclojones(&["coeffs", "--p", "1", "--r", "1", "--max-k", "1"]);
    assert_eq!(stdout(&o), "H_0 = 1\nH_1 = -𝔮^4\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["coeffs", "--p", "0", "--s", "1"],
        vec!["coeffs", "--p", "1", "--s", "2"],
        vec!["jones", "--p", "1", "--s", "1"],
        vec!["jones", "--p", "1", "--r", "1", "--N", "2", "--route", "walsh"],
        vec!["verify", "--p-range", "0..0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(cyclojones(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn jones_examples() {
    let o = cyclojones(&["jones", "--p", "2", "--s", "1", "--N", "2", "--display", "𝔮"]);
    assert_eq!(stdout(&o), "𝔮^-2 + 𝔮^-6 - 𝔮^-8\n");
    let o = cyclojones(&["jones", "--p", "1", "--s", "1", "--N", "1"]);
    assert_eq!(stdout(&o), "1\n");
    let o = cyclojones(&["jones", "--p", "1", "--s", "1", "--N", "2", "--route", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "theorem: 1\nwalsh: 1\n");
}

#[test]
fn jones_json_matches_schema() {
    let o = cyclojones(&["jones", "--p", "2", "--s", "1", "--N", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let value = serde_json::to_string(&v["results"][0]["value"]).unwrap();
    assert_eq!(value, r#"{"variable":"A","terms":[[-4,"1"],[-12,"1"],[-16,"-1"]]}"#);
    assert_eq!(poly_from_json(&value).unwrap(), LaurentPoly::from_terms([(-4, 1), (-12, 1), (-16, -1)]));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "bailey", "--max-k", "5", "--format", "json"];
    let (a, b) = (cyclojones(&args), cyclojones(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["coeffs", "--p", "-3", "--s", "5", "--max-k", "4", "--format", "csv"];
    assert_eq!(cyclojones(&args).stdout, cyclojones(&args).stdout);
}

#[test]
fn verify_cross_example() {
    let o = cyclojones(&["verify", "--suite", "cross", "--max-k", "6", "--p-range", "-2..2", "--m-range", "1..2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    for id in ["cross.c-prime", "cross.d", "cross.c-tilde", "cross.walsh", "cross.skein-bridge"] {
        assert!(text.contains(&format!("PASS {id}")), "{id}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn failing_verification_exits_1() {
    // m = 0 has no chain-sum form, so the c̃' cross-check reports failures.
    let o = cyclojones(&["verify", "--suite", "cross", "--max-k", "1", "--max-N", "2", "--p-range", "1", "--m-range", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL cross.c-tilde"));
}

#[test]
fn cache_round_trip_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let dir_s = dir.path().to_str().unwrap();
    let args = ["coeffs", "--p", "2", "--s", "3", "--max-k", "5", "--format", "json", "--cross-check", "--cache-dir", dir_s, "--cache-check", "1"];
    let cold = cyclojones(&args);
    assert_eq!(cold.status.code(), Some(0));
    let file = dir.path().join("v1").join("p2_s3").join("H_5.json");
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.contains("\"schema_version\":1") && text.contains("\"digest\""));
    let warm = cyclojones(&args);
    assert_eq!(cold.stdout, warm.stdout);

    let other = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cyclojones"))
        .args(["coeffs", "--p", "1", "--r", "2", "--max-k", "2"])
        .env("CYCLOJONES_CACHE", other.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(other.path().join("v1").join("p1_r2").join("H_2.json").exists());
}

#[test]
fn poisoned_cache_is_caught_by_spot_check() {
    let dir = tempfile::tempdir().unwrap();
    let dir_s = dir.path().to_str().unwrap();
    let args = ["coeffs", "--p", "1", "--r", "1", "--max-k", "3", "--cache-dir", dir_s, "--cache-check", "1"];
    assert_eq!(cyclojones(&args).status.code(), Some(0));
    // Rewrite H_2 with a consistent digest but a wrong value.
    let knot = KnotSpec::full(1, 1).unwrap();
    let cache = cyclojones_cli::cache::CoeffCache::new(dir.path());
    let mut entry = cache.load(&knot, 2).unwrap();
    entry.h = &entry.h + &LaurentPoly::one();
    cache.store(&knot, 2, &entry).unwrap();
    let o = cyclojones(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("differs from recomputation"));
}

#[test]
fn eval_examples() {
    let o = cyclojones(&["eval", "--p", "2", "--s", "1", "--N", "2", "--root-k", "0", "--root-n", "1", "--digits", "10"]);
    assert_eq!(stdout(&o), "N=1\t1.0000000000\t0.0000000000\nN=2\t1.0000000000\t0.0000000000\n");
    let o = cyclojones(&["eval", "--p", "-1", "--s", "3", "--N", "1", "--root-k", "3", "--root-n", "7", "--digits", "5"]);
    assert_eq!(stdout(&o), "N=1\t1.00000\t0.00000\n");
}

/// `J'_N` evaluated directly against the sum of evaluated `H_k` times
/// evaluated blocks.
#[test]
fn evaluation_orders_agree() {
    let knot = KnotSpec::half(2, 1).unwrap();
    let table = CoeffTable::build(&knot, 5, false).unwrap();
    for n in 1..=6u32 {
        let direct = eval_unit_root(&table.jones(n).unwrap(), 1, 16);
        let mut summed = HiComplex::from_integers(0, 0, DEFAULT_BITS);
        for k in 0..n {
            let h = eval_unit_root(table.h(k).unwrap(), 1, 16);
            let block = eval_unit_root(&qcalc::cyclo_block(n, k).unwrap(), 1, 16);
            summed = summed.add(&h.mul(&block));
        }
        assert!(direct.close_to(&summed, 40), "N={n}: {direct} vs {summed}");
    }
    let j2 = cyclotomic::jones_half(2, &knot).unwrap().value;
    assert_eq!(j2.eval_at_one(), BigInt::from(1));
}

proptest! {
    #[test]
    fn json_round_trip(terms in prop::collection::vec((-60i64..=60, any::<i64>(), any::<u64>()), 0..12)) {
        let f = LaurentPoly::from_terms(terms.into_iter().map(|(e, a, b)| (e, BigInt::from(a) * BigInt::from(b))));
        let text = poly_to_json(&f);
        let back = poly_from_json(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(poly_to_json(&back), text);
    }
}
