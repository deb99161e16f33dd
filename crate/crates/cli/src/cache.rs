//! On-disk cache of verified `H_k` values.
//!
//! One JSON file per `(schema version, knot, k)` under
//! `<root>/v<version>/<knot>/H_<k>.json`. Files carry a SHA-256 digest of the
//! polynomial payload and are replaced atomically.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cyclojones::cyclotomic::{Check, CoeffEntry};
use cyclojones::{KnotSpec, LaurentPoly, Region};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use crate::error::CliError;
use crate::format::PolyJson;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    knot: String,
    k: u32,
    checks: Vec<String>,
    digest: String,
    h: PolyJson,
}

pub fn check_name(c: Check) -> &'static str {
    match c {
        Check::Integrality => "integrality",
        Check::MultiSum => "multisum",
    }
}

fn parse_check(s: &str) -> Option<Check> {
    match s {
        "integrality" => Some(Check::Integrality),
        "multisum" => Some(Check::MultiSum),
        _ => None,
    }
}

fn digest(h: &PolyJson) -> String {
    let bytes = serde_json::to_vec(h).expect("plain data serializes");
    hex::encode(Sha256::digest(&bytes))
}

fn knot_dir(knot: &KnotSpec) -> String {
    match knot.region {
        Region::FullTwists(r) => format!("p{}_r{}", knot.p, r),
        Region::HalfTwists { s, .. } => format!("p{}_s{}", knot.p, s),
    }
}

pub struct CoeffCache {
    root: PathBuf,
}

impl CoeffCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn dir(&self, knot: &KnotSpec) -> PathBuf {
        self.root.join(format!("v{SCHEMA_VERSION}")).join(knot_dir(knot))
    }

    pub fn path(&self, knot: &KnotSpec, k: u32) -> PathBuf {
        self.dir(knot).join(format!("H_{k}.json"))
    }

    /// The cached entry, or `None` when absent, from another schema, or
    /// failing its digest.
    pub fn load(&self, knot: &KnotSpec, k: u32) -> Option<CoeffEntry> {
        let text = fs::read_to_string(self.path(knot, k)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.schema_version != SCHEMA_VERSION
            || file.knot != knot.to_string()
            || file.k != k
            || file.digest != digest(&file.h)
        {
            return None;
        }
        let h = LaurentPoly::try_from(&file.h).ok()?;
        let checks: BTreeSet<Check> = file.checks.iter().filter_map(|c| parse_check(c)).collect();
        Some(CoeffEntry { h, checks })
    }

    pub fn store(&self, knot: &KnotSpec, k: u32, entry: &CoeffEntry) -> Result<(), CliError> {
        let dir = self.dir(knot);
        fs::create_dir_all(&dir)?;
        let h = PolyJson::from(&entry.h);
        let file = CacheFile {
            schema_version: SCHEMA_VERSION,
            knot: knot.to_string(),
            k,
            checks: entry.checks.iter().map(|&c| check_name(c).to_string()).collect(),
            digest: digest(&h),
            h,
        };
        let mut tmp = NamedTempFile::new_in(&dir)?;
        serde_json::to_writer(&mut tmp, &file).map_err(|e| CliError::Format(e.to_string()))?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path(knot, k)).map_err(|e| CliError::Io(e.error))?;
        Ok(())
    }
}
