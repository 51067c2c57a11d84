//! Catalog batch runs: a TOML file of named divisors with optional
//! expected verdicts, processed by a bounded worker pool with an on-disk
//! report cache keyed by (canonical divisor, config, engine version).

use crate::batch::map_batch;
use crate::error::{EngineError, Result};
use crate::parse::{parse_poly, var_names};
use crate::pipeline::{canonical_divisor, run_single, RunConfig};
use crate::report::{emit_structured, parse_structured, CurveReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    /// Comma-separated variable list, e.g. "x,y".
    pub vars: String,
    /// Divisor expression in those variables.
    pub f: String,
    pub expect_qh: Option<bool>,
    pub expect_lct: Option<bool>,
}

#[derive(Deserialize, Serialize)]
struct CatalogFile {
    entry: Vec<CatalogEntry>,
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let file: CatalogFile =
        toml::from_str(text).map_err(|e| EngineError::Input(format!("malformed catalog: {e}")))?;
    Ok(file.entry)
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path)?;
    parse_catalog(&text)
}

pub fn catalog_to_toml(entries: &[CatalogEntry]) -> String {
    toml::to_string_pretty(&CatalogFile { entry: entries.to_vec() }).expect("serializable catalog")
}

fn entry(name: &str, vars: &str, f: &str, qh: bool, lct: bool) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        vars: vars.into(),
        f: f.into(),
        expect_qh: Some(qh),
        expect_lct: Some(lct),
    }
}

/// The shipped divisor set: plane curves (quasi-homogeneous and not),
/// Fermat-type families with exponents up to 6, and the three-variable
/// surface example with its expected comparison outcome.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let mut out = vec![
        entry("smooth-line", "x,y", "x", true, true),
        entry("node", "x,y", "x*y", true, true),
        entry("cusp", "x,y", "x^2 - y^3", true, true),
        entry("a4", "x,y", "x^2 - y^5", true, true),
        entry("e6", "x,y", "x^3 + y^4", true, true),
        entry("e8", "x,y", "x^3 + y^5", true, true),
        entry("three-lines", "x,y", "x*y*(x + y)", true, true),
        entry("four-lines", "x,y", "x*y*(x + y)*(x - y)", true, true),
        entry("nonqh-quartic", "x,y", "x^4 + y^5 + x*y^4", false, false),
        entry("nonqh-quintic", "x,y", "x^5 + y^6 + x*y^5", false, false),
    ];
    for (p, q) in [(2u32, 3u32), (2, 5), (3, 4), (3, 5), (4, 5), (5, 6), (6, 6)] {
        out.push(entry(
            &format!("fermat-{p}-{q}"),
            "x,y",
            &format!("x^{p} + y^{q}"),
            true,
            true,
        ));
    }
    out.push(CatalogEntry {
        name: "surface-four-planes".into(),
        vars: "x,y,z".into(),
        f: "x*y*(x+y)*(x*z+y)".into(),
        expect_qh: None,
        expect_lct: Some(true),
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryStatus {
    /// Processed; expectations (when present) matched.
    Ok,
    /// Processed but a stated expectation did not match.
    Mismatch,
    /// Entry malformed (parse/validation failure); skipped.
    Skipped,
    /// The engine reported an internal inconsistency.
    Internal,
}

#[derive(Clone, Debug)]
pub struct EntryOutcome {
    pub name: String,
    pub status: EntryStatus,
    pub from_cache: bool,
    pub message: Option<String>,
    pub report: Option<CurveReport>,
}

#[derive(Debug, Default)]
pub struct CatalogSummary {
    pub outcomes: Vec<EntryOutcome>,
}

impl CatalogSummary {
    pub fn count(&self, status: &EntryStatus) -> usize {
        self.outcomes.iter().filter(|o| o.status == *status).count()
    }

    /// Exit-code contract: 0 all expectations met, 1 verdict mismatch,
    /// 3 internal inconsistency (input errors exit 2 before this point).
    pub fn exit_code(&self) -> i32 {
        if self.count(&EntryStatus::Internal) > 0 {
            3
        } else if self.count(&EntryStatus::Mismatch) > 0 {
            1
        } else {
            0
        }
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<24} {:<9} {:<6} {:<6} {:<7} note\n",
            "entry", "status", "qh", "lct", "cached"
        ));
        for o in &self.outcomes {
            let (qh, lct) = match &o.report {
                Some(r) => (
                    if r.qh.quasi_homogeneous { "yes" } else { "no" }.to_string(),
                    if r.lct.holds { "holds" } else { "fails" }.to_string(),
                ),
                None => ("-".to_string(), "-".to_string()),
            };
            out.push_str(&format!(
                "{:<24} {:<9} {:<6} {:<6} {:<7} {}\n",
                o.name,
                match o.status {
                    EntryStatus::Ok => "ok",
                    EntryStatus::Mismatch => "MISMATCH",
                    EntryStatus::Skipped => "skipped",
                    EntryStatus::Internal => "INTERNAL",
                },
                qh,
                lct,
                if o.from_cache { "yes" } else { "no" },
                o.message.as_deref().unwrap_or("")
            ));
        }
        let skipped = self.count(&EntryStatus::Skipped);
        out.push_str(&format!(
            "{} entries: {} ok, {} mismatched, {} skipped, {} internal\n",
            self.outcomes.len(),
            self.count(&EntryStatus::Ok),
            self.count(&EntryStatus::Mismatch),
            skipped,
            self.count(&EntryStatus::Internal),
        ));
        out
    }
}

/// Cache key for one (divisor, config, engine version) triple.
pub fn cache_key(canonical_f: &str, vars: &[String], config: &RunConfig) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical_f.as_bytes());
    hasher.update(b"|");
    hasher.update(vars.join(",").as_bytes());
    hasher.update(b"|");
    hasher.update(config.order.name().as_bytes());
    hasher.update(config.kmax.to_le_bytes());
    hasher.update(config.saito_degree_bound.to_le_bytes());
    hasher.update(b"|");
    hasher.update(crate::ENGINE_VERSION.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Atomic write: temp file in the same directory, then rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

/// Runs one entry, consulting and filling the cache when a directory is
/// given. Returns the report and whether it came from the cache.
pub fn run_entry_cached(
    entry: &CatalogEntry,
    config: &RunConfig,
    cache_dir: Option<&Path>,
) -> Result<(CurveReport, bool)> {
    let vars = var_names(&entry.vars);
    let f = parse_poly(&entry.f, &vars)?;
    let key = cache_key(&canonical_divisor(&f, &vars), &vars, config);
    if let Some(dir) = cache_dir {
        let path = cache_path(dir, &key);
        if let Ok(bytes) = std::fs::read_to_string(&path) {
            if let Ok(report) = parse_structured(&bytes) {
                return Ok((report, true));
            }
        }
    }
    let report = run_single(&f, &vars, "f", config)?;
    if let Some(dir) = cache_dir {
        std::fs::create_dir_all(dir)?;
        write_atomic(&cache_path(dir, &key), emit_structured(&report).as_bytes())?;
    }
    Ok((report, false))
}

fn check_expectations(entry: &CatalogEntry, report: &CurveReport) -> Option<String> {
    if let Some(expect) = entry.expect_qh {
        if report.qh.quasi_homogeneous != expect {
            return Some(format!(
                "expected qh = {expect}, computed {}",
                report.qh.quasi_homogeneous
            ));
        }
    }
    if let Some(expect) = entry.expect_lct {
        if report.lct.holds != expect {
            return Some(format!("expected lct = {expect}, computed {}", report.lct.holds));
        }
    }
    None
}

/// Processes the entries (in parallel when built with the `parallel`
/// feature and jobs != 1) and compares expected verdicts where present.
pub fn run_catalog(
    entries: &[CatalogEntry],
    config: &RunConfig,
    jobs: usize,
    cache_dir: Option<&Path>,
) -> CatalogSummary {
    let outcomes = map_batch(entries, jobs, |entry| {
        match run_entry_cached(entry, config, cache_dir) {
            Ok((report, from_cache)) => match check_expectations(entry, &report) {
                None => EntryOutcome {
                    name: entry.name.clone(),
                    status: EntryStatus::Ok,
                    from_cache,
                    message: None,
                    report: Some(report),
                },
                Some(msg) => EntryOutcome {
                    name: entry.name.clone(),
                    status: EntryStatus::Mismatch,
                    from_cache,
                    message: Some(msg),
                    report: Some(report),
                },
            },
            Err(e) if e.is_internal() => EntryOutcome {
                name: entry.name.clone(),
                status: EntryStatus::Internal,
                from_cache: false,
                message: Some(e.to_string()),
                report: None,
            },
            Err(e) => EntryOutcome {
                name: entry.name.clone(),
                status: EntryStatus::Skipped,
                from_cache: false,
                message: Some(e.to_string()),
                report: None,
            },
        }
    });
    CatalogSummary { outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let entries = vec![entry("cusp", "x,y", "x^2 - y^3", true, true)];
        let text = catalog_to_toml(&entries);
        let back = parse_catalog(&text).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].name, "cusp");
        assert_eq!(back[0].expect_qh, Some(true));
    }

    #[test]
    fn empty_catalog_is_ok() {
        let summary = run_catalog(&[], &RunConfig::default(), 1, None);
        assert_eq!(summary.exit_code(), 0);
        assert!(summary.outcomes.is_empty());
    }

    #[test]
    fn malformed_entry_is_skipped() {
        let entries = vec![
            entry("good", "x,y", "x*y", true, true),
            entry("bad-syntax", "x,y", "x +* y", true, true),
            entry("bad-nonreduced", "x,y", "x^2", true, true),
        ];
        let summary = run_catalog(&entries, &RunConfig::default(), 1, None);
        assert_eq!(summary.count(&EntryStatus::Skipped), 2);
        assert_eq!(summary.count(&EntryStatus::Ok), 1);
        assert_eq!(summary.exit_code(), 0);
    }

    #[test]
    fn mismatch_drives_exit_code() {
        let entries = vec![entry("node-wrong", "x,y", "x*y", false, true)];
        let summary = run_catalog(&entries, &RunConfig::default(), 1, None);
        assert_eq!(summary.count(&EntryStatus::Mismatch), 1);
        assert_eq!(summary.exit_code(), 1);
    }

    #[test]
    fn cache_serves_identical_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let e = entry("node", "x,y", "x*y", true, true);
        let config = RunConfig::default();
        let (first, cached1) = run_entry_cached(&e, &config, Some(dir.path())).unwrap();
        assert!(!cached1);
        let (second, cached2) = run_entry_cached(&e, &config, Some(dir.path())).unwrap();
        assert!(cached2);
        assert_eq!(emit_structured(&first), emit_structured(&second));
    }
}
