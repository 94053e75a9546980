//! Suite configuration, execution and report files.
//!
//! Output is a pure function of the configuration: results are ordered by
//! check name, cases by generation order, and no timings are written.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::{registry, run_check, CheckDef, CheckResult, CheckStatus};
use crate::error::{invalid, parse_err, Error, Result};

pub const DEFAULT_HORIZON: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub horizon: usize,
    pub seed: u64,
    pub threshold: f64,
    /// Worker threads; 0 uses one per core.
    pub workers: usize,
    /// Check names, or `all`.
    pub suite: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            horizon: DEFAULT_HORIZON,
            seed: 42,
            threshold: crate::analysis::DEFAULT_THRESHOLD,
            workers: 0,
            suite: vec!["all".into()],
        }
    }
}

impl SuiteConfig {
    /// Line-oriented `key=value`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SuiteConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| parse_err(format!("line {}: expected key=value", i + 1)))?;
            cfg.set(k.trim(), v.trim())
                .map_err(|e| parse_err(format!("line {}: {e}", i + 1)))?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |e: &dyn std::fmt::Display| parse_err(format!("bad value `{value}` for `{key}`: {e}"));
        match key {
            "horizon" => self.horizon = value.parse().map_err(|e| bad(&e))?,
            "seed" => self.seed = value.parse().map_err(|e| bad(&e))?,
            "threshold" | "thresholds" => self.threshold = value.parse().map_err(|e| bad(&e))?,
            "workers" => self.workers = value.parse().map_err(|e| bad(&e))?,
            "suite" => {
                self.suite = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            }
            _ => return Err(parse_err(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(invalid("horizon must be positive"));
        }
        if !(self.threshold > 0.0) {
            return Err(invalid("threshold must be positive"));
        }
        if self.suite.is_empty() {
            return Err(invalid("suite selects no checks"));
        }
        Ok(())
    }

    /// Selected checks in registry order; unknown names are errors.
    pub fn selected(&self) -> Result<Vec<&'static CheckDef>> {
        self.validate()?;
        if self.suite.iter().any(|s| s == "all") {
            return Ok(registry().iter().collect());
        }
        for name in &self.suite {
            super::find_check(name)?;
        }
        Ok(registry()
            .iter()
            .filter(|d| self.suite.iter().any(|s| s == d.name))
            .collect())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    /// Sorted by check name.
    pub results: Vec<CheckResult>,
}

pub const CHECKS_CSV_HEADER: [&str; 8] = [
    "check",
    "statement",
    "instances",
    "violations",
    "inconclusive",
    "status",
    "first_counterexample",
    "evidence",
];

pub const CASES_CSV_HEADER: [&str; 4] = ["check", "case", "verdict", "detail"];

impl SuiteReport {
    pub fn failed(&self) -> bool {
        self.results.iter().any(|r| r.status == CheckStatus::Fail)
    }

    /// 0 when no check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(
            s,
            "suite horizon={} seed={} threshold={} checks={}",
            c.horizon,
            c.seed,
            c.threshold,
            self.results.len()
        );
        for r in &self.results {
            let _ = writeln!(
                s,
                "{:<28} {:<12} instances={} violations={} inconclusive={}",
                r.name, r.status, r.instances, r.violations, r.inconclusive
            );
            if let Some(cx) = &r.first_counterexample {
                let _ = writeln!(s, "    counterexample: {cx}");
            }
            if r.status == CheckStatus::Inconclusive {
                let _ = writeln!(s, "    warning: evidence too weak for a verdict");
            }
        }
        let _ = writeln!(s, "result: {}", if self.failed() { "FAIL" } else { "PASS" });
        s
    }

    /// Writes `checks.csv`, `cases.csv` and `summary.txt` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        let io = |path: PathBuf| move |source| Error::Io { path, source };
        fs::create_dir_all(dir).map_err(io(dir.to_path_buf()))?;

        let mut w = csv::Writer::from_path(dir.join("checks.csv"))?;
        w.write_record(CHECKS_CSV_HEADER)?;
        for r in &self.results {
            w.write_record([
                r.name.as_str(),
                r.statement.as_str(),
                &r.instances.to_string(),
                &r.violations.to_string(),
                &r.inconclusive.to_string(),
                &r.status.to_string(),
                r.first_counterexample.as_deref().unwrap_or(""),
                r.evidence.as_str(),
            ])?;
        }
        w.flush().map_err(io(dir.join("checks.csv")))?;

        let mut w = csv::Writer::from_path(dir.join("cases.csv"))?;
        w.write_record(CASES_CSV_HEADER)?;
        for r in &self.results {
            for (case, outcome) in &r.cases {
                let verdict = format!("{:?}", outcome.verdict).to_lowercase();
                w.write_record([r.name.as_str(), &case.to_string(), &verdict, &outcome.detail])?;
            }
        }
        w.flush().map_err(io(dir.join("cases.csv")))?;

        let path = dir.join("summary.txt");
        fs::write(&path, self.summary()).map_err(io(path))?;
        Ok(())
    }
}

/// Runs the selected checks on a pool of `cfg.workers` threads.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let defs = cfg.selected()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| invalid(format!("cannot build worker pool: {e}")))?;
    let mut results = pool.install(|| {
        defs.par_iter()
            .map(|d| {
                log::info!("running {}", d.name);
                run_check(d, cfg)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    results.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(SuiteReport {
        config: cfg.clone(),
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_config() {
        let cfg = SuiteConfig::parse("# comment\nhorizon = 4096\nseed=7\nsuite=ansari, density_chain\n").unwrap();
        assert_eq!(cfg.horizon, 4096);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.suite, ["ansari", "density_chain"]);
        assert_eq!(cfg.selected().unwrap().len(), 2);
        assert!(SuiteConfig::parse("colour=blue").is_err());
        assert!(SuiteConfig::parse("horizon").is_err());
        assert!(SuiteConfig::parse("horizon=-3").is_err());
        let unknown = SuiteConfig::parse("suite=nonsense").unwrap();
        assert!(matches!(unknown.selected(), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn tiny_horizon_is_inconclusive_not_failing() {
        let cfg = SuiteConfig {
            horizon: 100,
            ..SuiteConfig::default()
        };
        let report = run_suite(&cfg).unwrap();
        assert_eq!(report.exit_code(), 0);
        assert!(
            report
                .results
                .iter()
                .filter(|r| r.status == CheckStatus::Inconclusive)
                .count()
                >= 3
        );
    }

    #[test]
    fn report_files_are_deterministic() {
        let cfg = SuiteConfig::parse("horizon=2048\nsuite=ansari,density_chain,gap_properties").unwrap();
        let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
        for d in &dirs {
            run_suite(&cfg).unwrap().write(d.path()).unwrap();
        }
        for f in ["checks.csv", "cases.csv", "summary.txt"] {
            let a = fs::read(dirs[0].path().join(f)).unwrap();
            let b = fs::read(dirs[1].path().join(f)).unwrap();
            assert_eq!(a, b, "{f}");
        }
    }
}
