//! Executable property checks over return sets, densities and ideals.
//!
//! Each check expands a [`SuiteConfig`] into a list of [`CheckCase`]s. A case
//! is a self-contained `key=value` record, so any counterexample can be
//! replayed on its own with [`replay`]. Checks verify containments only in
//! the sound direction: membership in a hitting set `N(U,V)` is established
//! by an explicit orbit witness, never read off a grid under-approximation.

pub mod checks;
pub mod suite;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dynsys::{Ball, Point, System};
use crate::error::{parse_err, Error, Result};

pub use suite::{run_suite, SuiteConfig, SuiteReport};

/// One replayable instance of a check.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CheckCase {
    pub check: String,
    pub params: BTreeMap<String, String>,
}

impl CheckCase {
    pub fn new(check: &str) -> Self {
        CheckCase {
            check: check.to_string(),
            params: BTreeMap::new(),
        }
    }

    /// Adds a parameter; values must not contain whitespace.
    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        let v = value.to_string();
        debug_assert!(!v.contains(char::is_whitespace), "{key}={v}");
        self.params.insert(key.to_string(), v);
        self
    }

    pub fn raw(&self, key: &str) -> Result<&str> {
        self.params
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| parse_err(format!("case for `{}` lacks `{key}`", self.check)))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        let raw = self.raw(key)?;
        raw.parse()
            .map_err(|e| parse_err(format!("bad value `{raw}` for `{key}`: {e}")))
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        if self.params.contains_key(key) {
            self.get(key)
        } else {
            Ok(default)
        }
    }

    pub fn system(&self, key: &str) -> Result<System> {
        System::from_spec(self.raw(key)?)
    }

    pub fn point(&self, key: &str) -> Result<Point> {
        self.raw(key)?.parse()
    }

    pub fn ball(&self, center: &str, radius: &str) -> Result<Ball> {
        Ball::new(self.point(center)?, self.get(radius)?)
    }

    /// Comma-separated integers.
    pub fn list(&self, key: &str) -> Result<Vec<usize>> {
        let raw = self.raw(key)?;
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',')
            .map(|t| {
                t.parse()
                    .map_err(|e| parse_err(format!("bad list entry `{t}` in `{key}`: {e}")))
            })
            .collect()
    }
}

impl fmt::Display for CheckCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check={}", self.check)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for CheckCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut check = None;
        let mut params = BTreeMap::new();
        for token in s.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected key=value, got `{token}`")))?;
            if k == "check" {
                check = Some(v.to_string());
            } else if params.insert(k.to_string(), v.to_string()).is_some() {
                return Err(parse_err(format!("duplicate key `{k}`")));
            }
        }
        let check = check.ok_or_else(|| parse_err("case lacks `check=`"))?;
        Ok(CheckCase { check, params })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Violation,
    Inconclusive,
}

/// Result of one case, with named numeric evidence.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub detail: String,
    pub metrics: Vec<(&'static str, f64)>,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::Pass,
            detail: detail.into(),
            metrics: Vec::new(),
        }
    }

    pub fn violation(detail: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::Violation,
            detail: detail.into(),
            metrics: Vec::new(),
        }
    }

    pub fn inconclusive(detail: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::Inconclusive,
            detail: detail.into(),
            metrics: Vec::new(),
        }
    }

    pub fn metric(mut self, name: &'static str, value: f64) -> Self {
        self.metrics.push((name, value));
        self
    }

    /// `pass` when `ok`, `violation` otherwise.
    pub fn check(ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Outcome::pass(detail)
        } else {
            Outcome::violation(detail)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub statement: String,
    pub instances: usize,
    pub violations: usize,
    pub inconclusive: usize,
    pub first_counterexample: Option<String>,
    /// `name=min..max` over all passing cases, in name order.
    pub evidence: String,
    pub status: CheckStatus,
    /// Every case with its outcome, in generation order.
    pub cases: Vec<(CheckCase, Outcome)>,
}

/// A registered check.
pub struct CheckDef {
    pub name: &'static str,
    pub statement: &'static str,
    /// Cases with a smaller `horizon` are inconclusive without running.
    pub min_horizon: usize,
    pub cases: fn(&SuiteConfig) -> Vec<CheckCase>,
    pub run: fn(&CheckCase) -> Result<Outcome>,
}

pub fn registry() -> &'static [CheckDef] {
    checks::REGISTRY
}

pub fn find_check(name: &str) -> Result<&'static CheckDef> {
    registry()
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownCheck(name.to_string()))
}

/// Runs a single case behind the horizon guard. Failed preconditions become
/// inconclusive outcomes; malformed cases are errors.
pub fn run_case(case: &CheckCase) -> Result<Outcome> {
    let def = find_check(&case.check)?;
    let horizon: usize = case.get_or("horizon", usize::MAX)?;
    if horizon < def.min_horizon {
        return Ok(Outcome::inconclusive(format!(
            "horizon {horizon} below the minimum {} for this check",
            def.min_horizon
        )));
    }
    Ok(match (def.run)(case) {
        Ok(o) => o,
        Err(e @ (Error::Precondition(_) | Error::PrecisionExhausted { .. } | Error::ExtractionExhausted { .. })) => {
            Outcome::inconclusive(format!("evidence unavailable: {e}"))
        }
        Err(e) => return Err(e),
    })
}

/// Parses and runs one serialized case.
pub fn replay(line: &str) -> Result<Outcome> {
    run_case(&line.parse()?)
}

fn summarize(outcomes: &[(CheckCase, Outcome)]) -> String {
    let mut ranges: BTreeMap<&str, (f64, f64)> = BTreeMap::new();
    for (_, o) in outcomes.iter().filter(|(_, o)| o.verdict == Verdict::Pass) {
        for &(name, v) in &o.metrics {
            let e = ranges.entry(name).or_insert((v, v));
            e.0 = e.0.min(v);
            e.1 = e.1.max(v);
        }
    }
    ranges
        .into_iter()
        .map(|(k, (lo, hi))| {
            if lo == hi {
                format!("{k}={lo}")
            } else {
                format!("{k}={lo}..{hi}")
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Runs every case of a check; cases execute in parallel and are reported
/// in generation order.
pub fn run_check(def: &CheckDef, cfg: &SuiteConfig) -> Result<CheckResult> {
    let cases = (def.cases)(cfg);
    let outcomes = cases
        .into_par_iter()
        .map(|c| run_case(&c).map(|o| (c, o)))
        .collect::<Result<Vec<_>>>()?;
    let violations = outcomes.iter().filter(|(_, o)| o.verdict == Verdict::Violation).count();
    let inconclusive = outcomes
        .iter()
        .filter(|(_, o)| o.verdict == Verdict::Inconclusive)
        .count();
    let status = if violations > 0 {
        CheckStatus::Fail
    } else if inconclusive > 0 || outcomes.is_empty() {
        CheckStatus::Inconclusive
    } else {
        CheckStatus::Pass
    };
    Ok(CheckResult {
        name: def.name.to_string(),
        statement: def.statement.to_string(),
        instances: outcomes.len(),
        violations,
        inconclusive,
        first_counterexample: outcomes
            .iter()
            .find(|(_, o)| o.verdict == Verdict::Violation)
            .map(|(c, _)| c.to_string()),
        evidence: summarize(&outcomes),
        status,
        cases: outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_round_trip() {
        let c = CheckCase::new("ansari")
            .with("system", "doubling")
            .with("k", 2)
            .with("radius", 0.125);
        let line = c.to_string();
        assert_eq!(line, "check=ansari k=2 radius=0.125 system=doubling");
        assert_eq!(line.parse::<CheckCase>().unwrap(), c);
        assert_eq!(c.get::<usize>("k").unwrap(), 2);
        assert!(c.get::<usize>("missing").is_err());
        assert!("k=2".parse::<CheckCase>().is_err());
        assert!("check=a k=1 k=2".parse::<CheckCase>().is_err());
    }

    #[test]
    fn unknown_check_is_an_error() {
        assert!(matches!(replay("check=nonsense"), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn small_horizon_guard() {
        let def = &registry()[0];
        let line = format!("check={} horizon=1", def.name);
        if def.min_horizon > 1 {
            assert_eq!(replay(&line).unwrap().verdict, Verdict::Inconclusive);
        }
    }
}
