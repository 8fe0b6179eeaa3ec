//! Seeded property suites and their reports.

mod suites;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::padic::PadicContext;
use crate::{Error, Result};

pub const SUITES: [&str; 9] =
    ["hilbert", "weil", "xmap", "cocycle", "structure", "characters", "torusreps", "deciders", "whittaker"];

pub const DEFAULT_PRIMES: [u64; 3] = [3, 5, 7];
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 42;

/// Suites that `run_all` also runs at `p = 2`.
pub const RUN_AT_TWO: [&str; 2] = ["hilbert", "structure"];

/// Failures kept verbatim per report; the rest are only counted.
const KEEP_FAILURES: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub runs: u64,
    pub failures: u64,
}

/// Outcome of one suite at one prime. `elapsed` is not serialized so that
/// reports from the same seed compare equal byte for byte.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub p: u64,
    pub seed: u64,
    pub samples: usize,
    /// Individual assertions evaluated.
    pub checks: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    /// Runs and failures per named check.
    pub per_check: BTreeMap<String, CheckTally>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AggregateReport {
    pub seed: u64,
    pub samples: usize,
    pub total_checks: u64,
    pub total_failures: u64,
    pub reports: Vec<SuiteReport>,
}

impl AggregateReport {
    pub fn passed(&self) -> bool {
        self.total_failures == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Collects assertion outcomes for one report.
#[derive(Default)]
pub(crate) struct Checker {
    checks: u64,
    failure_count: u64,
    failures: Vec<Failure>,
    per_check: BTreeMap<String, CheckTally>,
}

impl Checker {
    fn run(&mut self, check: &str) {
        self.checks += 1;
        self.per_check.entry(check.to_string()).or_default().runs += 1;
    }

    fn fail(&mut self, check: &str, inputs: String, expected: String, actual: String) {
        self.failure_count += 1;
        self.per_check.entry(check.to_string()).or_default().failures += 1;
        if self.failures.len() < KEEP_FAILURES {
            self.failures.push(Failure { check: check.into(), inputs, expected, actual });
        }
    }

    pub(crate) fn eq<T: Debug + PartialEq>(&mut self, check: &str, inputs: impl FnOnce() -> String, expected: T, actual: T) {
        self.run(check);
        if expected != actual {
            self.fail(check, inputs(), format!("{expected:?}"), format!("{actual:?}"));
        }
    }

    /// Both sides may fail; an error on either side is a failure.
    pub(crate) fn eq_r<T: Debug + PartialEq>(
        &mut self,
        check: &str,
        inputs: impl FnOnce() -> String,
        expected: Result<T>,
        actual: Result<T>,
    ) {
        self.run(check);
        match (expected, actual) {
            (Ok(e), Ok(a)) if e == a => {}
            (e, a) => self.fail(check, inputs(), fmt_res(&e), fmt_res(&a)),
        }
    }

    pub(crate) fn holds(&mut self, check: &str, inputs: impl FnOnce() -> String, v: Result<bool>) {
        self.eq_r(check, inputs, Ok(true), v)
    }
}

fn fmt_res<T: Debug>(r: &Result<T>) -> String {
    match r {
        Ok(v) => format!("{v:?}"),
        Err(e) => format!("error: {e}"),
    }
}

/// Generator for one suite at one prime, derived from the user seed.
fn suite_rng(name: &str, p: u64, seed: u64) -> ChaCha8Rng {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in name.bytes().chain(p.to_le_bytes()) {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

pub fn run_suite(name: &str, p: u64, seed: u64, samples: usize) -> Result<SuiteReport> {
    let f = suites::lookup(name).ok_or_else(|| Error::UnknownSuite(name.into()))?;
    let ctx = PadicContext::new(p)?;
    let mut rng = suite_rng(name, p, seed);
    let mut c = Checker::default();
    let start = Instant::now();
    f(&ctx, &mut rng, samples, &mut c)?;
    Ok(SuiteReport {
        suite: name.into(),
        p,
        seed,
        samples,
        checks: c.checks,
        failure_count: c.failure_count,
        failures: c.failures,
        per_check: c.per_check,
        elapsed: start.elapsed(),
    })
}

/// Jobs run by [`run_all`]: every suite at every prime of `primes` other
/// than 2, plus `p = 2` for the suites in [`RUN_AT_TWO`].
pub fn plan(primes: &[u64]) -> Vec<(&'static str, u64)> {
    let mut jobs = Vec::new();
    for s in SUITES {
        let mut ps: Vec<u64> = primes.iter().copied().filter(|&p| p != 2).collect();
        if RUN_AT_TWO.contains(&s) {
            ps.push(2);
        }
        ps.sort_unstable();
        ps.dedup();
        jobs.extend(ps.into_iter().map(|p| (s, p)));
    }
    jobs
}

/// Runs the [`plan`] in parallel; reports come back in plan order.
pub fn run_all(primes: &[u64], seed: u64, samples: usize) -> Result<AggregateReport> {
    run_jobs(&plan(primes), seed, samples)
}

pub fn run_jobs(jobs: &[(&str, u64)], seed: u64, samples: usize) -> Result<AggregateReport> {
    let results: Vec<Result<SuiteReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|&(name, p)| s.spawn(move || run_suite(name, p, seed, samples))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(AggregateReport {
        seed,
        samples,
        total_checks: reports.iter().map(|r| r.checks).sum(),
        total_failures: reports.iter().map(|r| r.failure_count).sum(),
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nope", 3, 1, 10).unwrap_err(), Error::UnknownSuite("nope".into()));
    }

    #[test]
    fn plan_adds_two_only_where_allowed() {
        let jobs = plan(&[3, 5, 7]);
        assert_eq!(jobs.len(), 9 * 3 + 2);
        assert!(jobs.iter().filter(|j| j.1 == 2).all(|j| RUN_AT_TWO.contains(&j.0)));
        assert_eq!(plan(&[2]).len(), 2);
    }
}
