use std::time::{Duration, Instant};

use serde::Serialize;

use super::catalogue::LawId;
use super::check::{Checker, LawVerdict, Scope, SearchMode};
use super::shrink::shrink_verdict;
use crate::error::{Error, Result};
use crate::process::EqualityMode;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub scopes: Vec<Scope>,
    pub laws: Vec<LawId>,
    pub modes: Vec<EqualityMode>,
}

impl SuiteConfig {
    /// Every law at both modes over the given scopes.
    pub fn all(scopes: Vec<Scope>) -> Self {
        SuiteConfig {
            scopes,
            laws: LawId::ALL.to_vec(),
            modes: EqualityMode::ALL.to_vec(),
        }
    }
}

/// Verdicts in `(scope, law, mode)` order. Timings are kept alongside but are
/// not serialized, so the serialized form is reproducible.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub verdicts: Vec<LawVerdict>,
    #[serde(skip)]
    pub timings: Vec<Duration>,
    #[serde(skip)]
    pub total: Duration,
}

impl SuiteReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &LawVerdict> {
        self.verdicts.iter().filter(|v| !v.is_verified())
    }

    pub fn all_verified(&self) -> bool {
        self.verdicts.iter().all(LawVerdict::is_verified)
    }
}

impl Checker {
    /// Checks every `(scope, law, mode)` combination. Laws without an equality
    /// notion run once per scope. Counterexamples are shrunk before they are
    /// reported. Budgets are validated for the whole config before any work
    /// starts.
    pub fn run_suite(&self, config: &SuiteConfig) -> Result<SuiteReport> {
        let mut jobs = Vec::new();
        for scope in &config.scopes {
            scope.universe()?;
            for &law in &config.laws {
                if scope.mode == SearchMode::Exhaustive {
                    let required = scope.work_estimate(law);
                    if required > self.budget {
                        return Err(Error::BudgetExceeded { required, budget: self.budget });
                    }
                }
                if law.uses_equality() {
                    jobs.extend(config.modes.iter().map(|&mode| (scope, law, mode)));
                } else if let Some(&mode) = config.modes.first() {
                    jobs.push((scope, law, mode));
                }
            }
        }

        let start = Instant::now();
        let mut verdicts = Vec::with_capacity(jobs.len());
        let mut timings = Vec::with_capacity(jobs.len());
        for (scope, law, mode) in jobs {
            let t = Instant::now();
            let mut verdict = self.check_law(law, mode, scope)?;
            if !verdict.is_verified() {
                verdict = shrink_verdict(&verdict)?;
            }
            timings.push(t.elapsed());
            verdicts.push(verdict);
        }
        Ok(SuiteReport {
            verdicts,
            timings,
            total: start.elapsed(),
        })
    }
}

/// [`Checker::run_suite`] with the default budget.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    Checker::default().run_suite(config)
}
