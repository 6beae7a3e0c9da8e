use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rng::stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolicStatus {
    Verified,
    Inconclusive,
    Failed,
}

impl fmt::Display for SymbolicStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolicStatus::Verified => "verified",
            SymbolicStatus::Inconclusive => "inconclusive",
            SymbolicStatus::Failed => "failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicCheck {
    pub name: String,
    pub status: SymbolicStatus,
    pub detail: String,
}

/// Trials on which a polynomial that must vanish evaluated to exactly zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishCount {
    pub sampler: String,
    pub check: String,
    pub zeros: usize,
    pub trials: usize,
}

/// Trials on which a separating polynomial was nonzero, and how many draws
/// were discarded because it vanished there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCount {
    pub sampler: String,
    pub check: String,
    pub nonzero: usize,
    pub trials: usize,
    pub resampled: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: usize,
    pub reasons: Vec<String>,
    /// The offending sample, printed exactly.
    pub samples: Vec<String>,
}

/// Outcome of a verification. Deterministic given the seed; `trials ==
/// successes + failures.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub name: String,
    pub seed: u64,
    pub params: Vec<(String, String)>,
    pub trials: usize,
    pub successes: usize,
    pub symbolic: Vec<SymbolicCheck>,
    pub vanishing: Vec<VanishCount>,
    pub separations: Vec<SeparationCount>,
    pub facts: Vec<Fact>,
    pub failures: Vec<Failure>,
    pub status: Status,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "report {}", self.name);
        let _ = writeln!(s, "seed {}", self.seed);
        for (k, v) in &self.params {
            let _ = writeln!(s, "param {k} {v}");
        }
        let _ = writeln!(s, "trials {}", self.trials);
        let _ = writeln!(s, "successes {}", self.successes);
        for c in &self.symbolic {
            let _ = writeln!(s, "symbolic {} {}: {}", c.name, c.status, c.detail);
        }
        for v in &self.vanishing {
            let _ = writeln!(s, "check {} {} {}/{}", v.sampler, v.check, v.zeros, v.trials);
        }
        for v in &self.separations {
            let _ = writeln!(
                s,
                "separate {} {} nonzero {}/{} resampled {}",
                v.sampler, v.check, v.nonzero, v.trials, v.resampled
            );
        }
        for f in &self.facts {
            let _ = writeln!(
                s,
                "fact {} expected {} observed {} {}",
                f.name,
                f.expected,
                f.observed,
                if f.ok { "ok" } else { "FAIL" }
            );
        }
        for f in &self.failures {
            let _ = writeln!(s, "failure trial {}: {}", f.trial, f.reasons.join("; "));
            for sample in &f.samples {
                for line in sample.lines() {
                    let _ = writeln!(s, "  {line}");
                }
            }
        }
        let _ = writeln!(s, "status {}", self.status);
        s
    }
}

/// Per-trial result of a sampling campaign.
pub(crate) struct TrialResult {
    pub vanish: Vec<bool>,
    /// `(nonzero, resampled draws)` per separation check.
    pub separations: Vec<(bool, usize)>,
    pub sample: String,
}

pub(crate) struct Builder {
    report: WitnessReport,
    bad_trials: BTreeMap<usize, Failure>,
}

impl Builder {
    pub fn new(name: &str, seed: u64, trials: usize) -> Self {
        Self {
            report: WitnessReport {
                name: name.to_string(),
                seed,
                params: Vec::new(),
                trials,
                successes: 0,
                symbolic: Vec::new(),
                vanishing: Vec::new(),
                separations: Vec::new(),
                facts: Vec::new(),
                failures: Vec::new(),
                status: Status::Pass,
            },
            bad_trials: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.report.params.push((key.to_string(), value.to_string()));
    }

    pub fn symbolic(&mut self, name: &str, status: SymbolicStatus, detail: impl Into<String>) {
        self.report.symbolic.push(SymbolicCheck {
            name: name.to_string(),
            status,
            detail: detail.into(),
        });
    }

    pub fn fact(&mut self, name: &str, expected: impl fmt::Display, observed: impl fmt::Display) -> bool {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let ok = expected == observed;
        self.report.facts.push(Fact {
            name: name.to_string(),
            expected,
            observed,
            ok,
        });
        ok
    }

    /// A fact tied to trial `trial`; failing it fails the trial.
    pub fn trial_fact(
        &mut self,
        trial: usize,
        name: &str,
        expected: impl fmt::Display,
        observed: impl fmt::Display,
        sample: Option<String>,
    ) -> bool {
        let ok = self.fact(name, expected, observed);
        if !ok {
            self.fail_trial(trial, name.to_string(), sample);
        }
        ok
    }

    fn fail_trial(&mut self, trial: usize, reason: String, sample: Option<String>) {
        let f = self.bad_trials.entry(trial).or_insert_with(|| Failure {
            trial,
            reasons: Vec::new(),
            samples: Vec::new(),
        });
        f.reasons.push(reason);
        if let Some(s) = sample {
            if !f.samples.contains(&s) {
                f.samples.push(s);
            }
        }
    }

    /// Runs `trials` independent trials of `run`, in parallel, each with its
    /// own stream derived from the seed, the sampler name and the index.
    pub fn campaign<F>(&mut self, sampler: &str, vanish: &[String], separations: &[String], run: F) -> Result<()>
    where
        F: Fn(&mut ChaCha8Rng) -> Result<TrialResult> + Sync,
    {
        let seed = self.report.seed;
        let results: Vec<TrialResult> = (0..self.report.trials)
            .into_par_iter()
            .map(|i| run(&mut stream(seed, sampler, i as u64)))
            .collect::<Result<_>>()?;
        let mut zeros = vec![0; vanish.len()];
        let mut nonzero = vec![0; separations.len()];
        let mut resampled = vec![0; separations.len()];
        for (i, r) in results.into_iter().enumerate() {
            for (c, &ok) in r.vanish.iter().enumerate() {
                if ok {
                    zeros[c] += 1;
                } else {
                    self.fail_trial(i, format!("{sampler}: {} nonzero", vanish[c]), Some(r.sample.clone()));
                }
            }
            for (c, &(ok, extra)) in r.separations.iter().enumerate() {
                resampled[c] += extra;
                if ok {
                    nonzero[c] += 1;
                } else {
                    self.fail_trial(i, format!("{sampler}: {} vanished", separations[c]), Some(r.sample.clone()));
                }
            }
        }
        let trials = self.report.trials;
        for (c, name) in vanish.iter().enumerate() {
            self.report.vanishing.push(VanishCount {
                sampler: sampler.to_string(),
                check: name.clone(),
                zeros: zeros[c],
                trials,
            });
        }
        for (c, name) in separations.iter().enumerate() {
            self.report.separations.push(SeparationCount {
                sampler: sampler.to_string(),
                check: name.clone(),
                nonzero: nonzero[c],
                trials,
                resampled: resampled[c],
            });
        }
        Ok(())
    }

    pub fn finish(mut self) -> WitnessReport {
        let r = &mut self.report;
        r.failures = self.bad_trials.into_values().collect();
        r.successes = r.trials.saturating_sub(r.failures.len());
        let failed = !r.failures.is_empty()
            || r.facts.iter().any(|f| !f.ok)
            || r.symbolic.iter().any(|c| c.status == SymbolicStatus::Failed)
            || r.vanishing.iter().any(|v| v.zeros != v.trials)
            || r.separations.iter().any(|v| v.nonzero != v.trials);
        r.status = if failed {
            Status::Fail
        } else if r.symbolic.iter().any(|c| c.status == SymbolicStatus::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        self.report
    }
}
