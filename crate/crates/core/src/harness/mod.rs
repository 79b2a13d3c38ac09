//! Random generation and property suites.
//!
//! Each suite runs a number of independent trials. Trial `i` draws from its own
//! ChaCha8 stream keyed by `(seed, i)`, so a report depends only on the seed
//! and the configuration, never on scheduling.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub mod gen;
pub mod oracle;
mod suites;
pub mod typed;

pub use gen::{gen_context, gen_subst_in, gen_term_in, gen_wellformed, gen_wellformed_with, GenConfig, RuleMix};
pub use oracle::classical_normalize;
pub use typed::gen_typed;

/// The random stream of trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SubjectReduction,
    FvMonotone,
    FvLeast,
    SigmaAlphaTermination,
    Confluence,
    TranslationSimulation,
    UpsilonWeights,
    LpoDecrease,
    JoinLemmas,
    NfGrammar,
    OracleEquivalence,
    UpsilonLocalConfluence,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::SubjectReduction,
        Suite::FvMonotone,
        Suite::FvLeast,
        Suite::SigmaAlphaTermination,
        Suite::Confluence,
        Suite::TranslationSimulation,
        Suite::UpsilonWeights,
        Suite::LpoDecrease,
        Suite::JoinLemmas,
        Suite::NfGrammar,
        Suite::OracleEquivalence,
        Suite::UpsilonLocalConfluence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SubjectReduction => "subject-reduction",
            Suite::FvMonotone => "fv-monotone",
            Suite::FvLeast => "fv-least",
            Suite::SigmaAlphaTermination => "sigma-alpha-termination",
            Suite::Confluence => "confluence",
            Suite::TranslationSimulation => "translation-simulation",
            Suite::UpsilonWeights => "upsilon-weights",
            Suite::LpoDecrease => "lpo-decrease",
            Suite::JoinLemmas => "join-lemmas",
            Suite::NfGrammar => "nf-grammar",
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::UpsilonLocalConfluence => "upsilon-local-confluence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Suite, UnknownSuite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub gen: GenConfig,
    pub trials: usize,
    /// Step bound for every normalization inside a trial.
    pub fuel: usize,
    /// Depth bound for the search that matches one named step with marked
    /// de Bruijn steps.
    pub search_bound: usize,
    /// Longest random reduction prefix in the confluence suite.
    pub prefix_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            gen: GenConfig::default(),
            trials: 1000,
            fuel: 10_000,
            search_bound: 8,
            prefix_max: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub context: String,
    pub term: String,
    pub detail: String,
    /// Terms leading to the failure, when a reduction was involved.
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inconclusive {
    pub trial: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    pub inconclusives: Vec<Inconclusive>,
    /// Individual instances checked, e.g. reduction steps or rule pairs.
    pub checks: u64,
}

impl TrialReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {} seed {}: {} trials, {} passed, {} failed, {} inconclusive, {} checks\n",
            self.suite,
            self.seed,
            self.trials,
            self.passes,
            self.failures.len(),
            self.inconclusives.len(),
            self.checks
        );
        for f in &self.failures {
            out.push_str(&format!(
                "  FAIL trial {}: {} ⊢ {}\n    {}\n",
                f.trial, f.context, f.term, f.detail
            ));
            for t in &f.trace {
                out.push_str(&format!("    -> {t}\n"));
            }
        }
        for i in self.inconclusives.iter().take(10) {
            out.push_str(&format!("  inconclusive trial {}: {}\n", i.trial, i.reason));
        }
        if self.inconclusives.len() > 10 {
            out.push_str(&format!("  ... {} more inconclusive\n", self.inconclusives.len() - 10));
        }
        out
    }
}

/// What a single trial concluded.
#[derive(Clone, Debug)]
pub(crate) enum Outcome {
    Pass { checks: u64 },
    Fail { checks: u64, failure: Failure },
    Inconclusive { checks: u64, reason: String },
}

fn run_trials<F>(suite: Suite, cfg: &SuiteConfig, trial: F) -> TrialReport
where
    F: Fn(&mut ChaCha8Rng, &SuiteConfig) -> Outcome + Sync,
{
    let seed = cfg.gen.seed;
    let outcomes: Vec<Outcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| trial(&mut trial_rng(seed, i as u64), cfg))
        .collect();
    let mut report = TrialReport {
        suite: suite.name().to_string(),
        seed,
        trials: cfg.trials,
        passes: 0,
        failures: Vec::new(),
        inconclusives: Vec::new(),
        checks: 0,
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Pass { checks } => {
                report.passes += 1;
                report.checks += checks;
            }
            Outcome::Fail { checks, mut failure } => {
                failure.trial = i;
                report.failures.push(failure);
                report.checks += checks;
            }
            Outcome::Inconclusive { checks, reason } => {
                report.inconclusives.push(Inconclusive { trial: i, reason });
                report.checks += checks;
            }
        }
    }
    report
}

/// Run `suite` with `cfg.trials` trials.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> TrialReport {
    run_trials(suite, cfg, suites::trial_fn(suite))
}

/// [`run_suite`] by name.
pub fn run_suite_named(name: &str, cfg: &SuiteConfig) -> Result<TrialReport, UnknownSuite> {
    Ok(run_suite(name.parse()?, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn streams_differ_by_index() {
        use rand::Rng;
        let a: u64 = trial_rng(0, 0).gen();
        let b: u64 = trial_rng(0, 1).gen();
        let c: u64 = trial_rng(0, 0).gen();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }
}
