use std::fmt;
use std::str::FromStr;
use std::thread;

use jtriple::embedding::EmbeddingSpec;
use jtriple::verify::{
    check_embedding_isometry, check_metric_pullback, check_presentation_relations, check_second_fundamental_form,
    graph_variety_spin, rigidity_convergence, run_identity_suite, Identity, SampleConfig, VerificationReport,
};
use jtriple::{Error, Kind, Result};

/// Parameters of the F_t convergence run.
pub const RIGIDITY_TS: [f64; 3] = [0.2, 0.1, 0.05];
pub const RIGIDITY_RADIUS: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identity(Identity),
    Presentation,
    KernelIsometry,
    MetricPullback,
    Sff,
    GraphVariety,
    Rigidity,
    All,
}

impl Suite {
    const EXTRA: [(&'static str, Suite); 7] = [
        ("presentation-relations", Suite::Presentation),
        ("kernel-isometry", Suite::KernelIsometry),
        ("metric-pullback", Suite::MetricPullback),
        ("sff", Suite::Sff),
        ("graph-variety", Suite::GraphVariety),
        ("rigidity", Suite::Rigidity),
        ("all", Suite::All),
    ];

    pub fn names() -> Vec<&'static str> {
        Identity::ALL.iter().map(|i| i.name()).chain(Self::EXTRA.iter().map(|e| e.0)).collect()
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Ok(id) = s.parse::<Identity>() {
            return Ok(Suite::Identity(id));
        }
        Self::EXTRA
            .iter()
            .find(|e| e.0 == s)
            .map(|e| e.1)
            .ok_or_else(|| format!("unknown suite {s:?}; expected one of {}", Suite::names().join(", ")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::Identity(id) => f.write_str(id.name()),
            other => f.write_str(Self::EXTRA.iter().find(|e| e.1 == *other).expect("listed").0),
        }
    }
}

type Job = Box<dyn FnOnce() -> Result<Vec<VerificationReport>> + Send>;

/// Expand the selector into concrete jobs. Explicitly requested suites that
/// do not apply are errors; `all` skips them.
pub fn plan(suite: Suite, embedding: &EmbeddingSpec, cfg: SampleConfig) -> Result<Vec<(String, Job)>> {
    let sys = embedding.system().clone();
    let is_spin = matches!(sys.kind(), Kind::Spin { .. });
    let mut jobs: Vec<(String, Job)> = Vec::new();
    let selected: Vec<Suite> = match suite {
        Suite::All => {
            let mut v: Vec<Suite> =
                Identity::ALL.iter().filter(|id| id.applicable(&sys).is_ok()).map(|&id| Suite::Identity(id)).collect();
            v.extend([Suite::Presentation, Suite::KernelIsometry, Suite::MetricPullback, Suite::Sff]);
            if is_spin {
                v.extend([Suite::GraphVariety, Suite::Rigidity]);
            }
            v
        }
        Suite::Identity(id) => {
            id.applicable(&sys)?;
            vec![suite]
        }
        Suite::GraphVariety | Suite::Rigidity if !is_spin => {
            return Err(Error::NotApplicable(format!("{suite} needs a spin factor, got {}", sys.kind())));
        }
        other => vec![other],
    };
    for s in selected {
        let sys = sys.clone();
        let spec = embedding.clone();
        let job: Job = match s {
            Suite::Identity(id) => Box::new(move || Ok(vec![run_identity_suite(&sys, id, &cfg)?])),
            Suite::Presentation => Box::new(move || Ok(vec![check_presentation_relations(&sys, &cfg)?])),
            Suite::KernelIsometry => Box::new(move || Ok(vec![check_embedding_isometry(&spec, &cfg)?])),
            Suite::MetricPullback => Box::new(move || Ok(vec![check_metric_pullback(&spec, &cfg)?])),
            Suite::Sff => Box::new(move || check_second_fundamental_form(&spec, &cfg)),
            Suite::GraphVariety => Box::new(move || Ok(vec![graph_variety_spin(&spec, &cfg)?])),
            Suite::Rigidity => Box::new(move || {
                let c = SampleConfig { radius_frac: RIGIDITY_RADIUS, ..cfg };
                Ok(vec![rigidity_convergence(&sys, &RIGIDITY_TS, &c)?])
            }),
            Suite::All => unreachable!("expanded above"),
        };
        jobs.push((s.to_string(), job));
    }
    Ok(jobs)
}

/// Run jobs on scoped threads; results come back in plan order.
pub fn run(jobs: Vec<(String, Job)>) -> Vec<(String, Result<Vec<VerificationReport>>)> {
    thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .into_iter()
            .map(|(name, job)| (name, scope.spawn(job)))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| {
                let out = h.join().unwrap_or_else(|_| Err(Error::InvalidArgument(format!("suite {name} panicked"))));
                (name, out)
            })
            .collect()
    })
}
