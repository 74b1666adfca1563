//! The verification runner.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{axiom_suite, random_assertions, AlgebraModel};
use crate::atoms::{atom_separoid_suite, atom_set_algebra_suite, enum_lex_atoms, ATOM_SUITE_LIMIT};
use crate::desirability::{
    check_coherence_axioms, check_maximality_sampled, closure, is_coherent_extension, is_strictly_desirable_event_set,
    natural_extension_contains_zero, SetKind, SetRep,
};
use crate::embeddings::{
    event_hom_suite, saturation_lemma_suite, set_algebra_extraction_suite, EVENT_SIZE_LIMIT, SATURATION_SIZE_LIMIT,
};
use crate::error::{Error, Result};
use crate::partition::{quasi_separoid_suite, SEPAROID_SIZE_LIMIT};
use crate::report::Report;
use crate::sampling::Sampler;
use crate::space::anonymous_space;

use super::model::LoadedModel;

pub const AXIOM_SIZE_LIMIT: usize = 5;
pub const COHERENCE_SIZE_LIMIT: usize = 5;
/// Pool size for the atom set-algebra suite.
pub const ATOM_POOL_SIZE: usize = 6;
/// Random models used by the axiom suite when no model file is given.
pub const RANDOM_AXIOM_MODELS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    Separoid,
    Saturation,
    SetExtraction,
    EventHom,
    AtomSeparoid,
    AtomSetAlgebra,
    Coherence,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Axioms,
        Suite::Separoid,
        Suite::Saturation,
        Suite::SetExtraction,
        Suite::EventHom,
        Suite::AtomSeparoid,
        Suite::AtomSetAlgebra,
        Suite::Coherence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Separoid => "separoid",
            Suite::Saturation => "saturation",
            Suite::SetExtraction => "set-extraction",
            Suite::EventHom => "event-hom",
            Suite::AtomSeparoid => "atom-separoid",
            Suite::AtomSetAlgebra => "atom-set-algebra",
            Suite::Coherence => "coherence",
        }
    }

    pub fn size_limit(self) -> usize {
        match self {
            Suite::Axioms => AXIOM_SIZE_LIMIT,
            Suite::Separoid => SEPAROID_SIZE_LIMIT,
            Suite::Saturation => SATURATION_SIZE_LIMIT,
            Suite::SetExtraction | Suite::EventHom => EVENT_SIZE_LIMIT,
            Suite::AtomSeparoid | Suite::AtomSetAlgebra => ATOM_SUITE_LIMIT,
            Suite::Coherence => COHERENCE_SIZE_LIMIT,
        }
    }
}

/// Parses a comma-separated suite list; `all` expands to every suite.
pub fn parse_suites(list: &str) -> Result<Vec<Suite>> {
    let mut out = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name == "all" {
            out.extend(Suite::ALL);
            continue;
        }
        let suite = Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{name}`")))?;
        out.push(suite);
    }
    if out.is_empty() {
        return Err(Error::Parse("no suites requested".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub suites: Vec<Suite>,
    pub size_limit: usize,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub model_digest: String,
    pub seed: u64,
    pub size_limit: usize,
    pub samples: usize,
    pub closure_additions: Vec<String>,
    pub suites: Vec<Report>,
    pub asserted_failures: usize,
    pub exit_status: i32,
}

impl RunReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }
}

/// Rejects size limits beyond any requested suite's bound before anything runs.
pub fn check_limits(opts: &VerifyOptions) -> Result<()> {
    if opts.size_limit == 0 {
        return Err(Error::LimitExceeded {
            what: "size limit (must be at least 1)",
            requested: 0,
            max: 0,
        });
    }
    for suite in &opts.suites {
        if opts.size_limit > suite.size_limit() {
            return Err(Error::LimitExceeded {
                what: suite.name(),
                requested: opts.size_limit,
                max: suite.size_limit(),
            });
        }
    }
    Ok(())
}

pub fn run_verify(opts: &VerifyOptions, model: Option<&LoadedModel>) -> Result<RunReport> {
    check_limits(opts)?;
    let reports: Vec<Report> = opts
        .suites
        .par_iter()
        .map(|&suite| run_suite(suite, opts, model).map(|r| r.finish()))
        .collect::<Result<_>>()?;
    let asserted_failures = reports.iter().map(|r| r.failed).sum();
    Ok(RunReport {
        tool: "cohera".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        model_digest: model.map_or_else(|| "none".into(), |m| m.digest.clone()),
        seed: opts.seed,
        size_limit: opts.size_limit,
        samples: opts.samples,
        closure_additions: model.map_or_else(Vec::new, |m| m.closure_additions().to_vec()),
        suites: reports,
        asserted_failures,
        exit_status: if asserted_failures == 0 { 0 } else { 1 },
    })
}

fn named(mut report: Report, suite: Suite) -> Report {
    report.suite = suite.name().into();
    report
}

fn run_suite(suite: Suite, opts: &VerifyOptions, model: Option<&LoadedModel>) -> Result<Report> {
    let n = opts.size_limit;
    let report = match suite {
        Suite::Axioms => match model {
            Some(m) => axiom_suite(&m.model, opts.samples, opts.seed),
            None => {
                let mut report = Report::new("axioms");
                for i in 0..RANDOM_AXIOM_MODELS as u64 {
                    let m = AlgebraModel::random(n, 3, opts.seed.wrapping_add(i))?;
                    report.merge(axiom_suite(&m, opts.samples, opts.seed.wrapping_add(i)));
                }
                report
            }
        },
        Suite::Separoid => quasi_separoid_suite(n)?,
        Suite::Saturation => saturation_lemma_suite(n)?,
        Suite::SetExtraction => set_algebra_extraction_suite(n)?,
        Suite::EventHom => event_hom_suite(n)?,
        Suite::AtomSeparoid => atom_separoid_suite(n)?,
        Suite::AtomSetAlgebra => atom_set_algebra_suite(n, ATOM_POOL_SIZE)?,
        Suite::Coherence => coherence_suite(n, model, opts.samples, opts.seed)?,
    };
    Ok(named(report, suite))
}

/// Coherence audits of model sets (or a sampled pool), maximality of
/// lexicographic atoms, strict desirability of event sets, and the reduced
/// coherence LP against the unreduced one.
pub fn coherence_suite(n: usize, model: Option<&LoadedModel>, samples: usize, seed: u64) -> Result<Report> {
    let mut sampler = Sampler::new(seed);
    let (space, pool): (_, Vec<SetRep>) = match model {
        Some(m) => (
            m.space().clone(),
            m.model.sets().iter().map(|(_, d)| d.clone()).collect(),
        ),
        None => {
            let space = anonymous_space(n)?;
            let mut pool = vec![SetRep::unit(&space)];
            for _ in 0..3 {
                let k = random_assertions(&space, 1 + sampler.index(6), &mut sampler);
                pool.push(closure(&space, &k)?);
            }
            let atoms = enum_lex_atoms(&space)?;
            for i in 0..atoms.len().min(6) {
                pool.push(atoms.set_rep(i * atoms.len() / atoms.len().min(6)));
            }
            for _ in 0..3 {
                pool.push(SetRep::event(&sampler.nonempty_event(&space)));
            }
            (space, pool)
        }
    };
    let reports: Vec<Report> = pool
        .par_iter()
        .enumerate()
        .filter(|(_, d)| !d.is_top())
        .map(|(i, d)| -> Result<Report> {
            let seed = seed.wrapping_add(i as u64);
            let mut r = check_coherence_axioms(d, samples, seed)?;
            match d.kind() {
                SetKind::LexAtom(_) => r.merge(check_maximality_sampled(d, samples, seed)?),
                SetKind::EventSet(s) if !s.is_empty() => r.merge(is_strictly_desirable_event_set(s, samples, seed)?),
                _ => {}
            }
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let mut report = Report::new("coherence");
    reports.into_iter().for_each(|r| report.merge(r));
    for _ in 0..samples {
        let k = random_assertions(&space, 1 + sampler.index(4), &mut sampler);
        let reduced = is_coherent_extension(&k)?;
        let unreduced = !natural_extension_contains_zero(&k, &space)?;
        report.check(
            "coherence-lp",
            reduced == unreduced,
            || format!("K={k:?}"),
            || format!("reduced={reduced} unreduced={unreduced}"),
        );
    }
    Ok(report)
}
