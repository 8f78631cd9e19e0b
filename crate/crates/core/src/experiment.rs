//! Seeded experiments on open questions, written as JSON-lines reports.
//!
//! A report is a header line, one record per trial in trial order, and a summary line.
//! Each record embeds its input instance, so [`replay_record`] can recompute the outcome
//! from that line alone.
//!
//! Targets:
//! - `powers`: a random cwp ideal `I` and a power `k`; searches for a linear-quotients
//!   order of `I^k`. A proof that none exists is a counterexample.
//! - `socle`: a random polymatroidal ideal; checks that its socle is polymatroidal.
//! - `cwlq-vs-lq`: a random ideal with componentwise linear quotients; searches for a
//!   linear-quotients order of the whole ideal.

use std::fmt;
use std::io::{BufRead, Write};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructors::socle;
use crate::error::{Error, Result};
use crate::ideal::{EquigeneratedIdeal, MonomialIdeal};
use crate::monomial::Monomial;
use crate::io::{rows, IdealJson, WitnessJson};
use crate::linear_quotients::{
    has_componentwise_linear_quotients, search_lq_order, SearchOutcome, SearchStatus,
    DEFAULT_SEARCH_BUDGET,
};
use crate::polymatroid::{is_componentwise_polymatroidal, is_polymatroidal};
use crate::random::{random_cwp, random_ideal, random_polymatroidal, trial_rng, Family, SizeParams};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Draws per trial when sampling ideals with componentwise linear quotients.
const CWLQ_ATTEMPTS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Powers,
    Socle,
    CwlqVsLq,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::Powers => "powers",
            Target::Socle => "socle",
            Target::CwlqVsLq => "cwlq-vs-lq",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentParams {
    pub sizes: SizeParams,
    /// Largest power tried by the `powers` target; powers are drawn from `2..=max_power`.
    pub max_power: u32,
    /// Generators per draw for `cwlq-vs-lq`.
    pub max_gens: usize,
    pub budget: u64,
}

impl Default for ExperimentParams {
    fn default() -> Self {
        ExperimentParams {
            sizes: SizeParams::default(),
            max_power: 3,
            max_gens: 4,
            budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub kind: String,
    pub version: String,
    pub target: Target,
    pub seed: u64,
    pub trials: u64,
    pub params: ExperimentParams,
}

/// The three-way verdict of a trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Consistent,
    Counterexample,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "target", rename_all = "kebab-case")]
pub enum Outcome {
    Powers {
        power_generators: usize,
        status: String,
        order: Option<Vec<Vec<u32>>>,
    },
    Socle {
        socle: IdealJson,
        polymatroidal: bool,
        witness: Option<WitnessJson>,
    },
    CwlqVsLq {
        /// Whether the sampled ideal has componentwise linear quotients; when false no
        /// qualifying ideal was found within the draw limit.
        cwlq: bool,
        status: Option<String>,
        order: Option<Vec<Vec<u32>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub kind: String,
    pub trial: u64,
    pub family: Family,
    pub instance: IdealJson,
    /// The exponent `k` for the `powers` target.
    pub power: Option<u32>,
    pub budget: u64,
    pub verdict: Verdict,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub kind: String,
    pub trials: u64,
    pub consistent: u64,
    pub counterexamples: u64,
    pub inconclusive: u64,
    pub counterexample_trials: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub header: Header,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", serde_json::to_string(&self.header)?)?;
        for r in &self.records {
            writeln!(w, "{}", serde_json::to_string(r)?)?;
        }
        writeln!(w, "{}", serde_json::to_string(&self.summary)?)?;
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Report> {
        let mut lines = Vec::new();
        for line in r.lines() {
            let line = line.map_err(|e| Error::Io {
                path: "report".into(),
                reason: e.to_string(),
            })?;
            if !line.trim().is_empty() {
                lines.push(line);
            }
        }
        if lines.len() < 2 {
            return Err(Error::Json("report needs a header and a summary line".into()));
        }
        let parse = |s: &str| -> Result<serde_json::Value> {
            serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
        };
        let header: Header = serde_json::from_value(parse(&lines[0])?)
            .map_err(|e| Error::Json(e.to_string()))?;
        let summary: Summary = serde_json::from_value(parse(&lines[lines.len() - 1])?)
            .map_err(|e| Error::Json(e.to_string()))?;
        let records = lines[1..lines.len() - 1]
            .iter()
            .map(|l| serde_json::from_str(l).map_err(|e| Error::Json(e.to_string())))
            .collect::<Result<Vec<Record>>>()?;
        Ok(Report {
            header,
            records,
            summary,
        })
    }
}

fn search_fields(outcome: &SearchOutcome) -> (String, Option<Vec<Vec<u32>>>) {
    let order = match outcome {
        SearchOutcome::Found(o) => Some(rows(&o.order)),
        _ => None,
    };
    (outcome.status().as_str().to_string(), order)
}

fn search_verdict(status: SearchStatus) -> Verdict {
    match status {
        SearchStatus::Found => Verdict::Consistent,
        SearchStatus::NoneFound => Verdict::Counterexample,
        SearchStatus::BudgetExhausted => Verdict::Inconclusive,
    }
}

/// Computes the outcome of one trial from its input alone.
pub fn evaluate(target: Target, instance: &MonomialIdeal, power: Option<u32>, budget: u64) -> Result<(Verdict, Outcome)> {
    match target {
        Target::Powers => {
            let k = power.ok_or_else(|| Error::InvalidArgument("powers record without power".into()))?;
            let powered = instance.power(k);
            let outcome = search_lq_order(&powered, budget);
            let (status, order) = search_fields(&outcome);
            Ok((
                search_verdict(outcome.status()),
                Outcome::Powers {
                    power_generators: powered.num_gens(),
                    status,
                    order,
                },
            ))
        }
        Target::Socle => {
            let e = EquigeneratedIdeal::try_from(instance.clone())?;
            let soc = socle(&e)?;
            let verdict = is_polymatroidal(&soc);
            Ok((
                if verdict.holds() {
                    Verdict::Consistent
                } else {
                    Verdict::Counterexample
                },
                Outcome::Socle {
                    socle: IdealJson::from(soc.as_ideal()),
                    polymatroidal: verdict.holds(),
                    witness: verdict.witness().map(WitnessJson::from),
                },
            ))
        }
        Target::CwlqVsLq => {
            if !has_componentwise_linear_quotients(instance, budget).holds() {
                return Ok((
                    Verdict::Inconclusive,
                    Outcome::CwlqVsLq {
                        cwlq: false,
                        status: None,
                        order: None,
                    },
                ));
            }
            let outcome = search_lq_order(instance, budget);
            let (status, order) = search_fields(&outcome);
            Ok((
                search_verdict(outcome.status()),
                Outcome::CwlqVsLq {
                    cwlq: true,
                    status: Some(status),
                    order,
                },
            ))
        }
    }
}

/// Draws the input of one trial: `(family, instance, power)`.
pub fn draw(target: Target, seed: u64, trial: u64, params: &ExperimentParams) -> (Family, MonomialIdeal, Option<u32>) {
    let mut rng = trial_rng(seed, trial);
    match target {
        Target::Powers => {
            let inst = random_cwp(&mut rng, params.sizes);
            let k = rng.gen_range(2..=params.max_power.max(2));
            (inst.family, inst.ideal, Some(k))
        }
        Target::Socle => {
            let (family, e) = random_polymatroidal(&mut rng, params.sizes);
            (family, e.into_ideal(), None)
        }
        Target::CwlqVsLq => {
            let mut last = None;
            for _ in 0..CWLQ_ATTEMPTS {
                let i = random_ideal(&mut rng, params.sizes, params.max_gens);
                let cwlq = has_componentwise_linear_quotients(&i, params.budget).holds();
                if cwlq && !is_componentwise_polymatroidal(&i).holds() {
                    return (Family::Unstructured, i, None);
                }
                last = Some(i);
            }
            (Family::Unstructured, last.expect("at least one attempt"), None)
        }
    }
}

/// Runs `trials` seeded trials in parallel and collects them in trial order.
pub fn run(target: Target, trials: u64, seed: u64, params: ExperimentParams) -> Result<Report> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let records = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let (family, ideal, power) = draw(target, seed, trial, &params);
            let (verdict, outcome) = evaluate(target, &ideal, power, params.budget)?;
            Ok(Record {
                kind: "record".into(),
                trial,
                family,
                instance: IdealJson::from(&ideal),
                power,
                budget: params.budget,
                verdict,
                outcome,
            })
        })
        .collect::<Result<Vec<Record>>>()?;
    let count = |v: Verdict| records.iter().filter(|r| r.verdict == v).count() as u64;
    let summary = Summary {
        kind: "summary".into(),
        trials,
        consistent: count(Verdict::Consistent),
        counterexamples: count(Verdict::Counterexample),
        inconclusive: count(Verdict::Inconclusive),
        counterexample_trials: records
            .iter()
            .filter(|r| r.verdict == Verdict::Counterexample)
            .map(|r| r.trial)
            .collect(),
    };
    Ok(Report {
        header: Header {
            kind: "header".into(),
            version: REPORT_VERSION.into(),
            target,
            seed,
            trials,
            params,
        },
        records,
        summary,
    })
}

/// Recomputes a record from its embedded instance; returns whether verdict and outcome
/// match what was recorded.
pub fn replay_record(target: Target, record: &Record) -> Result<bool> {
    let ideal = MonomialIdeal::try_from(record.instance.clone())?;
    let (verdict, outcome) = evaluate(target, &ideal, record.power, record.budget)?;
    Ok(verdict == record.verdict && outcome == record.outcome)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplaySummary {
    pub records: usize,
    pub mismatched_trials: Vec<u64>,
    /// Trials whose regenerated input differs from the embedded instance.
    pub regenerated_mismatches: Vec<u64>,
}

impl ReplaySummary {
    pub fn all_match(&self) -> bool {
        self.mismatched_trials.is_empty() && self.regenerated_mismatches.is_empty()
    }
}

/// Replays every record and also regenerates each trial's input from the header seed.
pub fn replay(report: &Report) -> Result<ReplaySummary> {
    let target = report.header.target;
    let checks = report
        .records
        .par_iter()
        .map(|r| {
            let same = replay_record(target, r)?;
            let (_, ideal, power) = draw(target, report.header.seed, r.trial, &report.header.params);
            let regenerated = IdealJson::from(&ideal) == r.instance && power == r.power;
            Ok((r.trial, same, regenerated))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReplaySummary {
        records: checks.len(),
        mismatched_trials: checks.iter().filter(|c| !c.1).map(|c| c.0).collect(),
        regenerated_mismatches: checks.iter().filter(|c| !c.2).map(|c| c.0).collect(),
    })
}

/// Human-readable line for a counterexample record.
pub fn describe_counterexample(target: Target, record: &Record) -> String {
    let gens: Vec<String> = record
        .instance
        .generators
        .iter()
        .map(|g| Monomial::new(g.clone()).to_string())
        .collect();
    let extra = match &record.outcome {
        Outcome::Socle {
            witness: Some(w), ..
        } => format!(" witness u={:?} v={:?} i={}", w.u, w.v, w.i),
        _ => String::new(),
    };
    format!(
        "COUNTEREXAMPLE target={target} trial={} family={} power={:?} ideal=({}){extra}",
        record.trial,
        record.family,
        record.power,
        gens.join(", ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentParams {
        ExperimentParams {
            sizes: SizeParams {
                max_vars: 3,
                max_degree: 2,
            },
            max_power: 2,
            max_gens: 3,
            budget: 10_000,
        }
    }

    #[test]
    fn reports_are_deterministic_and_replay() {
        for target in [Target::Powers, Target::Socle, Target::CwlqVsLq] {
            let a = run(target, 8, 3, small()).unwrap();
            let b = run(target, 8, 3, small()).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.records.len(), 8);
            assert!(a.records.iter().enumerate().all(|(i, r)| r.trial == i as u64));
            let mut bytes = Vec::new();
            a.write_jsonl(&mut bytes).unwrap();
            let back = Report::read_jsonl(bytes.as_slice()).unwrap();
            assert_eq!(back, a);
            assert!(replay(&back).unwrap().all_match());
        }
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(matches!(
            run(Target::Socle, 0, 1, small()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn evaluate_examples() {
        let squares = MonomialIdeal::minimalize(
            2,
            [
                Monomial::new(vec![1, 0]),
                Monomial::new(vec![0, 1]),
            ],
        )
        .unwrap();
        let (v, out) = evaluate(Target::Powers, &squares, Some(2), 1000).unwrap();
        assert_eq!(v, Verdict::Consistent);
        assert!(matches!(out, Outcome::Powers { power_generators: 3, .. }));

        let (v, out) = evaluate(Target::Socle, &MonomialIdeal::maximal(3).power(2), None, 0).unwrap();
        assert_eq!(v, Verdict::Consistent);
        let Outcome::Socle { socle, .. } = out else { panic!() };
        assert_eq!(socle.generators.len(), 3);
    }

    #[test]
    fn tampered_record_fails_replay() {
        let report = run(Target::Socle, 3, 9, small()).unwrap();
        let mut r = report.records[0].clone();
        r.verdict = Verdict::Counterexample;
        assert!(!replay_record(Target::Socle, &r).unwrap());
    }
}
