//! Grid sweeps comparing Monte-Carlo dimensions with the classification.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerology::{classify, expected_dimension, invariants};
use crate::terracini::{terracini_profile, DimensionProfile, Method, MonteCarloPlan};
use crate::variety::SegreVeroneseSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SPolicy {
    Explicit(Vec<usize>),
    /// `s = 1..=q*+1` for each spec.
    UpToQStarPlusOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_range: RangeInclusive<usize>,
    pub m_range: RangeInclusive<usize>,
    pub a_range: RangeInclusive<usize>,
    pub b_range: RangeInclusive<usize>,
    pub s_policy: SPolicy,
    pub plan: MonteCarloPlan,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_range: 1..=4,
            m_range: 1..=1,
            a_range: 1..=5,
            b_range: 1..=5,
            s_policy: SPolicy::UpToQStarPlusOne,
            plan: MonteCarloPlan::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let ranges = [
            ("n", &self.n_range),
            ("m", &self.m_range),
            ("a", &self.a_range),
            ("b", &self.b_range),
        ];
        for (name, r) in ranges {
            if r.is_empty() || *r.start() == 0 {
                return Err(Error::InvalidArgument(format!(
                    "{name} range {}..={} must be nonempty and positive",
                    r.start(),
                    r.end()
                )));
            }
        }
        match &self.s_policy {
            SPolicy::Explicit(list) if list.is_empty() => {
                return Err(Error::InvalidArgument("s list is empty".into()))
            }
            SPolicy::Explicit(list) if list.contains(&0) => {
                return Err(Error::InvalidArgument("s must be at least 1".into()))
            }
            _ => {}
        }
        self.plan.fields().map(|_| ())
    }

    pub fn specs(&self) -> Vec<SegreVeroneseSpec> {
        let mut out = Vec::new();
        for n in self.n_range.clone() {
            for m in self.m_range.clone() {
                for a in self.a_range.clone() {
                    for b in self.b_range.clone() {
                        out.extend(SegreVeroneseSpec::new(n, m, a, b));
                    }
                }
            }
        }
        out
    }

    fn s_values(&self, spec: &SegreVeroneseSpec) -> Vec<usize> {
        match &self.s_policy {
            SPolicy::Explicit(list) => list.clone(),
            SPolicy::UpToQStarPlusOne => (1..=invariants(spec).qstar as usize + 1).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Agree,
    Discrepancy,
    /// `m != 1`: no closed form to compare against.
    Unclassified,
    Error,
}

/// One `(spec, s)` cell. The first fourteen fields are the CSV columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub a: usize,
    pub b: usize,
    pub s: usize,
    #[serde(rename = "N")]
    pub ambient_dim: usize,
    pub expected_dim: usize,
    pub computed_dim: Option<usize>,
    pub defect: Option<usize>,
    pub rule: String,
    pub prime: Option<u64>,
    pub seed: u64,
    pub trials: usize,
    pub method: Method,
    pub classified_dim: Option<usize>,
    pub status: CellStatus,
    pub error: Option<String>,
}

impl SweepRow {
    pub const CSV_HEADER: [&'static str; 14] = [
        "n",
        "m",
        "a",
        "b",
        "s",
        "N",
        "expected_dim",
        "computed_dim",
        "defect",
        "rule",
        "prime",
        "seed",
        "trials",
        "method",
    ];

    pub fn csv_record(&self) -> [String; 14] {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.n.to_string(),
            self.m.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.s.to_string(),
            self.ambient_dim.to_string(),
            self.expected_dim.to_string(),
            opt(self.computed_dim),
            opt(self.defect),
            self.rule.clone(),
            self.prime.map(|p| p.to_string()).unwrap_or_default(),
            self.seed.to_string(),
            self.trials.to_string(),
            self.method.as_str().to_string(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SweepSummary {
    pub cells: usize,
    pub agreements: usize,
    pub discrepancies: usize,
    pub unclassified: usize,
    pub errors: usize,
}

impl std::fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "cells {} / agreements {} / discrepancies {}",
            self.cells, self.agreements, self.discrepancies
        )?;
        if self.unclassified > 0 {
            write!(f, " ({} unclassified)", self.unclassified)?;
        }
        if self.errors > 0 {
            write!(f, " ({} errors)", self.errors)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn discrepancies(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.status == CellStatus::Discrepancy)
    }
}

fn spec_rows(spec: &SegreVeroneseSpec, s_values: &[usize], plan: &MonteCarloPlan) -> Vec<SweepRow> {
    let s_max = s_values.iter().copied().max().unwrap_or(0);
    let profile: Result<DimensionProfile> = terracini_profile(spec, s_max, plan);
    s_values
        .iter()
        .map(|&s| {
            let expected_dim = expected_dimension(spec, s).unwrap_or(0);
            let verdict = if spec.m == 1 {
                classify(spec.n as u64, spec.a as u64, spec.b as u64, s as u64).ok()
            } else {
                None
            };
            let mut row = SweepRow {
                n: spec.n,
                m: spec.m,
                a: spec.a,
                b: spec.b,
                s,
                ambient_dim: spec.ambient_dim,
                expected_dim,
                computed_dim: None,
                defect: None,
                rule: verdict.map_or("unclassified", |v| v.rule.as_str()).to_string(),
                prime: None,
                seed: plan.seed,
                trials: plan.trials,
                method: Method::Terracini,
                classified_dim: verdict.map(|v| v.dim as usize),
                status: CellStatus::Error,
                error: None,
            };
            match &profile {
                Ok(p) => {
                    let dim = p.dim(s);
                    row.computed_dim = Some(dim);
                    row.defect = Some(expected_dim.saturating_sub(dim));
                    row.prime = Some(p.witness_prime[s - 1]);
                    row.status = match row.classified_dim {
                        Some(c) if c == dim => CellStatus::Agree,
                        Some(_) => CellStatus::Discrepancy,
                        None => CellStatus::Unclassified,
                    };
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect()
}

/// Runs every cell of the grid. Per-spec engine errors become error rows;
/// only an invalid configuration fails the whole sweep. Rows come out in
/// `(n, m, a, b, s)` order regardless of scheduling.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let rows: Vec<SweepRow> = config
        .specs()
        .par_iter()
        .map(|spec| spec_rows(spec, &config.s_values(spec), &config.plan))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let mut summary = SweepSummary {
        cells: rows.len(),
        ..Default::default()
    };
    for r in &rows {
        match r.status {
            CellStatus::Agree => summary.agreements += 1,
            CellStatus::Discrepancy => summary.discrepancies += 1,
            CellStatus::Unclassified => summary.unclassified += 1,
            CellStatus::Error => summary.errors += 1,
        }
    }
    Ok(SweepReport { rows, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_fibrations_are_defective_in_the_window() {
        let config = SweepConfig {
            n_range: 1..=4,
            a_range: 2..=2,
            b_range: 2..=2,
            ..Default::default()
        };
        let rep = run_sweep(&config).unwrap();
        assert_eq!(rep.summary.discrepancies, 0);
        for n in 1..=4 {
            let defective: Vec<usize> = rep
                .rows
                .iter()
                .filter(|r| r.n == n && r.defect.unwrap() > 0)
                .map(|r| r.s)
                .collect();
            assert_eq!(defective, (n + 2..=2 * n + 1).collect::<Vec<_>>(), "n = {n}");
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = SweepConfig {
            s_policy: SPolicy::Explicit(vec![]),
            ..Default::default()
        };
        assert!(run_sweep(&c).is_err());
        c.s_policy = SPolicy::Explicit(vec![1]);
        c.a_range = RangeInclusive::new(3, 2);
        assert!(run_sweep(&c).is_err());
        c.a_range = 1..=1;
        c.plan.primes.clear();
        assert!(run_sweep(&c).is_err());
    }

    #[test]
    fn errors_are_recorded_per_cell() {
        let mut config = SweepConfig {
            n_range: 1..=2,
            a_range: 1..=2,
            b_range: 1..=1,
            s_policy: SPolicy::Explicit(vec![2, 3]),
            ..Default::default()
        };
        config.plan.budget = 60;
        let rep = run_sweep(&config).unwrap();
        assert!(rep.summary.errors > 0);
        assert!(rep.summary.agreements > 0);
        assert_eq!(rep.summary.cells, 8);
        let err = rep.rows.iter().find(|r| r.status == CellStatus::Error).unwrap();
        assert!(err.error.as_deref().unwrap().contains('X'));
    }

    #[test]
    fn other_m_is_unclassified() {
        let config = SweepConfig {
            n_range: 1..=1,
            m_range: 2..=2,
            a_range: 1..=2,
            b_range: 1..=1,
            s_policy: SPolicy::Explicit(vec![1, 2]),
            ..Default::default()
        };
        let rep = run_sweep(&config).unwrap();
        assert_eq!(rep.summary.unclassified, 4);
        assert!(rep.rows.iter().all(|r| r.rule == "unclassified"));
    }

    #[test]
    fn deterministic_order() {
        let config = SweepConfig {
            n_range: 1..=2,
            a_range: 1..=3,
            b_range: 1..=2,
            ..Default::default()
        };
        let first = run_sweep(&config).unwrap();
        assert_eq!(first, run_sweep(&config).unwrap());
        let keys: Vec<_> = first.rows.iter().map(|r| (r.n, r.m, r.a, r.b, r.s)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
