//! Rendering of command results as versioned JSON or fixed-column CSV.

use std::io::{self, Write};

use segre_core::grassmann::{CorollaryReport, GrassmannReport};
use segre_core::numerology::Numerology;
use segre_core::replay::ReplayReport;
use segre_core::sweep::{SweepConfig, SweepReport, SweepRow};
use segre_core::{ClassificationVerdict, SecantReport, SegreVeroneseSpec};
use serde::{Deserialize, Serialize};

use crate::Format;

pub const SCHEMA: &str = "segre-secant/1";

#[derive(Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: String,
    pub command: String,
    #[serde(flatten)]
    pub body: T,
}

/// A command result that can be written as JSON or CSV.
pub trait Rendered: Serialize {
    const COMMAND: &'static str;

    fn csv_header(&self) -> Vec<&'static str>;

    fn csv_rows(&self) -> Vec<Vec<String>>;
}

pub fn emit<T: Rendered>(format: Format, body: &T) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            let envelope = Envelope {
                schema: SCHEMA.to_string(),
                command: T::COMMAND.to_string(),
                body,
            };
            serde_json::to_writer_pretty(&mut out, &envelope)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(body.csv_header())?;
            for row in body.csv_rows() {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn secant_record(r: &SecantReport, rule: &str) -> Vec<String> {
    vec![
        r.spec.n.to_string(),
        r.spec.m.to_string(),
        r.spec.a.to_string(),
        r.spec.b.to_string(),
        r.s.to_string(),
        r.spec.ambient_dim.to_string(),
        r.expected_dim.to_string(),
        r.computed_dim.to_string(),
        r.defect.to_string(),
        rule.to_string(),
        r.prime.to_string(),
        r.seed.to_string(),
        r.trials.to_string(),
        r.method.as_str().to_string(),
    ]
}

#[derive(Serialize, Deserialize)]
pub struct DimOutput {
    pub report: SecantReport,
    pub reduction: Option<SecantReport>,
    pub classification: Option<ClassificationVerdict>,
    pub agreement: bool,
}

impl Rendered for DimOutput {
    const COMMAND: &'static str = "dim";

    fn csv_header(&self) -> Vec<&'static str> {
        SweepRow::CSV_HEADER.to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let rule = self.classification.map_or("unclassified", |c| c.rule.as_str());
        std::iter::once(&self.report)
            .chain(self.reduction.as_ref())
            .map(|r| secant_record(r, rule))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
pub struct VerifyOutput {
    pub config: SweepConfig,
    pub report: SweepReport,
}

impl Rendered for VerifyOutput {
    const COMMAND: &'static str = "verify";

    fn csv_header(&self) -> Vec<&'static str> {
        SweepRow::CSV_HEADER.to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.report.rows.iter().map(|r| r.csv_record().to_vec()).collect()
    }
}

#[derive(Serialize, Deserialize)]
pub struct ReplayOutput {
    pub report: ReplayReport,
}

impl Rendered for ReplayOutput {
    const COMMAND: &'static str = "replay";

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "a", "b", "case", "cond1", "cond3star", "cond4", "dagger", "ddagger", "g", "pass"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.report
            .cells
            .iter()
            .map(|c| {
                let case = serde_json::to_value(c.case)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default();
                vec![
                    c.n.to_string(),
                    c.a.to_string(),
                    c.b.to_string(),
                    case,
                    c.conditions.cond1.to_string(),
                    c.conditions.cond3star.to_string(),
                    c.conditions.cond4.to_string(),
                    c.route.dagger.to_string(),
                    c.route.ddagger.map(|v| v.to_string()).unwrap_or_default(),
                    c.route.g.map(|v| v.to_string()).unwrap_or_default(),
                    c.pass.to_string(),
                ]
            })
            .collect()
    }
}

const GRASSMANN_HEADER: [&str; 7] = ["n", "a", "k", "s", "expected_dim", "dim", "defect"];

#[derive(Serialize, Deserialize)]
pub struct GrassmannCorollaryOutput {
    pub report: CorollaryReport,
}

impl Rendered for GrassmannCorollaryOutput {
    const COMMAND: &'static str = "grassmann";

    fn csv_header(&self) -> Vec<&'static str> {
        GRASSMANN_HEADER.to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.report
            .defective
            .iter()
            .map(|c| {
                vec![
                    c.n.to_string(),
                    c.a.to_string(),
                    "1".to_string(),
                    c.s.to_string(),
                    c.expected_dim.to_string(),
                    c.dim.to_string(),
                    c.defect.to_string(),
                ]
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
pub struct GrassmannQueryOutput {
    pub report: GrassmannReport,
    pub monte_carlo: Option<GrassmannReport>,
}

impl Rendered for GrassmannQueryOutput {
    const COMMAND: &'static str = "grassmann";

    fn csv_header(&self) -> Vec<&'static str> {
        GRASSMANN_HEADER.to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        std::iter::once(&self.report)
            .chain(self.monte_carlo.as_ref())
            .map(|r| {
                let q = r.query;
                vec![
                    q.n.to_string(),
                    q.a.to_string(),
                    q.k.to_string(),
                    q.s.to_string(),
                    r.expected_dim.to_string(),
                    r.dim.to_string(),
                    r.defect.to_string(),
                ]
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
pub struct NumerologyOutput {
    pub spec: SegreVeroneseSpec,
    pub numerology: Numerology,
    pub e: Option<u64>,
    pub estar: Option<u64>,
    pub computed_e: Option<u64>,
    pub computed_estar: Option<u64>,
    pub agreement: bool,
}

impl Rendered for NumerologyOutput {
    const COMMAND: &'static str = "numerology";

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "m", "a", "b", "N", "q", "r", "qstar", "e", "estar", "computed_e", "computed_estar"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![vec![
            self.spec.n.to_string(),
            self.spec.m.to_string(),
            self.spec.a.to_string(),
            self.spec.b.to_string(),
            self.spec.ambient_dim.to_string(),
            self.numerology.q.to_string(),
            self.numerology.r.to_string(),
            self.numerology.qstar.to_string(),
            opt(self.e),
            opt(self.estar),
            opt(self.computed_e),
            opt(self.computed_estar),
        ]]
    }
}
