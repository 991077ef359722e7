//! Batch reproduction of published tables from a TOML manifest.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use addlin_core::addcode::AdditiveCode;
use addlin_core::equiv::{self, LinearityVerdict, SMatrix, SearchOptions, StrictReason};
use addlin_core::qc;

use crate::format;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub row: Vec<Row>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    /// Depends only on data printed in full; a mismatch is fatal.
    #[default]
    Core,
    /// Depends on an extension or augmentation convention; mismatches are
    /// reported but do not fail the run.
    Convention,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub enum Source {
    Qc(PathBuf),
    Code(PathBuf),
    Linear(PathBuf),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Expect {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub d: Option<usize>,
    /// Nullity of `S` as computed by the pipeline (all blocks rank 2).
    pub nullity: Option<usize>,
    /// Nullity of `S` assembled without the rank-2 precondition.
    pub raw_nullity: Option<usize>,
    pub rank_one: Option<usize>,
    pub verdict: Option<String>,
    pub acd: Option<bool>,
    /// Hermitian LCD property of the linear code found by the search.
    pub lcd: Option<bool>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Row {
    pub table: String,
    pub line: String,
    pub label: String,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub source: Option<Source>,
    /// Applied in order: `extend`, `augment-ones`, `shorten:<position>`.
    #[serde(default)]
    pub transform: Vec<String>,
    #[serde(default)]
    pub tier: Tier,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail { mismatches: Vec<String> },
    SkippedNoData,
    BudgetExceeded { needed: String, budget: u64 },
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail { .. } => write!(f, "FAIL"),
            Status::SkippedNoData => write!(f, "SKIPPED(no-data)"),
            Status::BudgetExceeded { .. } => write!(f, "BudgetExceeded"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowResult {
    pub table: String,
    pub line: String,
    pub label: String,
    pub tier: Tier,
    #[serde(flatten)]
    pub status: Status,
    pub parameters: Option<String>,
    pub nullity: Option<usize>,
    pub raw_nullity: Option<usize>,
    pub verdict: Option<&'static str>,
    pub reason: Option<String>,
}

impl RowResult {
    /// Fails the run: a core-tier mismatch.
    pub fn is_fatal(&self) -> bool {
        self.tier == Tier::Core && matches!(self.status, Status::Fail { .. })
    }

    pub fn to_text(&self) -> String {
        let tag = match (&self.status, self.tier) {
            (Status::Fail { .. }, Tier::Convention) => "FAIL(convention)".to_string(),
            (s, _) => s.to_string(),
        };
        let mut line = format!("{tag:<18} table {} line {:<4} {}", self.table, self.line, self.label);
        if let Some(p) = &self.parameters {
            line.push_str(&format!("  {p}"));
        }
        if let Some(d) = self.nullity.or(self.raw_nullity) {
            line.push_str(&format!("  nullity {d}"));
        }
        if let Some(r) = &self.reason {
            line.push_str(&format!("  {r}"));
        }
        match &self.status {
            Status::Fail { mismatches } => {
                for m in mismatches {
                    line.push_str(&format!("\n    {m}"));
                }
            }
            Status::BudgetExceeded { needed, budget } => {
                line.push_str(&format!("\n    distance needs {needed} codewords, budget {budget}"));
            }
            _ => {}
        }
        line
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub search: u64,
    pub distance: u64,
}

pub fn load_manifest(path: &Path) -> anyhow::Result<Manifest> {
    let text = fs::read_to_string(path)?;
    Ok(toml::from_str(&text)?)
}

/// Runs every row; results keep manifest order.
pub fn verify(manifest: &Manifest, base: &Path, budgets: Budgets) -> Vec<RowResult> {
    manifest
        .row
        .par_iter()
        .map(|row| verify_row(row, base, budgets))
        .collect()
}

fn load(source: &Source, base: &Path) -> anyhow::Result<AdditiveCode> {
    let read = |p: &PathBuf| fs::read_to_string(base.join(p));
    Ok(match source {
        Source::Qc(p) => qc::build_qc_additive(&format::parse_qc_spec(&read(p)?)?)?,
        Source::Code(p) => format::parse_code(&read(p)?, false)?,
        Source::Linear(p) => format::parse_linear(&read(p)?)?.to_additive(),
    })
}

pub fn apply_transform(code: &AdditiveCode, t: &str) -> anyhow::Result<AdditiveCode> {
    Ok(match t {
        "extend" => qc::extend(code),
        "augment-ones" => qc::augment_all_ones(code),
        _ => match t.strip_prefix("shorten:") {
            Some(pos) => qc::shorten(code, pos.parse()?)?,
            None => anyhow::bail!("unknown transform `{t}`"),
        },
    })
}

fn verify_row(row: &Row, base: &Path, budgets: Budgets) -> RowResult {
    let mut result = RowResult {
        table: row.table.clone(),
        line: row.line.clone(),
        label: row.label.clone(),
        tier: row.tier,
        status: Status::SkippedNoData,
        parameters: None,
        nullity: None,
        raw_nullity: None,
        verdict: None,
        reason: None,
    };
    let Some(source) = &row.source else {
        return result;
    };
    let mut mismatches = Vec::new();
    match check(row, source, base, budgets, &mut result, &mut mismatches) {
        Ok(budget_hit) => {
            result.status = if !mismatches.is_empty() {
                Status::Fail { mismatches }
            } else if let Some((needed, budget)) = budget_hit {
                Status::BudgetExceeded { needed, budget }
            } else {
                Status::Pass
            };
        }
        Err(e) => {
            mismatches.push(format!("error: {e:#}"));
            result.status = Status::Fail { mismatches };
        }
    }
    result
}

fn expect_eq<T: PartialEq + fmt::Debug>(out: &mut Vec<String>, what: &str, expected: Option<T>, got: T) {
    if let Some(e) = expected {
        if e != got {
            out.push(format!("{what}: expected {e:?}, got {got:?}"));
        }
    }
}

fn check(
    row: &Row,
    source: &Source,
    base: &Path,
    budgets: Budgets,
    result: &mut RowResult,
    mismatches: &mut Vec<String>,
) -> anyhow::Result<Option<(String, u64)>> {
    let mut code = load(source, base)?;
    for t in &row.transform {
        code = apply_transform(&code, t)?;
    }
    let e = &row.expect;
    expect_eq(mismatches, "n", e.n, code.n());
    expect_eq(mismatches, "k", e.k, code.k());

    let run = equiv::run_pipeline(&code, SearchOptions { budget: budgets.search })?;
    if let Some(w) = run.verdict.witness() {
        w.verify(&code)?;
    }
    result.nullity = run.trace.nullity;
    result.verdict = Some(run.verdict.tag());
    result.reason = Some(crate::report::reason(&run.verdict));
    expect_eq(mismatches, "nullity", e.nullity, run.trace.nullity.unwrap_or(usize::MAX));
    expect_eq(mismatches, "verdict", e.verdict.as_deref(), run.verdict.tag());
    if let Some(i) = e.rank_one {
        let got = match run.verdict {
            LinearityVerdict::StrictlyAdditive(StrictReason::RankOneBlock(j)) => Some(j),
            _ => None,
        };
        expect_eq(mismatches, "rank-one block", Some(Some(i)), got);
    }
    if e.raw_nullity.is_some() {
        let (punctured, _) = equiv::puncture_zero_blocks(&code)?;
        let raw = SMatrix::assemble(&punctured).nullity();
        result.raw_nullity = Some(raw);
        expect_eq(mismatches, "raw nullity", e.raw_nullity, raw);
    }
    if let Some(acd) = e.acd {
        expect_eq(mismatches, "acd", Some(acd), code.is_acd());
    }
    if let Some(lcd) = e.lcd {
        match run.verdict.witness() {
            Some(w) => expect_eq(mismatches, "hermitian lcd", Some(lcd), w.linear_generator.hermitian_lcd()),
            None => mismatches.push("hermitian lcd: no linear code was produced".into()),
        }
    }
    let mut budget_hit = None;
    let mut distance = None;
    if let Some(d) = e.d {
        match code.min_distance(budgets.distance) {
            Ok(got) => {
                distance = Some(got);
                expect_eq(mismatches, "d", Some(d), got);
            }
            Err(addlin_core::Error::BudgetExceeded { needed, budget }) => {
                budget_hit = Some((needed.to_string(), budget));
            }
            Err(other) => return Err(other.into()),
        }
    }
    result.parameters = Some(crate::report::parameters(&code, distance));
    Ok(budget_hit)
}
