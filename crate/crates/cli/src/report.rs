use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use addlin_core::addcode::AdditiveCode;
use addlin_core::equiv::{LinearityVerdict, PipelineRun, UndecidedReason};

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// `[n, k/2, d]^2_q`, with `k/2` written as a fraction when `k` is odd.
pub fn parameters(code: &AdditiveCode, distance: Option<usize>) -> String {
    let (n, k) = (code.n(), code.k());
    let half = if k % 2 == 0 {
        (k / 2).to_string()
    } else {
        format!("{k}/2")
    };
    match distance {
        Some(d) => format!("[{n}, {half}, {d}]^2_{}", code.spec().q()),
        None => format!("[{n}, {half}]^2_{}", code.spec().q()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageTiming {
    pub stage: &'static str,
    pub ms: f64,
}

/// Everything `test` learned about one input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub input: String,
    pub digest: String,
    pub n: usize,
    pub k: usize,
    pub parameters: String,
    pub distance: Option<usize>,
    pub punctured: Vec<usize>,
    /// Rank of every block column, original numbering; 0 for punctured ones.
    pub block_ranks: Vec<usize>,
    pub s_shape: Option<(usize, usize)>,
    pub nullity: Option<usize>,
    pub verdict: &'static str,
    pub reason: String,
    pub witness: Option<String>,
    pub timings: Vec<StageTiming>,
}

impl VerdictReport {
    pub fn new(
        input: &Path,
        bytes: &[u8],
        code: &AdditiveCode,
        run: &PipelineRun,
        distance: Option<usize>,
    ) -> Self {
        let mut ranks = vec![0; code.n()];
        for &(i, r) in &run.trace.block_ranks {
            ranks[i - 1] = r;
        }
        VerdictReport {
            input: input.display().to_string(),
            digest: digest(bytes),
            n: code.n(),
            k: code.k(),
            parameters: parameters(code, distance),
            distance,
            punctured: run.trace.punctured.clone(),
            block_ranks: ranks,
            s_shape: run.trace.s_shape,
            nullity: run.trace.nullity,
            verdict: run.verdict.tag(),
            reason: reason(&run.verdict),
            witness: None,
            timings: run
                .trace
                .timings
                .iter()
                .map(|(s, d)| StageTiming {
                    stage: s.name(),
                    ms: d.as_secs_f64() * 1e3,
                })
                .collect(),
        }
    }

    /// The report with timings removed, for reproducibility checks.
    pub fn without_timings(&self) -> Self {
        VerdictReport {
            timings: Vec::new(),
            ..self.clone()
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "input       {}", self.input).unwrap();
        writeln!(out, "digest      {}", self.digest).unwrap();
        writeln!(out, "parameters  {}", self.parameters).unwrap();
        if !self.punctured.is_empty() {
            writeln!(out, "punctured   {:?}", self.punctured).unwrap();
        }
        let deficient: Vec<String> = self
            .block_ranks
            .iter()
            .enumerate()
            .filter(|(i, &r)| r < 2 && !self.punctured.contains(&(i + 1)))
            .map(|(i, r)| format!("G_{}: {r}", i + 1))
            .collect();
        if deficient.is_empty() {
            writeln!(out, "blocks      all rank 2").unwrap();
        } else {
            writeln!(out, "blocks      rank-deficient {}", deficient.join(", ")).unwrap();
        }
        if let Some((r, c)) = self.s_shape {
            writeln!(out, "S           {r} x {c}").unwrap();
        }
        if let Some(d) = self.nullity {
            writeln!(out, "nullity     {d}").unwrap();
        }
        writeln!(out, "verdict     {} ({})", self.verdict, self.reason).unwrap();
        if let Some(w) = &self.witness {
            writeln!(out, "witness     {w}").unwrap();
        }
        let t: Vec<String> = self
            .timings
            .iter()
            .map(|t| format!("{} {:.3}ms", t.stage, t.ms))
            .collect();
        if !t.is_empty() {
            writeln!(out, "timings     {}", t.join(", ")).unwrap();
        }
        out
    }
}

pub fn reason(v: &LinearityVerdict) -> String {
    match v {
        LinearityVerdict::StrictlyAdditive(r) => r.to_string(),
        LinearityVerdict::EquivalentToLinear { witness, .. } => format!(
            "witness for a linear [{}, {}] code",
            witness.linear_generator.n(),
            witness.linear_generator.dim()
        ),
        LinearityVerdict::Undecided(UndecidedReason::SearchBudgetExceeded(d)) => {
            format!("search over nullity {d} exceeds the budget")
        }
    }
}
