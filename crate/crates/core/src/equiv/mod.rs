//! Deciding whether an additive code is equivalent to an `F_{q^2}`-linear one.
//!
//! The test looks for `R` and `T_1, …, T_n` with `R·G_i = G_i·T_i` for every
//! block column `G_i`. Such pairs form the null space of a single matrix `S`;
//! a code is equivalent to a linear one iff some `R` in that space satisfies
//! the minimal polynomial of `ω`.

mod oracle;
mod search;
mod verdict;


use std::ops::Range;
use std::time::{Duration, Instant};

pub use oracle::{block_group, oracle_equivalent_to_linear, OracleLimits};
pub use search::{conjugator, satisfies_min_poly, search_witness, SearchOptions};
pub use verdict::{LinearityVerdict, StrictReason, UndecidedReason, Witness};

use crate::addcode::AdditiveCode;
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::linalg::GfMatrix;

/// Largest `q^d` enumerated by default.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 24;

/// Removes all-zero block columns. Returns the shortened code and the
/// removed coordinates (1-based).
pub fn puncture_zero_blocks(code: &AdditiveCode) -> Result<(AdditiveCode, Vec<usize>)> {
    let g = code.generator();
    let mut keep = Vec::new();
    let mut removed = Vec::new();
    for i in 0..code.n() {
        let zero = g.row_iter().all(|r| r[2 * i] == 0 && r[2 * i + 1] == 0);
        if zero {
            removed.push(i + 1);
        } else {
            keep.extend([2 * i, 2 * i + 1]);
        }
    }
    if keep.is_empty() {
        return Err(Error::AllCoordinatesZero);
    }
    let punctured = AdditiveCode::from_full_rank(*code.spec(), g.select_columns(&keep))?;
    Ok((punctured, removed))
}

/// The `2nk × (k² + 4n)` system whose null space is
/// `{(vec R, vec T_1, …, vec T_n) : R·G_i = G_i·T_i}`.
#[derive(Clone, Debug)]
pub struct SMatrix {
    matrix: GfMatrix,
    n: usize,
    k: usize,
}

impl SMatrix {
    /// Requires every block column to have rank 2.
    pub fn build(code: &AdditiveCode) -> Result<SMatrix> {
        if let Some(b) = code.block_columns().into_iter().find(|b| b.rank != 2) {
            return Err(Error::RankDeficientBlock {
                index: b.index,
                rank: b.rank,
            });
        }
        Ok(Self::assemble(code))
    }

    /// Same layout without the rank precondition. A block of rank `r < 2`
    /// leaves `2(2 − r)` extra free entries in `T_i`, which show up in the
    /// nullity.
    pub fn assemble(code: &AdditiveCode) -> SMatrix {
        let f = code.spec().base();
        let (n, k) = (code.n(), code.k());
        let mut s = GfMatrix::zeros(f, 2 * n * k, k * k + 4 * n);
        let id_k = GfMatrix::identity(f, k);
        let id_2 = GfMatrix::identity(f, 2);
        for b in code.block_columns() {
            let i = b.index - 1;
            let left = b.matrix.transpose().kron(&id_k);
            let right = -&id_2.kron(&b.matrix);
            s.set_block(2 * k * i, 0, &left);
            s.set_block(2 * k * i, k * k + 4 * i, &right);
        }
        SMatrix { matrix: s, n, k }
    }

    pub fn matrix(&self) -> &GfMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> (usize, usize) {
        self.matrix.shape()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r_columns(&self) -> Range<usize> {
        0..self.k * self.k
    }

    /// Columns holding `vec T_i` (1-based `i`).
    pub fn t_columns(&self, i: usize) -> Range<usize> {
        let start = self.k * self.k + 4 * (i - 1);
        start..start + 4
    }

    pub fn nullity(&self) -> usize {
        self.matrix.nullity()
    }

    /// Rows form a basis of the null space.
    pub fn null_basis(&self) -> GfMatrix {
        self.matrix.null_space()
    }

    /// Splits a null vector into `R` and `T_1, …, T_n`.
    pub fn unpack(&self, x: &[Fq]) -> (GfMatrix, Vec<GfMatrix>) {
        let f = self.matrix.field();
        let r = GfMatrix::unvec(f, &x[self.r_columns()], self.k, self.k);
        let ts = (1..=self.n)
            .map(|i| GfMatrix::unvec(f, &x[self.t_columns(i)], 2, 2))
            .collect();
        (r, ts)
    }
}

/// Basis of `{R : R·U_i ⊆ U_i for all i}` where `U_i` is the column space of
/// block `i`, computed from left annihilators of the blocks rather than
/// from `S`. Each element is returned as a `k × k` matrix.
pub fn block_stabilizer_basis(code: &AdditiveCode) -> Vec<GfMatrix> {
    let f = code.spec().base();
    let k = code.k();
    let mut system = GfMatrix::zeros(f, 0, k * k);
    for b in code.block_columns() {
        let annihilator = b.matrix.transpose().null_space();
        if annihilator.rows() == 0 {
            continue;
        }
        let rows = b.matrix.transpose().kron(&annihilator);
        system = system.vstack(&rows).expect("same width");
    }
    let basis = if system.rows() == 0 {
        GfMatrix::identity(f, k * k)
    } else {
        system.null_space()
    };
    basis
        .row_iter()
        .map(|x| GfMatrix::unvec(f, x, k, k))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Puncture,
    BlockRanks,
    BuildS,
    Nullity,
    Search,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Puncture => "puncture",
            Stage::BlockRanks => "block-ranks",
            Stage::BuildS => "build-s",
            Stage::Nullity => "nullity",
            Stage::Search => "search",
        }
    }
}

/// What the pipeline computed on the way to its verdict.
#[derive(Clone, Debug, Default)]
pub struct PipelineTrace {
    /// Removed all-zero coordinates (1-based).
    pub punctured: Vec<usize>,
    /// `(coordinate, rank)` for the surviving coordinates.
    pub block_ranks: Vec<(usize, usize)>,
    pub s_shape: Option<(usize, usize)>,
    pub nullity: Option<usize>,
    pub timings: Vec<(Stage, Duration)>,
}

#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub verdict: LinearityVerdict,
    pub trace: PipelineTrace,
}

fn timed<T>(trace: &mut PipelineTrace, stage: Stage, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    trace.timings.push((stage, start.elapsed()));
    out
}

/// Runs the full decision procedure and keeps intermediate results.
pub fn run_pipeline(code: &AdditiveCode, opts: SearchOptions) -> Result<PipelineRun> {
    let mut trace = PipelineTrace::default();
    let done = |verdict, trace| Ok(PipelineRun { verdict, trace });
    if code.k() == 0 {
        return Err(Error::AllCoordinatesZero);
    }
    if code.k() % 2 == 1 {
        return done(LinearityVerdict::StrictlyAdditive(StrictReason::OddDimensionK), trace);
    }

    let (punctured, removed) = timed(&mut trace, Stage::Puncture, || puncture_zero_blocks(code))?;
    let kept: Vec<usize> = (1..=code.n()).filter(|i| !removed.contains(i)).collect();
    trace.punctured = removed;

    let blocks = timed(&mut trace, Stage::BlockRanks, || punctured.block_columns());
    trace.block_ranks = blocks.iter().map(|b| (kept[b.index - 1], b.rank)).collect();
    if let Some(&(i, _)) = trace.block_ranks.iter().find(|(_, r)| *r == 1) {
        return done(LinearityVerdict::StrictlyAdditive(StrictReason::RankOneBlock(i)), trace);
    }

    let s = timed(&mut trace, Stage::BuildS, || SMatrix::build(&punctured))?;
    trace.s_shape = Some(s.shape());
    let d = timed(&mut trace, Stage::Nullity, || s.nullity());
    trace.nullity = Some(d);
    log::debug!("S is {:?} with nullity {d}", s.shape());
    if d % 2 == 1 {
        return done(LinearityVerdict::StrictlyAdditive(StrictReason::OddNullity(d)), trace);
    }

    let verdict = timed(&mut trace, Stage::Search, || search_witness(&punctured, &s, opts))?;
    let verdict = match verdict {
        LinearityVerdict::EquivalentToLinear { witness, nullity } if !trace.punctured.is_empty() => {
            LinearityVerdict::EquivalentToLinear {
                witness: Box::new(lift_witness(code, &kept, &witness)?),
                nullity,
            }
        }
        other => other,
    };
    done(verdict, trace)
}

/// Re-inserts identity blocks at punctured coordinates.
fn lift_witness(code: &AdditiveCode, kept: &[usize], w: &Witness) -> Result<Witness> {
    let f = code.spec().base();
    let mut blocks = vec![GfMatrix::identity(f, 2); code.n()];
    for (a, &i) in w.a_blocks.iter().zip(kept) {
        blocks[i - 1] = a.clone();
    }
    Witness::from_blocks(code, blocks)
}

/// Decides linear equivalence with the given search budget.
pub fn test_linearity(code: &AdditiveCode, budget: u64) -> Result<LinearityVerdict> {
    Ok(run_pipeline(code, SearchOptions { budget })?.verdict)
}
