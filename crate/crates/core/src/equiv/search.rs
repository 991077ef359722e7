use rayon::prelude::*;

use super::{SMatrix, DEFAULT_SEARCH_BUDGET};
use crate::addcode::AdditiveCode;
use crate::equiv::verdict::{LinearityVerdict, StrictReason, UndecidedReason, Witness};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::linalg::GfMatrix;

/// Options for the null-space search.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Largest `q^d` that will be enumerated.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

/// `R² + c₁R + c₀I = 0`.
pub fn satisfies_min_poly(spec: &FieldSpec, m: &GfMatrix) -> bool {
    let f = spec.base();
    let n = m.rows();
    let mut quad = m * m;
    let c1m = m.scale(spec.c1());
    quad = &quad + &c1m;
    for i in 0..n {
        quad.set(i, i, f.add(quad.get(i, i), spec.c0()));
    }
    quad.is_zero()
}

/// Some `A` with `T = A·M_ω·A⁻¹`, for `T` satisfying the minimal polynomial
/// of `ω`: columns `(T v + c₁ v, v)` for the first of `e₁, e₂` that makes
/// `{v, T v}` independent.
pub fn conjugator(spec: &FieldSpec, t: &GfMatrix) -> Option<GfMatrix> {
    let f = spec.base();
    for v in [[1, 0], [0, 1]] {
        let tv = [
            f.add(f.mul(t.get(0, 0), v[0]), f.mul(t.get(0, 1), v[1])),
            f.add(f.mul(t.get(1, 0), v[0]), f.mul(t.get(1, 1), v[1])),
        ];
        let first = [
            f.add(tv[0], f.mul(spec.c1(), v[0])),
            f.add(tv[1], f.mul(spec.c1(), v[1])),
        ];
        let a = GfMatrix::from_vec(f, 2, 2, vec![first[0], v[0], first[1], v[1]]);
        if a.determinant() != 0 {
            return Some(a);
        }
    }
    None
}

fn digits(mut idx: u64, q: u64, d: usize) -> Vec<Fq> {
    // most significant coefficient first
    let mut out = vec![0; d];
    for slot in out.iter_mut().rev() {
        *slot = (idx % q) as Fq;
        idx /= q;
    }
    out
}

fn is_normalized(alpha: &[Fq]) -> bool {
    alpha.iter().find(|&&x| x != 0) == Some(&1)
}

fn combine(f: &'static crate::field::BaseField, parts: &[GfMatrix], alpha: &[Fq]) -> GfMatrix {
    let (r, c) = parts[0].shape();
    let mut acc = GfMatrix::zeros(f, r, c);
    for (m, &a) in parts.iter().zip(alpha) {
        if a != 0 {
            acc = &acc + &m.scale(a);
        }
    }
    acc
}

/// Looks for `R = Σ α_j R_j` over a null-space basis of `S` with
/// `R² + c₁R + c₀I = 0`, then builds the block conjugators.
///
/// Candidates with leading coefficient 1 are scanned first, then the rest;
/// within each phase the lexicographically smallest success is returned.
pub fn search_witness(code: &AdditiveCode, s: &SMatrix, opts: SearchOptions) -> Result<LinearityVerdict> {
    let spec = *code.spec();
    let f = spec.base();
    let q = spec.q() as u64;
    let basis = s.null_basis();
    let d = basis.rows();
    let total = u32::try_from(d)
        .ok()
        .and_then(|d| q.checked_pow(d))
        .filter(|&t| t <= opts.budget);
    let Some(total) = total else {
        return Ok(LinearityVerdict::Undecided(UndecidedReason::SearchBudgetExceeded(d)));
    };

    let unpacked: Vec<(GfMatrix, Vec<GfMatrix>)> =
        basis.row_iter().map(|x| s.unpack(x)).collect();
    let r_parts: Vec<GfMatrix> = unpacked.iter().map(|(r, _)| r.clone()).collect();

    let accepts = |idx: &u64| satisfies_min_poly(&spec, &combine(f, &r_parts, &digits(*idx, q, d)));
    let found = (1..total)
        .into_par_iter()
        .filter(|i| is_normalized(&digits(*i, q, d)))
        .find_first(accepts)
        .or_else(|| {
            (1..total)
                .into_par_iter()
                .filter(|i| !is_normalized(&digits(*i, q, d)))
                .find_first(accepts)
        });
    let Some(idx) = found else {
        return Ok(LinearityVerdict::StrictlyAdditive(
            StrictReason::SearchExhaustedNoWitness,
        ));
    };

    let alpha = digits(idx, q, d);
    let r = combine(f, &r_parts, &alpha);
    let mut blocks = Vec::with_capacity(s.n());
    for i in 0..s.n() {
        let parts: Vec<GfMatrix> = unpacked.iter().map(|(_, ts)| ts[i].clone()).collect();
        let t = combine(f, &parts, &alpha);
        let a = conjugator(&spec, &t).ok_or_else(|| {
            Error::InvalidWitness(format!("T_{} is scalar; no cyclic vector", i + 1))
        })?;
        blocks.push(a);
    }
    let witness = Witness::from_blocks(code, blocks)?;
    if witness.r != r {
        return Err(Error::InvalidWitness(
            "recovered R differs from the searched R".into(),
        ));
    }
    Ok(LinearityVerdict::EquivalentToLinear {
        witness: Box::new(witness),
        nullity: d,
    })
}
