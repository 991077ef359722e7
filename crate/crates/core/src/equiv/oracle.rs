//! Exhaustive monomial search for tiny codes, used as a test reference.

use rayon::prelude::*;

use crate::addcode::AdditiveCode;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::GfMatrix;

#[derive(Clone, Copy, Debug)]
pub struct OracleLimits {
    pub max_n: usize,
    pub max_k: usize,
    /// Cap on `|H|^n · n!`.
    pub max_transforms: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_n: 4,
            max_k: 6,
            max_transforms: 1 << 22,
        }
    }
}

/// `SL_2(F_2)` for `q = 2`, `GL_2(F_q)` otherwise.
pub fn block_group(spec: &FieldSpec) -> Vec<GfMatrix> {
    let f = spec.base();
    let q = spec.q();
    let mut out = Vec::new();
    for idx in 0..q.pow(4) {
        let mut data = vec![0u8; 4];
        let mut rest = idx;
        for slot in data.iter_mut().rev() {
            *slot = (rest % q) as u8;
            rest /= q;
        }
        let a = GfMatrix::from_vec(f, 2, 2, data);
        let det = a.determinant();
        if (q == 2 && det == 1) || (q != 2 && det != 0) {
            out.push(a);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Tries every `G·diag(A_1, …, A_n)·(P ⊗ I_2)` and reports whether any of
/// them spans a `φ`-image closed under `ω`.
pub fn oracle_equivalent_to_linear(code: &AdditiveCode, limits: OracleLimits) -> Result<bool> {
    let (n, k) = (code.n(), code.k());
    if n > limits.max_n || k > limits.max_k {
        return Err(Error::InstanceTooLarge(format!(
            "n = {n}, k = {k} exceeds the oracle limits n ≤ {}, k ≤ {}",
            limits.max_n, limits.max_k
        )));
    }
    let spec = *code.spec();
    let group = block_group(&spec);
    let perms = permutations(n);
    let h = group.len() as u64;
    let total = h
        .checked_pow(n as u32)
        .and_then(|t| t.checked_mul(perms.len() as u64))
        .filter(|&t| t <= limits.max_transforms)
        .ok_or_else(|| {
            Error::InstanceTooLarge(format!(
                "{h}^{n} · {n}! transforms exceed the cap {}",
                limits.max_transforms
            ))
        })?;
    log::debug!("oracle: {total} transforms");
    let per_perm = h.pow(n as u32);

    Ok((0..total).into_par_iter().any(|idx| {
        let perm = &perms[(idx / per_perm) as usize];
        let mut rest = idx % per_perm;
        let blocks: Vec<GfMatrix> = (0..n)
            .map(|_| {
                let a = group[(rest % h) as usize].clone();
                rest /= h;
                a
            })
            .collect();
        let transformed = code
            .transform_blocks(&blocks)
            .expect("block count matches")
            .permute(perm);
        transformed.is_linear().is_some()
    }))
}
