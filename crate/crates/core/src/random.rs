//! Random instances for property tests, oracle cross-checks and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::addcode::{AdditiveCode, LinearCodeExt};
use crate::field::{BaseField, ExtElem, FieldSpec};
use crate::linalg::GfMatrix;

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, field: &'static BaseField, rows: usize, cols: usize) -> GfMatrix {
    let q = field.order() as u8;
    let data = (0..rows * cols).map(|_| rng.random_range(0..q)).collect();
    GfMatrix::from_vec(field, rows, cols, data)
}

pub fn invertible<R: Rng + ?Sized>(rng: &mut R, field: &'static BaseField, n: usize) -> GfMatrix {
    loop {
        let m = matrix(rng, field, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Uniform over full-rank `rows × cols` matrices; requires `rows ≤ cols`.
pub fn full_rank<R: Rng + ?Sized>(rng: &mut R, field: &'static BaseField, rows: usize, cols: usize) -> GfMatrix {
    assert!(rows <= cols);
    loop {
        let m = matrix(rng, field, rows, cols);
        if m.rank() == rows {
            return m;
        }
    }
}

pub fn additive_code<R: Rng + ?Sized>(rng: &mut R, spec: FieldSpec, n: usize, k: usize) -> AdditiveCode {
    AdditiveCode::from_full_rank(spec, full_rank(rng, spec.base(), k, 2 * n)).expect("full rank")
}

pub fn ext_elem<R: Rng + ?Sized>(rng: &mut R, spec: &FieldSpec) -> ExtElem {
    let q = spec.q() as u8;
    ExtElem::new(rng.random_range(0..q), rng.random_range(0..q))
}

pub fn ext_vector<R: Rng + ?Sized>(rng: &mut R, spec: &FieldSpec, n: usize) -> Vec<ExtElem> {
    (0..n).map(|_| ext_elem(rng, spec)).collect()
}

/// A random `F_{q^2}`-linear code of dimension `m ≤ n`.
pub fn linear_code<R: Rng + ?Sized>(rng: &mut R, spec: FieldSpec, n: usize, m: usize) -> LinearCodeExt {
    assert!(m <= n);
    loop {
        let rows = (0..m).map(|_| ext_vector(rng, &spec, n)).collect();
        if let Ok(code) = LinearCodeExt::new(spec, n, rows) {
            return code;
        }
    }
}

pub fn gl2<R: Rng + ?Sized>(rng: &mut R, field: &'static BaseField) -> GfMatrix {
    invertible(rng, field, 2)
}

pub fn sl2<R: Rng + ?Sized>(rng: &mut R, field: &'static BaseField) -> GfMatrix {
    loop {
        let m = matrix(rng, field, 2, 2);
        if m.determinant() == 1 {
            return m;
        }
    }
}

pub fn sl2_blocks<R: Rng + ?Sized>(rng: &mut R, field: &'static BaseField, n: usize) -> Vec<GfMatrix> {
    (0..n).map(|_| sl2(rng, field)).collect()
}

pub fn gl2_blocks<R: Rng + ?Sized>(rng: &mut R, field: &'static BaseField, n: usize) -> Vec<GfMatrix> {
    (0..n).map(|_| gl2(rng, field)).collect()
}

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A full-rank code in which block column `index` (1-based) has rank 1.
pub fn code_with_rank_one_block<R: Rng + ?Sized>(
    rng: &mut R,
    spec: FieldSpec,
    n: usize,
    k: usize,
    index: usize,
) -> AdditiveCode {
    assert!((1..=n).contains(&index) && k <= 2 * n - 1);
    let f = spec.base();
    loop {
        let mut g = matrix(rng, f, k, 2 * n);
        let col = (2 * index - 2, 2 * index - 1);
        let c = rng.random_range(0..f.order() as u8);
        for r in 0..k {
            let v = g.get(r, col.0);
            g.set(r, col.1, f.mul(c, v));
        }
        if g.rank() == k && g.select_columns(&[col.0, col.1]).rank() == 1 {
            return AdditiveCode::from_full_rank(spec, g).expect("full rank");
        }
    }
}
