//! Published example codes over `F_4`.

use crate::field::{ExtElem, FieldSpec};
use crate::linalg::GfMatrix;
use crate::qc::QcSpec;

/// Quasi-cyclic `[63, 5, 45]` additive code (`f₁ = 1`).
pub fn qc_63() -> QcSpec {
    QcSpec::new(
        63,
        &[
            53, 52, 51, 50, 48, 47, 45, 43, 42, 40, 39, 38, 31, 28, 25, 24, 21, 20, 19, 17, 14,
            13, 9, 8, 5, 1, 0,
        ],
        &[
            61, 59, 58, 54, 52, 50, 45, 44, 43, 41, 39, 33, 32, 31, 26, 24, 23, 22, 20, 18, 13,
            12, 11, 10, 9, 6, 4, 2, 1,
        ],
        &[0],
    )
}

/// Quasi-cyclic `[22, 10, 9]` ACD code with `g = x² + 1`.
pub fn qc_22() -> QcSpec {
    QcSpec::new(
        22,
        &[2, 0],
        &[19, 14, 11, 10, 2, 0],
        &[21, 19, 18, 17, 16, 14, 10, 9, 5, 0],
    )
}

const LINEAR_22: [&str; 10] = [
    "1 0 0 0 0 0 0 0 0 0 w2 1 w2 1 1 1 w2 0 w 0 1 1",
    "0 1 0 0 0 0 0 0 0 0 w2 w2 w w2 0 0 w w w w2 1 0",
    "0 0 1 0 0 0 0 0 0 0 0 w w w2 w 0 0 w2 w2 w2 w 1",
    "0 0 0 1 0 0 0 0 0 0 w2 1 0 w w2 w w2 0 0 w w2 w",
    "0 0 0 0 1 0 0 0 0 0 w 1 w2 w2 0 1 1 w 1 0 0 1",
    "0 0 0 0 0 1 0 0 0 0 w2 w w w2 w2 1 w 1 1 1 1 1",
    "0 0 0 0 0 0 1 0 0 0 w2 w2 0 w w2 w2 w w2 w2 1 0 0",
    "0 0 0 0 0 0 0 1 0 0 0 w w 0 w2 w w w2 w w 1 0",
    "0 0 0 0 0 0 0 0 1 0 0 0 w2 w2 0 w w2 w2 w w2 w2 1",
    "0 0 0 0 0 0 0 0 0 1 w2 1 w2 w2 w2 1 0 w 0 w2 w2 w2",
];

/// The systematic `10 × 22` generator matrix over `F_4` of the Hermitian
/// LCD code equivalent to [`qc_22`].
pub fn linear_22_rows() -> Vec<Vec<ExtElem>> {
    let s = FieldSpec::quaternary();
    LINEAR_22
        .iter()
        .map(|line| {
            line.split_whitespace()
                .map(|t| match t {
                    "0" => ExtElem::ZERO,
                    "1" => ExtElem::ONE,
                    "w" => s.omega_pow(1),
                    "w2" => s.omega_pow(2),
                    _ => unreachable!("token {t}"),
                })
                .collect()
        })
        .collect()
}

/// Block transform for [`qc_22`]: identity on odd coordinates, the swap
/// `[[0,1],[1,0]]` on even ones (1-based).
pub fn witness_22_blocks() -> Vec<GfMatrix> {
    let f = FieldSpec::quaternary().base();
    (1..=22)
        .map(|i| {
            if i % 2 == 1 {
                GfMatrix::identity(f, 2)
            } else {
                GfMatrix::from_vec(f, 2, 2, vec![0, 1, 1, 0])
            }
        })
        .collect()
}
