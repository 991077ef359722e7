//! Additive codes over `F_{q^2}`, represented by their `F_q`-image under
//! `φ : F_{q^2}^n → F_q^{2n}`, `z_i = x_i + ω y_i ↦ (x_i, y_i)`.
//!
//! Coordinates are numbered from 1 wherever they appear in public results
//! (block columns, punctured positions, shortening positions).

mod distance;
mod linear;

pub use distance::DEFAULT_DISTANCE_BUDGET;
pub use linear::LinearCodeExt;

use crate::error::{Error, Result};
use crate::field::{ExtElem, FieldSpec, Fq};
use crate::linalg::GfMatrix;

/// `φ`: interleave the `{1, ω}` coordinates of each entry.
pub fn phi(v: &[ExtElem]) -> Vec<Fq> {
    v.iter().flat_map(|z| [z.a, z.b]).collect()
}

/// Inverse of [`phi`]. Panics on odd length.
pub fn phi_inverse(v: &[Fq]) -> Vec<ExtElem> {
    assert!(v.len() % 2 == 0, "φ-image has even length");
    v.chunks_exact(2).map(|p| ExtElem::new(p[0], p[1])).collect()
}

/// Number of nonzero coordinate pairs.
pub fn pair_weight(v: &[Fq]) -> usize {
    v.chunks_exact(2).filter(|p| p[0] != 0 || p[1] != 0).count()
}

pub fn hamming_weight(v: &[ExtElem]) -> usize {
    v.iter().filter(|z| !z.is_zero()).count()
}

/// `Σ (a_i d_i − b_i c_i)` on `F_q^{2n}`.
pub fn symplectic_product(spec: &FieldSpec, u: &[Fq], v: &[Fq]) -> Fq {
    let f = spec.base();
    u.chunks_exact(2)
        .zip(v.chunks_exact(2))
        .fold(0, |acc, (x, y)| {
            f.add(acc, f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0])))
        })
}

/// `Σ (x_i y_i^q − x_i^q y_i) / (ω^q − ω)`, evaluated in `F_{q^2}`.
pub fn alternating_form(spec: &FieldSpec, x: &[ExtElem], y: &[ExtElem]) -> ExtElem {
    let denom = spec.sub(spec.conj(ExtElem::OMEGA), ExtElem::OMEGA);
    let denom_inv = spec.inv(denom).expect("ω is not in F_q");
    let sum = x.iter().zip(y).fold(ExtElem::ZERO, |acc, (&a, &b)| {
        let t = spec.sub(spec.mul(a, spec.conj(b)), spec.mul(spec.conj(a), b));
        spec.add(acc, t)
    });
    spec.mul(sum, denom_inv)
}

/// `I_n ⊗ [[0, 1], [−1, 0]]`, so that `⟨u, v⟩_s = u · J · vᵀ`.
pub fn symplectic_matrix(spec: &FieldSpec, n: usize) -> GfMatrix {
    let f = spec.base();
    let j = GfMatrix::from_vec(f, 2, 2, vec![0, 1, f.neg(1), 0]);
    GfMatrix::identity(f, n).kron(&j)
}

/// `I_n ⊗ M_ω`: coordinatewise multiplication by `ω` on `φ`-images.
pub fn omega_action(spec: &FieldSpec, n: usize) -> GfMatrix {
    GfMatrix::identity(spec.base(), n).kron(&spec.companion_matrix())
}

/// The columns `2i−1, 2i` of a generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockColumn {
    pub index: usize,
    pub matrix: GfMatrix,
    pub rank: usize,
}

/// An `F_q`-linear code `C ⊆ F_{q^2}^n` with `|C| = q^k`, stored as a
/// full-rank `k × 2n` generator matrix of `φ(C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveCode {
    spec: FieldSpec,
    n: usize,
    g: GfMatrix,
}

impl AdditiveCode {
    /// Builds a code from any spanning matrix; dependent rows are reduced
    /// away with a warning.
    pub fn new(spec: FieldSpec, g: GfMatrix) -> Result<Self> {
        Self::check_shape(&spec, &g)?;
        let rank = g.rank();
        if rank < g.rows() {
            log::warn!(
                "generator matrix has {} rows but rank {rank}; reducing to a basis",
                g.rows()
            );
            let n = g.cols() / 2;
            return Ok(AdditiveCode {
                spec,
                n,
                g: g.row_basis(),
            });
        }
        Ok(AdditiveCode {
            spec,
            n: g.cols() / 2,
            g,
        })
    }

    /// Like [`AdditiveCode::new`] but rejects dependent rows.
    pub fn from_full_rank(spec: FieldSpec, g: GfMatrix) -> Result<Self> {
        Self::check_shape(&spec, &g)?;
        let rank = g.rank();
        if rank < g.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: g.rows(),
            });
        }
        Ok(AdditiveCode {
            spec,
            n: g.cols() / 2,
            g,
        })
    }

    /// The code spanned over `F_q` by the given vectors.
    pub fn from_ext_rows(spec: FieldSpec, n: usize, rows: &[Vec<ExtElem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * 2 * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in a code of length {n}",
                    r.len()
                )));
            }
            for z in r {
                spec.elem(z.a as usize, z.b as usize)?;
            }
            data.extend(phi(r));
        }
        Self::new(
            spec,
            GfMatrix::from_vec(spec.base(), rows.len(), 2 * n, data),
        )
    }

    /// The whole space `F_{q^2}^n`.
    pub fn full(spec: FieldSpec, n: usize) -> Self {
        AdditiveCode {
            spec,
            n,
            g: GfMatrix::identity(spec.base(), 2 * n),
        }
    }

    pub fn zero(spec: FieldSpec, n: usize) -> Self {
        AdditiveCode {
            spec,
            n,
            g: GfMatrix::zeros(spec.base(), 0, 2 * n),
        }
    }

    fn check_shape(spec: &FieldSpec, g: &GfMatrix) -> Result<()> {
        if g.field() != spec.base() {
            return Err(Error::FieldMismatch);
        }
        if g.cols() == 0 || g.cols() % 2 != 0 {
            return Err(Error::DimensionMismatch(format!(
                "generator matrix needs a positive even number of columns, got {}",
                g.cols()
            )));
        }
        Ok(())
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Length over `F_{q^2}`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension over `F_q`.
    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn generator(&self) -> &GfMatrix {
        &self.g
    }

    /// `[n, k/2]` parameter string, e.g. `[22, 10]`.
    pub fn parameters(&self) -> String {
        if self.k() % 2 == 0 {
            format!("[{}, {}]", self.n, self.k() / 2)
        } else {
            format!("[{}, {}/2]", self.n, self.k())
        }
    }

    /// Block column `i` (1-based).
    pub fn block_column(&self, i: usize) -> BlockColumn {
        assert!((1..=self.n).contains(&i), "block index out of range");
        let matrix = self.g.select_columns(&[2 * i - 2, 2 * i - 1]);
        let rank = matrix.rank();
        BlockColumn {
            index: i,
            matrix,
            rank,
        }
    }

    pub fn block_columns(&self) -> Vec<BlockColumn> {
        (1..=self.n).map(|i| self.block_column(i)).collect()
    }

    pub fn codeword(&self, message: &[Fq]) -> Vec<ExtElem> {
        let m = GfMatrix::from_vec(self.spec.base(), 1, self.k(), message.to_vec());
        phi_inverse((&m * &self.g).row(0))
    }

    pub fn contains(&self, word: &[ExtElem]) -> bool {
        let v = GfMatrix::from_vec(self.spec.base(), 1, 2 * self.n, phi(word));
        self.g.row_space_contains(&v)
    }

    pub fn same_code(&self, other: &AdditiveCode) -> bool {
        self.spec == other.spec && self.n == other.n && self.g.same_row_space(&other.g)
    }

    /// Closure of `φ(C)` under multiplication by `ω`.
    ///
    /// Returns the unique `R` with `R·G = G·(I_n ⊗ M_ω)` when it exists.
    pub fn is_linear(&self) -> Option<GfMatrix> {
        if self.k() % 2 == 1 {
            return None;
        }
        let shifted = &self.g * &omega_action(&self.spec, self.n);
        self.g
            .solve_left(&shifted)
            .expect("shapes agree by construction")
    }

    /// Dual with respect to the symplectic form.
    pub fn symplectic_dual(&self) -> AdditiveCode {
        let gj = &self.g * &symplectic_matrix(&self.spec, self.n);
        AdditiveCode {
            spec: self.spec,
            n: self.n,
            g: gj.null_space(),
        }
    }

    pub fn hull(&self) -> (AdditiveCode, usize) {
        let dual = self.symplectic_dual();
        let meet = self
            .g
            .row_space_intersection(&dual.g)
            .expect("same field and length");
        let dim = meet.rows();
        (
            AdditiveCode {
                spec: self.spec,
                n: self.n,
                g: meet,
            },
            dim,
        )
    }

    /// `k − rank(G·J·Gᵀ)`, the hull dimension computed from the Gram matrix.
    pub fn hull_dimension_from_gram(&self) -> usize {
        let gram = &(&self.g * &symplectic_matrix(&self.spec, self.n)) * &self.g.transpose();
        self.k() - gram.rank()
    }

    /// Trivial hull, checked both by intersection and through the Gram matrix.
    pub fn is_acd(&self) -> bool {
        let (_, dim) = self.hull();
        let gram_dim = self.hull_dimension_from_gram();
        assert_eq!(dim, gram_dim, "hull dimension routes disagree");
        dim == 0
    }

    /// Apply the block-diagonal map `diag(A_1, …, A_n)` on the right.
    pub fn transform_blocks(&self, blocks: &[GfMatrix]) -> Result<AdditiveCode> {
        if blocks.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks for a code of length {}",
                blocks.len(),
                self.n
            )));
        }
        let g = &self.g * &block_diagonal(self.spec.base(), blocks);
        AdditiveCode::new(self.spec, g)
    }

    /// Move coordinate `perm[i]` (0-based) to position `i`.
    pub fn permute(&self, perm: &[usize]) -> AdditiveCode {
        assert_eq!(perm.len(), self.n);
        let cols: Vec<usize> = perm.iter().flat_map(|&p| [2 * p, 2 * p + 1]).collect();
        AdditiveCode {
            spec: self.spec,
            n: self.n,
            g: self.g.select_columns(&cols),
        }
    }

    /// Replace `G` by `U·G` for an invertible `U`.
    pub fn change_basis(&self, u: &GfMatrix) -> Result<AdditiveCode> {
        u.invert()?;
        Ok(AdditiveCode {
            spec: self.spec,
            n: self.n,
            g: u.checked_mul(&self.g)?,
        })
    }
}

/// `diag(A_1, …, A_n)` from 2×2 blocks.
pub fn block_diagonal(field: &'static crate::field::BaseField, blocks: &[GfMatrix]) -> GfMatrix {
    let n = blocks.len();
    let mut out = GfMatrix::zeros(field, 2 * n, 2 * n);
    for (i, b) in blocks.iter().enumerate() {
        assert_eq!(b.shape(), (2, 2), "blocks are 2x2");
        out.set_block(2 * i, 2 * i, b);
    }
    out
}

#[cfg(test)]
mod tests;
