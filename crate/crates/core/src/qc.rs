//! One-generator quasi-cyclic binary codes and the table transforms
//! (extension, augmentation, shortening).

use std::fmt;

use crate::addcode::AdditiveCode;
use crate::error::{Error, Result};
use crate::field::{ExtElem, FieldSpec};
use crate::linalg::GfMatrix;

/// An element of `F_2[x]/(x^n − 1)`; `coeffs[i]` is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyModXn {
    n: usize,
    coeffs: Vec<u8>,
}

impl PolyModXn {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "modulus degree must be positive");
        PolyModXn {
            n,
            coeffs: vec![0; n],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0)
    }

    /// `x^e`, reduced with `x^n = 1`.
    pub fn monomial(n: usize, e: usize) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[e % n] = 1;
        p
    }

    /// Sum of `x^e` over the listed exponents; repeated exponents cancel.
    pub fn from_exponents(n: usize, exps: &[usize]) -> Self {
        let mut p = Self::zero(n);
        for &e in exps {
            p.coeffs[e % n] ^= 1;
        }
        p
    }

    pub fn from_coeffs(coeffs: Vec<u8>) -> Self {
        assert!(!coeffs.is_empty());
        assert!(coeffs.iter().all(|&c| c < 2), "binary coefficients");
        PolyModXn {
            n: coeffs.len(),
            coeffs,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn exponents(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.coeffs[i] == 1).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Degree of the stored representative; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c == 1)
    }

    pub fn add(&self, other: &PolyModXn) -> Result<PolyModXn> {
        self.same_ring(other)?;
        Ok(PolyModXn {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Cyclic convolution over `F_2`.
    pub fn mul(&self, other: &PolyModXn) -> Result<PolyModXn> {
        self.same_ring(other)?;
        let n = self.n;
        let mut out = vec![0u8; n];
        for i in self.exponents() {
            for j in other.exponents() {
                out[(i + j) % n] ^= 1;
            }
        }
        Ok(PolyModXn { n, coeffs: out })
    }

    /// Multiplication by `x^s`: a cyclic shift of the coefficients.
    pub fn shift(&self, s: usize) -> PolyModXn {
        let n = self.n;
        let mut out = vec![0u8; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[(i + s) % n] = c;
        }
        PolyModXn { n, coeffs: out }
    }

    fn same_ring(&self, other: &PolyModXn) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.n, other.n))
        }
    }
}

impl fmt::Debug for PolyModXn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .exponents()
            .iter()
            .rev()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 mod x^{}-1", self.n)
        } else {
            write!(f, "{} mod x^{}-1", terms.join(" + "), self.n)
        }
    }
}

/// Generator data `([g·f₀], [g·f₁])` of a one-generator quasi-cyclic code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcSpec {
    pub n: usize,
    pub g: PolyModXn,
    pub f0: PolyModXn,
    pub f1: PolyModXn,
}

impl QcSpec {
    pub fn new(n: usize, g: &[usize], f0: &[usize], f1: &[usize]) -> Self {
        QcSpec {
            n,
            g: PolyModXn::from_exponents(n, g),
            f0: PolyModXn::from_exponents(n, f0),
            f1: PolyModXn::from_exponents(n, f1),
        }
    }

    /// The two generator halves `g·f₀` and `g·f₁`.
    pub fn halves(&self) -> Result<(PolyModXn, PolyModXn)> {
        Ok((self.g.mul(&self.f0)?, self.g.mul(&self.f1)?))
    }
}

/// The additive `F_4` code of the quasi-cyclic code spanned by all
/// simultaneous shifts of `(g·f₀, g·f₁)`.
///
/// Coordinate `i` is `(g f₀)_i + ω (g f₁)_i`, so the `φ`-columns interleave
/// the two circulant halves.
pub fn build_qc_additive(spec: &QcSpec) -> Result<AdditiveCode> {
    let (a, b) = spec.halves()?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    let field = FieldSpec::quaternary();
    let n = spec.n;
    let mut g = GfMatrix::zeros(field.base(), n, 2 * n);
    for s in 0..n {
        let (sa, sb) = (a.shift(s), b.shift(s));
        for i in 0..n {
            g.set(s, 2 * i, sa.coeffs[i]);
            g.set(s, 2 * i + 1, sb.coeffs[i]);
        }
    }
    Ok(AdditiveCode::from_full_rank(field, g.row_basis()).expect("row basis has full rank"))
}

/// Appends one coordinate holding the sum of all coordinates.
pub fn extend(c: &AdditiveCode) -> AdditiveCode {
    let g = c.generator();
    let f = g.field();
    let n = c.n();
    let mut out = GfMatrix::zeros(f, g.rows(), 2 * n + 2);
    for r in 0..g.rows() {
        let row = g.row(r);
        let (mut x, mut y) = (0, 0);
        for i in 0..n {
            x = f.add(x, row[2 * i]);
            y = f.add(y, row[2 * i + 1]);
        }
        let dst = out.row_mut(r);
        dst[..2 * n].copy_from_slice(row);
        dst[2 * n] = x;
        dst[2 * n + 1] = y;
    }
    AdditiveCode::from_full_rank(*c.spec(), out).expect("extension preserves rank")
}

/// Stacks `φ(row)` for each row under the generator matrix and reduces.
pub fn augment(c: &AdditiveCode, rows: &[Vec<ExtElem>]) -> Result<AdditiveCode> {
    let extra = AdditiveCode::from_ext_rows(*c.spec(), c.n(), rows)?;
    let g = c.generator().vstack(extra.generator())?;
    AdditiveCode::new(*c.spec(), g.row_basis())
}

/// Augmentation by `{1_n, ω·1_n}`.
pub fn augment_all_ones(c: &AdditiveCode) -> AdditiveCode {
    let n = c.n();
    augment(c, &[vec![ExtElem::ONE; n], vec![ExtElem::OMEGA; n]]).expect("rows have length n")
}

/// Subcode vanishing at `position` (1-based), with that coordinate deleted.
pub fn shorten(c: &AdditiveCode, position: usize) -> Result<AdditiveCode> {
    let n = c.n();
    if position == 0 || position > n {
        return Err(Error::PositionOutOfRange { position, n });
    }
    if n == 1 {
        return Err(Error::DimensionMismatch("cannot shorten a code of length 1".into()));
    }
    let g = c.generator();
    let block = c.block_column(position).matrix;
    // Messages m with m·G_j = 0 form the left null space of G_j.
    let messages = block.transpose().null_space();
    let sub = &messages * g;
    let keep: Vec<usize> = (0..2 * n)
        .filter(|&col| col / 2 != position - 1)
        .collect();
    AdditiveCode::new(*c.spec(), sub.select_columns(&keep))
}
