use std::fmt;

use crate::addcode::{block_diagonal, omega_action, AdditiveCode, LinearCodeExt};
use crate::error::{Error, Result};
use crate::linalg::GfMatrix;

/// Why a code cannot be equivalent to an `F_{q^2}`-linear code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrictReason {
    /// `|C| = q^k` with `k` odd is not a power of `q²`.
    OddDimensionK,
    /// Block column `i` (1-based, original numbering) has rank 1.
    RankOneBlock(usize),
    /// The block-stabilizer system has odd nullity.
    OddNullity(usize),
    /// No element of the stabilizer space satisfies the minimal polynomial
    /// of `ω`.
    SearchExhaustedNoWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UndecidedReason {
    /// `q^d` candidates exceed the search budget; carries `d`.
    SearchBudgetExceeded(usize),
}

/// Evidence that `R·G = G·(A·(I_n ⊗ M_ω)·A⁻¹)` for `A = diag(A_1, …, A_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub r: GfMatrix,
    pub a_blocks: Vec<GfMatrix>,
    /// The code `φ⁻¹(G·A)`, in reduced echelon form over `F_{q^2}`.
    pub linear_generator: LinearCodeExt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearityVerdict {
    StrictlyAdditive(StrictReason),
    EquivalentToLinear { witness: Box<Witness>, nullity: usize },
    Undecided(UndecidedReason),
}

impl LinearityVerdict {
    /// Short tag used in reports: `strictly-additive`, `equivalent` or `undecided`.
    pub fn tag(&self) -> &'static str {
        match self {
            LinearityVerdict::StrictlyAdditive(_) => "strictly-additive",
            LinearityVerdict::EquivalentToLinear { .. } => "equivalent",
            LinearityVerdict::Undecided(_) => "undecided",
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self, LinearityVerdict::EquivalentToLinear { .. })
    }

    pub fn is_strictly_additive(&self) -> bool {
        matches!(self, LinearityVerdict::StrictlyAdditive(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            LinearityVerdict::EquivalentToLinear { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

impl fmt::Display for StrictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrictReason::OddDimensionK => write!(f, "odd F_q-dimension"),
            StrictReason::RankOneBlock(i) => write!(f, "rank(G_{i}) = 1"),
            StrictReason::OddNullity(d) => write!(f, "nullity(S) = {d} is odd"),
            StrictReason::SearchExhaustedNoWitness => {
                write!(f, "no stabilizer satisfies the minimal polynomial of ω")
            }
        }
    }
}

impl fmt::Display for LinearityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearityVerdict::StrictlyAdditive(r) => write!(f, "strictly additive ({r})"),
            LinearityVerdict::EquivalentToLinear { nullity, witness } => write!(
                f,
                "equivalent to a linear [{}, {}] code (nullity(S) = {nullity})",
                witness.linear_generator.n(),
                witness.linear_generator.dim()
            ),
            LinearityVerdict::Undecided(UndecidedReason::SearchBudgetExceeded(d)) => {
                write!(f, "undecided (search over nullity {d} exceeds budget)")
            }
        }
    }
}

impl Witness {
    /// Completes a block transform into a witness: `R` and the linear code
    /// are derived from `G·A`, which must be closed under `ω`.
    pub fn from_blocks(code: &AdditiveCode, a_blocks: Vec<GfMatrix>) -> Result<Witness> {
        check_blocks(code, &a_blocks)?;
        let a = block_diagonal(code.spec().base(), &a_blocks);
        let ga = code.generator() * &a;
        let transformed = AdditiveCode::from_full_rank(*code.spec(), ga.clone())?;
        let r = transformed.is_linear().ok_or_else(|| {
            Error::InvalidWitness("G·A is not closed under multiplication by ω".into())
        })?;
        let linear_generator = LinearCodeExt::from_phi_image(*code.spec(), &ga)?;
        Ok(Witness {
            r,
            a_blocks,
            linear_generator,
        })
    }

    /// Checks all three defining identities exactly.
    pub fn verify(&self, code: &AdditiveCode) -> Result<()> {
        let spec = code.spec();
        let f = spec.base();
        let k = code.k();
        let g = code.generator();
        check_blocks(code, &self.a_blocks)?;
        if self.r.shape() != (k, k) {
            return Err(Error::InvalidWitness(format!(
                "R has shape {:?}, expected ({k}, {k})",
                self.r.shape()
            )));
        }
        let a = block_diagonal(f, &self.a_blocks);
        let a_inv = a.invert()?;
        let conj = &(&a * &omega_action(spec, code.n())) * &a_inv;
        if &self.r * g != g * &conj {
            return Err(Error::InvalidWitness("R·G ≠ G·A·M·A⁻¹".into()));
        }
        let r = &self.r;
        let quad = &(&(r * r) + &r.scale(spec.c1())) + &GfMatrix::identity(f, k).scale(spec.c0());
        if !quad.is_zero() {
            return Err(Error::InvalidWitness("R² + c₁R + c₀I ≠ 0".into()));
        }
        let lg = &self.linear_generator;
        if lg.spec() != spec || lg.n() != code.n() {
            return Err(Error::InvalidWitness("linear code has the wrong field or length".into()));
        }
        if !(g * &a).same_row_space(&lg.phi_image()) {
            return Err(Error::InvalidWitness(
                "row space of G·A differs from the linear code".into(),
            ));
        }
        Ok(())
    }
}

fn check_blocks(code: &AdditiveCode, blocks: &[GfMatrix]) -> Result<()> {
    if blocks.len() != code.n() {
        return Err(Error::InvalidWitness(format!(
            "{} blocks for a code of length {}",
            blocks.len(),
            code.n()
        )));
    }
    for (i, b) in blocks.iter().enumerate() {
        if b.shape() != (2, 2) || b.field() != code.spec().base() {
            return Err(Error::InvalidWitness(format!("block {} is not 2x2 over F_q", i + 1)));
        }
        if b.determinant() == 0 {
            return Err(Error::InvalidWitness(format!("block {} is singular", i + 1)));
        }
    }
    Ok(())
}
