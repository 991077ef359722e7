use super::{omega_action, phi, phi_inverse, AdditiveCode};
use crate::error::{Error, Result};
use crate::field::{ExtElem, FieldSpec};
use crate::linalg::GfMatrix;

/// An `F_{q^2}`-linear code given by `m` linearly independent rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCodeExt {
    spec: FieldSpec,
    n: usize,
    rows: Vec<Vec<ExtElem>>,
}

impl LinearCodeExt {
    pub fn new(spec: FieldSpec, n: usize, rows: Vec<Vec<ExtElem>>) -> Result<Self> {
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a code of length {n}",
                    r.len()
                )));
            }
            for z in r {
                spec.elem(z.a as usize, z.b as usize)?;
            }
        }
        let code = LinearCodeExt { spec, n, rows };
        let rank = code.phi_image().rank();
        if rank != 2 * code.dim() {
            return Err(Error::RankDeficient {
                rank: rank / 2,
                rows: code.dim(),
            });
        }
        Ok(code)
    }

    /// Extracts an `F_{q^2}`-basis from an `ω`-closed `F_q`-space, returned
    /// in reduced echelon form.
    pub fn from_phi_image(spec: FieldSpec, g: &GfMatrix) -> Result<Self> {
        if g.cols() % 2 != 0 {
            return Err(Error::DimensionMismatch("odd number of columns".into()));
        }
        let n = g.cols() / 2;
        let span = g.row_basis();
        let closed = &span * &omega_action(&spec, n);
        if !span.row_space_contains(&closed) {
            return Err(Error::InvalidWitness(
                "row space is not closed under multiplication by ω".into(),
            ));
        }
        let mut chosen: Vec<Vec<ExtElem>> = Vec::new();
        let mut acc = GfMatrix::zeros(spec.base(), 0, 2 * n);
        for r in span.row_iter() {
            let row = GfMatrix::from_vec(spec.base(), 1, 2 * n, r.to_vec());
            if acc.row_space_contains(&row) {
                continue;
            }
            let z = phi_inverse(r);
            let wz: Vec<ExtElem> = z.iter().map(|&x| spec.mul(ExtElem::OMEGA, x)).collect();
            let pair = GfMatrix::from_vec(spec.base(), 2, 2 * n, [phi(&z), phi(&wz)].concat());
            acc = acc.vstack(&pair)?;
            chosen.push(z);
        }
        LinearCodeExt::new(spec, n, chosen).map(|c| c.rref())
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension over `F_{q^2}`.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<ExtElem>] {
        &self.rows
    }

    /// `F_q`-basis of `φ(C)`: rows `φ(r)` and `φ(ω r)` for every generator.
    pub fn phi_image(&self) -> GfMatrix {
        let mut data = Vec::with_capacity(4 * self.n * self.dim());
        for r in &self.rows {
            data.extend(phi(r));
            let wr: Vec<ExtElem> = r.iter().map(|&x| self.spec.mul(ExtElem::OMEGA, x)).collect();
            data.extend(phi(&wr));
        }
        GfMatrix::from_vec(self.spec.base(), 2 * self.dim(), 2 * self.n, data)
    }

    pub fn to_additive(&self) -> AdditiveCode {
        AdditiveCode::from_full_rank(self.spec, self.phi_image())
            .expect("rank checked at construction")
    }

    pub fn min_distance(&self, budget: u64) -> Result<usize> {
        self.to_additive().min_distance(budget)
    }

    /// Reduced row echelon form over `F_{q^2}`.
    pub fn rref(&self) -> LinearCodeExt {
        let s = &self.spec;
        let mut m = self.rows.clone();
        let mut row = 0;
        for col in 0..self.n {
            if row == m.len() {
                break;
            }
            let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(p, row);
            let inv = s.inv(m[row][col]).unwrap();
            for x in m[row].iter_mut() {
                *x = s.mul(*x, inv);
            }
            for r in 0..m.len() {
                if r != row && !m[r][col].is_zero() {
                    let factor = m[r][col];
                    for c in 0..self.n {
                        let t = s.mul(factor, m[row][c]);
                        m[r][c] = s.sub(m[r][c], t);
                    }
                }
            }
            row += 1;
        }
        LinearCodeExt {
            spec: self.spec,
            n: self.n,
            rows: m,
        }
    }

    /// `H = G · conj(G)ᵀ` with `conj` the entrywise `q`-power map.
    pub fn hermitian_gram(&self) -> Vec<Vec<ExtElem>> {
        let s = &self.spec;
        self.rows
            .iter()
            .map(|x| {
                self.rows
                    .iter()
                    .map(|y| hermitian_product(s, x, y))
                    .collect()
            })
            .collect()
    }

    /// `C ∩ C^{⊥_H} = {0}`, tested as `rank(H) = dim` over `F_{q^2}`.
    pub fn hermitian_lcd(&self) -> bool {
        let gram = self.hermitian_gram();
        ext_rank(&self.spec, &gram) == self.dim()
    }

    /// `F_q`-basis of `φ(C^{⊥_H})`.
    pub fn hermitian_dual_image(&self) -> GfMatrix {
        let s = &self.spec;
        let f = s.base();
        let cols = 2 * self.n;
        let mut cons = GfMatrix::zeros(f, 2 * self.dim(), cols);
        for (i, x) in self.rows.iter().enumerate() {
            for j in 0..cols {
                let mut e = vec![0; cols];
                e[j] = 1;
                let h = hermitian_product(s, x, &phi_inverse(&e));
                cons.set(2 * i, j, h.a);
                cons.set(2 * i + 1, j, h.b);
            }
        }
        cons.null_space()
    }
}

/// `Σ x_i y_i^q`.
pub fn hermitian_product(spec: &FieldSpec, x: &[ExtElem], y: &[ExtElem]) -> ExtElem {
    x.iter().zip(y).fold(ExtElem::ZERO, |acc, (&a, &b)| {
        spec.add(acc, spec.mul(a, spec.conj(b)))
    })
}

/// Rank over `F_{q^2}`, from the `F_q`-rank of the rows and their `ω`-multiples.
fn ext_rank(spec: &FieldSpec, m: &[Vec<ExtElem>]) -> usize {
    let Some(first) = m.first() else {
        return 0;
    };
    let cols = 2 * first.len();
    let mut data = Vec::with_capacity(2 * m.len() * cols);
    for r in m {
        data.extend(phi(r));
        let wr: Vec<ExtElem> = r.iter().map(|&x| spec.mul(ExtElem::OMEGA, x)).collect();
        data.extend(phi(&wr));
    }
    GfMatrix::from_vec(spec.base(), 2 * m.len(), cols, data).rank() / 2
}
