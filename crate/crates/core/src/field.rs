//! Arithmetic in the base field `F_q` and in the quadratic extension
//! `F_{q^2} = F_q(ω)`.
//!
//! Base-field elements are plain `u8` values: for `q = p^e` the integer
//! encodes the coefficient vector of a polynomial over `F_p` in base `p`,
//! least significant digit first, reduced modulo a fixed monic irreducible
//! polynomial of degree `e`. Every supported field is built once and shared
//! as a `&'static BaseField`.
//!
//! Extension elements are coordinate pairs `a + bω` in the basis `{1, ω}`,
//! where `ω` is a root of `x² + c₁x + c₀`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::GfMatrix;

/// An element of a base field, encoded as described in the module docs.
pub type Fq = u8;

/// Largest supported base field.
pub const MAX_Q: usize = 16;

pub struct BaseField {
    q: usize,
    p: usize,
    e: usize,
    modulus: Vec<u8>,
    add: Vec<u8>,
    neg: Vec<u8>,
    exp: Vec<u8>,
    log: Vec<u8>,
}

static FIELDS: [OnceLock<BaseField>; MAX_Q + 1] = [const { OnceLock::new() }; MAX_Q + 1];

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn digits(mut v: usize, p: usize, e: usize) -> Vec<usize> {
    let mut out = vec![0; e];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Multiply two residues modulo a monic polynomial of degree `e` over `F_p`.
fn poly_mulmod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let e = a.len();
    let mut prod = vec![0; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (e..2 * e).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate().take(e) {
            let idx = top - e + j;
            prod[idx] = (prod[idx] + p - (c * m) % p) % p;
        }
        prod[top] = 0;
    }
    prod.truncate(e);
    prod
}

impl BaseField {
    /// Shared instance of `F_q`.
    pub fn get(q: usize) -> Result<&'static BaseField> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(Error::FieldTooLarge { q, max: MAX_Q });
        }
        Ok(FIELDS[q].get_or_init(|| BaseField::build(q, p, e)))
    }

    fn build(q: usize, p: usize, e: usize) -> BaseField {
        // Lowest-encoded monic irreducible modulus of degree e: the first one
        // whose residue ring has no zero divisors.
        let mut modulus = vec![0usize; e + 1];
        let mut mul = vec![0u8; q * q];
        let mut found = false;
        for low in 0..q {
            let mut m = digits(low, p, e);
            m.push(1);
            let mut ok = true;
            for a in 0..q {
                let da = digits(a, p, e);
                for b in 0..q {
                    let prod = undigits(&poly_mulmod(&da, &digits(b, p, e), &m, p), p);
                    if a != 0 && b != 0 && prod == 0 {
                        ok = false;
                        break;
                    }
                    mul[a * q + b] = prod as u8;
                }
                if !ok {
                    break;
                }
            }
            if ok {
                modulus = m;
                found = true;
                break;
            }
        }
        assert!(found, "no irreducible polynomial of degree {e} over F_{p}");

        let mut add = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as u8;
            }
            let n: Vec<usize> = da.iter().map(|x| (p - x) % p).collect();
            neg[a] = undigits(&n, p) as u8;
        }

        let generator = (2..q.max(2))
            .chain(std::iter::once(1))
            .find(|&g| {
                let mut x = 1usize;
                for step in 1..q {
                    x = mul[x * q + g] as usize;
                    if x == 1 {
                        return step == q - 1;
                    }
                }
                false
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u8; 2 * (q - 1)];
        let mut log = vec![0u8; q];
        let mut x = 1usize;
        for i in 0..2 * (q - 1) {
            exp[i] = x as u8;
            if i < q - 1 {
                log[x] = i as u8;
            }
            x = mul[x * q + generator] as usize;
        }

        BaseField {
            q,
            p,
            e,
            modulus: modulus.iter().map(|&c| c as u8).collect(),
            add,
            neg,
            exp,
            log,
        }
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    /// Coefficients of the defining modulus over `F_p`, constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Integer encoding of the modulus (base-`p` digits, little-endian).
    pub fn modulus_code(&self) -> usize {
        undigits(
            &self.modulus.iter().map(|&c| c as usize).collect::<Vec<_>>(),
            self.p,
        )
    }

    pub fn check(&self, v: usize) -> Result<Fq> {
        if v < self.q {
            Ok(v as Fq)
        } else {
            Err(Error::ElementOutOfRange { value: v, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q as u8).map(|x| x as Fq)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize] as usize;
        Some(self.exp[(self.q - 1 - l) % (self.q - 1)])
    }

    /// Table of `x ↦ c·x`, used by the row-operation kernels.
    pub fn mul_table(&self, c: Fq) -> Vec<Fq> {
        self.elements().map(|x| self.mul(c, x)).collect()
    }
}

impl fmt::Debug for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for BaseField {}

/// An element `a + bω` of `F_{q^2}` in the basis `{1, ω}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExtElem {
    pub a: Fq,
    pub b: Fq,
}

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem { a: 0, b: 0 };
    pub const ONE: ExtElem = ExtElem { a: 1, b: 0 };
    pub const OMEGA: ExtElem = ExtElem { a: 0, b: 1 };

    pub fn new(a: Fq, b: Fq) -> Self {
        ExtElem { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// The field pair `(F_q, F_{q^2})` with `ω` a root of `x² + c₁x + c₀`.
#[derive(Clone, Copy)]
pub struct FieldSpec {
    base: &'static BaseField,
    c0: Fq,
    c1: Fq,
    omega_order: usize,
}

impl FieldSpec {
    /// Validates `x² + c₁x + c₀` and builds the extension.
    ///
    /// Irreducibility is all the linearity test needs. `ω` is not required
    /// to be primitive; [`FieldSpec::is_primitive`] reports whether it is.
    pub fn new(q: usize, c0: Fq, c1: Fq) -> Result<Self> {
        let base = BaseField::get(q)?;
        base.check(c0 as usize)?;
        base.check(c1 as usize)?;
        if c0 == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let has_root = base.elements().any(|x| {
            let v = base.add(base.add(base.mul(x, x), base.mul(c1, x)), c0);
            v == 0
        });
        if has_root {
            return Err(Error::ReduciblePolynomial { c0, c1 });
        }
        let mut spec = FieldSpec {
            base,
            c0,
            c1,
            omega_order: 0,
        };
        let mut z = ExtElem::OMEGA;
        let mut order = 1;
        while z != ExtElem::ONE {
            z = spec.mul(z, ExtElem::OMEGA);
            order += 1;
        }
        spec.omega_order = order;
        Ok(spec)
    }

    /// `F_4 = F_2(ω)` with `ω² + ω + 1 = 0`.
    pub fn quaternary() -> Self {
        FieldSpec::new(2, 1, 1).expect("x^2+x+1 is irreducible over F_2")
    }

    pub fn base(&self) -> &'static BaseField {
        self.base
    }

    pub fn q(&self) -> usize {
        self.base.q
    }

    pub fn c0(&self) -> Fq {
        self.c0
    }

    pub fn c1(&self) -> Fq {
        self.c1
    }

    /// Multiplicative order of `ω`.
    pub fn omega_order(&self) -> usize {
        self.omega_order
    }

    pub fn is_primitive(&self) -> bool {
        self.omega_order == self.q() * self.q() - 1
    }

    /// `[[0, 1], [−c₀, −c₁]]`.
    pub fn companion(&self) -> [[Fq; 2]; 2] {
        [[0, 1], [self.base.neg(self.c0), self.base.neg(self.c1)]]
    }

    pub fn companion_matrix(&self) -> GfMatrix {
        let m = self.companion();
        GfMatrix::from_vec(self.base, 2, 2, vec![m[0][0], m[0][1], m[1][0], m[1][1]])
    }

    pub fn elem(&self, a: usize, b: usize) -> Result<ExtElem> {
        Ok(ExtElem::new(self.base.check(a)?, self.base.check(b)?))
    }

    pub fn ext_elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        self.base
            .elements()
            .flat_map(move |b| self.base.elements().map(move |a| ExtElem::new(a, b)))
    }

    pub fn add(&self, z: ExtElem, w: ExtElem) -> ExtElem {
        ExtElem::new(self.base.add(z.a, w.a), self.base.add(z.b, w.b))
    }

    pub fn sub(&self, z: ExtElem, w: ExtElem) -> ExtElem {
        ExtElem::new(self.base.sub(z.a, w.a), self.base.sub(z.b, w.b))
    }

    pub fn neg(&self, z: ExtElem) -> ExtElem {
        ExtElem::new(self.base.neg(z.a), self.base.neg(z.b))
    }

    /// Scale by a base-field element.
    pub fn scale(&self, c: Fq, z: ExtElem) -> ExtElem {
        ExtElem::new(self.base.mul(c, z.a), self.base.mul(c, z.b))
    }

    /// `(a + bω)(c + dω)` reduced with `ω² = −c₁ω − c₀`.
    pub fn mul(&self, z: ExtElem, w: ExtElem) -> ExtElem {
        let f = self.base;
        let bd = f.mul(z.b, w.b);
        let a = f.sub(f.mul(z.a, w.a), f.mul(self.c0, bd));
        let b = f.sub(f.add(f.mul(z.a, w.b), f.mul(z.b, w.a)), f.mul(self.c1, bd));
        ExtElem::new(a, b)
    }

    pub fn pow(&self, z: ExtElem, mut e: usize) -> ExtElem {
        let mut base = z;
        let mut acc = ExtElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, z: ExtElem) -> Option<ExtElem> {
        if z.is_zero() {
            return None;
        }
        let q = self.q();
        Some(self.pow(z, q * q - 2))
    }

    /// The `q`-power Frobenius map.
    pub fn conj(&self, z: ExtElem) -> ExtElem {
        self.pow(z, self.q())
    }

    /// `ω^i`.
    pub fn omega_pow(&self, i: usize) -> ExtElem {
        self.pow(ExtElem::OMEGA, i % self.omega_order)
    }

    /// Smallest `i` with `ω^i = z`, if any.
    pub fn omega_log(&self, z: ExtElem) -> Option<usize> {
        let mut x = ExtElem::ONE;
        for i in 0..self.omega_order {
            if x == z {
                return Some(i);
            }
            x = self.mul(x, ExtElem::OMEGA);
        }
        None
    }

    /// Regular representation `aI₂ + b·M_ω`.
    pub fn regular_repr(&self, z: ExtElem) -> GfMatrix {
        let f = self.base;
        let m = self.companion();
        let entry = |i: usize, j: usize| {
            let diag = if i == j { z.a } else { 0 };
            f.add(diag, f.mul(z.b, m[i][j]))
        };
        GfMatrix::from_vec(f, 2, 2, vec![entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)])
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q() && self.c0 == other.c0 && self.c1 == other.c1
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(q={} c0={} c1={})", self.q(), self.c0, self.c1)
    }
}
