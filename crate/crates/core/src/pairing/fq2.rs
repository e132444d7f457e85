use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::bigint::U256;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldParams, InversePolicy};

/// `Fq[i] / (i^2 + 1)`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Fq2 {
    pub c0: FieldElement,
    pub c1: FieldElement,
}

impl Fq2 {
    pub fn new(c0: FieldElement, c1: FieldElement) -> Self {
        assert!(c0.same_field(&c1), "Fq2 coefficients from different fields");
        Fq2 { c0, c1 }
    }

    pub fn zero(params: &'static FieldParams) -> Self {
        Fq2 { c0: params.zero(), c1: params.zero() }
    }

    pub fn one(params: &'static FieldParams) -> Self {
        Fq2 { c0: params.one(), c1: params.zero() }
    }

    pub fn from_base(c0: FieldElement) -> Self {
        Fq2 { c0, c1: c0.params().zero() }
    }

    pub fn params(&self) -> &'static FieldParams {
        self.c0.params()
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }

    pub fn double(&self) -> Self {
        Fq2 { c0: self.c0.double(), c1: self.c1.double() }
    }

    /// Complex squaring: `(a + b)(a - b) + 2ab i`.
    pub fn square(&self) -> Self {
        let ab = self.c0 * self.c1;
        Fq2 { c0: (self.c0 + self.c1) * (self.c0 - self.c1), c1: ab.double() }
    }

    pub fn conjugate(&self) -> Self {
        Fq2 { c0: self.c0, c1: -self.c1 }
    }

    /// `x^p` is complex conjugation since `p = 3 mod 4`.
    pub fn frobenius(&self) -> Self {
        self.conjugate()
    }

    pub fn mul_by_base(&self, k: &FieldElement) -> Self {
        Fq2 { c0: self.c0 * *k, c1: self.c1 * *k }
    }

    /// Multiplication by the sextic non-residue `9 + i`.
    pub fn mul_by_nonresidue(&self) -> Self {
        let nine = self.params().from_u64(9);
        Fq2 { c0: self.c0 * nine - self.c1, c1: self.c0 + self.c1 * nine }
    }

    /// `(a - bi) / (a^2 + b^2)`; zero is an error.
    pub fn inverse(&self) -> Result<Self> {
        let norm = self.c0.square() + self.c1.square();
        let inv = norm.inverse(InversePolicy::Checked).map_err(|_| Error::ZeroInverse { index: None })?;
        Ok(Fq2 { c0: self.c0 * inv, c1: -(self.c1 * inv) })
    }

    pub fn pow(&self, exp: &U256) -> Self {
        let mut acc = Fq2::one(self.params());
        for i in (0..exp.bits()).rev() {
            acc = acc.square();
            if exp.bit(i) {
                acc = acc * *self;
            }
        }
        acc
    }

    /// Square root in `Fq2` (`p = 3 mod 4`), `None` for non-residues.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(*self);
        }
        let params = self.params();
        let p = params.modulus();
        // a1 = self^((p - 3) / 4)
        let e = p.wrapping_sub(&U256::from_u64(3)).shr1().shr1();
        let a1 = self.pow(&e);
        let alpha = a1.square() * *self;
        let x0 = a1 * *self;
        let minus_one = Fq2::from_base(-params.one());
        let candidate = if alpha == minus_one {
            Fq2 { c0: -x0.c1, c1: x0.c0 }
        } else {
            let b = (alpha + Fq2::one(params)).pow(&p.wrapping_sub(&U256::ONE).shr1());
            b * x0
        };
        (candidate.square() == *self).then_some(candidate)
    }

    pub fn to_be_bytes(&self) -> [u8; 64] {
        let mut out = [0u8; 64];
        out[..32].copy_from_slice(&self.c0.to_be_bytes());
        out[32..].copy_from_slice(&self.c1.to_be_bytes());
        out
    }
}

impl Add for Fq2 {
    type Output = Fq2;
    fn add(self, rhs: Fq2) -> Fq2 {
        Fq2 { c0: self.c0 + rhs.c0, c1: self.c1 + rhs.c1 }
    }
}

impl Sub for Fq2 {
    type Output = Fq2;
    fn sub(self, rhs: Fq2) -> Fq2 {
        Fq2 { c0: self.c0 - rhs.c0, c1: self.c1 - rhs.c1 }
    }
}

impl Mul for Fq2 {
    type Output = Fq2;
    /// Karatsuba: three base-field products.
    fn mul(self, rhs: Fq2) -> Fq2 {
        let t0 = self.c0 * rhs.c0;
        let t1 = self.c1 * rhs.c1;
        let c1 = (self.c0 + self.c1) * (rhs.c0 + rhs.c1) - t0 - t1;
        Fq2 { c0: t0 - t1, c1 }
    }
}

impl Neg for Fq2 {
    type Output = Fq2;
    fn neg(self) -> Fq2 {
        Fq2 { c0: -self.c0, c1: -self.c1 }
    }
}

impl fmt::Debug for Fq2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq2({} + {}*i)", self.c0, self.c1)
    }
}
