use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fq2::Fq2;
use crate::error::Result;
use crate::field::FieldParams;

/// `Fq2[v] / (v^3 - xi)` with `xi = 9 + i`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Fq6 {
    pub c0: Fq2,
    pub c1: Fq2,
    pub c2: Fq2,
}

impl Fq6 {
    pub fn new(c0: Fq2, c1: Fq2, c2: Fq2) -> Self {
        Fq6 { c0, c1, c2 }
    }

    pub fn zero(params: &'static FieldParams) -> Self {
        let z = Fq2::zero(params);
        Fq6 { c0: z, c1: z, c2: z }
    }

    pub fn one(params: &'static FieldParams) -> Self {
        Fq6 { c0: Fq2::one(params), ..Self::zero(params) }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn params(&self) -> &'static FieldParams {
        self.c0.params()
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    /// Multiplication by `v`: `(a0, a1, a2) -> (xi a2, a0, a1)`.
    pub fn mul_by_v(&self) -> Self {
        Fq6 { c0: self.c2.mul_by_nonresidue(), c1: self.c0, c2: self.c1 }
    }

    pub fn inverse(&self) -> Result<Self> {
        let (a0, a1, a2) = (self.c0, self.c1, self.c2);
        let t0 = a0.square() - (a1 * a2).mul_by_nonresidue();
        let t1 = a2.square().mul_by_nonresidue() - a0 * a1;
        let t2 = a1.square() - a0 * a2;
        let norm = a0 * t0 + (a2 * t1 + a1 * t2).mul_by_nonresidue();
        let inv = norm.inverse()?;
        Ok(Fq6 { c0: t0 * inv, c1: t1 * inv, c2: t2 * inv })
    }
}

impl Add for Fq6 {
    type Output = Fq6;
    fn add(self, rhs: Fq6) -> Fq6 {
        Fq6 { c0: self.c0 + rhs.c0, c1: self.c1 + rhs.c1, c2: self.c2 + rhs.c2 }
    }
}

impl Sub for Fq6 {
    type Output = Fq6;
    fn sub(self, rhs: Fq6) -> Fq6 {
        Fq6 { c0: self.c0 - rhs.c0, c1: self.c1 - rhs.c1, c2: self.c2 - rhs.c2 }
    }
}

impl Mul for Fq6 {
    type Output = Fq6;
    fn mul(self, rhs: Fq6) -> Fq6 {
        let (a0, a1, a2) = (self.c0, self.c1, self.c2);
        let (b0, b1, b2) = (rhs.c0, rhs.c1, rhs.c2);
        let t0 = a0 * b0;
        let t1 = a1 * b1;
        let t2 = a2 * b2;
        let c0 = t0 + ((a1 + a2) * (b1 + b2) - t1 - t2).mul_by_nonresidue();
        let c1 = (a0 + a1) * (b0 + b1) - t0 - t1 + t2.mul_by_nonresidue();
        let c2 = (a0 + a2) * (b0 + b2) - t0 - t2 + t1;
        Fq6 { c0, c1, c2 }
    }
}

impl Neg for Fq6 {
    type Output = Fq6;
    fn neg(self) -> Fq6 {
        Fq6 { c0: -self.c0, c1: -self.c1, c2: -self.c2 }
    }
}

impl fmt::Debug for Fq6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq6({:?}, {:?}, {:?})", self.c0, self.c1, self.c2)
    }
}
