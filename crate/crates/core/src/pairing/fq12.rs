use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::fq2::Fq2;
use super::fq6::Fq6;
use crate::bigint::U256;
use crate::error::Result;
use crate::field::FieldParams;

/// `Fq6[w] / (w^2 - v)`. Equivalently `Fq2[w] / (w^6 - xi)`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Fq12 {
    pub c0: Fq6,
    pub c1: Fq6,
}

impl Fq12 {
    pub fn new(c0: Fq6, c1: Fq6) -> Self {
        Fq12 { c0, c1 }
    }

    pub fn zero(params: &'static FieldParams) -> Self {
        Fq12 { c0: Fq6::zero(params), c1: Fq6::zero(params) }
    }

    pub fn one(params: &'static FieldParams) -> Self {
        Fq12 { c0: Fq6::one(params), c1: Fq6::zero(params) }
    }

    pub fn params(&self) -> &'static FieldParams {
        self.c0.params()
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.params())
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    /// `c0 - c1 w`, which is `x^(p^6)`.
    pub fn conjugate(&self) -> Self {
        Fq12 { c0: self.c0, c1: -self.c1 }
    }

    /// `(c0 - c1 w) / (c0^2 - c1^2 v)`.
    pub fn inverse(&self) -> Result<Self> {
        let norm = self.c0.square() - self.c1.square().mul_by_v();
        let inv = norm.inverse()?;
        Ok(Fq12 { c0: self.c0 * inv, c1: -(self.c1 * inv) })
    }

    /// Coefficients in the `w^0 .. w^5` basis over `Fq2`.
    fn to_w_basis(self) -> [Fq2; 6] {
        [self.c0.c0, self.c1.c0, self.c0.c1, self.c1.c1, self.c0.c2, self.c1.c2]
    }

    fn from_w_basis(e: [Fq2; 6]) -> Self {
        Fq12 { c0: Fq6::new(e[0], e[2], e[4]), c1: Fq6::new(e[1], e[3], e[5]) }
    }

    /// `x -> x^p`: conjugate each `Fq2` coefficient of `w^e` and scale by
    /// `xi^(e (p - 1) / 6)`.
    pub fn frobenius(&self) -> Self {
        let gamma = &super::consts().frobenius_gamma;
        let mut e = self.to_w_basis();
        for (k, c) in e.iter_mut().enumerate() {
            *c = c.conjugate() * gamma[k];
        }
        Self::from_w_basis(e)
    }

    pub fn pow(&self, exp: &U256) -> Self {
        let mut acc = Self::one(self.params());
        for i in (0..exp.bits()).rev() {
            acc = acc.square();
            if exp.bit(i) {
                acc = acc * *self;
            }
        }
        acc
    }

    pub fn pow_big(&self, exp: &BigUint) -> Self {
        let mut acc = Self::one(self.params());
        for i in (0..exp.bits()).rev() {
            acc = acc.square();
            if exp.bit(i) {
                acc = acc * *self;
            }
        }
        acc
    }
}

impl Add for Fq12 {
    type Output = Fq12;
    fn add(self, rhs: Fq12) -> Fq12 {
        Fq12 { c0: self.c0 + rhs.c0, c1: self.c1 + rhs.c1 }
    }
}

impl Sub for Fq12 {
    type Output = Fq12;
    fn sub(self, rhs: Fq12) -> Fq12 {
        Fq12 { c0: self.c0 - rhs.c0, c1: self.c1 - rhs.c1 }
    }
}

impl Mul for Fq12 {
    type Output = Fq12;
    fn mul(self, rhs: Fq12) -> Fq12 {
        let t0 = self.c0 * rhs.c0;
        let t1 = self.c1 * rhs.c1;
        let c1 = (self.c0 + self.c1) * (rhs.c0 + rhs.c1) - t0 - t1;
        Fq12 { c0: t0 + t1.mul_by_v(), c1 }
    }
}

impl Neg for Fq12 {
    type Output = Fq12;
    fn neg(self) -> Fq12 {
        Fq12 { c0: -self.c0, c1: -self.c1 }
    }
}

impl fmt::Debug for Fq12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq12({:?}, {:?})", self.c0, self.c1)
    }
}
