use std::fmt;

use super::fq2::Fq2;
use crate::bigint::U256;
use crate::error::{Error, Result};
use crate::field::{bn254_base, FieldElement};

/// Affine point on the sextic twist `y^2 = x^3 + 3 / (9 + i)` over `Fq2`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct G2Affine {
    pub x: Fq2,
    pub y: Fq2,
    pub infinity: bool,
}

/// Wire size: `x.c0 || x.c1 || y.c0 || y.c1`, 32 bytes each.
pub const G2_ENCODED_LEN: usize = 128;

impl G2Affine {
    pub fn new(x: Fq2, y: Fq2) -> Self {
        G2Affine { x, y, infinity: false }
    }

    pub fn infinity() -> Self {
        let z = Fq2::zero(bn254_base());
        G2Affine { x: z, y: z, infinity: true }
    }

    pub fn generator() -> Self {
        super::consts().g2_generator
    }

    pub fn is_on_curve(&self) -> bool {
        if self.infinity {
            return true;
        }
        self.y.square() == self.x.square() * self.x + super::consts().twist_b
    }

    pub fn is_zero_coords(&self) -> bool {
        !self.infinity && self.x.is_zero() && self.y.is_zero()
    }

    pub fn neg(&self) -> Self {
        G2Affine { y: -self.y, ..*self }
    }

    pub fn double(&self) -> Self {
        if self.infinity || self.y.is_zero() {
            return Self::infinity();
        }
        let three_x2 = self.x.square().double() + self.x.square();
        let lambda = three_x2 * self.y.double().inverse().expect("y != 0");
        self.chord(&lambda, &self.x)
    }

    pub fn add(&self, other: &G2Affine) -> Self {
        if self.infinity {
            return *other;
        }
        if other.infinity {
            return *self;
        }
        if self.x == other.x {
            return if self.y == other.y { self.double() } else { Self::infinity() };
        }
        let lambda = (other.y - self.y) * (other.x - self.x).inverse().expect("x1 != x2");
        self.chord(&lambda, &other.x)
    }

    /// Third intersection of the line with slope `lambda` through `self`, negated.
    pub(crate) fn chord(&self, lambda: &Fq2, other_x: &Fq2) -> Self {
        let x3 = lambda.square() - self.x - *other_x;
        let y3 = *lambda * (self.x - x3) - self.y;
        G2Affine::new(x3, y3)
    }

    pub fn scalar_mul(&self, k: &U256) -> Self {
        let mut acc = Self::infinity();
        for i in (0..k.bits()).rev() {
            acc = acc.double();
            if k.bit(i) {
                acc = acc.add(self);
            }
        }
        acc
    }

    pub fn mul(&self, k: &FieldElement) -> Self {
        self.scalar_mul(&k.value())
    }

    /// The p-power Frobenius endomorphism transported to the twist.
    pub fn frobenius(&self) -> Self {
        if self.infinity {
            return *self;
        }
        let gamma = &super::consts().frobenius_gamma;
        G2Affine::new(self.x.conjugate() * gamma[2], self.y.conjugate() * gamma[3])
    }

    /// Infinity is encoded with bit 255 of the first limb-field set and all else zero.
    pub fn encode(&self) -> [u8; G2_ENCODED_LEN] {
        let mut out = [0u8; G2_ENCODED_LEN];
        if self.infinity {
            out[0] = 0x80;
            return out;
        }
        out[..64].copy_from_slice(&self.x.to_be_bytes());
        out[64..].copy_from_slice(&self.y.to_be_bytes());
        out
    }

    /// Decodes and, when `check` is set, requires the point to lie on the twist.
    pub fn decode(bytes: &[u8], check: bool) -> Result<Self> {
        if bytes.len() != G2_ENCODED_LEN {
            return Err(Error::WireFormat(format!("G2 point needs 128 bytes, got {}", bytes.len())));
        }
        let p = bn254_base();
        if bytes[0] & 0x80 != 0 {
            if bytes[0] != 0x80 || bytes[1..].iter().any(|b| *b != 0) {
                return Err(Error::NonCanonicalEncoding);
            }
            return Ok(Self::infinity());
        }
        let fe = |i: usize| FieldElement::decode_slice(&bytes[32 * i..32 * (i + 1)], p);
        let point = G2Affine::new(Fq2::new(fe(0)?, fe(1)?), Fq2::new(fe(2)?, fe(3)?));
        if check && !point.is_on_curve() {
            return Err(Error::InvalidPoint);
        }
        Ok(point)
    }
}

impl fmt::Debug for G2Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.infinity {
            return write!(f, "G2(infinity)");
        }
        write!(f, "G2({:?}, {:?})", self.x, self.y)
    }
}
