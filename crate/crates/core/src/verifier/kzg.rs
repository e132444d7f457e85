use rand::Rng;

use crate::curve::{batch_normalize, bn254_g1, AffinePoint, EncodedPoint, JacobianPoint};
use crate::error::{Error, Result};
use crate::field::{bn254_scalar, FieldElement, InversePolicy};
use crate::pairing::{G2Affine, G2_ENCODED_LEN};

/// Powers-of-secret reference string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Srs {
    pub g1_powers: Vec<AffinePoint>,
    pub g2_gen: G2Affine,
    pub g2_x: G2Affine,
    /// Retained only for test oracles.
    pub secret: Option<FieldElement>,
}

/// Builds `[s^i]_1` for `i = 0..=degree` and `[s]_2`; samples `s` if absent.
pub fn srs_setup<R: Rng + ?Sized>(
    degree: usize,
    secret: Option<FieldElement>,
    rng: &mut R,
) -> Result<Srs> {
    if degree == 0 {
        return Err(Error::InvalidSetup("degree must be at least 1"));
    }
    let s = match secret {
        Some(s) if s.is_zero() => return Err(Error::InvalidSetup("secret must be nonzero")),
        Some(s) if !std::ptr::eq(s.params(), bn254_scalar()) => {
            return Err(Error::ParamsMismatch)
        }
        Some(s) => s,
        None => bn254_scalar().random_nonzero(rng),
    };
    let g = bn254_g1().generator_jacobian();
    let mut powers = Vec::with_capacity(degree + 1);
    let mut acc = g;
    for _ in 0..=degree {
        powers.push(acc);
        acc = acc.mul(&s);
    }
    let g1_powers = batch_normalize(&powers, InversePolicy::Checked, true)?
        .into_iter()
        .map(|p| AffinePoint::from_coords(p.x(), p.y(), bn254_g1()))
        .collect();
    let g2_gen = G2Affine::generator();
    Ok(Srs { g1_powers, g2_gen, g2_x: g2_gen.mul(&s), secret: Some(s) })
}

impl Srs {
    pub fn degree(&self) -> usize {
        self.g1_powers.len() - 1
    }

    /// `degree (u64 BE) || [s^i]_1 (64 bytes each) || [1]_2 || [s]_2`. The secret is never written.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 64 * self.g1_powers.len() + 2 * G2_ENCODED_LEN);
        out.extend_from_slice(&(self.degree() as u64).to_be_bytes());
        for p in &self.g1_powers {
            out.extend_from_slice(p.encode().as_bytes());
        }
        out.extend_from_slice(&self.g2_gen.encode());
        out.extend_from_slice(&self.g2_x.encode());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let head: [u8; 8] = bytes
            .get(..8)
            .and_then(|b| b.try_into().ok())
            .ok_or_else(|| Error::WireFormat("SRS shorter than its header".into()))?;
        let degree = usize::try_from(u64::from_be_bytes(head))
            .ok()
            .filter(|d| *d >= 1 && *d < (1 << 24))
            .ok_or(Error::InvalidSetup("degree out of range"))?;
        let expected = 8 + 64 * (degree + 1) + 2 * G2_ENCODED_LEN;
        if bytes.len() != expected {
            return Err(Error::WireFormat(format!("SRS needs {expected} bytes, got {}", bytes.len())));
        }
        let mut g1_powers = Vec::with_capacity(degree + 1);
        for chunk in bytes[8..8 + 64 * (degree + 1)].chunks_exact(64) {
            let p = AffinePoint::decode(
                &EncodedPoint::from_slice(chunk)?,
                bn254_g1(),
                crate::curve::PointValidationPolicy::RejectInvalid,
            )?;
            g1_powers.push(p);
        }
        let g2 = &bytes[8 + 64 * (degree + 1)..];
        let g2_gen = G2Affine::decode(&g2[..G2_ENCODED_LEN], true)?;
        let g2_x = G2Affine::decode(&g2[G2_ENCODED_LEN..], true)?;
        Ok(Srs { g1_powers, g2_gen, g2_x, secret: None })
    }
}

/// Horner evaluation; coefficients are lowest degree first.
pub fn poly_eval(poly: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = x.params().zero();
    for c in poly.iter().rev() {
        acc = acc * *x + *c;
    }
    acc
}

/// Synthetic division by `X - point`; returns the quotient and `poly(point)`.
pub fn divide_by_linear(poly: &[FieldElement], point: &FieldElement) -> (Vec<FieldElement>, FieldElement) {
    let zero = point.params().zero();
    if poly.is_empty() {
        return (Vec::new(), zero);
    }
    let mut quotient = vec![zero; poly.len() - 1];
    let mut carry = zero;
    for i in (0..poly.len()).rev() {
        let cur = poly[i] + carry * *point;
        if i == 0 {
            return (quotient, cur);
        }
        quotient[i - 1] = cur;
        carry = cur;
    }
    unreachable!()
}

/// `sum coeff_i [s^i]_1`.
pub fn kzg_commit(poly: &[FieldElement], srs: &Srs) -> Result<JacobianPoint> {
    if poly.len() > srs.g1_powers.len() {
        return Err(Error::DegreeTooLarge { degree: poly.len() - 1, max: srs.degree() });
    }
    let mut acc = bn254_g1().identity();
    for (c, p) in poly.iter().zip(&srs.g1_powers) {
        if !c.is_zero() {
            acc = acc.add(&p.to_jacobian().mul(c));
        }
    }
    Ok(acc)
}

/// Returns `poly(point)` and the commitment to `(poly - poly(point)) / (X - point)`.
pub fn kzg_open(poly: &[FieldElement], point: &FieldElement, srs: &Srs) -> Result<(FieldElement, JacobianPoint)> {
    if poly.len() > srs.g1_powers.len() {
        return Err(Error::DegreeTooLarge { degree: poly.len() - 1, max: srs.degree() });
    }
    let (quotient, eval) = divide_by_linear(poly, point);
    Ok((eval, kzg_commit(&quotient, srs)?))
}

/// Canonical wire form of a projective point; the identity becomes flagged infinity.
pub fn encode_point(p: &JacobianPoint) -> EncodedPoint {
    if p.is_identity() {
        return AffinePoint::infinity(p.curve()).encode();
    }
    p.to_affine(InversePolicy::Checked).expect("Z != 0").encode()
}
