//! Forged proofs for the batched verifier and the `(r, s) = (0, 0)` ECDSA vector.

use rand::Rng;

use crate::bigint::U256;
use crate::curve::{bn254_g1, AffinePoint, CurveParams, EncodedPoint, JacobianPoint, PointValidationPolicy};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldParams, InversePolicy};
use crate::verifier::{encode_point, BatchedOpeningProof, Layout};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForgeryMode {
    /// Every byte of the proof is zero.
    AllZeroBytes,
    /// On-curve commitments and random evaluations, with both W points `(0, 0)`.
    ZeroWOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForgeryTemplate {
    pub layout: Layout,
    pub mode: ForgeryMode,
}

/// Proof bytes of exactly `layout.proof_len()`. `AllZeroBytes` draws nothing from `rng`.
pub fn forge_zero_proof<R: Rng + ?Sized>(template: &ForgeryTemplate, rng: &mut R) -> Vec<u8> {
    let layout = template.layout;
    match template.mode {
        ForgeryMode::AllZeroBytes => vec![0u8; layout.proof_len()],
        ForgeryMode::ZeroWOnly => {
            let curve = bn254_g1();
            let scalar = curve.scalar_field();
            let n = layout.n_z + layout.n_zw;
            let commitments = (0..n)
                .map(|_| encode_point(&curve.generator_jacobian().mul(&scalar.random_nonzero(rng))))
                .collect();
            let mut evals = |k: usize| (0..k).map(|_| scalar.random(rng)).collect::<Vec<_>>();
            let evals_z = evals(layout.n_z);
            let evals_zw = evals(layout.n_zw);
            BatchedOpeningProof {
                commitments,
                evals_z,
                evals_zw,
                w_z: EncodedPoint::zero(),
                w_zw: EncodedPoint::zero(),
            }
            .to_bytes()
        }
    }
}

/// ECDSA over a prime-order short-Weierstrass group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EcdsaParams {
    pub curve: &'static CurveParams,
}

impl EcdsaParams {
    pub fn new(curve: &'static CurveParams) -> Self {
        EcdsaParams { curve }
    }

    pub fn bn254() -> Self {
        Self::new(bn254_g1())
    }

    /// The group order `n`.
    pub fn order(&self) -> &'static FieldParams {
        self.curve.scalar_field()
    }

    pub fn generator(&self) -> AffinePoint {
        self.curve.generator()
    }

    pub fn public_key(&self, private_key: &FieldElement) -> Result<AffinePoint> {
        self.check_key(private_key)?;
        self.curve.generator_jacobian().mul(private_key).to_affine(InversePolicy::Checked)
    }

    pub fn keygen<R: Rng + ?Sized>(&self, rng: &mut R) -> (FieldElement, AffinePoint) {
        let d = self.order().random_nonzero(rng);
        let q = self.public_key(&d).expect("nonzero key");
        (d, q)
    }

    fn check_key(&self, d: &FieldElement) -> Result<()> {
        if !std::ptr::eq(d.params(), self.order()) {
            return Err(Error::ParamsMismatch);
        }
        if d.is_zero() {
            return Err(Error::InvalidPrivateKey);
        }
        Ok(())
    }

    /// `x(R) mod n`, where `x` of the identity reads as 0.
    fn x_mod_n(&self, r: &JacobianPoint) -> FieldElement {
        if r.is_identity() {
            return self.order().zero();
        }
        let affine = r.to_affine(InversePolicy::Checked).expect("Z != 0");
        affine.x().reduce_into(self.order())
    }
}

/// Raw integers; `(0, 0)` is representable on purpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EcdsaSignature {
    pub r: U256,
    pub s: U256,
}

impl EcdsaSignature {
    pub const LEN: usize = 64;

    pub fn zero() -> Self {
        EcdsaSignature { r: U256::ZERO, s: U256::ZERO }
    }

    /// `r || s`, 32 bytes each, big-endian.
    pub fn to_bytes(&self) -> [u8; 64] {
        let mut out = [0u8; 64];
        out[..32].copy_from_slice(&self.r.to_be_bytes());
        out[32..].copy_from_slice(&self.s.to_be_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != Self::LEN {
            return Err(Error::WireFormat(format!("signature needs 64 bytes, got {}", bytes.len())));
        }
        Ok(EcdsaSignature {
            r: U256::from_be_bytes(bytes[..32].try_into().unwrap()),
            s: U256::from_be_bytes(bytes[32..].try_into().unwrap()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EcdsaPolicy {
    /// Fermat inverse of `s`, no range checks, `x(infinity) = 0`.
    VulnerableNoRangeCheck,
    Hardened,
}

/// Signs with a fresh random nonce, resampling until `r != 0` and `s != 0`.
pub fn ecdsa_sign<R: Rng + ?Sized>(
    params: &EcdsaParams,
    private_key: &FieldElement,
    msg_hash: &FieldElement,
    rng: &mut R,
) -> Result<EcdsaSignature> {
    params.check_key(private_key)?;
    if !std::ptr::eq(msg_hash.params(), params.order()) {
        return Err(Error::ParamsMismatch);
    }
    let n = params.order();
    loop {
        let k = n.random_nonzero(rng);
        let r = params.x_mod_n(&params.curve.generator_jacobian().mul(&k));
        if r.is_zero() {
            continue;
        }
        let k_inv = k.inverse(InversePolicy::Checked)?;
        let s = k_inv * (*msg_hash + r * *private_key);
        if s.is_zero() {
            continue;
        }
        return Ok(EcdsaSignature { r: r.value(), s: s.value() });
    }
}

/// Verifies `sig` on `msg_hash`. The public key must be a finite curve point.
pub fn ecdsa_verify(
    params: &EcdsaParams,
    public_key: &AffinePoint,
    msg_hash: &FieldElement,
    sig: &EcdsaSignature,
    policy: EcdsaPolicy,
) -> Result<bool> {
    if public_key.curve() != params.curve {
        return Err(Error::InvalidPoint);
    }
    let q = AffinePoint::decode(&public_key.encode(), params.curve, PointValidationPolicy::RejectInvalid)?;
    if q.is_infinity_msb() {
        return Err(Error::InvalidPoint);
    }
    if !std::ptr::eq(msg_hash.params(), params.order()) {
        return Err(Error::ParamsMismatch);
    }
    let n = params.order();
    let g = params.curve.generator_jacobian();
    match policy {
        EcdsaPolicy::VulnerableNoRangeCheck => {
            let r = n.reduce(sig.r);
            let w = n.reduce(sig.s).inverse(InversePolicy::FermatNoZeroCheck)?;
            let point = g.mul(&(*msg_hash * w)).add(&q.to_jacobian().mul(&(r * w)));
            Ok(params.x_mod_n(&point) == r)
        }
        EcdsaPolicy::Hardened => {
            let in_range = |v: &U256| !v.is_zero() && *v < n.modulus();
            if !in_range(&sig.r) || !in_range(&sig.s) {
                return Ok(false);
            }
            let r = n.element(sig.r)?;
            let w = n.element(sig.s)?.inverse(InversePolicy::Checked)?;
            let point = g.mul(&(*msg_hash * w)).add(&q.to_jacobian().mul(&(r * w)));
            if point.is_identity() {
                return Ok(false);
            }
            Ok(params.x_mod_n(&point) == r)
        }
    }
}
