//! A differential verification lab for the zero-point forgery against a
//! batched-KZG pairing verifier.

pub mod attack;
pub mod bigint;
pub mod error;
pub mod field;

pub use bigint::U256;
pub use error::{Error, Result};
pub use field::{batch_inverse, FieldElement, FieldParams, InversePolicy};
pub mod curve;
pub mod pairing;
pub mod transcript;
pub mod verifier;

pub use curve::{
    batch_normalize, AffinePoint, CurveParams, EncodedPoint, JacobianPoint, PointValidationPolicy,
    Validity,
};
pub use pairing::{pairing, pairing_product_check, G2Affine, GtElement, PairingZeroPolicy};
pub use transcript::{Challenges, Transcript};
pub use verifier::{
    prove, srs_setup, verify, BatchedOpeningProof, Layout, RejectReason, Srs, Verdict, Verifier,
    VerifierKey, VerifierTrace, VulnProfile,
};
pub use attack::{
    ecdsa_sign, ecdsa_verify, forge_zero_proof, EcdsaParams, EcdsaPolicy, EcdsaSignature,
    ForgeryMode, ForgeryTemplate,
};
