//! Batched-KZG verifier with five independently switchable weaknesses.
//!
//! The final equation is
//!
//! ```text
//! e(P1, [x]_2) * e(P0, [1]_2) == 1
//! P1 = W_z + u W_zw
//! P0 = -(z W_z + u z omega W_zw + F - E)
//! ```
//!
//! with `F = sum v^i C_i + u sum v^j C'_j` and
//! `E = (sum v^i s_i + u sum v^j s'_j) G1`. The `C_i` are opened at `z`, the
//! `C'_j` at `z omega`.
//!
//! Each [`VulnProfile`] flag selects one stage of the pipeline:
//!
//! | step | stage | vulnerable | hardened |
//! |------|-------|------------|----------|
//! | 1 | decode | mark off-curve points and continue | reject |
//! | 2 | infinity check | reads the x-register MSB | rejects `Z = 0` before normalization |
//! | 3 | inversion | Fermat, `0^-1 = 0` | checked |
//! | 4 | normalization | shared batch, no `Z = 0` check | rejects `Z = 0` |
//! | 5 | pairing | `(0, 0)` is the identity | rejects non-group input |

mod kzg;

use std::fmt;

pub use kzg::{divide_by_linear, encode_point, kzg_commit, kzg_open, poly_eval, srs_setup, Srs};

use crate::bigint::U256;
use crate::curve::{
    batch_normalize, bn254_g1, AffinePoint, EncodedPoint, JacobianPoint, PointValidationPolicy,
    Validity,
};
use crate::error::{Error, Result};
use crate::field::{bn254_scalar, FieldElement, InversePolicy};
use crate::pairing::{pairing_product_check, G2Affine, PairingZeroPolicy, G2_ENCODED_LEN};
use crate::transcript::{Challenges, Transcript};

/// Two-adicity of the scalar field's multiplicative group used for domains.
pub const MAX_LOG_DOMAIN: u32 = 28;

/// `5^((r - 1) / 2^28)`, a primitive `2^28`-th root of unity.
const ROOT_OF_UNITY_2_28: &str =
    "19103219067921713944291392827692070036145651957329286315305642004821462161904";

/// Generator of the multiplicative subgroup of order `domain_size`.
pub fn domain_generator(domain_size: u64) -> Result<FieldElement> {
    if domain_size == 0 || !domain_size.is_power_of_two() || domain_size > 1 << MAX_LOG_DOMAIN {
        return Err(Error::InvalidSetup("domain size must be a power of two up to 2^28"));
    }
    let root = bn254_scalar().element(U256::from_dec(ROOT_OF_UNITY_2_28).unwrap()).unwrap();
    Ok(root.pow_u64((1u64 << MAX_LOG_DOMAIN) / domain_size))
}

/// Which of the five pipeline stages keep their weakness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VulnProfile {
    pub continue_on_invalid_point: bool,
    pub msb_infinity_check: bool,
    pub fermat_zero_inverse: bool,
    pub shared_batch_normalize_no_z_check: bool,
    pub pairing_zero_is_identity: bool,
}

impl VulnProfile {
    pub const VULNERABLE: VulnProfile = VulnProfile::from_flags([true; 5]);
    pub const HARDENED: VulnProfile = VulnProfile::from_flags([false; 5]);

    /// Flags in step order; `true` is vulnerable.
    pub const fn from_flags(f: [bool; 5]) -> Self {
        VulnProfile {
            continue_on_invalid_point: f[0],
            msb_infinity_check: f[1],
            fermat_zero_inverse: f[2],
            shared_batch_normalize_no_z_check: f[3],
            pairing_zero_is_identity: f[4],
        }
    }

    pub const fn flags(&self) -> [bool; 5] {
        [
            self.continue_on_invalid_point,
            self.msb_infinity_check,
            self.fermat_zero_inverse,
            self.shared_batch_normalize_no_z_check,
            self.pairing_zero_is_identity,
        ]
    }

    /// The vulnerable profile with only `step` (1..=5) hardened.
    pub fn single_fix(step: u8) -> Self {
        assert!((1..=5).contains(&step), "steps are numbered 1 to 5");
        let mut f = [true; 5];
        f[usize::from(step - 1)] = false;
        Self::from_flags(f)
    }

    pub fn is_fully_vulnerable(&self) -> bool {
        self.flags().iter().all(|f| *f)
    }

    fn point_policy(&self) -> PointValidationPolicy {
        if self.continue_on_invalid_point {
            PointValidationPolicy::ContinueOnInvalid
        } else {
            PointValidationPolicy::RejectInvalid
        }
    }

    fn inverse_policy(&self) -> InversePolicy {
        if self.fermat_zero_inverse {
            InversePolicy::FermatNoZeroCheck
        } else {
            InversePolicy::Checked
        }
    }

    fn pairing_policy(&self) -> PairingZeroPolicy {
        if self.pairing_zero_is_identity {
            PairingZeroPolicy::ZeroIsIdentity
        } else {
            PairingZeroPolicy::RejectNonGroupInput
        }
    }
}

impl fmt::Display for VulnProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::VULNERABLE {
            return f.write_str("vulnerable");
        }
        if *self == Self::HARDENED {
            return f.write_str("hardened");
        }
        let parts: Vec<&str> = self.flags().iter().map(|v| if *v { "v" } else { "h" }).collect();
        f.write_str(&parts.join(","))
    }
}

/// Number of commitments opened at `z` and at `z omega`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Layout {
    pub n_z: usize,
    pub n_zw: usize,
}

impl Layout {
    pub fn proof_len(&self) -> usize {
        let n = self.n_z + self.n_zw;
        EncodedPoint::LEN * n + 32 * n + 2 * EncodedPoint::LEN
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifierKey {
    pub domain_size: u64,
    pub omega: FieldElement,
    pub layout: Layout,
    pub g2_gen: G2Affine,
    pub g2_x: G2Affine,
}

const VK_LEN: usize = 8 + 32 + 16 + 2 * G2_ENCODED_LEN;

impl VerifierKey {
    pub fn new(srs: &Srs, domain_size: u64, layout: Layout) -> Result<Self> {
        if layout.n_z + layout.n_zw == 0 {
            return Err(Error::InvalidSetup("layout needs at least one commitment"));
        }
        Ok(VerifierKey {
            domain_size,
            omega: domain_generator(domain_size)?,
            layout,
            g2_gen: srs.g2_gen,
            g2_x: srs.g2_x,
        })
    }

    /// `domain (u64) || omega || n_z (u64) || n_zw (u64) || [1]_2 || [x]_2`, big-endian.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(VK_LEN);
        out.extend_from_slice(&self.domain_size.to_be_bytes());
        out.extend_from_slice(&self.omega.to_be_bytes());
        out.extend_from_slice(&(self.layout.n_z as u64).to_be_bytes());
        out.extend_from_slice(&(self.layout.n_zw as u64).to_be_bytes());
        out.extend_from_slice(&self.g2_gen.encode());
        out.extend_from_slice(&self.g2_x.encode());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != VK_LEN {
            return Err(Error::WireFormat(format!("verifier key needs {VK_LEN} bytes, got {}", bytes.len())));
        }
        let u64_at = |i: usize| u64::from_be_bytes(bytes[i..i + 8].try_into().unwrap());
        let domain_size = u64_at(0);
        let omega = FieldElement::decode_slice(&bytes[8..40], bn254_scalar())?;
        if omega != domain_generator(domain_size)? {
            return Err(Error::InvalidSetup("omega does not generate the declared domain"));
        }
        let count = |i: usize| {
            usize::try_from(u64_at(i))
                .ok()
                .filter(|n| *n <= 1 << 16)
                .ok_or(Error::InvalidSetup("commitment count out of range"))
        };
        let layout = Layout { n_z: count(40)?, n_zw: count(48)? };
        if layout.n_z + layout.n_zw == 0 {
            return Err(Error::InvalidSetup("layout needs at least one commitment"));
        }
        let g2_gen = G2Affine::decode(&bytes[56..56 + G2_ENCODED_LEN], true)?;
        let g2_x = G2Affine::decode(&bytes[56 + G2_ENCODED_LEN..], true)?;
        Ok(VerifierKey { domain_size, omega, layout, g2_gen, g2_x })
    }
}

/// Batched opening of `n_z` commitments at `z` and `n_zw` at `z omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchedOpeningProof {
    /// z-group first, then the z-omega group.
    pub commitments: Vec<EncodedPoint>,
    pub evals_z: Vec<FieldElement>,
    pub evals_zw: Vec<FieldElement>,
    pub w_z: EncodedPoint,
    pub w_zw: EncodedPoint,
}

impl BatchedOpeningProof {
    pub fn layout(&self) -> Layout {
        Layout { n_z: self.evals_z.len(), n_zw: self.evals_zw.len() }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.layout().proof_len());
        for c in &self.commitments {
            out.extend_from_slice(c.as_bytes());
        }
        for e in self.evals_z.iter().chain(&self.evals_zw) {
            out.extend_from_slice(&e.to_be_bytes());
        }
        out.extend_from_slice(self.w_z.as_bytes());
        out.extend_from_slice(self.w_zw.as_bytes());
        out
    }

    /// Length mismatch is a [`Error::WireFormat`]; an evaluation at or above
    /// the scalar order is [`Error::NonCanonicalEncoding`].
    pub fn from_bytes(bytes: &[u8], layout: Layout) -> Result<Self> {
        let expected = layout.proof_len();
        if bytes.len() != expected {
            return Err(Error::WireFormat(format!("proof needs {expected} bytes, got {}", bytes.len())));
        }
        let n = layout.n_z + layout.n_zw;
        let (points, rest) = bytes.split_at(EncodedPoint::LEN * n);
        let (evals, ws) = rest.split_at(32 * n);
        let commitments =
            points.chunks_exact(EncodedPoint::LEN).map(EncodedPoint::from_slice).collect::<Result<_>>()?;
        let evals: Vec<FieldElement> =
            evals.chunks_exact(32).map(|c| FieldElement::decode_slice(c, bn254_scalar())).collect::<Result<_>>()?;
        Ok(BatchedOpeningProof {
            commitments,
            evals_z: evals[..layout.n_z].to_vec(),
            evals_zw: evals[layout.n_z..].to_vec(),
            w_z: EncodedPoint::from_slice(&ws[..64])?,
            w_zw: EncodedPoint::from_slice(&ws[64..])?,
        })
    }
}

/// Why a proof was refused. Steps 1 to 5 name the hardened stage that fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectReason {
    InvalidPoint,
    InfinityPoint,
    ZeroInverse,
    ZCoordinateZero,
    InvalidPairingInput,
    NonCanonicalEncoding,
    PairingMismatch,
}

impl RejectReason {
    pub fn step(&self) -> Option<u8> {
        match self {
            RejectReason::InvalidPoint => Some(1),
            RejectReason::InfinityPoint => Some(2),
            RejectReason::ZeroInverse => Some(3),
            RejectReason::ZCoordinateZero => Some(4),
            RejectReason::InvalidPairingInput => Some(5),
            RejectReason::NonCanonicalEncoding | RejectReason::PairingMismatch => None,
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            RejectReason::InvalidPoint => "point is not on the curve",
            RejectReason::InfinityPoint => "point at infinity in pairing input",
            RejectReason::ZeroInverse => "inverse of zero",
            RejectReason::ZCoordinateZero => "projective Z = 0 at normalization",
            RejectReason::InvalidPairingInput => "pairing input is not a group element",
            RejectReason::NonCanonicalEncoding => "non-canonical encoding",
            RejectReason::PairingMismatch => "pairing equation does not hold",
        };
        match self.step() {
            Some(s) => write!(f, "step {s}: {text}"),
            None => f.write_str(text),
        }
    }
}

impl RejectReason {
    fn from_error(e: &Error) -> Self {
        match e {
            Error::InvalidPoint => RejectReason::InvalidPoint,
            Error::ZeroInverse { .. } => RejectReason::ZeroInverse,
            Error::ZCoordinateZero { .. } => RejectReason::ZCoordinateZero,
            Error::InvalidPairingInput => RejectReason::InvalidPairingInput,
            Error::NonCanonicalEncoding => RejectReason::NonCanonicalEncoding,
            _ => RejectReason::PairingMismatch,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("ACCEPT"),
            Verdict::Reject(r) => write!(f, "REJECT ({r})"),
        }
    }
}

/// The two pairing inputs plus the accumulated `F` and `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckInputs {
    p0: JacobianPoint,
    p1: JacobianPoint,
    f: JacobianPoint,
    e_point: JacobianPoint,
}

impl CheckInputs {
    pub fn p0(&self) -> JacobianPoint {
        self.p0
    }
    pub fn p1(&self) -> JacobianPoint {
        self.p1
    }
    pub fn f(&self) -> JacobianPoint {
        self.f
    }
    pub fn e_point(&self) -> JacobianPoint {
        self.e_point
    }
}

/// `F` and `E` for the given challenges. Invalid commitments are skipped
/// when the profile continues past them and are an error otherwise.
pub fn compute_f_e(
    commitments: &[AffinePoint],
    evals_z: &[FieldElement],
    evals_zw: &[FieldElement],
    v: &FieldElement,
    u: &FieldElement,
    profile: &VulnProfile,
) -> Result<(JacobianPoint, JacobianPoint)> {
    if commitments.is_empty() {
        return Err(Error::EmptyInput);
    }
    if commitments.len() != evals_z.len() + evals_zw.len() {
        return Err(Error::WireFormat("commitment and evaluation counts differ".into()));
    }
    let curve = bn254_g1();
    let (cz, czw) = commitments.split_at(evals_z.len());
    let group_sum = |points: &[AffinePoint]| -> Result<JacobianPoint> {
        let mut acc = curve.identity();
        let mut vi = bn254_scalar().one();
        for p in points {
            if p.validity() == Validity::Invalid {
                if !profile.continue_on_invalid_point {
                    return Err(Error::InvalidPoint);
                }
            } else {
                acc = acc.add(&p.to_jacobian().mul(&vi));
            }
            vi *= *v;
        }
        Ok(acc)
    };
    let f = group_sum(cz)?.add(&group_sum(czw)?.mul(u));
    let fold = |evals: &[FieldElement]| {
        let mut acc = bn254_scalar().zero();
        let mut vi = bn254_scalar().one();
        for s in evals {
            acc += vi * *s;
            vi *= *v;
        }
        acc
    };
    let e_scalar = fold(evals_z) + *u * fold(evals_zw);
    Ok((f, curve.generator_jacobian().mul(&e_scalar)))
}

/// `P1 = W_z + u W_zw` and `P0 = -(z W_z + u z omega W_zw + F - E)`.
///
/// `P1` always takes both W points. `P0` leaves out W points marked
/// [`Validity::Invalid`]; only the vulnerable decode stage lets such points through.
pub fn assemble_check_inputs(
    w_z: &AffinePoint,
    w_zw: &AffinePoint,
    f: JacobianPoint,
    e: JacobianPoint,
    u: &FieldElement,
    z: &FieldElement,
    omega: &FieldElement,
) -> CheckInputs {
    let (wz, wzw) = (w_z.to_jacobian(), w_zw.to_jacobian());
    let p1 = wz.add(&wzw.mul(u));
    let mut acc = f.curve().identity();
    if w_z.validity() == Validity::Valid {
        acc = acc.add(&wz.mul(z));
    }
    if w_zw.validity() == Validity::Valid {
        acc = acc.add(&wzw.mul(&(*u * *z * *omega)));
    }
    acc = acc.add(&f).add(&-e);
    CheckInputs { p0: -acc, p1, f, e_point: e }
}

/// Record of one verification run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifierTrace {
    pub profile: Option<VulnProfile>,
    /// Label and validity mark of every decoded point, in wire order.
    pub decoded: Vec<(String, Validity)>,
    pub challenges: Option<Challenges>,
    pub f: Option<JacobianPoint>,
    pub e: Option<JacobianPoint>,
    pub before_normalize: Option<[JacobianPoint; 2]>,
    pub after_normalize: Option<[JacobianPoint; 2]>,
    pub verdict: Option<Verdict>,
}

fn hex(v: &FieldElement) -> String {
    format!("{:#x}", v.value())
}

fn point_block(label: &str, p: &JacobianPoint) -> String {
    format!("{label}: {{ {},\n{},\n{} }}\n", hex(&p.x()), hex(&p.y()), hex(&p.z()))
}

impl VerifierTrace {
    /// The before/after normalization stage as `P[i]: { x,\ny,\nz }` blocks.
    pub fn batch_normalize_block(&self) -> Option<String> {
        let before = self.before_normalize?;
        let mut out = String::from("Before batch_normalize\n");
        out.push_str(&point_block("P[0]", &before[0]));
        out.push_str(&point_block("P[1]", &before[1]));
        out.push_str("After batch_normalize\n");
        match self.after_normalize {
            Some(after) => {
                out.push_str(&point_block("P[0]", &after[0]));
                out.push_str(&point_block("P[1]", &after[1]));
            }
            None => out.push_str("(normalization refused)\n"),
        }
        Some(out)
    }
}

impl fmt::Display for VerifierTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.profile {
            writeln!(f, "profile: {p}")?;
        }
        for (label, validity) in &self.decoded {
            writeln!(f, "decoded {label}: {validity:?}")?;
        }
        if let Some(c) = &self.challenges {
            writeln!(f, "z = {}", hex(&c.z))?;
            writeln!(f, "v = {}", hex(&c.v))?;
            writeln!(f, "u = {}", hex(&c.u))?;
            writeln!(f, "omega = {}", hex(&c.omega))?;
        }
        if let Some(p) = &self.f {
            write!(f, "{}", point_block("F", p))?;
        }
        if let Some(p) = &self.e {
            write!(f, "{}", point_block("E", p))?;
        }
        if let Some(block) = self.batch_normalize_block() {
            write!(f, "{block}")?;
        }
        if let Some(v) = &self.verdict {
            writeln!(f, "verdict: {v}")?;
        }
        Ok(())
    }
}

/// Normalizes `[P0, P1]` together, screens for infinity, then runs the
/// two-pair product check.
pub fn final_pairing_check(ci: &CheckInputs, vk: &VerifierKey, profile: &VulnProfile) -> Verdict {
    final_check(ci.p0, ci.p1, vk, profile, &mut VerifierTrace::default())
}

fn final_check(
    p0: JacobianPoint,
    p1: JacobianPoint,
    vk: &VerifierKey,
    profile: &VulnProfile,
    trace: &mut VerifierTrace,
) -> Verdict {
    let before = [p0, p1];
    trace.before_normalize = Some(before);
    let normalized = match batch_normalize(
        &before,
        profile.inverse_policy(),
        !profile.shared_batch_normalize_no_z_check,
    ) {
        Ok(n) => n,
        Err(e) => return Verdict::Reject(RejectReason::from_error(&e)),
    };
    trace.after_normalize = Some([normalized[0], normalized[1]]);
    let affine: Vec<AffinePoint> =
        normalized.iter().map(|p| AffinePoint::from_coords(p.x(), p.y(), p.curve())).collect();
    let at_infinity = if profile.msb_infinity_check {
        affine.iter().any(AffinePoint::is_infinity_msb)
    } else {
        before.iter().any(JacobianPoint::is_identity)
    };
    if at_infinity {
        return Verdict::Reject(RejectReason::InfinityPoint);
    }
    let pairs = [(affine[1], vk.g2_x), (affine[0], vk.g2_gen)];
    match pairing_product_check(&pairs, profile.pairing_policy()) {
        Ok(true) => Verdict::Accept,
        Ok(false) => Verdict::Reject(RejectReason::PairingMismatch),
        Err(e) => Verdict::Reject(RejectReason::from_error(&e)),
    }
}

const LABEL_SALT: &[u8] = b"salt";
const LABEL_VK: &[u8] = b"vk";

fn transcript_start(salt: &[u8], vk: &VerifierKey, commitments: &[EncodedPoint]) -> (FieldElement, Transcript) {
    let mut t = Transcript::new(bn254_scalar()).absorb(LABEL_SALT, salt).absorb(LABEL_VK, &vk.to_bytes());
    for c in commitments {
        t = t.absorb(b"commitment", c.as_bytes());
    }
    t.challenge(b"z")
}

fn transcript_evals(t: Transcript, evals_z: &[FieldElement], evals_zw: &[FieldElement]) -> (FieldElement, Transcript) {
    let mut t = t;
    for e in evals_z {
        t = t.absorb(b"eval_z", &e.to_be_bytes());
    }
    for e in evals_zw {
        t = t.absorb(b"eval_zw", &e.to_be_bytes());
    }
    t.challenge(b"v")
}

fn transcript_ws(t: Transcript, w_z: &EncodedPoint, w_zw: &EncodedPoint) -> FieldElement {
    t.absorb(b"w_z", w_z.as_bytes()).absorb(b"w_zw", w_zw.as_bytes()).challenge(b"u").0
}

/// Derives `z` after the commitments, `v` after the evaluations and `u` after the W points.
pub fn derive_challenges(salt: &[u8], vk: &VerifierKey, proof: &BatchedOpeningProof) -> Challenges {
    let (z, t) = transcript_start(salt, vk, &proof.commitments);
    let (v, t) = transcript_evals(t, &proof.evals_z, &proof.evals_zw);
    let u = transcript_ws(t, &proof.w_z, &proof.w_zw);
    Challenges { z, v, u, omega: vk.omega }
}

/// A verifier bound to one key and profile.
#[derive(Debug, Clone)]
pub struct Verifier<'a> {
    vk: &'a VerifierKey,
    profile: VulnProfile,
    salt: Vec<u8>,
    p0_injection: Option<JacobianPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub verdict: Verdict,
    pub trace: VerifierTrace,
}

impl<'a> Verifier<'a> {
    pub fn new(vk: &'a VerifierKey, profile: VulnProfile) -> Self {
        Verifier { vk, profile, salt: Vec::new(), p0_injection: None }
    }

    /// Bytes absorbed before anything else; prover and verifier must agree.
    pub fn with_salt(mut self, salt: &[u8]) -> Self {
        self.salt = salt.to_vec();
        self
    }

    /// Replaces the assembled `P0` right before normalization.
    pub fn with_p0_injection(mut self, p0: JacobianPoint) -> Self {
        self.p0_injection = Some(p0);
        self
    }

    /// Wrong proof length is an error; every other failure is a [`Verdict::Reject`].
    pub fn verify(&self, proof_bytes: &[u8]) -> Result<VerifyOutcome> {
        let mut trace = VerifierTrace { profile: Some(self.profile), ..Default::default() };
        let verdict = self.run(proof_bytes, &mut trace)?;
        trace.verdict = Some(verdict);
        Ok(VerifyOutcome { verdict, trace })
    }

    fn run(&self, proof_bytes: &[u8], trace: &mut VerifierTrace) -> Result<Verdict> {
        let proof = match BatchedOpeningProof::from_bytes(proof_bytes, self.vk.layout) {
            Ok(p) => p,
            Err(Error::NonCanonicalEncoding) => {
                return Ok(Verdict::Reject(RejectReason::NonCanonicalEncoding))
            }
            Err(e) => return Err(e),
        };
        let policy = self.profile.point_policy();
        let mut decode = |label: String, enc: &EncodedPoint| -> std::result::Result<AffinePoint, Verdict> {
            match AffinePoint::decode(enc, bn254_g1(), policy) {
                Ok(p) => {
                    trace.decoded.push((label, p.validity()));
                    Ok(p)
                }
                Err(e) => {
                    trace.decoded.push((label, Validity::Invalid));
                    Err(Verdict::Reject(RejectReason::from_error(&e)))
                }
            }
        };
        let mut commitments = Vec::with_capacity(proof.commitments.len());
        for (i, c) in proof.commitments.iter().enumerate() {
            match decode(format!("C[{i}]"), c) {
                Ok(p) => commitments.push(p),
                Err(v) => return Ok(v),
            }
        }
        let w_z = match decode("W_z".into(), &proof.w_z) {
            Ok(p) => p,
            Err(v) => return Ok(v),
        };
        let w_zw = match decode("W_zw".into(), &proof.w_zw) {
            Ok(p) => p,
            Err(v) => return Ok(v),
        };

        let ch = derive_challenges(&self.salt, self.vk, &proof);
        trace.challenges = Some(ch);
        let (f, e) = match compute_f_e(&commitments, &proof.evals_z, &proof.evals_zw, &ch.v, &ch.u, &self.profile) {
            Ok(fe) => fe,
            Err(err) => return Ok(Verdict::Reject(RejectReason::from_error(&err))),
        };
        trace.f = Some(f);
        trace.e = Some(e);
        let ci = assemble_check_inputs(&w_z, &w_zw, f, e, &ch.u, &ch.z, &ch.omega);
        let p0 = self.p0_injection.unwrap_or(ci.p0);
        Ok(final_check(p0, ci.p1, self.vk, &self.profile, trace))
    }
}

/// Unsalted verification.
pub fn verify(proof_bytes: &[u8], vk: &VerifierKey, profile: &VulnProfile) -> Result<VerifyOutcome> {
    Verifier::new(vk, *profile).verify(proof_bytes)
}

/// Honest batched opening. `polys_z` are opened at `z`, `polys_zw` at `z omega`.
pub fn prove(
    srs: &Srs,
    vk: &VerifierKey,
    polys_z: &[Vec<FieldElement>],
    polys_zw: &[Vec<FieldElement>],
    salt: &[u8],
) -> Result<BatchedOpeningProof> {
    if polys_z.len() != vk.layout.n_z || polys_zw.len() != vk.layout.n_zw {
        return Err(Error::WireFormat("polynomial counts do not match the key layout".into()));
    }
    let commitments = polys_z
        .iter()
        .chain(polys_zw)
        .map(|p| kzg_commit(p, srs).map(|c| encode_point(&c)))
        .collect::<Result<Vec<_>>>()?;
    let (z, t) = transcript_start(salt, vk, &commitments);
    let zw = z * vk.omega;
    let evals_z: Vec<_> = polys_z.iter().map(|p| poly_eval(p, &z)).collect();
    let evals_zw: Vec<_> = polys_zw.iter().map(|p| poly_eval(p, &zw)).collect();
    let (v, _) = transcript_evals(t, &evals_z, &evals_zw);
    let combine = |polys: &[Vec<FieldElement>]| {
        let len = polys.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![bn254_scalar().zero(); len];
        let mut vi = bn254_scalar().one();
        for p in polys {
            for (o, c) in out.iter_mut().zip(p) {
                *o += vi * *c;
            }
            vi *= v;
        }
        out
    };
    let (_, w_z) = kzg_open(&combine(polys_z), &z, srs)?;
    let (_, w_zw) = kzg_open(&combine(polys_zw), &zw, srs)?;
    Ok(BatchedOpeningProof { commitments, evals_z, evals_zw, w_z: encode_point(&w_z), w_zw: encode_point(&w_zw) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    struct Fixture {
        srs: Srs,
        vk: VerifierKey,
    }

    fn fixture(rng: &mut ChaCha20Rng, layout: Layout) -> Fixture {
        let srs = srs_setup(6, None, rng).unwrap();
        let vk = VerifierKey::new(&srs, 16, layout).unwrap();
        Fixture { srs, vk }
    }

    fn random_polys(rng: &mut ChaCha20Rng, n: usize) -> Vec<Vec<FieldElement>> {
        (0..n)
            .map(|_| {
                let len = rng.random_range(2..=7);
                (0..len).map(|_| bn254_scalar().random(rng)).collect()
            })
            .collect()
    }

    fn honest(rng: &mut ChaCha20Rng, fx: &Fixture) -> BatchedOpeningProof {
        let pz = random_polys(rng, fx.vk.layout.n_z);
        let pzw = random_polys(rng, fx.vk.layout.n_zw);
        prove(&fx.srs, &fx.vk, &pz, &pzw, b"").unwrap()
    }

    fn zero_w(rng: &mut ChaCha20Rng, fx: &Fixture) -> Vec<u8> {
        let mut p = honest(rng, fx);
        for e in p.evals_z.iter_mut().chain(p.evals_zw.iter_mut()) {
            *e = bn254_scalar().random(rng);
        }
        p.w_z = EncodedPoint::zero();
        p.w_zw = EncodedPoint::zero();
        p.to_bytes()
    }

    const LAYOUT: Layout = Layout { n_z: 3, n_zw: 1 };

    #[test]
    fn domain_generator_order() {
        for log in [0u32, 1, 4, 10, 28] {
            let n = 1u64 << log;
            let w = domain_generator(n).unwrap();
            assert!(w.pow_u64(n).is_one());
            if log > 0 {
                assert!(!w.pow_u64(n / 2).is_one());
            }
        }
        assert!(domain_generator(0).is_err());
        assert!(domain_generator(12).is_err());
        assert!(domain_generator(1 << 29).is_err());
    }

    #[test]
    fn profile_flags_roundtrip() {
        assert!(VulnProfile::VULNERABLE.is_fully_vulnerable());
        assert_eq!(VulnProfile::HARDENED.flags(), [false; 5]);
        for step in 1..=5u8 {
            let p = VulnProfile::single_fix(step);
            assert_eq!(p.flags().iter().filter(|f| !**f).count(), 1);
            assert!(!p.flags()[usize::from(step - 1)]);
            assert_eq!(VulnProfile::from_flags(p.flags()), p);
        }
        assert_eq!(VulnProfile::single_fix(2).to_string(), "v,h,v,v,v");
    }

    #[test]
    fn wire_roundtrip_and_lengths() {
        let mut rng = ChaCha20Rng::seed_from_u64(51);
        let fx = fixture(&mut rng, LAYOUT);
        let p = honest(&mut rng, &fx);
        let bytes = p.to_bytes();
        assert_eq!(bytes.len(), LAYOUT.proof_len());
        assert_eq!(BatchedOpeningProof::from_bytes(&bytes, LAYOUT).unwrap(), p);
        assert!(matches!(
            BatchedOpeningProof::from_bytes(&bytes[1..], LAYOUT),
            Err(Error::WireFormat(_))
        ));
        let vk_bytes = fx.vk.to_bytes();
        assert_eq!(vk_bytes.len(), 8 + 32 + 16 + 256);
        assert_eq!(VerifierKey::from_bytes(&vk_bytes).unwrap(), fx.vk);
    }

    #[test]
    fn f_e_degenerate_sums() {
        let g = bn254_g1().generator();
        let s = bn254_scalar().from_u64(11);
        let zero = bn254_scalar().zero();
        let (f, e) = compute_f_e(&[g], &[s], &[], &bn254_scalar().from_u64(3), &zero, &VulnProfile::HARDENED).unwrap();
        assert_eq!(f, g.to_jacobian());
        assert!(e.equivalent(&bn254_g1().generator_jacobian().scalar_mul(&U256::from_u64(11))));

        let bad = AffinePoint::zero(bn254_g1());
        let one = bn254_scalar().one();
        let (f, _) = compute_f_e(&[bad, bad], &[one], &[one], &one, &one, &VulnProfile::VULNERABLE).unwrap();
        assert!(f.is_identity());
        assert_eq!(
            compute_f_e(&[bad], &[one], &[], &one, &one, &VulnProfile::HARDENED),
            Err(Error::InvalidPoint)
        );
    }

    #[test]
    fn zero_w_assembly() {
        let mut rng = ChaCha20Rng::seed_from_u64(52);
        let zero = AffinePoint::zero(bn254_g1());
        let g = bn254_g1().generator_jacobian();
        let f = g.scalar_mul(&U256::from_u64(17));
        let e = g.scalar_mul(&U256::from_u64(5));
        let omega = domain_generator(16).unwrap();
        for _ in 0..20 {
            let u = bn254_scalar().random(&mut rng);
            let z = bn254_scalar().random(&mut rng);
            let ci = assemble_check_inputs(&zero, &zero, f, e, &u, &z, &omega);
            assert!(ci.p1().is_all_zero());
            assert!(ci.p0().equivalent(&-(f.sub(&e))));
        }
        let ci = assemble_check_inputs(&zero, &zero, f, e, &bn254_scalar().zero(), &bn254_scalar().one(), &omega);
        assert_eq!(ci.p1(), zero.to_jacobian());
    }

    #[test]
    fn u_zero_gives_w_z() {
        let g = bn254_g1().generator_jacobian();
        let wz = g.scalar_mul(&U256::from_u64(3)).to_affine(InversePolicy::Checked).unwrap();
        let wzw = g.scalar_mul(&U256::from_u64(8)).to_affine(InversePolicy::Checked).unwrap();
        let zero = bn254_scalar().zero();
        let ci = assemble_check_inputs(&wz, &wzw, g, g, &zero, &bn254_scalar().one(), &bn254_scalar().one());
        assert!(ci.p1().equivalent(&wz.to_jacobian()));
    }

    #[test]
    fn honest_accepts_everywhere() {
        let mut rng = ChaCha20Rng::seed_from_u64(53);
        let fx = fixture(&mut rng, LAYOUT);
        for _ in 0..3 {
            let bytes = honest(&mut rng, &fx).to_bytes();
            for mask in 0u8..32 {
                let profile = VulnProfile::from_flags(std::array::from_fn(|i| mask >> i & 1 == 1));
                assert_eq!(verify(&bytes, &fx.vk, &profile).unwrap().verdict, Verdict::Accept, "{profile}");
            }
        }
    }

    #[test]
    fn honest_final_check_direct() {
        let mut rng = ChaCha20Rng::seed_from_u64(54);
        let fx = fixture(&mut rng, Layout { n_z: 2, n_zw: 0 });
        let proof = honest(&mut rng, &fx);
        let ch = derive_challenges(b"", &fx.vk, &proof);
        let pts: Vec<_> = proof
            .commitments
            .iter()
            .map(|c| AffinePoint::decode(c, bn254_g1(), PointValidationPolicy::RejectInvalid).unwrap())
            .collect();
        let (f, e) = compute_f_e(&pts, &proof.evals_z, &[], &ch.v, &ch.u, &VulnProfile::HARDENED).unwrap();
        let dec = |p| AffinePoint::decode(p, bn254_g1(), PointValidationPolicy::RejectInvalid).unwrap();
        let ci = assemble_check_inputs(&dec(&proof.w_z), &dec(&proof.w_zw), f, e, &ch.u, &ch.z, &ch.omega);
        assert_eq!(final_pairing_check(&ci, &fx.vk, &VulnProfile::HARDENED), Verdict::Accept);
    }

    #[test]
    fn eval_mutation_rejects() {
        let mut rng = ChaCha20Rng::seed_from_u64(55);
        let fx = fixture(&mut rng, LAYOUT);
        let proof = honest(&mut rng, &fx);
        for i in 0..4 {
            let mut m = proof.clone();
            let slot = if i < 3 { &mut m.evals_z[i] } else { &mut m.evals_zw[0] };
            *slot += bn254_scalar().one();
            let out = verify(&m.to_bytes(), &fx.vk, &VulnProfile::HARDENED).unwrap();
            assert_eq!(out.verdict, Verdict::Reject(RejectReason::PairingMismatch));
        }
    }

    #[test]
    fn forgery_differential() {
        let mut rng = ChaCha20Rng::seed_from_u64(56);
        let fx = fixture(&mut rng, LAYOUT);
        let forgeries = [vec![0u8; LAYOUT.proof_len()], zero_w(&mut rng, &fx)];
        for bytes in &forgeries {
            assert_eq!(verify(bytes, &fx.vk, &VulnProfile::VULNERABLE).unwrap().verdict, Verdict::Accept);
            for step in 1..=5u8 {
                let v = verify(bytes, &fx.vk, &VulnProfile::single_fix(step)).unwrap().verdict;
                match v {
                    Verdict::Reject(r) => assert_eq!(r.step(), Some(step)),
                    Verdict::Accept => panic!("step {step} fix accepted a forgery"),
                }
            }
            let v = verify(bytes, &fx.vk, &VulnProfile::HARDENED).unwrap().verdict;
            assert_eq!(v, Verdict::Reject(RejectReason::InvalidPoint));
        }
    }

    #[test]
    fn trace_shows_contamination() {
        let mut rng = ChaCha20Rng::seed_from_u64(57);
        let fx = fixture(&mut rng, LAYOUT);
        let out = verify(&zero_w(&mut rng, &fx), &fx.vk, &VulnProfile::VULNERABLE).unwrap();
        let [b0, b1] = out.trace.before_normalize.unwrap();
        assert!(b1.is_all_zero());
        assert!(!b0.is_identity() && !b0.is_all_zero());
        let [a0, a1] = out.trace.after_normalize.unwrap();
        let one = bn254_g1().base_field().one();
        let zero = bn254_g1().base_field().zero();
        for a in [a0, a1] {
            assert_eq!((a.x(), a.y(), a.z()), (zero, zero, one));
        }
        let block = out.trace.batch_normalize_block().unwrap();
        assert!(block.starts_with("Before batch_normalize\nP[0]: { 0x"));
        assert!(block.contains(&format!("P[1]: {{ 0x{0},\n0x{0},\n0x{0} }}\n", "0".repeat(64))));
    }

    #[test]
    fn non_canonical_eval_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(58);
        let fx = fixture(&mut rng, LAYOUT);
        let mut bytes = honest(&mut rng, &fx).to_bytes();
        let off = 64 * 4;
        bytes[off..off + 32].fill(0xff);
        assert_eq!(
            verify(&bytes, &fx.vk, &VulnProfile::VULNERABLE).unwrap().verdict,
            Verdict::Reject(RejectReason::NonCanonicalEncoding)
        );
        assert!(matches!(verify(&bytes[..10], &fx.vk, &VulnProfile::VULNERABLE), Err(Error::WireFormat(_))));
    }

    #[test]
    fn salt_changes_challenges_not_forgery_verdict() {
        let mut rng = ChaCha20Rng::seed_from_u64(59);
        let fx = fixture(&mut rng, LAYOUT);
        let bytes = zero_w(&mut rng, &fx);
        let mut us = std::collections::HashSet::new();
        for _ in 0..5 {
            let salt: [u8; 16] = rng.random();
            let out = Verifier::new(&fx.vk, VulnProfile::VULNERABLE).with_salt(&salt).verify(&bytes).unwrap();
            assert_eq!(out.verdict, Verdict::Accept);
            us.insert(out.trace.challenges.unwrap().u.value());
        }
        assert_eq!(us.len(), 5);
    }
}
