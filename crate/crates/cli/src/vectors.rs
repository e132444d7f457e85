//! Adversarial corpus: one JSON record per line.

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use zeropoint::curve::{batch_normalize, bn254_g1};
use zeropoint::verifier::Verifier;
use zeropoint::{
    ecdsa_sign, ecdsa_verify, forge_zero_proof, prove, srs_setup, AffinePoint, EcdsaParams,
    EcdsaPolicy, EcdsaSignature, EncodedPoint, Error, FieldElement, ForgeryMode, ForgeryTemplate,
    InversePolicy, JacobianPoint, Layout, PointValidationPolicy, Verdict, VerifierKey, VulnProfile,
};

use crate::profile::ProfileSpec;

pub const CAT_KEY: &str = "verifier-key";
pub const CAT_ALL_ZERO: &str = "proof-all-zero";
pub const CAT_ZERO_W: &str = "proof-zero-w";
pub const CAT_HONEST: &str = "proof-honest";
pub const CAT_Z_ZERO: &str = "batch-normalize-z-zero";
pub const CAT_ECDSA_ZERO: &str = "ecdsa-zero-signature";
pub const CAT_ECDSA_HONEST: &str = "ecdsa-honest-signature";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorRecord {
    pub category: String,
    pub payload: String,
    pub profile: String,
    pub expected: String,
}

fn record(category: &str, payload: &[u8], profile: impl ToString, expected: impl Into<String>) -> VectorRecord {
    VectorRecord {
        category: category.to_string(),
        payload: hex::encode(payload),
        profile: profile.to_string(),
        expected: expected.into(),
    }
}

fn proof_profiles() -> Vec<VulnProfile> {
    let mut v = vec![VulnProfile::VULNERABLE, VulnProfile::HARDENED];
    v.extend((1..=5).map(VulnProfile::single_fix));
    v
}

/// Expected outcome of a zero-point forgery, derived from the flag layout alone.
pub fn forgery_expectation(profile: &VulnProfile) -> String {
    match profile.flags().iter().position(|f| !f) {
        None => "accept".into(),
        Some(i) => format!("reject:step-{}", i + 1),
    }
}

pub fn verdict_label(v: &Verdict) -> String {
    match v {
        Verdict::Accept => "accept".into(),
        Verdict::Reject(r) => match r.step() {
            Some(s) => format!("reject:step-{s}"),
            None => "reject".into(),
        },
    }
}

fn jacobian_bytes(p: &JacobianPoint) -> Vec<u8> {
    [p.x(), p.y(), p.z()].iter().flat_map(|c| c.to_be_bytes()).collect()
}

pub fn generate(seed: u64) -> Result<Vec<VectorRecord>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let layout = Layout { n_z: 2, n_zw: 1 };
    let srs = srs_setup(4, None, &mut rng)?;
    let vk = VerifierKey::new(&srs, 8, layout)?;
    let mut out = vec![record(CAT_KEY, &vk.to_bytes(), "-", "-")];

    let all_zero = forge_zero_proof(&ForgeryTemplate { layout, mode: ForgeryMode::AllZeroBytes }, &mut rng);
    let zero_w = forge_zero_proof(&ForgeryTemplate { layout, mode: ForgeryMode::ZeroWOnly }, &mut rng);
    let scalar = bn254_g1().scalar_field();
    let poly = |rng: &mut ChaCha20Rng| -> Vec<FieldElement> { (0..4).map(|_| scalar.random(rng)).collect() };
    let pz = vec![poly(&mut rng), poly(&mut rng)];
    let pzw = vec![poly(&mut rng)];
    let honest = prove(&srs, &vk, &pz, &pzw, b"")?.to_bytes();
    for profile in proof_profiles() {
        out.push(record(CAT_ALL_ZERO, &all_zero, profile, forgery_expectation(&profile)));
        out.push(record(CAT_ZERO_W, &zero_w, profile, forgery_expectation(&profile)));
        out.push(record(CAT_HONEST, &honest, profile, "accept"));
    }

    let p = bn254_g1().generator_jacobian().mul(&scalar.random_nonzero(&mut rng));
    let p = p.rescale(&bn254_g1().base_field().random_nonzero(&mut rng));
    let q = JacobianPoint::from_coords(
        bn254_g1().base_field().zero(),
        bn254_g1().base_field().zero(),
        bn254_g1().base_field().zero(),
        bn254_g1(),
    )?;
    let pair = [jacobian_bytes(&p), jacobian_bytes(&q)].concat();
    for (profile, expected) in [
        (VulnProfile::VULNERABLE, "accept"),
        (VulnProfile::single_fix(3), "reject:step-3"),
        (VulnProfile::single_fix(4), "reject:step-4"),
        (VulnProfile::HARDENED, "reject:step-4"),
    ] {
        out.push(record(CAT_Z_ZERO, &pair, profile, expected));
    }

    let params = EcdsaParams::bn254();
    for _ in 0..4 {
        let (d, pk) = params.keygen(&mut rng);
        let h = params.order().random(&mut rng);
        let head = [pk.encode().as_bytes().as_slice(), &h.to_be_bytes()].concat();
        let zero = [head.as_slice(), &EcdsaSignature::zero().to_bytes()].concat();
        out.push(record(CAT_ECDSA_ZERO, &zero, "vulnerable", "accept"));
        out.push(record(CAT_ECDSA_ZERO, &zero, "hardened", "reject"));
        let sig = ecdsa_sign(&params, &d, &h, &mut rng)?;
        let honest = [head.as_slice(), &sig.to_bytes()].concat();
        out.push(record(CAT_ECDSA_HONEST, &honest, "vulnerable", "accept"));
        out.push(record(CAT_ECDSA_HONEST, &honest, "hardened", "accept"));
    }
    Ok(out)
}

pub fn to_json_lines(records: &[VectorRecord]) -> Result<String> {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r)?);
        s.push('\n');
    }
    Ok(s)
}

pub fn from_json_lines(text: &str) -> Result<Vec<VectorRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| serde_json::from_str(l).with_context(|| format!("record {i}")))
        .collect()
}

/// Runs one record against the library; returns the observed outcome label.
pub fn replay(record: &VectorRecord, vk: Option<&VerifierKey>) -> Result<String> {
    let payload = hex::decode(&record.payload)?;
    match record.category.as_str() {
        CAT_ALL_ZERO | CAT_ZERO_W | CAT_HONEST => {
            let vk = vk.ok_or_else(|| anyhow!("proof record before the verifier key"))?;
            let profile: ProfileSpec = record.profile.parse().map_err(|e: String| anyhow!(e))?;
            let out = Verifier::new(vk, profile.0).verify(&payload)?;
            Ok(verdict_label(&out.verdict))
        }
        CAT_Z_ZERO => {
            let profile = record.profile.parse::<ProfileSpec>().map_err(|e| anyhow!(e))?.0;
            if payload.len() != 192 {
                bail!("z-zero payload needs 192 bytes");
            }
            let base = bn254_g1().base_field();
            let pts = payload
                .chunks_exact(96)
                .map(|c| {
                    let f = |i: usize| FieldElement::decode_slice(&c[32 * i..32 * (i + 1)], base);
                    JacobianPoint::from_coords(f(0)?, f(1)?, f(2)?, bn254_g1())
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let policy = if profile.fermat_zero_inverse { InversePolicy::FermatNoZeroCheck } else { InversePolicy::Checked };
            Ok(match batch_normalize(&pts, policy, !profile.shared_batch_normalize_no_z_check) {
                Ok(_) => "accept".into(),
                Err(Error::ZeroInverse { .. }) => "reject:step-3".into(),
                Err(Error::ZCoordinateZero { .. }) => "reject:step-4".into(),
                Err(e) => bail!("unexpected normalization error: {e}"),
            })
        }
        CAT_ECDSA_ZERO | CAT_ECDSA_HONEST => {
            if payload.len() != 160 {
                bail!("signature payload needs 160 bytes");
            }
            let params = EcdsaParams::bn254();
            let pk = AffinePoint::decode(
                &EncodedPoint::from_slice(&payload[..64])?,
                params.curve,
                PointValidationPolicy::RejectInvalid,
            )?;
            let h = FieldElement::decode_slice(&payload[64..96], params.order())?;
            let sig = EcdsaSignature::from_bytes(&payload[96..])?;
            let policy = parse_ecdsa_policy(&record.profile)?;
            let ok = ecdsa_verify(&params, &pk, &h, &sig, policy)?;
            Ok(if ok { "accept" } else { "reject" }.into())
        }
        CAT_KEY => Ok("-".into()),
        other => bail!("unknown category '{other}'"),
    }
}

pub fn parse_ecdsa_policy(s: &str) -> Result<EcdsaPolicy> {
    match s.to_ascii_lowercase().as_str() {
        "vulnerable" => Ok(EcdsaPolicy::VulnerableNoRangeCheck),
        "hardened" => Ok(EcdsaPolicy::Hardened),
        other => bail!("unknown ECDSA policy '{other}'"),
    }
}

/// Replays a whole corpus; returns `(index, expected, observed)` for every mismatch.
pub fn check(records: &[VectorRecord]) -> Result<Vec<(usize, String, String)>> {
    let mut vk = None;
    let mut mismatches = Vec::new();
    for (i, r) in records.iter().enumerate() {
        if r.category == CAT_KEY {
            vk = Some(VerifierKey::from_bytes(&hex::decode(&r.payload)?)?);
            continue;
        }
        let got = replay(r, vk.as_ref())?;
        if got != r.expected {
            mismatches.push((i, r.expected.clone(), got));
        }
    }
    Ok(mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_seed() {
        let a = to_json_lines(&generate(7).unwrap()).unwrap();
        let b = to_json_lines(&generate(7).unwrap()).unwrap();
        let c = to_json_lines(&generate(8).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn corpus_replays_clean() {
        let records = generate(3).unwrap();
        assert_eq!(check(&records).unwrap(), vec![]);
        let parsed = from_json_lines(&to_json_lines(&records).unwrap()).unwrap();
        assert_eq!(parsed, records);
    }

    #[test]
    fn expectation_rule() {
        assert_eq!(forgery_expectation(&VulnProfile::VULNERABLE), "accept");
        assert_eq!(forgery_expectation(&VulnProfile::HARDENED), "reject:step-1");
        assert_eq!(forgery_expectation(&VulnProfile::single_fix(4)), "reject:step-4");
    }
}
