//! Fiat-Shamir transcript over SHA-256.
//!
//! Every absorb appends `len(label) || label || len(data) || data` with
//! 8-byte big-endian lengths. A challenge hashes the whole byte log plus a
//! framed label, reduces the digest modulo the scalar order and absorbs the
//! result back under the same label.

use sha2::{Digest, Sha256};

use crate::bigint::U256;
use crate::field::{FieldElement, FieldParams};

const CHALLENGE_TAG: &[u8] = b"challenge";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    log: Vec<u8>,
    records: Vec<(Vec<u8>, Vec<u8>)>,
    scalar: &'static FieldParams,
}

fn frame(buf: &mut Vec<u8>, bytes: &[u8]) {
    buf.extend_from_slice(&(bytes.len() as u64).to_be_bytes());
    buf.extend_from_slice(bytes);
}

impl Transcript {
    pub fn new(scalar: &'static FieldParams) -> Self {
        Transcript { log: Vec::new(), records: Vec::new(), scalar }
    }

    #[must_use]
    pub fn absorb(&self, label: &[u8], data: &[u8]) -> Self {
        let mut next = self.clone();
        frame(&mut next.log, label);
        frame(&mut next.log, data);
        next.records.push((label.to_vec(), data.to_vec()));
        next
    }

    /// Returns the challenge and the transcript with the challenge absorbed.
    #[must_use]
    pub fn challenge(&self, label: &[u8]) -> (FieldElement, Self) {
        let mut hasher = Sha256::new();
        hasher.update(&self.log);
        let mut tail = Vec::with_capacity(label.len() + CHALLENGE_TAG.len() + 16);
        frame(&mut tail, CHALLENGE_TAG);
        frame(&mut tail, label);
        hasher.update(&tail);
        let digest: [u8; 32] = hasher.finalize().into();
        let c = self.scalar.reduce(U256::from_be_bytes(&digest));
        (c, self.absorb(label, &c.to_be_bytes()))
    }

    pub fn records(&self) -> &[(Vec<u8>, Vec<u8>)] {
        &self.records
    }

    pub fn scalar_field(&self) -> &'static FieldParams {
        self.scalar
    }
}

/// Challenges drawn during one verification, plus the domain generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Challenges {
    pub z: FieldElement,
    pub v: FieldElement,
    pub u: FieldElement,
    pub omega: FieldElement,
}
