//! Fixed-width 256-bit unsigned integers (four little-endian 64-bit limbs).
//!
//! Field moduli in this crate are at most 254 bits, so bit 255 of a register
//! is always free. The curve module uses it as the point-at-infinity flag.

#![allow(clippy::needless_range_loop)]

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct U256(pub [u64; 4]);

#[inline(always)]
pub(crate) fn adc(a: u64, b: u64, carry: u64) -> (u64, u64) {
    let t = a as u128 + b as u128 + carry as u128;
    (t as u64, (t >> 64) as u64)
}

#[inline(always)]
pub(crate) fn sbb(a: u64, b: u64, borrow: u64) -> (u64, u64) {
    let t = (a as u128).wrapping_sub(b as u128 + (borrow >> 63) as u128);
    (t as u64, (t >> 64) as u64)
}

/// `a + b * c + carry`, split into (low, high).
#[inline(always)]
pub(crate) fn mac(a: u64, b: u64, c: u64, carry: u64) -> (u64, u64) {
    let t = a as u128 + (b as u128) * (c as u128) + carry as u128;
    (t as u64, (t >> 64) as u64)
}

impl U256 {
    pub const ZERO: U256 = U256([0; 4]);
    pub const ONE: U256 = U256([1, 0, 0, 0]);
    pub const MSB: U256 = U256([0, 0, 0, 1 << 63]);

    pub const fn from_u64(v: u64) -> Self {
        U256([v, 0, 0, 0])
    }

    pub fn from_u128(v: u128) -> Self {
        U256([v as u64, (v >> 64) as u64, 0, 0])
    }

    pub fn from_be_bytes(bytes: &[u8; 32]) -> Self {
        let mut limbs = [0u64; 4];
        for (i, limb) in limbs.iter_mut().enumerate() {
            let start = 32 - 8 * (i + 1);
            *limb = u64::from_be_bytes(bytes[start..start + 8].try_into().unwrap());
        }
        U256(limbs)
    }

    pub fn to_be_bytes(&self) -> [u8; 32] {
        let mut out = [0u8; 32];
        for (i, limb) in self.0.iter().enumerate() {
            let start = 32 - 8 * (i + 1);
            out[start..start + 8].copy_from_slice(&limb.to_be_bytes());
        }
        out
    }

    /// Parses up to 64 hex digits, with or without a `0x` prefix.
    pub fn from_hex(s: &str) -> Option<Self> {
        let s = s.trim();
        let s = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
        if s.is_empty() || s.len() > 64 {
            return None;
        }
        let mut limbs = [0u64; 4];
        for (i, c) in s.bytes().rev().enumerate() {
            let digit = (c as char).to_digit(16)? as u64;
            limbs[i / 16] |= digit << (4 * (i % 16));
        }
        Some(U256(limbs))
    }

    /// Parses a decimal string.
    pub fn from_dec(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let mut acc = U256::ZERO;
        for c in s.bytes() {
            let d = (c as char).to_digit(10)? as u64;
            let (m, over) = acc.mul_small(10);
            let (sum, carry) = m.overflowing_add(&U256::from_u64(d));
            if over != 0 || carry {
                return None;
            }
            acc = sum;
        }
        Some(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn bit(&self, i: usize) -> bool {
        i < 256 && (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set_bit(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn clear_bit(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    /// Number of significant bits.
    pub fn bits(&self) -> usize {
        for i in (0..4).rev() {
            if self.0[i] != 0 {
                return 64 * i + 64 - self.0[i].leading_zeros() as usize;
            }
        }
        0
    }

    pub fn overflowing_add(&self, rhs: &U256) -> (U256, bool) {
        let mut out = [0u64; 4];
        let mut carry = 0;
        for i in 0..4 {
            (out[i], carry) = adc(self.0[i], rhs.0[i], carry);
        }
        (U256(out), carry != 0)
    }

    pub fn overflowing_sub(&self, rhs: &U256) -> (U256, bool) {
        let mut out = [0u64; 4];
        let mut borrow = 0;
        for i in 0..4 {
            (out[i], borrow) = sbb(self.0[i], rhs.0[i], borrow);
        }
        (U256(out), borrow != 0)
    }

    pub fn wrapping_sub(&self, rhs: &U256) -> U256 {
        self.overflowing_sub(rhs).0
    }

    /// Multiplies by a single limb, returning the low 256 bits and the overflow limb.
    pub fn mul_small(&self, m: u64) -> (U256, u64) {
        let mut out = [0u64; 4];
        let mut carry = 0;
        for i in 0..4 {
            (out[i], carry) = mac(0, self.0[i], m, carry);
        }
        (U256(out), carry)
    }

    /// Divides by a single nonzero limb, returning (quotient, remainder).
    pub fn div_rem_small(&self, d: u64) -> (U256, u64) {
        assert!(d != 0, "division by zero");
        let mut out = [0u64; 4];
        let mut rem: u128 = 0;
        for i in (0..4).rev() {
            let cur = (rem << 64) | self.0[i] as u128;
            out[i] = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        (U256(out), rem as u64)
    }

    pub fn shr1(&self) -> U256 {
        let mut out = [0u64; 4];
        for i in 0..4 {
            out[i] = self.0[i] >> 1;
            if i < 3 {
                out[i] |= self.0[i + 1] << 63;
            }
        }
        U256(out)
    }

    /// Low 64 bits.
    pub fn low_u64(&self) -> u64 {
        self.0[0]
    }
}

impl Ord for U256 {
    fn cmp(&self, other: &Self) -> Ordering {
        for i in (0..4).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for U256 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for U256 {
    fn from(v: u64) -> Self {
        U256::from_u64(v)
    }
}

/// Full-width hex, e.g. `0x0000…0001`.
impl fmt::LowerHex for U256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            f.write_str("0x")?;
        }
        for limb in self.0.iter().rev() {
            write!(f, "{limb:016x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for U256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:#x}")
    }
}

impl fmt::Display for U256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:#x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_and_bytes_agree() {
        let v = U256::from_hex("0x0102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f20")
            .unwrap();
        let bytes = v.to_be_bytes();
        assert_eq!(bytes[0], 1);
        assert_eq!(bytes[31], 0x20);
        assert_eq!(U256::from_be_bytes(&bytes), v);
        assert_eq!(
            format!("{v:#x}"),
            "0x0102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f20"
        );
    }

    #[test]
    fn decimal_parse() {
        assert_eq!(U256::from_dec("4965661367192848881"), Some(U256::from_u64(4965661367192848881)));
        assert_eq!(
            U256::from_dec("29793968203157093288"),
            Some(U256::from_u128(29793968203157093288))
        );
        assert!(U256::from_dec("12a").is_none());
    }

    #[test]
    fn msb_is_bit_255() {
        assert!(U256::MSB.bit(255));
        assert_eq!(U256::MSB.bits(), 256);
        assert!(!U256::ZERO.bit(255));
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(a in any::<[u64; 4]>(), b in any::<[u64; 4]>()) {
            let (a, b) = (U256(a), U256(b));
            let (s, _) = a.overflowing_add(&b);
            prop_assert_eq!(s.wrapping_sub(&b), a);
        }

        #[test]
        fn div_small_reconstructs(a in any::<[u64; 4]>(), d in 1u64..) {
            let a = U256(a);
            let (q, r) = a.div_rem_small(d);
            prop_assert!(r < d);
            let (m, over) = q.mul_small(d);
            prop_assert_eq!(over, 0);
            prop_assert_eq!(m.overflowing_add(&U256::from_u64(r)).0, a);
        }
    }
}
