//! Prime-field arithmetic parameterized by a runtime modulus.
//!
//! Elements are stored in canonical form (`0 <= value < modulus`) in a
//! [`U256`] register. Multiplication reduces through a Montgomery kernel, but
//! no value ever leaves this module in Montgomery form.
//!
//! Two inversion policies are provided. [`InversePolicy::FermatNoZeroCheck`]
//! computes `a^(p-2)` unconditionally, so the "inverse" of zero is zero.
//! [`InversePolicy::Checked`] refuses zero.

#![allow(clippy::needless_range_loop)]

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::LazyLock;

use crate::bigint::{adc, mac, U256};
use crate::error::{Error, Result};

/// A prime modulus together with its precomputed reduction constants.
#[derive(Debug)]
pub struct FieldParams {
    name: String,
    modulus: U256,
    /// `2^512 mod modulus`.
    r2: U256,
    /// `-modulus^{-1} mod 2^64`.
    n0inv: u64,
}

/// How `fe_inverse` treats a zero input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InversePolicy {
    /// `a^(p-2)` with no zero check: inverse(0) = 0.
    FermatNoZeroCheck,
    /// Zero is rejected with [`Error::ZeroInverse`].
    Checked,
}

impl FieldParams {
    /// Validates `modulus` and returns process-lifetime parameters.
    ///
    /// Parameter sets are configuration; they are leaked so that elements can
    /// carry a plain `&'static` reference and stay `Copy`.
    pub fn new(name: &str, modulus: U256) -> Result<&'static FieldParams> {
        let params = Self::build(name, modulus)?;
        if !params.is_probable_prime() {
            return Err(Error::InvalidParams("modulus is not prime"));
        }
        Ok(Box::leak(Box::new(params)))
    }

    fn build(name: &str, modulus: U256) -> Result<FieldParams> {
        if modulus <= U256::from_u64(3) {
            return Err(Error::InvalidParams("modulus must exceed 3"));
        }
        if !modulus.bit(0) {
            return Err(Error::InvalidParams("modulus must be odd"));
        }
        if modulus.bit(255) {
            return Err(Error::InvalidParams("modulus must be below 2^255"));
        }
        let n0 = modulus.0[0];
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n0.wrapping_mul(inv)));
        }
        let mut r2 = U256::ONE;
        for _ in 0..512 {
            let (s, carry) = r2.overflowing_add(&r2);
            r2 = if carry || s >= modulus { s.wrapping_sub(&modulus) } else { s };
        }
        Ok(FieldParams { name: name.to_string(), modulus, r2, n0inv: inv.wrapping_neg() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn modulus(&self) -> U256 {
        self.modulus
    }

    /// Size of the canonical big-endian encoding.
    pub const ENCODED_LEN: usize = 32;

    pub fn zero(&'static self) -> FieldElement {
        FieldElement { value: U256::ZERO, params: self }
    }

    pub fn one(&'static self) -> FieldElement {
        FieldElement { value: U256::ONE, params: self }
    }

    pub fn from_u64(&'static self, v: u64) -> FieldElement {
        self.reduce(U256::from_u64(v))
    }

    /// Builds an element from an already-canonical value.
    pub fn element(&'static self, value: U256) -> Result<FieldElement> {
        if value >= self.modulus {
            return Err(Error::NonCanonicalEncoding);
        }
        Ok(FieldElement { value, params: self })
    }

    /// Reduces an arbitrary 256-bit integer modulo the field.
    pub fn reduce(&'static self, value: U256) -> FieldElement {
        FieldElement { value: self.reduce_raw(&value), params: self }
    }

    pub fn random<R: rand::Rng + ?Sized>(&'static self, rng: &mut R) -> FieldElement {
        // 256 random bits reduced; the bias is irrelevant for a test lab.
        let mut limbs = [0u64; 4];
        rng.fill(&mut limbs[..]);
        self.reduce(U256(limbs))
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&'static self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub(crate) fn reduce_raw(&self, value: &U256) -> U256 {
        let t = self.mont_mul(value, &self.r2);
        self.mont_mul(&t, &U256::ONE)
    }

    /// CIOS Montgomery product `a * b / 2^256 mod n`. Requires `b < n`;
    /// `a` may be any 256-bit value.
    fn mont_mul(&self, a: &U256, b: &U256) -> U256 {
        let n = &self.modulus.0;
        let mut t = [0u64; 6];
        for i in 0..4 {
            let mut c = 0;
            for j in 0..4 {
                (t[j], c) = mac(t[j], a.0[j], b.0[i], c);
            }
            let (s, c2) = adc(t[4], c, 0);
            t[4] = s;
            t[5] = c2;
            let m = t[0].wrapping_mul(self.n0inv);
            let (_, mut c) = mac(t[0], m, n[0], 0);
            for j in 1..4 {
                (t[j - 1], c) = mac(t[j], m, n[j], c);
            }
            let (s, c2) = adc(t[4], c, 0);
            t[3] = s;
            t[4] = t[5] + c2;
        }
        let r = U256([t[0], t[1], t[2], t[3]]);
        if t[4] != 0 || r >= self.modulus {
            r.wrapping_sub(&self.modulus)
        } else {
            r
        }
    }

    fn add_raw(&self, a: &U256, b: &U256) -> U256 {
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= self.modulus {
            s.wrapping_sub(&self.modulus)
        } else {
            s
        }
    }

    fn sub_raw(&self, a: &U256, b: &U256) -> U256 {
        let (d, borrow) = a.overflowing_sub(b);
        if borrow {
            d.overflowing_add(&self.modulus).0
        } else {
            d
        }
    }

    fn mul_raw(&self, a: &U256, b: &U256) -> U256 {
        let t = self.mont_mul(a, b);
        self.mont_mul(&t, &self.r2)
    }

    fn pow_raw(&self, base: &U256, exp: &U256) -> U256 {
        let mut acc = self.reduce_raw(&U256::ONE);
        for i in (0..exp.bits()).rev() {
            acc = self.mul_raw(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul_raw(&acc, base);
            }
        }
        acc
    }

    /// Miller-Rabin over the first twelve prime bases (deterministic below 3.3e24).
    fn is_probable_prime(&self) -> bool {
        const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        let n = self.modulus;
        for b in BASES {
            if n == U256::from_u64(b) {
                return true;
            }
            if n.div_rem_small(b).1 == 0 {
                return false;
            }
        }
        let n_minus_1 = n.wrapping_sub(&U256::ONE);
        let mut d = n_minus_1;
        let mut s = 0;
        while !d.bit(0) {
            d = d.shr1();
            s += 1;
        }
        let one = U256::ONE;
        'witness: for b in BASES {
            let mut x = self.pow_raw(&U256::from_u64(b), &d);
            if x == one || x == n_minus_1 {
                continue;
            }
            for _ in 1..s {
                x = self.mul_raw(&x, &x);
                if x == n_minus_1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for FieldParams {}

fn builtin(name: &str, hex: &str) -> &'static FieldParams {
    FieldParams::new(name, U256::from_hex(hex).expect("valid hex")).expect("valid built-in modulus")
}

static BN254_BASE: LazyLock<&'static FieldParams> = LazyLock::new(|| {
    builtin("bn254-base", "30644e72e131a029b85045b68181585d97816a916871ca8d3c208c16d87cfd47")
});

static BN254_SCALAR: LazyLock<&'static FieldParams> = LazyLock::new(|| {
    builtin("bn254-scalar", "30644e72e131a029b85045b68181585d2833e84879b9709143e1f593f0000001")
});

static TINY_13: LazyLock<&'static FieldParams> = LazyLock::new(|| builtin("tiny-13", "d"));

static TINY_19: LazyLock<&'static FieldParams> = LazyLock::new(|| builtin("tiny-19", "13"));

/// Base field of the 254-bit BN curve.
pub fn bn254_base() -> &'static FieldParams {
    &BN254_BASE
}

/// Scalar field (group order) of the 254-bit BN curve.
pub fn bn254_scalar() -> &'static FieldParams {
    &BN254_SCALAR
}

/// The prime 13, for exhaustive desk-scale tests.
pub fn tiny13() -> &'static FieldParams {
    &TINY_13
}

/// The prime 19: order of the tiny test curve over F13.
pub fn tiny19() -> &'static FieldParams {
    &TINY_19
}

/// A residue modulo the prime described by its [`FieldParams`].
#[derive(Clone, Copy)]
pub struct FieldElement {
    value: U256,
    params: &'static FieldParams,
}

impl FieldElement {
    /// Decodes a 32-byte big-endian canonical encoding.
    pub fn decode(bytes: &[u8; 32], params: &'static FieldParams) -> Result<FieldElement> {
        params.element(U256::from_be_bytes(bytes))
    }

    pub fn decode_slice(bytes: &[u8], params: &'static FieldParams) -> Result<FieldElement> {
        let arr: &[u8; 32] = bytes
            .try_into()
            .map_err(|_| Error::WireFormat(format!("field element needs 32 bytes, got {}", bytes.len())))?;
        Self::decode(arr, params)
    }

    pub fn to_be_bytes(&self) -> [u8; 32] {
        self.value.to_be_bytes()
    }

    pub fn value(&self) -> U256 {
        self.value
    }

    pub fn params(&self) -> &'static FieldParams {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value == U256::ONE
    }

    pub fn same_field(&self, other: &FieldElement) -> bool {
        std::ptr::eq(self.params, other.params) || self.params.modulus == other.params.modulus
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.params.add_raw(&self.value, &other.value)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.params.sub_raw(&self.value, &other.value)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.params.mul_raw(&self.value, &other.value)))
    }

    fn with(&self, value: U256) -> FieldElement {
        FieldElement { value, params: self.params }
    }

    pub fn double(&self) -> FieldElement {
        self.with(self.params.add_raw(&self.value, &self.value))
    }

    pub fn square(&self) -> FieldElement {
        self.with(self.params.mul_raw(&self.value, &self.value))
    }

    /// Square-and-multiply.
    pub fn pow(&self, exp: &U256) -> FieldElement {
        self.with(self.params.pow_raw(&self.value, exp))
    }

    pub fn pow_u64(&self, exp: u64) -> FieldElement {
        self.pow(&U256::from_u64(exp))
    }

    /// Multiplicative inverse under the given policy.
    ///
    /// `FermatNoZeroCheck` returns `a^(p-2)` for every input, including
    /// zero, where the result is zero.
    pub fn inverse(&self, policy: InversePolicy) -> Result<FieldElement> {
        if policy == InversePolicy::Checked && self.is_zero() {
            return Err(Error::ZeroInverse { index: None });
        }
        let exp = self.params.modulus.wrapping_sub(&U256::from_u64(2));
        Ok(self.pow(&exp))
    }

    /// Reinterprets the integer value in another field, reducing it.
    pub fn reduce_into(&self, params: &'static FieldParams) -> FieldElement {
        params.reduce(self.value)
    }

    /// Legendre-symbol based square root for `p = 3 mod 4`; `None` if no root exists.
    pub fn sqrt(&self) -> Option<FieldElement> {
        let p = self.params.modulus;
        if p.0[0] & 3 != 3 {
            // Tonelli-Shanks is not needed by any configured field.
            return self.sqrt_exhaustive();
        }
        let (e, _) = p.overflowing_add(&U256::ONE);
        let root = self.pow(&e.shr1().shr1());
        (root.square() == *self).then_some(root)
    }

    fn sqrt_exhaustive(&self) -> Option<FieldElement> {
        let p = self.params.modulus;
        if p.bits() > 20 {
            return None;
        }
        (0..p.low_u64())
            .map(|v| self.params.from_u64(v))
            .find(|r| r.square() == *self)
    }
}

/// Montgomery batch inversion: prefix products, one inversion, back-substitution.
///
/// Under `FermatNoZeroCheck` a single zero makes the total product zero, its
/// "inverse" zero, and every output zero. Under `Checked` the first zero is
/// reported with its index before any work is done.
pub fn batch_inverse(items: &[FieldElement], policy: InversePolicy) -> Result<Vec<FieldElement>> {
    let first = items.first().ok_or(Error::EmptyInput)?;
    for item in &items[1..] {
        first.check(item)?;
    }
    if policy == InversePolicy::Checked {
        if let Some(i) = items.iter().position(FieldElement::is_zero) {
            return Err(Error::ZeroInverse { index: Some(i) });
        }
    }

    let mut prefix = Vec::with_capacity(items.len());
    let mut acc = first.params.one();
    for item in items {
        acc *= *item;
        prefix.push(acc);
    }

    let mut inv = acc.inverse(policy)?;
    let mut out = vec![first.params.zero(); items.len()];
    for i in (1..items.len()).rev() {
        out[i] = inv * prefix[i - 1];
        inv *= items[i];
    }
    out[0] = inv;
    Ok(out)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.same_field(other)
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.value.hash(state);
        self.params.modulus.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x} ({})", self.value, self.params.name)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.value)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident, $raw:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;

            #[inline]
            fn $method(self, rhs: FieldElement) -> FieldElement {
                assert!(self.same_field(&rhs), "field mismatch: {} vs {}", self.params.name, rhs.params.name);
                self.with(self.params.$raw(&self.value, &rhs.value))
            }
        }

        impl $assign_trait for FieldElement {
            #[inline]
            fn $assign(&mut self, rhs: FieldElement) {
                *self = $trait::$method(*self, rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, add_raw);
binop!(Sub, sub, SubAssign, sub_assign, sub_raw);
binop!(Mul, mul, MulAssign, mul_assign, mul_raw);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.with(self.params.sub_raw(&U256::ZERO, &self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::{BigInt, BigUint};
    use proptest::prelude::*;

    fn t13(v: u64) -> FieldElement {
        tiny13().from_u64(v)
    }

    /// Extended Euclid over i128, independent of the Fermat path.
    fn egcd_inverse(a: i128, m: i128) -> Option<i128> {
        let (mut old_r, mut r) = (a.rem_euclid(m), m);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        (old_r == 1).then(|| old_s.rem_euclid(m))
    }

    fn big_inverse(a: &BigUint, m: &BigUint) -> BigUint {
        let (a, m) = (BigInt::from(a.clone()), BigInt::from(m.clone()));
        let (mut old_r, mut r) = (a, m.clone());
        let (mut old_s, mut s) = (BigInt::from(1), BigInt::from(0));
        while r != BigInt::from(0) {
            let q = &old_r / &r;
            let nr = &old_r - &q * &r;
            old_r = std::mem::replace(&mut r, nr);
            let ns = &old_s - &q * &s;
            old_s = std::mem::replace(&mut s, ns);
        }
        (((old_s % &m) + &m) % &m).to_biguint().unwrap()
    }

    fn to_big(v: &U256) -> BigUint {
        BigUint::from_bytes_be(&v.to_be_bytes())
    }

    #[test]
    fn decode_examples() {
        let p = bn254_base();
        assert!(FieldElement::decode(&[0u8; 32], p).unwrap().is_zero());
        let mut one = [0u8; 32];
        one[31] = 1;
        assert!(FieldElement::decode(&one, p).unwrap().is_one());
        assert_eq!(
            FieldElement::decode(&p.modulus().to_be_bytes(), p),
            Err(Error::NonCanonicalEncoding)
        );
    }

    #[test]
    fn tiny_arith_examples() {
        assert_eq!(t13(7) + t13(9), t13(3));
        assert_eq!(t13(0).pow_u64(11), t13(0));
        for x in 1..13 {
            assert_eq!(t13(x).pow_u64(12), t13(1), "x = {x}");
        }
    }

    #[test]
    fn mismatched_params() {
        let a = tiny13().from_u64(2);
        let b = tiny19().from_u64(2);
        assert_eq!(a.try_add(&b), Err(Error::ParamsMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::ParamsMismatch));
        assert_eq!(batch_inverse(&[a, b], InversePolicy::Checked), Err(Error::ParamsMismatch));
    }

    #[test]
    fn inverse_of_zero() {
        for p in [tiny13(), bn254_base(), bn254_scalar()] {
            assert!(p.zero().inverse(InversePolicy::FermatNoZeroCheck).unwrap().is_zero());
            assert_eq!(
                p.zero().inverse(InversePolicy::Checked),
                Err(Error::ZeroInverse { index: None })
            );
        }
    }

    #[test]
    fn inverse_matches_euclid_on_tiny_field() {
        assert_eq!(t13(3).inverse(InversePolicy::Checked).unwrap(), t13(9));
        for x in 1..13u64 {
            let expected = egcd_inverse(x as i128, 13).unwrap() as u64;
            for policy in [InversePolicy::Checked, InversePolicy::FermatNoZeroCheck] {
                assert_eq!(t13(x).inverse(policy).unwrap(), t13(expected));
            }
        }
    }

    #[test]
    fn batch_inverse_examples() {
        let fermat = InversePolicy::FermatNoZeroCheck;
        assert_eq!(batch_inverse(&[t13(2), t13(0)], fermat).unwrap(), vec![t13(0), t13(0)]);
        assert_eq!(
            batch_inverse(&[t13(2), t13(3)], InversePolicy::Checked).unwrap(),
            vec![t13(7), t13(9)]
        );
        for x in 1..13 {
            for policy in [InversePolicy::Checked, fermat] {
                assert_eq!(
                    batch_inverse(&[t13(x)], policy).unwrap(),
                    vec![t13(x).inverse(policy).unwrap()]
                );
            }
        }
        assert_eq!(
            batch_inverse(&[t13(4), t13(5), t13(0)], InversePolicy::Checked),
            Err(Error::ZeroInverse { index: Some(2) })
        );
        assert_eq!(batch_inverse(&[], fermat), Err(Error::EmptyInput));
    }

    #[test]
    fn batch_inverse_exhaustive_pairs_tiny() {
        for a in 1..13 {
            for b in 1..13 {
                let got = batch_inverse(&[t13(a), t13(b)], InversePolicy::Checked).unwrap();
                assert_eq!(got[0], t13(egcd_inverse(a as i128, 13).unwrap() as u64));
                assert_eq!(got[1], t13(egcd_inverse(b as i128, 13).unwrap() as u64));
            }
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(FieldParams::new("three", U256::from_u64(3)).is_err());
        assert!(FieldParams::new("even", U256::from_u64(14)).is_err());
        assert!(FieldParams::new("composite", U256::from_u64(91)).is_err());
        assert!(FieldParams::new("carmichael", U256::from_u64(561)).is_err());
        assert!(FieldParams::new("p", U256::from_u64(1_000_000_007)).is_ok());
    }

    #[test]
    fn reduce_matches_bigint() {
        let p = bn254_scalar();
        let v = U256([u64::MAX; 4]);
        let expected = to_big(&v) % to_big(&p.modulus());
        assert_eq!(to_big(&p.reduce(v).value()), expected);
    }

    #[test]
    fn sqrt_roundtrip() {
        let p = bn254_base();
        let x = p.from_u64(12345).square();
        let r = x.sqrt().unwrap();
        assert_eq!(r.square(), x);
        for v in 0..13 {
            let x = t13(v);
            if let Some(r) = x.sqrt() {
                assert_eq!(r.square(), x);
            }
        }
    }

    fn arb_u256() -> impl Strategy<Value = U256> {
        any::<[u64; 4]>().prop_map(U256)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn mul_matches_bigint(a in arb_u256(), b in arb_u256()) {
            for p in [bn254_base(), bn254_scalar()] {
                let (x, y) = (p.reduce(a), p.reduce(b));
                let m = to_big(&p.modulus());
                let expected = (to_big(&x.value()) * to_big(&y.value())) % &m;
                prop_assert_eq!(to_big(&(x * y).value()), expected);
                let expected = (to_big(&x.value()) + to_big(&y.value())) % &m;
                prop_assert_eq!(to_big(&(x + y).value()), expected);
                let expected = (to_big(&x.value()) + &m - to_big(&y.value())) % &m;
                prop_assert_eq!(to_big(&(x - y).value()), expected);
            }
        }

        #[test]
        fn checked_inverse_is_inverse(a in arb_u256()) {
            let p = bn254_scalar();
            let x = p.reduce(a);
            prop_assume!(!x.is_zero());
            let inv = x.inverse(InversePolicy::Checked).unwrap();
            prop_assert!((x * inv).is_one());
            prop_assert_eq!(inv, x.inverse(InversePolicy::FermatNoZeroCheck).unwrap());
            prop_assert_eq!(to_big(&inv.value()), big_inverse(&to_big(&x.value()), &to_big(&p.modulus())));
        }

        #[test]
        fn fermat_little_theorem(a in arb_u256()) {
            for p in [bn254_base(), bn254_scalar()] {
                let x = p.reduce(a);
                prop_assume!(!x.is_zero());
                prop_assert!(x.pow(&p.modulus().wrapping_sub(&U256::ONE)).is_one());
            }
        }

        #[test]
        fn batch_matches_scalar_inverse(vals in prop::collection::vec(arb_u256(), 1..12)) {
            let p = bn254_base();
            let xs: Vec<_> = vals.iter().map(|v| p.reduce(*v)).filter(|x| !x.is_zero()).collect();
            prop_assume!(!xs.is_empty());
            let got = batch_inverse(&xs, InversePolicy::Checked).unwrap();
            for (x, inv) in xs.iter().zip(&got) {
                prop_assert_eq!(*inv, x.inverse(InversePolicy::Checked).unwrap());
            }
        }

        #[test]
        fn contamination(vals in prop::collection::vec(arb_u256(), 1..12), at in any::<prop::sample::Index>()) {
            let p = bn254_base();
            let mut xs: Vec<_> = vals.iter().map(|v| p.reduce(*v)).collect();
            let i = at.index(xs.len());
            xs[i] = p.zero();
            let got = batch_inverse(&xs, InversePolicy::FermatNoZeroCheck).unwrap();
            prop_assert!(got.iter().all(FieldElement::is_zero));
        }
    }
}
