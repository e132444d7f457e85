//! Short-Weierstrass curves `y^2 = x^3 + b` in three representations: the
//! 64-byte wire encoding, affine coordinates, and Jacobian coordinates.
//!
//! The representations deliberately disagree about what "zero" means:
//!
//! * the affine infinity flag lives in bit 255 of the x register, so the
//!   all-zero encoding decodes to `(0, 0)`, which is not flagged;
//! * Jacobian points with `Z = 0` are the group identity, but the addition
//!   law compares coordinates before it looks at `Z`, so the pseudo-point
//!   `(0, 0, 1)` collapses to `(0, 0, 0)` under doubling and absorbs
//!   everything it is later added to;
//! * batch normalization shares a single inversion across all points.

use std::fmt;
use std::ops::Neg;
use std::sync::LazyLock;

use crate::bigint::U256;
use crate::error::{Error, Result};
use crate::field::{self, batch_inverse, FieldElement, FieldParams, InversePolicy};

/// Curve `y^2 = x^3 + b` over `base`, with a generator of prime order `scalar.modulus()`.
#[derive(Debug)]
pub struct CurveParams {
    name: String,
    base: &'static FieldParams,
    scalar: &'static FieldParams,
    b: FieldElement,
    gx: FieldElement,
    gy: FieldElement,
}

impl CurveParams {
    pub fn new(
        name: &str,
        base: &'static FieldParams,
        scalar: &'static FieldParams,
        b: U256,
        generator: (U256, U256),
    ) -> Result<&'static CurveParams> {
        let b = base.element(b)?;
        if b.is_zero() {
            return Err(Error::InvalidParams("b must be nonzero"));
        }
        let gx = base.element(generator.0)?;
        let gy = base.element(generator.1)?;
        if gy.square() != gx.square() * gx + b {
            return Err(Error::InvalidParams("generator is not on the curve"));
        }
        let params: &'static CurveParams =
            Box::leak(Box::new(CurveParams { name: name.to_string(), base, scalar, b, gx, gy }));
        if !params.generator_jacobian().scalar_mul(&scalar.modulus()).is_identity() {
            return Err(Error::InvalidParams("generator order does not match the scalar field"));
        }
        Ok(params)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base_field(&self) -> &'static FieldParams {
        self.base
    }

    pub fn scalar_field(&self) -> &'static FieldParams {
        self.scalar
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn generator(&'static self) -> AffinePoint {
        AffinePoint::from_coords(self.gx, self.gy, self)
    }

    pub fn generator_jacobian(&'static self) -> JacobianPoint {
        JacobianPoint { x: self.gx, y: self.gy, z: self.base.one(), curve: self }
    }

    pub fn identity(&'static self) -> JacobianPoint {
        JacobianPoint::identity(self)
    }
}

impl PartialEq for CurveParams {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.base == other.base
                && self.scalar == other.scalar
                && self.b == other.b
                && self.gx == other.gx
                && self.gy == other.gy)
    }
}

impl Eq for CurveParams {}

static BN254_G1: LazyLock<&'static CurveParams> = LazyLock::new(|| {
    CurveParams::new(
        "bn254-g1",
        field::bn254_base(),
        field::bn254_scalar(),
        U256::from_u64(3),
        (U256::ONE, U256::from_u64(2)),
    )
    .expect("valid bn254 parameters")
});

static TINY: LazyLock<&'static CurveParams> = LazyLock::new(|| {
    CurveParams::new(
        "tiny-13",
        field::tiny13(),
        field::tiny19(),
        U256::from_u64(2),
        (U256::ONE, U256::from_u64(4)),
    )
    .expect("valid tiny curve parameters")
});

/// G1 of the 254-bit BN curve: `y^2 = x^3 + 3`, generator `(1, 2)`.
pub fn bn254_g1() -> &'static CurveParams {
    &BN254_G1
}

/// `y^2 = x^3 + 2` over F13, of prime order 19, generator `(1, 4)`. No pairing.
pub fn tiny_curve() -> &'static CurveParams {
    &TINY
}

/// Decode-time verdict on a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Validity {
    Valid,
    Invalid,
}

/// What `point_decode` does with a point that is not on the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointValidationPolicy {
    RejectInvalid,
    /// Mark the point [`Validity::Invalid`] and keep going.
    ContinueOnInvalid,
}

/// Uncompressed point encoding: `x (32 bytes BE) || y (32 bytes BE)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EncodedPoint(pub [u8; 64]);

impl EncodedPoint {
    pub const LEN: usize = 64;

    pub fn from_slice(bytes: &[u8]) -> Result<Self> {
        let arr: [u8; 64] = bytes
            .try_into()
            .map_err(|_| Error::WireFormat(format!("point needs 64 bytes, got {}", bytes.len())))?;
        Ok(EncodedPoint(arr))
    }

    pub fn zero() -> Self {
        EncodedPoint([0u8; 64])
    }

    pub fn as_bytes(&self) -> &[u8; 64] {
        &self.0
    }
}

impl Default for EncodedPoint {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for EncodedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("EncodedPoint(")?;
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        f.write_str(")")
    }
}

/// Affine point. The x coordinate sits in a 256-bit register whose bit 255
/// is the infinity flag; the field value is the low 255 bits.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct AffinePoint {
    x_reg: U256,
    y: FieldElement,
    validity: Validity,
    curve: &'static CurveParams,
}

impl AffinePoint {
    /// Builds a point and marks it by evaluating the curve equation.
    pub fn from_coords(x: FieldElement, y: FieldElement, curve: &'static CurveParams) -> Self {
        let mut p = AffinePoint { x_reg: x.value(), y, validity: Validity::Valid, curve };
        if !p.is_on_curve() {
            p.validity = Validity::Invalid;
        }
        p
    }

    /// The flagged point at infinity: x register `0x80..00`, y = 0.
    pub fn infinity(curve: &'static CurveParams) -> Self {
        AffinePoint { x_reg: U256::MSB, y: curve.base.zero(), validity: Validity::Valid, curve }
    }

    /// The `(0, 0)` pseudo-point that the all-zero encoding decodes to.
    pub fn zero(curve: &'static CurveParams) -> Self {
        Self::from_coords(curve.base.zero(), curve.base.zero(), curve)
    }

    pub fn decode(
        enc: &EncodedPoint,
        curve: &'static CurveParams,
        policy: PointValidationPolicy,
    ) -> Result<Self> {
        let base = curve.base;
        let mut x_reg = U256::from_be_bytes(enc.0[..32].try_into().unwrap());
        let y = FieldElement::decode(enc.0[32..].try_into().unwrap(), base)?;
        if x_reg.bit(255) {
            x_reg.clear_bit(255);
            if !x_reg.is_zero() || !y.is_zero() {
                return Err(Error::NonCanonicalEncoding);
            }
            return Ok(Self::infinity(curve));
        }
        let x = base.element(x_reg)?;
        let p = Self::from_coords(x, y, curve);
        if p.validity == Validity::Invalid && policy == PointValidationPolicy::RejectInvalid {
            return Err(Error::InvalidPoint);
        }
        Ok(p)
    }

    pub fn encode(&self) -> EncodedPoint {
        let mut out = [0u8; 64];
        out[..32].copy_from_slice(&self.x_reg.to_be_bytes());
        out[32..].copy_from_slice(&self.y.to_be_bytes());
        EncodedPoint(out)
    }

    pub fn curve(&self) -> &'static CurveParams {
        self.curve
    }

    /// The x coordinate with the flag bit masked off.
    pub fn x(&self) -> FieldElement {
        let mut v = self.x_reg;
        v.clear_bit(255);
        self.curve.base.reduce(v)
    }

    pub fn y(&self) -> FieldElement {
        self.y
    }

    pub fn x_register(&self) -> U256 {
        self.x_reg
    }

    pub fn validity(&self) -> Validity {
        self.validity
    }

    /// True iff `y^2 = x^3 + b`, or the infinity flag is set.
    pub fn is_on_curve(&self) -> bool {
        if self.is_infinity_msb() {
            return true;
        }
        let x = self.x();
        self.y.square() == x.square() * x + self.curve.b
    }

    /// Reads bit 255 of the x register. `(0, 0)` is therefore not infinity.
    pub fn is_infinity_msb(&self) -> bool {
        self.x_reg.bit(255)
    }

    pub fn set_infinity(&mut self) {
        self.x_reg.set_bit(255);
        self.validity = Validity::Valid;
    }

    /// Both coordinates are zero and no flag is set.
    pub fn is_zero_coords(&self) -> bool {
        self.x_reg.is_zero() && self.y.is_zero()
    }

    pub fn to_jacobian(&self) -> JacobianPoint {
        JacobianPoint::from_affine(self)
    }
}

impl fmt::Debug for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity_msb() {
            return write!(f, "Affine(infinity)");
        }
        write!(f, "Affine({}, {}, {:?})", self.x(), self.y, self.validity)
    }
}

/// Jacobian point `(X, Y, Z)` representing `(X/Z^2, Y/Z^3)`; `Z = 0` is the identity.
///
/// `PartialEq` compares raw coordinates. Use [`JacobianPoint::equivalent`]
/// for group equality.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct JacobianPoint {
    x: FieldElement,
    y: FieldElement,
    z: FieldElement,
    curve: &'static CurveParams,
}

impl JacobianPoint {
    /// Canonical identity `(1, 1, 0)`.
    pub fn identity(curve: &'static CurveParams) -> Self {
        let base = curve.base;
        JacobianPoint { x: base.one(), y: base.one(), z: base.zero(), curve }
    }

    pub fn from_coords(
        x: FieldElement,
        y: FieldElement,
        z: FieldElement,
        curve: &'static CurveParams,
    ) -> Result<Self> {
        for c in [&x, &y, &z] {
            if !std::ptr::eq(c.params(), curve.base) && c.params() != curve.base {
                return Err(Error::ParamsMismatch);
            }
        }
        Ok(JacobianPoint { x, y, z, curve })
    }

    /// Flagged infinity maps to the identity; everything else to `(x, y, 1)`,
    /// regardless of validity.
    pub fn from_affine(p: &AffinePoint) -> Self {
        if p.is_infinity_msb() {
            return Self::identity(p.curve);
        }
        JacobianPoint { x: p.x(), y: p.y, z: p.curve.base.one(), curve: p.curve }
    }

    pub fn x(&self) -> FieldElement {
        self.x
    }

    pub fn y(&self) -> FieldElement {
        self.y
    }

    pub fn z(&self) -> FieldElement {
        self.z
    }

    pub fn curve(&self) -> &'static CurveParams {
        self.curve
    }

    pub fn is_identity(&self) -> bool {
        self.z.is_zero()
    }

    /// All three coordinates are zero.
    pub fn is_all_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Group equality: `(X1 Z2^2, Y1 Z2^3) = (X2 Z1^2, Y2 Z1^3)`, or both identity.
    pub fn equivalent(&self, other: &JacobianPoint) -> bool {
        match (self.is_identity(), other.is_identity()) {
            (true, true) => true,
            (false, false) => {
                let z1z1 = self.z.square();
                let z2z2 = other.z.square();
                self.x * z2z2 == other.x * z1z1
                    && self.y * z2z2 * other.z == other.y * z1z1 * self.z
            }
            _ => false,
        }
    }

    /// `dbl-2009-l` for `a = 0`. Total: `(0, 0, Z)` doubles to `(0, 0, 0)`.
    pub fn double(&self) -> Self {
        let a = self.x.square();
        let b = self.y.square();
        let c = b.square();
        let d = ((self.x + b).square() - a - c).double();
        let e = a.double() + a;
        let f = e.square();
        let x3 = f - d.double();
        let c8 = c.double().double().double();
        let y3 = e * (d - x3) - c8;
        let z3 = (self.y * self.z).double();
        JacobianPoint { x: x3, y: y3, z: z3, curve: self.curve }
    }

    /// `add-2007-bl`.
    ///
    /// The projected coordinates are compared before `Z = 0` operands are
    /// short-circuited. For genuine identities (`X != 0`) this is equivalent
    /// to the usual order; for the `(0, 0, Z)` pseudo-points it routes every
    /// sum into the doubling branch.
    pub fn add(&self, other: &JacobianPoint) -> Self {
        let z1z1 = self.z.square();
        let z2z2 = other.z.square();
        let u1 = self.x * z2z2;
        let u2 = other.x * z1z1;
        let s1 = self.y * other.z * z2z2;
        let s2 = other.y * self.z * z1z1;
        if u1 == u2 {
            return if s1 == s2 { self.double() } else { Self::identity(self.curve) };
        }
        if self.is_identity() {
            return *other;
        }
        if other.is_identity() {
            return *self;
        }
        let h = u2 - u1;
        let i = h.double().square();
        let j = h * i;
        let r = (s2 - s1).double();
        let v = u1 * i;
        let x3 = r.square() - j - v.double();
        let y3 = r * (v - x3) - (s1 * j).double();
        let z3 = ((self.z + other.z).square() - z1z1 - z2z2) * h;
        JacobianPoint { x: x3, y: y3, z: z3, curve: self.curve }
    }

    pub fn sub(&self, other: &JacobianPoint) -> Self {
        self.add(&other.neg())
    }

    /// Left-to-right double-and-add over the bits of `k` (any 256-bit integer).
    pub fn scalar_mul(&self, k: &U256) -> Self {
        let mut acc = Self::identity(self.curve);
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

    /// Converts to affine by dividing through by `Z^2` and `Z^3`.
    ///
    /// Under `Checked` a zero `Z` is an error. Under `FermatNoZeroCheck` the
    /// "inverse" of zero is zero and the result is the `(0, 0)` pseudo-point.
    pub fn to_affine(&self, policy: InversePolicy) -> Result<AffinePoint> {
        if self.z.is_one() {
            return Ok(AffinePoint::from_coords(self.x, self.y, self.curve));
        }
        if policy == InversePolicy::Checked && self.z.is_zero() {
            return Err(Error::ZCoordinateZero { index: None });
        }
        let zinv = self.z.inverse(policy)?;
        let zinv2 = zinv.square();
        Ok(AffinePoint::from_coords(self.x * zinv2, self.y * zinv2 * zinv, self.curve))
    }

    /// Rescales to `(l^2 X, l^3 Y, l Z)`; same group element for nonzero `l`.
    pub fn rescale(&self, l: &FieldElement) -> Self {
        let l2 = l.square();
        JacobianPoint { x: self.x * l2, y: self.y * l2 * *l, z: self.z * *l, curve: self.curve }
    }
}

impl Neg for JacobianPoint {
    type Output = JacobianPoint;

    fn neg(self) -> JacobianPoint {
        JacobianPoint { y: -self.y, ..self }
    }
}

impl fmt::Debug for JacobianPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jacobian({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Normalizes every point to `Z = 1` with one shared inversion of the Z column.
///
/// With `reject_z_zero` set, any `Z = 0` is reported before anything is
/// computed. Otherwise the Z column goes through [`batch_inverse`] under
/// `policy`; with `FermatNoZeroCheck` a single zero Z turns every output into
/// `(0, 0, 1)`.
pub fn batch_normalize(
    points: &[JacobianPoint],
    policy: InversePolicy,
    reject_z_zero: bool,
) -> Result<Vec<JacobianPoint>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if reject_z_zero {
        if let Some(i) = points.iter().position(JacobianPoint::is_identity) {
            return Err(Error::ZCoordinateZero { index: Some(i) });
        }
    }
    let zs: Vec<FieldElement> = points.iter().map(|p| p.z).collect();
    let zinvs = batch_inverse(&zs, policy)?;
    Ok(points
        .iter()
        .zip(zinvs)
        .map(|(p, zinv)| {
            let zinv2 = zinv.square();
            JacobianPoint {
                x: p.x * zinv2,
                y: p.y * zinv2 * zinv,
                z: p.curve.base.one(),
                curve: p.curve,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    const PAPER_P0: [&str; 3] = [
        "0x12270675066dbf202e8766f5fa48648f95032fbff46996a08e05e427ed0fffb9",
        "0x2cce89ca786bd0a3db55776a24aa3253bce3b8ef689849f93596b5b26afec90f",
        "0x04ae1f4cd5f84a484acc4ba115fbd02a879d2e30b8cd97e18f3865887213823b",
    ];

    fn g1() -> &'static CurveParams {
        bn254_g1()
    }

    fn fe(hex: &str) -> FieldElement {
        g1().base_field().element(U256::from_hex(hex).unwrap()).unwrap()
    }

    fn jac(x: u64, y: u64, z: u64) -> JacobianPoint {
        let b = g1().base_field();
        JacobianPoint::from_coords(b.from_u64(x), b.from_u64(y), b.from_u64(z), g1()).unwrap()
    }

    fn coords(p: &JacobianPoint) -> (U256, U256, U256) {
        (p.x().value(), p.y().value(), p.z().value())
    }

    fn zero_triple() -> (U256, U256, U256) {
        (U256::ZERO, U256::ZERO, U256::ZERO)
    }

    #[test]
    fn decode_zero_bytes() {
        let p = AffinePoint::decode(&EncodedPoint::zero(), g1(), PointValidationPolicy::ContinueOnInvalid)
            .unwrap();
        assert!(p.is_zero_coords());
        assert_eq!(p.validity(), Validity::Invalid);
        assert_eq!(
            AffinePoint::decode(&EncodedPoint::zero(), g1(), PointValidationPolicy::RejectInvalid),
            Err(Error::InvalidPoint)
        );
    }

    #[test]
    fn decode_generator() {
        let g = g1().generator();
        for policy in [PointValidationPolicy::RejectInvalid, PointValidationPolicy::ContinueOnInvalid] {
            let d = AffinePoint::decode(&g.encode(), g1(), policy).unwrap();
            assert_eq!(d, g);
            assert_eq!(d.validity(), Validity::Valid);
        }
    }

    #[test]
    fn decode_non_canonical() {
        let mut enc = [0u8; 64];
        enc[..32].copy_from_slice(&g1().base_field().modulus().to_be_bytes());
        for policy in [PointValidationPolicy::RejectInvalid, PointValidationPolicy::ContinueOnInvalid] {
            assert_eq!(
                AffinePoint::decode(&EncodedPoint(enc), g1(), policy),
                Err(Error::NonCanonicalEncoding)
            );
        }
        let mut flagged = [0u8; 64];
        flagged[0] = 0x80;
        flagged[63] = 1;
        assert_eq!(
            AffinePoint::decode(&EncodedPoint(flagged), g1(), PointValidationPolicy::RejectInvalid),
            Err(Error::NonCanonicalEncoding)
        );
    }

    #[test]
    fn on_curve_and_msb_checks() {
        let zero = AffinePoint::zero(g1());
        assert!(!zero.is_on_curve());
        assert!(!zero.is_infinity_msb());
        assert!(g1().generator().is_on_curve());
        assert!(!g1().generator().is_infinity_msb());
        let mut p = g1().generator();
        p.set_infinity();
        assert!(p.is_infinity_msb());
        assert!(p.is_on_curve());
        let inf = AffinePoint::infinity(g1());
        assert!(inf.is_infinity_msb() && inf.is_on_curve());
        let mut z = zero;
        z.set_infinity();
        assert!(z.is_infinity_msb());
    }

    #[test]
    fn infinity_encoding_roundtrip() {
        let inf = AffinePoint::infinity(g1());
        let enc = inf.encode();
        assert_eq!(enc.0[0], 0x80);
        assert!(enc.0[1..].iter().all(|b| *b == 0));
        let back = AffinePoint::decode(&enc, g1(), PointValidationPolicy::RejectInvalid).unwrap();
        assert!(back.is_infinity_msb());
        assert!(back.to_jacobian().is_identity());
    }

    #[test]
    fn order_annihilates_generator() {
        let g = g1().generator_jacobian();
        let r = g1().scalar_field().modulus();
        assert!(g.scalar_mul(&r).is_identity());
        let t = tiny_curve().generator_jacobian();
        assert!(t.scalar_mul(&U256::from_u64(19)).is_identity());
    }

    #[test]
    fn degenerate_doubling() {
        assert_eq!(coords(&jac(0, 0, 1).double()), zero_triple());
    }

    #[test]
    fn degenerate_scalar_mul() {
        let zp = jac(0, 0, 1);
        assert_eq!(coords(&zp.scalar_mul(&U256::ONE)), coords(&zp));
        for k in 2..40u64 {
            assert_eq!(coords(&zp.scalar_mul(&U256::from_u64(k))), zero_triple(), "k = {k}");
        }
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for _ in 0..32 {
            let u = g1().scalar_field().random_nonzero(&mut rng);
            let sum = zp.add(&zp.mul(&u));
            assert_eq!(coords(&sum), zero_triple());
        }
    }

    #[test]
    fn inverse_element() {
        let p = g1().generator_jacobian().scalar_mul(&U256::from_u64(12345));
        assert!(p.add(&-p).is_identity());
        assert!((-p).add(&p).is_identity());
    }

    #[test]
    fn paper_batch_normalize_example() {
        let p0 = JacobianPoint::from_coords(fe(PAPER_P0[0]), fe(PAPER_P0[1]), fe(PAPER_P0[2]), g1()).unwrap();
        let p1 = jac(0, 0, 0);
        let out = batch_normalize(&[p0, p1], InversePolicy::FermatNoZeroCheck, false).unwrap();
        let unit = (U256::ZERO, U256::ZERO, U256::ONE);
        assert_eq!(coords(&out[0]), unit);
        assert_eq!(coords(&out[1]), unit);
        assert_eq!(
            batch_normalize(&[p0, p1], InversePolicy::FermatNoZeroCheck, true),
            Err(Error::ZCoordinateZero { index: Some(1) })
        );
        assert_eq!(
            batch_normalize(&[p0, p1], InversePolicy::Checked, false),
            Err(Error::ZeroInverse { index: Some(1) })
        );
    }

    #[test]
    fn batch_normalize_unit_z_unchanged() {
        let g = g1().generator_jacobian();
        let pts = [g, g.double(), jac(0, 0, 1)];
        let pts: Vec<_> = pts
            .iter()
            .map(|p| batch_normalize(&[*p], InversePolicy::Checked, true).unwrap()[0])
            .collect();
        let out = batch_normalize(&pts, InversePolicy::FermatNoZeroCheck, false).unwrap();
        assert_eq!(out, pts);
    }

    #[test]
    fn to_affine_examples() {
        let p = g1().generator_jacobian();
        let a = p.to_affine(InversePolicy::Checked).unwrap();
        assert_eq!((a.x(), a.y()), (p.x(), p.y()));
        let z = jac(0, 0, 0).to_affine(InversePolicy::FermatNoZeroCheck).unwrap();
        assert!(z.is_zero_coords());
        assert!(!z.is_infinity_msb());
        assert_eq!(
            jac(0, 0, 0).to_affine(InversePolicy::Checked),
            Err(Error::ZCoordinateZero { index: None })
        );
    }

    #[test]
    fn bad_curve_params() {
        let b = field::bn254_base();
        let r = field::bn254_scalar();
        assert!(CurveParams::new("off", b, r, U256::from_u64(3), (U256::ONE, U256::ONE)).is_err());
        assert!(CurveParams::new("order", b, field::tiny19(), U256::from_u64(3), (U256::ONE, U256::from_u64(2)))
            .is_err());
    }

    /// Textbook affine group law on the tiny curve, with `None` as infinity.
    fn affine_oracle_add(p: Option<(i64, i64)>, q: Option<(i64, i64)>) -> Option<(i64, i64)> {
        const M: i64 = 13;
        let inv = |a: i64| (1..M).find(|i| (a.rem_euclid(M) * i) % M == 1).unwrap();
        let (p, q) = match (p, q) {
            (None, q) => return q,
            (p, None) => return p,
            (Some(p), Some(q)) => (p, q),
        };
        if p.0 == q.0 && (p.1 + q.1).rem_euclid(M) == 0 {
            return None;
        }
        let lambda = if p == q {
            3 * p.0 * p.0 % M * inv(2 * p.1) % M
        } else {
            (q.1 - p.1).rem_euclid(M) * inv(q.0 - p.0) % M
        };
        let x3 = (lambda * lambda - p.0 - q.0).rem_euclid(M);
        let y3 = (lambda * (p.0 - x3) - p.1).rem_euclid(M);
        Some((x3, y3))
    }

    fn tiny_points() -> Vec<Option<(i64, i64)>> {
        let mut pts = vec![None];
        for x in 0..13i64 {
            for y in 0..13i64 {
                if (y * y - x * x * x - 2).rem_euclid(13) == 0 {
                    pts.push(Some((x, y)));
                }
            }
        }
        pts
    }

    fn tiny_jac(p: Option<(i64, i64)>) -> JacobianPoint {
        let c = tiny_curve();
        match p {
            None => c.identity(),
            Some((x, y)) => JacobianPoint::from_coords(
                c.base_field().from_u64(x as u64),
                c.base_field().from_u64(y as u64),
                c.base_field().one(),
                c,
            )
            .unwrap(),
        }
    }

    fn tiny_affine(p: &JacobianPoint) -> Option<(i64, i64)> {
        if p.is_identity() {
            return None;
        }
        let a = p.to_affine(InversePolicy::Checked).unwrap();
        Some((a.x().value().low_u64() as i64, a.y().value().low_u64() as i64))
    }

    #[test]
    fn tiny_group_law_exhaustive() {
        let pts = tiny_points();
        assert_eq!(pts.len(), 19);
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for &p in &pts {
            for &q in &pts {
                // Random Z scaling exercises the projective formulas.
                let l = tiny_curve().base_field().random_nonzero(&mut rng);
                let jp = tiny_jac(p).rescale(&l);
                let sum = jp.add(&tiny_jac(q));
                assert_eq!(tiny_affine(&sum), affine_oracle_add(p, q), "{p:?} + {q:?}");
                assert!(sum.equivalent(&tiny_jac(q).add(&jp)));
            }
            assert!(tiny_jac(p).double().equivalent(&tiny_jac(p).add(&tiny_jac(p))));
        }
        for &p in &pts {
            for &q in &pts {
                for &r in &pts {
                    let (a, b, c) = (tiny_jac(p), tiny_jac(q), tiny_jac(r));
                    assert!(a.add(&b).add(&c).equivalent(&a.add(&b.add(&c))));
                }
            }
        }
    }

    #[test]
    fn tiny_encode_roundtrip_all_points() {
        for p in tiny_points() {
            let a = match p {
                None => AffinePoint::infinity(tiny_curve()),
                Some(_) => tiny_jac(p).to_affine(InversePolicy::Checked).unwrap(),
            };
            let back = AffinePoint::decode(&a.encode(), tiny_curve(), PointValidationPolicy::RejectInvalid)
                .unwrap();
            assert_eq!(back, a);
        }
    }

    fn arb_point() -> impl Strategy<Value = JacobianPoint> {
        (1u64.., 1u64..).prop_map(|(k, l)| {
            let g = g1().generator_jacobian();
            g.scalar_mul(&U256::from_u64(k)).rescale(&g1().base_field().from_u64(l))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn group_laws(p in arb_point(), q in arb_point(), r in arb_point()) {
            prop_assert!(p.add(&q).equivalent(&q.add(&p)));
            prop_assert!(p.add(&q).add(&r).equivalent(&p.add(&q.add(&r))));
            prop_assert!(p.double().equivalent(&p.add(&p)));
        }

        #[test]
        fn scalar_distributes(a in any::<u64>(), b in any::<u64>()) {
            let g = g1().generator_jacobian();
            let lhs = g.scalar_mul(&U256::from_u128(a as u128 + b as u128));
            let rhs = g.scalar_mul(&U256::from_u64(a)).add(&g.scalar_mul(&U256::from_u64(b)));
            prop_assert!(lhs.equivalent(&rhs));
        }

        #[test]
        fn batch_matches_individual(pts in prop::collection::vec(arb_point(), 1..6)) {
            let out = batch_normalize(&pts, InversePolicy::Checked, true).unwrap();
            for (p, n) in pts.iter().zip(&out) {
                let a = p.to_affine(InversePolicy::Checked).unwrap();
                prop_assert_eq!((a.x(), a.y()), (n.x(), n.y()));
                prop_assert!(n.z().is_one());
            }
        }

        #[test]
        fn single_zero_z_contaminates(pts in prop::collection::vec(arb_point(), 1..6), at in any::<prop::sample::Index>()) {
            let mut pts = pts;
            let i = at.index(pts.len());
            pts[i] = jac(0, 0, 0);
            let out = batch_normalize(&pts, InversePolicy::FermatNoZeroCheck, false).unwrap();
            for n in out {
                prop_assert_eq!(coords(&n), (U256::ZERO, U256::ZERO, U256::ONE));
            }
        }

        #[test]
        fn encode_roundtrip(p in arb_point()) {
            let a = p.to_affine(InversePolicy::Checked).unwrap();
            let back = AffinePoint::decode(&a.encode(), g1(), PointValidationPolicy::RejectInvalid).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
