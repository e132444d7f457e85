//! Optimal ate pairing on the 254-bit BN curve.
//!
//! The tower is `Fq2 = Fq[i]/(i^2 + 1)`, `Fq6 = Fq2[v]/(v^3 - (9 + i))`,
//! `Fq12 = Fq6[w]/(w^2 - v)`. G2 lives on the D-type sextic twist and is
//! untwisted by `(x, y) -> (x w^2, y w^3)`.
//!
//! [`PairingZeroPolicy::ZeroIsIdentity`] treats any input with all-zero
//! coordinates as the point at infinity and maps it to 1 before the Miller
//! loop runs. [`PairingZeroPolicy::RejectNonGroupInput`] refuses such inputs.

mod fq12;
mod fq2;
mod fq6;
mod g2;

use std::fmt;
use std::ops::Mul;
use std::sync::LazyLock;

use num_bigint::BigUint;

pub use fq12::Fq12;
pub use fq2::Fq2;
pub use fq6::Fq6;
pub use g2::{G2Affine, G2_ENCODED_LEN};

use crate::bigint::U256;
use crate::curve::{bn254_g1, AffinePoint};
use crate::error::{Error, Result};
use crate::field::{bn254_base, bn254_scalar, FieldElement};

/// `6u + 2` for the BN parameter `u = 4965661367192848881`.
pub const ATE_LOOP_COUNT: u128 = 29_793_968_203_157_093_288;

pub(crate) struct Consts {
    pub twist_b: Fq2,
    /// `xi^(e (p - 1) / 6)` for `e = 0..6`.
    pub frobenius_gamma: [Fq2; 6],
    /// `(p^4 - p^2 + 1) / r`.
    pub hard_exponent: BigUint,
    pub g2_generator: G2Affine,
}

static CONSTS: LazyLock<Consts> = LazyLock::new(|| {
    let p = bn254_base();
    let xi = Fq2::new(p.from_u64(9), p.one());
    let twist_b = Fq2::from_base(p.from_u64(3)) * xi.inverse().expect("xi != 0");

    let (sixth, rem) = p.modulus().wrapping_sub(&U256::ONE).div_rem_small(6);
    debug_assert_eq!(rem, 0);
    let g1 = xi.pow(&sixth);
    let mut frobenius_gamma = [Fq2::one(p); 6];
    for e in 1..6 {
        frobenius_gamma[e] = frobenius_gamma[e - 1] * g1;
    }

    let pb = BigUint::from_bytes_be(&p.modulus().to_be_bytes());
    let rb = BigUint::from_bytes_be(&bn254_scalar().modulus().to_be_bytes());
    let p2 = &pb * &pb;
    let numerator = &p2 * &p2 - &p2 + 1u32;
    let hard_exponent = &numerator / &rb;
    debug_assert_eq!(&hard_exponent * &rb, numerator);

    let dec = |s: &str| p.element(U256::from_dec(s).expect("decimal")).expect("canonical");
    let g2_generator = G2Affine::new(
        Fq2::new(
            dec("10857046999023057135944570762232829481370756359578518086990519993285655852781"),
            dec("11559732032986387107991004021392285783925812861821192530917403151452391805634"),
        ),
        Fq2::new(
            dec("8495653923123431417604973247489272438418190587263600148770280649306958101930"),
            dec("4082367875863433681332203403145435568316851327593401208105741076214120093531"),
        ),
    );
    Consts { twist_b, frobenius_gamma, hard_exponent, g2_generator }
});

pub(crate) fn consts() -> &'static Consts {
    &CONSTS
}

/// How the pairing treats inputs that are not group elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairingZeroPolicy {
    /// All-zero coordinates count as infinity: `e(0, R) = e(R, 0) = 1`.
    ZeroIsIdentity,
    /// Off-curve or all-zero inputs are errors; flagged infinity still yields 1.
    RejectNonGroupInput,
}

/// An element of the target group, a subgroup of `Fq12*`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct GtElement(Fq12);

impl GtElement {
    pub fn one() -> Self {
        GtElement(Fq12::one(bn254_base()))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn value(&self) -> &Fq12 {
        &self.0
    }

    pub fn pow(&self, exp: &U256) -> Self {
        GtElement(self.0.pow(exp))
    }

    pub fn inverse(&self) -> Self {
        // Unitary after the final exponentiation, so the conjugate is the inverse.
        GtElement(self.0.conjugate())
    }
}

impl Mul for GtElement {
    type Output = GtElement;
    fn mul(self, rhs: GtElement) -> GtElement {
        GtElement(self.0 * rhs.0)
    }
}

impl fmt::Debug for GtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("Gt(1)");
        }
        write!(f, "Gt({:?})", self.0)
    }
}

/// Returns `true` when the pair contributes the identity and can be skipped.
fn screen(p: &AffinePoint, q: &G2Affine, policy: PairingZeroPolicy) -> Result<bool> {
    if p.curve() != bn254_g1() {
        return Err(Error::InvalidPairingInput);
    }
    if p.is_infinity_msb() || q.infinity {
        return Ok(true);
    }
    match policy {
        PairingZeroPolicy::ZeroIsIdentity => Ok(p.is_zero_coords() || q.is_zero_coords()),
        PairingZeroPolicy::RejectNonGroupInput => {
            if p.is_zero_coords() || q.is_zero_coords() || !p.is_on_curve() || !q.is_on_curve() {
                Err(Error::InvalidPairingInput)
            } else {
                Ok(false)
            }
        }
    }
}

/// Line through `t` with slope `lambda`, untwisted and evaluated at `(px, py)`:
/// `py - lambda px w + (lambda xt - yt) w^3`.
fn line(lambda: &Fq2, t: &G2Affine, px: &FieldElement, py: &FieldElement) -> Fq12 {
    let base = bn254_base();
    let zero = Fq2::zero(base);
    let c0 = Fq6::new(Fq2::from_base(*py), zero, zero);
    let c1 = Fq6::new(-lambda.mul_by_base(px), *lambda * t.x - t.y, zero);
    Fq12::new(c0, c1)
}

fn double_step(t: &G2Affine, px: &FieldElement, py: &FieldElement) -> Result<(G2Affine, Fq12)> {
    let x2 = t.x.square();
    let lambda = (x2.double() + x2) * t.y.double().inverse()?;
    Ok((t.chord(&lambda, &t.x), line(&lambda, t, px, py)))
}

fn add_step(
    t: &G2Affine,
    q: &G2Affine,
    px: &FieldElement,
    py: &FieldElement,
) -> Result<(G2Affine, Fq12)> {
    let lambda = (q.y - t.y) * (q.x - t.x).inverse()?;
    Ok((t.chord(&lambda, &q.x), line(&lambda, t, px, py)))
}

/// Optimal ate Miller loop `f_{6u+2,Q}(P) * l_{T,pi(Q)}(P) * l_{T',-pi^2(Q)}(P)`.
///
/// Vertical lines are omitted: they lie in `Fq6` and vanish in the final
/// exponentiation. No input screening happens here.
pub fn miller_loop(p: &AffinePoint, q: &G2Affine) -> Result<Fq12> {
    let (px, py) = (p.x(), p.y());
    let mut f = Fq12::one(bn254_base());
    let mut t = *q;
    let bits = 128 - ATE_LOOP_COUNT.leading_zeros();
    for i in (0..bits - 1).rev() {
        let (t2, l) = double_step(&t, &px, &py)?;
        f = f.square() * l;
        t = t2;
        if (ATE_LOOP_COUNT >> i) & 1 == 1 {
            let (t2, l) = add_step(&t, q, &px, &py)?;
            f = f * l;
            t = t2;
        }
    }
    let q1 = q.frobenius();
    let q2 = q1.frobenius().neg();
    let (t2, l) = add_step(&t, &q1, &px, &py)?;
    f = f * l;
    let (_, l) = add_step(&t2, &q2, &px, &py)?;
    Ok(f * l)
}

/// `f^((p^12 - 1) / r)`, split as `(p^6 - 1)(p^2 + 1)` then `(p^4 - p^2 + 1) / r`.
pub fn final_exponentiation(f: &Fq12) -> Result<GtElement> {
    let f1 = f.conjugate() * f.inverse()?;
    let f2 = f1.frobenius().frobenius() * f1;
    Ok(GtElement(f2.pow_big(&consts().hard_exponent)))
}

/// `e(P, Q)` under the given zero policy.
pub fn pairing(p: &AffinePoint, q: &G2Affine, policy: PairingZeroPolicy) -> Result<GtElement> {
    if screen(p, q, policy)? {
        return Ok(GtElement::one());
    }
    final_exponentiation(&miller_loop(p, q)?)
}

/// `prod e(P_i, Q_i) == 1`, sharing one final exponentiation.
pub fn pairing_product_check(
    pairs: &[(AffinePoint, G2Affine)],
    policy: PairingZeroPolicy,
) -> Result<bool> {
    let mut acc = Fq12::one(bn254_base());
    for (p, q) in pairs {
        if screen(p, q, policy)? {
            continue;
        }
        acc = acc * miller_loop(p, q)?;
    }
    Ok(final_exponentiation(&acc)?.is_one())
}
