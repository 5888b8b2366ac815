//! Exact arithmetic in the quadratic ring `Z[√q']`, where `q'` is the
//! square-free part of the field size `q`. Values are pairs `u + v√q'`; sign
//! determination compares `u²` against `v²·q'`, so no floating point is ever
//! consulted.

use crate::arith::squarefree_part;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// An element `u + v√d` of `Z[√d]` for a fixed square-free `d ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtInt {
    u: BigInt,
    v: BigInt,
    /// The square-free radicand `d` (1 when `q` is a perfect square).
    d: u64,
}

impl SqrtInt {
    pub fn new(u: BigInt, v: BigInt, d: u64) -> SqrtInt {
        SqrtInt { u, v, d }
    }

    pub fn from_int(u: BigInt, d: u64) -> SqrtInt {
        SqrtInt { u, v: BigInt::zero(), d }
    }

    /// The element `2√q = 2s√q'` where `q = s²·q'`.
    pub fn two_sqrt_q(q: u64) -> SqrtInt {
        let (s, d) = squarefree_part(q);
        if d == 1 {
            SqrtInt::from_int(BigInt::from(2 * s), 1)
        } else {
            SqrtInt::new(BigInt::zero(), BigInt::from(2 * s), d)
        }
    }

    /// `q^{k/2}` as an element of `Z[√q']`: `s^k · q'^{⌊k/2⌋} · (√q')^{k mod 2}`.
    pub fn q_half_power(q: u64, k: u32) -> SqrtInt {
        let (s, d) = squarefree_part(q);
        let scalar = BigInt::from(s).pow(k) * BigInt::from(d).pow(k / 2);
        if k % 2 == 0 || d == 1 {
            // With d = 1, √q' = 1 and the odd power contributes nothing extra.
            SqrtInt::from_int(scalar, d)
        } else {
            SqrtInt::new(BigInt::zero(), scalar, d)
        }
    }

    pub fn context(&self) -> u64 {
        self.d
    }

    pub fn parts(&self) -> (BigInt, BigInt) {
        (self.u.clone(), self.v.clone())
    }

    pub fn add(&self, other: &SqrtInt) -> SqrtInt {
        assert_eq!(self.d, other.d, "mixed radicands");
        SqrtInt::new(&self.u + &other.u, &self.v + &other.v, self.d)
    }

    pub fn sub(&self, other: &SqrtInt) -> SqrtInt {
        assert_eq!(self.d, other.d, "mixed radicands");
        SqrtInt::new(&self.u - &other.u, &self.v - &other.v, self.d)
    }

    pub fn neg(&self) -> SqrtInt {
        SqrtInt::new(-&self.u, -&self.v, self.d)
    }

    pub fn mul(&self, other: &SqrtInt) -> SqrtInt {
        assert_eq!(self.d, other.d, "mixed radicands");
        let d = BigInt::from(self.d);
        SqrtInt::new(
            &self.u * &other.u + &self.v * &other.v * d,
            &self.u * &other.v + &self.v * &other.u,
            self.d,
        )
    }

    pub fn scale(&self, k: &BigInt) -> SqrtInt {
        SqrtInt::new(&self.u * k, &self.v * k, self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Exact sign of `u + v√d`: compare `u²` with `v²d` according to the
    /// signs of `u` and `v`.
    pub fn sign(&self) -> i8 {
        let su = bigint_sign(&self.u);
        let sv = bigint_sign(&self.v);
        if sv == 0 {
            return su;
        }
        if su == 0 || su == sv {
            return sv;
        }
        // Opposite signs: |u| vs |v|√d decides.
        let u2 = &self.u * &self.u;
        let v2d = &self.v * &self.v * BigInt::from(self.d);
        match u2.cmp(&v2d) {
            std::cmp::Ordering::Greater => su,
            std::cmp::Ordering::Less => sv,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

fn bigint_sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

impl std::fmt::Display for SqrtInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.v.is_zero() || self.d == 1 {
            let plain = if self.d == 1 {
                &self.u + &self.v
            } else {
                self.u.clone()
            };
            return write!(f, "{plain}");
        }
        let radical = if self.v.abs() == BigInt::from(1u8) {
            format!("√{}", self.d)
        } else {
            format!("{}√{}", self.v.abs(), self.d)
        };
        if self.u.is_zero() {
            if self.v.is_negative() {
                write!(f, "-{radical}")
            } else {
                write!(f, "{radical}")
            }
        } else if self.v.is_negative() {
            write!(f, "{} - {radical}", self.u)
        } else {
            write!(f, "{} + {radical}", self.u)
        }
    }
}
