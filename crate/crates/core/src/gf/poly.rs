//! Univariate polynomials over a [`Field`], plus the quotient-ring arithmetic
//! `F_q[x]/(P)` used for residue-field computations at a place.

use super::{Fe, Field, GfError};
use crate::arith::{divisors, mobius};
use std::fmt;

/// Candidate cap for exhaustive polynomial enumeration.
const ENUM_CAP: u64 = 1 << 16;

/// Dense univariate polynomial, coefficients low-to-high with no trailing
/// zeros; the empty vector is the zero polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    c: Vec<Fe>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.to_display("x"))
    }
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Fe>) -> UniPoly {
        for c in &coeffs {
            assert!(*c.field() == field, "coefficient field mismatch");
        }
        while coeffs.last().is_some_and(Fe::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, c: coeffs }
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly {
            field: field.clone(),
            c: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field.one())
    }

    pub fn x(field: &Field) -> UniPoly {
        UniPoly::new(field.clone(), vec![field.zero(), field.one()])
    }

    pub fn constant(c: Fe) -> UniPoly {
        let field = c.field().clone();
        UniPoly::new(field, vec![c])
    }

    /// Polynomial with prime-subfield coefficients given as residues mod `p`.
    pub fn from_prime_coeffs(field: &Field, coeffs: &[u8]) -> UniPoly {
        UniPoly::new(
            field.clone(),
            coeffs.iter().map(|&r| field.from_prime(r)).collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.c.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Fe::is_one)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        UniPoly::new(self.field.clone(), c)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        UniPoly::new(self.field.clone(), c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field.clone(), c)
    }

    pub fn mul_fe(&self, s: &Fe) -> UniPoly {
        UniPoly::new(self.field.clone(), self.c.iter().map(|a| a * s).collect())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlead_inv = divisor.leading().unwrap().inv().unwrap();
        let dd = divisor.degree().unwrap();
        let mut rem = self.c.clone();
        let mut quot = vec![self.field.zero(); self.c.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = &rem[rem.len() - 1] * &dlead_inv;
            if !q.is_zero() {
                for (j, djc) in divisor.c.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&q * djc);
                }
                quot[k] = q;
            }
            rem.pop();
            while rem.last().is_some_and(Fe::is_zero) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (
            UniPoly::new(self.field.clone(), quot),
            UniPoly::new(self.field.clone(), rem),
        )
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.divrem(divisor).1
    }

    pub fn make_monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.mul_fe(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let mut acc = self.field.zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Reversed coefficient sequence: `x^deg · p(1/x)`.
    pub fn reverse(&self) -> UniPoly {
        let mut c = self.c.clone();
        c.reverse();
        UniPoly::new(self.field.clone(), c)
    }

    /// Multiplicity of the irreducible `p` as a factor.
    pub fn multiplicity_of(&self, p: &UniPoly) -> u32 {
        assert!(!self.is_zero());
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = f.divrem(p);
            if !r.is_zero() {
                return k;
            }
            f = q;
            k += 1;
        }
    }

    /// Irreducibility by trial division by all monic irreducibles of degree
    /// at most `deg/2` (built recursively).
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if d == 1 {
            return true;
        }
        for e in 1..=d / 2 {
            for p in monic_irreducibles(&self.field, e).expect("range checked by caller") {
                if self.rem(&p).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_one() && i > 0 {
                String::new()
            } else if self.field.m() == 1 {
                format!("{}", c.coords()[0])
            } else {
                format!("[{}]", fe_digits(c))
            };
            let term = match i {
                0 if coeff.is_empty() => "1".to_string(),
                0 => coeff,
                1 => format!("{coeff}{var}"),
                _ => format!("{coeff}{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

fn fe_digits(c: &Fe) -> String {
    c.coords()
        .iter()
        .rev()
        .map(|d| d.to_string())
        .collect::<String>()
}

static IRRED_CACHE: std::sync::OnceLock<
    std::sync::Mutex<std::collections::HashMap<(u8, usize, usize), Vec<Vec<u64>>>>,
> = std::sync::OnceLock::new();

/// All monic irreducible polynomials of degree `d` over the given field, in
/// ascending lexicographic order of the coefficient sequence read from the
/// constant term (elements ordered by canonical index). Cached per
/// `(field, d)`.
pub fn monic_irreducibles(field: &Field, d: usize) -> Result<Vec<UniPoly>, GfError> {
    assert!(d >= 1);
    let key = (field.p(), field.m(), d);
    let cache = IRRED_CACHE.get_or_init(Default::default);
    if let Some(stored) = cache.lock().unwrap().get(&key) {
        return Ok(stored.iter().map(|ix| poly_from_indices(field, ix)).collect());
    }
    let q = field.order();
    let total = q.checked_pow(d as u32).filter(|&t| t <= ENUM_CAP);
    let total = total.ok_or(GfError::RangeExceeded(q.saturating_pow(d as u32)))?;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = field.one();
        let mut i = idx;
        for j in 0..d {
            let place = q.pow((d - 1 - j) as u32);
            coeffs[j] = field.from_index(i / place);
            i %= place;
        }
        let cand = UniPoly::new(field.clone(), coeffs);
        if cand.is_irreducible() {
            out.push(cand);
        }
    }
    let stored: Vec<Vec<u64>> = out
        .iter()
        .map(|p| p.coeffs().iter().map(Fe::index).collect())
        .collect();
    cache.lock().unwrap().insert(key, stored);
    Ok(out)
}

fn poly_from_indices(field: &Field, indices: &[u64]) -> UniPoly {
    UniPoly::new(
        field.clone(),
        indices.iter().map(|&i| field.from_index(i)).collect(),
    )
}

/// Expected count of monic irreducibles of degree `d` over `F_q`, by Möbius
/// inversion: `(1/d) Σ_{e|d} μ(d/e) q^e`.
pub fn irreducible_count(q: u64, d: u64) -> u64 {
    let sum: i128 = divisors(d)
        .into_iter()
        .map(|e| mobius(d / e) as i128 * (q as i128).pow(e as u32))
        .sum();
    (sum / d as i128) as u64
}

// ---- Quotient ring F_q[x]/(P) --------------------------------------------
//
// Residue-field elements at a finite place P are represented by their unique
// representative of degree < deg P. The ring is a field when P is irreducible.

pub fn qr_mul(a: &UniPoly, b: &UniPoly, p: &UniPoly) -> UniPoly {
    a.mul(b).rem(p)
}

pub fn qr_pow(a: &UniPoly, mut e: u64, p: &UniPoly) -> UniPoly {
    let mut base = a.rem(p);
    let mut acc = UniPoly::one(a.field());
    while e > 0 {
        if e & 1 == 1 {
            acc = qr_mul(&acc, &base, p);
        }
        base = qr_mul(&base, &base, p);
        e >>= 1;
    }
    acc
}

/// Order of the residue field `F_q[x]/(P)`.
pub fn qr_order(field: &Field, p: &UniPoly) -> u64 {
    field.order().pow(p.degree().expect("nonzero modulus") as u32)
}

pub fn qr_inv(a: &UniPoly, p: &UniPoly) -> Result<UniPoly, GfError> {
    if a.rem(p).is_zero() {
        return Err(GfError::DivisionByZero);
    }
    Ok(qr_pow(a, qr_order(a.field(), p) - 2, p))
}

/// Unique square root in a characteristic-2 residue field: `a^{|k|/2}`.
pub fn qr_sqrt_char2(a: &UniPoly, p: &UniPoly) -> UniPoly {
    qr_pow(a, qr_order(a.field(), p) / 2, p)
}

/// Absolute trace of a residue-field element down to the prime field F_p,
/// as a residue mod p.
pub fn qr_trace_to_prime(a: &UniPoly, p: &UniPoly) -> u8 {
    let field = a.field().clone();
    let char_p = field.p() as u64;
    let steps = field.m() * p.degree().expect("nonzero modulus");
    let mut term = a.rem(p);
    let mut acc = UniPoly::zero(&field);
    for _ in 0..steps {
        acc = acc.add(&term);
        term = qr_pow(&term, char_p, p);
    }
    match acc.degree() {
        None => 0,
        Some(0) => {
            let c = acc.coeff(0);
            debug_assert!(c.coords()[1..].iter().all(|&x| x == 0));
            c.coords()[0]
        }
        _ => unreachable!("absolute trace lies in the prime field"),
    }
}

/// True iff the nonzero residue `a` is a square in the odd-characteristic
/// residue field `F_q[x]/(P)`.
pub fn qr_is_square(a: &UniPoly, p: &UniPoly) -> bool {
    let e = qr_pow(a, (qr_order(a.field(), p) - 1) / 2, p);
    e.degree() == Some(0) && e.coeff(0).is_one()
}
