//! Exact arithmetic in `F_{p^m}` for `p ∈ {2, 3}` and small `m`.
//!
//! Elements are dense coordinate vectors over the prime field; the defining
//! modulus of `F_{p^m}` is the lexicographically smallest monic irreducible of
//! degree `m` over `F_p`, ordering coefficient sequences from the constant
//! term. The same `(p, m)` therefore always yields the identical field, and
//! construction is cached process-wide.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

pub mod poly;
pub use poly::{monic_irreducibles, UniPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("unsupported field parameters p={p}, m={m}")]
    UnsupportedField { p: u8, m: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("operation requires characteristic {0}")]
    WrongCharacteristic(u8),
    #[error("no subfield embedding: source degree {src} does not divide target degree {tgt}")]
    IncompatibleDegrees { src: usize, tgt: usize },
    #[error("enumeration range exceeded ({0} candidates)")]
    RangeExceeded(u64),
}

#[derive(Debug, PartialEq, Eq)]
struct FieldRepr {
    p: u8,
    m: usize,
    /// Monic modulus, coefficients low-to-high, length `m + 1`.
    modulus: Vec<u8>,
}

/// A finite field `F_{p^m}`, cheap to clone (shared representation).
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}^{}}}", self.0.p, self.0.m)
    }
}

/// Maximal supported extension degree per characteristic.
fn max_degree(p: u8) -> usize {
    match p {
        2 => 16,
        3 => 10,
        _ => 0,
    }
}

static FIELD_CACHE: OnceLock<Mutex<HashMap<(u8, usize), Field>>> = OnceLock::new();

impl Field {
    /// The field `F_{p^m}` with the deterministic modulus. Cached; idempotent.
    pub fn new(p: u8, m: usize) -> Result<Field, GfError> {
        if !(p == 2 || p == 3) || m < 1 || m > max_degree(p) {
            return Err(GfError::UnsupportedField { p, m });
        }
        let cache = FIELD_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&(p, m)) {
            return Ok(f.clone());
        }
        // Compute outside the lock: smallest_irreducible re-enters Field::new
        // for the prime field.
        let modulus = if m == 1 {
            vec![0, 1] // x
        } else {
            smallest_irreducible(p, m)
        };
        let field = Field(Arc::new(FieldRepr { p, m, modulus }));
        Ok(cache
            .lock()
            .unwrap()
            .entry((p, m))
            .or_insert(field)
            .clone())
    }

    pub fn p(&self) -> u8 {
        self.0.p
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    /// Number of elements `p^m`.
    pub fn order(&self) -> u64 {
        (self.0.p as u64).pow(self.0.m as u32)
    }

    /// Modulus coefficients, low-to-high (length `m + 1`, monic).
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    /// Element from coordinates (low-to-high, at most `m` residues mod `p`).
    pub fn elem(&self, coords: &[u8]) -> Fe {
        assert!(coords.len() <= self.0.m, "too many coordinates");
        let mut c = vec![0u8; self.0.m];
        for (i, &x) in coords.iter().enumerate() {
            c[i] = x % self.0.p;
        }
        Fe {
            field: self.clone(),
            c,
        }
    }

    pub fn zero(&self) -> Fe {
        self.elem(&[])
    }

    pub fn one(&self) -> Fe {
        self.elem(&[1])
    }

    /// Image of a prime-field residue under the canonical inclusion `F_p ⊂ F_{p^m}`.
    pub fn from_prime(&self, r: u8) -> Fe {
        self.elem(&[r % self.0.p])
    }

    /// The element with canonical index `i`, where an element with coordinates
    /// `(c_0, …, c_{m−1})` has index `Σ c_i p^i`.
    pub fn from_index(&self, i: u64) -> Fe {
        let p = self.0.p as u64;
        let mut c = vec![0u8; self.0.m];
        let mut i = i;
        for slot in c.iter_mut() {
            *slot = (i % p) as u8;
            i /= p;
        }
        assert_eq!(i, 0, "index out of range");
        Fe {
            field: self.clone(),
            c,
        }
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    /// The residue class of `x`, a generator of `F_{p^m}` over `F_p` as a ring.
    pub fn gen(&self) -> Fe {
        if self.0.m == 1 {
            self.one()
        } else {
            self.from_index(self.0.p as u64)
        }
    }

    /// Fixed embedding of this field into `target = F_{p^{m·d}}`: the source
    /// generator maps to the lexicographically smallest root of the source
    /// modulus in the target. Ring homomorphism fixing the prime field.
    pub fn embed(&self, a: &Fe, target: &Field) -> Result<Fe, GfError> {
        assert!(a.field == *self, "element not in source field");
        if self.0.p != target.0.p || target.0.m % self.0.m != 0 {
            return Err(GfError::IncompatibleDegrees {
                src: self.0.m,
                tgt: target.0.m,
            });
        }
        if self == target {
            return Ok(Fe {
                field: target.clone(),
                c: a.c.clone(),
            });
        }
        let root = embedding_root(self, target);
        // a = Σ a_i w^i  ↦  Σ a_i root^i
        let mut acc = target.zero();
        for &ai in a.c.iter().rev() {
            acc = &(&acc * &root) + &target.from_prime(ai);
        }
        Ok(acc)
    }
}

static EMBED_CACHE: OnceLock<Mutex<HashMap<((u8, usize), (u8, usize)), Vec<u8>>>> =
    OnceLock::new();

fn embedding_root(src: &Field, tgt: &Field) -> Fe {
    let key = ((src.0.p, src.0.m), (tgt.0.p, tgt.0.m));
    let cache = EMBED_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let cache = cache.lock().unwrap();
        if let Some(c) = cache.get(&key) {
            return tgt.elem(c);
        }
    }
    // Exhaustive search for the smallest root of the source modulus in the
    // target field; the fields are tiny.
    let root = tgt
        .elements()
        .find(|x| eval_prime_poly(src.modulus(), x).is_zero())
        .expect("subfield modulus must split in the target field");
    cache.lock().unwrap().insert(key, root.c.clone());
    root
}

/// Evaluates a polynomial with prime-field coefficients at a point of any
/// field of the same characteristic.
fn eval_prime_poly(coeffs: &[u8], x: &Fe) -> Fe {
    let mut acc = x.field.zero();
    for &c in coeffs.iter().rev() {
        acc = &(&acc * x) + &x.field.from_prime(c);
    }
    acc
}

/// Lexicographically smallest monic irreducible of degree `m` over `F_p`,
/// coefficient sequences compared from the constant term.
fn smallest_irreducible(p: u8, m: usize) -> Vec<u8> {
    let prime = Field::new(p, 1).expect("prime field");
    let total = (p as u64).pow(m as u32);
    for idx in 0..total {
        // Treating c_0 as the most significant digit gives ascending
        // lexicographic order on (c_0, ..., c_{m-1}).
        let mut coeffs = vec![0u8; m + 1];
        coeffs[m] = 1;
        let mut i = idx;
        for j in 0..m {
            let place = (p as u64).pow((m - 1 - j) as u32);
            coeffs[j] = (i / place) as u8;
            i %= place;
        }
        let cand = UniPoly::from_prime_coeffs(&prime, &coeffs);
        if cand.is_irreducible() {
            return coeffs;
        }
    }
    unreachable!("irreducibles of every degree exist over F_p")
}

/// Quadratic-character outcome in odd characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadChar {
    Zero,
    Square,
    NonSquare,
}

/// An element of a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Fe {
    field: Field,
    /// Coordinates mod p, low-to-high, length exactly `m`.
    c: Vec<u8>,
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe{:?}", self.c)
    }
}

impl Fe {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[u8] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Canonical index `Σ c_i p^i`.
    pub fn index(&self) -> u64 {
        let p = self.field.p() as u64;
        self.c
            .iter()
            .rev()
            .fold(0u64, |acc, &ci| acc * p + ci as u64)
    }

    fn check_same_field(&self, other: &Fe) {
        assert!(
            self.field == other.field,
            "elements belong to different fields"
        );
    }

    pub fn add(&self, other: &Fe) -> Fe {
        self.check_same_field(other);
        let p = self.field.p();
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Fe {
            field: self.field.clone(),
            c,
        }
    }

    pub fn neg(&self) -> Fe {
        let p = self.field.p();
        let c = self.c.iter().map(|&a| (p - a) % p).collect();
        Fe {
            field: self.field.clone(),
            c,
        }
    }

    pub fn sub(&self, other: &Fe) -> Fe {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Fe) -> Fe {
        self.check_same_field(other);
        let p = self.field.p() as u16;
        let m = self.field.m();
        let modulus = self.field.modulus();
        let mut conv = vec![0u16; 2 * m - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                conv[i + j] = (conv[i + j] + a as u16 * b as u16) % p;
            }
        }
        // Reduce modulo the monic modulus.
        for i in (m..conv.len()).rev() {
            let c = conv[i];
            if c != 0 {
                conv[i] = 0;
                for (j, &mj) in modulus.iter().take(m).enumerate() {
                    let sub = (c * mj as u16) % p;
                    conv[i - m + j] = (conv[i - m + j] + p - sub) % p;
                }
            }
        }
        let c = conv[..m].iter().map(|&x| x as u8).collect();
        Fe {
            field: self.field.clone(),
            c,
        }
    }

    pub fn pow(&self, mut e: u64) -> Fe {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Fe, GfError> {
        if self.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn checked_div(&self, other: &Fe) -> Result<Fe, GfError> {
        if self.field != other.field {
            return Err(GfError::FieldMismatch);
        }
        Ok(self.mul(&other.inv()?))
    }

    /// `a^{p^k}`, a field automorphism; supports negative `k`.
    pub fn frobenius(&self, k: i64) -> Fe {
        let m = self.field.m() as i64;
        let k = k.rem_euclid(m) as u32;
        let mut x = self.clone();
        for _ in 0..k {
            x = x.pow(self.field.p() as u64);
        }
        x
    }

    /// Absolute trace down to the prime field: `a + a^p + … + a^{p^{m−1}}`,
    /// returned as a residue mod `p`.
    pub fn trace(&self) -> u8 {
        let p = self.field.p() as u64;
        let m = self.field.m();
        let mut term = self.clone();
        let mut acc = self.field.zero();
        for _ in 0..m {
            acc = acc.add(&term);
            term = term.pow(p);
        }
        debug_assert!(acc.c[1..].iter().all(|&x| x == 0), "trace not in F_p");
        acc.c[0]
    }

    /// The unique square root in characteristic 2, namely `a^{2^{m−1}}`.
    pub fn sqrt_char2(&self) -> Result<Fe, GfError> {
        if self.field.p() != 2 {
            return Err(GfError::WrongCharacteristic(2));
        }
        Ok(self.pow(self.field.order() / 2))
    }

    /// Quadratic character in odd characteristic, via `a^{(|F|−1)/2}`.
    pub fn quadratic_character(&self) -> Result<QuadChar, GfError> {
        if self.field.p() == 2 {
            return Err(GfError::WrongCharacteristic(3));
        }
        if self.is_zero() {
            return Ok(QuadChar::Zero);
        }
        let e = self.pow((self.field.order() - 1) / 2);
        if e.is_one() {
            Ok(QuadChar::Square)
        } else {
            Ok(QuadChar::NonSquare)
        }
    }
}

impl std::ops::Add for &Fe {
    type Output = Fe;
    fn add(self, rhs: &Fe) -> Fe {
        Fe::add(self, rhs)
    }
}
impl std::ops::Sub for &Fe {
    type Output = Fe;
    fn sub(self, rhs: &Fe) -> Fe {
        Fe::sub(self, rhs)
    }
}
impl std::ops::Mul for &Fe {
    type Output = Fe;
    fn mul(self, rhs: &Fe) -> Fe {
        Fe::mul(self, rhs)
    }
}
impl std::ops::Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        Fe::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_make_examples() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]); // w^2 + w + 1
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.order(), 3);
        assert!(Field::new(5, 1).is_err());
        assert!(Field::new(2, 17).is_err());
        assert!(Field::new(3, 11).is_err());
        // Idempotence: identical modulus on repeat construction.
        assert_eq!(Field::new(2, 2).unwrap(), f4);
    }

    #[test]
    fn f4_multiplication_table_anchors() {
        let f4 = Field::new(2, 2).unwrap();
        let w = f4.gen();
        let w1 = f4.elem(&[1, 1]);
        assert_eq!(&w * &w, w1); // w^2 = w + 1
        assert_eq!(&w1 * &w1, w); // (w+1)^2 = w
        let f3 = Field::new(3, 1).unwrap();
        let two = f3.from_prime(2);
        assert_eq!(&two * &two, f3.one());
    }

    #[test]
    fn division_and_errors() {
        let f4 = Field::new(2, 2).unwrap();
        let w = f4.gen();
        assert_eq!(w.checked_div(&w).unwrap(), f4.one());
        assert_eq!(
            f4.one().checked_div(&f4.zero()),
            Err(GfError::DivisionByZero)
        );
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(
            f3.one().checked_div(&f4.one()),
            Err(GfError::FieldMismatch)
        );
    }

    #[test]
    fn trace_examples_and_balance() {
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.gen().trace(), 1); // Tr(w) = w + w^2 = 1
        assert_eq!(f4.zero().trace(), 0);
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.one().trace(), 1);
        // Trace is balanced: each value in F_p has p^{m-1} preimages.
        for (p, mmax) in [(2u8, 4usize), (3, 4)] {
            for m in 1..=mmax {
                let f = Field::new(p, m).unwrap();
                let mut counts = vec![0u64; p as usize];
                for a in f.elements() {
                    counts[a.trace() as usize] += 1;
                }
                for &c in &counts {
                    assert_eq!(c, (p as u64).pow(m as u32 - 1));
                }
            }
        }
    }

    #[test]
    fn sqrt_char2_exhaustive() {
        let f4 = Field::new(2, 2).unwrap();
        let w = f4.gen();
        assert_eq!(w.sqrt_char2().unwrap(), f4.elem(&[1, 1]));
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.one().sqrt_char2().unwrap(), f2.one());
        for m in 1..=4 {
            let f = Field::new(2, m).unwrap();
            for a in f.elements() {
                let s = a.sqrt_char2().unwrap();
                assert_eq!(&s * &s, a);
            }
        }
        let f3 = Field::new(3, 1).unwrap();
        assert!(f3.one().sqrt_char2().is_err());
    }

    #[test]
    fn quadratic_character_examples() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.one().quadratic_character().unwrap(), QuadChar::Square);
        assert_eq!(
            f3.from_prime(2).quadratic_character().unwrap(),
            QuadChar::NonSquare
        );
        let f9 = Field::new(3, 2).unwrap();
        let squares = f9
            .elements()
            .filter(|a| a.quadratic_character().unwrap() == QuadChar::Square)
            .count();
        assert_eq!(squares, 4);
        assert!(Field::new(2, 2).unwrap().one().quadratic_character().is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f4 = Field::new(2, 2).unwrap();
        let w = f4.gen();
        assert_eq!(w.frobenius(1), f4.elem(&[1, 1]));
        for a in f4.elements() {
            assert_eq!(a.frobenius(2), a); // frobenius^m = id
            assert_eq!(a.frobenius(1).frobenius(1), a);
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, mmax) in [(2u8, 4usize), (3, 3)] {
            for m in 1..=mmax {
                let f = Field::new(p, m).unwrap();
                for a in f.elements() {
                    if !a.is_zero() {
                        assert_eq!(&a * &a.inv().unwrap(), f.one());
                    }
                    for b in f.elements() {
                        // Freshman's dream: (a+b)^p = a^p + b^p.
                        let lhs = (&a + &b).pow(p as u64);
                        let rhs = &a.pow(p as u64) + &b.pow(p as u64);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn embeddings() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        assert_eq!(f2.embed(&f2.one(), &f4).unwrap(), f4.one());
        // Image of w satisfies w^2 + w + 1 = 0 in F16.
        let img = f4.embed(&f4.gen(), &f16).unwrap();
        let val = &(&img * &img) + &(&img + &f16.one());
        assert!(val.is_zero());
        // Homomorphism on all pairs in F4.
        for a in f4.elements() {
            for b in f4.elements() {
                let ea = f4.embed(&a, &f16).unwrap();
                let eb = f4.embed(&b, &f16).unwrap();
                assert_eq!(f4.embed(&(&a * &b), &f16).unwrap(), &ea * &eb);
                assert_eq!(f4.embed(&(&a + &b), &f16).unwrap(), &ea + &eb);
            }
        }
        // Tower composition agrees with the direct embedding.
        let f256 = Field::new(2, 8).unwrap();
        for a in f4.elements() {
            let via = f16
                .embed(&f4.embed(&a, &f16).unwrap(), &f256)
                .unwrap();
            assert_eq!(via, f4.embed(&a, &f256).unwrap());
        }
        for a in f2.elements() {
            let via = f4.embed(&f2.embed(&a, &f4).unwrap(), &f16).unwrap();
            assert_eq!(via, f2.embed(&a, &f16).unwrap());
        }
        assert!(f4.embed(&f4.gen(), &Field::new(2, 3).unwrap()).is_err());
    }
}
