//! Degree-2 covers `y² + y = f` (characteristic 2) and `y² = f` (odd
//! characteristic) of the rational function field `F_q(x)`.
//!
//! Every base place is classified as split, inert or ramified by local
//! analysis in the residue field: Artin-Schreier reduction plus the absolute
//! trace in characteristic 2, odd/even valuation plus the quadratic character
//! of the local unit otherwise. Aggregating over base places yields the place
//! counts of the cover by degree, and the ramification data gives the genus
//! via Riemann-Hurwitz.

use crate::gf::poly::{
    monic_irreducibles, qr_inv, qr_is_square, qr_mul, qr_sqrt_char2, qr_trace_to_prime,
};
use crate::gf::{Field, GfError, UniPoly};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("the zero rational function has no valuation")]
    ZeroFunction,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("cover kind requires characteristic {0}")]
    WrongCharacteristic(u8),
    #[error("degenerate cover: {0}")]
    Degenerate(String),
    #[error("inconsistent ramification data: {0}")]
    RamificationMismatch(String),
    #[error("max degree {0} out of supported range 1..=8")]
    DegreeRange(usize),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// A reduced fraction of polynomials over `F_q`; denominator monic, nonzero,
/// coprime to the numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<RationalFunction, CoverError> {
        if den.is_zero() {
            return Err(CoverError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lead_inv = den.leading().unwrap().inv().unwrap();
        Ok(RationalFunction {
            num: num.mul_fe(&lead_inv),
            den: den.mul_fe(&lead_inv),
        })
    }

    pub fn from_poly(num: UniPoly) -> RationalFunction {
        let den = UniPoly::one(num.field());
        RationalFunction { num, den }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RationalFunction::new(num, den).expect("nonzero denominators")
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        RationalFunction::new(num, den).expect("nonzero denominators")
    }

    /// The image of `f` under `x ↦ 1/x`, so that the place at infinity of the
    /// original coordinate becomes the place `(x)`.
    pub fn at_infinity(&self) -> RationalFunction {
        let dn = self.num.degree().map_or(0, |d| d);
        let dd = self.den.degree().unwrap();
        let x = UniPoly::x(self.field());
        let mut num = self.num.reverse();
        let mut den = self.den.reverse();
        if dd > dn {
            num = num.mul(&x.pow((dd - dn) as u32));
        } else {
            den = den.mul(&x.pow((dn - dd) as u32));
        }
        RationalFunction::new(num, den).expect("nonzero denominator")
    }

    pub fn to_display(&self) -> String {
        if self.den.degree() == Some(0) {
            self.num.to_display("x")
        } else {
            format!("({}) / ({})", self.num.to_display("x"), self.den.to_display("x"))
        }
    }
}

/// A place of the rational function field `F_q(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasePlace {
    /// Finite place given by a monic irreducible polynomial.
    Finite(UniPoly),
    Infinity,
}

impl BasePlace {
    pub fn degree(&self) -> usize {
        match self {
            BasePlace::Finite(p) => p.degree().expect("place polynomial nonzero"),
            BasePlace::Infinity => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    /// `y² + y = f`, characteristic 2.
    ArtinSchreier2,
    /// `y² = f`, odd characteristic.
    Kummer2,
}

/// Place counts `N_1..N_k` of a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPlaceCounts(pub Vec<u64>);

/// Valuation `v_P(f)`: zero multiplicity minus pole multiplicity at `P`.
pub fn valuation_at(f: &RationalFunction, place: &BasePlace) -> Result<i64, CoverError> {
    if f.is_zero() {
        return Err(CoverError::ZeroFunction);
    }
    Ok(match place {
        BasePlace::Finite(p) => {
            f.num.multiplicity_of(p) as i64 - f.den.multiplicity_of(p) as i64
        }
        BasePlace::Infinity => f.den.degree().unwrap() as i64 - f.num.degree().unwrap() as i64,
    })
}

/// Normalizes a place to the finite-place code path: at infinity, substitute
/// `x ↦ 1/x` and use the place `(x)`.
fn localize(f: &RationalFunction, place: &BasePlace) -> (RationalFunction, UniPoly) {
    match place {
        BasePlace::Finite(p) => (f.clone(), p.clone()),
        BasePlace::Infinity => (f.at_infinity(), UniPoly::x(f.field())),
    }
}

/// Residue of a function with `v_P(f) >= 0` in the residue field `F_q[x]/(P)`,
/// as the representative of degree `< deg P`.
fn residue_at(f: &RationalFunction, p: &UniPoly) -> UniPoly {
    let num = f.num.rem(p);
    if num.is_zero() {
        return num;
    }
    let den_inv = qr_inv(&f.den, p).expect("denominator coprime to the place");
    qr_mul(&num, &den_inv, p)
}

/// Leading Laurent coefficient of `f` at `P`, i.e. the residue of `f · P^{-v}`.
fn leading_coefficient(f: &RationalFunction, p: &UniPoly, v: i64) -> UniPoly {
    let shifted = shift_by_uniformizer(f, p, -v);
    residue_at(&shifted, p)
}

/// `f · P^k` for a signed `k`.
fn shift_by_uniformizer(f: &RationalFunction, p: &UniPoly, k: i64) -> RationalFunction {
    if k >= 0 {
        RationalFunction::new(f.num.mul(&p.pow(k as u32)), f.den.clone())
    } else {
        RationalFunction::new(f.num.clone(), f.den.mul(&p.pow((-k) as u32)))
    }
    .expect("nonzero denominator")
}

/// Laurent expansion of `f` at a place: the first `terms` coefficients in the
/// residue field, starting at exponent `v_P(f)`, with respect to the
/// uniformizer `P(x)` (or `1/x` at infinity). Coefficients lift residues by
/// the unique representative of degree `< deg P`; summing
/// `lift(c_j) · P^{v+j}` reproduces `f` to the stated order.
pub fn local_laurent(
    f: &RationalFunction,
    place: &BasePlace,
    terms: usize,
) -> Result<(i64, Vec<UniPoly>), CoverError> {
    assert!(terms >= 1);
    let v = valuation_at(f, place)?;
    let (floc, p) = localize(f, place);
    let mut unit = shift_by_uniformizer(&floc, &p, -v);
    let mut coeffs = Vec::with_capacity(terms);
    for _ in 0..terms {
        let c = residue_at(&unit, &p);
        unit = shift_by_uniformizer(
            &unit.add(&RationalFunction::from_poly(c.mul_fe(&p.field().from_prime(p.field().p() - 1)))),
            &p,
            -1,
        );
        coeffs.push(c);
    }
    Ok((v, coeffs))
}

/// Outcome of Artin-Schreier local reduction at a place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsReduced {
    /// Final pole order: odd (ramified) or zero (regular).
    pub pole_order: u32,
    /// Residue of the reduced function when the pole order is zero, in the
    /// residue field `F_q[x]/(P)` (for infinity, of `F_q[x]/(x)` after
    /// substitution).
    pub residue: Option<UniPoly>,
}

/// Artin-Schreier reduction of `f` at a place in characteristic 2: while the
/// pole order `v` is even and positive, replace `f` by `f + w² + w` with
/// `w = sqrt(leading coefficient) / P^{v/2}`, which strictly lowers the pole
/// order. Ends with an odd pole order or a regular function.
pub fn as_reduce_char2(
    f: &RationalFunction,
    place: &BasePlace,
) -> Result<AsReduced, CoverError> {
    if f.field().p() != 2 {
        return Err(CoverError::WrongCharacteristic(2));
    }
    let (mut floc, p) = localize(f, place);
    loop {
        let v = -valuation_at(&floc, &BasePlace::Finite(p.clone()))?;
        if v <= 0 {
            return Ok(AsReduced {
                pole_order: 0,
                residue: Some(residue_at(&floc, &p)),
            });
        }
        if v % 2 == 1 {
            return Ok(AsReduced {
                pole_order: v as u32,
                residue: None,
            });
        }
        let c = leading_coefficient(&floc, &p, -v);
        let s = qr_sqrt_char2(&c, &p);
        let w = RationalFunction::new(s, p.pow((v / 2) as u32))?;
        // Characteristic 2: f − w² − w = f + w² + w.
        floc = floc.add(&w.mul(&w)).add(&w);
    }
}

/// An Artin-Schreier or Kummer double cover of `F_q(x)`.
#[derive(Clone, Debug)]
pub struct DoubleCover {
    base: Field,
    kind: CoverKind,
    f: RationalFunction,
    genus: u32,
}

impl DoubleCover {
    pub fn new(kind: CoverKind, f: RationalFunction) -> Result<DoubleCover, CoverError> {
        let base = f.field().clone();
        match (kind, base.p()) {
            (CoverKind::ArtinSchreier2, 2) | (CoverKind::Kummer2, 3) => {}
            (CoverKind::ArtinSchreier2, _) => return Err(CoverError::WrongCharacteristic(2)),
            (CoverKind::Kummer2, _) => return Err(CoverError::WrongCharacteristic(3)),
        }
        if f.is_zero() {
            return Err(CoverError::Degenerate("defining function is zero".into()));
        }
        let mut cover = DoubleCover {
            base,
            kind,
            f,
            genus: 0,
        };
        let ram = cover.ramified_places()?;
        if matches!(kind, CoverKind::Kummer2) && ram.is_empty() {
            return Err(CoverError::Degenerate(
                "Kummer cover with no ramified place".into(),
            ));
        }
        cover.genus = cover.genus_from_ramification(&ram)?;
        Ok(cover)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn kind(&self) -> CoverKind {
        self.kind
    }

    pub fn f(&self) -> &RationalFunction {
        &self.f
    }

    /// Splitting behavior of a base place in the cover.
    pub fn splitting(&self, place: &BasePlace) -> Result<SplittingType, CoverError> {
        match self.kind {
            CoverKind::ArtinSchreier2 => {
                let red = as_reduce_char2(&self.f, place)?;
                match red.residue {
                    None => Ok(SplittingType::Ramified),
                    Some(beta) => {
                        let (_, p) = localize(&self.f, place);
                        if qr_trace_to_prime(&beta, &p) == 0 {
                            Ok(SplittingType::Split)
                        } else {
                            Ok(SplittingType::Inert)
                        }
                    }
                }
            }
            CoverKind::Kummer2 => {
                let v = valuation_at(&self.f, place)?;
                if v % 2 != 0 {
                    return Ok(SplittingType::Ramified);
                }
                let (floc, p) = localize(&self.f, place);
                let unit = leading_coefficient(&floc, &p, v);
                if qr_is_square(&unit, &p) {
                    Ok(SplittingType::Split)
                } else {
                    Ok(SplittingType::Inert)
                }
            }
        }
    }

    /// Place counts `N_1..N_k` of the cover: a split base place of degree `d`
    /// contributes two places of degree `d`, a ramified one contributes one of
    /// degree `d`, an inert one contributes one of degree `2d`.
    pub fn count_places(&self, k: usize) -> Result<CoverPlaceCounts, CoverError> {
        if !(1..=8).contains(&k) {
            return Err(CoverError::DegreeRange(k));
        }
        let mut n = vec![0u64; k + 1];
        for d in 1..=k {
            let mut places: Vec<BasePlace> = monic_irreducibles(&self.base, d)?
                .into_iter()
                .map(BasePlace::Finite)
                .collect();
            if d == 1 {
                places.push(BasePlace::Infinity);
            }
            for place in places {
                match self.splitting(&place)? {
                    SplittingType::Split => n[d] += 2,
                    SplittingType::Ramified => n[d] += 1,
                    SplittingType::Inert => {
                        if 2 * d <= k {
                            n[2 * d] += 1;
                        }
                    }
                }
            }
        }
        Ok(CoverPlaceCounts(n[1..].to_vec()))
    }

    /// Genus via Riemann-Hurwitz for a degree-2 cover of `F_q(x)`.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Ramified places with their different exponent contribution:
    /// `(place, weight)` where the different has local degree `weight·deg P`.
    /// Characteristic 2: weight `m_P + 1` with `m_P` the reduced odd pole
    /// order; odd characteristic: weight 1.
    fn ramified_places(&self) -> Result<Vec<(BasePlace, u32)>, CoverError> {
        let mut out = Vec::new();
        let mut candidates: Vec<BasePlace> = Vec::new();
        // Ramification only occurs where f has a zero or pole.
        let factor_source = match self.kind {
            CoverKind::ArtinSchreier2 => self.f.den.clone(),
            CoverKind::Kummer2 => self.f.num.mul(&self.f.den),
        };
        if let Some(deg) = factor_source.degree() {
            for d in 1..=deg.max(1) {
                for p in monic_irreducibles(&self.base, d)? {
                    if factor_source.rem(&p).is_zero() {
                        candidates.push(BasePlace::Finite(p));
                    }
                }
            }
        }
        candidates.push(BasePlace::Infinity);
        for place in candidates {
            match self.kind {
                CoverKind::ArtinSchreier2 => {
                    let red = as_reduce_char2(&self.f, &place)?;
                    if red.pole_order > 0 {
                        out.push((place, red.pole_order + 1));
                    }
                }
                CoverKind::Kummer2 => {
                    if valuation_at(&self.f, &place)? % 2 != 0 {
                        out.push((place, 1));
                    }
                }
            }
        }
        Ok(out)
    }

    fn genus_from_ramification(&self, ram: &[(BasePlace, u32)]) -> Result<u32, CoverError> {
        // 2g − 2 = 2·(−2) + Σ weight·deg P
        let total: i64 = ram
            .iter()
            .map(|(pl, w)| *w as i64 * pl.degree() as i64)
            .sum();
        let rhs = -4 + total;
        if rhs % 2 != 0 {
            return Err(CoverError::RamificationMismatch(format!(
                "odd different degree {total}"
            )));
        }
        let g2 = rhs + 2;
        if g2 < 0 {
            return Err(CoverError::Degenerate(format!(
                "negative genus from ramification total {total}"
            )));
        }
        Ok((g2 / 2) as u32)
    }
}
