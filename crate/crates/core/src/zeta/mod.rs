//! The zeta-function layer: L-polynomials from place counts, class numbers,
//! effective-divisor counts, the real Weil polynomial, exact sign evaluation
//! at `2√q`, and admissibility screening of candidate count vectors.
//!
//! All arithmetic is exact: arbitrary-precision integers throughout, and sign
//! decisions at `2√q` are made in the quadratic ring `Z[√q']` where `q'` is
//! the square-free part of `q`.

pub mod sqrtint;

pub use sqrtint::SqrtInt;

use crate::arith::{divisors, mobius, squarefree_part};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZetaError {
    #[error("invalid place counts: {0}")]
    InvalidCounts(String),
    #[error("class number {0} is not positive; counts are inadmissible")]
    NonPositiveClassNumber(BigInt),
    #[error("invalid L-polynomial: {0}")]
    InvalidLPolynomial(String),
    #[error("recovered N_{k} = {value} is not a nonnegative integer")]
    BadRecoveredCount { k: usize, value: String },
    #[error("negative effective-divisor count A_{m} = {value}")]
    NegativeEffectiveCount { m: usize, value: BigInt },
    #[error("functional equation violated: nonzero remainder in the symmetric solve")]
    FunctionalEquationViolated,
}

/// Place counts `(q, g, N_1..N_g)` of a (candidate) function field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceCounts {
    pub q: u64,
    pub g: usize,
    #[serde(rename = "N")]
    pub n: Vec<u64>,
}

impl PlaceCounts {
    pub fn new(q: u64, g: usize, n: Vec<u64>) -> Result<PlaceCounts, ZetaError> {
        if !(2..=64).contains(&q) {
            return Err(ZetaError::InvalidCounts(format!("q = {q} out of range 2..=64")));
        }
        if g < 1 {
            return Err(ZetaError::InvalidCounts("genus must be >= 1".into()));
        }
        if n.len() != g {
            return Err(ZetaError::InvalidCounts(format!(
                "expected {g} counts, got {}",
                n.len()
            )));
        }
        Ok(PlaceCounts { q, g, n })
    }

    /// Exact Hasse-Weil screen on `N_1`: `(N_1 − (q+1))² ≤ 4g²q`.
    pub fn hasse_weil_ok(&self) -> bool {
        let d = self.n[0] as i128 - (self.q as i128 + 1);
        d * d <= 4 * (self.g as i128) * (self.g as i128) * self.q as i128
    }
}

/// The numerator `L(t) = Σ a_j t^j` of the zeta function, with cached power
/// sums of the reciprocal roots and the class number `h = L(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub q: u64,
    pub g: usize,
    /// Coefficients `a_0..a_{2g}`.
    pub a: Vec<BigInt>,
    /// Power sums `S_1..S_{2g}` of the reciprocal roots.
    s: Vec<BigInt>,
    h: BigInt,
}

impl LPolynomial {
    /// Builds an L-polynomial from explicit coefficients, validating `a_0 = 1`,
    /// the functional equation `a_j = q^{j−g} a_{2g−j}` and `h = L(1) ≥ 1`.
    pub fn from_coeffs(q: u64, g: usize, a: Vec<BigInt>) -> Result<LPolynomial, ZetaError> {
        if a.len() != 2 * g + 1 {
            return Err(ZetaError::InvalidLPolynomial(format!(
                "expected {} coefficients, got {}",
                2 * g + 1,
                a.len()
            )));
        }
        if !a[0].is_one() {
            return Err(ZetaError::InvalidLPolynomial("a_0 must be 1".into()));
        }
        let qb = BigInt::from(q);
        for j in 0..=g {
            if a[2 * g - j].clone() * qb.pow(j as u32) != a[j].clone() * qb.pow(g as u32) {
                return Err(ZetaError::InvalidLPolynomial(format!(
                    "functional equation fails at j = {j}"
                )));
            }
        }
        let h: BigInt = a.iter().sum();
        if h.sign() != num_bigint::Sign::Plus {
            return Err(ZetaError::NonPositiveClassNumber(h));
        }
        let s = power_sums_from_coeffs(&a, 2 * g);
        Ok(LPolynomial { q, g, a, s, h })
    }

    /// Class number `h = L(1) = Σ a_j`.
    pub fn class_number(&self) -> BigInt {
        self.h.clone()
    }

    /// Power sum `S_k` of the reciprocal roots, `1 ≤ k`.
    pub fn power_sum(&self, k: usize) -> BigInt {
        if k <= self.s.len() {
            self.s[k - 1].clone()
        } else {
            power_sums_from_coeffs(&self.a, k)[k - 1].clone()
        }
    }

    pub fn to_display(&self) -> String {
        poly_display(&self.a, "t")
    }
}

/// Renders an integer polynomial given low-to-high coefficients.
pub fn poly_display(coeffs: &[BigInt], var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match i {
            0 => format!("{mag}"),
            1 if mag.is_one() => var.to_string(),
            1 => format!("{mag}{var}"),
            _ if mag.is_one() => format!("{var}^{i}"),
            _ => format!("{mag}{var}^{i}"),
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() {
                format!("-{body}")
            } else {
                body
            });
        } else if c.is_negative() {
            parts.push(format!("- {body}"));
        } else {
            parts.push(format!("+ {body}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

/// Power sums `S_1..S_k` of the reciprocal roots via the Newton recursion
/// `S_k = −(k·a_k + Σ_{i=1}^{k−1} S_i a_{k−i})`, with `a_j = 0` beyond `2g`.
fn power_sums_from_coeffs(a: &[BigInt], k: usize) -> Vec<BigInt> {
    let coeff = |j: usize| -> BigInt {
        a.get(j).cloned().unwrap_or_else(BigInt::zero)
    };
    let mut s: Vec<BigInt> = Vec::with_capacity(k);
    for i in 1..=k {
        let mut acc = BigInt::from(i as i64) * coeff(i);
        for j in 1..i {
            acc += s[j - 1].clone() * coeff(i - j);
        }
        s.push(-acc);
    }
    s
}

/// Power sums `S_1..S_g` of the reciprocal roots from place counts:
/// `S_k = q^k + 1 − Σ_{d|k} d·N_d`.
pub fn power_sums_from_counts(pc: &PlaceCounts) -> Vec<BigInt> {
    let q = BigInt::from(pc.q);
    (1..=pc.g)
        .map(|k| {
            let points: BigInt = divisors(k as u64)
                .into_iter()
                .map(|d| BigInt::from(d) * BigInt::from(pc.n[d as usize - 1]))
                .sum();
            q.pow(k as u32) + 1 - points
        })
        .collect()
}

/// L-polynomial from place counts: Newton recursion `i·a_i = −Σ S_k a_{i−k}`
/// for `i ≤ g`, then the functional equation for the upper half.
pub fn lpoly_from_counts(pc: &PlaceCounts) -> Result<LPolynomial, ZetaError> {
    let g = pc.g;
    let s = power_sums_from_counts(pc);
    let mut a: Vec<BigInt> = vec![BigInt::one()];
    for i in 1..=g {
        let mut acc = BigInt::zero();
        for k in 1..=i {
            acc += s[k - 1].clone() * a[i - k].clone();
        }
        let (ai, rem) = num_integer::Integer::div_rem(&(-acc), &BigInt::from(i as i64));
        if !rem.is_zero() {
            return Err(ZetaError::InvalidLPolynomial(format!(
                "non-integer coefficient a_{i}"
            )));
        }
        a.push(ai);
    }
    let qb = BigInt::from(pc.q);
    for j in (0..g).rev() {
        // a_{2g−j} = q^{g−j} a_j
        let val = a[j].clone() * qb.pow((g - j) as u32);
        a.push(val);
    }
    LPolynomial::from_coeffs(pc.q, g, a)
}

/// Recovers place counts `N_1..N_k` from an L-polynomial: power sums, then
/// point counts `P_k = q^k + 1 − S_k`, then Möbius inversion.
pub fn counts_from_lpoly(l: &LPolynomial, k: usize) -> Result<Vec<BigInt>, ZetaError> {
    let q = BigInt::from(l.q);
    let points: Vec<BigInt> = (1..=k)
        .map(|j| q.pow(j as u32) + 1 - l.power_sum(j))
        .collect();
    let mut n = Vec::with_capacity(k);
    for j in 1..=k {
        let sum: BigInt = divisors(j as u64)
            .into_iter()
            .map(|d| BigInt::from(mobius(j as u64 / d)) * points[d as usize - 1].clone())
            .sum();
        let (nj, rem) = num_integer::Integer::div_rem(&sum, &BigInt::from(j as i64));
        if !rem.is_zero() || nj.is_negative() {
            return Err(ZetaError::BadRecoveredCount {
                k: j,
                value: format!("{sum}/{j}"),
            });
        }
        n.push(nj);
    }
    Ok(n)
}

/// Class number `h = L(1)`.
pub fn class_number(l: &LPolynomial) -> BigInt {
    l.class_number()
}

/// Number of effective divisors of degree `m`, by the series identity
/// `A_m = Σ_{i=0}^m (q^{m−i+1} − 1)/(q − 1) · a_i` (with `a_i = 0` past `2g`).
pub fn effective_count(l: &LPolynomial, m: usize) -> Result<BigInt, ZetaError> {
    let q = BigInt::from(l.q);
    let mut acc = BigInt::zero();
    for (i, ai) in l.a.iter().enumerate().take(m + 1) {
        // (q^{m−i+1} − 1)/(q − 1) as a geometric sum, exactly.
        let mut geo = BigInt::zero();
        let mut pw = BigInt::one();
        for _ in 0..(m - i + 1) {
            geo += pw.clone();
            pw *= q.clone();
        }
        acc += geo * ai;
    }
    if acc.is_negative() {
        return Err(ZetaError::NegativeEffectiveCount { m, value: acc });
    }
    Ok(acc)
}

/// Independent oracle for `A_m`: the coefficient of `t^m` in the Euler
/// product `Π_{d=1}^m (1 − t^d)^{−N_d}`, by exact truncated power series.
pub fn effective_count_euler(n: &[BigInt], m: usize) -> BigInt {
    let mut series = vec![BigInt::zero(); m + 1];
    series[0] = BigInt::one();
    for d in 1..=m {
        let nd = n.get(d - 1).cloned().unwrap_or_else(BigInt::zero);
        if nd.is_zero() {
            continue;
        }
        // (1 − t^d)^{−N} = Σ_j C(N−1+j, j) t^{dj}
        let mut factor = vec![BigInt::zero(); m + 1];
        let mut binom = BigInt::one();
        let mut j = 0usize;
        while d * j <= m {
            factor[d * j] = binom.clone();
            // C(N−1+j+1, j+1) = C(N−1+j, j) · (N+j)/(j+1)
            binom = binom * (nd.clone() + BigInt::from(j as u64))
                / BigInt::from(j as u64 + 1);
            j += 1;
        }
        let mut out = vec![BigInt::zero(); m + 1];
        for (i, a) in series.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (jj, b) in factor.iter().enumerate().take(m + 1 - i) {
                if !b.is_zero() {
                    out[i + jj] += a.clone() * b;
                }
            }
        }
        series = out;
    }
    series[m].clone()
}

/// Closed form `A_{g−1} = (h − (a_g + 2 Σ_{i=0}^{g−1} a_i)) / (q − 1)`.
pub fn a_gminus1_closed(l: &LPolynomial) -> Result<BigInt, ZetaError> {
    let g = l.g;
    let tail: BigInt = l.a[..g].iter().sum();
    let num = l.class_number() - (l.a[g].clone() + 2 * tail);
    let (val, rem) =
        num_integer::Integer::div_rem(&num, &BigInt::from(l.q as i64 - 1));
    if !rem.is_zero() {
        return Err(ZetaError::InvalidLPolynomial(
            "closed form for A_{g-1} is not an integer".into(),
        ));
    }
    Ok(val)
}

/// The real Weil polynomial `H(T)`, monic of degree `g` with integer
/// coefficients (low-to-high).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealWeilPoly {
    pub c: Vec<BigInt>,
}

impl RealWeilPoly {
    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn to_display(&self) -> String {
        poly_display(&self.c, "T")
    }
}

/// The real Weil polynomial from L-coefficients: since
/// `L(t) = Π (1 − x_i t + q t²)`, the Laurent polynomial `t^{−g} L(t)` is
/// `Π (w − x_i) = H(w)` in `w = 1/t + q·t`; a triangular solve extracts its
/// coefficients. The solve leaves no remainder exactly when the functional
/// equation holds.
pub fn real_weil_from_coeffs(q: u64, g: usize, a: &[BigInt]) -> Result<RealWeilPoly, ZetaError> {
    assert_eq!(a.len(), 2 * g + 1);
    let qb = BigInt::from(q);
    // c[j]: coefficient of (t^{−j} + q^j t^j) for j >= 1 and of 1 for j = 0.
    let mut c: Vec<BigInt> = (0..=g).map(|j| a[g - j].clone()).collect();
    // Check the t^{+j} side matches the t^{−j} side before collapsing.
    for j in 1..=g {
        if a[g + j].clone() != a[g - j].clone() * qb.pow(j as u32) {
            return Err(ZetaError::FunctionalEquationViolated);
        }
    }
    let mut m = vec![BigInt::zero(); g + 1];
    for k in (0..=g).rev() {
        let mk = c[k].clone();
        // Subtract mk · (1/t + qt)^k from the symmetric tableau: the
        // coefficient of t^{−j} in w^k is C(k, (k−j)/2)·q^{(k−j)/2}.
        let mut j = k;
        loop {
            let i = (k - j) / 2;
            let coeff = binomial(k, i) * qb.pow(i as u32);
            c[j] -= mk.clone() * coeff;
            if j < 2 {
                break;
            }
            j -= 2;
        }
        m[k] = mk;
    }
    if c.iter().any(|x| !x.is_zero()) {
        return Err(ZetaError::FunctionalEquationViolated);
    }
    Ok(RealWeilPoly { c: m })
}

pub fn real_weil(l: &LPolynomial) -> Result<RealWeilPoly, ZetaError> {
    real_weil_from_coeffs(l.q, l.g, &l.a)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from((n - i) as u64) / BigInt::from((i + 1) as u64);
    }
    acc
}

/// Evaluates `H(2√q)` exactly in `Z[√q']` and returns the value with its sign.
pub fn sqrt_sign_eval(h: &RealWeilPoly, q: u64) -> (SqrtInt, i8) {
    let x = SqrtInt::two_sqrt_q(q);
    let value = eval_sqrtint(&h.c, &x);
    let sign = value.sign();
    (value, sign)
}

/// Evaluates an integer polynomial at a `SqrtInt` point by Horner's rule.
pub fn eval_sqrtint(coeffs: &[BigInt], x: &SqrtInt) -> SqrtInt {
    let mut acc = SqrtInt::from_int(BigInt::zero(), x.context());
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&SqrtInt::from_int(c.clone(), x.context()));
    }
    acc
}

/// One named necessary condition checked by [`admissibility`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    HasseWeil,
    NonPositiveClassNumber,
    NonIntegerLPolynomial,
    RealWeilNegativeAtPlus2SqrtQ,
    RealWeilNegativeAtMinus2SqrtQ,
    EffectiveSumBoundExceeded,
    BadRecoveredCount { degree: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::HasseWeil => write!(f, "Hasse-Weil inequality on N_1"),
            Violation::NonPositiveClassNumber => write!(f, "class number h < 1"),
            Violation::NonIntegerLPolynomial => write!(f, "non-integer L-coefficient"),
            Violation::RealWeilNegativeAtPlus2SqrtQ => write!(f, "H(2√q) < 0"),
            Violation::RealWeilNegativeAtMinus2SqrtQ => {
                write!(f, "(−1)^g H(−2√q) < 0")
            }
            Violation::EffectiveSumBoundExceeded => {
                write!(f, "weighted effective-count sum exceeds h/(√q−1)²")
            }
            Violation::BadRecoveredCount { degree } => {
                write!(f, "recovered N_{degree} not a nonnegative integer")
            }
        }
    }
}

/// Admissibility report for a candidate count vector.
#[derive(Clone, Debug, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub violations: Vec<Violation>,
    /// Screening-only numeric diagnostics; never grounds for inadmissibility.
    pub diagnostics: Vec<String>,
}

/// Screens place counts against every exact necessary condition: Hasse-Weil,
/// positivity of `h`, nonnegativity of the real Weil polynomial at `±2√q`
/// (sign-adjusted on the left end), the weighted effective-count inequality
/// `2 Σ q^{(g−1−n)/2} A_n + A_{g−1} ≤ h/(√q−1)²` evaluated exactly in
/// `Z[√q']`, and integrality/nonnegativity of the recovered `N_d`, `d ≤ 2g`.
/// A numeric root-modulus check is reported as a diagnostic only.
pub fn admissibility(pc: &PlaceCounts) -> Admissibility {
    let mut violations = Vec::new();
    let mut diagnostics = Vec::new();
    if !pc.hasse_weil_ok() {
        violations.push(Violation::HasseWeil);
    }
    let l = match lpoly_from_counts(pc) {
        Ok(l) => l,
        Err(ZetaError::NonPositiveClassNumber(_)) => {
            violations.push(Violation::NonPositiveClassNumber);
            return Admissibility {
                admissible: false,
                violations,
                diagnostics,
            };
        }
        Err(_) => {
            violations.push(Violation::NonIntegerLPolynomial);
            return Admissibility {
                admissible: false,
                violations,
                diagnostics,
            };
        }
    };
    let h_poly = real_weil(&l).expect("functional equation holds by construction");
    let (_, sign_plus) = sqrt_sign_eval(&h_poly, pc.q);
    if sign_plus < 0 {
        violations.push(Violation::RealWeilNegativeAtPlus2SqrtQ);
    }
    let minus = eval_sqrtint(&h_poly.c, &SqrtInt::two_sqrt_q(pc.q).neg());
    let mut sign_minus = minus.sign();
    if pc.g % 2 == 1 {
        sign_minus = -sign_minus;
    }
    if sign_minus < 0 {
        violations.push(Violation::RealWeilNegativeAtMinus2SqrtQ);
    }
    if let Some(v) = effective_sum_bound_violated(&l) {
        if v {
            violations.push(Violation::EffectiveSumBoundExceeded);
        }
    }
    match counts_recovered_ok(&l) {
        Ok(()) => {}
        Err(d) => violations.push(Violation::BadRecoveredCount { degree: d }),
    }
    if let Some(msg) = root_modulus_diagnostic(&l) {
        diagnostics.push(msg);
    }
    Admissibility {
        admissible: violations.is_empty(),
        violations,
        diagnostics,
    }
}

/// Exact check of `2 Σ_{n=0}^{g−2} q^{(g−1−n)/2} A_n + A_{g−1} ≤ h/(√q−1)²`:
/// both sides are multiplied by `(√q−1)²` and compared in `Z[√q']`.
fn effective_sum_bound_violated(l: &LPolynomial) -> Option<bool> {
    let g = l.g;
    let (_, qprime) = squarefree_part(l.q);
    let ctx = qprime;
    let mut lhs = SqrtInt::from_int(BigInt::zero(), ctx);
    for n in 0..=g.saturating_sub(2) {
        if n == g - 1 {
            break;
        }
        let an = effective_count(l, n).ok()?;
        let w = SqrtInt::q_half_power(l.q, (g - 1 - n) as u32);
        lhs = lhs.add(&w.scale(&(BigInt::from(2) * an)));
    }
    let a_gm1 = effective_count(l, g - 1).ok()?;
    lhs = lhs.add(&SqrtInt::from_int(a_gm1, ctx));
    // (√q − 1)² = (q + 1) − 2√q
    let factor = SqrtInt::from_int(BigInt::from(l.q + 1), ctx)
        .sub(&SqrtInt::two_sqrt_q(l.q));
    let lhs_scaled = lhs.mul(&factor);
    let h = SqrtInt::from_int(l.class_number(), ctx);
    Some(h.sub(&lhs_scaled).sign() < 0)
}

fn counts_recovered_ok(l: &LPolynomial) -> Result<(), usize> {
    match counts_from_lpoly(l, 2 * l.g) {
        Ok(_) => Ok(()),
        Err(ZetaError::BadRecoveredCount { k, .. }) => Err(k),
        Err(_) => Err(0),
    }
}

/// Durand-Kerner root finding on `L(t)`; flags reciprocal roots whose modulus
/// strays from `√q` by more than 1e−6. Screening only.
fn root_modulus_diagnostic(l: &LPolynomial) -> Option<String> {
    let coeffs: Vec<f64> = l.a.iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Some("root-modulus check skipped: coefficients exceed f64".into());
    }
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return None;
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|i| Complex64::new(0.4, 0.9).powu(i as u32 + 1))
        .collect();
    for _ in 0..200 {
        let mut max_step = 0.0f64;
        let prev = roots.clone();
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, r) in prev.iter().enumerate() {
                if j != i {
                    denom *= prev[i] - r;
                }
            }
            let val = eval_complex(&monic, prev[i]);
            let step = val / denom;
            roots[i] = prev[i] - step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-12 {
            break;
        }
    }
    let target = 1.0 / (l.q as f64).sqrt();
    for r in &roots {
        if (r.norm() - target).abs() > 1e-6 {
            return Some(format!(
                "numeric root modulus {:.8} deviates from q^(-1/2) = {target:.8}",
                r.norm()
            ));
        }
    }
    None
}

fn eval_complex(monic: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in monic.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Checks identity (4), `A_n = q^{n+1−g} A_{2g−2−n} + h (q^{n+1−g} − 1)/(q−1)`,
/// exactly over the rationals for one `n`.
pub fn functional_identity_holds(l: &LPolynomial, n: usize) -> bool {
    let g = l.g;
    debug_assert!(n <= 2 * g - 2);
    let q = BigRational::from_integer(BigInt::from(l.q));
    let qn = ratio_power(&q, n as i64 + 1 - g as i64);
    let an = BigRational::from_integer(effective_count(l, n).unwrap());
    let amirror = BigRational::from_integer(effective_count(l, 2 * g - 2 - n).unwrap());
    let h = BigRational::from_integer(l.class_number());
    let one = BigRational::one();
    let rhs = qn.clone() * amirror
        + h * (qn - one.clone()) / (q - one);
    an == rhs
}

fn ratio_power(q: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= q.clone();
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}
