//! Exact-rational evaluation of the bilinear-complexity upper bounds for
//! multiplication in `F_{q^n}`, `q = 2^r ≥ 16`: the new bound, the prior
//! 2003 bound it improves, and the generalized form specialized to
//! characteristic 2. All comparisons are exact; no floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("q = {0} must be a power of 2 with q >= 16")]
    UnsupportedQ(u64),
    #[error("n must be >= 1")]
    ZeroN,
}

/// One evaluated bound: `bound = coefficient · n` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub q: u64,
    pub n: u64,
    pub bound: BigRational,
    pub coefficient: BigRational,
    pub formula: &'static str,
}

fn check(q: u64, n: u64) -> Result<(), BoundsError> {
    if q < 16 || !q.is_power_of_two() {
        return Err(BoundsError::UnsupportedQ(q));
    }
    if n == 0 {
        return Err(BoundsError::ZeroN);
    }
    Ok(())
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn result(q: u64, n: u64, coefficient: BigRational, formula: &'static str) -> BoundResult {
    let bound = coefficient.clone() * BigRational::from_integer(BigInt::from(n));
    BoundResult { q, n, bound, coefficient, formula }
}

/// New bound `μ_q(n) ≤ 3(1 + 4/(q−3))·n = 3(q+1)/(q−3)·n`.
pub fn mu_bound_new(q: u64, n: u64) -> Result<BoundResult, BoundsError> {
    check(q, n)?;
    let coeff = ratio(3 * (q as i64 + 1), q as i64 - 3);
    Ok(result(q, n, coeff, "3(1 + 4/(q-3))n"))
}

/// The prior 2003 bound `μ_q(n) ≤ 3(1 + 8/(q−5))·n = 3(q+3)/(q−5)·n`.
pub fn mu_bound_gap2003(q: u64, n: u64) -> Result<BoundResult, BoundsError> {
    check(q, n)?;
    let coeff = ratio(3 * (q as i64 + 3), q as i64 - 5);
    Ok(result(q, n, coeff, "3(1 + 8/(q-5))n"))
}

/// Generalized form `μ_q(n) ≤ 3(1 + 2p/(q−3))·n` at `p = 2`; coincides with
/// [`mu_bound_new`] in characteristic 2.
pub fn mu_bound_remark22(q: u64, n: u64) -> Result<BoundResult, BoundsError> {
    check(q, n)?;
    let coeff = ratio(3 * (q as i64 + 1), q as i64 - 3);
    Ok(result(q, n, coeff, "3(1 + 2p/(q-3))n, p = 2"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(num: i64, den: i64) -> BigRational {
        ratio(num, den)
    }

    #[test]
    fn anchors() {
        assert_eq!(mu_bound_new(16, 1).unwrap().bound, r(51, 13));
        assert_eq!(mu_bound_new(16, 13).unwrap().bound, r(51, 1));
        assert_eq!(mu_bound_new(32, 1).unwrap().bound, r(99, 29));
        assert_eq!(mu_bound_gap2003(16, 1).unwrap().bound, r(57, 11));
        assert_eq!(mu_bound_gap2003(16, 11).unwrap().bound, r(57, 1));
        assert_eq!(mu_bound_gap2003(64, 1).unwrap().bound, r(3 * 67, 59));
        assert_eq!(mu_bound_remark22(16, 1).unwrap().bound, r(51, 13));
        assert_eq!(mu_bound_remark22(1024, 1).unwrap().bound, r(3 * 1025, 1021));
    }

    #[test]
    fn improvement_and_monotonicity() {
        let mut prev_coeff: Option<BigRational> = None;
        let three = BigRational::from_integer(BigInt::from(3));
        let mut q = 16u64;
        while q <= 1024 {
            let new = mu_bound_new(q, 1).unwrap();
            let old = mu_bound_gap2003(q, 1).unwrap();
            assert!(new.bound < old.bound, "no improvement at q = {q}");
            assert_eq!(new.bound, mu_bound_remark22(q, 1).unwrap().bound);
            assert!(new.coefficient > three);
            if let Some(p) = prev_coeff {
                assert!(new.coefficient < p, "coefficient not decreasing at q = {q}");
            }
            prev_coeff = Some(new.coefficient.clone());
            q *= 2;
        }
    }

    #[test]
    fn scaling_invariant() {
        for n in 1..20 {
            let b = mu_bound_new(16, n).unwrap();
            assert_eq!(
                b.bound,
                b.coefficient * BigRational::from_integer(BigInt::from(n))
            );
        }
    }

    #[test]
    fn rejections() {
        assert!(mu_bound_new(8, 1).is_err()); // < 16
        assert!(mu_bound_new(17, 1).is_err()); // not a power of 2
        assert!(mu_bound_new(16, 0).is_err());
        assert!(mu_bound_gap2003(9, 2).is_err());
        assert!(mu_bound_remark22(15, 1).is_err());
    }
}
