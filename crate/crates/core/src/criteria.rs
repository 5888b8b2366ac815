//! The verdict engine: applies every sufficient condition for the existence
//! of non-special divisors of degree `g` (property `Eg`) and `g − 1`
//! (property `Egm1`), matches known exceptional fields by their numerical
//! fingerprint `(q, g, N_1..N_g, h)`, and returns a cited [`Verdict`].
//!
//! `Undetermined` is a first-class outcome: the engine never extrapolates
//! beyond the proved criteria.

use crate::zeta::{
    a_gminus1_closed, effective_count, lpoly_from_counts, LPolynomial, PlaceCounts, ZetaError,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("q = {0} is not a power of 2")]
    NotPowerOfTwo(u64),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

/// The two existence properties the engine decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    /// Existence of an effective non-special divisor of degree `g`.
    Eg,
    /// Existence of a non-special divisor of degree `g − 1`.
    Egm1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Guaranteed,
    ExceptionListed,
    Undetermined,
}

/// A sufficient condition that applied, with its citation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiredRule {
    pub id: &'static str,
    pub cite: &'static str,
}

/// A known exceptional field, identified by numerical fingerprint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionRecord {
    pub q: u64,
    pub g: usize,
    #[serde(rename = "N")]
    pub n: Vec<u64>,
    pub h: u64,
    pub equation: &'static str,
    pub source: &'static str,
    pub failed_property: Property,
}

/// The engine's answer for one property.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub property: Property,
    pub status: Status,
    pub rules: Vec<FiredRule>,
    pub exception: Option<ExceptionRecord>,
    /// Set when a fingerprint match coexists with a firing rule — should be
    /// impossible if the criteria and the exception lists are consistent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistency_alarm: Option<String>,
}

/// Derived invariants of one function field, recomputed from the counts.
#[derive(Clone, Debug)]
pub struct FieldData {
    pub counts: PlaceCounts,
    pub lpoly: LPolynomial,
    pub h: BigInt,
    /// Effective-divisor counts `A_0..A_g`.
    pub a_m: Vec<BigInt>,
}

impl FieldData {
    pub fn from_counts(counts: PlaceCounts) -> Result<FieldData, CriteriaError> {
        let lpoly = lpoly_from_counts(&counts)?;
        let h = lpoly.class_number();
        let a_m = (0..=counts.g)
            .map(|m| effective_count(&lpoly, m))
            .collect::<Result<Vec<_>, _>>()?;
        // Cross-check the closed form used by the S-rules.
        debug_assert_eq!(a_gminus1_closed(&lpoly).unwrap(), a_m[counts.g - 1]);
        Ok(FieldData { counts, lpoly, h, a_m })
    }

    fn n1(&self) -> u64 {
        self.counts.n[0]
    }
}

/// The embedded table of all fourteen known exceptional fields.
pub fn exceptions() -> &'static [ExceptionRecord] {
    use Property::*;
    static RECORDS: std::sync::OnceLock<Vec<ExceptionRecord>> = std::sync::OnceLock::new();
    RECORDS.get_or_init(|| {
        vec![
            // Genus 1: no non-special divisor of degree g−1 = 0 since h = 1.
            ExceptionRecord {
                q: 2, g: 1, n: vec![1], h: 1,
                equation: "y^2 + y + (x^3 + x + 1) = 0",
                source: "§3.2 list", failed_property: Egm1,
            },
            ExceptionRecord {
                q: 3, g: 1, n: vec![1], h: 1,
                equation: "y^2 - (x^3 + 2x + 2) = 0",
                source: "§3.2 list", failed_property: Egm1,
            },
            ExceptionRecord {
                q: 4, g: 1, n: vec![1], h: 1,
                equation: "y^2 + y + (x^3 + a) = 0, F_4 = F_2(a)",
                source: "§3.2 list", failed_property: Egm1,
            },
            // Genus 2 fields with h = 1: every degree-2 divisor is special.
            ExceptionRecord {
                q: 2, g: 2, n: vec![1, 2], h: 1,
                equation: "y^2 + y + (x^5 + x^3 + 1) = 0",
                source: "Prop. 9(ii)", failed_property: Eg,
            },
            ExceptionRecord {
                q: 2, g: 2, n: vec![0, 3], h: 1,
                equation: "y^2 + y + (x^3 + x^2 + 1)/(x^3 + x + 1) = 0",
                source: "Prop. 9(ii)", failed_property: Eg,
            },
            // Genus 2 failures of Egm1.
            ExceptionRecord {
                q: 2, g: 2, n: vec![1, 2], h: 1,
                equation: "y^2 + y = x^5 + x^3 + 1",
                source: "Thm. 11(ii)", failed_property: Egm1,
            },
            ExceptionRecord {
                q: 2, g: 2, n: vec![2, 1], h: 2,
                equation: "y^2 + y = (x^4 + x + 1)/x",
                source: "Thm. 11(ii)", failed_property: Egm1,
            },
            // Genus 3, q = 2: the finite list of Egm1 exceptions.
            ExceptionRecord {
                q: 2, g: 3, n: vec![0, 1, 1], h: 1,
                equation: "y^4 + xy^3 + (x + 1)y + (x^4 + x + 1) = 0",
                source: "Remark 12", failed_property: Egm1,
            },
            ExceptionRecord {
                q: 2, g: 3, n: vec![0, 4, 2], h: 2,
                equation: "y^2 + y + (x^6 + x + 1)/(x^2 + x + 1)^3 = 0",
                source: "Remark 12", failed_property: Egm1,
            },
            ExceptionRecord {
                q: 2, g: 3, n: vec![0, 2, 2], h: 2,
                equation: "y^4 + xy^3 + (x + 1)y + (x^4 + x^2 + 1) = 0",
                source: "Remark 12", failed_property: Egm1,
            },
            ExceptionRecord {
                q: 2, g: 3, n: vec![1, 1, 2], h: 2,
                equation: "y^3 + y + (x^4 + x^3 + 1) = 0",
                source: "Remark 12", failed_property: Egm1,
            },
            ExceptionRecord {
                q: 2, g: 3, n: vec![1, 2, 2], h: 3,
                equation: "y^3 + x^2 y^2 + (x^3 + 1)y + (x^4 + x^3 + 1) = 0",
                source: "Remark 12", failed_property: Egm1,
            },
            ExceptionRecord {
                q: 2, g: 3, n: vec![2, 0, 3], h: 3,
                equation: "y^3 + x^2 y + (x^4 + x^3 + x) = 0",
                source: "Remark 12", failed_property: Egm1,
            },
            ExceptionRecord {
                q: 2, g: 3, n: vec![1, 3, 2], h: 4,
                equation: "y^3 + (x^2 + x + 1)y + (x^4 + x + 1) = 0",
                source: "Remark 12", failed_property: Egm1,
            },
        ]
    })
}

/// All records matching the fingerprint `(q, g, N, h)` exactly. A match means
/// the data coincides with a listed exception, not that the field is
/// isomorphic to it.
pub fn lookup_exception(q: u64, g: usize, n: &[u64], h: &BigInt) -> Vec<&'static ExceptionRecord> {
    exceptions()
        .iter()
        .filter(|r| r.q == q && r.g == g && r.n == n && BigInt::from(r.h) == *h)
        .collect()
}

fn exception_for(fd: &FieldData, prop: Property) -> Option<ExceptionRecord> {
    lookup_exception(fd.counts.q, fd.counts.g, &fd.counts.n, &fd.h)
        .into_iter()
        .find(|r| r.failed_property == prop)
        .cloned()
}

fn verdict(prop: Property, rules: Vec<FiredRule>, exception: Option<ExceptionRecord>) -> Verdict {
    match exception {
        Some(rec) => {
            let alarm = if rules.is_empty() {
                None
            } else {
                Some(format!(
                    "fingerprint matches a listed exception but rules fire: {}",
                    rules.iter().map(|r| r.id).collect::<Vec<_>>().join(", ")
                ))
            };
            Verdict {
                property: prop,
                status: Status::ExceptionListed,
                rules,
                exception: Some(rec),
                consistency_alarm: alarm,
            }
        }
        None if !rules.is_empty() => Verdict {
            property: prop,
            status: Status::Guaranteed,
            rules,
            exception: None,
            consistency_alarm: None,
        },
        None => Verdict {
            property: prop,
            status: Status::Undetermined,
            rules: Vec::new(),
            exception: None,
            consistency_alarm: None,
        },
    }
}

const fn rule(id: &'static str, cite: &'static str) -> FiredRule {
    FiredRule { id, cite }
}

/// Decides `Eg`: existence of an effective non-special divisor of degree `g`.
pub fn evaluate_eg(fd: &FieldData) -> Verdict {
    let q = fd.counts.q;
    let g = fd.counts.g;
    let mut rules = Vec::new();
    if g == 1 {
        rules.push(rule("R1", "Prop. 1.2: deg D > 2g - 2 forces D non-special"));
    }
    if fd.n1() >= g as u64 {
        rules.push(rule("R2", "Prop. 4.1: N_1 >= g"));
    }
    if g >= 2 && fd.a_m[g - 2] < fd.h {
        rules.push(rule("R3", "Prop. 5.3: A_{g-2} < h"));
    }
    if g >= 2 {
        let n2 = fd.counts.n[1];
        if n2 >= q + 2 {
            rules.push(rule("R4", "Lemma 7(i): N_2 >= q + 2"));
        }
        if n2 == q + 1
            && (1..=g).any(|d| d != 2 && g % d == 0 && fd.counts.n[d - 1] >= 1)
        {
            rules.push(rule("R5", "Lemma 7 proof: N_2 = q + 1 and N_d >= 1, d != 2, d | g"));
        }
        if q >= 3 {
            rules.push(rule("R6", "Prop. 9(i): q >= 3"));
        }
        if q == 2 && (g == 3 || g == 4) {
            rules.push(rule("R7", "Prop. 9(iii): q = 2 and g in {3, 4}"));
        }
        if q == 2 && g >= 5 && fd.n1() >= 2 {
            rules.push(rule("R8", "Prop. 9(iv): q = 2, g >= 5, N_1 >= 2"));
        }
    }
    verdict(Property::Eg, rules, exception_for(fd, Property::Eg))
}

/// Decides `Egm1`: existence of a non-special divisor of degree `g − 1`.
pub fn evaluate_egm1(fd: &FieldData) -> Verdict {
    let q = fd.counts.q;
    let g = fd.counts.g;
    let a_gm1 = &fd.a_m[g - 1];
    let mut rules = Vec::new();
    if g == 1 && fd.h >= BigInt::from(2) {
        rules.push(rule("S1", "§3.2: h > 1 for g = 1"));
    }
    if g > 1 && a_gm1.is_zero() {
        rules.push(rule("S2", "Lemma 2.3: A_{g-1} = 0"));
    }
    if *a_gm1 < fd.h {
        rules.push(rule("S3", "Prop. 5.2: A_{g-1} < h"));
    }
    if fd.n1() >= g as u64 + 1 {
        rules.push(rule("S4", "Prop. 4.2: N_1 >= g + 1"));
    }
    if g >= 2 && q >= 4 {
        rules.push(rule("S5", "Thm. 11(i): q >= 4"));
    }
    if (q == 2 || q == 3) && g >= 3 && fd.n1() >= q + 1 {
        rules.push(rule("S6", "Thm. 11(iii): q in {2, 3}, g >= 3, N_1 >= q + 1"));
    }
    let tail: BigInt = fd.lpoly.a[..g].iter().sum();
    let t: BigInt = fd.lpoly.a[g].clone() + 2 * tail;
    if (q >= 3 && !t.is_negative()) || (q == 2 && t.is_positive()) {
        rules.push(rule("S7", "Cor. 14: a_g + 2 sum_{i<g} a_i >= 0 (strict for q = 2)"));
    }
    if is_qt2_power(&fd.lpoly) {
        rules.push(rule("S8", "Cor. 17: L(t) = (1 + qt^2)^g"));
    }
    verdict(Property::Egm1, rules, exception_for(fd, Property::Egm1))
}

/// `L(t) = (1 + qt²)^g` exactly.
fn is_qt2_power(l: &LPolynomial) -> bool {
    let q = BigInt::from(l.q);
    for (j, aj) in l.a.iter().enumerate() {
        let expect = if j % 2 == 0 {
            crate::zeta::binomial(l.g, j / 2) * q.pow((j / 2) as u32)
        } else {
            BigInt::zero()
        };
        if *aj != expect {
            return false;
        }
    }
    true
}

/// Certifies one step of a tower: existence of a non-special divisor of
/// degree `g − 1` for the step with invariants `(q, g, N_1)`, `q` a power
/// of 2.
pub fn certify_tower_step(q: u64, g: u64, n1: u64) -> Result<Verdict, CriteriaError> {
    if q < 2 || !q.is_power_of_two() {
        return Err(CriteriaError::NotPowerOfTwo(q));
    }
    let mut rules = Vec::new();
    if g == 0 {
        rules.push(rule("T0", "§2.2: on the rational field every divisor of nonnegative degree is non-special"));
    } else if q >= 4 {
        rules.push(rule("S5", "Thm. 11(i): q >= 4"));
    } else if n1 >= 3 {
        if g >= 3 {
            rules.push(rule("S6", "Thm. 11(iii): q = 2, g >= 3, N_1 >= 3 = q + 1"));
        } else {
            rules.push(rule("S4", "Prop. 4.2: N_1 >= g + 1"));
        }
    }
    Ok(verdict(Property::Egm1, rules, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn fd(q: u64, n: &[u64]) -> FieldData {
        FieldData::from_counts(PlaceCounts::new(q, n.len(), n.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn exception_table_shape() {
        let recs = exceptions();
        assert_eq!(recs.len(), 14);
        assert_eq!(recs.iter().filter(|r| r.g == 1).count(), 3);
        assert_eq!(
            recs.iter()
                .filter(|r| r.g == 2 && r.failed_property == Property::Eg)
                .count(),
            2
        );
        assert_eq!(
            recs.iter()
                .filter(|r| r.g == 2 && r.failed_property == Property::Egm1)
                .count(),
            2
        );
        assert_eq!(recs.iter().filter(|r| r.source == "Remark 12").count(), 7);
    }

    #[test]
    fn lookup_examples() {
        let one = BigInt::one();
        let recs = lookup_exception(2, 1, &[1], &one);
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].equation, "y^2 + y + (x^3 + x + 1) = 0");

        let recs = lookup_exception(4, 1, &[1], &one);
        assert_eq!(recs.len(), 1);
        assert!(recs[0].equation.contains("x^3 + a"));

        // The genus-2 field with N = (1,2), h = 1 fails both properties.
        let recs = lookup_exception(2, 2, &[1, 2], &one);
        assert_eq!(recs.len(), 2);
        let props: Vec<_> = recs.iter().map(|r| r.failed_property).collect();
        assert!(props.contains(&Property::Eg) && props.contains(&Property::Egm1));

        assert!(lookup_exception(2, 2, &[1, 2], &BigInt::from(5)).is_empty());
    }

    #[test]
    fn eg_examples() {
        // q = 3, g >= 2: blanket rule.
        let v = evaluate_eg(&fd(3, &[4, 4, 4, 4, 4]));
        assert_eq!(v.status, Status::Guaranteed);
        assert!(v.rules.iter().any(|r| r.id == "R6"));

        // The listed genus-2 exception.
        let v = evaluate_eg(&fd(2, &[1, 2]));
        assert_eq!(v.status, Status::ExceptionListed);
        assert!(v.consistency_alarm.is_none());

        // q = 2, g = 7, N_1 = 2.
        let v = evaluate_eg(&fd(2, &[2, 2, 2, 2, 0, 0, 0]));
        assert_eq!(v.status, Status::Guaranteed);
        assert!(v.rules.iter().any(|r| r.id == "R8"));
    }

    #[test]
    fn egm1_examples() {
        let v = evaluate_egm1(&fd(4, &[3, 2]));
        assert_eq!(v.status, Status::Guaranteed);
        assert!(v.rules.iter().any(|r| r.id == "S5"));

        let v = evaluate_egm1(&fd(2, &[2, 1]));
        assert_eq!(v.status, Status::ExceptionListed);
        assert_eq!(v.exception.as_ref().unwrap().equation, "y^2 + y = (x^4 + x + 1)/x");
        assert!(v.consistency_alarm.is_none());

        let v = evaluate_egm1(&fd(2, &[1, 1, 2]));
        assert_eq!(v.status, Status::ExceptionListed);
        assert_eq!(v.exception.as_ref().unwrap().source, "Remark 12");
    }

    #[test]
    fn all_fourteen_exceptions_detected() {
        for rec in exceptions() {
            let data = fd(rec.q, &rec.n);
            assert_eq!(data.h, BigInt::from(rec.h), "wrong h for {}", rec.equation);
            let v = match rec.failed_property {
                Property::Eg => evaluate_eg(&data),
                Property::Egm1 => evaluate_egm1(&data),
            };
            assert_eq!(v.status, Status::ExceptionListed, "missed {}", rec.equation);
            assert!(v.consistency_alarm.is_none(), "alarm for {}", rec.equation);
        }
    }

    #[test]
    fn s8_power_form() {
        let v = evaluate_egm1(&fd(2, &[3])); // L = 1 + 2t^2
        assert!(v.rules.iter().any(|r| r.id == "S8"));
        // (1 + 2t^2)^3 corresponds to N = (3, 7, 2).
        let v = evaluate_egm1(&fd(2, &[3, 7, 2]));
        assert!(v.rules.iter().any(|r| r.id == "S8"));
        // A non-power L is rejected.
        let l = lpoly_from_counts(&PlaceCounts::new(2, 2, vec![1, 2]).unwrap()).unwrap();
        assert!(!is_qt2_power(&l));
    }

    #[test]
    fn tower_examples() {
        let v = certify_tower_step(16, 120, 17).unwrap();
        assert_eq!(v.status, Status::Guaranteed);
        assert!(v.rules.iter().any(|r| r.id == "S5"));

        let v = certify_tower_step(2, 2, 3).unwrap();
        assert_eq!(v.status, Status::Guaranteed);
        assert!(v.rules.iter().any(|r| r.id == "S4"));

        let v = certify_tower_step(2, 9, 3).unwrap();
        assert!(v.rules.iter().any(|r| r.id == "S6"));

        let v = certify_tower_step(2, 0, 0).unwrap();
        assert_eq!(v.status, Status::Guaranteed);

        assert_eq!(certify_tower_step(2, 5, 1).unwrap().status, Status::Undetermined);
        assert!(certify_tower_step(6, 1, 1).is_err());
    }

    #[test]
    fn monotone_consistency() {
        // N_1 >= g + 1 forces both properties Guaranteed (no exception has
        // N_1 that large).
        for (q, n) in [(2u64, vec![4u64, 0, 0]), (3, vec![5, 1, 0, 0]), (2, vec![3, 0])] {
            let data = fd(q, &n);
            assert_eq!(evaluate_eg(&data).status, Status::Guaranteed);
            assert_eq!(evaluate_egm1(&data).status, Status::Guaranteed);
        }
    }
}
