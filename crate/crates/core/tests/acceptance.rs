//! End-to-end acceptance gate: one test per criterion, each printing a
//! single pass/fail line. Run with `--nocapture` to see the lines on
//! success.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zetafun::bounds::{mu_bound_gap2003, mu_bound_new, mu_bound_remark22};
use zetafun::criteria::{
    certify_tower_step, evaluate_eg, evaluate_egm1, exceptions, FieldData, Property, Status,
};
use zetafun::sampling::{identity_suite, random_admissible, random_fe_coeffs};
use zetafun::tables::{build_cover, dataset};
use zetafun::zeta::{
    admissibility, lpoly_from_counts, real_weil_from_coeffs, sqrt_sign_eval, LPolynomial,
    PlaceCounts, RealWeilPoly,
};

struct Criterion {
    number: u32,
    title: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(number: u32, title: &'static str) -> Criterion {
        Criterion { number, title, failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, detail: impl Fn() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(self) {
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} - {}", self.number, self.title);
        assert!(
            self.failures.is_empty(),
            "criterion {} failed: {:?}",
            self.number,
            self.failures
        );
    }
}

#[test]
fn criterion_1_hyperelliptic_table_reproduction() {
    let mut c = Criterion::new(1, "double-cover rows reproduce tabulated counts, genus, h");
    let rows: Vec<_> = dataset().iter().filter(|r| r.curve.is_some() && r.g >= 2).collect();
    c.require(rows.len() == 10, || format!("expected 10 countable rows, got {}", rows.len()));
    for row in rows {
        let cover = build_cover(row.q, row.curve.as_ref().unwrap()).unwrap();
        let counted = cover.count_places(row.g).unwrap().0;
        c.require(counted == row.n, || {
            format!("row {}: counted {counted:?}, tabulated {:?}", row.id, row.n)
        });
        c.require(cover.genus() as usize == row.g, || {
            format!("row {}: genus {} vs {}", row.id, cover.genus(), row.g)
        });
        let pc = PlaceCounts::new(row.q, row.g, row.n.clone()).unwrap();
        let h = lpoly_from_counts(&pc).unwrap().class_number();
        c.require(h == BigInt::from(row.h), || {
            format!("row {}: h = {h}, tabulated {}", row.id, row.h)
        });
    }
    c.finish();
}

#[test]
fn criterion_2_genus_one_classification() {
    let mut c = Criterion::new(2, "the three genus-1 class-number-one curves");
    let rows: Vec<_> = dataset().iter().filter(|r| r.source == "Sec3.2").collect();
    c.require(rows.len() == 3, || format!("expected 3 rows, got {}", rows.len()));
    for row in rows {
        let cover = build_cover(row.q, row.curve.as_ref().unwrap()).unwrap();
        let counted = cover.count_places(1).unwrap().0;
        c.require(counted == vec![1], || format!("row {}: N1 = {counted:?}", row.id));
        c.require(cover.genus() == 1, || format!("row {}: genus {}", row.id, cover.genus()));
        let pc = PlaceCounts::new(row.q, 1, vec![1]).unwrap();
        let h = lpoly_from_counts(&pc).unwrap().class_number();
        c.require(h == BigInt::from(1), || format!("row {}: h = {h}", row.id));
    }
    c.finish();
}

#[test]
fn criterion_3_zeta_consistency_of_all_rows() {
    let mut c = Criterion::new(3, "class number and admissibility of all 29 rows");
    let rows = dataset();
    c.require(rows.len() == 29, || format!("expected 29 rows, got {}", rows.len()));
    for row in rows {
        let pc = PlaceCounts::new(row.q, row.g, row.n.clone()).unwrap();
        let h = lpoly_from_counts(&pc).unwrap().class_number();
        c.require(h == BigInt::from(row.h), || {
            format!("row {}: h = {h}, tabulated {}", row.id, row.h)
        });
        let rep = admissibility(&pc);
        c.require(rep.admissible, || {
            format!("row {}: violations {:?}", row.id, rep.violations)
        });
    }
    c.finish();
}

#[test]
fn criterion_4_genus_four_elimination() {
    let mut c = Criterion::new(4, "genus-4 elimination via the sign of H at 2*sqrt(2)");
    for n4 in 0u64..=3 {
        let pc = PlaceCounts::new(2, 4, vec![1, 2, 3 - n4, n4]).unwrap();
        let l = lpoly_from_counts(&pc).unwrap();
        let h_poly = zetafun::zeta::real_weil(&l).unwrap();
        let expected: Vec<BigInt> = [
            BigInt::from(3 * n4 as i64 - 3),
            BigInt::from(11 - n4 as i64),
            BigInt::from(-6),
            BigInt::from(-2),
            BigInt::from(1),
        ]
        .to_vec();
        c.require(h_poly.c == expected, || {
            format!("N4 = {n4}: H = {:?}, expected {expected:?}", h_poly.c)
        });
        let (value, sign) = sqrt_sign_eval(&h_poly, 2);
        c.require(sign == -1, || format!("N4 = {n4}: H(2*sqrt(2)) = {value}, sign {sign}"));
        // (3 - 2*sqrt(2))N4 + 13 - 10*sqrt(2) in Z[sqrt(2)].
        let n4b = BigInt::from(n4);
        let expected_value = (
            BigInt::from(3) * &n4b + BigInt::from(13),
            BigInt::from(-2) * &n4b + BigInt::from(-10),
        );
        c.require(value.parts() == expected_value, || {
            format!("N4 = {n4}: value {value}, expected parts {expected_value:?}")
        });
    }
    c.finish();
}

#[test]
fn criterion_5_identity_suite() {
    let mut c = Criterion::new(5, "exact identity suite, 1000 random admissible instances");
    let failures = identity_suite(0xBA11E7, 1000);
    for f in &failures {
        c.require(false, || format!("q = {}, g = {}, N = {:?}: {}", f.q, f.g, f.n, f.identity));
    }
    c.finish();
}

#[test]
fn criterion_6_genus_four_real_weil_closed_form() {
    let mut c = Criterion::new(6, "general real-Weil solve matches the explicit genus-4 quartic");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..100 {
        let q = 2 + (rand::Rng::gen_range(&mut rng, 0..3u64));
        let a = random_fe_coeffs(q, 4, &mut rng);
        let solved = real_weil_from_coeffs(q, 4, &a).unwrap();
        let qb = BigInt::from(q);
        let explicit = RealWeilPoly {
            c: vec![
                a[4].clone() - BigInt::from(2) * &qb * &a[2] + BigInt::from(2) * &qb * &qb,
                a[3].clone() - BigInt::from(3) * &qb * &a[1],
                a[2].clone() - BigInt::from(4) * &qb,
                a[1].clone(),
                BigInt::from(1),
            ],
        };
        c.require(solved == explicit, || {
            format!("q = {q}, a = {a:?}: solved {:?}, explicit {:?}", solved.c, explicit.c)
        });
    }
    c.finish();
}

#[test]
fn criterion_7_criteria_fidelity() {
    let mut c = Criterion::new(7, "exception fingerprints, blanket rules, tower certificates");
    for rec in exceptions() {
        let pc = PlaceCounts::new(rec.q, rec.g, rec.n.clone()).unwrap();
        let fd = FieldData::from_counts(pc).unwrap();
        let eg = evaluate_eg(&fd);
        let egm1 = evaluate_egm1(&fd);
        let (tested, other) = match rec.failed_property {
            Property::Eg => (eg, egm1),
            Property::Egm1 => (egm1, eg),
        };
        c.require(tested.status == Status::ExceptionListed, || {
            format!("{}: {:?} not listed", rec.equation, rec.failed_property)
        });
        // The complementary property must not claim this exception unless it
        // is independently listed (the shared genus-2 field).
        let also_listed = exceptions().iter().any(|r| {
            r.q == rec.q && r.g == rec.g && r.n == rec.n && r.h == rec.h
                && r.failed_property != rec.failed_property
        });
        c.require(
            (other.status == Status::ExceptionListed) == also_listed,
            || format!("{}: complementary property mislabeled", rec.equation),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xFACADE);
    for _ in 0..100 {
        let q = [3u64, 4, 5][rand::Rng::gen_range(&mut rng, 0..3usize)];
        let g = rand::Rng::gen_range(&mut rng, 2..=5usize);
        let (pc, _) = random_admissible(q, g, &mut rng);
        let fd = FieldData::from_counts(pc.clone()).unwrap();
        c.require(evaluate_eg(&fd).status == Status::Guaranteed, || {
            format!("q = {q} >= 3 but Eg not guaranteed for N = {:?}", pc.n)
        });
        if q >= 4 {
            c.require(evaluate_egm1(&fd).status == Status::Guaranteed, || {
                format!("q = {q} >= 4 but Egm1 not guaranteed for N = {:?}", pc.n)
            });
        }
    }
    for (q, g, n1, rule_id) in [(16u64, 120u64, 17u64, "S5"), (2, 2, 3, "S4"), (2, 9, 3, "S6")] {
        let v = certify_tower_step(q, g, n1).unwrap();
        c.require(v.status == Status::Guaranteed, || {
            format!("tower ({q}, {g}, {n1}) not guaranteed")
        });
        c.require(v.rules.iter().any(|r| r.id == rule_id), || {
            format!("tower ({q}, {g}, {n1}) cited {:?}, expected {rule_id}", v.rules)
        });
    }
    c.finish();
}

#[test]
fn criterion_8_hermitian_restriction() {
    let mut c = Criterion::new(8, "y^2 + y = x^3 over F_2: L = 1 + 2t^2 and rule S8");
    let spec: zetafun::tables::CurveSpec = serde_json::from_value(serde_json::json!({
        "kind": "artin-schreier", "num": [0, 0, 0, 1], "den": [1],
    }))
    .unwrap();
    let cover = build_cover(2, &spec).unwrap();
    let n = cover.count_places(1).unwrap().0;
    c.require(n == vec![3], || format!("N1 = {n:?}, expected 3"));
    c.require(cover.genus() == 1, || format!("genus {}", cover.genus()));
    let pc = PlaceCounts::new(2, 1, vec![3]).unwrap();
    let l = lpoly_from_counts(&pc).unwrap();
    let expected = LPolynomial::from_coeffs(
        2,
        1,
        vec![BigInt::from(1), BigInt::from(0), BigInt::from(2)],
    )
    .unwrap();
    c.require(l == expected, || format!("L = {}", l.to_display()));
    let fd = FieldData::from_counts(pc).unwrap();
    let v = evaluate_egm1(&fd);
    c.require(v.rules.iter().any(|r| r.id == "S8"), || {
        format!("S8 did not fire; rules {:?}", v.rules)
    });
    c.finish();
}

#[test]
fn criterion_9_bounds() {
    let mut c = Criterion::new(9, "bilinear-complexity bounds: anchors and improvement");
    let r = |num: i64, den: i64| BigRational::new(BigInt::from(num), BigInt::from(den));
    c.require(mu_bound_new(16, 1).unwrap().bound == r(51, 13), || "51/13 anchor".into());
    c.require(mu_bound_gap2003(16, 1).unwrap().bound == r(57, 11), || "57/11 anchor".into());
    let mut q = 16u64;
    while q <= 1024 {
        let new = mu_bound_new(q, 1).unwrap().bound;
        let old = mu_bound_gap2003(q, 1).unwrap().bound;
        c.require(new < old, || format!("no improvement at q = {q}"));
        c.require(mu_bound_remark22(q, 1).unwrap().bound == new, || {
            format!("general p = 2 form differs at q = {q}")
        });
        q *= 2;
    }
    c.finish();
}
