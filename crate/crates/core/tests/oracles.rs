//! Cross-checks between independent computation paths, plus vendored values.

use num_bigint::BigInt;
use num_traits::{One, Pow};
use qspivey::boson::{parse_op_expr, Bindings};
use qspivey::identities::{
    verify_katriel, verify_result1, verify_result2, verify_spivey, Side, Variant,
};
use qspivey::sequences::{
    bell, bell_by_recurrence, q_bell_numbers, q_stirling2, qr_dowling_poly, qr_whitney,
};
use qspivey::QPoly;

fn bell_fixture() -> Vec<BigInt> {
    include_str!("fixtures/bell.txt")
        .lines()
        .map(|l| l.trim().parse().unwrap())
        .collect()
}

#[test]
fn bell_numbers_match_vendored_values() {
    let fixture = bell_fixture();
    assert_eq!(fixture.len(), 41);
    let n = fixture.len() - 1;
    assert_eq!(bell(n), fixture);
    assert_eq!(bell_by_recurrence(n), fixture);
    let one = BigInt::one();
    let at_one: Vec<BigInt> = q_bell_numbers(20).iter().map(|p| p.eval(&one)).collect();
    assert_eq!(at_one, fixture[..=20]);
}

#[test]
fn dowling_polynomials_from_the_operator_side() {
    // m^N D(N, x) = sum_k m^(N-k) [(k,k) coefficient of (mN+r)^N] x^k
    for total in 0..=6usize {
        for m in 1..=3u64 {
            for r in 0..=2u64 {
                let nf = parse_op_expr(&format!("(m*N+r)^{total}"), &Bindings::new(m, r))
                    .unwrap()
                    .normal_form();
                let mb = BigInt::from(m);
                let direct = qr_dowling_poly(total, m, r).unwrap();
                for x in 0..=4u32 {
                    let xb = BigInt::from(x);
                    let from_oracle: QPoly = (0..=total)
                        .map(|k| {
                            nf.coefficient(k, k)
                                .scale(&Pow::pow(&mb, (total - k) as u32))
                                .scale(&Pow::pow(&xb, k as u32))
                        })
                        .sum();
                    let scaled = direct.eval_x(&xb).scale(&Pow::pow(&mb, total as u32));
                    assert_eq!(scaled, from_oracle, "N={total} m={m} r={r} x={x}");
                }
            }
        }
    }
}

#[test]
fn result2_left_side_matches_the_oracle() {
    for n in 0..=3usize {
        for l in 0..=(6 - n).min(3) {
            let (m, r, x) = (2u64, 1u64, 3usize);
            let report = verify_result2(n, l, m, r, x, Variant::Corrected).unwrap();
            let nf = parse_op_expr(&format!("(m*N+r)^{}", n + l), &Bindings::new(m, r))
                .unwrap()
                .normal_form();
            let mb = BigInt::from(m);
            let total = n + l;
            let oracle: QPoly = (0..=total)
                .map(|k| {
                    nf.coefficient(k, k)
                        .scale(&Pow::pow(&mb, (total - k) as u32))
                        .scale(&BigInt::from(x).pow(k as u32))
                })
                .sum();
            let lhs = report
                .lhs
                .as_q()
                .unwrap()
                .scale(&Pow::pow(&mb, total as u32));
            assert_eq!(lhs, oracle, "n={n} l={l}");
            assert!(report.passed);
        }
    }
}

#[test]
fn whitney_at_unit_shift_is_q_stirling() {
    assert_eq!(qr_whitney(10, 1, 0).unwrap(), q_stirling2(10));
}

#[test]
fn q_bell_formula_at_q_one_is_spivey() {
    let one = BigInt::one();
    for n in 0..=6 {
        for mshift in 0..=6 {
            let q_side = verify_result1(n, mshift, 1, Variant::Corrected);
            let classical = verify_spivey(n, mshift);
            assert_eq!(q_side.lhs.eval_q(&one), Some(classical.lhs.clone()));
            assert_eq!(q_side.rhs.eval_q(&one), Some(classical.rhs));
        }
    }
}

#[test]
fn unit_dowling_formula_is_katriel() {
    for n in 0..=5 {
        for l in 0..=4 {
            let general = verify_result2(n, l, 1, 0, 1, Variant::Corrected).unwrap();
            let katriel = verify_katriel(n, l);
            assert_eq!(general.lhs, katriel.lhs);
            assert!(general.passed && katriel.passed);
        }
    }
}

#[test]
fn literal_q_bell_vanishes_beyond_first_power_at_x_one() {
    // [1]_{q,j} = 0 for j >= 2, so the literal reading cannot reduce to Spivey.
    let r = verify_result1(0, 2, 1, Variant::Literal);
    assert!(!r.passed);
    let c = verify_result1(0, 2, 1, Variant::Corrected);
    assert!(c.passed);
    assert_eq!(c.lhs, Side::Q(QPoly::from_i64s(&[1, 1])));
}
