//! Verifiers for the Spivey-type identities and the operator lemmas behind
//! them.
//!
//! Each verifier computes both sides exactly and returns a
//! [`VerificationReport`] carrying them verbatim. The three generalized
//! formulas take a [`Variant`]: the factor `[x]_{q,j}` and the explicit `m^j`
//! as printed (`Literal`), or `x^j` with the `m^j` absorbed (`Corrected`).
//! The literal `[x]_{q,j}` is only defined for integer `x`.

mod report;

pub use report::{IdentityId, OracleKind, Params, Side, Summary, Variant, VerificationReport};

use num_bigint::BigInt;
use num_traits::{pow, One};

use crate::boson::{affine_number, FockVector, NormalForm};
use crate::error::{Error, Result};
use crate::poly::{QPoly, XQPoly};
use crate::qcalc::{binom, falling_classic, q_falling, q_int};
use crate::sequences::{
    bell, bell_by_recurrence, q_bell_numbers, q_stirling2, qr_dowling_poly, qr_whitney, r_dowling,
    r_whitney, row_poly, stirling2,
};

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

fn to_usize(v: u64) -> usize {
    usize::try_from(v).expect("parameter fits in usize")
}

/// `t^n = sum_k S(n,k) (t)_k`, checked at `t = 0..=n`, enough points for a
/// degree-`n` polynomial identity.
pub fn verify_stirling_def(n: usize) -> VerificationReport {
    let s = stirling2(n);
    let points: Vec<BigInt> = (0..=n).map(big).collect();
    let lhs = points.iter().map(|t| pow(t.clone(), n)).collect();
    let rhs = points
        .iter()
        .map(|t| {
            s.row(n)
                .iter()
                .enumerate()
                .map(|(k, c)| c * falling_classic(t, k))
                .sum()
        })
        .collect();
    VerificationReport::new(
        IdentityId::StirlingDef,
        Variant::NotApplicable,
        Params {
            n: Some(n as u64),
            ..Params::default()
        },
        Side::Ints(lhs),
        Side::Ints(rhs),
    )
}

/// Stirling row sums against `B_{n+1} = sum_k C(n,k) B_k`, for `B_0..=B_n`.
pub fn verify_bell_recurrence(n: usize) -> VerificationReport {
    VerificationReport::new(
        IdentityId::BellRec,
        Variant::NotApplicable,
        Params {
            n: Some(n as u64),
            ..Params::default()
        },
        Side::Ints(bell(n)),
        Side::Ints(bell_by_recurrence(n)),
    )
}

/// `B_{n+m} = sum_k sum_j j^(n-k) S(m,j) C(n,k) B_k`, with `0^0 = 1`.
pub fn verify_spivey(n: usize, mshift: usize) -> VerificationReport {
    let bells = bell(n + mshift);
    let s = stirling2(mshift);
    let rhs = spivey_sum(n, s.row(mshift), &bells);
    VerificationReport::new(
        IdentityId::Spivey,
        Variant::NotApplicable,
        Params {
            n: Some(n as u64),
            mshift: Some(mshift as u64),
            ..Params::default()
        },
        Side::Int(bells[n + mshift].clone()),
        Side::Int(rhs),
    )
}

fn spivey_sum(n: usize, stirling_row: &[BigInt], bells: &[BigInt]) -> BigInt {
    let mut acc = BigInt::default();
    for (j, s) in stirling_row.iter().enumerate() {
        for (k, bk) in bells.iter().enumerate().take(n + 1) {
            acc += pow(big(j), n - k) * s * binom(n, k) * bk;
        }
    }
    acc
}

/// The per-`j` factor that distinguishes the two readings of the q-formulas.
fn x_factor(variant: Variant, x: usize, j: usize) -> QPoly {
    match variant {
        Variant::Literal => q_falling(x, j),
        _ => QPoly::constant(pow(big(x), j)),
    }
}

/// `B_{n+m,q}(x) = sum_j sum_k S_q(m,j) C(n,k) [j]_q^(n-k) q^(jk) B_{k,q}(x) F_j`
/// at integer `x`, with `F_j = [x]_{q,j}` (literal) or `x^j` (corrected).
pub fn verify_result1(n: usize, mshift: usize, x: usize, variant: Variant) -> VerificationReport {
    let xb = big(x);
    let lhs = row_poly(q_stirling2(n + mshift).row(n + mshift)).eval_x(&xb);
    let s = q_stirling2(n.max(mshift));
    let bells: Vec<QPoly> = (0..=n).map(|k| row_poly(s.row(k)).eval_x(&xb)).collect();
    let mut rhs = QPoly::zero();
    for (j, sj) in s.row(mshift).iter().enumerate() {
        let factor = x_factor(variant, x, j);
        if sj.is_zero() || factor.is_zero() {
            continue;
        }
        let qj = q_int(j);
        for (k, bk) in bells.iter().enumerate() {
            let term = sj.scale(&binom(n, k)) * qj.pow((n - k) as u32) * bk;
            rhs += term.shift(j * k) * &factor;
        }
    }
    VerificationReport::new(
        IdentityId::Result1,
        variant,
        Params {
            n: Some(n as u64),
            mshift: Some(mshift as u64),
            x: Some(x as u64),
            ..Params::default()
        },
        Side::Q(lhs),
        Side::Q(rhs),
    )
}

/// The corrected first formula as an identity in `x` itself, comparing
/// `XQPoly` values instead of point evaluations.
pub fn verify_result1_symbolic(n: usize, mshift: usize) -> VerificationReport {
    let lhs = row_poly(q_stirling2(n + mshift).row(n + mshift));
    let s = q_stirling2(n.max(mshift));
    let mut rhs = XQPoly::zero();
    for (j, sj) in s.row(mshift).iter().enumerate() {
        let qj = q_int(j);
        for k in 0..=n {
            let c = sj.scale(&binom(n, k)) * qj.pow((n - k) as u32);
            rhs += &row_poly(s.row(k)).scale(&c.shift(j * k)).shift(j);
        }
    }
    VerificationReport::new(
        IdentityId::Result1,
        Variant::Corrected,
        Params {
            n: Some(n as u64),
            mshift: Some(mshift as u64),
            ..Params::default()
        },
        Side::X(lhs),
        Side::X(rhs),
    )
}

/// The q-analogue of Spivey's formula at `x = 1`:
/// `B_{n+l,q} = sum_j sum_k S_q(l,j) C(n,k) [j]_q^(n-k) q^(jk) B_{k,q}`.
pub fn verify_katriel(n: usize, l: usize) -> VerificationReport {
    let bells = q_bell_numbers(n + l);
    let s = q_stirling2(l);
    let mut rhs = QPoly::zero();
    for (j, sj) in s.row(l).iter().enumerate() {
        let qj = q_int(j);
        for (k, bk) in bells.iter().enumerate().take(n + 1) {
            let term = sj.scale(&binom(n, k)) * qj.pow((n - k) as u32) * bk;
            rhs += term.shift(j * k);
        }
    }
    VerificationReport::new(
        IdentityId::Katriel,
        Variant::NotApplicable,
        Params {
            n: Some(n as u64),
            l: Some(l as u64),
            ..Params::default()
        },
        Side::Q(bells[n + l].clone()),
        Side::Q(rhs),
    )
}

struct DowlingTerms {
    whitney_row: Vec<QPoly>,
    base: Vec<XQPoly>,
    weights: Vec<QPoly>,
}

fn dowling_terms(n: usize, l: usize, m: u64, r: u64) -> Result<DowlingTerms> {
    let whitney_row = qr_whitney(l, m, r)?.row(l).to_vec();
    let base_tri = qr_whitney(n, m, 0)?;
    let base = (0..=n).map(|k| row_poly(base_tri.row(k))).collect();
    let mb = QPoly::constant(m);
    let rb = QPoly::constant(r);
    let weights = (0..=l).map(|j| &mb * &q_int(j) + &rb).collect();
    Ok(DowlingTerms {
        whitney_row,
        base,
        weights,
    })
}

/// The generalized (q,r)-Dowling formula at integer `x`:
/// `D_{m,r,q}(n+l,x) = sum_j sum_k [m^j] W(l,j) C(n,k) (m[j]_q+r)^(n-k) q^(jk) D_{m,0,q}(k,x) F_j`
/// where the bracketed `m^j` and `F_j = [x]_{q,j}` belong to the literal
/// reading, and the corrected reading drops `m^j` and uses `F_j = x^j`.
pub fn verify_result2(
    n: usize,
    l: usize,
    m: u64,
    r: u64,
    x: usize,
    variant: Variant,
) -> Result<VerificationReport> {
    let xb = big(x);
    let lhs = qr_dowling_poly(n + l, m, r)?.eval_x(&xb);
    let t = dowling_terms(n, l, m, r)?;
    let base_at_x: Vec<QPoly> = t.base.iter().map(|p| p.eval_x(&xb)).collect();
    let mut rhs = QPoly::zero();
    for (j, wj) in t.whitney_row.iter().enumerate() {
        let mut factor = x_factor(variant, x, j);
        if variant == Variant::Literal {
            factor = factor.scale(&pow(BigInt::from(m), j));
        }
        if wj.is_zero() || factor.is_zero() {
            continue;
        }
        for (k, dk) in base_at_x.iter().enumerate() {
            let term = wj.scale(&binom(n, k)) * t.weights[j].pow((n - k) as u32) * dk;
            rhs += term.shift(j * k) * &factor;
        }
    }
    Ok(VerificationReport::new(
        IdentityId::Result2,
        variant,
        Params {
            n: Some(n as u64),
            l: Some(l as u64),
            m: Some(m),
            r: Some(r),
            x: Some(x as u64),
            ..Params::default()
        },
        Side::Q(lhs),
        Side::Q(rhs),
    ))
}

/// The corrected generalized formula as an identity of polynomials in `x`.
pub fn verify_result2_symbolic(n: usize, l: usize, m: u64, r: u64) -> Result<VerificationReport> {
    let lhs = qr_dowling_poly(n + l, m, r)?;
    let t = dowling_terms(n, l, m, r)?;
    let mut rhs = XQPoly::zero();
    for (j, wj) in t.whitney_row.iter().enumerate() {
        for (k, dk) in t.base.iter().enumerate() {
            let c = wj.scale(&binom(n, k)) * t.weights[j].pow((n - k) as u32);
            rhs += &dk.scale(&c.shift(j * k)).shift(j);
        }
    }
    Ok(VerificationReport::new(
        IdentityId::Result2,
        Variant::Corrected,
        Params {
            n: Some(n as u64),
            l: Some(l as u64),
            m: Some(m),
            r: Some(r),
            ..Params::default()
        },
        Side::X(lhs),
        Side::X(rhs),
    ))
}

/// Classical r-Dowling form:
/// `D_{m,r}(n+l) = sum_j sum_k [m^j] W_{m,r}(l,j) C(n,k) (mj+r)^(n-k) D_{m,0}(k)`,
/// with the `m^j` kept only in the literal reading.
pub fn verify_result3(
    n: usize,
    l: usize,
    m: u64,
    r: u64,
    variant: Variant,
) -> Result<VerificationReport> {
    let lhs = r_dowling(n + l, m, r)?[n + l].clone();
    let w = r_whitney(l, m, r)?;
    let base = r_dowling(n, m, 0)?;
    let (mb, rb) = (BigInt::from(m), BigInt::from(r));
    let mut rhs = BigInt::default();
    for (j, wj) in w.row(l).iter().enumerate() {
        let scale = match variant {
            Variant::Literal => pow(mb.clone(), j),
            _ => BigInt::one(),
        };
        let weight = &mb * big(j) + &rb;
        for (k, dk) in base.iter().enumerate() {
            rhs += &scale * wj * binom(n, k) * pow(weight.clone(), n - k) * dk;
        }
    }
    Ok(VerificationReport::new(
        IdentityId::Result3,
        variant,
        Params {
            n: Some(n as u64),
            l: Some(l as u64),
            m: Some(m),
            r: Some(r),
            ..Params::default()
        },
        Side::Int(lhs),
        Side::Int(rhs),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    /// `[a, (a†)^k]_{q^k} = [k]_q (a†)^(k-1)`
    CommutatorPower,
    /// `a^k e_q(x a†)|0> = x^k e_q(x a†)|0>`, truncated.
    CoherentEigen,
    /// `(a†a)(a†)^k = (a†)^k ([k]_q + q^k a†a)`
    NumberShift,
    /// `(m a†a + r)(a†)^k = (a†)^k (m[k]_q + r + m q^k a†a)`
    AffineShift,
}

impl Lemma {
    pub fn id(self) -> IdentityId {
        match self {
            Lemma::CommutatorPower => IdentityId::Lem1,
            Lemma::CoherentEigen => IdentityId::Lem2,
            Lemma::NumberShift => IdentityId::Lem3,
            Lemma::AffineShift => IdentityId::Lem4,
        }
    }

    pub fn from_id(id: IdentityId) -> Option<Lemma> {
        match id {
            IdentityId::Lem1 => Some(Lemma::CommutatorPower),
            IdentityId::Lem2 => Some(Lemma::CoherentEigen),
            IdentityId::Lem3 => Some(Lemma::NumberShift),
            IdentityId::Lem4 => Some(Lemma::AffineShift),
            _ => None,
        }
    }
}

/// Checks one operator lemma. The left side is always produced by the
/// normal-ordering engine or the Fock simulator; the right side is written
/// down directly in normal order.
///
/// `m` and `r` are used only by [`Lemma::AffineShift`], `cap` only by
/// [`Lemma::CoherentEigen`], which compares occupancies `0..=cap-k`.
pub fn verify_lemma(
    which: Lemma,
    k: usize,
    m: u64,
    r: u64,
    cap: usize,
) -> Result<VerificationReport> {
    let mut params = Params {
        k: Some(k as u64),
        ..Params::default()
    };
    let (lhs, rhs) = match which {
        Lemma::CommutatorPower => {
            let lhs = NormalForm::annihilator().q_commutator(&NormalForm::creator_pow(k), k);
            let rhs = match k {
                0 => NormalForm::zero(),
                _ => NormalForm::monomial(k - 1, 0, q_int(k)),
            };
            (Side::Normal(lhs), Side::Normal(rhs))
        }
        Lemma::NumberShift => {
            let lhs = NormalForm::number() * NormalForm::creator_pow(k);
            let rhs = NormalForm::monomial(k, 0, q_int(k))
                + NormalForm::monomial(k + 1, 1, QPoly::q_pow(k));
            (Side::Normal(lhs), Side::Normal(rhs))
        }
        Lemma::AffineShift => {
            params.m = Some(m);
            params.r = Some(r);
            let lhs = affine_number(m, r) * NormalForm::creator_pow(k);
            let mb = QPoly::constant(m);
            let rhs = NormalForm::monomial(k, 0, &mb * &q_int(k) + QPoly::constant(r))
                + NormalForm::monomial(k + 1, 1, mb.shift(k));
            (Side::Normal(lhs), Side::Normal(rhs))
        }
        Lemma::CoherentEigen => {
            params.cap = Some(cap as u64);
            if cap < k {
                return Err(Error::CapBelowPower { cap, k });
            }
            let lowered = FockVector::coherent(cap)
                .apply(&NormalForm::annihilator_pow(k))?
                .restrict(cap - k);
            let expected = FockVector::coherent(cap - k).scale(&XQPoly::x_pow(k));
            (Side::Fock(lowered), Side::Fock(expected))
        }
    };
    Ok(VerificationReport::new(
        which.id(),
        Variant::NotApplicable,
        params,
        lhs,
        rhs,
    ))
}

/// Recurrence-built row `n` against the normal ordering of `(a†a)^n` or
/// `(mN + r)^n`. Both sides are full normal forms, so stray off-diagonal
/// terms from the oracle would also fail the check.
pub fn verify_triangle_vs_oracle(
    kind: OracleKind,
    n: usize,
    m: u64,
    r: u64,
) -> Result<VerificationReport> {
    let row = match kind {
        OracleKind::QStirling => q_stirling2(n).row(n).to_vec(),
        OracleKind::QrWhitney => qr_whitney(n, m, r)?.row(n).to_vec(),
    };
    verify_row_vs_oracle(kind, n, m, r, &row)
}

/// Like [`verify_triangle_vs_oracle`], for a caller-supplied row.
pub fn verify_row_vs_oracle(
    kind: OracleKind,
    n: usize,
    m: u64,
    r: u64,
    row: &[QPoly],
) -> Result<VerificationReport> {
    let (scale, op, params) = match kind {
        OracleKind::QStirling => (
            1u64,
            NormalForm::number(),
            Params {
                kind: Some(kind),
                n: Some(n as u64),
                ..Params::default()
            },
        ),
        OracleKind::QrWhitney => {
            if m == 0 {
                return Err(Error::ZeroShift);
            }
            (
                m,
                affine_number(m, r),
                Params {
                    kind: Some(kind),
                    n: Some(n as u64),
                    m: Some(m),
                    r: Some(r),
                    ..Params::default()
                },
            )
        }
    };
    let recurrence = row
        .iter()
        .enumerate()
        .map(|(k, c)| NormalForm::monomial(k, k, c.scale(&pow(BigInt::from(scale), k))))
        .fold(NormalForm::zero(), |acc, t| acc + t);
    let oracle = op.pow(n as u32);
    Ok(VerificationReport::new(
        IdentityId::TriangleOracle,
        Variant::NotApplicable,
        params,
        Side::Normal(recurrence),
        Side::Normal(oracle),
    ))
}

/// `[s]_q^n = sum_k S_q(n,k) [s]_{q,k}`.
pub fn verify_q_expansion(s: usize, n: usize) -> VerificationReport {
    verify_q_expansion_row(s, n, q_stirling2(n).row(n))
}

/// Like [`verify_q_expansion`], for a caller-supplied q-Stirling row.
pub fn verify_q_expansion_row(s: usize, n: usize, row: &[QPoly]) -> VerificationReport {
    let lhs = q_int(s).pow(n as u32);
    let rhs = row
        .iter()
        .enumerate()
        .map(|(k, c)| c * &q_falling(s, k))
        .sum();
    VerificationReport::new(
        IdentityId::QExpansion,
        Variant::NotApplicable,
        Params {
            n: Some(n as u64),
            s: Some(s as u64),
            ..Params::default()
        },
        Side::Q(lhs),
        Side::Q(rhs),
    )
}

/// Re-runs the check a report describes, so stored reports can be replayed.
pub fn replay(report: &VerificationReport) -> Result<VerificationReport> {
    let p = &report.params;
    let get = |v: Option<u64>| to_usize(v.unwrap_or(0));
    let (n, k, x) = (get(p.n), get(p.k), get(p.x));
    let (m, r) = (p.m.unwrap_or(0), p.r.unwrap_or(0));
    Ok(match report.identity {
        IdentityId::StirlingDef => verify_stirling_def(n),
        IdentityId::BellRec => verify_bell_recurrence(n),
        IdentityId::Spivey => verify_spivey(n, get(p.mshift)),
        IdentityId::Result1 if p.x.is_none() => verify_result1_symbolic(n, get(p.mshift)),
        IdentityId::Result1 => verify_result1(n, get(p.mshift), x, report.variant),
        IdentityId::Result2 if p.x.is_none() => verify_result2_symbolic(n, get(p.l), m, r)?,
        IdentityId::Result2 => verify_result2(n, get(p.l), m, r, x, report.variant)?,
        IdentityId::Result3 => verify_result3(n, get(p.l), m, r, report.variant)?,
        IdentityId::Katriel => verify_katriel(n, get(p.l)),
        id @ (IdentityId::Lem1 | IdentityId::Lem2 | IdentityId::Lem3 | IdentityId::Lem4) => {
            verify_lemma(Lemma::from_id(id).expect("lemma id"), k, m, r, get(p.cap))?
        }
        IdentityId::TriangleOracle => {
            verify_triangle_vs_oracle(p.kind.unwrap_or(OracleKind::QStirling), n, m, r)?
        }
        IdentityId::WhitneySpecial => crate::sequences::whitney_special_check(k, m)?,
        IdentityId::QExpansion => verify_q_expansion(get(p.s), n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    fn one() -> BigInt {
        BigInt::one()
    }

    #[test]
    fn stirling_definition() {
        let r = verify_stirling_def(3);
        assert!(r.passed);
        let Side::Ints(lhs) = &r.lhs else { panic!() };
        assert_eq!(lhs[2], BigInt::from(8));
        assert!(verify_stirling_def(0).passed);
        assert!(verify_stirling_def(2).passed);
    }

    #[test]
    fn bell_recurrence() {
        assert!(verify_bell_recurrence(1).passed);
        let r = verify_bell_recurrence(10);
        assert!(r.passed);
        let Side::Ints(v) = &r.rhs else { panic!() };
        assert_eq!(v[4], BigInt::from(15));
        assert_eq!(v[10], BigInt::from(115975));
    }

    #[test]
    fn spivey_small() {
        let r = verify_spivey(2, 1);
        assert!(r.passed);
        assert_eq!(r.lhs, Side::Int(5.into()));
        assert!(verify_spivey(0, 5).passed);
        assert!(verify_spivey(5, 0).passed);
        assert!(verify_spivey(0, 0).passed);
    }

    #[test]
    fn result1_witnesses() {
        let lit = verify_result1(1, 2, 1, Variant::Literal);
        assert!(!lit.passed);
        assert_eq!(lit.lhs, Side::Q(qp(&[1, 2, 1, 1])));
        assert_eq!(lit.rhs, Side::Q(qp(&[1, 1])));
        let cor = verify_result1(1, 2, 1, Variant::Corrected);
        assert!(cor.passed);
        for m in 0..4 {
            for x in 0..4 {
                assert!(verify_result1(0, m, x, Variant::Corrected).passed);
            }
        }
    }

    #[test]
    fn result1_symbolic() {
        for n in 0..4 {
            for m in 0..4 {
                assert!(verify_result1_symbolic(n, m).passed, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn katriel_witness() {
        let r = verify_katriel(1, 1);
        assert!(r.passed);
        assert_eq!(r.lhs, Side::Q(qp(&[1, 1])));
        assert!(verify_katriel(0, 4).passed);
    }

    #[test]
    fn result2_witnesses() {
        let cor = verify_result2(1, 1, 2, 1, 1, Variant::Corrected).unwrap();
        assert!(cor.passed);
        assert_eq!(cor.lhs.eval_q(&one()), Some(Side::Int(6.into())));
        let cor = verify_result2(2, 1, 2, 1, 1, Variant::Corrected).unwrap();
        assert_eq!(cor.lhs.eval_q(&one()), Some(Side::Int(24.into())));
        assert!(cor.passed);
        let lit = verify_result2(1, 1, 2, 1, 1, Variant::Literal).unwrap();
        assert!(!lit.passed);
        assert_eq!(lit.rhs.eval_q(&one()), Some(Side::Int(10.into())));
        assert_eq!(
            verify_result2(1, 1, 0, 1, 1, Variant::Corrected),
            Err(Error::ZeroShift)
        );
    }

    #[test]
    fn result2_symbolic() {
        for m in 1..=3 {
            for r in 0..=2 {
                assert!(verify_result2_symbolic(2, 2, m, r).unwrap().passed);
            }
        }
    }

    #[test]
    fn result3_witnesses() {
        let cor = verify_result3(1, 1, 2, 1, Variant::Corrected).unwrap();
        assert_eq!((cor.lhs.clone(), cor.passed), (Side::Int(6.into()), true));
        let lit = verify_result3(1, 1, 2, 1, Variant::Literal).unwrap();
        assert_eq!((lit.rhs.clone(), lit.passed), (Side::Int(10.into()), false));
        for variant in [Variant::Literal, Variant::Corrected] {
            let r = verify_result3(3, 2, 1, 0, variant).unwrap();
            assert!(r.passed);
            assert_eq!(r.lhs, verify_spivey(3, 2).lhs);
        }
    }

    #[test]
    fn lemmas() {
        let r = verify_lemma(Lemma::CommutatorPower, 2, 0, 0, 0).unwrap();
        assert!(r.passed);
        assert_eq!(r.rhs, Side::Normal(NormalForm::monomial(1, 0, qp(&[1, 1]))));
        assert!(
            verify_lemma(Lemma::CommutatorPower, 0, 0, 0, 0)
                .unwrap()
                .passed
        );
        assert!(
            verify_lemma(Lemma::CoherentEigen, 1, 0, 0, 4)
                .unwrap()
                .passed
        );
        assert!(verify_lemma(Lemma::AffineShift, 1, 2, 1, 0).unwrap().passed);
        assert!(verify_lemma(Lemma::NumberShift, 3, 0, 0, 0).unwrap().passed);
        assert_eq!(
            verify_lemma(Lemma::CoherentEigen, 5, 0, 0, 4),
            Err(Error::CapBelowPower { cap: 4, k: 5 })
        );
    }

    #[test]
    fn triangle_oracle() {
        assert!(
            verify_triangle_vs_oracle(OracleKind::QStirling, 3, 0, 0)
                .unwrap()
                .passed
        );
        assert!(
            verify_triangle_vs_oracle(OracleKind::QStirling, 0, 0, 0)
                .unwrap()
                .passed
        );
        let w = verify_triangle_vs_oracle(OracleKind::QrWhitney, 2, 2, 1).unwrap();
        assert!(w.passed);
        let Side::Normal(nf) = &w.rhs else { panic!() };
        assert_eq!(nf.coefficient(0, 0), qp(&[1]));
        assert_eq!(nf.coefficient(1, 1), qp(&[8]));
        assert_eq!(nf.coefficient(2, 2), qp(&[0, 4]));
        let bad_row = [QPoly::zero(), QPoly::one(), qp(&[0, 2]), qp(&[0, 0, 0, 1])];
        assert!(
            !verify_row_vs_oracle(OracleKind::QStirling, 3, 0, 0, &bad_row)
                .unwrap()
                .passed
        );
        assert!(verify_triangle_vs_oracle(OracleKind::QrWhitney, 2, 0, 1).is_err());
    }

    #[test]
    fn q_expansion() {
        for s in 0..=4 {
            for n in 0..=4 {
                assert!(verify_q_expansion(s, n).passed);
            }
        }
    }

    #[test]
    fn replay_reproduces_reports() {
        let reports = vec![
            verify_spivey(3, 2),
            verify_result1(1, 2, 1, Variant::Literal),
            verify_result1_symbolic(2, 1),
            verify_result2(1, 1, 2, 1, 1, Variant::Literal).unwrap(),
            verify_lemma(Lemma::CoherentEigen, 2, 0, 0, 5).unwrap(),
            verify_triangle_vs_oracle(OracleKind::QrWhitney, 3, 3, 2).unwrap(),
            crate::sequences::whitney_special_check(3, 2).unwrap(),
        ];
        for r in reports {
            assert_eq!(replay(&r).unwrap(), r);
        }
    }
}
