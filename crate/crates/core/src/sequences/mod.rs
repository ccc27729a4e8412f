//! Stirling, Bell, Whitney and Dowling families built row by row.
//!
//! The q-triangles come from recurrences read off the operator relations
//! `(a†a)(a†)^k = (a†)^k([k]_q + q^k a†a)` and its `m a†a + r` variant:
//!
//! ```text
//! S_q(n,k) = q^(k-1) S_q(n-1,k-1) + [k]_q S_q(n-1,k)
//! W(n,k)   = q^(k-1) W(n-1,k-1)   + (m[k]_q + r) W(n-1,k)
//! ```
//!
//! Neither recurrence is trusted on its own: both are certified against the
//! normal-ordering oracle in [`crate::identities::verify_triangle_vs_oracle`].

mod table;

pub use table::{TableRows, TriangleKind, TriangleTable};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::identities::{IdentityId, Params, Side, Variant, VerificationReport};
use crate::poly::{QPoly, XQPoly};
use crate::qcalc::{binom, q_int};

/// A lower-triangular table; row `n` has exactly `n + 1` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle<T> {
    rows: Vec<Vec<T>>,
}

pub type TriangleBig = Triangle<BigInt>;
pub type TriangleQ = Triangle<QPoly>;

impl<T> Triangle<T> {
    /// Fails if some row `n` does not have `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        if let Some((n, row)) = rows.iter().enumerate().find(|(n, row)| row.len() != n + 1) {
            return Err(Error::TriangleShape {
                row: n,
                len: row.len(),
            });
        }
        Ok(Triangle { rows })
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        self.rows
    }

    pub fn row(&self, n: usize) -> &[T] {
        &self.rows[n]
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&T> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    /// Index of the last row.
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Triangle<U> {
        let mut f = f;
        Triangle {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(&mut f).collect())
                .collect(),
        }
    }
}

impl TriangleQ {
    /// Substitutes `q := v` in every entry.
    pub fn eval_q(&self, v: &BigInt) -> TriangleBig {
        self.map(|c| c.eval(v))
    }
}

/// Shared row-by-row builder: `T(n,k) = left(k) T(n-1,k-1) + stay(k) T(n-1,k)`.
fn build<T, L, S>(n_max: usize, left: L, stay: S) -> Triangle<T>
where
    T: Clone + Zero + One,
    L: Fn(usize, &T) -> T,
    S: Fn(usize, &T) -> T,
{
    let mut rows: Vec<Vec<T>> = vec![vec![T::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let mut v = T::zero();
                if k >= 1 {
                    v = v + left(k, &prev[k - 1]);
                }
                if k < n {
                    v = v + stay(k, &prev[k]);
                }
                v
            })
            .collect();
        rows.push(row);
    }
    Triangle { rows }
}

/// Classical Stirling numbers of the second kind, rows `0..=n_max`.
pub fn stirling2(n_max: usize) -> TriangleBig {
    build(n_max, |_, a: &BigInt| a.clone(), |k, a| a * BigInt::from(k))
}

/// `B_0..=B_n_max` as row sums of [`stirling2`].
pub fn bell(n_max: usize) -> Vec<BigInt> {
    stirling2(n_max)
        .rows
        .iter()
        .map(|r| r.iter().sum())
        .collect()
}

/// `B_0..=B_n_max` from `B_{n+1} = sum_k C(n,k) B_k`.
pub fn bell_by_recurrence(n_max: usize) -> Vec<BigInt> {
    let mut b = vec![BigInt::one()];
    for n in 0..n_max {
        let next = (0..=n).map(|k| binom(n, k) * &b[k]).sum();
        b.push(next);
    }
    b
}

/// q-Stirling numbers of the second kind: coefficients of `(a†)^k a^k` in
/// the normal ordering of `(a†a)^n`.
pub fn q_stirling2(n_max: usize) -> TriangleQ {
    build(n_max, |k, a: &QPoly| a.shift(k - 1), |k, a| a * &q_int(k))
}

/// `sum_k coeffs[k] x^k`.
pub fn row_poly(coeffs: &[QPoly]) -> XQPoly {
    XQPoly::from_coeffs(coeffs.to_vec())
}

/// q-Bell polynomial `B_{n,q}(x) = sum_k S_q(n,k) x^k`.
pub fn q_bell_poly(n: usize) -> XQPoly {
    row_poly(q_stirling2(n).row(n))
}

/// q-Bell numbers `B_{n,q} = B_{n,q}(1)` for `n = 0..=n_max`.
pub fn q_bell_numbers(n_max: usize) -> Vec<QPoly> {
    q_stirling2(n_max)
        .rows
        .iter()
        .map(|r| r.iter().cloned().sum())
        .collect()
}

/// (q,r)-Whitney numbers of the second kind, normalized so that
/// `(mN + r)^n = sum_k m^k W(n,k) (a†)^k a^k`.
pub fn qr_whitney(n_max: usize, m: u64, r: u64) -> Result<TriangleQ> {
    if m == 0 {
        return Err(Error::ZeroShift);
    }
    let mb = QPoly::constant(BigInt::from(m));
    let rb = QPoly::constant(BigInt::from(r));
    let weights: Vec<QPoly> = (0..=n_max).map(|k| &mb * &q_int(k) + &rb).collect();
    Ok(build(
        n_max,
        |k, a: &QPoly| a.shift(k - 1),
        |k, a| a * &weights[k],
    ))
}

/// `D_{m,r,q}(n, x) = sum_k W_{m,r,q}(n,k) x^k`.
pub fn qr_dowling_poly(n: usize, m: u64, r: u64) -> Result<XQPoly> {
    Ok(row_poly(qr_whitney(n, m, r)?.row(n)))
}

/// Classical r-Whitney numbers, taken as the `q = 1` value of [`qr_whitney`].
pub fn r_whitney(n_max: usize, m: u64, r: u64) -> Result<TriangleBig> {
    Ok(qr_whitney(n_max, m, r)?.eval_q(&BigInt::one()))
}

/// Classical r-Whitney numbers straight from
/// `W(n,k) = W(n-1,k-1) + (mk + r) W(n-1,k)`, never touching q.
pub fn r_whitney_by_recurrence(n_max: usize, m: u64, r: u64) -> Result<TriangleBig> {
    if m == 0 {
        return Err(Error::ZeroShift);
    }
    let (m, r) = (BigInt::from(m), BigInt::from(r));
    Ok(build(
        n_max,
        |_, a: &BigInt| a.clone(),
        |k, a| a * (&m * BigInt::from(k) + &r),
    ))
}

/// r-Dowling numbers `D_{m,r}(n)` for `n = 0..=n_max`.
pub fn r_dowling(n_max: usize, m: u64, r: u64) -> Result<Vec<BigInt>> {
    Ok(r_whitney(n_max, m, r)?
        .rows
        .iter()
        .map(|row| row.iter().sum())
        .collect())
}

/// Checks `W_{m,0,q}(k,i) = m^(k-i) S_q(k,i)` for every `i <= k <= k_max`.
///
/// Both sides are reported as flattened triangles.
pub fn whitney_special_check(k_max: usize, m: u64) -> Result<VerificationReport> {
    let whitney = qr_whitney(k_max, m, 0)?;
    let stirling = q_stirling2(k_max);
    let mb = BigInt::from(m);
    let rhs: Vec<QPoly> = stirling
        .rows
        .iter()
        .enumerate()
        .flat_map(|(k, row)| {
            let mb = &mb;
            row.iter()
                .enumerate()
                .map(move |(i, s)| s.scale(&num_traits::pow(mb.clone(), k - i)))
        })
        .collect();
    let lhs: Vec<QPoly> = whitney.rows.into_iter().flatten().collect();
    Ok(VerificationReport::new(
        IdentityId::WhitneySpecial,
        Variant::NotApplicable,
        Params {
            k: Some(k_max as u64),
            m: Some(m),
            r: Some(0),
            ..Params::default()
        },
        Side::Qs(lhs),
        Side::Qs(rhs),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn qp(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    #[test]
    fn stirling_rows() {
        let s = stirling2(3);
        assert_eq!(s.row(0), ints(&[1]).as_slice());
        assert_eq!(s.row(1), ints(&[0, 1]).as_slice());
        assert_eq!(s.row(3), ints(&[0, 1, 3, 1]).as_slice());
    }

    #[test]
    fn bell_numbers() {
        assert_eq!(bell(7), ints(&[1, 1, 2, 5, 15, 52, 203, 877]));
        assert_eq!(bell_by_recurrence(7), bell(7));
        assert_eq!(bell(0), ints(&[1]));
        assert_eq!(bell(10)[10], BigInt::from(115975));
    }

    #[test]
    fn q_stirling_rows() {
        let s = q_stirling2(3);
        assert_eq!(s.row(2), &[QPoly::zero(), QPoly::one(), QPoly::q()]);
        assert_eq!(
            s.row(3),
            &[
                QPoly::zero(),
                QPoly::one(),
                qp(&[0, 2, 1]),
                qp(&[0, 0, 0, 1])
            ]
        );
        assert_eq!(s.eval_q(&BigInt::one()), stirling2(3));
    }

    #[test]
    fn q_stirling_diagonal() {
        let s = q_stirling2(12);
        for n in 0..=12 {
            assert_eq!(s.row(n)[n], QPoly::q_pow(n * (n.saturating_sub(1)) / 2));
        }
    }

    #[test]
    fn q_bell() {
        assert_eq!(q_bell_poly(0), XQPoly::one());
        let b2 = q_bell_poly(2);
        assert_eq!(b2, XQPoly::x() + XQPoly::monomial(QPoly::q(), 2));
        assert_eq!(b2.eval_x(&BigInt::one()), qp(&[1, 1]));
        assert_eq!(q_bell_numbers(3)[3], qp(&[1, 2, 1, 1]));
    }

    #[test]
    fn whitney_rows() {
        for m in 1..=3u64 {
            for r in 0..=3u64 {
                let w = qr_whitney(2, m, r).unwrap();
                assert_eq!(w.row(1), &[QPoly::constant(r), QPoly::one()]);
                assert_eq!(
                    w.row(2),
                    &[
                        QPoly::constant(r * r),
                        QPoly::constant(m + 2 * r),
                        QPoly::q()
                    ]
                );
            }
        }
        assert_eq!(qr_whitney(4, 1, 0).unwrap(), q_stirling2(4));
        assert_eq!(qr_whitney(3, 0, 1), Err(Error::ZeroShift));
    }

    #[test]
    fn dowling() {
        let d = qr_dowling_poly(2, 2, 1).unwrap();
        assert_eq!(
            d,
            XQPoly::from_coeffs(vec![QPoly::one(), QPoly::constant(4), QPoly::q()])
        );
        assert_eq!(qr_dowling_poly(0, 3, 2).unwrap(), XQPoly::one());
        for n in 0..6 {
            assert_eq!(qr_dowling_poly(n, 1, 0).unwrap(), q_bell_poly(n));
        }
        assert!(qr_dowling_poly(1, 0, 0).is_err());
    }

    #[test]
    fn classical_whitney_and_dowling() {
        let w = r_whitney(2, 2, 1).unwrap();
        assert_eq!(w.rows(), &[ints(&[1]), ints(&[1, 1]), ints(&[1, 4, 1])]);
        assert_eq!(r_dowling(3, 2, 1).unwrap()[2], BigInt::from(6));
        assert_eq!(r_dowling(3, 2, 1).unwrap()[3], BigInt::from(24));
        assert_eq!(r_dowling(10, 1, 0).unwrap(), bell(10));
        assert_eq!(
            r_whitney_by_recurrence(6, 3, 2).unwrap(),
            r_whitney(6, 3, 2).unwrap()
        );
    }

    #[test]
    fn whitney_special() {
        for m in 1..=3 {
            assert!(whitney_special_check(6, m).unwrap().passed);
        }
        let w = qr_whitney(3, 2, 0).unwrap();
        assert_eq!(w.row(2)[1], QPoly::constant(2));
        let w = qr_whitney(3, 3, 0).unwrap();
        assert_eq!(w.row(3)[3], QPoly::q_pow(3));
        assert!(whitney_special_check(3, 0).is_err());
    }

    #[test]
    fn shape_is_validated() {
        assert!(Triangle::from_rows(vec![vec![1], vec![0, 1]]).is_ok());
        assert_eq!(
            Triangle::from_rows(vec![vec![1], vec![0]]),
            Err(Error::TriangleShape { row: 1, len: 1 })
        );
    }
}
