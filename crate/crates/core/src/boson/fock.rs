use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::NormalForm;
use crate::error::{Error, Result};
use crate::poly::{QPoly, XQPoly};
use crate::qcalc::q_falling;

/// A state in the truncated Fock space `span{||0>>, ..., ||cap>>}`.
///
/// Amplitudes are taken in the rescaled basis `||s>> = |s> / sqrt([s]_q!)`,
/// where `a ||s>> = ||s-1>>` and `a† ||s>> = [s+1]_q ||s+1>>`. Every action
/// stays inside the polynomial ring. Zero amplitudes are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    cap: usize,
    amplitudes: BTreeMap<usize, XQPoly>,
}

impl FockVector {
    pub fn zero(cap: usize) -> Self {
        FockVector {
            cap,
            amplitudes: BTreeMap::new(),
        }
    }

    /// `||s>>` with unit amplitude.
    pub fn basis(cap: usize, s: usize) -> Result<Self> {
        let mut v = Self::zero(cap);
        v.set(s, XQPoly::one())?;
        Ok(v)
    }

    /// Truncation of `e_q(x a†)|0>`. In the rescaled basis the `[l]_q!` from
    /// `(a†)^l |0>` cancels the one in `e_q`, leaving amplitude `x^l` at `l`.
    pub fn coherent(cap: usize) -> Self {
        FockVector {
            cap,
            amplitudes: (0..=cap).map(|l| (l, XQPoly::x_pow(l))).collect(),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn amplitude(&self, s: usize) -> XQPoly {
        self.amplitudes.get(&s).cloned().unwrap_or_default()
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (usize, &XQPoly)> {
        self.amplitudes.iter().map(|(&s, a)| (s, a))
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn set(&mut self, s: usize, amp: XQPoly) -> Result<()> {
        if s > self.cap {
            return Err(Error::CapOverflow {
                needed: s,
                cap: self.cap,
            });
        }
        if amp.is_zero() {
            self.amplitudes.remove(&s);
        } else {
            self.amplitudes.insert(s, amp);
        }
        Ok(())
    }

    fn accumulate(&mut self, s: usize, amp: XQPoly) {
        let slot = self.amplitudes.entry(s).or_default();
        *slot += &amp;
        if slot.is_zero() {
            self.amplitudes.remove(&s);
        }
    }

    /// Multiplies every amplitude by `c`.
    pub fn scale(&self, c: &XQPoly) -> FockVector {
        let mut out = FockVector::zero(self.cap);
        for (&s, a) in &self.amplitudes {
            out.accumulate(s, a * c);
        }
        out
    }

    /// Keeps only occupancies `<= cap`, re-capping the vector.
    pub fn restrict(&self, cap: usize) -> FockVector {
        FockVector {
            cap,
            amplitudes: self
                .amplitudes
                .range(..=cap)
                .map(|(&s, a)| (s, a.clone()))
                .collect(),
        }
    }

    /// Applies a normally ordered operator.
    ///
    /// `(a†)^k a^l ||s>>` is `[s-l+k]_{q,k} ||s-l+k>>` when `l <= s` and zero
    /// otherwise. A surviving term that lands above the cap is an error: the
    /// truncation is too small and nothing is silently discarded.
    pub fn apply(&self, op: &NormalForm) -> Result<FockVector> {
        let mut out = FockVector::zero(self.cap);
        for ((k, l), c) in op.terms() {
            for (&s, amp) in &self.amplitudes {
                if l > s {
                    continue;
                }
                let target = s - l + k;
                if target > self.cap {
                    return Err(Error::CapOverflow {
                        needed: target,
                        cap: self.cap,
                    });
                }
                let factor: QPoly = c * &q_falling(target, k);
                out.accumulate(target, amp.scale(&factor));
            }
        }
        Ok(out)
    }
}

impl Serialize for FockVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FockRecord {
            cap: self.cap,
            amplitudes: self
                .amplitudes
                .iter()
                .map(|(&s, amp)| AmpRecord {
                    s,
                    amp: amp.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FockVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = FockRecord::deserialize(d)?;
        let mut v = FockVector::zero(rec.cap);
        for AmpRecord { s, amp } in rec.amplitudes {
            if v.amplitudes.contains_key(&s) {
                return Err(D::Error::custom(format!("duplicate occupancy {s}")));
            }
            v.set(s, amp).map_err(D::Error::custom)?;
        }
        Ok(v)
    }
}

#[derive(Serialize, Deserialize)]
struct FockRecord {
    cap: usize,
    amplitudes: Vec<AmpRecord>,
}

#[derive(Serialize, Deserialize)]
struct AmpRecord {
    s: usize,
    amp: XQPoly,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcalc::q_int;

    fn unit_at(s: usize, cap: usize) -> FockVector {
        FockVector::basis(cap, s).unwrap()
    }

    #[test]
    fn number_operator_eigenvalue() {
        let out = unit_at(2, 5).apply(&NormalForm::number()).unwrap();
        assert_eq!(
            out,
            unit_at(2, 5).scale(&XQPoly::constant(QPoly::from_i64s(&[1, 1])))
        );
    }

    #[test]
    fn falling_diagonal_at_three() {
        let op = NormalForm::monomial(2, 2, QPoly::one());
        let out = unit_at(3, 5).apply(&op).unwrap();
        assert_eq!(
            out.amplitude(3),
            XQPoly::constant(QPoly::from_i64s(&[1, 2, 2, 1]))
        );
        assert_eq!(out.amplitudes().count(), 1);
    }

    #[test]
    fn annihilator_kills_vacuum() {
        let out = unit_at(0, 3).apply(&NormalForm::annihilator()).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn creator_raises_with_q_integer() {
        let out = unit_at(2, 4).apply(&NormalForm::creator()).unwrap();
        assert_eq!(out.amplitude(3), XQPoly::constant(q_int(3)));
    }

    #[test]
    fn cap_overflow_is_an_error() {
        let err = unit_at(3, 3).apply(&NormalForm::creator()).unwrap_err();
        assert_eq!(err, Error::CapOverflow { needed: 4, cap: 3 });
        assert!(FockVector::basis(2, 3).is_err());
    }

    #[test]
    fn coherent_state() {
        let v = FockVector::coherent(3);
        let amps: Vec<_> = v.amplitudes().map(|(_, a)| a.clone()).collect();
        assert_eq!(
            amps,
            vec![
                XQPoly::one(),
                XQPoly::x(),
                XQPoly::x_pow(2),
                XQPoly::x_pow(3)
            ]
        );
        let vac = FockVector::coherent(0);
        assert_eq!(vac, unit_at(0, 0));
    }

    #[test]
    fn annihilators_on_coherent_state() {
        let cap = 6;
        for k in 0..=cap {
            let lowered = FockVector::coherent(cap)
                .apply(&NormalForm::annihilator_pow(k))
                .unwrap()
                .restrict(cap - k);
            let expected = FockVector::coherent(cap - k).scale(&XQPoly::x_pow(k));
            assert_eq!(lowered, expected, "k={k}");
        }
    }

    #[test]
    fn json_round_trip() {
        let v = FockVector::coherent(2);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"{"cap":2,"amplitudes":[{"s":0,"amp":[["1"]]},{"s":1,"amp":[[],["1"]]},{"s":2,"amp":[[],[],["1"]]}]}"#
        );
        assert_eq!(serde_json::from_str::<FockVector>(&text).unwrap(), v);
        assert!(serde_json::from_str::<FockVector>(
            r#"{"cap":0,"amplitudes":[{"s":1,"amp":[["1"]]}]}"#
        )
        .is_err());
    }
}
