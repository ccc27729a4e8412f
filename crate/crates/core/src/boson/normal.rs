use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::poly::{forward_binop, QPoly};
use crate::qcalc::q_int;

/// A normally ordered operator `sum c_{k,l}(q) (a†)^k a^l`.
///
/// Keys are `(k, l)` with `k` the power of `a†` and `l` the power of `a`.
/// Zero coefficients are never stored, so equality is operator equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    terms: BTreeMap<(usize, usize), QPoly>,
}

/// Terms `(k, l, c)` of `a^l (a†)^k` brought into normal order.
type Reordered = Vec<(usize, usize, QPoly)>;

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn identity() -> Self {
        Self::monomial(0, 0, QPoly::one())
    }

    /// `c (a†)^k a^l`
    pub fn monomial(k: usize, l: usize, c: QPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((k, l), c);
        }
        NormalForm { terms }
    }

    pub fn scalar(c: QPoly) -> Self {
        Self::monomial(0, 0, c)
    }

    /// The annihilator `a`.
    pub fn annihilator() -> Self {
        Self::monomial(0, 1, QPoly::one())
    }

    /// The creator `a†`.
    pub fn creator() -> Self {
        Self::monomial(1, 0, QPoly::one())
    }

    /// `N = a†a`
    pub fn number() -> Self {
        Self::monomial(1, 1, QPoly::one())
    }

    /// `(a†)^k`
    pub fn creator_pow(k: usize) -> Self {
        Self::monomial(k, 0, QPoly::one())
    }

    /// `a^l`
    pub fn annihilator_pow(l: usize) -> Self {
        Self::monomial(0, l, QPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `(a†)^k a^l`, zero when absent.
    pub fn coefficient(&self, k: usize, l: usize) -> QPoly {
        self.terms.get(&(k, l)).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(k, l)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &QPoly)> {
        self.terms.iter().map(|(&kl, c)| (kl, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, key: (usize, usize), c: QPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn scale(&self, c: &QPoly) -> NormalForm {
        let mut out = NormalForm::zero();
        for (&kl, v) in &self.terms {
            out.accumulate(kl, v * c);
        }
        out
    }

    /// `self^e`, with `X^0` the identity.
    pub fn pow(&self, e: u32) -> NormalForm {
        (0..e).fold(NormalForm::identity(), |acc, _| &acc * self)
    }

    /// The q-commutator `[self, other]_{q^t} = self·other − q^t·other·self`.
    pub fn q_commutator(&self, other: &NormalForm, t: usize) -> NormalForm {
        let forward = self * other;
        let backward = (other * self).scale(&QPoly::q_pow(t));
        forward - backward
    }

    fn add_ref(&self, rhs: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (&kl, c) in &rhs.terms {
            out.accumulate(kl, c.clone());
        }
        out
    }

    fn sub_ref(&self, rhs: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (&kl, c) in &rhs.terms {
            out.accumulate(kl, -c);
        }
        out
    }

    fn mul_ref(&self, rhs: &NormalForm) -> NormalForm {
        let mut cache: HashMap<(usize, usize), Reordered> = HashMap::new();
        let mut out = NormalForm::zero();
        for (&(k1, l1), c1) in &self.terms {
            for (&(k2, l2), c2) in &rhs.terms {
                let middle = cache.entry((l1, k2)).or_insert_with(|| reorder(l1, k2));
                let c12 = c1 * c2;
                for (i, j, c) in middle.iter() {
                    out.accumulate((k1 + i, j + l2), &c12 * c);
                }
            }
        }
        out
    }
}

/// Normal-orders `a^l (a†)^k`, returning `(i, j, c)` for terms `c (a†)^i a^j`.
///
/// Peels one `a` at a time off the right end of `a^l`, rewriting it past
/// `(a†)^d` with `a (a†)^d = q^d (a†)^d a + [d]_q (a†)^(d-1)`. The state at
/// each level is `(d, t) -> c` for `c a^p (a†)^d a^t` with `p` pending.
fn reorder(l: usize, k: usize) -> Vec<(usize, usize, QPoly)> {
    let mut done: BTreeMap<(usize, usize), QPoly> = BTreeMap::new();
    let mut level: BTreeMap<(usize, usize), QPoly> = BTreeMap::new();
    level.insert((k, 0), QPoly::one());
    for pending in (0..l).rev() {
        let mut next: BTreeMap<(usize, usize), QPoly> = BTreeMap::new();
        for ((d, t), c) in level {
            if d == 0 {
                // Nothing left to pass; this a and the pending ones join the tail.
                *done.entry((0, t + pending + 1)).or_default() += &c;
                continue;
            }
            *next.entry((d, t + 1)).or_default() += &c.shift(d);
            *next.entry((d - 1, t)).or_default() += &c * &q_int(d);
        }
        level = next;
    }
    for (kl, c) in level {
        *done.entry(kl).or_default() += &c;
    }
    done.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((d, t), c)| (d, t, c))
        .collect()
}

forward_binop!(NormalForm, Add, add, add_ref);
forward_binop!(NormalForm, Sub, sub, sub_ref);
forward_binop!(NormalForm, Mul, mul, mul_ref);

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(&(k, l), c)| TermRecord {
                k,
                l,
                coeff: c.clone(),
            })
            .collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        let mut terms = BTreeMap::new();
        for r in records {
            if r.coeff.is_zero() {
                continue;
            }
            if terms.insert((r.k, r.l), r.coeff).is_some() {
                return Err(D::Error::custom(format!(
                    "duplicate term ({}, {})",
                    r.k, r.l
                )));
            }
        }
        Ok(NormalForm { terms })
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    k: usize,
    l: usize,
    coeff: QPoly,
}

impl From<QPoly> for NormalForm {
    fn from(c: QPoly) -> Self {
        NormalForm::scalar(c)
    }
}

impl From<BigInt> for NormalForm {
    fn from(c: BigInt) -> Self {
        NormalForm::scalar(QPoly::from(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    fn nf(terms: &[(usize, usize, &[i64])]) -> NormalForm {
        terms
            .iter()
            .map(|&(k, l, c)| NormalForm::monomial(k, l, qp(c)))
            .fold(NormalForm::zero(), |acc, t| acc + t)
    }

    #[test]
    fn a_times_adag() {
        let prod = NormalForm::annihilator() * NormalForm::creator();
        assert_eq!(prod, nf(&[(1, 1, &[0, 1]), (0, 0, &[1])]));
    }

    #[test]
    fn a_times_adag_squared() {
        let prod = NormalForm::annihilator() * NormalForm::creator_pow(2);
        assert_eq!(prod, nf(&[(2, 1, &[0, 0, 1]), (1, 0, &[1, 1])]));
    }

    #[test]
    fn identity_is_neutral() {
        let b = nf(&[(2, 1, &[3, 1]), (0, 4, &[0, 0, 2])]);
        assert_eq!(&NormalForm::identity() * &b, b);
        assert_eq!(&b * &NormalForm::identity(), b);
    }

    #[test]
    fn number_operator_powers() {
        let n = NormalForm::number();
        assert_eq!(n.pow(0), NormalForm::identity());
        assert_eq!(n.pow(2), nf(&[(1, 1, &[1]), (2, 2, &[0, 1])]));
        assert_eq!(
            n.pow(3),
            nf(&[(1, 1, &[1]), (2, 2, &[0, 2, 1]), (3, 3, &[0, 0, 0, 1])])
        );
    }

    #[test]
    fn commutation_relation() {
        let a = NormalForm::annihilator();
        let ad = NormalForm::creator();
        let lhs = &a * &ad - (&ad * &a).scale(&QPoly::q());
        assert_eq!(lhs, NormalForm::identity());
    }

    #[test]
    fn q_commutators() {
        let a = NormalForm::annihilator();
        assert_eq!(
            a.q_commutator(&NormalForm::creator(), 1),
            NormalForm::identity()
        );
        assert_eq!(
            a.q_commutator(&NormalForm::creator_pow(2), 2),
            nf(&[(1, 0, &[1, 1])])
        );
        assert_eq!(
            a.q_commutator(&NormalForm::creator_pow(3), 3),
            nf(&[(2, 0, &[1, 1, 1])])
        );
    }

    #[test]
    fn lemma_one_sweep() {
        let a = NormalForm::annihilator();
        for k in 1..=10 {
            let lhs = a.q_commutator(&NormalForm::creator_pow(k), k);
            assert_eq!(lhs, NormalForm::monomial(k - 1, 0, q_int(k)), "k={k}");
        }
    }

    #[test]
    fn reorder_matches_repeated_single_steps() {
        // a^l (a†)^k computed one factor at a time through mul_ref's k=1 path.
        for l in 0..5 {
            for k in 0..5 {
                let mut slow = NormalForm::identity();
                for _ in 0..l {
                    slow = &slow * &NormalForm::annihilator();
                }
                for _ in 0..k {
                    slow = &slow * &NormalForm::creator();
                }
                let fast = NormalForm::annihilator_pow(l) * NormalForm::creator_pow(k);
                assert_eq!(fast, slow, "l={l} k={k}");
            }
        }
    }

    #[test]
    fn coefficient_lookup() {
        let n2 = NormalForm::number().pow(2);
        assert_eq!(n2.coefficient(2, 2), QPoly::q());
        assert!(NormalForm::identity().coefficient(5, 0).is_zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = nf(&[(1, 2, &[1, 1])]);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn json_shape() {
        let n2 = NormalForm::number().pow(2);
        let text = serde_json::to_string(&n2).unwrap();
        assert_eq!(
            text,
            r#"[{"k":1,"l":1,"coeff":["1"]},{"k":2,"l":2,"coeff":["0","1"]}]"#
        );
        assert_eq!(serde_json::from_str::<NormalForm>(&text).unwrap(), n2);
        let dup = r#"[{"k":1,"l":1,"coeff":["1"]},{"k":1,"l":1,"coeff":["2"]}]"#;
        assert!(serde_json::from_str::<NormalForm>(dup).is_err());
    }
}
