use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::boson::{FockVector, NormalForm};
use crate::poly::{decimal, QPoly, XQPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    StirlingDef,
    BellRec,
    Spivey,
    Result1,
    Result2,
    Result3,
    Katriel,
    Lem1,
    Lem2,
    Lem3,
    Lem4,
    TriangleOracle,
    WhitneySpecial,
    QExpansion,
}

impl IdentityId {
    pub const ALL: [IdentityId; 14] = [
        IdentityId::StirlingDef,
        IdentityId::BellRec,
        IdentityId::Spivey,
        IdentityId::Result1,
        IdentityId::Result2,
        IdentityId::Result3,
        IdentityId::Katriel,
        IdentityId::Lem1,
        IdentityId::Lem2,
        IdentityId::Lem3,
        IdentityId::Lem4,
        IdentityId::TriangleOracle,
        IdentityId::WhitneySpecial,
        IdentityId::QExpansion,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::StirlingDef => "stirling-def",
            IdentityId::BellRec => "bell-rec",
            IdentityId::Spivey => "spivey",
            IdentityId::Result1 => "result1",
            IdentityId::Result2 => "result2",
            IdentityId::Result3 => "result3",
            IdentityId::Katriel => "katriel",
            IdentityId::Lem1 => "lem1",
            IdentityId::Lem2 => "lem2",
            IdentityId::Lem3 => "lem3",
            IdentityId::Lem4 => "lem4",
            IdentityId::TriangleOracle => "triangle-oracle",
            IdentityId::WhitneySpecial => "whitney-special",
            IdentityId::QExpansion => "q-expansion",
        }
    }

    /// Whether the identity has a literal/corrected split.
    pub fn has_variants(self) -> bool {
        matches!(
            self,
            IdentityId::Result1 | IdentityId::Result2 | IdentityId::Result3
        )
    }
}

impl std::str::FromStr for IdentityId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

/// Which reading of a printed formula is checked.
///
/// `Literal` is the formula exactly as printed, with the factor `[x]_{q,j}`
/// and the explicit `m^j`; `Corrected` is the form the operator derivation
/// produces, with `x^j` and no extra `m^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "literal")]
    Literal,
    #[serde(rename = "corrected")]
    Corrected,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "literal" => Ok(Variant::Literal),
            "corrected" => Ok(Variant::Corrected),
            _ => Err(format!(
                "unknown variant {s:?} (expected literal or corrected)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    QStirling,
    QrWhitney,
}

impl std::str::FromStr for OracleKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "q-stirling" => Ok(OracleKind::QStirling),
            "qr-whitney" => Ok(OracleKind::QrWhitney),
            _ => Err(format!(
                "unknown triangle kind {s:?} (expected q-stirling or qr-whitney)"
            )),
        }
    }
}

/// Parameters of one check; only the ones that apply are set.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<OracleKind>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mshift: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cap: Option<u64>,
}

/// One side of a checked identity, tagged by its type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Int(#[serde(with = "decimal")] BigInt),
    Ints(#[serde(with = "decimal::seq")] Vec<BigInt>),
    Q(QPoly),
    Qs(Vec<QPoly>),
    X(XQPoly),
    Normal(NormalForm),
    Fock(FockVector),
}

impl Side {
    /// The `q := v` specialization of polynomial sides; integer sides are
    /// returned unchanged and operator sides yield `None`.
    pub fn eval_q(&self, v: &BigInt) -> Option<Side> {
        match self {
            Side::Int(_) | Side::Ints(_) => Some(self.clone()),
            Side::Q(p) => Some(Side::Int(p.eval(v))),
            Side::Qs(ps) => Some(Side::Ints(ps.iter().map(|p| p.eval(v)).collect())),
            Side::X(p) => Some(Side::X(p.eval_q(v))),
            Side::Normal(_) | Side::Fock(_) => None,
        }
    }

    pub fn as_q(&self) -> Option<&QPoly> {
        match self {
            Side::Q(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Side::Int(v) => Some(v),
            _ => None,
        }
    }
}

/// Outcome of checking one identity at one parameter point.
///
/// `passed` is always exactly `lhs == rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub variant: Variant,
    pub params: Params,
    pub lhs: Side,
    pub rhs: Side,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(
        identity: IdentityId,
        variant: Variant,
        params: Params,
        lhs: Side,
        rhs: Side,
    ) -> Self {
        let passed = lhs == rhs;
        VerificationReport {
            identity,
            variant,
            params,
            lhs,
            rhs,
            passed,
        }
    }
}

impl<'de> Deserialize<'de> for VerificationReport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            identity: IdentityId,
            variant: Variant,
            params: Params,
            lhs: Side,
            rhs: Side,
            passed: bool,
        }
        let raw = Raw::deserialize(d)?;
        let report =
            VerificationReport::new(raw.identity, raw.variant, raw.params, raw.lhs, raw.rhs);
        if report.passed != raw.passed {
            return Err(D::Error::custom("`passed` disagrees with lhs/rhs"));
        }
        Ok(report)
    }
}

/// Totals for a stream of reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            s.total += 1;
            if r.passed {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_shape() {
        let r = VerificationReport::new(
            IdentityId::Spivey,
            Variant::NotApplicable,
            Params {
                n: Some(2),
                mshift: Some(1),
                ..Params::default()
            },
            Side::Int(5.into()),
            Side::Int(5.into()),
        );
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"identity":"spivey","variant":"n/a","params":{"n":2,"mshift":1},"lhs":{"int":"5"},"rhs":{"int":"5"},"passed":true}"#
        );
        assert_eq!(
            serde_json::from_str::<VerificationReport>(&text).unwrap(),
            r
        );
    }

    #[test]
    fn lying_report_is_rejected() {
        let text = r#"{"identity":"spivey","variant":"n/a","params":{},"lhs":{"int":"5"},"rhs":{"int":"6"},"passed":true}"#;
        assert!(serde_json::from_str::<VerificationReport>(text).is_err());
    }

    #[test]
    fn names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert!("nope".parse::<IdentityId>().is_err());
    }

    #[test]
    fn summary_counts() {
        let ok = VerificationReport::new(
            IdentityId::BellRec,
            Variant::NotApplicable,
            Params::default(),
            Side::Int(1.into()),
            Side::Int(1.into()),
        );
        let bad = VerificationReport {
            passed: false,
            ..ok.clone()
        };
        let s = Summary::of([&ok, &bad, &ok]);
        assert_eq!(
            s,
            Summary {
                total: 3,
                passed: 2,
                failed: 1
            }
        );
        assert!(!s.all_passed());
    }
}
