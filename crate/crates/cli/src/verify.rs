//! Expanding `verify` flags into a deterministic list of checks and running them.

use qspivey::identities::{
    verify_bell_recurrence, verify_katriel, verify_lemma, verify_q_expansion, verify_result1,
    verify_result2, verify_result3, verify_spivey, verify_stirling_def, verify_triangle_vs_oracle,
    IdentityId, Lemma, OracleKind, Params,
};
use qspivey::sequences::whitney_special_check;
use qspivey::{Variant, VerificationReport};
use rayon::prelude::*;

use crate::span::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    N,
    Mshift,
    L,
    M,
    R,
    X,
    K,
    S,
    Cap,
}

impl Flag {
    const ALL: [Flag; 9] = [
        Flag::N,
        Flag::Mshift,
        Flag::L,
        Flag::M,
        Flag::R,
        Flag::X,
        Flag::K,
        Flag::S,
        Flag::Cap,
    ];

    fn name(self) -> &'static str {
        match self {
            Flag::N => "--n",
            Flag::Mshift => "--mshift",
            Flag::L => "--l",
            Flag::M => "--m",
            Flag::R => "--r",
            Flag::X => "--x",
            Flag::K => "--k",
            Flag::S => "--s",
            Flag::Cap => "--cap",
        }
    }

    fn set(self, p: &mut Params, v: u64) {
        let slot = match self {
            Flag::N => &mut p.n,
            Flag::Mshift => &mut p.mshift,
            Flag::L => &mut p.l,
            Flag::M => &mut p.m,
            Flag::R => &mut p.r,
            Flag::X => &mut p.x,
            Flag::K => &mut p.k,
            Flag::S => &mut p.s,
            Flag::Cap => &mut p.cap,
        };
        *slot = Some(v);
    }
}

/// The ranges given on the command line, any of which may be absent.
#[derive(Clone, Copy, Debug, Default)]
pub struct Ranges {
    pub n: Option<Span>,
    pub mshift: Option<Span>,
    pub l: Option<Span>,
    pub m: Option<Span>,
    pub r: Option<Span>,
    pub x: Option<Span>,
    pub k: Option<Span>,
    pub s: Option<Span>,
    pub cap: Option<Span>,
}

impl Ranges {
    fn get(&self, f: Flag) -> Option<Span> {
        match f {
            Flag::N => self.n,
            Flag::Mshift => self.mshift,
            Flag::L => self.l,
            Flag::M => self.m,
            Flag::R => self.r,
            Flag::X => self.x,
            Flag::K => self.k,
            Flag::S => self.s,
            Flag::Cap => self.cap,
        }
    }
}

const fn span(lo: u64, hi: u64) -> Span {
    Span::new(lo, hi)
}

/// Flags an identity accepts, in sweep order, with their defaults.
fn accepted(id: IdentityId, kind: Option<OracleKind>) -> Vec<(Flag, Span)> {
    use Flag::*;
    let n = (N, span(0, 6));
    let shift = (M, span(1, 2));
    let offset = (R, span(0, 1));
    match id {
        IdentityId::StirlingDef | IdentityId::BellRec => vec![(N, span(0, 10))],
        IdentityId::Spivey => vec![n, (Mshift, span(0, 4))],
        IdentityId::Result1 => vec![n, (Mshift, span(0, 3)), (X, span(0, 3))],
        IdentityId::Result2 => vec![
            (N, span(0, 4)),
            (L, span(0, 3)),
            shift,
            offset,
            (X, span(0, 2)),
        ],
        IdentityId::Result3 => vec![n, (L, span(0, 3)), shift, offset],
        IdentityId::Katriel => vec![n, (L, span(0, 3))],
        IdentityId::Lem1 | IdentityId::Lem3 => vec![(K, span(1, 6))],
        IdentityId::Lem2 => vec![(K, span(0, 4)), (Cap, span(12, 12))],
        IdentityId::Lem4 => vec![(K, span(1, 6)), (M, span(0, 2)), offset],
        IdentityId::TriangleOracle => match kind {
            Some(OracleKind::QrWhitney) => vec![n, shift, offset],
            _ => vec![n],
        },
        IdentityId::WhitneySpecial => vec![(K, span(6, 6)), shift],
        IdentityId::QExpansion => vec![(S, span(0, 4)), (N, span(0, 4))],
    }
}

fn needs_positive_shift(id: IdentityId, kind: Option<OracleKind>) -> bool {
    match id {
        IdentityId::Result2 | IdentityId::Result3 | IdentityId::WhitneySpecial => true,
        IdentityId::TriangleOracle => kind == Some(OracleKind::QrWhitney),
        _ => false,
    }
}

/// A validated `verify` request.
#[derive(Clone, Debug)]
pub struct Plan {
    pub identity: IdentityId,
    pub variant: Variant,
    pub checks: Vec<Params>,
}

pub fn parse_oracle_kind(s: &str) -> Result<OracleKind, String> {
    match s {
        "q-stirling" | "q-stirling2" => Ok(OracleKind::QStirling),
        "qr-whitney" => Ok(OracleKind::QrWhitney),
        _ => Err(format!(
            "unknown oracle kind {s:?} (expected q-stirling2 or qr-whitney)"
        )),
    }
}

impl Plan {
    /// Checks the flag combination and expands the ranges. Errors are usage
    /// errors, reported before anything runs.
    pub fn new(
        identity: IdentityId,
        variant: Option<Variant>,
        kind: Option<OracleKind>,
        ranges: &Ranges,
    ) -> Result<Plan, String> {
        let variant = match (identity.has_variants(), variant) {
            (true, v) => v.unwrap_or(Variant::Corrected),
            (false, None) => Variant::NotApplicable,
            (false, Some(_)) => {
                return Err(format!("--variant does not apply to {}", identity.as_str()))
            }
        };
        let kind = match (identity, kind) {
            (IdentityId::TriangleOracle, k) => Some(k.unwrap_or(OracleKind::QStirling)),
            (_, None) => None,
            (_, Some(_)) => return Err(format!("--kind does not apply to {}", identity.as_str())),
        };

        let flags = accepted(identity, kind);
        for f in Flag::ALL {
            if ranges.get(f).is_some() && !flags.iter().any(|(g, _)| *g == f) {
                return Err(format!(
                    "{} does not apply to {}",
                    f.name(),
                    identity.as_str()
                ));
            }
        }
        let chosen: Vec<(Flag, Span)> = flags
            .into_iter()
            .map(|(f, default)| (f, ranges.get(f).unwrap_or(default)))
            .collect();

        let value = |f: Flag| chosen.iter().find(|(g, _)| *g == f).map(|(_, s)| *s);
        if needs_positive_shift(identity, kind) && value(Flag::M).is_some_and(|m| m.lo == 0) {
            return Err("--m must be at least 1".into());
        }
        if let (Some(k), Some(cap)) = (value(Flag::K), value(Flag::Cap)) {
            if cap.lo < k.hi {
                return Err(format!("--cap must be at least the largest --k ({})", k.hi));
            }
        }

        let base = Params {
            kind,
            ..Params::default()
        };
        let mut checks = vec![base];
        for (f, s) in chosen {
            checks = checks
                .into_iter()
                .flat_map(|p| {
                    s.iter().map(move |v| {
                        let mut p = p.clone();
                        f.set(&mut p, v);
                        p
                    })
                })
                .collect();
        }
        Ok(Plan {
            identity,
            variant,
            checks,
        })
    }

    /// Runs every check on a pool of `jobs` threads; results keep plan order.
    pub fn run(&self, jobs: usize) -> anyhow::Result<Vec<VerificationReport>> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
        let reports = pool.install(|| {
            self.checks
                .par_iter()
                .map(|p| run_one(self.identity, self.variant, p))
                .collect::<Result<Vec<_>, _>>()
        })?;
        Ok(reports)
    }
}

fn run_one(id: IdentityId, variant: Variant, p: &Params) -> qspivey::Result<VerificationReport> {
    let u = |v: Option<u64>| v.unwrap_or(0) as usize;
    let (n, l, k) = (u(p.n), u(p.l), u(p.k));
    let (m, r) = (p.m.unwrap_or(0), p.r.unwrap_or(0));
    Ok(match id {
        IdentityId::StirlingDef => verify_stirling_def(n),
        IdentityId::BellRec => verify_bell_recurrence(n),
        IdentityId::Spivey => verify_spivey(n, u(p.mshift)),
        IdentityId::Result1 => verify_result1(n, u(p.mshift), u(p.x), variant),
        IdentityId::Result2 => verify_result2(n, l, m, r, u(p.x), variant)?,
        IdentityId::Result3 => verify_result3(n, l, m, r, variant)?,
        IdentityId::Katriel => verify_katriel(n, l),
        IdentityId::Lem1 | IdentityId::Lem2 | IdentityId::Lem3 | IdentityId::Lem4 => {
            let lemma = Lemma::from_id(id).expect("lemma id");
            verify_lemma(lemma, k, m, r, u(p.cap))?
        }
        IdentityId::TriangleOracle => {
            verify_triangle_vs_oracle(p.kind.unwrap_or(OracleKind::QStirling), n, m, r)?
        }
        IdentityId::WhitneySpecial => whitney_special_check(k, m)?,
        IdentityId::QExpansion => verify_q_expansion(u(p.s), n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranges(f: impl FnOnce(&mut Ranges)) -> Ranges {
        let mut r = Ranges::default();
        f(&mut r);
        r
    }

    #[test]
    fn expands_in_row_major_order() {
        let r = ranges(|r| {
            r.n = Some(span(0, 1));
            r.mshift = Some(span(2, 3));
        });
        let plan = Plan::new(IdentityId::Spivey, None, None, &r).unwrap();
        let got: Vec<_> = plan
            .checks
            .iter()
            .map(|p| (p.n.unwrap(), p.mshift.unwrap()))
            .collect();
        assert_eq!(got, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(plan.variant, Variant::NotApplicable);
    }

    #[test]
    fn rejects_foreign_flags() {
        let r = ranges(|r| r.x = Some(span(1, 1)));
        assert!(Plan::new(IdentityId::Katriel, None, None, &r).is_err());
        assert!(Plan::new(
            IdentityId::Katriel,
            Some(Variant::Literal),
            None,
            &Ranges::default()
        )
        .is_err());
        let r = ranges(|r| r.m = Some(span(1, 1)));
        assert!(Plan::new(IdentityId::TriangleOracle, None, None, &r).is_err());
        assert!(Plan::new(
            IdentityId::TriangleOracle,
            None,
            Some(OracleKind::QrWhitney),
            &r
        )
        .is_ok());
    }

    #[test]
    fn rejects_zero_shift_where_it_matters() {
        let r = ranges(|r| r.m = Some(span(0, 2)));
        assert!(Plan::new(IdentityId::Result3, None, None, &r).is_err());
        assert!(Plan::new(IdentityId::Lem4, None, None, &r).is_ok());
    }

    #[test]
    fn cap_must_cover_k() {
        let r = ranges(|r| {
            r.k = Some(span(0, 5));
            r.cap = Some(span(4, 4));
        });
        assert!(Plan::new(IdentityId::Lem2, None, None, &r).is_err());
    }

    #[test]
    fn default_plans_all_pass() {
        for id in IdentityId::ALL {
            let plan = Plan::new(id, None, None, &Ranges::default()).unwrap();
            let reports = plan.run(2).unwrap();
            assert_eq!(reports.len(), plan.checks.len());
            assert!(reports.iter().all(|r| r.passed), "{}", id.as_str());
        }
    }
}
