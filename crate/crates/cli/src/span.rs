use std::fmt;
use std::str::FromStr;

/// An inclusive range of nonnegative integers, written `lo..hi` or `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub const fn new(lo: u64, hi: u64) -> Self {
        Span { lo, hi }
    }

    pub fn iter(self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }

    pub fn single(self) -> Option<u64> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("{t:?} is not a nonnegative integer"))
        };
        match s.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("empty range {s:?}"));
                }
                Ok(Span { lo, hi })
            }
            None => num(s).map(|v| Span { lo: v, hi: v }),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.single() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}..{}", self.lo, self.hi),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges_and_singles() {
        assert_eq!("0..12".parse(), Ok(Span::new(0, 12)));
        assert_eq!("7".parse(), Ok(Span::new(7, 7)));
        assert_eq!(" 2 .. 3 ".parse(), Ok(Span::new(2, 3)));
        assert_eq!(Span::new(1, 3).iter().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "-1", "3..1", "1..", "..4", "a..b", "1...3", "1.5"] {
            assert!(bad.parse::<Span>().is_err(), "{bad}");
        }
    }
}
