//! Triangle tables with their generating parameters, as JSON or CSV.
//!
//! CSV layout: a `kind,m,r,n_max` header record and its value record, then
//! one record per row `n` holding `n` followed by the row's cells. Classical
//! cells are plain decimals; q-cells are the `QPoly` JSON encoding.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{q_stirling2, qr_whitney, r_whitney, stirling2, Triangle};
use crate::error::{Error, Result};
use crate::poly::{decimal, QPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangleKind {
    Stirling2,
    QStirling2,
    RWhitney,
    QrWhitney,
}

impl TriangleKind {
    pub const ALL: [TriangleKind; 4] = [
        TriangleKind::Stirling2,
        TriangleKind::QStirling2,
        TriangleKind::RWhitney,
        TriangleKind::QrWhitney,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TriangleKind::Stirling2 => "stirling2",
            TriangleKind::QStirling2 => "q-stirling2",
            TriangleKind::RWhitney => "r-whitney",
            TriangleKind::QrWhitney => "qr-whitney",
        }
    }

    /// Whether the kind takes `m` and `r`.
    pub fn is_whitney(self) -> bool {
        matches!(self, TriangleKind::RWhitney | TriangleKind::QrWhitney)
    }

    pub fn is_q(self) -> bool {
        matches!(self, TriangleKind::QStirling2 | TriangleKind::QrWhitney)
    }
}

impl FromStr for TriangleKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        TriangleKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown triangle kind {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableRows {
    Classical(Triangle<BigInt>),
    Q(Triangle<QPoly>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleTable {
    pub kind: TriangleKind,
    pub m: Option<u64>,
    pub r: Option<u64>,
    pub n_max: usize,
    pub rows: TableRows,
}

impl TriangleTable {
    /// Builds the table; Whitney kinds need `m` (at least 1) and `r`.
    pub fn build(kind: TriangleKind, n_max: usize, m: Option<u64>, r: Option<u64>) -> Result<Self> {
        let (m, r) = if kind.is_whitney() {
            (Some(m.ok_or(Error::ZeroShift)?), Some(r.unwrap_or(0)))
        } else {
            (None, None)
        };
        let rows = match kind {
            TriangleKind::Stirling2 => TableRows::Classical(stirling2(n_max)),
            TriangleKind::QStirling2 => TableRows::Q(q_stirling2(n_max)),
            TriangleKind::RWhitney => {
                TableRows::Classical(r_whitney(n_max, m.unwrap(), r.unwrap())?)
            }
            TriangleKind::QrWhitney => TableRows::Q(qr_whitney(n_max, m.unwrap(), r.unwrap())?),
        };
        Ok(TriangleTable {
            kind,
            m,
            r,
            n_max,
            rows,
        })
    }

    fn cells(&self) -> Vec<Vec<String>> {
        match &self.rows {
            TableRows::Classical(t) => t
                .rows()
                .iter()
                .map(|row| row.iter().map(BigInt::to_string).collect())
                .collect(),
            TableRows::Q(t) => t
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| serde_json::to_string(c).expect("QPoly serializes"))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .flexible(true)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
        w.write_record(["kind", "m", "r", "n_max"]).unwrap();
        w.write_record([
            self.kind.as_str().to_string(),
            opt(self.m),
            opt(self.r),
            self.n_max.to_string(),
        ])
        .unwrap();
        for (n, row) in self.cells().into_iter().enumerate() {
            let mut rec = vec![n.to_string()];
            rec.extend(row);
            w.write_record(&rec).unwrap();
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 output")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Table(msg);
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(text.as_bytes());
        let records: Vec<csv::StringRecord> = rdr
            .records()
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| bad(e.to_string()))?;
        let [head, values, rows @ ..] = records.as_slice() else {
            return Err(bad("missing header records".into()));
        };
        if head.iter().collect::<Vec<_>>() != ["kind", "m", "r", "n_max"] || values.len() != 4 {
            return Err(bad("malformed header".into()));
        }
        let kind: TriangleKind = values[0].parse().map_err(bad)?;
        let opt = |s: &str| -> Result<Option<u64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse()
                    .map(Some)
                    .map_err(|_| bad(format!("bad integer {s:?}")))
            }
        };
        let m = opt(&values[1])?;
        let r = opt(&values[2])?;
        let n_max: usize = values[3]
            .parse()
            .map_err(|_| bad(format!("bad n_max {:?}", &values[3])))?;
        if rows.len() != n_max + 1 {
            return Err(bad(format!(
                "expected {} rows, found {}",
                n_max + 1,
                rows.len()
            )));
        }
        let mut cells = Vec::with_capacity(rows.len());
        for (n, rec) in rows.iter().enumerate() {
            if rec.get(0) != Some(n.to_string().as_str()) {
                return Err(bad(format!("row {n} is out of order")));
            }
            cells.push(rec.iter().skip(1).map(str::to_string).collect::<Vec<_>>());
        }
        let rows = if kind.is_q() {
            let parsed = cells
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| serde_json::from_str::<QPoly>(c).map_err(|e| bad(e.to_string())))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            TableRows::Q(Triangle::from_rows(parsed)?)
        } else {
            let parsed = cells
                .iter()
                .map(|row| row.iter().map(|c| decimal::parse(c).map_err(bad)).collect())
                .collect::<Result<Vec<_>>>()?;
            TableRows::Classical(Triangle::from_rows(parsed)?)
        };
        Ok(TriangleTable {
            kind,
            m,
            r,
            n_max,
            rows,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    kind: TriangleKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    r: Option<u64>,
    n_max: usize,
    rows: serde_json::Value,
}

impl Serialize for TriangleTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = match &self.rows {
            TableRows::Classical(_) => serde_json::to_value(self.cells()),
            TableRows::Q(t) => serde_json::to_value(t.rows()),
        }
        .map_err(serde::ser::Error::custom)?;
        TableJson {
            kind: self.kind,
            m: self.m,
            r: self.r,
            n_max: self.n_max,
            rows,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriangleTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TableJson::deserialize(d)?;
        let rows = if raw.kind.is_q() {
            let rows: Vec<Vec<QPoly>> =
                serde_json::from_value(raw.rows).map_err(D::Error::custom)?;
            TableRows::Q(Triangle::from_rows(rows).map_err(D::Error::custom)?)
        } else {
            let rows: Vec<Vec<String>> =
                serde_json::from_value(raw.rows).map_err(D::Error::custom)?;
            let rows = rows
                .iter()
                .map(|row| row.iter().map(|c| decimal::parse(c)).collect())
                .collect::<std::result::Result<Vec<Vec<BigInt>>, String>>()
                .map_err(D::Error::custom)?;
            TableRows::Classical(Triangle::from_rows(rows).map_err(D::Error::custom)?)
        };
        let len = match &rows {
            TableRows::Classical(t) => t.rows().len(),
            TableRows::Q(t) => t.rows().len(),
        };
        if len != raw.n_max + 1 {
            return Err(D::Error::custom(format!(
                "n_max {} does not match {} rows",
                raw.n_max, len
            )));
        }
        Ok(TriangleTable {
            kind: raw.kind,
            m: raw.m,
            r: raw.r,
            n_max: raw.n_max,
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_stirling_json() {
        let t = TriangleTable::build(TriangleKind::QStirling2, 3, None, None).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"q-stirling2","n_max":3,"rows":[[["1"]],[[],["1"]],[[],["1"],["0","1"]],[[],["1"],["0","2","1"],["0","0","0","1"]]]}"#
        );
        assert_eq!(serde_json::from_str::<TriangleTable>(&text).unwrap(), t);
    }

    #[test]
    fn stirling_zero_rows() {
        let t = TriangleTable::build(TriangleKind::Stirling2, 0, None, None).unwrap();
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"kind":"stirling2","n_max":0,"rows":[["1"]]}"#
        );
    }

    #[test]
    fn whitney_csv() {
        let t = TriangleTable::build(TriangleKind::QrWhitney, 2, Some(2), Some(1)).unwrap();
        let csv = t.to_csv();
        assert_eq!(
            csv,
            "kind,m,r,n_max\nqr-whitney,2,1,2\n0,\"[\"\"1\"\"]\"\n1,\"[\"\"1\"\"]\",\"[\"\"1\"\"]\"\n2,\"[\"\"1\"\"]\",\"[\"\"4\"\"]\",\"[\"\"0\"\",\"\"1\"\"]\"\n"
        );
        assert_eq!(TriangleTable::from_csv(&csv).unwrap(), t);
    }

    #[test]
    fn classical_csv() {
        let t = TriangleTable::build(TriangleKind::Stirling2, 3, None, None).unwrap();
        let csv = t.to_csv();
        assert_eq!(
            csv,
            "kind,m,r,n_max\nstirling2,,,3\n0,1\n1,0,1\n2,0,1,1\n3,0,1,3,1\n"
        );
        assert_eq!(TriangleTable::from_csv(&csv).unwrap(), t);
        assert!(TriangleTable::from_csv("kind,m,r,n_max\nstirling2,,,1\n0,1\n").is_err());
        assert!(TriangleTable::from_csv("kind,m,r,n_max\nstirling2,,,1\n0,1\n1,0\n").is_err());
    }

    #[test]
    fn whitney_needs_shift() {
        assert!(TriangleTable::build(TriangleKind::RWhitney, 2, None, Some(1)).is_err());
        assert!(TriangleTable::build(TriangleKind::RWhitney, 2, Some(0), Some(1)).is_err());
    }
}
