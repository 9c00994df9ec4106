//! Sequence records, the b-file format and OEIS cross-checks.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use symlattice::identities::{central, ms_shifted, pell_shifted};
use symlattice::series::{named_series, NamedSeries, SeriesError};
use thiserror::Error;

pub const MAX_COUNT: usize = 1000;

/// Environment switch that must be `1` before `--source fetch` touches the network.
pub const NETWORK_ENV: &str = "SYMLATTICE_ALLOW_NETWORK";

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error(
        "unknown sequence `{0}`; expected one of d, m, s, pell, ms, catalan, central_binomial"
    )]
    UnknownName(String),
    #[error("count must be between 1 and {MAX_COUNT}, got {0}")]
    CountOutOfRange(usize),
    #[error("{0} has no OEIS id; pass --oeis-id")]
    NoOeisId(&'static str),
    #[error("no vendored fixture for {0}")]
    MissingFixture(String),
    #[error("malformed b-file at line {line}: {reason}")]
    MalformedBFile { line: usize, reason: String },
    #[error("network fetch is disabled; pass --allow-network and set {NETWORK_ENV}=1")]
    NetworkDisabled,
    #[error("fetch of {url} failed: {reason}")]
    Fetch { url: String, reason: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, SequenceError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceName {
    D,
    M,
    S,
    Pell,
    Ms,
    Catalan,
    CentralBinomial,
}

impl SequenceName {
    pub const ALL: [SequenceName; 7] = [
        SequenceName::D,
        SequenceName::M,
        SequenceName::S,
        SequenceName::Pell,
        SequenceName::Ms,
        SequenceName::Catalan,
        SequenceName::CentralBinomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceName::D => "d",
            SequenceName::M => "m",
            SequenceName::S => "s",
            SequenceName::Pell => "pell",
            SequenceName::Ms => "ms",
            SequenceName::Catalan => "catalan",
            SequenceName::CentralBinomial => "central_binomial",
        }
    }

    /// OEIS entry and the OEIS index of our term 0.
    pub fn oeis(self) -> Option<(&'static str, i64)> {
        match self {
            SequenceName::D => Some(("A001405", 0)),
            // m_n counts directed animals of size n+1
            SequenceName::M => Some(("A005773", 1)),
            SequenceName::S => Some(("A026003", 0)),
            SequenceName::Pell => Some(("A000129", 1)),
            SequenceName::Ms => Some(("A006190", 1)),
            SequenceName::Catalan | SequenceName::CentralBinomial => None,
        }
    }
}

impl fmt::Display for SequenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceName {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self> {
        SequenceName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| SequenceError::UnknownName(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub name: String,
    pub oeis_id: Option<String>,
    /// Index of the first term.
    pub offset: i64,
    pub terms: Vec<BigInt>,
}

impl SequenceRecord {
    pub fn generate(name: SequenceName, count: usize) -> Result<Self> {
        if count == 0 || count > MAX_COUNT {
            return Err(SequenceError::CountOutOfRange(count));
        }
        let from_series = |s: NamedSeries| named_series(s, count).and_then(|s| s.assert_integral());
        let terms = match name {
            SequenceName::D => from_series(NamedSeries::SymmetricDyck)?,
            SequenceName::M => from_series(NamedSeries::SymmetricMotzkin)?,
            SequenceName::S => from_series(NamedSeries::SymmetricSchroeder)?,
            SequenceName::Catalan => from_series(NamedSeries::Catalan)?,
            SequenceName::CentralBinomial => (0..count).map(central).collect(),
            SequenceName::Pell => pell_shifted(count - 1),
            SequenceName::Ms => ms_shifted(count - 1),
        };
        let (oeis_id, offset) = match name.oeis() {
            Some((id, offset)) => (Some(id.to_string()), offset),
            None => (None, 0),
        };
        Ok(Self {
            name: name.name().to_string(),
            oeis_id,
            offset,
            terms,
        })
    }

    pub fn last_index(&self) -> i64 {
        self.offset + self.terms.len() as i64 - 1
    }

    /// `index value` per line, indices starting at `offset`.
    pub fn to_bfile(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            out.push_str(&format!("{} {}\n", self.offset + i as i64, t));
        }
        out
    }

    pub fn from_bfile(name: &str, oeis_id: Option<&str>, text: &str) -> Result<Self> {
        let b = BFile::parse(text)?;
        Ok(Self {
            name: name.to_string(),
            oeis_id: oeis_id.map(str::to_string),
            offset: b.first,
            terms: b.values,
        })
    }
}

#[derive(Serialize)]
struct RecordJson<'a> {
    name: &'a str,
    oeis_id: Option<&'a str>,
    offset: i64,
    terms: Vec<serde_json::Number>,
}

impl Serialize for SequenceRecord {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        RecordJson {
            name: &self.name,
            oeis_id: self.oeis_id.as_deref(),
            offset: self.offset,
            terms: self.terms.iter().map(big_number).collect(),
        }
        .serialize(serializer)
    }
}

/// An integer as an exact JSON number.
pub fn big_number(v: &BigInt) -> serde_json::Number {
    v.to_string()
        .parse()
        .expect("integers are valid JSON numbers")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub first: i64,
    pub values: Vec<BigInt>,
}

impl BFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut first = None;
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: &str| SequenceError::MalformedBFile {
                line: i + 1,
                reason: reason.to_string(),
            };
            let mut fields = line.split_whitespace();
            let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(bad("expected `index value`"));
            };
            let idx: i64 = idx.parse().map_err(|_| bad("index is not an integer"))?;
            let val: BigInt = val.parse().map_err(|_| bad("value is not an integer"))?;
            let start = *first.get_or_insert(idx);
            if idx != start + values.len() as i64 {
                return Err(bad("indices are not consecutive"));
            }
            values.push(val);
        }
        match first {
            Some(first) => Ok(Self { first, values }),
            None => Err(SequenceError::MalformedBFile {
                line: 0,
                reason: "no terms".to_string(),
            }),
        }
    }

    pub fn last(&self) -> i64 {
        self.first + self.values.len() as i64 - 1
    }

    fn get(&self, index: i64) -> Option<&BigInt> {
        usize::try_from(index - self.first)
            .ok()
            .and_then(|i| self.values.get(i))
    }
}

const FIXTURES: [(&str, &str); 5] = [
    ("A001405", include_str!("../fixtures/b001405.txt")),
    ("A005773", include_str!("../fixtures/b005773.txt")),
    ("A026003", include_str!("../fixtures/b026003.txt")),
    ("A000129", include_str!("../fixtures/b000129.txt")),
    ("A006190", include_str!("../fixtures/b006190.txt")),
];

pub fn fixture(oeis_id: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(id, _)| *id == oeis_id)
        .map(|(_, text)| *text)
        .ok_or_else(|| SequenceError::MissingFixture(oeis_id.to_string()))
}

pub fn bfile_url(oeis_id: &str) -> String {
    format!(
        "https://oeis.org/{oeis_id}/b{}.txt",
        oeis_id.trim_start_matches('A')
    )
}

/// Downloads a b-file. Requires both the caller's explicit opt-in and the environment switch.
pub fn fetch(oeis_id: &str, allow_network: bool) -> Result<String> {
    let env_ok = std::env::var(NETWORK_ENV).is_ok_and(|v| v == "1");
    if !allow_network || !env_ok {
        return Err(SequenceError::NetworkDisabled);
    }
    let url = bfile_url(oeis_id);
    let fail = |reason: String| SequenceError::Fetch {
        url: url.clone(),
        reason,
    };
    reqwest::blocking::get(&url)
        .and_then(|r| r.error_for_status())
        .and_then(|r| r.text())
        .map_err(|e| fail(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: i64,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub name: String,
    pub oeis_id: String,
    pub offset: i64,
    /// Number of overlapping indices compared.
    pub compared: usize,
    /// Overlapping index range, if any.
    pub range: Option<(i64, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    /// Another offset under which every overlapping term agrees.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreeing_offset: Option<i64>,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.compared > 0 && self.first_mismatch.is_none()
    }
}

fn first_mismatch(terms: &[BigInt], offset: i64, b: &BFile) -> (usize, Option<Mismatch>) {
    let mut compared = 0;
    for (i, t) in terms.iter().enumerate() {
        let index = offset + i as i64;
        let Some(expected) = b.get(index) else {
            continue;
        };
        compared += 1;
        if expected != t {
            return (
                compared,
                Some(Mismatch {
                    index,
                    expected: expected.to_string(),
                    got: t.to_string(),
                }),
            );
        }
    }
    (compared, None)
}

pub fn compare(record: &SequenceRecord, oeis_id: &str, b: &BFile) -> Comparison {
    let lo = record.offset.max(b.first);
    let hi = record.last_index().min(b.last());
    let (compared, mismatch) = first_mismatch(&record.terms, record.offset, b);
    let agreeing_offset = mismatch.as_ref().and_then(|_| {
        (-4..=4)
            .map(|shift| record.offset + shift)
            .filter(|&o| o != record.offset)
            .find(|&o| matches!(first_mismatch(&record.terms, o, b), (n, None) if n >= 8))
    });
    Comparison {
        name: record.name.clone(),
        oeis_id: oeis_id.to_string(),
        offset: record.offset,
        compared: if mismatch.is_some() {
            compared
        } else {
            (hi - lo + 1).max(0) as usize
        },
        range: (lo <= hi).then_some((lo, hi)),
        first_mismatch: mismatch,
        agreeing_offset,
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vs {} (offset {}): ",
            self.name, self.oeis_id, self.offset
        )?;
        match (&self.first_mismatch, self.range) {
            (None, Some((lo, hi))) => {
                write!(f, "agree on indices {lo}..={hi} ({} terms)", self.compared)?
            }
            (None, None) => write!(f, "no overlapping indices")?,
            (Some(m), _) => {
                write!(
                    f,
                    "first mismatch at index {}: b-file {}, generated {}",
                    m.index, m.expected, m.got
                )?;
                match self.agreeing_offset {
                    Some(o) => write!(f, "; offset mismatch, terms agree with offset {o}")?,
                    None => write!(
                        f,
                        "; no offset in {}..={} makes the terms agree",
                        self.offset - 4,
                        self.offset + 4
                    )?,
                }
            }
        }
        Ok(())
    }
}
