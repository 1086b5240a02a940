//! OEIS b-files and the generators they are checked against.
//!
//! A b-file is plain text with one `index value` pair per line; blank lines
//! and lines starting with `#` are ignored. Indices must strictly increase.

use std::path::Path;
use std::time::Instant;

use thiserror::Error;

use crate::enumeration::{dowling, flat2_closed, flatm_recurrence, BigCount};
use crate::verify::{Case, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("b-file line {line}: {message}")]
pub struct BFileError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisSequence {
    pub id: String,
    pub terms: Vec<(u64, BigCount)>,
}

pub fn parse_bfile(id: &str, text: &str) -> Result<OeisSequence, BFileError> {
    let mut terms: Vec<(u64, BigCount)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| BFileError { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err("expected `index value`".into()));
        };
        let idx: u64 = idx.parse().map_err(|_| err(format!("bad index {idx:?}")))?;
        if !val.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(format!("value {val:?} is not a nonnegative integer")));
        }
        let val: BigCount = val.parse().map_err(|_| err(format!("bad value {val:?}")))?;
        if let Some(&(prev, _)) = terms.last() {
            if idx <= prev {
                return Err(err(format!("index {idx} does not follow {prev}")));
            }
        }
        terms.push((idx, val));
    }
    Ok(OeisSequence {
        id: id.to_string(),
        terms,
    })
}

pub fn read_bfile(id: &str, path: &Path) -> Result<OeisSequence, crate::Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_bfile(id, &text)?)
}

/// Sequences this crate can produce, with the b-file offset each one uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Dowling numbers: type B partitions of `[-i, i]`, also `|flat(Q_{i+1})|`.
    Dowling,
    /// `|flat_2(Q_{i+1})|`.
    Flat2,
    /// `|flat(Q_{i+1}^3)|`.
    MStirling3,
    /// `|flat(Q_{i+1}^4)|`.
    MStirling4,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::Dowling,
        Generator::Flat2,
        Generator::MStirling3,
        Generator::MStirling4,
    ];

    pub fn sequence_id(self) -> &'static str {
        match self {
            Generator::Dowling => "A007405",
            Generator::Flat2 => "A050488",
            Generator::MStirling3 => "A355164",
            Generator::MStirling4 => "A355167",
        }
    }

    pub fn for_sequence(id: &str) -> Option<Generator> {
        Self::ALL
            .into_iter()
            .find(|g| g.sequence_id().eq_ignore_ascii_case(id))
    }

    /// The term at b-file index `i`.
    pub fn term(self, i: usize) -> BigCount {
        match self {
            Generator::Dowling => dowling(i),
            Generator::Flat2 => flat2_closed(i),
            Generator::MStirling3 => flatm_recurrence(i + 1, 3),
            Generator::MStirling4 => flatm_recurrence(i + 1, 4),
        }
    }
}

/// Indices above this are not generated; the counts grow fast enough that the
/// bignum work would dominate.
pub const MAX_INDEX: u64 = 400;

/// Compares every b-file term with index up to [`MAX_INDEX`] against the generator.
pub fn compare(generator: Generator, seq: &OeisSequence) -> VerificationReport {
    let start = Instant::now();
    let mut cases: Vec<Case> = seq
        .terms
        .iter()
        .filter(|(i, _)| *i <= MAX_INDEX)
        .map(|(i, expected)| {
            let actual = generator.term(*i as usize);
            Case::required(
                format!("{} term {i}", seq.id),
                expected.to_string(),
                actual.to_string(),
            )
        })
        .collect();
    if cases.is_empty() {
        cases.push(Case::required(
            format!("{} overlapping terms", seq.id),
            "at least 1",
            "0",
        ));
    }
    VerificationReport::new(format!("oeis {}", seq.id), cases, start.elapsed())
}
