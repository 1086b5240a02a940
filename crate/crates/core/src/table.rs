//! Count tables: the run-count table for `flat(Q_n)`, the multiplicity table
//! for `flat(Q_n^m)`, and a versioned JSON cache of individual counts.
//!
//! The cache is a list of entries keyed by `(kind, n, m, k)`:
//!
//! ```json
//! {"version":1,"entries":[{"kind":"flat_k","n":5,"m":2,"k":3,"count":"70","provenance":"enumeration"}]}
//! ```
//!
//! Counts are decimal strings so that they survive JSON readers with 64-bit
//! floats. On load, every entry is recomputed and a disagreement is an error.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bijection::flattened_census_via_bijection;
use crate::budget::{Budget, BudgetExceeded};
use crate::enumeration::{
    double_factorial, dowling, flatm_recurrence, max_runs, mstirling_count, BigCount,
};
use crate::error::Error as CrateError;
use crate::word::{flattened_census, RunCensus};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// `|Q_n^m|`
    Stirling,
    /// `|flat(Q_n)|`
    Flat,
    /// `|flat_k(Q_n)|`
    FlatK,
    /// Type B partitions of `[-n, n]`.
    Typeb,
    /// `|flat(Q_n^m)|`
    MstirlingFlat,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Stirling => "stirling",
            Kind::Flat => "flat",
            Kind::FlatK => "flat_k",
            Kind::Typeb => "typeb",
            Kind::MstirlingFlat => "mstirling_flat",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Formula,
    Enumeration,
    Cached,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub kind: Kind,
    pub n: usize,
    pub m: Option<usize>,
    pub k: Option<usize>,
}

impl Key {
    pub fn stirling(n: usize, m: usize) -> Self {
        Key {
            kind: Kind::Stirling,
            n,
            m: Some(m),
            k: None,
        }
    }

    pub fn flat(n: usize) -> Self {
        Key {
            kind: Kind::Flat,
            n,
            m: Some(2),
            k: None,
        }
    }

    pub fn flat_k(n: usize, k: usize) -> Self {
        Key {
            kind: Kind::FlatK,
            n,
            m: Some(2),
            k: Some(k),
        }
    }

    pub fn typeb(n: usize) -> Self {
        Key {
            kind: Kind::Typeb,
            n,
            m: None,
            k: None,
        }
    }

    pub fn mstirling_flat(n: usize, m: usize) -> Self {
        Key {
            kind: Kind::MstirlingFlat,
            n,
            m: Some(m),
            k: None,
        }
    }

    /// The fields each kind requires, with `m = 2` where the kind fixes it.
    fn well_formed(&self) -> bool {
        match self.kind {
            Kind::Stirling => matches!(self.m, Some(m) if m >= 1) && self.k.is_none(),
            Kind::Flat => self.m == Some(2) && self.k.is_none(),
            Kind::FlatK => self.m == Some(2) && self.k.is_some(),
            Kind::Typeb => self.m.is_none() && self.k.is_none(),
            Kind::MstirlingFlat => matches!(self.m, Some(m) if m >= 2) && self.k.is_none(),
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}", self.kind, self.n)?;
        if let Some(m) = self.m {
            write!(f, ", m={m}")?;
        }
        if let Some(k) = self.k {
            write!(f, ", k={k}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cache is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported cache version {found} (expected {CACHE_VERSION})")]
    Version { found: u32 },
    #[error("entry {index}: {message}")]
    Entry { index: usize, message: String },
    #[error("{key}: stored {stored} contradicts {new}")]
    Conflict {
        key: Key,
        stored: BigCount,
        new: BigCount,
    },
    #[error("{key}: cached {cached} but recomputed {recomputed}")]
    Incoherent {
        key: Key,
        cached: BigCount,
        recomputed: BigCount,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv line {line}: {message}")]
    CsvShape { line: usize, message: String },
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheEntry {
    kind: Kind,
    n: usize,
    m: Option<usize>,
    k: Option<usize>,
    count: String,
    provenance: Provenance,
}

/// Keyed store of exact counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTable {
    entries: BTreeMap<Key, (BigCount, Provenance)>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &Key) -> Option<&BigCount> {
        self.entries.get(key).map(|(c, _)| c)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &BigCount, Provenance)> {
        self.entries.iter().map(|(k, (c, p))| (k, c, *p))
    }

    /// Adds an entry. Re-inserting an equal count is a no-op; a different count
    /// for the same key is rejected.
    pub fn insert(
        &mut self,
        key: Key,
        count: BigCount,
        provenance: Provenance,
    ) -> Result<(), TableError> {
        if let Some((stored, _)) = self.entries.get(&key) {
            if *stored != count {
                return Err(TableError::Conflict {
                    key,
                    stored: stored.clone(),
                    new: count,
                });
            }
            return Ok(());
        }
        self.entries.insert(key, (count, provenance));
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let file = CacheFile {
            version: CACHE_VERSION,
            entries: self
                .entries
                .iter()
                .map(|(key, (count, provenance))| CacheEntry {
                    kind: key.kind,
                    n: key.n,
                    m: key.m,
                    k: key.k,
                    count: count.to_string(),
                    provenance: *provenance,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("cache serializes")
    }

    /// Parses a cache without recomputing anything; see [`CountTable::load`].
    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let found = value.get("version").and_then(serde_json::Value::as_u64);
        match found {
            Some(v) if v == CACHE_VERSION as u64 => {}
            Some(v) => {
                return Err(TableError::Version {
                    found: v.min(u32::MAX as u64) as u32,
                })
            }
            None => {
                return Err(TableError::Entry {
                    index: 0,
                    message: "missing numeric \"version\"".into(),
                })
            }
        }
        let file: CacheFile = serde_json::from_value(value)?;
        let mut table = CountTable::new();
        for (index, e) in file.entries.into_iter().enumerate() {
            let key = Key {
                kind: e.kind,
                n: e.n,
                m: e.m,
                k: e.k,
            };
            if !key.well_formed() {
                return Err(TableError::Entry {
                    index,
                    message: format!("fields do not fit kind {}", e.kind),
                });
            }
            let valid = !e.count.is_empty() && e.count.bytes().all(|b| b.is_ascii_digit());
            let count = valid
                .then(|| e.count.parse::<BigCount>().ok())
                .flatten()
                .ok_or_else(|| TableError::Entry {
                    index,
                    message: format!("count {:?} is not a decimal integer", e.count),
                })?;
            table.insert(key, count, e.provenance)?;
        }
        Ok(table)
    }

    /// Parses a cache and recomputes every entry, marking the survivors as cached.
    pub fn load(text: &str, budget: &Budget) -> Result<Self, CrateError> {
        let mut table = Self::from_json(text)?;
        table.check(budget)?;
        for (_, provenance) in table.entries.values_mut() {
            *provenance = Provenance::Cached;
        }
        Ok(table)
    }

    /// Recomputes every entry; the first disagreement is returned as an error.
    pub fn check(&self, budget: &Budget) -> Result<(), CrateError> {
        let mut censuses: BTreeMap<usize, RunCensus> = BTreeMap::new();
        for (key, (cached, _)) in &self.entries {
            let recomputed = match key.kind {
                Kind::FlatK => {
                    let census = match censuses.get(&key.n) {
                        Some(c) => c,
                        None => {
                            let c = flat_census(key.n, budget)?;
                            censuses.entry(key.n).or_insert(c)
                        }
                    };
                    let k = key.k.unwrap_or(0);
                    BigCount::from(census.flattened_by_runs.get(k).copied().unwrap_or(0))
                }
                _ => formula(key),
            };
            if recomputed != *cached {
                return Err(TableError::Incoherent {
                    key: *key,
                    cached: cached.clone(),
                    recomputed,
                }
                .into());
            }
        }
        Ok(())
    }
}

fn formula(key: &Key) -> BigCount {
    match key.kind {
        Kind::Stirling => mstirling_count(key.n, key.m.unwrap_or(2)),
        Kind::Flat => flat_count(key.n),
        Kind::Typeb => dowling(key.n),
        Kind::MstirlingFlat => flatm_recurrence(key.n, key.m.unwrap_or(2)),
        Kind::FlatK => unreachable!("flat_k has no closed form"),
    }
}

/// `|flat(Q_n)|`, with the empty word counted at `n = 0`.
fn flat_count(n: usize) -> BigCount {
    if n == 0 {
        BigCount::from(1u8)
    } else {
        dowling(n - 1)
    }
}

fn flat_census(n: usize, budget: &Budget) -> Result<RunCensus, BudgetExceeded> {
    if n == 0 {
        return flattened_census(0, 2, budget);
    }
    flattened_census_via_bijection(n, budget).map_err(|e| match e {
        crate::bijection::BijectionGenError::Budget(b) => b,
        crate::bijection::BijectionGenError::ZeroOrder => unreachable!(),
    })
}

/// How `flat_k` counts are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableMode {
    /// Scan all of `Q_n` and keep the flattened words.
    Filter,
    /// Map every type B partition of `[-(n-1), n-1]` through the bijection.
    #[default]
    Bijection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatRow {
    pub n: usize,
    pub stirling: BigCount,
    pub flat: BigCount,
    /// `by_runs[k - 1] = |flat_k(Q_n)|`
    pub by_runs: Vec<BigCount>,
}

/// `|Q_n|`, `|flat(Q_n)|` and the split by run count, one row per `n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlatTable {
    pub rows: Vec<FlatRow>,
}

fn row_from_census(n: usize, stirling: BigCount, census: &RunCensus) -> FlatRow {
    let by_runs = (1..=max_runs(n).max(census.max_runs()))
        .map(|k| BigCount::from(census.flattened_by_runs.get(k).copied().unwrap_or(0)))
        .collect();
    FlatRow {
        n,
        stirling,
        flat: BigCount::from(census.flattened()),
        by_runs,
    }
}

/// Builds rows `1..=max_n`. In filter mode `|Q_n|` is the number of words
/// visited; in bijection mode it comes from `(2n - 1)!!`.
pub fn flat_table(
    max_n: usize,
    mode: TableMode,
    budget: &Budget,
) -> Result<FlatTable, BudgetExceeded> {
    let mut rows = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let row = match mode {
            TableMode::Filter => {
                let census = flattened_census(n, 2, budget)?;
                row_from_census(n, BigCount::from(census.total), &census)
            }
            TableMode::Bijection => {
                row_from_census(n, double_factorial(n), &flat_census(n, budget)?)
            }
        };
        rows.push(row);
    }
    Ok(FlatTable { rows })
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ascii output")
}

fn parse_cell(cell: &str, line: usize) -> Result<BigCount, TableError> {
    if cell.is_empty() || !cell.bytes().all(|b| b.is_ascii_digit()) {
        return Err(TableError::CsvShape {
            line,
            message: format!("{cell:?} is not a nonnegative integer"),
        });
    }
    Ok(cell.parse().expect("digits parse"))
}

impl FlatTable {
    /// Widest run column needed by any row.
    pub fn width(&self) -> usize {
        self.rows.iter().map(|r| r.by_runs.len()).max().unwrap_or(0)
    }

    pub fn flat_k(&self, n: usize, k: usize) -> Option<&BigCount> {
        let row = self.rows.iter().find(|r| r.n == n)?;
        k.checked_sub(1).and_then(|i| row.by_runs.get(i))
    }

    /// CSV with header `n,|Q_n|,|flat|,k=1,...`. Columns run to `max_k` when
    /// given, else to the widest row; cells past a row's data are `0`.
    pub fn to_csv(&self, max_k: Option<usize>) -> String {
        let width = max_k.unwrap_or_else(|| self.width());
        let mut w = csv_writer();
        let mut header = vec!["n".to_string(), "|Q_n|".into(), "|flat|".into()];
        header.extend((1..=width).map(|k| format!("k={k}")));
        w.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let mut rec = vec![
                row.n.to_string(),
                row.stirling.to_string(),
                row.flat.to_string(),
            ];
            rec.extend((0..width).map(|i| {
                row.by_runs
                    .get(i)
                    .map_or_else(|| "0".into(), ToString::to_string)
            }));
            w.write_record(&rec).expect("in-memory write");
        }
        finish(w)
    }

    /// Inverse of [`FlatTable::to_csv`] (trailing zero columns are kept).
    pub fn from_csv(text: &str) -> Result<Self, TableError> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let header = r.headers()?.clone();
        let fixed = ["n", "|Q_n|", "|flat|"];
        if header.len() < 3 || header.iter().take(3).ne(fixed) {
            return Err(TableError::CsvShape {
                line: 1,
                message: "header must start with n,|Q_n|,|flat|".into(),
            });
        }
        for (i, h) in header.iter().enumerate().skip(3) {
            if h != format!("k={}", i - 2) {
                return Err(TableError::CsvShape {
                    line: 1,
                    message: format!("expected column k={}, found {h:?}", i - 2),
                });
            }
        }
        let mut rows = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            let line = i + 2;
            let n = rec[0].parse::<usize>().map_err(|_| TableError::CsvShape {
                line,
                message: format!("bad n {:?}", &rec[0]),
            })?;
            let cells = rec
                .iter()
                .skip(1)
                .map(|c| parse_cell(c, line))
                .collect::<Result<Vec<_>, _>>()?;
            let mut it = cells.into_iter();
            let stirling = it.next().expect("width checked by reader");
            let flat = it.next().expect("width checked by reader");
            rows.push(FlatRow {
                n,
                stirling,
                flat,
                by_runs: it.collect(),
            });
        }
        Ok(FlatTable { rows })
    }

    pub fn to_count_table(&self, provenance: Provenance) -> Result<CountTable, TableError> {
        let mut t = CountTable::new();
        for row in &self.rows {
            t.insert(Key::stirling(row.n, 2), row.stirling.clone(), provenance)?;
            t.insert(Key::flat(row.n), row.flat.clone(), provenance)?;
            for (i, c) in row.by_runs.iter().enumerate() {
                t.insert(Key::flat_k(row.n, i + 1), c.clone(), provenance)?;
            }
        }
        Ok(t)
    }
}

/// `|flat(Q_n^m)|` for `n = 1..=max_n` and each listed `m`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiplicityTable {
    pub ms: Vec<usize>,
    /// `cells[n - 1][j]` is the count for `ms[j]`.
    pub cells: Vec<Vec<BigCount>>,
}

/// How the multiplicity table is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplicityMode {
    /// Exhaustive scan of every `Q_n^m`.
    Enumeration,
    /// The recurrence.
    Recurrence,
}

pub fn multiplicity_table(
    max_n: usize,
    ms: &[usize],
    mode: MultiplicityMode,
    budget: &Budget,
) -> Result<MultiplicityTable, BudgetExceeded> {
    let mut cells = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let mut row = Vec::with_capacity(ms.len());
        for &m in ms {
            row.push(match mode {
                MultiplicityMode::Enumeration => {
                    BigCount::from(flattened_census(n, m, budget)?.flattened())
                }
                MultiplicityMode::Recurrence => flatm_recurrence(n, m),
            });
        }
        cells.push(row);
    }
    Ok(MultiplicityTable {
        ms: ms.to_vec(),
        cells,
    })
}

impl MultiplicityTable {
    pub fn get(&self, n: usize, m: usize) -> Option<&BigCount> {
        let j = self.ms.iter().position(|&x| x == m)?;
        self.cells.get(n.checked_sub(1)?).map(|row| &row[j])
    }

    /// CSV with header `n,m=2,m=3,...`.
    pub fn to_csv(&self) -> String {
        let mut w = csv_writer();
        let mut header = vec!["n".to_string()];
        header.extend(self.ms.iter().map(|m| format!("m={m}")));
        w.write_record(&header).expect("in-memory write");
        for (i, row) in self.cells.iter().enumerate() {
            let mut rec = vec![(i + 1).to_string()];
            rec.extend(row.iter().map(ToString::to_string));
            w.write_record(&rec).expect("in-memory write");
        }
        finish(w)
    }

    pub fn from_csv(text: &str) -> Result<Self, TableError> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let header = r.headers()?.clone();
        if header.get(0) != Some("n") {
            return Err(TableError::CsvShape {
                line: 1,
                message: "header must start with n".into(),
            });
        }
        let ms = header
            .iter()
            .skip(1)
            .map(|h| {
                h.strip_prefix("m=")
                    .and_then(|m| m.parse::<usize>().ok())
                    .filter(|&m| m >= 2)
                    .ok_or_else(|| TableError::CsvShape {
                        line: 1,
                        message: format!("bad column {h:?}"),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut cells = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            let line = i + 2;
            if rec[0] != (i + 1).to_string() {
                return Err(TableError::CsvShape {
                    line,
                    message: format!("expected n = {}", i + 1),
                });
            }
            cells.push(
                rec.iter()
                    .skip(1)
                    .map(|c| parse_cell(c, line))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(MultiplicityTable { ms, cells })
    }

    pub fn to_count_table(&self, provenance: Provenance) -> Result<CountTable, TableError> {
        let mut t = CountTable::new();
        for (i, row) in self.cells.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                t.insert(
                    Key::mstirling_flat(i + 1, self.ms[j]),
                    c.clone(),
                    provenance,
                )?;
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn filter_and_bijection_tables_agree() {
        let budget = Budget::default();
        let a = flat_table(6, TableMode::Filter, &budget).unwrap();
        let b = flat_table(6, TableMode::Bijection, &budget).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.flat_k(6, 4), Some(&big(190)));
        assert_eq!(a.rows[5].stirling, big(10395));
    }

    #[test]
    fn csv_layout() {
        let t = flat_table(1, TableMode::Bijection, &Budget::default()).unwrap();
        assert_eq!(t.to_csv(None), "n,|Q_n|,|flat|,k=1\n1,1,1,1\n");
        let t = flat_table(3, TableMode::Bijection, &Budget::default()).unwrap();
        assert_eq!(
            t.to_csv(Some(3)),
            "n,|Q_n|,|flat|,k=1,k=2,k=3\n1,1,1,1,0,0\n2,3,2,1,1,0\n3,15,6,1,5,0\n"
        );
    }

    #[test]
    fn csv_round_trip() {
        let t = flat_table(5, TableMode::Bijection, &Budget::default()).unwrap();
        let text = t.to_csv(None);
        let back = FlatTable::from_csv(&text).unwrap();
        assert_eq!(back.to_csv(None), text);
        let m = multiplicity_table(4, &[2, 3], MultiplicityMode::Recurrence, &Budget::default())
            .unwrap();
        let text = m.to_csv();
        assert_eq!(text, "n,m=2,m=3\n1,1,1\n2,2,3\n3,6,12\n4,24,63\n");
        assert_eq!(MultiplicityTable::from_csv(&text).unwrap(), m);
    }

    #[test]
    fn csv_rejections() {
        assert!(FlatTable::from_csv("n,Q,flat\n").is_err());
        assert!(FlatTable::from_csv("n,|Q_n|,|flat|,k=2\n").is_err());
        assert!(FlatTable::from_csv("n,|Q_n|,|flat|,k=1\n1,1,-1,1\n").is_err());
        assert!(FlatTable::from_csv("n,|Q_n|,|flat|,k=1\n1,1,1\n").is_err());
        assert!(MultiplicityTable::from_csv("n,m=1\n").is_err());
        assert!(MultiplicityTable::from_csv("n,m=2\n2,1\n").is_err());
    }

    #[test]
    fn enumerated_multiplicity_table_matches_recurrence() {
        let budget = Budget::default();
        let a = multiplicity_table(4, &[2, 3, 4], MultiplicityMode::Enumeration, &budget).unwrap();
        let b = multiplicity_table(4, &[2, 3, 4], MultiplicityMode::Recurrence, &budget).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.get(4, 4), Some(&big(128)));
    }

    #[test]
    fn cache_round_trip_and_check() {
        let budget = Budget::default();
        let mut t = flat_table(5, TableMode::Bijection, &budget)
            .unwrap()
            .to_count_table(Provenance::Enumeration)
            .unwrap();
        t.insert(Key::typeb(4), big(116), Provenance::Formula)
            .unwrap();
        t.insert(Key::mstirling_flat(3, 4), big(20), Provenance::Formula)
            .unwrap();
        let text = t.to_json();
        assert_eq!(CountTable::from_json(&text).unwrap(), t);
        let loaded = CountTable::load(&text, &budget).unwrap();
        assert!(loaded.iter().all(|(_, _, p)| p == Provenance::Cached));
        assert_eq!(loaded.get(&Key::flat_k(5, 3)), Some(&big(70)));
    }

    #[test]
    fn tampered_cache_is_rejected() {
        let mut t = CountTable::new();
        t.insert(Key::flat_k(4, 2), big(16), Provenance::Enumeration)
            .unwrap();
        let err = CountTable::load(&t.to_json(), &Budget::default()).unwrap_err();
        assert!(err.to_string().contains("recomputed 15"), "{err}");
    }

    #[test]
    fn insert_conflicts() {
        let mut t = CountTable::new();
        t.insert(Key::flat(3), big(6), Provenance::Formula).unwrap();
        t.insert(Key::flat(3), big(6), Provenance::Enumeration)
            .unwrap();
        assert!(matches!(
            t.insert(Key::flat(3), big(7), Provenance::Formula),
            Err(TableError::Conflict { .. })
        ));
    }

    #[test]
    fn malformed_cache_files() {
        let bad = [
            "",
            "{}",
            r#"{"version":2,"entries":[]}"#,
            r#"{"version":1}"#,
            r#"{"version":1,"entries":[{"kind":"flat","n":3,"m":2,"k":null,"count":"6x","provenance":"formula"}]}"#,
            r#"{"version":1,"entries":[{"kind":"typeb","n":3,"m":2,"k":null,"count":"24","provenance":"formula"}]}"#,
            r#"{"version":1,"entries":[{"kind":"nope","n":3,"m":2,"k":null,"count":"24","provenance":"formula"}]}"#,
            r#"{"version":1,"entries":[{"kind":"flat","n":3,"m":2,"k":null,"count":"6","provenance":"formula","x":1}]}"#,
        ];
        for text in bad {
            assert!(CountTable::from_json(text).is_err(), "{text}");
        }
    }
}
