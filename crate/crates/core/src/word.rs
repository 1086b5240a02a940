//! Stirling words on the multiset `{1^m, 2^m, ..., n^m}`, their run statistics,
//! and exhaustive generators.
//!
//! A word is *Stirling* when every letter strictly between the first and last
//! copy of `v` is larger than `v`. Its *runs* are the maximal weakly increasing
//! factors, and it is *flattened* when the first letters of the runs form a
//! weakly increasing sequence.
//!
//! Generation uses the insertion construction: every word of order `n` is
//! obtained exactly once from a word of order `n - 1` by inserting the block
//! `n^m` into one of its `(n - 1)m + 1` gaps. Gaps are numbered from the left
//! (gap 0 is before the first letter) and the gap of the largest letter varies
//! fastest, so the first word of order 3 and multiplicity 2 is `3 3 2 2 1 1` and
//! the last is `1 1 2 2 3 3`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::enumeration::mstirling_count;

/// A letter of a word. Values start at 1.
pub type Letter = u16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("invalid letter {token:?} at byte {pos}")]
    InvalidToken { pos: usize, token: String },
    #[error("letter {letter} occurs {count} times, expected {expected}")]
    WrongCount {
        letter: Letter,
        count: usize,
        expected: usize,
    },
    #[error("Stirling condition fails at index {index} (letter {letter})")]
    NotStirling { index: usize, letter: Letter },
}

/// A validated m-Stirling word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StirlingWord {
    letters: Vec<Letter>,
    order: usize,
    multiplicity: usize,
}

/// Maximal weakly increasing segmentation of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecomposition {
    pub segments: Vec<Range<usize>>,
    pub leading_terms: Vec<Letter>,
}

impl RunDecomposition {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

/// Checks the multiset and the Stirling condition, reporting the first violation.
///
/// The word must use every value in `1..=max` exactly `m` times.
pub fn check_stirling(letters: &[Letter], m: usize) -> Result<(), WordError> {
    if m == 0 {
        return Err(WordError::ZeroMultiplicity);
    }
    let order = letters.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0usize; order + 1];
    // Values seen but not yet closed; strictly increasing from bottom to top.
    let mut open: Vec<Letter> = Vec::new();
    for (index, &letter) in letters.iter().enumerate() {
        if letter == 0 {
            return Err(WordError::InvalidToken {
                pos: index,
                token: "0".into(),
            });
        }
        let c = &mut counts[letter as usize];
        if *c == m {
            return Err(WordError::WrongCount {
                letter,
                count: m + 1,
                expected: m,
            });
        }
        if *c == 0 {
            if open.last().is_some_and(|&top| top > letter) {
                return Err(WordError::NotStirling { index, letter });
            }
            open.push(letter);
        } else if open.last() != Some(&letter) {
            return Err(WordError::NotStirling { index, letter });
        }
        *c += 1;
        if *c == m {
            open.pop();
        }
    }
    for (v, &c) in counts.iter().enumerate().skip(1) {
        if c != m {
            return Err(WordError::WrongCount {
                letter: v as Letter,
                count: c,
                expected: m,
            });
        }
    }
    Ok(())
}

pub fn is_stirling(letters: &[Letter], m: usize) -> bool {
    check_stirling(letters, m).is_ok()
}

pub fn run_decomposition(letters: &[Letter]) -> RunDecomposition {
    let mut segments = Vec::new();
    let mut leading_terms = Vec::new();
    let mut start = 0;
    for i in 1..=letters.len() {
        if i == letters.len() || letters[i] < letters[i - 1] {
            if i > start {
                segments.push(start..i);
                leading_terms.push(letters[start]);
            }
            start = i;
        }
    }
    RunDecomposition {
        segments,
        leading_terms,
    }
}

pub fn descent_count(letters: &[Letter]) -> usize {
    letters.windows(2).filter(|w| w[0] > w[1]).count()
}

pub fn is_flattened(letters: &[Letter]) -> bool {
    flattened_runs(letters).is_some()
}

/// Number of runs if the word is flattened, `None` otherwise. Single pass.
#[inline]
pub fn flattened_runs(letters: &[Letter]) -> Option<usize> {
    let Some(&first) = letters.first() else {
        return Some(0);
    };
    let mut runs = 1;
    let mut lead = first;
    for w in letters.windows(2) {
        if w[1] < w[0] {
            if w[1] < lead {
                return None;
            }
            lead = w[1];
            runs += 1;
        }
    }
    Some(runs)
}

impl StirlingWord {
    pub fn new(letters: Vec<Letter>, multiplicity: usize) -> Result<Self, WordError> {
        check_stirling(&letters, multiplicity)?;
        let order = letters.iter().copied().max().unwrap_or(0) as usize;
        Ok(Self {
            letters,
            order,
            multiplicity,
        })
    }

    /// Caller guarantees the Stirling property.
    pub(crate) fn from_trusted(letters: Vec<Letter>, multiplicity: usize) -> Self {
        debug_assert!(
            is_stirling(&letters, multiplicity),
            "not Stirling: {letters:?}"
        );
        let order = letters.len() / multiplicity;
        Self {
            letters,
            order,
            multiplicity,
        }
    }

    /// Parses canonical space separated text, or a compact digit string when
    /// every letter is a single digit.
    pub fn parse(text: &str, multiplicity: usize) -> Result<Self, WordError> {
        Self::new(parse_letters(text)?, multiplicity)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn runs(&self) -> RunDecomposition {
        run_decomposition(&self.letters)
    }

    pub fn run_count(&self) -> usize {
        if self.letters.is_empty() {
            0
        } else {
            self.descent_count() + 1
        }
    }

    pub fn descent_count(&self) -> usize {
        descent_count(&self.letters)
    }

    pub fn is_flattened(&self) -> bool {
        is_flattened(&self.letters)
    }
}

/// Splits word text into letters without checking the Stirling property.
pub fn parse_letters(text: &str) -> Result<Vec<Letter>, WordError> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    if !trimmed.contains(char::is_whitespace) {
        return trimmed
            .char_indices()
            .map(|(i, c)| match c.to_digit(10) {
                Some(d) if d > 0 => Ok(d as Letter),
                _ => Err(WordError::InvalidToken {
                    pos: offset + i,
                    token: c.to_string(),
                }),
            })
            .collect();
    }
    let mut letters = Vec::new();
    let mut rest = text;
    let mut pos = 0;
    loop {
        let skipped = rest.len() - rest.trim_start().len();
        pos += skipped;
        rest = &rest[skipped..];
        if rest.is_empty() {
            break;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = &rest[..end];
        let valid = !token.starts_with('0') && token.bytes().all(|b| b.is_ascii_digit());
        match token.parse::<Letter>() {
            Ok(v) if valid && v > 0 => letters.push(v),
            _ => {
                return Err(WordError::InvalidToken {
                    pos,
                    token: token.to_string(),
                })
            }
        }
        pos += end;
        rest = &rest[end..];
    }
    Ok(letters)
}

pub fn format_letters(letters: &[Letter]) -> String {
    let mut s = String::with_capacity(letters.len() * 3);
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&l.to_string());
    }
    s
}

impl fmt::Display for StirlingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}

/// Parses with multiplicity 2.
impl FromStr for StirlingWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, 2)
    }
}

fn insert_block(word: &mut Vec<Letter>, gap: usize, letter: Letter, m: usize) {
    word.splice(gap..gap, std::iter::repeat_n(letter, m));
}

fn remove_block(word: &mut Vec<Letter>, gap: usize, m: usize) {
    word.drain(gap..gap + m);
}

/// Iterator over all m-Stirling words of order `n` in insertion order.
#[derive(Debug, Clone)]
pub struct StirlingWords {
    n: usize,
    m: usize,
    // gaps[v - 1] is the gap chosen for letter v
    gaps: Vec<usize>,
    word: Vec<Letter>,
    started: bool,
    done: bool,
}

impl StirlingWords {
    fn new(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            gaps: vec![0; n],
            word: Vec::with_capacity(n * m),
            started: false,
            done: false,
        }
    }

    fn rebuild_from(&mut self, v: usize) {
        let keep = v as Letter;
        self.word.retain(|&l| l < keep);
        for u in v..=self.n {
            insert_block(&mut self.word, self.gaps[u - 1], u as Letter, self.m);
        }
    }
}

impl Iterator for StirlingWords {
    type Item = StirlingWord;

    fn next(&mut self) -> Option<StirlingWord> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n > 0 {
                self.rebuild_from(1);
            }
        } else {
            let Some(v) = (2..=self.n)
                .rev()
                .find(|&v| self.gaps[v - 1] < (v - 1) * self.m)
            else {
                self.done = true;
                return None;
            };
            self.gaps[v - 1] += 1;
            self.gaps[v..].iter_mut().for_each(|g| *g = 0);
            self.rebuild_from(v);
        }
        Some(StirlingWord::from_trusted(self.word.clone(), self.m))
    }
}

/// Every m-Stirling word of order `n`, each exactly once, in insertion order.
pub fn generate_stirling(
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<StirlingWords, BudgetExceeded> {
    assert!(m >= 1, "multiplicity must be at least 1");
    budget.check(format!("Q_{n}^{m}"), &mstirling_count(n, m))?;
    Ok(StirlingWords::new(n, m))
}

/// The flattened words of [`generate_stirling`], in the same order.
pub fn generate_flattened_filter(
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<impl Iterator<Item = StirlingWord>, BudgetExceeded> {
    Ok(generate_stirling(n, m, budget)?.filter(StirlingWord::is_flattened))
}

/// Depth-first visit of every word whose letters `1..=prefix.len()` sit in the
/// given gaps, in insertion order.
fn visit_from_prefix<F: FnMut(&[Letter])>(n: usize, m: usize, prefix: &[usize], f: &mut F) {
    let mut word = Vec::with_capacity(n * m);
    for (i, &g) in prefix.iter().enumerate() {
        insert_block(&mut word, g, (i + 1) as Letter, m);
    }
    fn rec<F: FnMut(&[Letter])>(v: usize, n: usize, m: usize, word: &mut Vec<Letter>, f: &mut F) {
        if v > n {
            f(word);
            return;
        }
        for gap in 0..=word.len() {
            insert_block(word, gap, v as Letter, m);
            rec(v + 1, n, m, word, f);
            remove_block(word, gap, m);
        }
    }
    rec(prefix.len() + 1, n, m, &mut word, f);
}

/// Visits every m-Stirling word of order `n` as a borrowed slice; same order
/// as [`generate_stirling`] but without per-word allocation.
pub fn visit_stirling<F: FnMut(&[Letter])>(
    n: usize,
    m: usize,
    budget: &Budget,
    mut f: F,
) -> Result<(), BudgetExceeded> {
    budget.check(format!("Q_{n}^{m}"), &mstirling_count(n, m))?;
    visit_from_prefix(n, m, &[], &mut f);
    Ok(())
}

/// All gap prefixes deep enough to give at least `min_tasks` independent subtrees.
fn task_prefixes(n: usize, m: usize, min_tasks: usize) -> Vec<Vec<usize>> {
    let mut prefixes = vec![Vec::new()];
    let mut depth = 0;
    while depth < n && prefixes.len() < min_tasks {
        let gaps = depth * m + 1;
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                (0..gaps).map(move |g| {
                    let mut q = p.clone();
                    q.push(g);
                    q
                })
            })
            .collect();
        depth += 1;
    }
    prefixes
}

/// Census of an exhaustive pass over `Q_n^m`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunCensus {
    /// Number of Stirling words visited.
    pub total: u64,
    /// `flattened_by_runs[k]` counts flattened words with exactly `k` runs.
    pub flattened_by_runs: Vec<u64>,
}

impl RunCensus {
    pub fn flattened(&self) -> u64 {
        self.flattened_by_runs.iter().sum()
    }

    pub fn max_runs(&self) -> usize {
        self.flattened_by_runs
            .iter()
            .rposition(|&c| c > 0)
            .unwrap_or(0)
    }

    pub(crate) fn record(&mut self, runs: usize) {
        if self.flattened_by_runs.len() <= runs {
            self.flattened_by_runs.resize(runs + 1, 0);
        }
        self.flattened_by_runs[runs] += 1;
    }

    pub(crate) fn merge(mut self, other: Self) -> Self {
        self.total += other.total;
        if self.flattened_by_runs.len() < other.flattened_by_runs.len() {
            self.flattened_by_runs
                .resize(other.flattened_by_runs.len(), 0);
        }
        for (a, b) in self
            .flattened_by_runs
            .iter_mut()
            .zip(other.flattened_by_runs)
        {
            *a += b;
        }
        self
    }
}

/// Brute-force census: visits all of `Q_n^m` in parallel and tallies the
/// flattened words by run count.
pub fn flattened_census(n: usize, m: usize, budget: &Budget) -> Result<RunCensus, BudgetExceeded> {
    budget.check(format!("Q_{n}^{m}"), &mstirling_count(n, m))?;
    let tasks = task_prefixes(n, m, 512);
    Ok(tasks
        .par_iter()
        .map(|prefix| {
            let mut census = RunCensus::default();
            visit_from_prefix(n, m, prefix, &mut |w: &[Letter]| {
                census.total += 1;
                if let Some(r) = flattened_runs(w) {
                    census.record(r);
                }
            });
            census
        })
        .reduce(RunCensus::default, RunCensus::merge))
}
