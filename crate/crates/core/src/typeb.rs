//! Type B set partitions of `[-n, n]` in Adler's canonical form.
//!
//! A type B partition is a set partition of `{-n, ..., n}` closed under
//! negation with exactly one block equal to its own negation (the zero-block).
//! The canonical form keeps one block of each pair `{β, -β}` (the one holding
//! the smaller positive element), strips the negatives from the zero-block,
//! sorts blocks by their least positive element, and writes each block as its
//! negatives in decreasing order followed by its positives in increasing order:
//!
//! ```text
//! 0 | 1 | -8 2 7 | -9 -10 3 5 6 | 4
//! ```
//!
//! Negatives are stored as magnitudes, so every value of `0..=n` appears exactly
//! once across a canonical partition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::enumeration::dowling;

/// One non-zero block `N_i P_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignedBlock {
    /// Magnitudes of the negative elements, smallest magnitude first
    /// (decreasing as signed values).
    pub negatives: Vec<u32>,
    /// Positive elements, increasing.
    pub positives: Vec<u32>,
}

impl SignedBlock {
    pub fn new(negatives: Vec<u32>, positives: Vec<u32>) -> Self {
        Self {
            negatives,
            positives,
        }
    }

    /// All elements as signed values in canonical order.
    pub fn signed(&self) -> impl Iterator<Item = i64> + '_ {
        self.negatives
            .iter()
            .map(|&v| -(v as i64))
            .chain(self.positives.iter().map(|&v| v as i64))
    }

    pub fn min_positive(&self) -> Option<u32> {
        self.positives.iter().copied().min()
    }
}

/// A type B partition in canonical (Adler) form.
///
/// Fields are public so arbitrary candidates can be assembled and checked with
/// [`TypeBPartition::validate_canonical`]; the maps in this crate reject
/// candidates that fail it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeBPartition {
    pub n: usize,
    /// `P_0`: nonnegative, increasing, starts with 0.
    pub zero_block: Vec<u32>,
    pub blocks: Vec<SignedBlock>,
}

/// A broken canonical-form rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Error)]
pub enum Violation {
    #[error("zero-block does not contain 0")]
    ZeroBlockMissingZero,
    #[error("zero-block contains negative element -{0}")]
    ZeroBlockNegative(u32),
    #[error("zero-block is not strictly increasing")]
    ZeroBlockNotIncreasing,
    #[error("block {block} has no positive element")]
    EmptyPositives { block: usize },
    #[error("block {block} contains 0")]
    ZeroOutsideZeroBlock { block: usize },
    #[error("block {block}: negative element written after a positive one")]
    NegativeAfterPositive { block: usize },
    #[error("block {block}: negatives are not in decreasing order")]
    NegativesNotDecreasing { block: usize },
    #[error("block {block}: positives are not in increasing order")]
    PositivesNotIncreasing { block: usize },
    #[error("block {block}: smallest negative magnitude is below the least positive element")]
    NegativeBelowMinPositive { block: usize },
    #[error("block {block}: least positive element does not exceed that of the previous block")]
    BlocksOutOfOrder { block: usize },
    #[error("magnitude {value} exceeds n")]
    OutOfRange { value: u32 },
    #[error("magnitude {value} appears more than once")]
    RepeatedValue { value: u32 },
    #[error("magnitude {value} is missing")]
    MissingValue { value: u32 },
}

/// Errors from [`canonicalize`] on a raw block family.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("element {value} lies outside [-n, n]")]
    OutOfRange { value: i64 },
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("blocks are not disjoint: {value} appears twice")]
    Overlap { value: i64 },
    #[error("blocks do not cover [-n, n]: {value} is missing")]
    Uncovered { value: i64 },
    #[error("block {block} has no negated partner block")]
    NotClosedUnderNegation { block: usize },
    #[error("no block equals its own negation")]
    NoZeroBlock,
    #[error("{count} blocks equal their own negation, expected exactly one")]
    SeveralZeroBlocks { count: usize },
}

/// Errors from [`parse_adler`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdlerError {
    #[error("syntax error at byte {pos}: expected {expected}, found {found:?}")]
    Syntax {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("not canonical: {}", crate::error::join_violations(.0))]
    NonCanonical(Vec<Violation>),
}

fn strictly_increasing(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl TypeBPartition {
    /// The single partition `0` of `[0, 0]`.
    pub fn trivial() -> Self {
        Self {
            n: 0,
            zero_block: vec![0],
            blocks: Vec::new(),
        }
    }

    /// Number of block pairs (non-zero blocks).
    pub fn block_pair_count(&self) -> usize {
        self.blocks.len()
    }

    /// Every broken rule; empty when the partition is canonical.
    pub fn validate_canonical(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.zero_block.contains(&0) {
            out.push(Violation::ZeroBlockMissingZero);
        }
        if !strictly_increasing(&self.zero_block) {
            out.push(Violation::ZeroBlockNotIncreasing);
        }
        let mut prev_min = Some(0u32);
        for (i, b) in self.blocks.iter().enumerate() {
            let block = i + 1;
            if b.positives.is_empty() {
                out.push(Violation::EmptyPositives { block });
            }
            if b.positives.contains(&0) || b.negatives.contains(&0) {
                out.push(Violation::ZeroOutsideZeroBlock { block });
            }
            if !strictly_increasing(&b.negatives) {
                out.push(Violation::NegativesNotDecreasing { block });
            }
            if !strictly_increasing(&b.positives) {
                out.push(Violation::PositivesNotIncreasing { block });
            }
            let min_pos = b.min_positive();
            if let (Some(neg), Some(pos)) = (b.negatives.iter().min(), min_pos) {
                if *neg < pos {
                    out.push(Violation::NegativeBelowMinPositive { block });
                }
            }
            match (prev_min, min_pos) {
                (Some(p), Some(c)) if c <= p => out.push(Violation::BlocksOutOfOrder { block }),
                _ => {}
            }
            if min_pos.is_some() {
                prev_min = min_pos;
            }
        }
        let mut seen = vec![false; self.n + 1];
        let all = self.zero_block.iter().chain(
            self.blocks
                .iter()
                .flat_map(|b| b.negatives.iter().chain(&b.positives)),
        );
        let mut reported = BTreeSet::new();
        for &v in all {
            if v as usize > self.n {
                out.push(Violation::OutOfRange { value: v });
            } else if std::mem::replace(&mut seen[v as usize], true) && reported.insert(v) {
                out.push(Violation::RepeatedValue { value: v });
            }
        }
        for (v, s) in seen.iter().enumerate() {
            if !s {
                out.push(Violation::MissingValue { value: v as u32 });
            }
        }
        out
    }

    pub fn is_canonical(&self) -> bool {
        self.validate_canonical().is_empty()
    }

    pub(crate) fn ensure_canonical(&self) -> Result<(), Vec<Violation>> {
        let v = self.validate_canonical();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    /// The full block family on `[-n, n]`: the zero-block with its negatives
    /// restored, then each kept block followed by its negation. Every block is
    /// sorted ascending.
    pub fn expand(&self) -> Result<Vec<Vec<i64>>, Vec<Violation>> {
        self.ensure_canonical()?;
        let mut out = Vec::with_capacity(2 * self.blocks.len() + 1);
        let mut zero: Vec<i64> = self
            .zero_block
            .iter()
            .flat_map(|&v| [v as i64, -(v as i64)])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        zero.sort_unstable();
        out.push(zero);
        for b in &self.blocks {
            let mut pos: Vec<i64> = b.signed().collect();
            pos.sort_unstable();
            let mut neg: Vec<i64> = pos.iter().map(|v| -v).collect();
            neg.sort_unstable();
            out.push(pos);
            out.push(neg);
        }
        Ok(out)
    }

    /// Magnitudes of the positive part of each block, zero-block first.
    pub fn positive_parts(&self) -> impl Iterator<Item = &[u32]> {
        std::iter::once(self.zero_block.as_slice())
            .chain(self.blocks.iter().map(|b| b.positives.as_slice()))
    }
}

/// Canonical form of a type B partition given as an arbitrary family of blocks
/// over `[-n, n]`. Block order and element order within blocks do not matter.
pub fn canonicalize(n: usize, blocks: &[Vec<i64>]) -> Result<TypeBPartition, FamilyError> {
    let bound = n as i64;
    let mut owner: BTreeMap<i64, usize> = BTreeMap::new();
    let mut sets: Vec<BTreeSet<i64>> = Vec::with_capacity(blocks.len());
    for (i, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(FamilyError::EmptyBlock { block: i });
        }
        let mut set = BTreeSet::new();
        for &v in block {
            if v.abs() > bound {
                return Err(FamilyError::OutOfRange { value: v });
            }
            if owner.insert(v, i).is_some() || !set.insert(v) {
                return Err(FamilyError::Overlap { value: v });
            }
        }
        sets.push(set);
    }
    if let Some(value) = (-bound..=bound).find(|v| !owner.contains_key(v)) {
        return Err(FamilyError::Uncovered { value });
    }
    let index: BTreeMap<&BTreeSet<i64>, usize> =
        sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut zero = None;
    let mut self_negative = 0;
    let mut kept = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let neg: BTreeSet<i64> = s.iter().map(|v| -v).collect();
        let Some(&j) = index.get(&neg) else {
            return Err(FamilyError::NotClosedUnderNegation { block: i });
        };
        if j == i {
            self_negative += 1;
            zero = Some(i);
            continue;
        }
        let min_pos = |set: &BTreeSet<i64>| set.range(1..).next().copied().unwrap_or(i64::MAX);
        if min_pos(s) < min_pos(&sets[j]) {
            kept.push(i);
        }
    }
    let zero = match (self_negative, zero) {
        (1, Some(z)) => z,
        (0, _) => return Err(FamilyError::NoZeroBlock),
        (count, _) => return Err(FamilyError::SeveralZeroBlocks { count }),
    };
    let zero_block: Vec<u32> = sets[zero].range(0..).map(|&v| v as u32).collect();
    let mut out: Vec<SignedBlock> = kept
        .into_iter()
        .map(|i| {
            let s = &sets[i];
            SignedBlock {
                negatives: s.range(..0).rev().map(|&v| (-v) as u32).collect(),
                positives: s.range(1..).map(|&v| v as u32).collect(),
            }
        })
        .collect();
    out.sort_by_key(|b| b.positives[0]);
    Ok(TypeBPartition {
        n,
        zero_block,
        blocks: out,
    })
}

/// Iterator over all canonical type B partitions of `[-n, n]`.
///
/// Order: zero-block supports (subsets of `[n]`) in lexicographic order of their
/// sorted element lists; for each, partitions of the remaining elements in
/// restricted-growth-string order; for each, sign patterns on the non-minimal
/// elements in binary counting order (least significant bit = smallest such
/// element, a set bit makes it negative).
#[derive(Debug, Clone)]
pub struct TypeBPartitions {
    n: usize,
    support: Vec<u32>,
    rest: Vec<u32>,
    rgs: Vec<usize>,
    signs: u64,
    sign_limit: u64,
    single_support: bool,
    done: bool,
}

fn next_lex_subset(subset: &mut Vec<u32>, n: u32) -> bool {
    match subset.last().copied() {
        None if n == 0 => false,
        None => {
            subset.push(1);
            true
        }
        Some(last) if last < n => {
            subset.push(last + 1);
            true
        }
        Some(_) => {
            subset.pop();
            match subset.last_mut() {
                Some(l) => {
                    *l += 1;
                    true
                }
                None => false,
            }
        }
    }
}

fn next_rgs(rgs: &mut [usize]) -> bool {
    // prefix maxima are recomputed; lengths here are small
    for i in (1..rgs.len()).rev() {
        let max_before = rgs[..i].iter().copied().max().unwrap_or(0);
        if rgs[i] <= max_before {
            rgs[i] += 1;
            rgs[i + 1..].iter_mut().for_each(|x| *x = 0);
            return true;
        }
    }
    false
}

fn block_count(rgs: &[usize]) -> usize {
    rgs.iter().max().map_or(0, |m| m + 1)
}

impl TypeBPartitions {
    fn with_support(n: usize, support: Vec<u32>, single_support: bool) -> Self {
        let mut it = Self {
            n,
            support: Vec::new(),
            rest: Vec::new(),
            rgs: Vec::new(),
            signs: 0,
            sign_limit: 1,
            single_support,
            done: false,
        };
        it.reset_support(support);
        it
    }

    fn reset_support(&mut self, support: Vec<u32>) {
        self.rest = (1..=self.n as u32)
            .filter(|v| !support.contains(v))
            .collect();
        self.support = support;
        self.rgs = vec![0; self.rest.len()];
        self.reset_signs();
    }

    fn reset_signs(&mut self) {
        self.signs = 0;
        self.sign_limit = 1u64 << (self.rest.len() - block_count(&self.rgs));
    }

    fn current(&self) -> TypeBPartition {
        let k = block_count(&self.rgs);
        let mut blocks = vec![SignedBlock::default(); k];
        let mut bit = 0;
        for (&v, &b) in self.rest.iter().zip(&self.rgs) {
            let block = &mut blocks[b];
            if block.positives.is_empty() {
                block.positives.push(v);
            } else {
                if self.signs >> bit & 1 == 1 {
                    block.negatives.push(v);
                } else {
                    block.positives.push(v);
                }
                bit += 1;
            }
        }
        let mut zero_block = Vec::with_capacity(self.support.len() + 1);
        zero_block.push(0);
        zero_block.extend_from_slice(&self.support);
        TypeBPartition {
            n: self.n,
            zero_block,
            blocks,
        }
    }

    fn advance(&mut self) {
        self.signs += 1;
        if self.signs < self.sign_limit {
            return;
        }
        if next_rgs(&mut self.rgs) {
            self.reset_signs();
            return;
        }
        let mut support = std::mem::take(&mut self.support);
        if !self.single_support && next_lex_subset(&mut support, self.n as u32) {
            self.reset_support(support);
        } else {
            self.done = true;
        }
    }
}

impl Iterator for TypeBPartitions {
    type Item = TypeBPartition;

    fn next(&mut self) -> Option<TypeBPartition> {
        if self.done {
            return None;
        }
        let p = self.current();
        self.advance();
        Some(p)
    }
}

/// Every canonical type B partition of `[-n, n]`, each exactly once.
pub fn generate_typeb(n: usize, budget: &Budget) -> Result<TypeBPartitions, BudgetExceeded> {
    budget.check(format!("type B partitions of [-{n}, {n}]"), &dowling(n))?;
    Ok(TypeBPartitions::with_support(n, Vec::new(), false))
}

/// The zero-block supports in generation order, for splitting work.
pub fn zero_supports(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut s = Vec::new();
    while next_lex_subset(&mut s, n as u32) {
        out.push(s.clone());
    }
    out
}

/// Partitions of `[-n, n]` whose zero-block is `{0} ∪ support` (support sorted,
/// drawn from `[n]`), in generation order.
pub fn generate_typeb_with_support(n: usize, support: Vec<u32>) -> TypeBPartitions {
    debug_assert!(
        strictly_increasing(&support) && support.iter().all(|&v| v >= 1 && v as usize <= n)
    );
    TypeBPartitions::with_support(n, support, true)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn found(&self) -> String {
        match self.text[self.pos..].chars().next() {
            Some(c) => c.to_string(),
            None => "end of input".to_string(),
        }
    }

    fn error(&self, expected: &'static str) -> AdlerError {
        AdlerError::Syntax {
            pos: self.pos,
            expected,
            found: self.found(),
        }
    }

    fn element(&mut self) -> Result<i64, AdlerError> {
        let start = self.pos;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        match self.peek() {
            Some(b'0') if !negative => {
                self.pos += 1;
                if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error("separator after 0"));
                }
                return Ok(0);
            }
            Some(b'1'..=b'9') => {}
            _ => {
                return Err(self.error(if negative {
                    "nonzero digit after '-'"
                } else {
                    "element"
                }))
            }
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let value: u32 =
            self.text[digits_start..self.pos]
                .parse()
                .map_err(|_| AdlerError::Syntax {
                    pos: start,
                    expected: "element below 2^32",
                    found: self.text[start..self.pos].to_string(),
                })?;
        Ok(if negative {
            -(value as i64)
        } else {
            value as i64
        })
    }
}

/// Parses Adler text. Syntax errors and canonical-form violations are
/// reported separately.
pub fn parse_adler(text: &str) -> Result<TypeBPartition, AdlerError> {
    let mut cur = Cursor { text, pos: 0 };
    let mut raw: Vec<Vec<i64>> = vec![Vec::new()];
    cur.skip_ws();
    raw[0].push(cur.element()?);
    loop {
        let had_ws = cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'|') => {
                cur.pos += 1;
                cur.skip_ws();
                raw.push(vec![cur.element()?]);
            }
            Some(_) if had_ws => raw.last_mut().unwrap().push(cur.element()?),
            Some(_) => return Err(cur.error("' ', '|' or end of input")),
        }
    }

    let mut violations = Vec::new();
    let mut zero_block = Vec::new();
    for &v in &raw[0] {
        if v < 0 {
            violations.push(Violation::ZeroBlockNegative((-v) as u32));
        } else {
            zero_block.push(v as u32);
        }
    }
    let mut blocks = Vec::with_capacity(raw.len() - 1);
    for (i, elements) in raw[1..].iter().enumerate() {
        let mut b = SignedBlock::default();
        let mut seen_positive = false;
        let mut flagged = false;
        for &v in elements {
            if v < 0 {
                if seen_positive && !flagged {
                    violations.push(Violation::NegativeAfterPositive { block: i + 1 });
                    flagged = true;
                }
                b.negatives.push((-v) as u32);
            } else {
                seen_positive = true;
                b.positives.push(v as u32);
            }
        }
        blocks.push(b);
    }
    let count = raw.iter().map(Vec::len).sum::<usize>();
    let p = TypeBPartition {
        n: count - 1,
        zero_block,
        blocks,
    };
    violations.extend(p.validate_canonical());
    if violations.is_empty() {
        Ok(p)
    } else {
        violations.sort();
        violations.dedup();
        Err(AdlerError::NonCanonical(violations))
    }
}

/// Canonical Adler text: single spaces inside blocks, `" | "` between blocks.
pub fn format_adler(p: &TypeBPartition) -> String {
    let mut parts = Vec::with_capacity(p.blocks.len() + 1);
    parts.push(
        p.zero_block
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    for b in &p.blocks {
        parts.push(
            b.signed()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
    }
    parts.join(" | ")
}

impl fmt::Display for TypeBPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_adler(self))
    }
}

impl FromStr for TypeBPartition {
    type Err = AdlerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_adler(s)
    }
}
