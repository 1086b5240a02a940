//! The bijection between type B partitions of `[-n, n]` and flattened Stirling
//! words of order `n + 1`.
//!
//! Forward, every block `N_i P_i` is written as `f(h(N_i)) g(h(P_i))` where
//! `h` shifts magnitudes up by one, `f` doubles each letter in increasing order
//! and `g` doubles all but the least letter and wraps the result in it:
//!
//! ```text
//! 0 | 1 | -8 2 7 | -9 -10 3 5 6 | 4
//! 11 | 22 | 99 3883 | 10 10 11 11 466774 | 55
//! ```
//!
//! The inverse scans from the right: the last letter and its first copy bound
//! a `P` segment, and the maximal run of larger letters just before it is the
//! matching `N` segment.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::budget::{Budget, BudgetExceeded};
use crate::enumeration::dowling;
use crate::error::BijectionError;
use crate::typeb::{
    generate_typeb, generate_typeb_with_support, zero_supports, SignedBlock, TypeBPartition,
};
use crate::word::{flattened_runs, is_flattened, is_stirling, Letter, RunCensus, StirlingWord};

/// `h(S) = {|i| + 1 : i in S}`.
pub fn map_h<I: IntoIterator<Item = i64>>(set: I) -> BTreeSet<Letter> {
    set.into_iter()
        .map(|i| (i.unsigned_abs() + 1) as Letter)
        .collect()
}

/// `s1 s1 s2 s2 ... sk sk`.
pub fn map_f(set: &BTreeSet<Letter>) -> Vec<Letter> {
    set.iter().flat_map(|&s| [s, s]).collect()
}

/// `s1 s2 s2 ... sk sk s1`.
pub fn map_g(set: &BTreeSet<Letter>) -> Vec<Letter> {
    let mut it = set.iter().copied();
    let Some(first) = it.next() else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(2 * set.len());
    out.push(first);
    for s in it {
        out.extend([s, s]);
    }
    out.push(first);
    out
}

// Same as map_f / map_g on already-sorted magnitudes, without the set.
fn push_f(out: &mut Vec<Letter>, magnitudes: &[u32]) {
    for &v in magnitudes {
        let l = (v + 1) as Letter;
        out.extend([l, l]);
    }
}

fn push_g(out: &mut Vec<Letter>, magnitudes: &[u32]) {
    let Some((&first, rest)) = magnitudes.split_first() else {
        return;
    };
    let first = (first + 1) as Letter;
    out.push(first);
    push_f(out, rest);
    out.push(first);
}

pub(crate) fn phi_letters(p: &TypeBPartition) -> Vec<Letter> {
    let mut out = Vec::with_capacity(2 * (p.n + 1));
    push_g(&mut out, &p.zero_block);
    for b in &p.blocks {
        push_f(&mut out, &b.negatives);
        push_g(&mut out, &b.positives);
    }
    out
}

/// Maps a canonical partition of `[-n, n]` to a flattened Stirling word of
/// order `n + 1`.
pub fn phi(p: &TypeBPartition) -> Result<StirlingWord, BijectionError> {
    p.ensure_canonical().map_err(BijectionError::NonCanonical)?;
    let letters = phi_letters(p);
    debug_assert!(
        is_stirling(&letters, 2) && is_flattened(&letters),
        "phi image {letters:?} of {p}"
    );
    Ok(StirlingWord::from_trusted(letters, 2))
}

/// Inverse of [`phi`] on flattened words of multiplicity 2.
pub fn psi(w: &StirlingWord) -> Result<TypeBPartition, BijectionError> {
    if w.multiplicity() != 2 {
        return Err(BijectionError::Multiplicity(w.multiplicity()));
    }
    if w.is_empty() {
        return Err(BijectionError::EmptyWord);
    }
    let letters = w.letters();
    if flattened_runs(letters).is_none() {
        let runs = w.runs();
        let i = (1..runs.leading_terms.len())
            .find(|&i| runs.leading_terms[i] < runs.leading_terms[i - 1])
            .expect("a non-flattened word has a decreasing pair of leading terms");
        return Err(BijectionError::NotFlattened {
            index: runs.segments[i].start,
            letter: runs.leading_terms[i],
        });
    }
    let p = psi_letters(letters)?;
    if phi_letters(&p) != letters {
        return Err(BijectionError::Malformed { index: 0 });
    }
    Ok(p)
}

fn psi_letters(letters: &[Letter]) -> Result<TypeBPartition, BijectionError> {
    let order = letters.len() / 2;
    let mut first = vec![usize::MAX; order + 1];
    for (i, &l) in letters.iter().enumerate().rev() {
        first[l as usize] = i;
    }

    // (N*, P*) pairs from the right end; the leftmost P* is the zero-block.
    let mut segments: Vec<(std::ops::Range<usize>, std::ops::Range<usize>)> = Vec::new();
    let mut end = letters.len();
    while end > 0 {
        let j = first[letters[end - 1] as usize];
        let mut start = j;
        while start > 0 && letters[start - 1] > letters[j] {
            start -= 1;
        }
        segments.push((start..j, j..end));
        end = start;
    }
    segments.reverse();

    let (zero_n, zero_p) = &segments[0];
    if !zero_n.is_empty() || letters[zero_p.start] != 1 {
        return Err(BijectionError::Malformed { index: 0 });
    }
    let zero_block = first_copies(letters, zero_p.clone())?;
    let mut blocks = Vec::with_capacity(segments.len() - 1);
    for (n_seg, p_seg) in &segments[1..] {
        // N* must be doubled letters in increasing order
        let negs = &letters[n_seg.clone()];
        if negs.chunks(2).any(|c| c.len() != 2 || c[0] != c[1])
            || negs.windows(2).any(|w| w[0] > w[1])
        {
            return Err(BijectionError::Malformed { index: n_seg.start });
        }
        let negatives = negs.iter().step_by(2).map(|&l| (l - 1) as u32).collect();
        let positives = first_copies(letters, p_seg.clone())?;
        blocks.push(SignedBlock {
            negatives,
            positives,
        });
    }
    let p = TypeBPartition {
        n: order - 1,
        zero_block,
        blocks,
    };
    p.ensure_canonical()
        .map_err(|_| BijectionError::Malformed { index: 0 })?;
    Ok(p)
}

/// Keeps the first copy of each letter in a `g`-shaped segment and shifts down
/// by one; every letter must occur exactly twice in the segment.
fn first_copies(
    letters: &[Letter],
    seg: std::ops::Range<usize>,
) -> Result<Vec<u32>, BijectionError> {
    let start = seg.start;
    let mut counts: std::collections::BTreeMap<Letter, usize> = Default::default();
    for &l in &letters[seg] {
        *counts.entry(l).or_default() += 1;
    }
    if counts.values().any(|&c| c != 2) {
        return Err(BijectionError::Malformed { index: start });
    }
    Ok(counts.into_keys().map(|l| (l - 1) as u32).collect())
}

/// Runs of `phi(p)` read off the partition:
/// `1 + #{i >= 1 : N_i nonempty} + #{i >= 0 : |P_i| >= 2}`.
pub fn run_count_from_partition(p: &TypeBPartition) -> usize {
    1 + p.blocks.iter().filter(|b| !b.negatives.is_empty()).count()
        + p.positive_parts().filter(|part| part.len() >= 2).count()
}

/// `flat(Q_n)` as the image of all type B partitions of `[-(n-1), n-1]`.
pub fn generate_flattened_via_bijection(
    n: usize,
    budget: &Budget,
) -> Result<impl Iterator<Item = StirlingWord>, BijectionGenError> {
    if n == 0 {
        return Err(BijectionGenError::ZeroOrder);
    }
    Ok(generate_typeb(n - 1, budget)?.map(|p| StirlingWord::from_trusted(phi_letters(&p), 2)))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BijectionGenError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Tally of `flat(Q_n)` by run count, computed by mapping every partition of
/// `[-(n-1), n-1]` through `phi` and scanning the word. Work is split by
/// zero-block support.
pub fn flattened_census_via_bijection(
    n: usize,
    budget: &Budget,
) -> Result<RunCensus, BijectionGenError> {
    if n == 0 {
        return Err(BijectionGenError::ZeroOrder);
    }
    budget.check(
        format!("type B partitions of [-{0}, {0}]", n - 1),
        &dowling(n - 1),
    )?;
    Ok(zero_supports(n - 1)
        .into_par_iter()
        .map(|support| {
            let mut census = RunCensus::default();
            for p in generate_typeb_with_support(n - 1, support) {
                let letters = phi_letters(&p);
                let runs = flattened_runs(&letters).expect("phi image is flattened");
                census.total += 1;
                census.record(runs);
            }
            census
        })
        .reduce(RunCensus::default, RunCensus::merge))
}
