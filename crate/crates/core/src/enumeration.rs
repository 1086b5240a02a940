//! Exact counting formulas.
//!
//! Everything here is integer arithmetic on [`BigCount`] except
//! [`flatm_series`], which evaluates an infinite series with certified
//! rational bounds and only returns once the bounds pin down one integer.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bijection::phi;
use crate::typeb::{SignedBlock, TypeBPartition};
use crate::word::StirlingWord;

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

pub fn binomial(n: usize, k: usize) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i + 1) afterwards
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(2n - 1)!! = 1 * 3 * ... * (2n - 1)`, the size of `Q_n`. Empty product at 0.
pub fn double_factorial(n: usize) -> BigCount {
    (1..=n).fold(BigCount::one(), |acc, i| acc * (2 * i - 1))
}

/// Row `a` of the Stirling numbers of the second kind: `S(a, 0..=a)`.
///
/// Uses `S(0, 0) = 1`, so that the `i = n` term of [`dowling`] counts the
/// partition whose zero-block holds everything.
pub fn stirling2_row(a: usize) -> Vec<BigCount> {
    let mut row = vec![BigCount::one()];
    for i in 1..=a {
        let mut next = vec![BigCount::zero(); i + 1];
        for b in 1..=i {
            let mut v = row[b - 1].clone();
            if b < i {
                v += &row[b] * b;
            }
            next[b] = v;
        }
        row = next;
    }
    row
}

pub fn stirling2(a: usize, b: usize) -> BigCount {
    if b > a {
        return BigCount::zero();
    }
    stirling2_row(a).swap_remove(b)
}

/// The `n`th Dowling number as
/// `sum_i C(n, i) sum_k 2^(n-i-k) S(n-i, k)`: choose the zero-block, split the
/// rest into `k` blocks, sign everything but each block minimum.
pub fn dowling(n: usize) -> BigCount {
    let mut total = BigCount::zero();
    for i in 0..=n {
        let rest = n - i;
        let row = stirling2_row(rest);
        let inner: BigCount = row.iter().enumerate().map(|(k, s)| s << (rest - k)).sum();
        total += binomial(n, i) * inner;
    }
    total
}

/// `|flat_2(Q_n)|` by `a(n + 1) = 2 a(n) + 2n - 1`, `a(1) = 0`.
pub fn flat2_recurrence(n: usize) -> BigCount {
    let mut a = BigCount::zero();
    for i in 1..n {
        a = a * 2u32 + (2 * i - 1);
    }
    a
}

/// `|flat_2(Q_{n+1})| = 3(2^n - 1) - 2n`.
pub fn flat2_closed(n: usize) -> BigCount {
    let pow = BigCount::one() << n;
    (pow - 1u32) * 3u32 - 2 * n
}

/// Largest run count of a flattened word of order `n`: `ceil(2n / 3)`.
pub fn max_runs(n: usize) -> usize {
    (2 * n).div_ceil(3)
}

/// A flattened word of order `n` with [`max_runs`] runs.
///
/// Built from the partition `0 2 | -3 1 4 | -6 5 7 | -9 8 10 | ...` of
/// `[-(n-1), n-1]`: the zero-block and each full block contribute one and two
/// descents respectively, and the leftover one or two elements are closed off
/// as `e` or `-(e+1) e`.
pub fn max_runs_witness(n: usize) -> StirlingWord {
    assert!(n >= 1, "order must be at least 1");
    let top = (n - 1) as u32;
    let block = |neg: &[u32], pos: &[u32]| SignedBlock::new(neg.to_vec(), pos.to_vec());
    let mut blocks = Vec::new();
    let zero_block = match n {
        1 => vec![0],
        2 => vec![0, 1],
        _ => {
            match n {
                3 => blocks.push(block(&[], &[1])),
                4 => blocks.push(block(&[3], &[1])),
                _ => blocks.push(block(&[3], &[1, 4])),
            }
            let mut e = 5;
            while e + 2 <= top {
                blocks.push(block(&[e + 1], &[e, e + 2]));
                e += 3;
            }
            if e == top {
                blocks.push(block(&[], &[e]));
            } else if e + 1 == top {
                blocks.push(block(&[e + 1], &[e]));
            }
            vec![0, 2]
        }
    };
    let p = TypeBPartition {
        n: n - 1,
        zero_block,
        blocks,
    };
    phi(&p).expect("witness partition is canonical")
}

fn flat3_parts(n: usize) -> [BigCount; 3] {
    let mut parts = [BigCount::zero(), BigCount::zero(), BigCount::zero()];
    if n < 1 {
        return parts;
    }
    let top = n - 1;
    // sum_{j=2}^{top-k} C(top-k, j); empty when top - k < 2
    let inner = |k: usize| -> BigCount { (2..=top - k).map(|j| binomial(top - k, j)).sum() };
    for k in 1..=top {
        let term = binomial(top, k) * inner(k);
        if k >= 2 {
            parts[1] += &term;
        }
        parts[0] += term;
    }
    for k in 3..=top {
        parts[2] += ((BigCount::one() << (k - 1)) - 2u32) * binomial(top, k);
    }
    parts
}

/// Closed form for `|flat_3(Q_n)|`:
///
/// `2 sum_{k>=1} C(n-1,k) T(k) + 2 sum_{k>=2} C(n-1,k) T(k) + sum_{k>=3} (2^(k-1) - 2) C(n-1,k)`
/// with `T(k) = sum_{j=2}^{n-1-k} C(n-1-k, j)` and empty ranges contributing 0.
///
/// Counting through the run-count formula: three runs need exactly two of
/// "zero-block of size at least 2", "block with a negative", "block with two
/// positives". The first sum puts one feature on the zero-block, the second
/// spreads them over two other blocks (two sign patterns each, halved for the
/// unordered pair), the last puts both on one block.
pub fn flat3_conjecture(n: usize) -> BigCount {
    let [a, b, c] = flat3_parts(n);
    a * 2u32 + b * 2u32 + c
}

/// The same sum with the middle term counted once. Agrees with
/// [`flat3_conjecture`] only for `n <= 4` (it gives 64 instead of 70 at `n = 5`).
pub fn flat3_as_printed(n: usize) -> BigCount {
    let [a, b, c] = flat3_parts(n);
    a * 2u32 + b + c
}

/// `|Q_n^m| = prod_{i<n} (i m + 1)`.
pub fn mstirling_count(n: usize, m: usize) -> BigCount {
    (0..n).fold(BigCount::one(), |acc, i| acc * (i * m + 1))
}

/// The sequence `a(0) = 1`,
/// `a(t) = (m-1) a(t-1) + sum_{k=1}^{t} C(t-1, k-1) m^(k-1) a(t-k)`.
fn flatm_sequence(len: usize, m: usize) -> Vec<BigCount> {
    let mut a = vec![BigCount::one()];
    for t in 1..len {
        let mut v = &a[t - 1] * (m - 1);
        let mut mpow = BigCount::one();
        for k in 1..=t {
            v += binomial(t - 1, k - 1) * &mpow * &a[t - k];
            mpow *= m;
        }
        a.push(v);
    }
    a
}

/// `|flat(Q_n^m)|` from the recurrence; `a(t)` counts order `t + 1`, and the
/// empty word gives 1 at `n = 0`.
pub fn flatm_recurrence(n: usize, m: usize) -> BigCount {
    assert!(m >= 2, "multiplicity must be at least 2");
    if n == 0 {
        return BigCount::one();
    }
    flatm_sequence(n, m).swap_remove(n - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrecisionError {
    #[error("series bounds not certified after {terms} terms")]
    Insufficient { terms: usize },
    #[error("series value lies in [{lower}, {upper}], which is not within 1/4 of an integer")]
    NotIntegral { lower: String, upper: String },
}

const FIRST_TERMS: usize = 16;
const MAX_TERMS: usize = 1 << 14;

fn rational(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Bounds on `e^(-1/m) sum_{k>=0} (mk + m - 1)^e / (k! m^k)` from `terms`
/// terms of each series; `None` when the tail bound does not apply yet.
fn series_bounds(e: usize, m: usize, terms: usize) -> Option<(BigRational, BigRational)> {
    let m_big = BigInt::from(m);
    let term = |k: usize, fact: &BigInt, mpow: &BigInt| -> BigRational {
        let base = BigInt::from(m * k + m - 1);
        BigRational::new(num_traits::pow(base, e), fact * mpow)
    };
    let mut sum = BigRational::zero();
    let mut fact = BigInt::one();
    let mut mpow = BigInt::one();
    for k in 0..terms {
        if k > 0 {
            fact *= k;
            mpow *= &m_big;
        }
        sum += term(k, &fact, &mpow);
    }
    // t_terms and the ratio t_{terms+1} / t_terms, which is nonincreasing in k
    let fact_k = &fact * terms;
    let mpow_k = &mpow * &m_big;
    let t_k = term(terms, &fact_k, &mpow_k);
    let t_next = term(terms + 1, &(&fact_k * (terms + 1)), &(&mpow_k * &m_big));
    let ratio = &t_next / &t_k;
    if ratio >= rational(1) {
        return None;
    }
    let tail = &t_k / (rational(1) - ratio);

    // alternating series for e^(-1/m): consecutive partial sums bracket it
    let mut partial = BigRational::zero();
    let mut step = rational(1);
    for j in 0..terms {
        partial += &step;
        step = -step / (&m_big * BigInt::from(j + 1));
    }
    let next = &partial + &step;
    let (e_lo, e_hi) = if partial < next {
        (partial, next)
    } else {
        (next, partial)
    };
    if !e_lo.is_positive() {
        return None;
    }
    Some((e_lo * &sum, e_hi * (sum + tail)))
}

/// `|flat(Q_n^m)|` from the exponential series, rounded once certified bounds
/// lie within 1/4 of a single integer. Term counts double until they do.
pub fn flatm_series(n: usize, m: usize) -> Result<BigCount, PrecisionError> {
    assert!(m >= 2, "multiplicity must be at least 2");
    if n == 0 {
        return Ok(BigCount::one());
    }
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let mut terms = FIRST_TERMS;
    while terms <= MAX_TERMS {
        if let Some((lo, hi)) = series_bounds(n - 1, m, terms) {
            let mid = (&lo + &hi) / rational(2);
            let nearest = (mid + BigRational::new(BigInt::one(), BigInt::from(2))).floor();
            if &hi - &nearest <= quarter && &nearest - &lo <= quarter {
                let value = nearest.to_integer();
                return Ok(value.to_biguint().expect("series is positive"));
            }
            if &hi - &lo < &quarter / rational(2) {
                return Err(PrecisionError::NotIntegral {
                    lower: lo.to_string(),
                    upper: hi.to_string(),
                });
            }
        }
        terms *= 2;
    }
    Err(PrecisionError::Insufficient { terms: MAX_TERMS })
}
