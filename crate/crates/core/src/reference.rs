//! Published reference counts that the verification suites compare against.

/// `(n, |Q_n|, |flat(Q_n)|, [|flat_1|, |flat_2|, ...])` for `n = 1..=10`.
pub const FLAT_TABLE: [(usize, u64, u64, &[u64]); 10] = [
    (1, 1, 1, &[1]),
    (2, 3, 2, &[1, 1]),
    (3, 15, 6, &[1, 5]),
    (4, 105, 24, &[1, 15, 8]),
    (5, 945, 116, &[1, 37, 70, 8]),
    (6, 10395, 648, &[1, 83, 374, 190]),
    (7, 135135, 4088, &[1, 177, 1596, 2034, 280]),
    (8, 2027025, 28640, &[1, 367, 6012, 15260, 6720, 280]),
    (9, 34459425, 219920, &[1, 749, 20994, 93764, 88732, 15680]),
    (
        10,
        654729075,
        1832224,
        &[1, 1515, 69842, 508538, 866796, 363132, 22400],
    ),
];

/// Multiplicities covered by [`MSTIRLING_TABLE`].
pub const MSTIRLING_MS: [usize; 4] = [2, 3, 4, 5];

/// `|flat(Q_n^m)|` for `n = 1..=7` (rows) and `m = 2..=5` (columns).
pub const MSTIRLING_TABLE: [[u64; 4]; 7] = [
    [1, 1, 1, 1],
    [2, 3, 4, 5],
    [6, 12, 20, 30],
    [24, 63, 128, 225],
    [116, 405, 1008, 2075],
    [648, 3024, 9280, 22500],
    [4088, 25515, 96704, 276875],
];

/// Reference `|flat_k(Q_n)|`, zero outside the listed range.
pub fn flat_k(n: usize, k: usize) -> Option<u64> {
    let row = FLAT_TABLE.get(n.checked_sub(1)?)?;
    Some(if k == 0 {
        0
    } else {
        row.3.get(k - 1).copied().unwrap_or(0)
    })
}

pub fn mstirling_flat(n: usize, m: usize) -> Option<u64> {
    let col = MSTIRLING_MS.iter().position(|&x| x == m)?;
    MSTIRLING_TABLE.get(n.checked_sub(1)?).map(|row| row[col])
}
