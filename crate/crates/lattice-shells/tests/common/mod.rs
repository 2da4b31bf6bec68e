//! Shared helpers for integration tests: a deterministic RNG and a
//! brute-force shell oracle that never touches the library's enumeration
//! path. The oracle scans an axis-aligned box whose per-coordinate bounds
//! come from the dual-diagonal inequality `x_i^2 <= q * (G^-1)_ii`, with the
//! inverse entries obtained from cofactors computed by explicit small
//! determinant formulas.

#![allow(clippy::needless_range_loop)]

pub struct XorShift {
    state: u64,
}

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift { state: seed.max(1) }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }
}

/// Determinant of an n x n matrix for n <= 3, written out longhand.
pub fn small_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        n => panic!("small_det supports n <= 3, got {n}"),
    }
}

fn minor(m: &[Vec<i64>], drop: usize) -> Vec<Vec<i64>> {
    let n = m.len();
    (0..n)
        .filter(|&i| i != drop)
        .map(|i| (0..n).filter(|&j| j != drop).map(|j| m[i][j]).collect())
        .collect()
}

fn isqrt(n: i64) -> i64 {
    debug_assert!(n >= 0);
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Every integer vector with `x^T G x = q`, found by scanning the full box
/// and checking each candidate by direct substitution. Positive definite
/// input, rank at most 3.
pub fn box_scan_shell(gram: &[Vec<i64>], q: i64) -> Vec<Vec<i64>> {
    let n = gram.len();
    let det = small_det(gram);
    assert!(det > 0, "oracle needs a positive definite Gram matrix");
    // x_i^2 <= q * (G^-1)_ii = q * minor_ii / det
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let cofactor = if n == 1 {
                1
            } else {
                small_det(&minor(gram, i))
            };
            isqrt(q * cofactor / det)
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    scan(gram, q, &bounds, 0, &mut x, &mut out);
    out.sort_unstable();
    out
}

fn scan(
    gram: &[Vec<i64>],
    q: i64,
    bounds: &[i64],
    level: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if level == x.len() {
        let mut total = 0i64;
        for i in 0..x.len() {
            for j in 0..x.len() {
                total += x[i] * gram[i][j] * x[j];
            }
        }
        if total == q {
            out.push(x.clone());
        }
        return;
    }
    for value in -bounds[level]..=bounds[level] {
        x[level] = value;
        scan(gram, q, bounds, level + 1, x, out);
    }
    x[level] = 0;
}

/// Random symmetric positive definite integer matrix of the given rank,
/// built as `L D L^T` with unit lower-triangular `L`.
pub fn random_pd_gram(rng: &mut XorShift, rank: usize) -> Vec<Vec<i64>> {
    let mut l = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        l[i][i] = 1;
        for j in 0..i {
            l[i][j] = rng.range(-2, 2);
        }
    }
    let d: Vec<i64> = (0..rank).map(|_| rng.range(1, 5)).collect();
    let mut gram = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            for (k, dk) in d.iter().enumerate() {
                gram[i][j] += l[i][k] * dk * l[j][k];
            }
        }
    }
    gram
}
