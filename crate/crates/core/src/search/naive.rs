//! Brute-force reference implementations used for differential testing.
//!
//! Nothing here shares code with the pruned search or the fast square
//! scanner: squares are found by testing the defining sign condition on
//! every index pair, all `n!` permutations are generated, and extensions are
//! built by inserting half-integer values.

use itertools::Itertools;

/// `(a_i - a_j)(b_i - b_j) > 0` for every pair `i != j`.
pub fn sign_isomorphic(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| i == j || (a[i] - a[j]) * (b[i] - b[j]) > 0))
}

/// Every `(start, half_len)` (1-based start) such that the factor is a
/// square, in increasing start then half length.
pub fn all_squares(p: &[i64]) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut out = Vec::new();
    for start in 0..n {
        for half in 2..=(n - start) / 2 {
            let x1 = &p[start..start + half];
            let x2 = &p[start + half..start + 2 * half];
            if sign_isomorphic(x1, x2) {
                out.push((start + 1, half));
            }
        }
    }
    out
}

pub fn contains_square(p: &[i64]) -> bool {
    !all_squares(p).is_empty()
}

/// All permutations of `{1, …, n}` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (1..=n as i64).permutations(n)
}

pub fn square_free_permutations(n: usize) -> Vec<Vec<i64>> {
    all_permutations(n).filter(|p| !contains_square(p)).collect()
}

/// One extension per relative value of the inserted symbol, built by
/// doubling every symbol and inserting an odd value.
pub fn extensions(p: &[i64], pos: usize) -> Vec<Vec<i64>> {
    let mut sorted: Vec<i64> = p.iter().map(|&v| 2 * v).collect();
    sorted.sort_unstable();
    let mut gaps: Vec<i64> = sorted.iter().map(|&v| v - 1).collect();
    gaps.push(sorted.last().map_or(1, |&v| v + 1));
    gaps.into_iter()
        .map(|inserted| {
            let mut q: Vec<i64> = p.iter().map(|&v| 2 * v).collect();
            q.insert(pos, inserted);
            q
        })
        .collect()
}

pub fn blocked(p: &[i64], pos: usize) -> bool {
    extensions(p, pos).iter().all(|q| contains_square(q))
}

pub fn p_crucial(p: &[i64], positions: &[usize]) -> bool {
    !contains_square(p) && positions.iter().all(|&pos| blocked(p, pos))
}

/// Every square-free permutation of length `n` crucial at the positions
/// chosen by `positions(n)`.
pub fn find_p_crucial(n: usize, positions: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<i64>> {
    let set = positions(n);
    square_free_permutations(n)
        .into_iter()
        .filter(|p| set.iter().all(|&pos| blocked(p, pos)))
        .collect()
}
