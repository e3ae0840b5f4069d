//! Permutations over arbitrary distinct integers, order-isomorphism and
//! square detection.
//!
//! Indices in the public API follow the usual combinatorics convention:
//! factors and square witnesses are 1-based, insertion positions are
//! `0..=n` (position `i` means "after the first `i` symbols").

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A finite word of pairwise-distinct integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
#[serde(bound = "S: Symbol")]
pub struct Permutation<S> {
    symbols: Vec<S>,
}

/// Location of a square factor `X1 X2` inside a permutation.
///
/// `start` is 1-based; the square occupies `start ..= start + 2 * half_len - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SquareWitness {
    pub start: usize,
    pub half_len: usize,
}

impl SquareWitness {
    /// Last index (1-based) covered by the square.
    pub fn end(&self) -> usize {
        self.start + 2 * self.half_len - 1
    }

    /// Whether the square covers the given 1-based index.
    pub fn covers(&self, index: usize) -> bool {
        (self.start..=self.end()).contains(&index)
    }
}

impl<S: Symbol> Permutation<S> {
    /// Builds a permutation, rejecting repeated symbols.
    pub fn new(symbols: Vec<S>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(symbols.len());
        for &s in &symbols {
            if !seen.insert(s) {
                return Err(Error::DuplicateSymbol(s.to_string()));
            }
        }
        Ok(Permutation { symbols })
    }

    /// Caller guarantees distinctness.
    pub(crate) fn from_distinct(symbols: Vec<S>) -> Self {
        debug_assert!(Self::new(symbols.clone()).is_ok());
        Permutation { symbols }
    }

    /// `1 2 … n`.
    pub fn identity(n: usize) -> Self {
        Self::from_distinct((1..=n).map(S::from_rank).collect())
    }

    /// `lo, lo+1, …, hi` (empty when `hi < lo`).
    pub fn ascending(lo: usize, hi: usize) -> Self {
        Self::from_distinct((lo..=hi).map(S::from_rank).collect())
    }

    /// `hi, hi-1, …, lo` (empty when `hi < lo`).
    pub fn descending(hi: usize, lo: usize) -> Self {
        Self::from_distinct((lo..=hi).rev().map(S::from_rank).collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[S] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<S> {
        self.symbols
    }

    pub fn min_symbol(&self) -> Option<S> {
        self.symbols.iter().copied().min()
    }

    pub fn max_symbol(&self) -> Option<S> {
        self.symbols.iter().copied().max()
    }

    /// True iff the symbol set is exactly `{1, …, n}`.
    pub fn is_canonical(&self) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        self.symbols.iter().all(|s| match s.to_usize() {
            Some(v) if (1..=n).contains(&v) && !seen[v - 1] => {
                seen[v - 1] = true;
                true
            }
            _ => false,
        })
    }

    /// The order-isomorphic permutation over `{1, …, n}`.
    pub fn canonical(&self) -> Self {
        Self::from_distinct(ranks(&self.symbols))
    }

    /// Adds `delta` to every symbol; the result is order-isomorphic to `self`.
    pub fn shifted(&self, delta: S) -> Self {
        Self::from_distinct(self.symbols.iter().map(|&s| s + delta).collect())
    }

    /// The raw factor `p_i … p_j` for 1-based `1 <= i <= j <= n`.
    pub fn factor(&self, i: usize, j: usize) -> Result<Self> {
        let n = self.len();
        if i < 1 || i > n {
            return Err(out_of_range("factor start", i, 1, n));
        }
        if j < i || j > n {
            return Err(out_of_range("factor end", j, i, n));
        }
        Ok(Self::from_distinct(self.symbols[i - 1..j].to_vec()))
    }

    /// Removes the symbol at 0-based `index`.
    pub fn without(&self, index: usize) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.remove(index);
        Self::from_distinct(symbols)
    }

    /// Leftmost square, shortest first among those with the same start.
    pub fn find_square(&self) -> Option<SquareWitness> {
        find_square(&self.symbols)
    }

    pub fn is_square_free(&self) -> bool {
        self.find_square().is_none()
    }

    /// The canonical extension at `pos` whose inserted symbol has value `rank`.
    ///
    /// All symbols of the canonical form that are `>= rank` move up by one and
    /// `rank` becomes the `(pos + 1)`-th symbol.
    pub fn extension_at(&self, pos: usize, rank: usize) -> Result<Self> {
        let n = self.len();
        if pos > n {
            return Err(out_of_range("position", pos, 0, n));
        }
        if rank < 1 || rank > n + 1 {
            return Err(out_of_range("rank", rank, 1, n + 1));
        }
        Ok(Self::from_distinct(extend_canonical(&ranks(&self.symbols), pos, rank)))
    }

    /// One representative per isomorphism class of extensions at `pos`, in
    /// increasing insertion rank.
    pub fn extensions(&self, pos: usize) -> Result<Vec<Self>> {
        let n = self.len();
        if pos > n {
            return Err(out_of_range("position", pos, 0, n));
        }
        let base = ranks(&self.symbols);
        Ok((1..=n + 1)
            .map(|rank| Self::from_distinct(extend_canonical(&base, pos, rank)))
            .collect())
    }
}

/// Replaces symbols by their ranks.
pub fn canonicalize<S: Symbol>(symbols: &[S]) -> Result<Permutation<S>> {
    Ok(Permutation::new(symbols.to_vec())?.canonical())
}

/// True iff both permutations have the same length and the same relative order.
pub fn order_isomorphic<S: Symbol>(p: &Permutation<S>, q: &Permutation<S>) -> bool {
    is_order_isomorphic(&p.symbols, &q.symbols)
}

/// Slice form of [`order_isomorphic`]; each slice must hold distinct values.
pub fn is_order_isomorphic<S: Ord + Copy>(a: &[S], b: &[S]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.len() < 2 {
        return true;
    }
    // Up/down shape rejects almost every candidate without allocating.
    if a.windows(2).zip(b.windows(2)).any(|(x, y)| (x[0] < x[1]) != (y[0] < y[1])) {
        return false;
    }
    if a.len() == 2 {
        return true;
    }
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_unstable_by_key(|&k| a[k]);
    order.windows(2).all(|w| b[w[0]] < b[w[1]])
}

/// Whether the factor of `p` at 0-based `start` with halves of length `half`
/// is a square.
pub fn square_at<S: Ord + Copy>(p: &[S], start: usize, half: usize) -> bool {
    half >= 2
        && start + 2 * half <= p.len()
        && is_order_isomorphic(&p[start..start + half], &p[start + half..start + 2 * half])
}

/// Slice form of [`Permutation::find_square`].
pub fn find_square<S: Ord + Copy>(p: &[S]) -> Option<SquareWitness> {
    let n = p.len();
    for start in 0..n {
        for half in 2..=(n - start) / 2 {
            if square_at(p, start, half) {
                return Some(SquareWitness { start: start + 1, half_len: half });
            }
        }
    }
    None
}

/// Leftmost-then-shortest square among those covering 0-based `index`.
///
/// If `p` with `index` removed is square-free, every square of `p` covers
/// `index`, so this alone decides whether an extension of a square-free
/// permutation is square-free.
pub fn find_square_through<S: Ord + Copy>(p: &[S], index: usize) -> Option<SquareWitness> {
    let n = p.len();
    if index >= n {
        return None;
    }
    for start in 0..=index {
        // smallest half with start + 2*half > index
        let min_half = ((index - start) / 2 + 1).max(2);
        for half in min_half..=(n - start) / 2 {
            if square_at(p, start, half) {
                return Some(SquareWitness { start: start + 1, half_len: half });
            }
        }
    }
    None
}

/// Shortest square ending at the last symbol of `p`.
pub fn suffix_square<S: Ord + Copy>(p: &[S]) -> Option<SquareWitness> {
    let n = p.len();
    (2..=n / 2)
        .find(|&half| square_at(p, n - 2 * half, half))
        .map(|half| SquareWitness { start: n - 2 * half + 1, half_len: half })
}

/// Leftmost square with the given half length.
pub fn find_square_with_half_len<S: Ord + Copy>(p: &[S], half: usize) -> Option<SquareWitness> {
    if half < 2 || 2 * half > p.len() {
        return None;
    }
    (0..=p.len() - 2 * half)
        .find(|&start| square_at(p, start, half))
        .map(|start| SquareWitness { start: start + 1, half_len: half })
}

pub(crate) fn ranks<S: Symbol>(symbols: &[S]) -> Vec<S> {
    let mut order: Vec<usize> = (0..symbols.len()).collect();
    order.sort_unstable_by_key(|&k| symbols[k]);
    let mut out = vec![S::zero(); symbols.len()];
    for (r, &k) in order.iter().enumerate() {
        out[k] = S::from_rank(r + 1);
    }
    out
}

pub(crate) fn extend_canonical<S: Symbol>(canonical: &[S], pos: usize, rank: usize) -> Vec<S> {
    let r = S::from_rank(rank);
    let mut out = Vec::with_capacity(canonical.len() + 1);
    out.extend(canonical[..pos].iter().map(|&v| if v >= r { v + S::one() } else { v }));
    out.push(r);
    out.extend(canonical[pos..].iter().map(|&v| if v >= r { v + S::one() } else { v }));
    out
}

fn out_of_range(what: &'static str, value: usize, lo: usize, hi: usize) -> Error {
    Error::OutOfRange { what, value: value as i64, lo: lo as i64, hi: hi as i64 }
}

impl<S: Symbol> fmt::Display for Permutation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.symbols.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses base-10 integers separated by spaces or commas.
///
/// The parenthesised multi-digit shorthand (`9(12)(14)`) is rejected.
impl<S: Symbol> FromStr for Permutation<S> {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse { text: text.to_string(), reason };
        let mut symbols = Vec::new();
        for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let s = token
                .parse::<S>()
                .map_err(|_| parse_err(format!("{token:?} is not an integer")))?;
            symbols.push(s);
        }
        Permutation::new(symbols)
    }
}

impl<S: Symbol> TryFrom<Vec<S>> for Permutation<S> {
    type Error = Error;

    fn try_from(symbols: Vec<S>) -> Result<Self> {
        Permutation::new(symbols)
    }
}

impl<S> AsRef<[S]> for Permutation<S> {
    fn as_ref(&self) -> &[S] {
        &self.symbols
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Permutation<i64>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    fn digits(s: &str) -> P {
        P::new(s.chars().map(|c| c.to_digit(10).unwrap() as i64).collect()).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&[2i64, 6, 4, 8]).unwrap(), digits("1324"));
        assert_eq!(canonicalize(&[1i64, 2, 3]).unwrap(), digits("123"));
        assert_eq!(canonicalize(&[5i64, 9, 4]).unwrap(), digits("231"));
        assert_eq!(canonicalize(&[-3i64, 0, -7]).unwrap(), digits("231"));
    }

    #[test]
    fn duplicate_symbol_reported() {
        assert_eq!(canonicalize(&[3i64, 1, 3]), Err(Error::DuplicateSymbol("3".into())));
        assert!("1 2 2".parse::<P>().is_err());
    }

    #[test]
    fn order_isomorphic_examples() {
        assert!(order_isomorphic(&digits("1324"), &digits("2648")));
        assert!(!order_isomorphic(&digits("12"), &digits("21")));
        assert!(!order_isomorphic(&digits("132"), &digits("594")));
        assert!(!order_isomorphic(&digits("12"), &digits("123")));
    }

    #[test]
    fn factor_examples() {
        let q = digits("1364257");
        assert_eq!(q.factor(2, 4).unwrap(), digits("364"));
        assert_eq!(q.factor(4, 6).unwrap(), digits("425"));
        assert_eq!(digits("132").factor(1, 3).unwrap(), digits("132"));
        assert!(q.factor(0, 2).is_err());
        assert!(q.factor(3, 2).is_err());
        assert!(q.factor(5, 8).is_err());
    }

    #[test]
    fn find_square_examples() {
        assert_eq!(digits("1324").find_square(), Some(SquareWitness { start: 1, half_len: 2 }));
        assert_eq!(digits("1364257").find_square(), None);
        assert_eq!(digits("1234").find_square(), Some(SquareWitness { start: 1, half_len: 2 }));
        assert!(digits("1364257").is_square_free());
        assert!(digits("135426").is_square_free());
        assert!(!digits("1324").is_square_free());
    }

    #[test]
    fn find_square_prefers_leftmost_then_shortest() {
        // both 1324 and 132465 are squares starting at 1
        let q = p("1 3 2 4 6 5");
        assert_eq!(q.find_square(), Some(SquareWitness { start: 1, half_len: 2 }));
        assert_eq!(
            find_square_with_half_len(q.symbols(), 3),
            Some(SquareWitness { start: 1, half_len: 3 })
        );
    }

    #[test]
    fn short_permutations_are_square_free() {
        for q in ["", "1", "2 1", "3 1 2"] {
            assert!(p(q).is_square_free());
        }
    }

    #[test]
    fn extension_examples() {
        // 1324 carries the inserted symbol at rank 2
        assert_eq!(digits("123").extension_at(2, 2).unwrap(), digits("1324"));
        assert_eq!(digits("123").extension_at(2, 3).unwrap(), digits("1234"));
        assert_eq!(digits("123").extension_at(2, 1).unwrap(), p("2 3 1 4"));
        assert_eq!(digits("12").extension_at(0, 3).unwrap(), digits("312"));
        assert_eq!(digits("12").extension_at(2, 1).unwrap(), digits("231"));
        assert!(digits("12").extension_at(3, 1).is_err());
        assert!(digits("12").extension_at(1, 0).is_err());
        assert!(digits("12").extension_at(1, 4).is_err());

        let ext = digits("12").extensions(0).unwrap();
        assert_eq!(ext, vec![digits("123"), digits("213"), digits("312")]);

        // 1324 is an extension of 123 at position 2
        let ext = digits("123").extensions(2).unwrap();
        assert_eq!(ext.len(), 4);
        assert!(ext.iter().any(|e| order_isomorphic(e, &digits("1324"))));

        let ext = digits("135426").extensions(4).unwrap();
        assert!(ext.iter().any(|e| order_isomorphic(e, &digits("1465237"))));
        assert!(digits("12").extensions(3).is_err());
    }

    #[test]
    fn non_canonical_symbols_extend_through_ranks() {
        let q = p("-4 10 0");
        assert_eq!(q.extension_at(1, 2).unwrap(), p("1 2 4 3"));
    }

    #[test]
    fn parse_and_display() {
        let q = p("1,16 15 2");
        assert_eq!(q.to_string(), "1 16 15 2");
        assert!("9(12)(14)".parse::<P>().is_err());
        assert!("1 x".parse::<P>().is_err());
        assert_eq!(p("0 -5").symbols(), &[0, -5]);
    }

    #[test]
    fn canonical_check() {
        assert!(digits("2413").is_canonical());
        assert!(!digits("2648").is_canonical());
        assert!(digits("2648").canonical().is_canonical());
    }

    #[test]
    fn through_index_only_reports_covering_squares() {
        // square 1324 at start 1, but nothing covers index 6 (0-based) of 1324657
        let q = digits("1324657");
        assert_eq!(q.find_square(), Some(SquareWitness { start: 1, half_len: 2 }));
        assert!(find_square_through(q.symbols(), 0).is_some());
        let w = find_square_through(q.symbols(), 6);
        assert!(w.map_or(true, |w| w.covers(7)));
    }

    #[test]
    fn suffix_square_finds_square_at_end() {
        assert_eq!(suffix_square(digits("51324").symbols()), Some(SquareWitness { start: 2, half_len: 2 }));
        assert_eq!(suffix_square(digits("13245").symbols()), None);
    }
}
