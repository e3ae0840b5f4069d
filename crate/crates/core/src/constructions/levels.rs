//! Lower / medium / upper levels and the high-medium-low conditions.

use serde::Serialize;

use crate::perm::{find_square, Permutation};
use crate::symbol::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Lower,
    Medium,
    Upper,
}

/// An offset `i` in `0..4` such that every index `i + 4t` holds a local
/// minimum and every index `i + 4t + 2` a local maximum, with the level of
/// each 1-based index it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelDecomposition {
    offset: usize,
    levels: Vec<Level>,
}

impl LevelDecomposition {
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Level of a 1-based index.
    pub fn level_of(&self, index: usize) -> Option<Level> {
        index.checked_sub(1).and_then(|k| self.levels.get(k)).copied()
    }

    /// 1-based indices on the given level, ascending.
    pub fn indices(&self, level: Level) -> Vec<usize> {
        (1..=self.levels.len())
            .filter(|&k| self.levels[k - 1] == level)
            .collect()
    }

    /// Symbols of `p` on the given level, in index order.
    pub fn symbols_on<S: Symbol>(&self, p: &Permutation<S>, level: Level) -> Vec<S> {
        self.indices(level).into_iter().map(|k| p.symbols()[k - 1]).collect()
    }
}

fn level_for(index: usize, offset: usize) -> Level {
    match (index + 4 - offset) % 4 {
        0 => Level::Lower,
        2 => Level::Upper,
        _ => Level::Medium,
    }
}

/// Whether `p` has local minima at every index `offset + 4t` and local
/// maxima at every index `offset + 4t + 2` (1-based, valid indices only).
pub fn satisfies_level_condition<S: Symbol>(p: &Permutation<S>, offset: usize) -> bool {
    let s = p.symbols();
    let n = s.len();
    (1..=n).all(|k| {
        let v = s[k - 1];
        let neighbours = [k.checked_sub(1).filter(|&j| j >= 1), Some(k + 1).filter(|&j| j <= n)];
        match level_for(k, offset) {
            Level::Lower => neighbours.iter().flatten().all(|&j| v < s[j - 1]),
            Level::Upper => neighbours.iter().flatten().all(|&j| v > s[j - 1]),
            Level::Medium => true,
        }
    })
}

fn decompose<S: Symbol>(p: &Permutation<S>, offset: usize) -> LevelDecomposition {
    LevelDecomposition {
        offset,
        levels: (1..=p.len()).map(|k| level_for(k, offset)).collect(),
    }
}

/// The decomposition for the smallest valid offset, if any.
pub fn level_decomposition<S: Symbol>(p: &Permutation<S>) -> Option<LevelDecomposition> {
    (0..4)
        .find(|&offset| satisfies_level_condition(p, offset))
        .map(|offset| decompose(p, offset))
}

/// Whether the levels of `p` for this offset are value-separated
/// (lower < medium < upper) and the medium level is square-free.
fn hml_for_offset<S: Symbol>(p: &Permutation<S>, offset: usize) -> bool {
    if !satisfies_level_condition(p, offset) {
        return false;
    }
    let d = decompose(p, offset);
    let lower = d.symbols_on(p, Level::Lower);
    let medium = d.symbols_on(p, Level::Medium);
    let upper = d.symbols_on(p, Level::Upper);
    let below = |xs: &[S], ys: &[S]| match (xs.iter().max(), ys.iter().min()) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    };
    below(&lower, &medium)
        && below(&medium, &upper)
        && below(&lower, &upper)
        && find_square(&medium).is_none()
}

/// True iff some offset makes `p` a high-medium-low permutation.
pub fn is_hml<S: Symbol>(p: &Permutation<S>) -> bool {
    (0..4).any(|offset| hml_for_offset(p, offset))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(s: &str) -> Permutation<i64> {
        Permutation::new(s.chars().map(|c| c.to_digit(10).unwrap() as i64).collect()).unwrap()
    }

    #[test]
    fn levels_of_2463157() {
        let p = digits("2463157");
        let d = level_decomposition(&p).unwrap();
        assert_eq!(d.offset(), 1);
        assert_eq!(d.symbols_on(&p, Level::Lower), vec![2, 1]);
        assert_eq!(d.symbols_on(&p, Level::Upper), vec![6, 7]);
        assert_eq!(d.symbols_on(&p, Level::Medium), vec![4, 3, 5]);
        assert_eq!(d.level_of(1), Some(Level::Lower));
        assert_eq!(d.level_of(0), None);
        assert_eq!(d.level_of(8), None);
        assert!(is_hml(&p));
    }

    #[test]
    fn monotone_has_no_levels() {
        assert!(level_decomposition(&digits("1234")).is_none());
        assert!(!is_hml(&digits("1234")));
    }

    #[test]
    fn offset_zero_for_1432() {
        // offset 0: index 4 lower (2 < 3), index 2 upper (4 > 1, 3)
        assert!(satisfies_level_condition(&digits("1432"), 0));
        assert_eq!(level_decomposition(&digits("1432")).unwrap().offset(), 0);
    }

    #[test]
    fn hml_needs_separated_levels() {
        // offset 1 holds, but lower 3 exceeds medium 2
        let p = digits("12543");
        assert!(satisfies_level_condition(&p, 1));
        assert!(!is_hml(&p));
    }

    #[test]
    fn hml_needs_square_free_medium() {
        // lower 1 2 3, medium 4 6 5 7 9 8 contains a square, upper high
        let p = Permutation::<i64>::new(vec![1, 4, 20, 6, 2, 5, 21, 7, 3, 9, 22, 8]).unwrap();
        assert!(satisfies_level_condition(&p, 1));
        assert!(!is_hml(&p));
    }
}
