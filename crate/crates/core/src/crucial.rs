//! Blocked positions and P-crucial predicates.
//!
//! A position `i` of a permutation is blocked when every extension at `i`
//! contains a square. A square-free permutation is P-crucial when every
//! position in P is blocked.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{extend_canonical, find_square, find_square_through, find_square_with_half_len, ranks, Permutation};
use crate::symbol::Symbol;

/// A subset of `{0, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PositionSet {
    n: usize,
    members: BTreeSet<usize>,
}

impl PositionSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i > n) {
            return Err(Error::OutOfRange { what: "position", value: bad as i64, lo: 0, hi: n as i64 });
        }
        Ok(PositionSet { n, members })
    }

    pub fn empty(n: usize) -> Self {
        PositionSet { n, members: BTreeSet::new() }
    }

    /// `{0, …, n}`.
    pub fn all(n: usize) -> Self {
        PositionSet { n, members: (0..=n).collect() }
    }

    pub fn named(n: usize, kind: CrucialKind) -> Self {
        let members = match kind {
            CrucialKind::Left => vec![0],
            CrucialKind::Right => vec![n],
            CrucialKind::Bi => vec![0, n],
            CrucialKind::S => return Self::all(n),
        };
        PositionSet { n, members: members.into_iter().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.members.contains(&pos)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &PositionSet) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// The named cruciality notions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CrucialKind {
    /// `{0}`
    Left,
    /// `{n}`
    Right,
    /// `{0, n}`
    Bi,
    /// `{0, …, n}`
    S,
}

impl FromStr for CrucialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(CrucialKind::Left),
            "right" => Ok(CrucialKind::Right),
            "bi" => Ok(CrucialKind::Bi),
            "s" => Ok(CrucialKind::S),
            _ => Err(Error::PositionPattern(s.to_string())),
        }
    }
}

/// One entry of a position pattern: either absolute or measured from `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PositionTerm {
    Absolute(usize),
    /// `n - k`
    FromEnd(usize),
}

/// A position set that may refer to the permutation length symbolically,
/// e.g. `0,1,n-1,n` or one of the keywords `left`, `right`, `bi`, `s`,
/// `interior` (the last meaning `[3, n-3]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum PositionPattern {
    Terms(Vec<PositionTerm>),
    Kind(CrucialKind),
    Interior,
}

impl PositionPattern {
    /// `{0, 1, n-1, n}`.
    pub fn outer_pairs() -> Self {
        use PositionTerm::*;
        PositionPattern::Terms(vec![Absolute(0), Absolute(1), FromEnd(1), FromEnd(0)])
    }

    pub fn resolve(&self, n: usize) -> Result<PositionSet> {
        match self {
            PositionPattern::Kind(kind) => Ok(PositionSet::named(n, *kind)),
            PositionPattern::Interior => Ok(PositionSet::new(n, 3..=n.saturating_sub(3))?),
            PositionPattern::Terms(terms) => {
                let members = terms
                    .iter()
                    .map(|term| match *term {
                        PositionTerm::Absolute(i) => Ok(i),
                        PositionTerm::FromEnd(k) => n.checked_sub(k).ok_or_else(|| {
                            Error::PositionPattern(format!("n-{k} is negative for n = {n}"))
                        }),
                    })
                    .collect::<Result<Vec<_>>>()?;
                PositionSet::new(n, members)
            }
        }
    }
}

impl FromStr for PositionPattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        match text {
            "interior" => return Ok(PositionPattern::Interior),
            "left" | "right" | "bi" | "s" => return Ok(PositionPattern::Kind(text.parse()?)),
            _ => {}
        }
        let bad = || Error::PositionPattern(text.to_string());
        let terms = text
            .split(',')
            .map(|raw| {
                let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
                if term == "n" {
                    Ok(PositionTerm::FromEnd(0))
                } else if let Some(k) = term.strip_prefix("n-") {
                    k.parse().map(PositionTerm::FromEnd).map_err(|_| bad())
                } else {
                    term.parse().map(PositionTerm::Absolute).map_err(|_| bad())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PositionPattern::Terms(terms))
    }
}

impl fmt::Display for PositionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositionPattern::Interior => f.write_str("interior"),
            PositionPattern::Kind(kind) => f.write_str(match kind {
                CrucialKind::Left => "left",
                CrucialKind::Right => "right",
                CrucialKind::Bi => "bi",
                CrucialKind::S => "s",
            }),
            PositionPattern::Terms(terms) => {
                for (k, term) in terms.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    match term {
                        PositionTerm::Absolute(i) => write!(f, "{i}")?,
                        PositionTerm::FromEnd(0) => f.write_str("n")?,
                        PositionTerm::FromEnd(k) => write!(f, "n-{k}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

fn check_pos<S: Symbol>(p: &Permutation<S>, pos: usize) -> Result<()> {
    if pos > p.len() {
        return Err(Error::OutOfRange { what: "position", value: pos as i64, lo: 0, hi: p.len() as i64 });
    }
    Ok(())
}

/// Square-free extensions at `pos`, in increasing insertion rank.
///
/// When `p` itself is square-free only windows covering the inserted symbol
/// need scanning.
fn square_free_ranks<'a, S: Symbol>(
    base: &'a [S],
    base_square_free: bool,
    pos: usize,
) -> impl Iterator<Item = (usize, Vec<S>)> + 'a {
    (1..=base.len() + 1).filter_map(move |rank| {
        let ext = extend_canonical(base, pos, rank);
        let square = if base_square_free { find_square_through(&ext, pos) } else { find_square(&ext) };
        square.is_none().then_some((rank, ext))
    })
}

/// The square-free extension at `pos` with the smallest insertion rank, or
/// `None` when the position is blocked.
pub fn square_free_extension_witness<S: Symbol>(
    p: &Permutation<S>,
    pos: usize,
) -> Result<Option<Permutation<S>>> {
    check_pos(p, pos)?;
    let base = ranks(p.symbols());
    let base_sf = find_square(&base).is_none();
    let found = square_free_ranks(&base, base_sf, pos).next();
    Ok(found.map(|(_, ext)| Permutation::from_distinct(ext)))
}

/// True iff every extension of `p` at `pos` contains a square.
pub fn position_blocked<S: Symbol>(p: &Permutation<S>, pos: usize) -> Result<bool> {
    Ok(square_free_extension_witness(p, pos)?.is_none())
}

pub(crate) fn blocked_in<S: Symbol>(base: &[S], base_sf: bool, pos: usize) -> bool {
    square_free_ranks(base, base_sf, pos).next().is_none()
}

/// True iff every extension at `pos` contains a square of the given half
/// length.
pub fn blocked_by_half_len<S: Symbol>(p: &Permutation<S>, pos: usize, half_len: usize) -> Result<bool> {
    check_pos(p, pos)?;
    let base = ranks(p.symbols());
    Ok((1..=base.len() + 1).all(|rank| {
        find_square_with_half_len(&extend_canonical(&base, pos, rank), half_len).is_some()
    }))
}

/// True iff `p` is square-free and blocked at every position of `set`.
pub fn is_p_crucial<S: Symbol>(p: &Permutation<S>, set: &PositionSet) -> Result<bool> {
    if set.n() != p.len() {
        return Err(Error::PositionSetLength { set_n: set.n(), perm_n: p.len() });
    }
    let base = ranks(p.symbols());
    if find_square(&base).is_some() {
        return Ok(false);
    }
    Ok(set.iter().all(|pos| blocked_in(&base, true, pos)))
}

/// Like [`is_p_crucial`] but a non-square-free input is an error.
pub fn is_p_crucial_strict<S: Symbol>(p: &Permutation<S>, set: &PositionSet) -> Result<bool> {
    if !p.is_square_free() {
        return Err(Error::NotSquareFree);
    }
    is_p_crucial(p, set)
}

/// Left-, right-, bi- or S-cruciality.
pub fn named_crucial<S: Symbol>(p: &Permutation<S>, kind: CrucialKind) -> bool {
    is_p_crucial(p, &PositionSet::named(p.len(), kind)).expect("set built for p")
}

/// Every blocked position of `p`.
pub fn blocked_positions<S: Symbol>(p: &Permutation<S>) -> PositionSet {
    let base = ranks(p.symbols());
    let base_sf = find_square(&base).is_none();
    let members: Vec<usize> = (0..=p.len())
        .into_par_iter()
        .filter(|&pos| blocked_in(&base, base_sf, pos))
        .collect();
    PositionSet { n: p.len(), members: members.into_iter().collect() }
}
