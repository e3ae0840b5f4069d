//! High-medium-low interleavings and the permutations built from them.
//!
//! Both interleavings put a square-free "medium" block at the even indices
//! and two value-separated blocks at the odd indices:
//!
//! ```text
//! construction1: a1 b1 c1 b2 a2 b3 c2 ...   (a < b < c)
//! construction2: u1 v1 w1 v2 u2 v3 w2 ...   (u > v > w)
//! ```

mod em;
mod levels;

pub use em::{build_em, special_square_free, EmParts};
pub use levels::{is_hml, level_decomposition, satisfies_level_condition, Level, LevelDecomposition};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{canonicalize, Permutation};
use crate::symbol::Symbol;

/// Which interleaving produced a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Interleaving {
    /// Small block at indices `1 mod 4`, large block at `3 mod 4`.
    LowMediumHigh,
    /// Large block at indices `1 mod 4`, small block at `3 mod 4`.
    HighMediumLow,
}

impl Interleaving {
    fn name(self) -> &'static str {
        match self {
            Interleaving::LowMediumHigh => "construction1",
            Interleaving::HighMediumLow => "construction2",
        }
    }
}

/// A permutation together with the interleaving that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "S: Symbol")]
pub struct Interleaved<S> {
    perm: Permutation<S>,
    kind: Interleaving,
}

impl<S: Symbol> Interleaved<S> {
    pub fn perm(&self) -> &Permutation<S> {
        &self.perm
    }

    pub fn kind(&self) -> Interleaving {
        self.kind
    }

    pub fn into_perm(self) -> Permutation<S> {
        self.perm
    }

    /// Splits `p` back into its three blocks and reruns the interleaving,
    /// so permutations read from outside regain their provenance only if
    /// they satisfy every precondition.
    pub fn recognize(p: &Permutation<S>, kind: Interleaving) -> Result<Self> {
        if p.len() % 4 != 3 {
            return Err(Error::LengthMismatch(format!(
                "an interleaving has length 4m-1, got {}",
                p.len()
            )));
        }
        let (first, medium, third) = deinterleave(p.symbols());
        let first = Permutation::from_distinct(first);
        let medium = Permutation::from_distinct(medium);
        let third = Permutation::from_distinct(third);
        match kind {
            Interleaving::LowMediumHigh => construction1(&first, &medium, &third),
            Interleaving::HighMediumLow => construction2(&first, &medium, &third),
        }
    }
}

fn deinterleave<S: Copy>(p: &[S]) -> (Vec<S>, Vec<S>, Vec<S>) {
    let (mut first, mut medium, mut third) = (Vec::new(), Vec::new(), Vec::new());
    for (k, &s) in p.iter().enumerate() {
        match (k + 1) % 4 {
            1 => first.push(s),
            3 => third.push(s),
            _ => medium.push(s),
        }
    }
    (first, medium, third)
}

fn interleave<S: Symbol>(first: &[S], medium: &[S], third: &[S]) -> Permutation<S> {
    let len = 4 * first.len() - 1;
    let symbols = (1..=len)
        .map(|i| match i % 4 {
            1 => first[(i + 3) / 4 - 1],
            3 => third[(i + 1) / 4 - 1],
            _ => medium[i / 2 - 1],
        })
        .collect();
    Permutation::from_distinct(symbols)
}

fn check_shapes<S: Symbol>(outer: &[&Permutation<S>; 2], medium: &Permutation<S>) -> Result<usize> {
    let m = outer[0].len();
    if m == 0 {
        return Err(Error::LengthMismatch("outer blocks must be non-empty".into()));
    }
    if outer[1].len() != m {
        return Err(Error::LengthMismatch(format!(
            "outer blocks have lengths {} and {}",
            m,
            outer[1].len()
        )));
    }
    if medium.len() != 2 * m - 1 {
        return Err(Error::LengthMismatch(format!(
            "medium block has length {}, expected {}",
            medium.len(),
            2 * m - 1
        )));
    }
    Ok(m)
}

fn strictly_below<S: Symbol>(lo: &Permutation<S>, hi: &Permutation<S>, what: &str) -> Result<()> {
    let (max_lo, min_hi) = (lo.max_symbol(), hi.min_symbol());
    match (max_lo, min_hi) {
        (Some(a), Some(b)) if a >= b => Err(Error::LevelSeparation(format!(
            "{what}: {a} is not below {b}"
        ))),
        _ => Ok(()),
    }
}

fn check_medium<S: Symbol>(medium: &Permutation<S>) -> Result<()> {
    match medium.find_square() {
        Some(w) => Err(Error::MediumNotSquareFree { start: w.start, half_len: w.half_len }),
        None => Ok(()),
    }
}

/// Interleaves `a < b < c` as `a1 b1 c1 b2 a2 b3 c2 …`; requires
/// `|a| = |c| = m >= 1`, `|b| = 2m - 1` and `b` square-free.
pub fn construction1<S: Symbol>(
    a: &Permutation<S>,
    b: &Permutation<S>,
    c: &Permutation<S>,
) -> Result<Interleaved<S>> {
    check_shapes(&[a, c], b)?;
    strictly_below(a, b, "lower block vs medium block")?;
    strictly_below(b, c, "medium block vs upper block")?;
    check_medium(b)?;
    Ok(Interleaved {
        perm: interleave(a.symbols(), b.symbols(), c.symbols()),
        kind: Interleaving::LowMediumHigh,
    })
}

/// Interleaves `u > v > w` as `u1 v1 w1 v2 u2 v3 w2 …`; requires
/// `|u| = |w| = m >= 1`, `|v| = 2m - 1` and `v` square-free.
pub fn construction2<S: Symbol>(
    u: &Permutation<S>,
    v: &Permutation<S>,
    w: &Permutation<S>,
) -> Result<Interleaved<S>> {
    check_shapes(&[u, w], v)?;
    strictly_below(v, u, "medium block vs upper block")?;
    strictly_below(w, v, "lower block vs medium block")?;
    check_medium(v)?;
    Ok(Interleaved {
        perm: interleave(u.symbols(), v.symbols(), w.symbols()),
        kind: Interleaving::HighMediumLow,
    })
}

/// Length-4 patterns that never occur as factors of a high-medium-low
/// permutation.
pub const FORBIDDEN_FACTORS: [[i64; 4]; 4] = [[2, 3, 4, 1], [3, 2, 1, 4], [4, 1, 2, 3], [1, 4, 3, 2]];

/// True iff no length-4 factor of `p` is order-isomorphic to 2341, 3214,
/// 4123 or 1432.
pub fn forbidden_factor_check<S: Symbol>(p: &Permutation<S>) -> bool {
    p.symbols().windows(4).all(|w| {
        let pattern = canonicalize(w).expect("factor of a permutation");
        let pattern: Vec<i64> = pattern.symbols().iter().map(|s| s.to_i64().unwrap()).collect();
        !FORBIDDEN_FACTORS.iter().any(|f| f[..] == pattern[..])
    })
}

fn require_kind<S: Symbol>(p: &Interleaved<S>, kind: Interleaving) -> Result<()> {
    if p.kind != kind {
        return Err(Error::WrongProvenance { expected: kind.name() });
    }
    Ok(())
}

/// `x · p1 · y` for a `construction1` output with `x` above and `y` below
/// every symbol.
pub fn wrap1<S: Symbol>(x: S, p1: &Interleaved<S>, y: S) -> Result<Permutation<S>> {
    require_kind(p1, Interleaving::LowMediumHigh)?;
    let (lo, hi) = bounds(&p1.perm);
    if x <= hi || y >= lo {
        return Err(Error::Dominance(format!(
            "need x > {hi} and y < {lo}, got x = {x}, y = {y}"
        )));
    }
    Ok(enclose(x, &p1.perm, y))
}

/// `z · p2 · t` for a `construction2` output with `z` below and `t` above
/// every symbol.
pub fn wrap2<S: Symbol>(z: S, p2: &Interleaved<S>, t: S) -> Result<Permutation<S>> {
    require_kind(p2, Interleaving::HighMediumLow)?;
    let (lo, hi) = bounds(&p2.perm);
    if z >= lo || t <= hi {
        return Err(Error::Dominance(format!(
            "need z < {lo} and t > {hi}, got z = {z}, t = {t}"
        )));
    }
    Ok(enclose(z, &p2.perm, t))
}

fn bounds<S: Symbol>(p: &Permutation<S>) -> (S, S) {
    // interleavings are never empty
    (p.min_symbol().unwrap(), p.max_symbol().unwrap())
}

fn enclose<S: Symbol>(first: S, p: &Permutation<S>, last: S) -> Permutation<S> {
    let mut symbols = Vec::with_capacity(p.len() + 2);
    symbols.push(first);
    symbols.extend_from_slice(p.symbols());
    symbols.push(last);
    Permutation::from_distinct(symbols)
}
