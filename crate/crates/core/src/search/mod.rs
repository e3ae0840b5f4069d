//! Exhaustive enumeration of square-free permutations.
//!
//! Prefixes are extended one symbol at a time in lexicographic order and
//! abandoned as soon as a square ends at the newest symbol. Every square of
//! a permutation ends at the last index of some prefix, so nothing
//! square-free is ever cut.
//!
//! Shards split the tree at a fixed prefix depth: the surviving prefixes at
//! that depth are numbered in lexicographic order and prefix `k` belongs to
//! shard `k mod shard_count`.

pub mod naive;

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::crucial::{blocked_in, PositionPattern, PositionSet};
use crate::error::{Error, Result};
use crate::perm::{suffix_square, Permutation};
use crate::symbol::Symbol;

/// Largest length searched without an explicit override.
pub const DEFAULT_CEILING: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Shard {
    pub prefix_depth: usize,
    pub index: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    CountSquareFree,
    FindCrucial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub n: usize,
    pub positions: PositionPattern,
    pub mode: SearchMode,
    pub shard: Option<Shard>,
    pub ceiling: usize,
    pub force: bool,
}

impl SearchSpec {
    /// Search for permutations of length `n` crucial at `positions`.
    pub fn crucial(n: usize, positions: PositionPattern) -> Self {
        SearchSpec {
            n,
            positions,
            mode: SearchMode::FindCrucial,
            shard: None,
            ceiling: DEFAULT_CEILING,
            force: false,
        }
    }

    /// Count square-free permutations of length `n`.
    pub fn count(n: usize) -> Self {
        SearchSpec {
            mode: SearchMode::CountSquareFree,
            ..Self::crucial(n, PositionPattern::Terms(Vec::new()))
        }
    }

    pub fn with_shard(mut self, shard: Shard) -> Self {
        self.shard = Some(shard);
        self
    }

    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn forced(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    fn validate(&self) -> Result<PositionSet> {
        if self.n < 1 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if self.n > self.ceiling && !self.force {
            return Err(Error::AboveCeiling { n: self.n, ceiling: self.ceiling });
        }
        if let Some(shard) = self.shard {
            if shard.count == 0 || shard.index >= shard.count {
                return Err(Error::InvalidParameter(format!(
                    "shard {} of {} is out of range",
                    shard.index, shard.count
                )));
            }
            if shard.prefix_depth > self.n {
                return Err(Error::InvalidParameter(format!(
                    "prefix depth {} exceeds n = {}",
                    shard.prefix_depth, self.n
                )));
            }
        }
        self.positions.resolve(self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "S: Symbol")]
pub struct SearchResult<S> {
    pub n: usize,
    pub positions: PositionSet,
    pub total_enumerated: u64,
    pub hits: Vec<Permutation<S>>,
    #[serde(rename = "elapsed_secs", serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<Z: Serializer>(d: &Duration, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
    s.serialize_f64(d.as_secs_f64())
}

struct Walker<'a, S, F> {
    n: usize,
    prefix: Vec<S>,
    used: Vec<bool>,
    shard: Option<Shard>,
    prefix_ordinal: usize,
    visit: &'a mut F,
    count: u64,
}

impl<S: Symbol, F: FnMut(&[S])> Walker<'_, S, F> {
    fn descend(&mut self) {
        let depth = self.prefix.len();
        if let Some(shard) = self.shard {
            if depth == shard.prefix_depth {
                let mine = self.prefix_ordinal % shard.count == shard.index;
                self.prefix_ordinal += 1;
                if !mine {
                    return;
                }
            }
        }
        if depth == self.n {
            self.count += 1;
            (self.visit)(&self.prefix);
            return;
        }
        for v in 0..self.n {
            if self.used[v] {
                continue;
            }
            self.used[v] = true;
            self.prefix.push(S::from_rank(v + 1));
            if suffix_square(&self.prefix).is_none() {
                self.descend();
            }
            self.prefix.pop();
            self.used[v] = false;
        }
    }
}

fn walk<S: Symbol, F: FnMut(&[S])>(n: usize, shard: Option<Shard>, visit: &mut F) -> u64 {
    let mut walker = Walker {
        n,
        prefix: Vec::with_capacity(n),
        used: vec![false; n],
        shard,
        prefix_ordinal: 0,
        visit,
        count: 0,
    };
    walker.descend();
    walker.count
}

/// Calls `visit` on every square-free permutation of `{1, …, n}` in
/// lexicographic order and returns how many there were.
pub fn enumerate_square_free<S: Symbol, F: FnMut(&[S])>(n: usize, mut visit: F) -> u64 {
    walk(n, None, &mut visit)
}

/// Like [`enumerate_square_free`] restricted to one shard.
pub fn enumerate_shard<S: Symbol, F: FnMut(&[S])>(n: usize, shard: Shard, mut visit: F) -> u64 {
    walk(n, Some(shard), &mut visit)
}

pub fn count_square_free(n: usize) -> u64 {
    enumerate_square_free::<i32, _>(n, |_| {})
}

/// Number of square-free prefixes of length `depth` of permutations of
/// `{1, …, n}`.
fn prefixes_at(n: usize, depth: usize) -> u64 {
    let mut count = 0;
    let mut prefix: Vec<i32> = Vec::with_capacity(depth);
    let mut used = vec![false; n];
    fn go(n: usize, depth: usize, prefix: &mut Vec<i32>, used: &mut [bool], count: &mut u64) {
        if prefix.len() == depth {
            *count += 1;
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            used[v] = true;
            prefix.push(v as i32);
            if suffix_square(prefix).is_none() {
                go(n, depth, prefix, used, count);
            }
            prefix.pop();
            used[v] = false;
        }
    }
    go(n, depth, &mut prefix, &mut used, &mut count);
    count
}

/// Splits `base` into `shard_count` disjoint shards whose union is the
/// whole search.
pub fn shard_plan(base: &SearchSpec, shard_count: usize) -> Result<Vec<SearchSpec>> {
    if shard_count < 1 {
        return Err(Error::InvalidParameter("shard count must be at least 1".into()));
    }
    if shard_count == 1 {
        return Ok(vec![SearchSpec { shard: None, ..base.clone() }]);
    }
    let n = base.n;
    let depth = (1..=n)
        .find(|&d| prefixes_at(n, d) >= shard_count as u64)
        .unwrap_or(n);
    Ok((0..shard_count)
        .map(|index| {
            base.clone().with_shard(Shard { prefix_depth: depth, index, count: shard_count })
        })
        .collect())
}

/// Runs one (possibly sharded) search.
///
/// In crucial mode the hits are every square-free permutation of length `n`
/// blocked at each resolved position; in count mode there are no hits.
pub fn find_p_crucial<S: Symbol>(spec: &SearchSpec) -> Result<SearchResult<S>> {
    let positions = spec.validate()?;
    let started = Instant::now();
    let mut hits = Vec::new();
    let want_hits = spec.mode == SearchMode::FindCrucial;
    let mut visit = |p: &[S]| {
        if want_hits && positions.iter().all(|pos| blocked_in(p, true, pos)) {
            hits.push(Permutation::from_distinct(p.to_vec()));
        }
    };
    let total = walk(spec.n, spec.shard, &mut visit);
    Ok(SearchResult {
        n: spec.n,
        positions,
        total_enumerated: total,
        hits,
        elapsed: started.elapsed(),
    })
}

/// Runs `base` split into `shard_count` shards on up to `jobs` threads and
/// merges the results. The merged hits are identical to an unsharded run.
pub fn find_p_crucial_sharded<S: Symbol>(
    base: &SearchSpec,
    shard_count: usize,
    jobs: usize,
) -> Result<SearchResult<S>> {
    let plan = shard_plan(base, shard_count)?;
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let parts: Vec<SearchResult<S>> =
        pool.install(|| plan.par_iter().map(find_p_crucial).collect::<Result<_>>())?;
    merge(parts, started.elapsed())
}

fn merge<S: Symbol>(parts: Vec<SearchResult<S>>, elapsed: Duration) -> Result<SearchResult<S>> {
    let mut parts = parts.into_iter();
    let mut merged = parts.next().expect("at least one shard");
    for part in parts {
        merged.total_enumerated += part.total_enumerated;
        merged.hits.extend(part.hits);
    }
    merged.hits.sort_unstable();
    if let Some(w) = merged.hits.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateHit(w[0].to_string()));
    }
    merged.elapsed = elapsed;
    Ok(merged)
}

/// A uniformly shuffled depth-first walk to the first square-free
/// permutation of length `n`.
pub fn random_square_free<S: Symbol, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation<S> {
    fn go<S: Symbol, R: Rng + ?Sized>(n: usize, prefix: &mut Vec<S>, used: &mut [bool], rng: &mut R) -> bool {
        if prefix.len() == n {
            return true;
        }
        let mut candidates: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
        candidates.shuffle(rng);
        for v in candidates {
            used[v] = true;
            prefix.push(S::from_rank(v + 1));
            if suffix_square(prefix).is_none() && go(n, prefix, used, rng) {
                return true;
            }
            prefix.pop();
            used[v] = false;
        }
        false
    }
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n];
    assert!(go(n, &mut prefix, &mut used, rng), "square-free permutations exist for every length");
    Permutation::from_distinct(prefix)
}
