//! The integer types a permutation may be written over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{FromPrimitive, PrimInt, Signed, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// A signed integer of at least 32 bits usable as a permutation symbol.
///
/// Only the relative order of symbols matters for every pattern notion in
/// this crate, so any such type works; the crate root exports aliases for
/// the common choices.
pub trait Symbol:
    PrimInt
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Debug
    + Display
    + FromStr
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Converts a rank or position into a symbol.
    ///
    /// Ranks used here never exceed a few thousand, far inside every
    /// implementing type.
    fn from_rank(rank: usize) -> Self {
        Self::from_usize(rank).expect("rank fits in symbol type")
    }
}

impl Symbol for i32 {}
impl Symbol for i64 {}
impl Symbol for i128 {}
