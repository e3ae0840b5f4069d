//! Square-free permutations and their crucial extensions.
//!
//! * [`perm`]: permutations, order-isomorphism, squares and extensions.
//! * [`constructions`]: level decompositions, the two high-medium-low
//!   interleavings, their wrappers and the length-`8m+5` crucial builder.
//! * [`crucial`]: blocked positions and P-crucial predicates.
//! * [`search`]: pruned exhaustive enumeration with sharding, plus a naive
//!   reference mode.
//!
//! Everything is generic over the [`Symbol`] integer type; the aliases below
//! fix it to `i64` (or `i32`) for everyday use.

pub mod constructions;
pub mod crucial;
mod error;
pub mod perm;
pub mod search;
mod symbol;

pub use constructions::{
    build_em, construction1, construction2, forbidden_factor_check, is_hml, level_decomposition,
    special_square_free, wrap1, wrap2, Interleaved, Interleaving, Level, LevelDecomposition,
};
pub use crucial::{
    blocked_positions, is_p_crucial, is_p_crucial_strict, named_crucial, position_blocked,
    square_free_extension_witness, CrucialKind, PositionPattern, PositionSet,
};
pub use error::{Error, Result};
pub use perm::{canonicalize, order_isomorphic, Permutation, SquareWitness};
pub use search::{count_square_free, enumerate_square_free, find_p_crucial, shard_plan, SearchSpec};
pub use symbol::Symbol;

/// Permutation over `i64` symbols.
pub type Perm = Permutation<i64>;
/// Permutation over `i32` symbols.
pub type Perm32 = Permutation<i32>;
pub type EmParts = constructions::EmParts<i64>;
pub type SearchResult = search::SearchResult<i64>;
