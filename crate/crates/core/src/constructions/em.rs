use serde::Serialize;

use super::{construction1, construction2, wrap1, wrap2};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::symbol::Symbol;

/// Square-free permutation `r` of length `2m - 1` over `{1, …, 2m-1}` with
/// `r_2 > r_3` and `r_{2m-3} > r_{2m-2}`.
///
/// Even `m = 2k` interleaves (high-medium-low) an ascending top block, the
/// recursive result for `k`, and an ascending bottom block. Odd `m = 2k + 1`
/// interleaves (low-medium-high) ascending outer blocks around the recursive
/// result for `k + 1`, then drops the first and last symbols.
pub fn special_square_free<S: Symbol>(m: usize) -> Result<Permutation<S>> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m must be at least 2, got {m}")));
    }
    let r = special(m);
    let s = r.symbols();
    let len = s.len();
    assert!(len == 2 * m - 1 && r.is_canonical());
    assert!(s[1] > s[2] && s[len - 3] > s[len - 2], "inequalities fail for m = {m}");
    assert!(r.is_square_free(), "square in special permutation for m = {m}");
    Ok(r)
}

fn special<S: Symbol>(m: usize) -> Permutation<S> {
    if m == 1 {
        return Permutation::identity(1);
    }
    let k = m / 2;
    if m % 2 == 0 {
        let bottom = Permutation::ascending(1, k);
        let medium = special::<S>(k).shifted(S::from_rank(k));
        let top = Permutation::ascending(3 * k, 4 * k - 1);
        construction2(&top, &medium, &bottom)
            .expect("blocks are separated and the medium block is square-free")
            .into_perm()
    } else {
        let lower = Permutation::ascending(1, k + 1);
        let medium = special::<S>(k + 1).shifted(S::from_rank(k + 1));
        let upper = Permutation::ascending(3 * k + 3, 4 * k + 3);
        let q = construction1(&lower, &medium, &upper)
            .expect("blocks are separated and the medium block is square-free")
            .into_perm();
        q.factor(2, q.len() - 1).expect("length at least 7").canonical()
    }
}

/// Every intermediate permutation of the `{0, 1, 8m+4, 8m+5}`-crucial
/// construction, retained for inspection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "S: Symbol")]
pub struct EmParts<S> {
    pub m: usize,
    pub r: Permutation<S>,
    pub y: Permutation<S>,
    pub x: Permutation<S>,
    pub z: Permutation<S>,
    pub h_prime: Permutation<S>,
    pub h: Permutation<S>,
    pub s: Permutation<S>,
    pub t: Permutation<S>,
    pub e_prime: Permutation<S>,
    pub e: Permutation<S>,
}

impl<S: Symbol> EmParts<S> {
    /// Named parts in pipeline order.
    pub fn parts(&self) -> [(&'static str, &Permutation<S>); 10] {
        [
            ("r", &self.r),
            ("y", &self.y),
            ("x", &self.x),
            ("z", &self.z),
            ("h_prime", &self.h_prime),
            ("h", &self.h),
            ("s", &self.s),
            ("t", &self.t),
            ("e_prime", &self.e_prime),
            ("e", &self.e),
        ]
    }
}

/// Builds the length-`8m+5` square-free permutation `E_m` and its parts.
pub fn build_em<S: Symbol>(m: usize) -> Result<EmParts<S>> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m must be at least 2, got {m}")));
    }
    let sym = S::from_rank;

    let r = special_square_free::<S>(m)?;
    let y = r.shifted(sym(3 * m + 3));
    let x = Permutation::descending(3 * m + 3, 2 * m + 4);
    let z = Permutation::descending(6 * m + 2, 5 * m + 3);
    let h_prime = construction1(&x, &y, &z)?;
    let h = wrap1(sym(6 * m + 3), &h_prime, sym(2 * m + 3))?;
    let s = Permutation::ascending(6 * m + 4, 8 * m + 4);
    let t = Permutation::ascending(2, 2 * m + 2);
    let e_prime = construction2(&s, &h, &t)?;
    let e = wrap2(sym(1), &e_prime, sym(8 * m + 5))?;

    Ok(EmParts {
        m,
        r,
        y,
        x,
        z,
        h_prime: h_prime.into_perm(),
        h,
        s,
        t,
        e_prime: e_prime.into_perm(),
        e,
    })
}
