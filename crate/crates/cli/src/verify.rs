//! The `verify-paper` suite: every fixture and property of the library,
//! replayed in a fixed order.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use sqfree::crucial::blocked_by_half_len;
use sqfree::search::{enumerate_square_free, find_p_crucial_sharded, random_square_free};
use sqfree::{
    build_em, construction1, construction2, forbidden_factor_check, is_hml, is_p_crucial, level_decomposition,
    named_crucial, order_isomorphic, square_free_extension_witness, special_square_free, wrap1, wrap2,
    CrucialKind, Perm, PositionPattern, PositionSet, SearchSpec,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2025;
/// Random valid inputs per interleaving in the randomized suites.
pub const RANDOM_CASES: usize = 500;
/// Largest interleaving order drawn by the randomized suites.
pub const RANDOM_MAX_M: usize = 12;

pub const H2_PRIME: &str = "9 12 14 11 8 10 13";
pub const H2: &str = "15 9 12 14 11 8 10 13 7";
pub const E2_PRIME: &str = "16 15 2 9 17 12 3 14 18 11 4 8 19 10 5 13 20 7 6";
pub const E2: &str = "1 16 15 2 9 17 12 3 14 18 11 4 8 19 10 5 13 20 7 6 21";
pub const M: &str = "1 3 5 4 2 6";
pub const M_PRIME: &str = "1 4 6 5 2 3 7";
pub const P17: &str = "2 4 3 1 5 11 10 6 9 12 8 7 13 17 15 14 16";
pub const Q18: &str = "2 4 3 1 5 11 10 6 9 12 8 7 13 17 15 0 14 16";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub max_m: usize,
    pub max_n: usize,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type CheckResult = Result<String, String>;

fn perm(text: &str) -> Perm {
    text.parse().expect("fixture parses")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn example_m2_exact() -> CheckResult {
    let parts = build_em::<i64>(2).map_err(|e| e.to_string())?;
    for (name, got, want) in [
        ("h_prime", &parts.h_prime, H2_PRIME),
        ("h", &parts.h, H2),
        ("e_prime", &parts.e_prime, E2_PRIME),
        ("e", &parts.e, E2),
    ] {
        ensure(*got == perm(want), || format!("{name} = {got}, expected {want}"))?;
    }
    Ok("h_prime, h, e_prime, e match".into())
}

/// `E_m` has length `8m+5`, is square-free and `{0,1,8m+4,8m+5}`-crucial.
pub fn em_crucial(m: usize) -> Result<(), String> {
    let e = build_em::<i64>(m).map_err(|err| err.to_string())?.e;
    let n = 8 * m + 5;
    ensure(e.len() == n, || format!("m = {m}: length {}", e.len()))?;
    ensure(e.is_square_free(), || format!("m = {m}: not square-free"))?;
    let set = PositionSet::new(n, [0, 1, n - 1, n]).map_err(|err| err.to_string())?;
    ensure(is_p_crucial(&e, &set).map_err(|err| err.to_string())?, || {
        format!("m = {m}: not {{0,1,{},{}}}-crucial", n - 1, n)
    })
}

fn em_crucial_range(max_m: usize) -> CheckResult {
    (2..=max_m).into_par_iter().try_for_each(em_crucial)?;
    Ok(format!("m in [2, {max_m}]"))
}

fn em_not_s_crucial(max_m: usize) -> CheckResult {
    let top = max_m.min(10);
    for m in 2..=top {
        let e = build_em::<i64>(m).map_err(|err| err.to_string())?.e;
        let pos = 8 * m + 3;
        let w = square_free_extension_witness(&e, pos).map_err(|err| err.to_string())?;
        ensure(w.is_some(), || format!("m = {m}: position {pos} is blocked"))?;
        ensure(!named_crucial(&e, CrucialKind::S), || format!("m = {m}: S-crucial"))?;
    }
    Ok(format!("square-free extension at 8m+3 for m in [2, {top}]"))
}

fn em_interior_length4(max_m: usize) -> CheckResult {
    let top = max_m.min(5);
    for m in 2..=top {
        let e = build_em::<i64>(m).map_err(|err| err.to_string())?.e;
        for i in 3..=8 * m + 2 {
            ensure(blocked_by_half_len(&e, i, 2).unwrap(), || format!("m = {m}: position {i}"))?;
        }
    }
    Ok(format!("positions [3, 8m+2] for m in [2, {top}]"))
}

pub fn special_square_free_postconditions() -> CheckResult {
    for m in 2..=50 {
        let r = special_square_free::<i64>(m).map_err(|e| e.to_string())?;
        let s = r.symbols();
        ensure(s.len() == 2 * m - 1, || format!("m = {m}: length {}", s.len()))?;
        ensure(r.is_square_free(), || format!("m = {m}: not square-free"))?;
        ensure(s[1] > s[2] && s[2 * m - 4] > s[2 * m - 3], || format!("m = {m}: inequalities fail"))?;
    }
    Ok("m in [2, 50]".into())
}

/// Random value-separated blocks `(low, medium, high)` of order `m` with a
/// square-free medium block, at a random base value.
pub fn random_blocks<R: Rng>(rng: &mut R, m: usize) -> (Perm, Perm, Perm) {
    let base: i64 = rng.gen_range(-1000..1000);
    let gap: i64 = rng.gen_range(1..5);
    let mut low: Vec<i64> = (0..m as i64).map(|k| base + k).collect();
    low.shuffle(rng);
    let medium: Perm = random_square_free(2 * m - 1, rng);
    let medium = medium.shifted(base + m as i64 + gap - 1);
    let top = base + 3 * m as i64 + 2 * gap;
    let mut high: Vec<i64> = (0..m as i64).map(|k| top + k).collect();
    high.shuffle(rng);
    (Perm::new(low).unwrap(), medium, Perm::new(high).unwrap())
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteFailures {
    pub construction1: usize,
    pub construction2: usize,
    pub forbidden_factor: usize,
    pub wrappers: usize,
}

impl SuiteFailures {
    pub fn total(&self) -> usize {
        self.construction1 + self.construction2 + self.forbidden_factor + self.wrappers
    }
}

/// Runs `cases` random valid inputs through each interleaving and wrapper.
pub fn random_construction_suite(seed: u64, cases: usize) -> SuiteFailures {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SuiteFailures::default();
    for _ in 0..cases {
        let m = rng.gen_range(1..=RANDOM_MAX_M);
        let (low, medium, high) = random_blocks(&mut rng, m);
        let ok1 = construction1(&low, &medium, &high).ok().filter(|out| {
            let p = out.perm();
            p.len() == 4 * m - 1
                && p.is_square_free()
                && is_hml(p)
                && level_decomposition(p).map(|d| d.offset()) == Some(1)
        });
        let ok2 = construction2(&high, &medium, &low).ok().filter(|out| {
            let p = out.perm();
            p.len() == 4 * m - 1
                && p.is_square_free()
                && is_hml(p)
                && level_decomposition(p).map(|d| d.offset()) == Some(3)
        });
        f.construction1 += ok1.is_none() as usize;
        f.construction2 += ok2.is_none() as usize;
        for out in ok1.iter().chain(ok2.iter()) {
            f.forbidden_factor += !forbidden_factor_check(out.perm()) as usize;
        }
        if let Some(out) = &ok1 {
            let (lo, hi) = (out.perm().min_symbol().unwrap(), out.perm().max_symbol().unwrap());
            let x = hi + rng.gen_range(1..10);
            let y = lo - rng.gen_range(1..10);
            let good = wrap1(x, out, y).map(|w| w.is_square_free()).unwrap_or(false);
            f.wrappers += !good as usize;
        }
        if let Some(out) = &ok2 {
            let (lo, hi) = (out.perm().min_symbol().unwrap(), out.perm().max_symbol().unwrap());
            let z = lo - rng.gen_range(1..10);
            let t = hi + rng.gen_range(1..10);
            let good = wrap2(z, out, t).map(|w| w.is_square_free()).unwrap_or(false);
            f.wrappers += !good as usize;
        }
    }
    f
}

fn random_suite_check(seed: u64) -> CheckResult {
    let f = random_construction_suite(seed, RANDOM_CASES);
    ensure(f.total() == 0, || format!("failures: {f:?}"))?;
    Ok(format!("{RANDOM_CASES} cases per interleaving, m in [1, {RANDOM_MAX_M}], seed {seed}"))
}

pub fn m_counterexample() -> CheckResult {
    let (m, m_prime) = (perm(M), perm(M_PRIME));
    ensure(m.is_square_free(), || "M has a square".into())?;
    ensure(m_prime.is_square_free(), || "M' has a square".into())?;
    let exts = m.extensions(4).map_err(|e| e.to_string())?;
    ensure(exts.iter().any(|e| order_isomorphic(e, &m_prime)), || "M' is not an extension of M at 4".into())?;
    ensure(m.len() - 2 == 4, || "position is not n-2".into())?;
    Ok("M, M' square-free; M' extends M at position n-2".into())
}

pub fn p17_fixture() -> CheckResult {
    let (p, q) = (perm(P17), perm(Q18));
    let set = PositionSet::new(17, [0, 1, 16, 17]).unwrap();
    ensure(is_p_crucial(&p, &set).unwrap(), || "P is not {0,1,16,17}-crucial".into())?;
    ensure(q.is_square_free(), || "Q has a square".into())?;
    let exts = p.extensions(15).unwrap();
    ensure(exts.iter().any(|e| order_isomorphic(e, &q)), || "Q is not an extension of P at 15".into())?;
    ensure(!named_crucial(&p, CrucialKind::S), || "P is S-crucial".into())?;
    Ok("P {0,1,16,17}-crucial; Q square-free extension at 15".into())
}

fn square_free_of_length(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    enumerate_square_free::<i64, _>(n, |p| out.push(Perm::new(p.to_vec()).unwrap()));
    out
}

/// Discrepancies between S-cruciality and `{0,1,2,n-2,n-1,n}`-cruciality
/// over all square-free permutations of length `n`.
pub fn s_crucial_discrepancies(n: usize) -> usize {
    square_free_of_length(n)
        .par_iter()
        .filter(|p| {
            let six = PositionSet::new(n, [0, 1, 2, n - 2, n - 1, n]).unwrap();
            named_crucial(*p, CrucialKind::S) != is_p_crucial(p, &six).unwrap()
        })
        .count()
}

/// `(permutation, position)` pairs in `[3, n-3]` with an extension free of
/// length-4 squares.
pub fn interior_counterexamples(n: usize) -> usize {
    square_free_of_length(n)
        .par_iter()
        .map(|p| (3..=n.saturating_sub(3)).filter(|&i| !blocked_by_half_len(p, i, 2).unwrap()).count())
        .sum()
}

fn s_crucial_equivalence(max_n: usize) -> CheckResult {
    let top = max_n.min(9);
    for n in 5..=top {
        let bad = s_crucial_discrepancies(n);
        ensure(bad == 0, || format!("n = {n}: {bad} discrepancies"))?;
    }
    Ok(format!("n in [5, {top}]"))
}

fn interior_length4(max_n: usize) -> CheckResult {
    let top = max_n.min(9);
    for n in 5..=top {
        let bad = interior_counterexamples(n);
        ensure(bad == 0, || format!("n = {n}: {bad} counterexamples"))?;
    }
    Ok(format!("n in [5, {top}]"))
}

fn no_outer_crucial(max_n: usize) -> CheckResult {
    let top = max_n.min(11);
    for n in 4..=top {
        let spec = SearchSpec::crucial(n, PositionPattern::outer_pairs());
        let result = find_p_crucial_sharded::<i64>(&spec, 16, rayon::current_num_threads())
            .map_err(|e| e.to_string())?;
        ensure(result.hits.is_empty(), || format!("n = {n}: {} hits", result.hits.len()))?;
    }
    Ok(format!("n in [4, {top}]"))
}

pub fn verify_paper(max_m: usize, max_n: usize, seed: u64) -> Result<Report, String> {
    if max_m < 2 {
        return Err(format!("--max-m must be at least 2, got {max_m}"));
    }
    if max_n < 5 {
        return Err(format!("--max-n must be at least 5, got {max_n}"));
    }
    type Check = Box<dyn Fn() -> CheckResult + Send + Sync>;
    let checks: Vec<(&'static str, Check)> = vec![
        ("example_m2_exact", Box::new(example_m2_exact)),
        ("em_crucial", Box::new(move || em_crucial_range(max_m))),
        ("em_not_s_crucial", Box::new(move || em_not_s_crucial(max_m))),
        ("em_interior_length4_squares", Box::new(move || em_interior_length4(max_m))),
        ("special_square_free", Box::new(special_square_free_postconditions)),
        ("random_interleavings_and_wrappers", Box::new(move || random_suite_check(seed))),
        ("m_prime_counterexample", Box::new(m_counterexample)),
        ("p17_q18_fixture", Box::new(p17_fixture)),
        ("s_crucial_equivalence", Box::new(move || s_crucial_equivalence(max_n))),
        ("interior_length4_squares", Box::new(move || interior_length4(max_n))),
        ("no_outer_crucial_small_n", Box::new(move || no_outer_crucial(max_n))),
    ];
    let outcomes = checks
        .par_iter()
        .map(|(name, check)| {
            let started = Instant::now();
            let result = check();
            let elapsed_secs = started.elapsed().as_secs_f64();
            let (passed, detail) = match result {
                Ok(detail) => (true, detail),
                Err(detail) => (false, detail),
            };
            CheckOutcome { name, passed, detail, elapsed_secs }
        })
        .collect();
    Ok(Report { max_m, max_n, seed, checks: outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_scope_passes() {
        let report = verify_paper(2, 5, DEFAULT_SEED).unwrap();
        assert!(report.all_passed(), "{report:#?}");
        assert_eq!(report.checks.len(), 11);
    }

    #[test]
    fn parameters_checked() {
        assert!(verify_paper(1, 9, 0).is_err());
        assert!(verify_paper(2, 4, 0).is_err());
    }

    #[test]
    fn random_suite_is_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(random_blocks(&mut a, 5), random_blocks(&mut b, 5));
        assert_eq!(random_construction_suite(9, 50).total(), 0);
    }
}
