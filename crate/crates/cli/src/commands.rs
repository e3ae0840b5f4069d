use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sqfree::search::{find_p_crucial_sharded, SearchSpec, DEFAULT_CEILING};
use sqfree::{
    blocked_positions, build_em, construction1, construction2, count_square_free, is_hml, is_p_crucial,
    level_decomposition, order_isomorphic, square_free_extension_witness, special_square_free, wrap1, wrap2,
    CrucialKind, Interleaved, Interleaving, Level, Perm, PositionPattern, PositionSet,
};

use crate::output::{Format, OutputRecord, Status};
use crate::verify::{verify_paper, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(name = "sqfree", version, about = "Square-free permutations and crucial extensions")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Exit with status 1 when the command's property does not hold
    #[arg(long, global = true)]
    pub assert: bool,

    #[command(subcommand)]
    pub command: Command,
}

/// A permutation given inline (symbols as separate arguments or one quoted
/// argument) or one per line in a file.
#[derive(Debug, Args)]
pub struct PermInput {
    /// Read permutations from a file, one per line
    #[arg(long)]
    pub file: Option<PathBuf>,

    #[arg(allow_negative_numbers = true)]
    pub symbols: Vec<String>,
}

/// Several permutations, one per argument (quote each) or per file line.
#[derive(Debug, Args)]
pub struct PermList {
    #[arg(long)]
    pub file: Option<PathBuf>,

    #[arg(allow_negative_numbers = true)]
    pub perms: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Square-freeness and the leftmost square
    Check(PermInput),
    /// Whether two permutations are order-isomorphic
    Iso(PermList),
    /// Extensions at a position (all ranks, or one with --rank)
    Extend {
        #[arg(long)]
        pos: usize,
        #[arg(long)]
        rank: Option<usize>,
        #[command(flatten)]
        input: PermInput,
    },
    /// Lower / medium / upper levels
    Levels(PermInput),
    /// High-medium-low test
    Hml(PermInput),
    /// Interleave low, medium, high blocks
    C1(PermList),
    /// Interleave high, medium, low blocks
    C2(PermList),
    /// x · P · y around a c1 output
    Wrap1 {
        #[arg(allow_negative_numbers = true)]
        x: i64,
        #[arg(allow_negative_numbers = true)]
        y: i64,
        #[command(flatten)]
        input: PermInput,
    },
    /// z · P · t around a c2 output
    Wrap2 {
        #[arg(allow_negative_numbers = true)]
        z: i64,
        #[arg(allow_negative_numbers = true)]
        t: i64,
        #[command(flatten)]
        input: PermInput,
    },
    /// Square-free permutation of length 2m-1 with the two descents
    Sfperm { m: usize },
    /// The length-(8m+5) {0,1,8m+4,8m+5}-crucial permutation and its parts
    BuildEm { m: usize },
    /// P-crucial test
    Crucial {
        /// e.g. 0,1,n-1,n or left|right|bi|s|interior
        #[arg(long, conflicts_with = "kind", required_unless_present = "kind")]
        positions: Option<String>,
        #[arg(long)]
        kind: Option<String>,
        #[command(flatten)]
        input: PermInput,
    },
    /// All blocked positions
    Blocked(PermInput),
    /// Smallest-rank square-free extension at a position
    Witness {
        #[arg(long)]
        pos: usize,
        #[command(flatten)]
        input: PermInput,
    },
    /// Number of square-free permutations of length n
    CountSquarefree { n: usize },
    /// Exhaustive search for P-crucial square-free permutations
    Search {
        n: usize,
        /// Position pattern; without it only square-free permutations are counted
        #[arg(long)]
        positions: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write hits here, one per line
        #[arg(long)]
        output: Option<PathBuf>,
        /// Omit the hit list from the summary
        #[arg(long)]
        count_only: bool,
        /// Allow n above the ceiling
        #[arg(long)]
        force: bool,
    },
    /// Replay every fixture and property check
    VerifyPaper {
        #[arg(long, default_value_t = 5)]
        max_m: usize,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Iso(_) => "iso",
            Command::Extend { .. } => "extend",
            Command::Levels(_) => "levels",
            Command::Hml(_) => "hml",
            Command::C1(_) => "c1",
            Command::C2(_) => "c2",
            Command::Wrap1 { .. } => "wrap1",
            Command::Wrap2 { .. } => "wrap2",
            Command::Sfperm { .. } => "sfperm",
            Command::BuildEm { .. } => "build-em",
            Command::Crucial { .. } => "crucial",
            Command::Blocked(_) => "blocked",
            Command::Witness { .. } => "witness",
            Command::CountSquarefree { .. } => "count-squarefree",
            Command::Search { .. } => "search",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }
}

type Outcome = Result<Vec<(Value, Value, Option<bool>)>, String>;

fn read_lines(path: &PathBuf) -> Result<Vec<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(text.lines().filter(|l| !l.trim().is_empty()).map(str::to_string).collect())
}

fn parse(text: &str) -> Result<Perm, String> {
    let p: Perm = text.parse().map_err(|e: sqfree::Error| e.to_string())?;
    if p.is_empty() {
        return Err("empty permutation".into());
    }
    Ok(p)
}

impl PermInput {
    fn perms(&self) -> Result<Vec<Perm>, String> {
        match &self.file {
            Some(path) => {
                if !self.symbols.is_empty() {
                    return Err("give symbols inline or --file, not both".into());
                }
                read_lines(path)?.iter().map(|l| parse(l)).collect()
            }
            None if self.symbols.is_empty() => Err("missing permutation".into()),
            None => Ok(vec![parse(&self.symbols.join(" "))?]),
        }
    }
}

impl PermList {
    fn perms(&self, count: usize) -> Result<Vec<Perm>, String> {
        let texts = match &self.file {
            Some(path) => read_lines(path)?,
            None => self.perms.clone(),
        };
        if texts.len() != count {
            return Err(format!("expected {count} permutations, got {}", texts.len()));
        }
        texts.iter().map(|t| parse(t)).collect()
    }
}

fn syms(p: &Perm) -> Value {
    json!(p.symbols())
}

fn positions(set: &PositionSet) -> Value {
    json!(set.iter().collect::<Vec<_>>())
}

fn each(input: &PermInput, f: impl Fn(&Perm) -> Result<(Value, Option<bool>), String>) -> Outcome {
    input
        .perms()?
        .iter()
        .map(|p| f(p).map(|(result, prop)| (json!({ "perm": syms(p) }), result, prop)))
        .collect()
}

fn interleave(list: &PermList, kind: Interleaving) -> Outcome {
    let ps = list.perms(3)?;
    let out = match kind {
        Interleaving::LowMediumHigh => construction1(&ps[0], &ps[1], &ps[2]),
        Interleaving::HighMediumLow => construction2(&ps[0], &ps[1], &ps[2]),
    }
    .map_err(|e| e.to_string())?;
    let p = out.perm();
    let input = json!({ "blocks": ps.iter().map(syms).collect::<Vec<_>>() });
    Ok(vec![(input, json!({ "perm": syms(p), "square_free": p.is_square_free() }), None)])
}

fn level_name(level: Level) -> &'static str {
    match level {
        Level::Lower => "lower",
        Level::Medium => "medium",
        Level::Upper => "upper",
    }
}

fn run_search(
    n: usize,
    pattern: Option<&str>,
    jobs: usize,
    output: Option<&PathBuf>,
    count_only: bool,
    force: bool,
) -> Outcome {
    let spec = match pattern {
        Some(text) => SearchSpec::crucial(n, text.parse().map_err(|e: sqfree::Error| e.to_string())?),
        None => SearchSpec::count(n),
    }
    .forced(force);
    let shards = if jobs > 1 { jobs * 4 } else { 1 };
    let result = find_p_crucial_sharded::<i64>(&spec, shards, jobs).map_err(|e| e.to_string())?;
    if let Some(path) = output {
        let mut text = String::new();
        for hit in &result.hits {
            text.push_str(&hit.to_string());
            text.push('\n');
        }
        fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let mut summary = json!({
        "n": result.n,
        "mode": spec.mode,
        "positions": pattern.map(|_| positions(&result.positions)),
        "total_enumerated": result.total_enumerated,
        "hit_count": result.hits.len(),
        "elapsed_secs": result.elapsed.as_secs_f64(),
    });
    if !count_only {
        summary["hits"] = json!(result.hits.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    }
    let input = json!({ "n": n, "positions": pattern, "jobs": jobs, "ceiling": DEFAULT_CEILING });
    Ok(vec![(input, summary, None)])
}

fn execute(command: &Command) -> Outcome {
    match command {
        Command::Check(input) => each(input, |p| {
            let w = p.find_square();
            Ok((json!({ "square_free": w.is_none(), "square": w }), Some(w.is_none())))
        }),
        Command::Iso(list) => {
            let ps = list.perms(2)?;
            let iso = order_isomorphic(&ps[0], &ps[1]);
            let input = json!({ "p": syms(&ps[0]), "q": syms(&ps[1]) });
            Ok(vec![(input, json!({ "order_isomorphic": iso }), Some(iso))])
        }
        Command::Extend { pos, rank, input } => each(input, |p| {
            let exts = match rank {
                Some(r) => vec![p.extension_at(*pos, *r).map_err(|e| e.to_string())?],
                None => p.extensions(*pos).map_err(|e| e.to_string())?,
            };
            let list: Vec<Value> = exts
                .iter()
                .map(|e| json!({ "rank": e.symbols()[*pos], "perm": e.to_string(), "square_free": e.is_square_free() }))
                .collect();
            Ok((json!({ "pos": pos, "extensions": list }), None))
        }),
        Command::Levels(input) => each(input, |p| {
            let d = level_decomposition(p);
            let result = match &d {
                Some(d) => json!({
                    "offset": d.offset(),
                    "lower": d.symbols_on(p, Level::Lower),
                    "medium": d.symbols_on(p, Level::Medium),
                    "upper": d.symbols_on(p, Level::Upper),
                    "levels": (1..=p.len()).map(|k| level_name(d.level_of(k).unwrap())).collect::<Vec<_>>(),
                }),
                None => json!({ "offset": null }),
            };
            Ok((result, Some(d.is_some())))
        }),
        Command::Hml(input) => each(input, |p| {
            let hml = is_hml(p);
            Ok((json!({ "hml": hml }), Some(hml)))
        }),
        Command::C1(list) => interleave(list, Interleaving::LowMediumHigh),
        Command::C2(list) => interleave(list, Interleaving::HighMediumLow),
        Command::Wrap1 { x, y, input } => each(input, |p| {
            let built = Interleaved::recognize(p, Interleaving::LowMediumHigh).map_err(|e| e.to_string())?;
            let w = wrap1(*x, &built, *y).map_err(|e| e.to_string())?;
            Ok((json!({ "perm": syms(&w), "square_free": w.is_square_free() }), None))
        }),
        Command::Wrap2 { z, t, input } => each(input, |p| {
            let built = Interleaved::recognize(p, Interleaving::HighMediumLow).map_err(|e| e.to_string())?;
            let w = wrap2(*z, &built, *t).map_err(|e| e.to_string())?;
            Ok((json!({ "perm": syms(&w), "square_free": w.is_square_free() }), None))
        }),
        Command::Sfperm { m } => {
            let r = special_square_free::<i64>(*m).map_err(|e| e.to_string())?;
            Ok(vec![(json!({ "m": m }), json!({ "perm": syms(&r) }), None)])
        }
        Command::BuildEm { m } => {
            let parts = build_em::<i64>(*m).map_err(|e| e.to_string())?;
            let mut result = serde_json::to_value(&parts).expect("parts serialize");
            result.as_object_mut().unwrap().remove("m");
            Ok(vec![(json!({ "m": m }), result, None)])
        }
        Command::Crucial { positions: pattern, kind, input } => each(input, |p| {
            let n = p.len();
            let set = match (pattern, kind) {
                (Some(text), _) => text
                    .parse::<PositionPattern>()
                    .and_then(|pat| pat.resolve(n))
                    .map_err(|e| e.to_string())?,
                (None, Some(k)) => PositionSet::named(n, k.parse::<CrucialKind>().map_err(|e| e.to_string())?),
                (None, None) => return Err("give --positions or --kind".into()),
            };
            let crucial = is_p_crucial(p, &set).map_err(|e| e.to_string())?;
            Ok((json!({ "positions": positions(&set), "crucial": crucial }), Some(crucial)))
        }),
        Command::Blocked(input) => each(input, |p| {
            Ok((json!({ "square_free": p.is_square_free(), "blocked": positions(&blocked_positions(p)) }), None))
        }),
        Command::Witness { pos, input } => each(input, |p| {
            let w = square_free_extension_witness(p, *pos).map_err(|e| e.to_string())?;
            let blocked = w.is_none();
            Ok((json!({ "pos": pos, "blocked": blocked, "witness": w.map(|w| syms(&w)) }), None))
        }),
        Command::CountSquarefree { n } => {
            if *n < 1 {
                return Err("n must be at least 1".into());
            }
            Ok(vec![(json!({ "n": n }), json!({ "count": count_square_free(*n) }), None)])
        }
        Command::Search { n, positions: pattern, jobs, output, count_only, force } => {
            run_search(*n, pattern.as_deref(), *jobs, output.as_ref(), *count_only, *force)
        }
        Command::VerifyPaper { max_m, max_n, seed } => {
            let report = verify_paper(*max_m, *max_n, *seed)?;
            let passed = report.all_passed();
            let input = json!({ "max_m": max_m, "max_n": max_n, "seed": seed });
            let result = json!({
                "all_passed": passed,
                "checks": report.checks.iter().map(|c| json!({
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                    "elapsed_secs": c.elapsed_secs,
                })).collect::<Vec<_>>(),
            });
            Ok(vec![(input, result, Some(passed))])
        }
    }
}

/// Runs a parsed invocation and returns its records.
pub fn dispatch(cli: &Cli) -> Vec<OutputRecord> {
    let name = cli.command.name();
    // verify-paper reports failures whether or not --assert is given
    let always_assert = matches!(cli.command, Command::VerifyPaper { .. });
    match execute(&cli.command) {
        Err(message) => vec![OutputRecord::usage_error(name, message)],
        Ok(rows) => rows
            .into_iter()
            .map(|(input, result, property)| {
                let mut record = OutputRecord::ok(name, input, result);
                if (cli.assert || always_assert) && property == Some(false) {
                    record.status = Status::PropertyFailed;
                }
                record
            })
            .collect(),
    }
}
