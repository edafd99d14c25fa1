//! `ramsey-pods`: searches, constructions, reductions, decompositions and
//! certificate checks from the command line.

mod files;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;

use ramsey_pods::color::{Color, ColorSet};
use ramsey_pods::constructions::{balance_coloring, canonical_coloring, lex_product, product_boost_vectors};
use ramsey_pods::decomposition::{
    audit_three_color_path, recursive_color_avoiding, three_color_path, DecomposeConfig, DecompositionError, Scale,
    Support,
};
use ramsey_pods::formats::{
    family_to_csv, to_json, to_json_lines, ColoringFile, FamilyFile, PartitionFile, PathFile, TournamentFile,
};
use ramsey_pods::paths::{validate_path, MonotoneDp, PathInstance};
use ramsey_pods::random::{random_close_instance, random_coloring, random_family, random_tournament, seeded};
use ramsey_pods::reductions::{coloring_to_vectors, floor_reduction, merge_colors, vectors_to_coloring};
use ramsey_pods::search::{run_search, Cache, ExtremalRecord, Kind, Witness};
use ramsey_pods::tournament::OrderedColoring;
use ramsey_pods::vectors::{validate_comparable, validate_increasing, VectorFamily};
use ramsey_pods::Budget;

use files::{read_coloring, read_family, read_json, read_packing, read_path_instance, write_output, Instance, ParseFailure};

#[derive(Parser)]
#[command(name = "ramsey-pods", version, about = "Color-avoiding paths, r-increasing families and pod packings")]
struct Cli {
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on worker threads
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustive search for F, G, f or g, consulting and updating the cache
    Search(SearchArgs),
    /// Check a certificate; exit 1 on a violation, 3 on unreadable input
    Verify {
        kind: VerifyKind,
        /// instance file (the family or packing itself for sequence, comparable and packing)
        instance: PathBuf,
        /// path certificate (only for `path`)
        certificate: Option<PathBuf>,
        /// threshold for CSV families
        #[arg(short, long)]
        r: Option<usize>,
    },
    /// Build an instance from the standard constructions
    Construct {
        #[command(subcommand)]
        what: ConstructKind,
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Translate between colorings and vector families, or merge colors
    Reduce {
        #[command(subcommand)]
        what: ReduceKind,
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Find a long color-avoiding (or three-color) path in a tournament
    Decompose(DecomposeArgs),
    /// Print the cache as CSV
    Table {
        #[arg(long)]
        cache: Option<PathBuf>,
        /// only this kind (F, G, f or g)
        #[arg(long)]
        kind: Option<Kind>,
    },
    /// Random instances
    Generate {
        #[command(subcommand)]
        what: GenerateKind,
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    kind: Kind,
    q: usize,
    r: usize,
    /// `n` for F and G, `N` for f and g
    size: usize,
    /// wall-clock limit, e.g. `1s` or `2m 30s`
    #[arg(long, value_parser = humantime::parse_duration)]
    budget: Option<Duration>,
    /// node limit
    #[arg(long)]
    nodes: Option<u64>,
    /// cache file (defaults to $RAMSEY_PODS_CACHE, then ./cache.jsonl)
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, conflicts_with = "cache")]
    no_cache: bool,
    /// write the witness in its instance format
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Path,
    Sequence,
    Comparable,
    Packing,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Lexicographic product: every vertex of OUTER becomes a copy of INNER
    Product { inner: PathBuf, outer: PathBuf },
    /// Product of monochromatic m-cliques in colors 1..=q
    Canonical { q: usize, m: usize },
    /// Product of all cyclic color shifts, equalizing avoiding paths
    Balance { coloring: PathBuf },
    /// Product of two increasing families
    Boost { first: PathBuf, second: PathBuf },
}

#[derive(Subcommand)]
enum ReduceKind {
    /// Coloring to its (q-1)-increasing family of path-length vectors
    ToVectors { coloring: PathBuf },
    /// (q-1)-increasing family to a coloring
    ToColoring { family: PathBuf },
    /// Merge colors along a partition file
    Merge { coloring: PathBuf, partition: PathBuf },
    /// The floor(q/(q-r))-block partition
    Floor { q: usize, r: usize },
}

#[derive(Subcommand)]
enum GenerateKind {
    Tournament { n: usize, q: usize },
    Coloring { n: usize, q: usize },
    Family { q: usize, n: u32, r: usize, size: usize },
    /// Tournament with at most delta^2 N^2 arcs against a hidden order
    Close {
        n: usize,
        q: usize,
        #[arg(long, default_value = "1/10")]
        delta: Ratio<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeMode {
    ThreeColor,
    Recursive,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Desk,
    Asymptotic,
}

#[derive(Args)]
struct DecomposeArgs {
    mode: DecomposeMode,
    tournament: PathBuf,
    /// certificate output (stdout if absent)
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// write the recursion log as JSON lines
    #[arg(long)]
    trace: Option<PathBuf>,
    /// support threshold for three-color, `auto` or a number
    #[arg(long, default_value = "auto")]
    support: String,
    #[arg(long, value_enum, default_value_t = ScaleArg::Desk)]
    scale: ScaleArg,
    /// largest sub-instance solved by the exact subset DP
    #[arg(long, default_value_t = 22)]
    exact_max: usize,
    #[arg(long, default_value_t = 3)]
    max_depth: usize,
}

fn main() -> ExitCode {
    // usage errors exit 1; 2 is reserved for bound-only search results
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Search(args) => search(cli, args),
        Command::Verify { kind, instance, certificate, r } => verify(cli, *kind, instance, certificate.as_ref(), *r),
        Command::Construct { what, out } => construct(cli, what, out.as_ref()),
        Command::Reduce { what, out } => reduce(what, out.as_ref()),
        Command::Decompose(args) => decompose(cli, args),
        Command::Table { cache, kind } => table(cache.as_ref(), *kind),
        Command::Generate { what, out } => generate(cli, what, out.as_ref()),
    }
}

fn table_row(rec: &ExtremalRecord) -> String {
    format!("{},{},{},{},{},{}", rec.kind, rec.q, rec.r, rec.size, rec.value, rec.status)
}

const TABLE_HEADER: &str = "kind,q,r,size,value,status";

fn search(cli: &Cli, args: &SearchArgs) -> Result<u8> {
    let cache = match (&args.cache, args.no_cache) {
        (_, true) => None,
        (Some(p), false) => Some(Cache::new(p)),
        (None, false) => Some(Cache::from_env()),
    };
    let (q, r, size) = (args.q, args.r, args.size);
    let cached = match &cache {
        Some(c) => c.get(args.kind, q, r, size)?,
        None => None,
    };
    let record = match cached {
        Some(rec) if rec.is_exact() => rec,
        _ => {
            let mut budget = Budget::default();
            if let Some(d) = args.budget {
                budget = budget.with_wall(d);
            }
            if let Some(n) = args.nodes {
                budget = budget.with_nodes(n);
            }
            let rec = run_search(args.kind, q, r, size, budget)?;
            if let Some(c) = &cache {
                c.put(&rec)?;
                // the cache may already hold a better bound
                c.get(args.kind, q, r, size)?.unwrap_or(rec)
            } else {
                rec
            }
        }
    };
    if let Some(path) = &args.witness {
        std::fs::write(path, witness_file(&record)?).with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.json {
        println!("{}", serde_json::to_string(&record)?);
    } else {
        println!("{}", serde_json::to_string_pretty(&record)?);
        println!("{TABLE_HEADER}\n{}", table_row(&record));
    }
    Ok(if record.is_exact() { 0 } else { 2 })
}

/// The witness of a record in the matching instance format.
fn witness_file(rec: &ExtremalRecord) -> Result<String> {
    Ok(match &rec.witness {
        Witness::Family { vectors } => {
            let file = FamilyFile { q: rec.q, n: rec.size as u32, r: rec.r, vectors: vectors.clone() };
            to_json(&file)
        }
        Witness::Coloring { .. } => {
            let k = rec.witness.to_coloring(rec.size, rec.q).map_err(anyhow::Error::msg)?;
            to_json(&ColoringFile::from(&k))
        }
        Witness::Tournament { .. } => {
            let t = rec.witness.to_tournament(rec.size, rec.q).map_err(anyhow::Error::msg)?;
            to_json(&TournamentFile::from(&t))
        }
    })
}

fn report(cli: &Cli, ok: bool, message: String) -> u8 {
    if cli.json {
        println!("{}", json!({ "ok": ok, "message": message }));
    } else if ok {
        println!("Ok: {message}");
    } else {
        println!("violation: {message}");
    }
    u8::from(!ok)
}

fn verify(cli: &Cli, kind: VerifyKind, instance: &Path, certificate: Option<&PathBuf>, r: Option<usize>) -> Result<u8> {
    let parsed = (|| -> Result<(bool, String), ParseFailure> {
        match kind {
            VerifyKind::Path => {
                let Some(cert_path) = certificate else {
                    return Err(ParseFailure("a path certificate file is required".into()));
                };
                let inst = read_path_instance(instance)?;
                let cert = read_json::<PathFile>(cert_path)?
                    .into_certificate()
                    .map_err(|e| ParseFailure(format!("{}: {e}", cert_path.display())))?;
                let result = match &inst {
                    Instance::Tournament(t) => validate_path(PathInstance::Tournament(t), &cert),
                    Instance::Coloring(k) => validate_path(PathInstance::Ordered(k), &cert),
                };
                Ok(match result {
                    Ok(()) => (true, format!("{:?} path with {} vertices", cert.mode, cert.len())),
                    Err(v) => (false, v.to_string()),
                })
            }
            VerifyKind::Sequence | VerifyKind::Comparable => {
                let fam = read_family(instance, r)?;
                let cert = match kind {
                    VerifyKind::Sequence => validate_increasing(&fam),
                    _ => validate_comparable(&fam),
                };
                Ok((cert.is_ok(), cert.to_string()))
            }
            VerifyKind::Packing => {
                let p = read_packing(instance)?;
                Ok(match p.first_overlap() {
                    None => (true, format!("{} disjoint pods", p.pods().len())),
                    Some((a, b)) => (
                        false,
                        format!("pods {} and {} overlap: their apices are not {}-comparable", a + 1, b + 1, p.r()),
                    ),
                })
            }
        }
    })();
    match parsed {
        Ok((ok, message)) => Ok(report(cli, ok, message)),
        Err(ParseFailure(why)) => {
            eprintln!("parse error: {why}");
            Ok(3)
        }
    }
}

fn ell_all(k: &OrderedColoring) -> Vec<usize> {
    (1..=k.q() as Color).map(|c| MonotoneDp::new(k, ColorSet::avoiding(k.q(), c)).best_len().max(1)).collect()
}

fn single_color_longest(k: &OrderedColoring) -> usize {
    (1..=k.q() as Color).map(|c| MonotoneDp::new(k, ColorSet::single(c)).best_len()).max().unwrap_or(0)
}

/// Writes `body` to `out` (or stdout) and the statistics to stdout (or stderr
/// when the body took stdout).
fn emit(cli: &Cli, out: Option<&PathBuf>, body: &str, stats: serde_json::Value) -> Result<()> {
    write_output(out, body)?;
    let text = if cli.json { stats.to_string() } else { serde_json::to_string_pretty(&stats)? };
    if out.is_some() {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    Ok(())
}

fn coloring_stats(k: &OrderedColoring) -> serde_json::Value {
    json!({ "N": k.n(), "q": k.q(), "ell": ell_all(k), "single_color_longest": single_color_longest(k) })
}

fn construct(cli: &Cli, what: &ConstructKind, out: Option<&PathBuf>) -> Result<u8> {
    match what {
        ConstructKind::Product { inner, outer } => {
            let k = lex_product(&read_coloring(inner)?, &read_coloring(outer)?)?;
            emit(cli, out, &to_json(&ColoringFile::from(&k)), coloring_stats(&k))?;
        }
        ConstructKind::Canonical { q, m } => {
            let k = canonical_coloring(*q, *m)?;
            emit(cli, out, &to_json(&ColoringFile::from(&k)), coloring_stats(&k))?;
        }
        ConstructKind::Balance { coloring } => {
            let input = read_coloring(coloring)?;
            let k = balance_coloring(&input)?;
            let ell = ell_all(&k);
            let product: usize = ell_all(&input).iter().product();
            if ell.iter().any(|&l| l != product) {
                bail!("balanced coloring has avoiding paths {ell:?}, expected all {product}");
            }
            let mut stats = coloring_stats(&k);
            stats["equal"] = json!(true);
            emit(cli, out, &to_json(&ColoringFile::from(&k)), stats)?;
        }
        ConstructKind::Boost { first, second } => {
            let fam = product_boost_vectors(&read_family(first, None)?, &read_family(second, None)?)?;
            let stats = json!({ "size": fam.len(), "q": fam.q(), "n": fam.n(), "r": fam.r(), "certificate": validate_increasing(&fam).to_string() });
            emit(cli, out, &to_json(&FamilyFile::from(&fam)), stats)?;
        }
    }
    Ok(0)
}

fn reduce(what: &ReduceKind, out: Option<&PathBuf>) -> Result<u8> {
    let body = match what {
        ReduceKind::ToVectors { coloring } => to_json(&FamilyFile::from(&coloring_to_vectors(&read_coloring(coloring)?)?)),
        ReduceKind::ToColoring { family } => to_json(&ColoringFile::from(&vectors_to_coloring(&read_family(family, None)?)?)),
        ReduceKind::Merge { coloring, partition } => {
            let part = read_json::<PartitionFile>(partition)?.into_partition()?;
            to_json(&ColoringFile::from(&merge_colors(&read_coloring(coloring)?, &part)?))
        }
        ReduceKind::Floor { q, r } => {
            let (_, part) = floor_reduction(*q, *r)?;
            to_json(&PartitionFile::from(&part))
        }
    };
    write_output(out, &body)?;
    Ok(0)
}

fn decompose(cli: &Cli, args: &DecomposeArgs) -> Result<u8> {
    let t = files::read_tournament(&args.tournament)?;
    match args.mode {
        DecomposeMode::ThreeColor => {
            let support = match args.support.as_str() {
                "auto" => Support::Auto,
                k => Support::Fixed(k.parse().with_context(|| format!("bad support {k:?}"))?),
            };
            let out = match three_color_path(&t, support) {
                Ok(out) => out,
                Err(DecompositionError::NoCyclicTriangles) => {
                    eprintln!("no cyclic triangles: the tournament is transitive");
                    return Ok(2);
                }
                Err(e) => return Err(e.into()),
            };
            audit_three_color_path(&t, &out).map_err(anyhow::Error::msg)?;
            let stats = json!({ "length": out.certificate.len(), "pattern": out.pattern, "support": out.support });
            emit(cli, args.out.as_ref(), &to_json(&PathFile::from(&out.certificate)), stats)?;
        }
        DecomposeMode::Recursive => {
            let scale = match args.scale {
                ScaleArg::Desk => Scale::Desk,
                ScaleArg::Asymptotic => Scale::Asymptotic,
            };
            let cfg = DecomposeConfig {
                scale,
                exact_max: args.exact_max,
                max_depth: args.max_depth,
                seed: cli.seed,
                trace: args.trace.is_some(),
            };
            let out = recursive_color_avoiding(&t, &cfg);
            validate_path(PathInstance::Tournament(&t), &out.path)?;
            if let Some(path) = &args.trace {
                std::fs::write(path, to_json_lines(&out.trace)).with_context(|| format!("writing {}", path.display()))?;
            }
            let stats = json!({ "length": out.path.len(), "avoided_color": out.color, "baseline": out.baseline });
            emit(cli, args.out.as_ref(), &to_json(&PathFile::from(&out.path)), stats)?;
        }
    }
    Ok(0)
}

fn table(cache: Option<&PathBuf>, kind: Option<Kind>) -> Result<u8> {
    let cache = cache.map_or_else(Cache::from_env, Cache::new);
    println!("{TABLE_HEADER}");
    for rec in cache.records()?.iter().filter(|rec| kind.is_none_or(|k| rec.kind == k)) {
        println!("{}", table_row(rec));
    }
    Ok(0)
}

fn generate(cli: &Cli, what: &GenerateKind, out: Option<&PathBuf>) -> Result<u8> {
    let mut rng = seeded(cli.seed);
    let body = match *what {
        GenerateKind::Tournament { n, q } => to_json(&TournamentFile::from(&random_tournament(&mut rng, n, q))),
        GenerateKind::Coloring { n, q } => to_json(&ColoringFile::from(&random_coloring(&mut rng, n, q))),
        GenerateKind::Family { q, n, r, size } => {
            let fam: VectorFamily = random_family(&mut rng, q, n, r, size);
            if out.is_some_and(|p| p.extension().is_some_and(|e| e == "csv")) {
                family_to_csv(&fam)
            } else {
                to_json(&FamilyFile::from(&fam))
            }
        }
        GenerateKind::Close { n, q, delta } => {
            if !(Ratio::from_integer(0) < delta && delta < Ratio::new(1, 2)) {
                bail!("delta must lie strictly between 0 and 1/2");
            }
            to_json(&TournamentFile::from(&random_close_instance(&mut rng, n, q, delta).0))
        }
    };
    write_output(out, &body)?;
    Ok(0)
}
