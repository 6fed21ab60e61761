mod report;

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use trisurf_core::abc::{
    abc_invariants, bidouble_invariants, diffeo_equivalent, enumerate_types, nondef_predicate,
    AbcType, BidoubleType, KsqConvention,
};
use trisurf_core::beauville::{
    aut_orbit_count, isogenous_invariants, scan, search, structure_invariants, ScanDepth,
};
use trisurf_core::braid::{
    braid_equal, hurwitz_orbit, product, BraidWord, Factorization, MoveOrder,
};
use trisurf_core::group::{abelian_catalog, builtin, parse_group_file};
use trisurf_core::hyperelliptic::{catanese_branch_set, moebius_equivalent, BranchSet, ProjPoint};
use trisurf_core::triangle::{
    enumerate_triples_with, triple_representatives, TripleQuery, TripleType,
};
use trisurf_core::PermGroup;

use report::*;

#[derive(Parser)]
#[command(
    name = "trisurf",
    version,
    about = "Triangle curves, Beauville structures, bidouble surface invariants and braid factorizations"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Emit JSON on standard output.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (tabular commands only).
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Reserved; has no effect on results.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation group summaries.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Generating triples with product one.
    #[command(subcommand)]
    Triangles(TrianglesCmd),
    /// Unmixed Beauville structures.
    #[command(subcommand)]
    Beauville(BeauvilleCmd),
    /// Surfaces isogenous to a product.
    #[command(subcommand)]
    Isogenous(IsogenousCmd),
    /// Bidouble covers of the quadric and abc-surfaces.
    #[command(subcommand)]
    Abc(AbcCmd),
    /// Hyperelliptic branch sets.
    #[command(subcommand)]
    Hyperell(HyperellCmd),
    /// Braid words and factorizations.
    #[command(subcommand)]
    Braid(BraidCmd),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSource {
    /// Built-in group name, e.g. A5, S4, C7, D4, EA5x5, PSL2_7, C2xC6.
    #[arg(long)]
    group: Option<String>,
    /// Group file: `degree n`, then one generator per line as 1-based images.
    #[arg(long, value_name = "PATH")]
    group_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Order, degree, generators and conjugacy classes.
    Info(GroupSource),
}

#[derive(Subcommand)]
enum TrianglesCmd {
    /// List generating triples.
    Enumerate {
        #[command(flatten)]
        source: GroupSource,
        /// Only triples of this type, e.g. 2,3,5.
        #[arg(long = "type", value_parser = parse_type)]
        triple_type: Option<TripleType>,
        /// Only triples of genus at least 2.
        #[arg(long)]
        hyperbolic: bool,
        /// One triple per simultaneous conjugacy class.
        #[arg(long)]
        representatives: bool,
    },
}

#[derive(Subcommand)]
enum BeauvilleCmd {
    /// Exhaustive search on one group.
    Search {
        #[command(flatten)]
        source: GroupSource,
        /// Stop at the first structure.
        #[arg(long)]
        first: bool,
        /// Include every structure found.
        #[arg(long)]
        list: bool,
        /// Count orbits of the automorphism group on the structures.
        #[arg(long)]
        aut_orbits: bool,
    },
    /// Existence (or full count) over a family of groups.
    Scan {
        /// Comma-separated built-in names.
        #[arg(long, value_delimiter = ',', required_unless_present = "abelian_up_to")]
        groups: Vec<String>,
        /// Every abelian group of order at most N.
        #[arg(long, value_name = "N", conflicts_with = "groups")]
        abelian_up_to: Option<usize>,
        /// Count all structures instead of stopping at the first.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Subcommand)]
enum IsogenousCmd {
    /// chi, K^2, e and tau of (C1 x C2)/G.
    Invariants {
        #[arg(long)]
        g1: i64,
        #[arg(long)]
        g2: i64,
        /// Order of G.
        #[arg(long)]
        order: i64,
    },
}

#[derive(Subcommand)]
enum AbcCmd {
    /// Invariants of type (2a,2b),(2c,2d); d defaults to b.
    #[command(allow_negative_numbers = true)]
    Invariants {
        a: i64,
        b: i64,
        c: i64,
        d: Option<i64>,
    },
    /// Chain of diffeomorphism steps between two abc types.
    #[command(allow_negative_numbers = true)]
    Diffeo {
        a: i64,
        b: i64,
        c: i64,
        a2: i64,
        b2: i64,
        c2: i64,
    },
    /// Non-deformation-equivalence conditions for (a,b,c) and (a+k,b,c-k).
    #[command(allow_negative_numbers = true)]
    Nondef { a: i64, b: i64, c: i64, k: i64 },
    /// Bidouble types with given chi and K^2.
    Classify {
        #[arg(long)]
        chi: i64,
        #[arg(long)]
        ksq: i64,
        /// Largest entry tried.
        #[arg(long)]
        bound: i64,
        /// Match K^2 = (a+c-2)(b+d-2) instead of 8(a+c-2)(b+d-2).
        #[arg(long)]
        paper_ksq: bool,
    },
}

#[derive(Subcommand)]
enum HyperellCmd {
    /// Branch set {0, ..., 2g-1, -2g, a}.
    Branch {
        #[arg(long)]
        genus: i64,
        /// Rational parameter, e.g. 7 or -1/2.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        param: ProjPoint,
    },
    /// Rational Möbius equivalence of two branch sets.
    Iso {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_set)]
        set1: BranchSet,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_set)]
        set2: BranchSet,
    },
}

#[derive(Subcommand)]
enum BraidCmd {
    /// Whether two words are the same braid.
    Equal {
        #[arg(long)]
        strands: usize,
        /// Signed generator list, e.g. [1,-2,1].
        #[arg(allow_hyphen_values = true, value_parser = parse_word)]
        w1: Word,
        #[arg(allow_hyphen_values = true, value_parser = parse_word)]
        w2: Word,
    },
    /// Product of a factorization.
    Product {
        #[arg(long)]
        strands: usize,
        /// JSON list of words, e.g. [[1],[2,-1]].
        #[arg(long, allow_hyphen_values = true, value_parser = parse_factors)]
        factors: Factors,
    },
    /// Hurwitz orbit by breadth-first search.
    Orbit {
        #[arg(long)]
        strands: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_factors)]
        factors: Factors,
        /// Maximum number of states.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Try moves in reversed order.
        #[arg(long)]
        reversed: bool,
        /// Include one factorization per state.
        #[arg(long)]
        list: bool,
    },
}

fn parse_type(s: &str) -> Result<TripleType, String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let orders: [u32; 3] = parts
        .try_into()
        .map_err(|_| "expected three orders".to_string())?;
    Ok(TripleType::new(orders))
}

fn parse_point(s: &str) -> Result<ProjPoint, String> {
    s.parse()
        .map_err(|e: trisurf_core::hyperelliptic::HyperellError| e.to_string())
}

fn parse_set(s: &str) -> Result<BranchSet, String> {
    BranchSet::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
struct Word(Vec<i32>);

#[derive(Debug, Clone)]
struct Factors(Vec<Vec<i32>>);

/// `[1,-2,1]`, `1,-2,1` or `1 -2 1`.
fn parse_word(s: &str) -> Result<Word, String> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i32>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()
        .map(Word)
}

fn parse_factors(s: &str) -> Result<Factors, String> {
    serde_json::from_str(s)
        .map(Factors)
        .map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Human,
    Json,
    Csv,
}

enum Failure {
    Usage(String),
    Domain(String),
}

fn domain<E: Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn load_group(source: &GroupSource) -> Result<Arc<PermGroup>, Failure> {
    if let Some(name) = &source.group {
        return builtin(name).map(Arc::new).map_err(domain);
    }
    let path = source
        .group_file
        .as_deref()
        .expect("clap enforces one source");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    parse_group_file(&file_label(path), &text)
        .map(Arc::new)
        .map_err(domain)
}

fn file_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "file".into())
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let mode = if cli.global.json {
        Mode::Json
    } else if cli.global.csv {
        Mode::Csv
    } else {
        Mode::Human
    };
    match &cli.command {
        Command::Group(GroupCmd::Info(source)) => {
            let g = load_group(source)?;
            emit(&GroupInfo::new(&g), mode)
        }
        Command::Triangles(TrianglesCmd::Enumerate {
            source,
            triple_type,
            hyperbolic,
            representatives,
        }) => {
            let g = load_group(source)?;
            let query = TripleQuery {
                triple_type: *triple_type,
                hyperbolic_only: *hyperbolic,
            };
            let triples = if *representatives {
                triple_representatives(&g, &query)
            } else {
                enumerate_triples_with(&g, &query)
            };
            let records = triples
                .iter()
                .map(|t| t.to_record())
                .collect::<Result<Vec<_>, _>>()
                .map_err(domain)?;
            emit(&TripleList(records), mode)
        }
        Command::Beauville(BeauvilleCmd::Search {
            source,
            first,
            list,
            aut_orbits,
        }) => {
            let g = load_group(source)?;
            eprintln!("searching {} (order {})", g.label(), g.order());
            let found = search(&g, *first);
            let orbits = if *aut_orbits {
                Some(aut_orbit_count(&g, &found).map_err(domain)?)
            } else {
                None
            };
            let structures = if *list {
                Some(
                    found
                        .iter()
                        .map(|s| {
                            Ok(StructureRecord {
                                t1: s.t1.to_record().map_err(domain)?,
                                t2: s.t2.to_record().map_err(domain)?,
                                triples_unmarked_equivalent: s.triples_unmarked_equivalent,
                                invariants: structure_invariants(s).map_err(domain)?,
                            })
                        })
                        .collect::<Result<Vec<_>, Failure>>()?,
                )
            } else {
                None
            };
            emit(
                &SearchReport {
                    group: g.label().to_string(),
                    order: g.order(),
                    beauville: !found.is_empty(),
                    structures_found: found.len(),
                    aut_orbits: orbits,
                    structures,
                },
                mode,
            )
        }
        Command::Beauville(BeauvilleCmd::Scan {
            groups,
            abelian_up_to,
            full,
        }) => {
            let names: Vec<String> = match abelian_up_to {
                Some(n) => abelian_catalog(*n)
                    .iter()
                    .map(|f| {
                        f.iter()
                            .map(|d| format!("C{d}"))
                            .collect::<Vec<_>>()
                            .join("x")
                    })
                    .collect(),
                None => groups.clone(),
            };
            eprintln!("scanning {} groups", names.len());
            let depth = if *full {
                ScanDepth::Full
            } else {
                ScanDepth::Existence
            };
            let report = scan(&names, depth, builtin);
            emit(&ScanReport(report), mode)
        }
        Command::Isogenous(IsogenousCmd::Invariants { g1, g2, order }) => {
            let inv = isogenous_invariants(*g1, *g2, *order).map_err(domain)?;
            emit(&Invariants(inv), mode)
        }
        Command::Abc(cmd) => run_abc(cmd, mode),
        Command::Hyperell(HyperellCmd::Branch { genus, param }) => {
            let set = catanese_branch_set(*genus, param).map_err(domain)?;
            emit(
                &BranchReport {
                    genus: *genus,
                    param: param.to_string(),
                    points: set.points().iter().map(|p| p.to_string()).collect(),
                },
                mode,
            )
        }
        Command::Hyperell(HyperellCmd::Iso { set1, set2 }) => {
            let map = moebius_equivalent(set1, set2).map_err(domain)?;
            emit(&IsoReport::new(map.as_ref()), mode)
        }
        Command::Braid(cmd) => run_braid(cmd, mode),
    }
}

fn run_abc(cmd: &AbcCmd, mode: Mode) -> Result<String, Failure> {
    match *cmd {
        AbcCmd::Invariants { a, b, c, d } => {
            let inv = match d {
                Some(d) => bidouble_invariants(&BidoubleType::new(a, b, c, d).map_err(domain)?),
                None => abc_invariants(&AbcType::new(a, b, c).map_err(domain)?),
            };
            emit(&AbcInvariants::new([a, b, c, d.unwrap_or(b)], &inv), mode)
        }
        AbcCmd::Diffeo {
            a,
            b,
            c,
            a2,
            b2,
            c2,
        } => {
            let s = AbcType::new(a, b, c).map_err(domain)?;
            let t = AbcType::new(a2, b2, c2).map_err(domain)?;
            let chain = diffeo_equivalent(&s, &t);
            emit(&DiffeoReport::new(&s, &t, chain.as_deref()), mode)
        }
        AbcCmd::Nondef { a, b, c, k } => emit(&NondefOut::new(&nondef_predicate(a, b, c, k)), mode),
        AbcCmd::Classify {
            chi,
            ksq,
            bound,
            paper_ksq,
        } => {
            let convention = if paper_ksq {
                KsqConvention::Paper
            } else {
                KsqConvention::Pullback
            };
            let result = enumerate_types(chi, ksq, bound, convention);
            emit(
                &ClassifyReport::new(chi, ksq, bound, convention, result),
                mode,
            )
        }
    }
}

fn run_braid(cmd: &BraidCmd, mode: Mode) -> Result<String, Failure> {
    match cmd {
        BraidCmd::Equal { strands, w1, w2 } => {
            let x = BraidWord::new(*strands, w1.0.clone()).map_err(domain)?;
            let y = BraidWord::new(*strands, w2.0.clone()).map_err(domain)?;
            let equal = braid_equal(&x, &y).map_err(domain)?;
            emit(
                &EqualReport {
                    strands: *strands,
                    equal,
                },
                mode,
            )
        }
        BraidCmd::Product { strands, factors } => {
            let f = Factorization::from_letters(*strands, factors.0.clone()).map_err(domain)?;
            emit(
                &ProductReport {
                    strands: *strands,
                    factors: factors.0.clone(),
                    product: product(&f).letters().to_vec(),
                },
                mode,
            )
        }
        BraidCmd::Orbit {
            strands,
            factors,
            budget,
            reversed,
            list,
        } => {
            let f = Factorization::from_letters(*strands, factors.0.clone()).map_err(domain)?;
            let order = if *reversed {
                MoveOrder::Reversed
            } else {
                MoveOrder::Forward
            };
            let orbit = hurwitz_orbit(&f, *budget, order).map_err(domain)?;
            let representatives = list.then(|| {
                orbit
                    .representatives
                    .iter()
                    .map(|r| r.factors().iter().map(|w| w.letters().to_vec()).collect())
                    .collect()
            });
            emit(
                &OrbitReport {
                    strands: *strands,
                    size: orbit.len(),
                    exhausted: orbit.exhausted,
                    representatives,
                },
                mode,
            )
        }
    }
}

fn emit<R: Report>(r: &R, mode: Mode) -> Result<String, Failure> {
    match mode {
        Mode::Human => Ok(r.human()),
        Mode::Json => serde_json::to_string(r)
            .map(|s| s + "\n")
            .map_err(|e| Failure::Domain(e.to_string())),
        Mode::Csv => r
            .csv()
            .ok_or_else(|| Failure::Usage("--csv is not supported by this command".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(text) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, text.as_bytes())
                    .map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
