use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use tripart::bases::{extract_bases, CanonicalBasisSet};
use tripart::matroid::{self, check_matroid, MatroidReport};
use tripart::reduction::{betti_numbers, reduce};
use tripart::suite::{self, Level, Status, SuiteConfig};
use tripart::tripartition::{from_reductions, persistence_diagram, Part, TriPartition};
use tripart::{Error, OrderedComplex};

#[derive(Parser, Debug)]
#[command(
    name = "tripart",
    version,
    about = "Tree, cotree and leftover decompositions of cell complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split each dimension into tree, cotree and leftover cells.
    Tripartition(InputArgs),
    /// Persistence diagram of the cell ordering.
    Diagram(InputArgs),
    /// Canonical cycles, chains, cocycles and cochains.
    Bases(InputArgs),
    /// Reduced Betti numbers.
    Betti(InputArgs),
    /// Run the self-checking suite on seeded random complexes.
    Verify(VerifyArgs),
    /// Exhaustive matroid check of tree, cotree and leftover families.
    Matroid(MatroidArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    input: PathBuf,
    /// Input format; inferred from `.bnd` or `.smp` when omitted.
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
    /// Insert missing faces of simplicial input.
    #[arg(long)]
    complete: bool,
    /// Restrict output to one dimension.
    #[arg(long, allow_negative_numbers = true)]
    dim: Option<i32>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Shorthand for `--output json`.
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
}

impl OutputArgs {
    fn json(&self) -> bool {
        self.json || self.output == OutputFormat::Json
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
    level: LevelArg,
    /// Treat refuted properties as failures.
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct MatroidArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Family::All)]
    family: Family,
    /// Largest number of cells for tree and cotree enumeration.
    #[arg(long, default_value_t = matroid::DEFAULT_CAP)]
    cap: usize,
    /// Largest number of orderings for leftover enumeration.
    #[arg(long, default_value_t = matroid::DEFAULT_ORDERING_CAP)]
    ordering_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Simplicial,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Tree,
    Cotree,
    Leftover,
    All,
}

enum Failure {
    Input(String),
    Verification(String),
}

struct Done {
    text: String,
    failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(done) => {
            print!("{}", done.text);
            if done.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Done, Failure> {
    match cli.command {
        Command::Tripartition(args) => {
            let k = load(&args)?;
            let (cr, rr) = reduce(&k);
            let tp = from_reductions(&k, &cr, &rr).map_err(|e| internal(&args.input, e))?;
            Ok(ok(if args.output.json() {
                to_json(tripartition_json(&tp, args.dim))
            } else {
                tripartition_text(&tp, args.dim)
            }))
        }
        Command::Diagram(args) => {
            let k = load(&args)?;
            let diagram = persistence_diagram(&k);
            let keep = |p: i32| args.dim.is_none_or(|d| d == p);
            if args.output.json() {
                let mut points = Vec::new();
                let mut augmentation = Vec::new();
                for pt in diagram.points().iter().filter(|pt| keep(pt.dim)) {
                    let death = pt.death.map_or(Value::Null, |d| json!(d - 1));
                    if pt.dim < 0 {
                        augmentation.push(json!({ "birth": "empty", "death": death }));
                    } else {
                        points
                            .push(json!({ "dim": pt.dim, "birth": pt.birth - 1, "death": death }));
                    }
                }
                let mut out = json!({ "points": points });
                if !augmentation.is_empty() {
                    out["augmentation"] = Value::Array(augmentation);
                }
                Ok(ok(to_json(out)))
            } else {
                let text: String = diagram
                    .to_text()
                    .lines()
                    .filter(|l| {
                        keep(
                            l.split(' ')
                                .next()
                                .and_then(|p| p.parse().ok())
                                .unwrap_or(i32::MIN),
                        )
                    })
                    .map(|l| format!("{l}\n"))
                    .collect();
                Ok(ok(text))
            }
        }
        Command::Bases(args) => {
            let k = load(&args)?;
            let (cr, rr) = reduce(&k);
            let tp = from_reductions(&k, &cr, &rr).map_err(|e| internal(&args.input, e))?;
            let bs = extract_bases(&cr, &rr, &tp).map_err(|e| internal(&args.input, e))?;
            Ok(ok(if args.output.json() {
                to_json(bases_json(&bs, &k, args.dim))
            } else {
                bs.to_text(args.dim)
            }))
        }
        Command::Betti(args) => {
            let k = load(&args)?;
            let betti = betti_numbers(&k);
            let keep = |p: i32| args.dim.is_none_or(|d| d == p);
            if args.output.json() {
                let mut m = Map::new();
                for (p, b) in betti.iter().filter(|(p, _)| keep(*p)) {
                    m.insert(dim_key(p), json!(b));
                }
                Ok(ok(to_json(Value::Object(m))))
            } else {
                let text = betti
                    .iter()
                    .filter(|(p, _)| keep(*p))
                    .map(|(p, b)| format!("{}: {b}\n", dim_key(p)))
                    .collect();
                Ok(ok(text))
            }
        }
        Command::Verify(args) => {
            let level = match args.level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let outcomes = suite::run_suite(&SuiteConfig::with_env_threads(args.seed, level));
            let failed = outcomes
                .iter()
                .any(|o| o.status == Status::Fail || (args.strict && o.status == Status::Refuted));
            let text = if args.output.json() {
                let suites: Vec<Value> = outcomes
                    .iter()
                    .map(|o| {
                        json!({
                            "name": o.name,
                            "status": o.status.as_str(),
                            "cases": o.cases,
                            "contradicted": o.failures,
                            "detail": o.detail,
                        })
                    })
                    .collect();
                to_json(json!({
                    "seed": args.seed,
                    "level": format!("{:?}", args.level).to_lowercase(),
                    "suites": suites,
                    "pass": !failed,
                }))
            } else {
                suite::report_text(&outcomes)
            };
            Ok(Done { text, failed })
        }
        Command::Matroid(args) => matroid_command(&args),
    }
}

fn ok(text: String) -> Done {
    Done {
        text,
        failed: false,
    }
}

fn to_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn dim_key(p: i32) -> String {
    if p < 0 {
        "augmentation".to_string()
    } else {
        format!("p={p}")
    }
}

fn internal(path: &Path, e: Error) -> Failure {
    Failure::Verification(format!("{}: {e}", path.display()))
}

fn load(args: &InputArgs) -> Result<OrderedComplex, Failure> {
    let path = &args.input;
    let format = match args.format {
        Some(f) => f,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some("bnd") => InputFormat::Boundary,
            Some("smp") => InputFormat::Simplicial,
            _ => {
                return Err(Failure::Input(format!(
                    "{}: cannot infer the format, pass --format simplicial or --format boundary",
                    path.display()
                )))
            }
        },
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let parsed = match format {
        InputFormat::Boundary => OrderedComplex::from_boundary_format(&text),
        InputFormat::Simplicial => OrderedComplex::from_simplicial_format(&text, args.complete),
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn external(cells: &[usize]) -> Vec<usize> {
    cells.iter().map(|c| c - 1).collect()
}

fn tripartition_json(tp: &TriPartition, dim: Option<i32>) -> Value {
    let mut m = Map::new();
    for p in (-1..=tp.dim()).filter(|p| dim.is_none_or(|d| d == *p)) {
        if p < 0 {
            let part = match tp.part(0) {
                Part::Tree => "tree",
                Part::Cotree => "cotree",
                Part::Leftover => "leftover",
            };
            m.insert(dim_key(p), json!({ "empty": part }));
        } else {
            m.insert(
                dim_key(p),
                json!({
                    "tree": external(tp.tree(p)),
                    "cotree": external(tp.cotree(p)),
                    "leftover": external(tp.leftover(p)),
                }),
            );
        }
    }
    Value::Object(m)
}

fn tripartition_text(tp: &TriPartition, dim: Option<i32>) -> String {
    let mut out = String::new();
    let names = |cells: &[usize]| -> String {
        cells
            .iter()
            .map(|&c| {
                if c == 0 {
                    "empty".to_string()
                } else {
                    (c - 1).to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    for p in (-1..=tp.dim()).filter(|p| dim.is_none_or(|d| d == *p)) {
        for (label, cells) in [
            ("tree", tp.tree(p)),
            ("cotree", tp.cotree(p)),
            ("leftover", tp.leftover(p)),
        ] {
            let line = format!("{p} {label} ({}): {}", cells.len(), names(cells));
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    out
}

fn bases_json(bs: &CanonicalBasisSet, k: &OrderedComplex, dim: Option<i32>) -> Value {
    let mut m = Map::new();
    for p in (-1..=k.dim()).filter(|p| dim.is_none_or(|d| d == *p)) {
        let side = |homology: bool| -> Vec<Value> {
            k.cells_of_dim(p)
                .into_iter()
                .map(|c| {
                    let e = if homology { bs.homology(c) } else { bs.cohomology(c) };
                    if p < 0 {
                        json!({ "cell": "empty", "kind": e.kind.as_str(), "members": ["empty"] })
                    } else {
                        json!({ "cell": c - 1, "kind": e.kind.as_str(), "members": external(&e.payload.cells) })
                    }
                })
                .collect()
        };
        m.insert(
            dim_key(p),
            json!({
                "homology": side(true),
                "cohomology": side(false),
            }),
        );
    }
    Value::Object(m)
}

fn matroid_command(args: &MatroidArgs) -> Result<Done, Failure> {
    let input = &args.input;
    let k = load(input)?;
    let families: &[Family] = match args.family {
        Family::All => &[Family::Tree, Family::Cotree, Family::Leftover],
        Family::Tree => &[Family::Tree],
        Family::Cotree => &[Family::Cotree],
        Family::Leftover => &[Family::Leftover],
    };
    let dims: Vec<i32> = match input.dim {
        Some(p) => vec![p],
        None => (0..=k.dim()).collect(),
    };
    let mut reports: Vec<(i32, &'static str, MatroidReport)> = Vec::new();
    for &p in &dims {
        for family in families {
            let (name, built) = match family {
                Family::Tree => ("tree", matroid::enumerate_trees(&k, p, args.cap)),
                Family::Cotree => ("cotree", matroid::enumerate_cotrees(&k, p, args.cap)),
                Family::Leftover => (
                    "leftover",
                    matroid::enumerate_leftovers(&k, p, args.ordering_cap),
                ),
                Family::All => unreachable!(),
            };
            let built = built.map_err(|e| {
                Failure::Input(format!(
                    "{}: dimension {p}, {name}: {e}",
                    input.input.display()
                ))
            })?;
            reports.push((p, name, check_matroid(&built)));
        }
    }
    let failed = reports.iter().any(|(_, _, r)| !r.pass);
    let text = if input.output.json() {
        let mut m = Map::new();
        for (p, name, r) in &reports {
            let entry = m.entry(dim_key(*p)).or_insert_with(|| json!({}));
            let witness = r
                .witness
                .as_ref()
                .map(|(f, g)| json!({ "F": external(f), "G": external(g) }));
            entry[*name] = json!({
                "pass": r.pass,
                "rank": r.rank,
                "members": r.members,
                "witness": witness,
            });
        }
        m.insert("closure".into(), json!("downward"));
        to_json(Value::Object(m))
    } else {
        reports
            .iter()
            .map(|(p, name, r)| format!("{p} {name} {}\n", r.to_text()))
            .collect()
    };
    Ok(Done { text, failed })
}
