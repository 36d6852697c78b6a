mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use asg_core::apery::apery_set;
use asg_core::conductor::{conductor_fast_path, conductor_min_gens, frobenius_number, normalization_generators, FastPath};
use asg_core::report::{analyze, apery_summary, input_notes, Limits};
use asg_core::structure::{classify, is_buchsbaum, is_cohen_macaulay, is_gorenstein, is_normal};
use asg_core::{Error, IntVec, Semigroup};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::json;

#[derive(Parser)]
#[command(name = "asg", version, about = "Apéry sets, type and conductor of simplicial affine semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report
    Analyze(Common),
    /// Apéry set with respect to the extremal generators
    Apery(Common),
    /// typ(S) and the quasi-Frobenius elements
    Type(Common),
    /// Decide one property
    Check {
        property: Property,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal generators of the normalization
    Normalization(Common),
    /// Minimal generators of the conductor as an ideal of the normalization
    Conductor(Common),
    /// Frobenius number of a numerical semigroup
    Frobenius(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Cm,
    Gorenstein,
    Buchsbaum,
    Normal,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Generators, e.g. "3,0;0,3;5,2;2,5"
    #[arg(long)]
    gens: Option<String>,
    /// JSON file of the form {"generators": [[...], ...]}
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
    /// Cap on enumerated tuples
    #[arg(long, value_name = "N", default_value_t = 10_000_000)]
    limit_tuples: u64,
    /// Cross-check against brute force on the box [0,N]^d (analyze only)
    #[arg(long, value_name = "N")]
    limit_box: Option<u64>,
    /// Worker threads (default: all cores)
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Include timing and cache statistics (analyze only)
    #[arg(long)]
    stats: bool,
}

enum Failure {
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Core(Error::NotSimplicial { .. } | Error::RankDeficient { .. } | Error::SingularBasis) => 3,
            Failure::Core(Error::ResourceLimit { .. }) => 4,
            Failure::Core(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

fn list(vs: &[IntVec]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("report types serialize"));
}

fn load(common: &Common) -> Result<Vec<IntVec>, Failure> {
    match (&common.source.gens, &common.source.file) {
        (Some(text), _) => input::parse_gens(text).map_err(Failure::Input),
        (None, Some(path)) => input::read_file(path).map_err(Failure::Input),
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn semigroup(generators: &[IntVec]) -> Result<Semigroup, Failure> {
    let s = Semigroup::new(generators)?;
    for note in input_notes(&s) {
        eprintln!("note: {note}");
    }
    Ok(s)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Analyze(c) => {
            let generators = load(&c)?;
            let limits = Limits {
                max_tuples: c.limit_tuples,
                stats: c.stats,
                oracle_box: c.limit_box,
            };
            let report = analyze(&generators, limits)?;
            for note in &report.notes {
                eprintln!("note: {note}");
            }
            if c.json {
                print_json(&report);
            } else {
                print!("{report}");
            }
        }
        Command::Apery(c) => {
            let s = semigroup(&load(&c)?)?;
            let table = apery_set(&s, c.limit_tuples)?;
            if c.json {
                print_json(&apery_summary(&table));
            } else {
                println!("{}", list(&table.elements));
            }
        }
        Command::Type(c) => {
            let s = semigroup(&load(&c)?)?;
            let table = apery_set(&s, c.limit_tuples)?;
            let cl = classify(&s, &table);
            if c.json {
                print_json(&json!({ "typ": cl.typ, "qf": cl.qf, "is_cm": cl.is_cm }));
            } else {
                println!("typ(S) (equals Cohen-Macaulay type of K[S] when CM): {}", cl.typ);
                println!("QF(S): {}", cl.qf.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
        }
        Command::Check { property, common: c } => {
            let s = semigroup(&load(&c)?)?;
            let table = apery_set(&s, c.limit_tuples)?;
            let (name, value) = match property {
                Property::Cm => ("cm", is_cohen_macaulay(&s, &table)),
                Property::Gorenstein => ("gorenstein", is_gorenstein(&s, &table)),
                Property::Buchsbaum => ("buchsbaum", is_cohen_macaulay(&s, &table) || is_buchsbaum(&s, &table)),
                Property::Normal => ("normal", is_normal(&s, &table)),
            };
            if c.json {
                print_json(&json!({ "property": name, "value": value }));
            } else {
                println!("{value}");
            }
        }
        Command::Normalization(c) => {
            let s = semigroup(&load(&c)?)?;
            let table = apery_set(&s, c.limit_tuples)?;
            let gens = normalization_generators(&s, &table).generators;
            if c.json {
                print_json(&json!({ "generators": gens }));
            } else {
                println!("{}", list(&gens));
            }
        }
        Command::Conductor(c) => {
            let s = semigroup(&load(&c)?)?;
            let table = apery_set(&s, c.limit_tuples)?;
            let general = conductor_min_gens(&s, &table, c.limit_tuples)?;
            let fast = conductor_fast_path(&s, &table).map_or(FastPath::None, |f| f.fast_path_used);
            if c.json {
                print_json(&json!({ "generators": general.minimal_generators, "fast_path": fast }));
            } else {
                println!("{}", list(&general.minimal_generators));
            }
        }
        Command::Frobenius(c) => {
            let s = semigroup(&load(&c)?)?;
            let f = frobenius_number(&s, c.limit_tuples)?;
            if c.json {
                let value = f.to_i64().map_or_else(|| json!(f.to_string()), |x| json!(x));
                print_json(&json!({ "frobenius": value }));
            } else {
                println!("{f}");
            }
        }
    }
    Ok(())
}

fn threads(command: &Command) -> Option<usize> {
    match command {
        Command::Analyze(c)
        | Command::Apery(c)
        | Command::Type(c)
        | Command::Check { common: c, .. }
        | Command::Normalization(c)
        | Command::Conductor(c)
        | Command::Frobenius(c) => c.threads,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = threads(&cli.command) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set up {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
