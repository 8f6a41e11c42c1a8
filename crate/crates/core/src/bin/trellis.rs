//! Command-line front end: structure checking, zero classification,
//! nullnorm construction and verification, exhaustive enumeration, and
//! DOT/table export.
//!
//! Exit codes: 0 when every verdict passes, 1 when some verdict fails,
//! 2 on input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use trellis_core::construct::{construct_checked, ConstructError, ConstructionSpec, ConstructionVariant};
use trellis_core::io::{self, TableFormat};
use trellis_core::optable::{check_axioms, check_block_structure, is_nullnorm, OpTable};
use trellis_core::psoset::{Elem, Psoset};
use trellis_core::search::{enumerate_bounded_trellises, run_conjecture_suite, SearchConfig};
use trellis_core::trellis::BoundedTrellis;

#[derive(Parser)]
#[command(name = "trellis", about = "Finite psoset, trellis and nullnorm toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure file: psoset axioms, trellis checks, transitivity report
    Check {
        /// Structure file in .psoset format
        file: PathBuf,
    },
    /// Classify the elements around a candidate zero
    Classify {
        file: PathBuf,
        /// Label of the zero element
        #[arg(long)]
        zero: String,
    },
    /// Build a nullnorm from a t-conorm below and a t-norm above the zero
    Construct {
        file: PathBuf,
        #[arg(long)]
        zero: String,
        /// thm31 folds detached incomparables into the upper block, thm32 into the lower
        #[arg(long)]
        variant: ConstructionVariant,
        /// Optional t-conorm table (csv grid); drastic by default
        #[arg(long)]
        s_table: Option<PathBuf>,
        /// Optional t-norm table (csv grid); drastic by default
        #[arg(long)]
        t_table: Option<PathBuf>,
    },
    /// Check a candidate operation table against all nullnorm laws
    Verify {
        file: PathBuf,
        /// Operation table (csv grid)
        #[arg(long)]
        table: PathBuf,
    },
    /// Enumerate all small bounded trellises, optionally running the law suite
    Enumerate {
        /// Largest structure size to enumerate
        #[arg(long)]
        max_n: usize,
        /// Check every structural law and construction equivalence
        #[arg(long)]
        conjectures: bool,
    },
    /// Export a structure as DOT or a table as csv/markdown
    Export {
        file: PathBuf,
        #[command(flatten)]
        what: ExportWhat,
        /// Output format for --table
        #[arg(long, default_value = "csv")]
        format: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExportWhat {
    /// Emit the relation as a DOT digraph
    #[arg(long)]
    dot: bool,
    /// Re-render an operation table file
    #[arg(long)]
    table: Option<PathBuf>,
}

enum CliError {
    Input(String),
    Verdict,
}

impl From<io::ParseError> for CliError {
    fn from(e: io::ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verdict) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Check { file } => check(&file),
        Command::Classify { file, zero } => classify(&file, &zero),
        Command::Construct {
            file,
            zero,
            variant,
            s_table,
            t_table,
        } => construct_cmd(&file, &zero, variant, s_table.as_deref(), t_table.as_deref()),
        Command::Verify { file, table } => verify(&file, &table),
        Command::Enumerate { max_n, conjectures } => enumerate(max_n, conjectures),
        Command::Export { file, what, format } => export(&file, &what, &format),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_psoset(path: &Path) -> Result<Psoset, CliError> {
    Ok(io::parse_psoset(&read(path)?)?.psoset)
}

fn load_trellis(path: &Path) -> Result<BoundedTrellis, CliError> {
    let psoset = load_psoset(path)?;
    BoundedTrellis::from_psoset(psoset).map_err(|e| CliError::Input(e.to_string()))
}

fn resolve(p: &Psoset, label: &str) -> Result<Elem, CliError> {
    p.index_of(label)
        .ok_or_else(|| CliError::Input(format!("unknown element `{label}`")))
}

fn render_set(p: &Psoset, set: &[Elem]) -> String {
    let labels = p.label_set(set);
    format!("{{{}}}", labels.join(", "))
}

fn check(file: &Path) -> Result<(), CliError> {
    let psoset = load_psoset(file)?;
    println!("psoset: ok ({} elements)", psoset.len());
    let cycles = psoset.cycle_members();
    println!("cycle members: {}", render_set(&psoset, &cycles));
    let report = psoset.transitivity_report();
    println!("left-transitive: {}", render_set(&psoset, &report.left));
    println!("right-transitive: {}", render_set(&psoset, &report.right));
    println!("middle-transitive: {}", render_set(&psoset, &report.middle));
    println!("transitive: {}", render_set(&psoset, &report.full));
    match BoundedTrellis::from_psoset(psoset) {
        Ok(t) => {
            println!(
                "bounded trellis: ok (bottom {}, top {})",
                t.label(t.bottom()),
                t.label(t.top())
            );
            if t.is_lattice() {
                println!("relation is transitive: this is a bounded lattice");
            }
            Ok(())
        }
        Err(e) => {
            println!("bounded trellis: FAIL ({e})");
            Err(CliError::Verdict)
        }
    }
}

fn classify(file: &Path, zero: &str) -> Result<(), CliError> {
    let t = load_trellis(file)?;
    let a = resolve(t.psoset(), zero)?;
    let cls = match t.classify_around(a) {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL {e}");
            return Err(CliError::Verdict);
        }
    };
    let p = t.psoset();
    println!("zero: {}", p.label(a));
    println!("below [0,a[: {}", render_set(p, &cls.below));
    println!("above ]a,1]: {}", render_set(p, &cls.above));
    println!("dashed up: {}", render_set(p, &cls.dashed_up));
    println!("dashed down: {}", render_set(p, &cls.dashed_down));
    println!("detached: {}", render_set(p, &cls.detached));
    println!("detached under: {}", render_set(p, &cls.detached_under));
    println!("detached over: {}", render_set(p, &cls.detached_over));
    println!("inner raised: {}", render_set(p, &cls.inner_raised));
    println!("inner lowered: {}", render_set(p, &cls.inner_lowered));
    println!("in kernel: {}", cls.in_kernel);
    Ok(())
}

fn load_spec(
    t: &BoundedTrellis,
    zero: Elem,
    variant: ConstructionVariant,
    s_table: Option<&Path>,
    t_table: Option<&Path>,
) -> Result<ConstructionSpec, CliError> {
    let tconorm = match s_table {
        None => trellis_core::construct::drastic_tconorm(t, zero),
        Some(path) => io::parse_table(t.psoset(), &read(path)?)?,
    };
    let tnorm = match t_table {
        None => trellis_core::construct::drastic_tnorm(t, zero),
        Some(path) => io::parse_table(t.psoset(), &read(path)?)?,
    };
    ConstructionSpec::new(t, variant, zero, tconorm, tnorm)
        .map_err(|e| CliError::Input(e.to_string()))
}

fn construct_cmd(
    file: &Path,
    zero: &str,
    variant: ConstructionVariant,
    s_table: Option<&Path>,
    t_table: Option<&Path>,
) -> Result<(), CliError> {
    let t = load_trellis(file)?;
    let a = resolve(t.psoset(), zero)?;
    let spec = load_spec(&t, a, variant, s_table, t_table)?;
    match construct_checked(&t, &spec) {
        Ok(table) => {
            print!("{}", io::export_table(t.psoset(), &table, TableFormat::Csv));
            Ok(())
        }
        Err(ConstructError::PreconditionsFailed(report)) => {
            eprint!("{report}");
            Err(CliError::Verdict)
        }
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn verify(file: &Path, table: &Path) -> Result<(), CliError> {
    let t = load_trellis(file)?;
    let v = io::parse_table(t.psoset(), &read(table)?)?;
    if !v.is_full_universe(t.psoset()) {
        return Err(CliError::Input(
            "verify expects a table over the full universe".into(),
        ));
    }
    let axioms = check_axioms(t.psoset(), &v);
    print!("{axioms}");
    let check = is_nullnorm(&t, &v);
    let p = t.psoset();
    if check.zeros.is_empty() {
        println!("FAIL zero_element: no element satisfies both boundary rows");
    } else {
        println!("PASS zero_element: {}", render_set(p, &check.zeros));
    }
    if !check.is_nullnorm() {
        println!("not a nullnorm");
        return Err(CliError::Verdict);
    }
    println!(
        "nullnorm: yes ({})",
        if check.proper { "proper" } else { "not proper" }
    );
    let mut all_ok = true;
    for &zero in &check.zeros {
        println!("block structure around {}:", p.label(zero));
        let report = check_block_structure(&t, &v, zero)
            .map_err(|e| CliError::Input(e.to_string()))?;
        print!("{report}");
        all_ok &= report.all_passed();
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Verdict)
    }
}

fn enumerate(max_n: usize, conjectures: bool) -> Result<(), CliError> {
    if max_n == 0 {
        return Err(CliError::Input("--max-n must be at least 1".into()));
    }
    let cfg = SearchConfig {
        max_elements: max_n,
        ..SearchConfig::default()
    };
    let all = enumerate_bounded_trellises(&cfg);
    for k in 1..=max_n {
        let count = all.iter().filter(|t| t.len() == k).count();
        println!("bounded trellises on {k} elements: {count}");
    }
    println!("total: {}", all.len());
    if conjectures {
        let report = run_conjecture_suite(&cfg);
        print!("{}", report.checks);
        println!(
            "checked {} structures, {} nullnorms, {} construction cases",
            report.structures, report.nullnorms, report.construction_cases
        );
        if !report.all_passed() {
            return Err(CliError::Verdict);
        }
    }
    Ok(())
}

fn export(file: &Path, what: &ExportWhat, format: &str) -> Result<(), CliError> {
    let psoset = load_psoset(file)?;
    if what.dot {
        print!("{}", io::export_dot(&psoset));
        return Ok(());
    }
    let table_path = what.table.as_ref().expect("clap enforces the group");
    let format: TableFormat = format.parse().map_err(CliError::Input)?;
    let table: OpTable = io::parse_table(&psoset, &read(table_path)?)?;
    print!("{}", io::export_table(&psoset, &table, format));
    Ok(())
}
