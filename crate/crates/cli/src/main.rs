use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ascheme::chartable::character_table;
use ascheme::classify::{classify, classify_group, ClassificationReport, Verdict, Witness};
use ascheme::closed::enumerate_closed_subsets;
use ascheme::corpus::run_corpus;
use ascheme::group::{concos_check, group_scheme, GroupSpec};
use ascheme::io::{format_character_table, parse_group, parse_scheme, serialize_scheme, ReportDocument};
use ascheme::quotient::quotient_scheme;
use ascheme::wreath::wreath_product;
use ascheme::{RelSet, Scheme, SchemeError};
use clap::{Parser, Subcommand};

/// Association schemes: character tables, closed subsets, wreath products
/// and characterisations of schemes with few nonlinear characters.
#[derive(Parser)]
#[command(name = "ascheme", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file describes an association scheme.
    Validate { file: PathBuf },
    /// Print the character table (`-` reads standard input).
    Chartable {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List the closed subsets.
    Subsets {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the quotient scheme over a closed subset.
    Quotient {
        file: PathBuf,
        /// Comma-separated relation indices.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the wreath product `S wr F`.
    Wreath {
        inner: PathBuf,
        outer: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the group association scheme of a group given by its Cayley table.
    Groupscheme {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a group is Con-Cos.
    Concos { file: PathBuf },
    /// Run every applicable characterisation.
    Classify {
        file: PathBuf,
        /// Treat the input as a group Cayley table.
        #[arg(long)]
        group: bool,
        #[arg(long)]
        json: bool,
    },
    /// Classify the whole corpus.
    Corpus {
        #[arg(long, default_value_t = 16)]
        max_group_order: usize,
        #[arg(long, default_value_t = 60)]
        max_order: usize,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    /// Malformed input or I/O failure.
    Input(String),
    /// A computation or verdict failed.
    Verdict(String),
}

impl Failure {
    fn compute(e: SchemeError) -> Failure {
        Failure::Verdict(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn load_scheme(path: &Path) -> Result<Scheme, Failure> {
    parse_scheme(&read_input(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<GroupSpec, Failure> {
    parse_group(&read_input(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn set_text(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn verdict_line(v: &Verdict) -> String {
    let id = serde_json::to_value(v.theorem).expect("theorem ids serialize");
    let id = id.as_str().unwrap_or_default();
    let status = match (&v.witness, v.applicable, v.holds) {
        (Witness::NotApplicable { reason }, _, _) => format!("not applicable ({reason})"),
        (Witness::Error { message }, _, _) => format!("FAILS ({message})"),
        (Witness::Clifford { subset, index, .. }, _, holds) => {
            format!("{} for T = {} (index {index})", if holds { "holds" } else { "FAILS" }, set_text(subset))
        }
        (_, _, true) => "holds".to_string(),
        (_, _, false) => "FAILS".to_string(),
    };
    format!("{id}: {status}")
}

fn report_text(r: &ClassificationReport) -> String {
    let mut out = format!(
        "n = {}\nrank = {}\ncommutative = {}\ncharacters = {}\nlinear_count = {}\nnonlinear_count = {}\ngroup_like = {}\nfusion_classes = {}\nthin_residue = {}\nderived = {}\n",
        r.n,
        r.rank,
        r.commutative,
        r.characters,
        r.linear_count,
        r.nonlinear_count,
        r.group_like,
        r.fusion_classes,
        set_text(&r.thin_residue),
        set_text(&r.derived),
    );
    for v in &r.verdicts {
        out.push_str(&verdict_line(v));
        out.push('\n');
    }
    out
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => {
            let s = load_scheme(&file)?;
            println!(
                "valid: n = {}, rank = {}, commutative = {}, symmetric = {}",
                s.n(),
                s.rank(),
                s.is_commutative(),
                s.is_symmetric_set(&s.all_relations()) && (0..s.rank()).all(|r| s.star(r) == r)
            );
            Ok(true)
        }
        Command::Chartable { file, json } => {
            let s = load_scheme(&file)?;
            let table = character_table(&s).map_err(Failure::compute)?;
            if json {
                println!("{}", ReportDocument::new(&s).with_table(&table).to_json());
            } else {
                print!("{}", format_character_table(&table));
            }
            Ok(true)
        }
        Command::Subsets { file, json } => {
            let s = load_scheme(&file)?;
            let subsets = enumerate_closed_subsets(&s).map_err(Failure::compute)?;
            if json {
                println!("{}", ReportDocument::new(&s).with_subsets(subsets).to_json());
            } else {
                for h in &subsets {
                    let members: Vec<usize> = h.members.iter().copied().collect();
                    println!(
                        "{} order = {} strongly_normal = {} thin = {}",
                        set_text(&members),
                        h.order,
                        h.strongly_normal,
                        h.thin
                    );
                }
            }
            Ok(true)
        }
        Command::Quotient { file, subset, output } => {
            let s = load_scheme(&file)?;
            let h: RelSet = subset.into_iter().collect();
            if let Some(&bad) = h.iter().find(|&&r| r >= s.rank()) {
                return Err(Failure::Input(format!("relation {bad} is out of range for rank {}", s.rank())));
            }
            let q = quotient_scheme(&s, &h).map_err(|e| Failure::Input(e.to_string()))?;
            let mut text = String::new();
            for (i, dc) in q.double_cosets.iter().enumerate() {
                let members: Vec<usize> = dc.iter().copied().collect();
                text.push_str(&format!("# relation {i} = {}\n", set_text(&members)));
            }
            text.push_str(&serialize_scheme(&q.quotient));
            emit(&text, output.as_deref())?;
            Ok(true)
        }
        Command::Wreath { inner, outer, output } => {
            let w = wreath_product(&load_scheme(&inner)?, &load_scheme(&outer)?);
            emit(&serialize_scheme(&w), output.as_deref())?;
            Ok(true)
        }
        Command::Groupscheme { file, output } => {
            let s = group_scheme(&load_group(&file)?).map_err(Failure::compute)?;
            emit(&serialize_scheme(&s), output.as_deref())?;
            Ok(true)
        }
        Command::Concos { file } => {
            let (concos, _) = concos_check(&load_group(&file)?);
            println!("Con-Cos: {}", if concos { "yes" } else { "no" });
            Ok(true)
        }
        Command::Classify { file, group, json } => {
            let (scheme, report) = if group {
                let g = load_group(&file)?;
                let s = group_scheme(&g).map_err(Failure::compute)?;
                (s, classify_group(&g).map_err(Failure::compute)?)
            } else {
                let s = load_scheme(&file)?;
                let r = classify(&s).map_err(Failure::compute)?;
                (s, r)
            };
            let ok = report.all_hold();
            if json {
                println!("{}", ReportDocument::new(&scheme).with_classification(report).to_json());
            } else {
                print!("{}", report_text(&report));
            }
            Ok(ok)
        }
        Command::Corpus {
            max_group_order,
            max_order,
            json,
        } => {
            let entries = run_corpus(max_group_order, max_order).map_err(Failure::compute)?;
            let failed = entries.iter().filter(|e| !e.passed()).count();
            if json {
                println!("{}", serde_json::to_string_pretty(&entries).expect("corpus entries serialize"));
            } else {
                let mut out = io::stdout().lock();
                for e in &entries {
                    let status = if e.passed() { "ok" } else { "FAIL" };
                    let _ = writeln!(out, "{status} {} (n = {}, rank = {})", e.name, e.n, e.rank);
                    match &e.report {
                        Err(msg) => {
                            let _ = writeln!(out, "  error: {msg}");
                        }
                        Ok(r) => {
                            for v in r.failures() {
                                let _ = writeln!(out, "  {}", verdict_line(v));
                            }
                        }
                    }
                    for c in e.structural.iter().filter(|c| !c.passed) {
                        let _ = writeln!(out, "  {}: {}", c.name, c.detail);
                    }
                }
                let _ = writeln!(out, "{} schemes, {failed} failed", entries.len());
            }
            Ok(failed == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verdict(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
