use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qfsemi::algebra::{FieldSpec, DEFAULT_BRUTE_DIM_CAP};
use qfsemi::io::{self, Report, RunInfo};
use qfsemi::modifications::{
    adjoin_zero, enumerate_modifications, modification_coset, modification_h_block, DEFAULT_BUDGET,
};
use qfsemi::verifier::{
    run_corpus, verify_equivalence, verify_lemmas, verify_members, CorpusConfig, CorpusMember,
    EquivalenceReport, LemmaReport, VerifyConfig, DEFAULT_SEED,
};
use qfsemi::{CayleyTable, Error, Side, StructureReport};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_ANOMALY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qfsemi",
    version,
    about = "Quasi-Frobenius checks for 0-cancellative semigroups"
)]
struct Cli {
    /// Emit JSON reports and JSON error objects.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct VerifyArgs {
    /// Comma-separated fields: gf<p> or q.
    #[arg(long, default_value = "gf2,gf3,gf5,q")]
    fields: String,
    /// Largest algebra dimension for the GF(2) subspace oracle.
    #[arg(long, default_value_t = DEFAULT_BRUTE_DIM_CAP)]
    brute_qf_cap: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl VerifyArgs {
    fn config(&self) -> Result<VerifyConfig, Error> {
        Ok(VerifyConfig {
            fields: FieldSpec::parse_list(&self.fields)?,
            qf_dim_cap: self.brute_qf_cap,
            seed: self.seed,
            ..VerifyConfig::default()
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    AdjoinZero,
    HBlock,
    #[value(alias = "eq3")]
    Coset,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Structure and equivalence report for one table file.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// Build a semigroup from a group and write its table.
    Make {
        construction: Construction,
        /// C<n>, D<n>, Q8, products like C2xC2, or file:<path>.
        #[arg(long)]
        group: String,
        /// Comma-separated element names.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// Write every modification of a group as a table file plus an index.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the verification harness over a corpus.
    Verify {
        /// `default` or a directory of table files.
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Include every member report in the JSON output.
        #[arg(long)]
        members: bool,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// Solve `x*b = a` (left) or `b*x = a` (right).
    Division {
        file: PathBuf,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum)]
        side: SideArg,
    },
}

#[derive(Serialize)]
struct Analysis<'a> {
    name: &'a str,
    structure: StructureReport,
    equivalence: &'a EquivalenceReport,
    lemmas: &'a LemmaReport,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if cli.json {
                print!("{}", io::error_json(&e));
            } else {
                eprintln!("error: {e}");
            }
            let usage = matches!(
                e,
                Error::BadField(_) | Error::BadGroupSpec(_) | Error::UnknownElement(_)
            );
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_VALIDATION })
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Analyze { file, verify } => {
            let table = io::read_table(file)?;
            analyze(&table, verify, cli.json)
        }
        Command::Make {
            construction,
            group,
            subgroup,
            a,
            out,
            verify,
        } => {
            let group = io::parse_group_spec(group)?;
            let need = |v: &Option<String>, flag: &str| {
                v.clone()
                    .ok_or_else(|| Error::Parse(format!("--{flag} is required")))
            };
            let result = match construction {
                Construction::AdjoinZero => adjoin_zero(&group),
                Construction::HBlock => {
                    let h = group.element_set(&need(subgroup, "subgroup")?)?;
                    modification_h_block(&group, &h)?
                }
                Construction::Coset => {
                    let h = group.element_set(&need(subgroup, "subgroup")?)?;
                    let a = group.element(&need(a, "a")?)?;
                    modification_coset(&group, &h, a)?
                }
            };
            match out {
                Some(path) => io::write_table(path, &result.semigroup)?,
                None if !cli.json => print!("{}", io::table_to_plain(&result.semigroup)),
                None => {}
            }
            analyze(&result.semigroup, verify, cli.json)
        }
        Command::Enumerate { group, budget, out } => {
            let group = io::parse_group_spec(group)?;
            let results = enumerate_modifications(&group, *budget)?;
            fs::create_dir_all(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
            let mut index = Vec::new();
            for r in &results {
                let name = r.semigroup.name().unwrap_or("table");
                let file = format!("{}.json", name.replace(['/', '{', '}', ','], "-"));
                io::write_table(&out.join(&file), &r.semigroup)?;
                index.push(serde_json::json!({ "file": file, "modification": r }));
            }
            let index_text = serde_json::to_string_pretty(&serde_json::json!({
                "schema": io::SCHEMA,
                "group": group.name(),
                "count": results.len(),
                "members": index,
            }))?;
            fs::write(out.join(INDEX_FILE), index_text + "\n")
                .map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "schema": io::SCHEMA, "count": results.len() })
                );
            } else {
                println!(
                    "{} modifications written to {}",
                    results.len(),
                    out.display()
                );
            }
            Ok(0)
        }
        Command::Verify {
            corpus,
            budget,
            members,
            verify,
        } => {
            let config = verify.config()?;
            let mut summary = if corpus == "default" {
                run_corpus(&CorpusConfig {
                    budget: *budget,
                    verify: config.clone(),
                    ..CorpusConfig::default()
                })
            } else {
                verify_members(read_corpus_dir(Path::new(corpus))?, &config)
            };
            eprintln!("runtime: {:.2?}", summary.runtime);
            if !members {
                summary.reports.clear();
            }
            let code = summary.exit_code() as u8;
            if cli.json {
                print!(
                    "{}",
                    Report::new(
                        RunInfo::new(&config, Some(config.seed), Some(*budget)),
                        summary
                    )
                    .to_json()
                );
            } else {
                print!("{}", io::render_summary(&summary));
            }
            Ok(code)
        }
        Command::Division { file, a, b, side } => {
            let table = io::read_table(file)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let solution = table.solve_division(*a, *b, side)?;
            if cli.json {
                let body = serde_json::json!({
                    "schema": io::SCHEMA, "a": a, "b": b, "side": side, "solution": solution,
                });
                println!("{body}");
            } else {
                println!("{}", solution.map_or("none".to_string(), |x| x.to_string()));
            }
            Ok(0)
        }
    }
}

const INDEX_FILE: &str = "index.json";

/// Every `.json` or `.txt` file except the enumeration index, by file name.
fn read_corpus_dir(dir: &Path) -> Result<Vec<CorpusMember>, Error> {
    let entries = fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("json" | "txt")))
        .filter(|p| p.file_name().and_then(|n| n.to_str()) != Some(INDEX_FILE))
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| {
            let table = io::read_table(&p);
            let name = match &table {
                Ok(t) => t.name().unwrap_or_default().to_string(),
                Err(_) => p
                    .file_name()
                    .unwrap_or_default()
                    .to_string_lossy()
                    .into_owned(),
            };
            CorpusMember { name, table }
        })
        .collect())
}

fn analyze(table: &CayleyTable, args: &VerifyArgs, json: bool) -> Result<u8, Error> {
    let config = args.config()?;
    let equivalence = verify_equivalence(table, &config)?;
    let lemmas = verify_lemmas(table, &config)?;
    if json {
        let body = Analysis {
            name: &equivalence.name,
            structure: table.structure(),
            equivalence: &equivalence,
            lemmas: &lemmas,
        };
        print!(
            "{}",
            Report::new(RunInfo::new(&config, Some(config.seed), None), body).to_json()
        );
    } else {
        print!("{}", io::render_analysis(table, &equivalence, &lemmas));
    }
    let serious = equivalence.in_hypothesis
        && (!equivalence.anomalies.is_empty() || lemmas.statuses().iter().any(|(_, s)| s.failed()));
    Ok(if serious { EXIT_ANOMALY } else { 0 })
}
