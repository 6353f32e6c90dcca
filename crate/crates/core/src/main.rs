use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pqunits::case::{self, RunSettings};
use pqunits::criterion::{self, BrauerLine, ChainSearch, EigenvalueProfile};
use pqunits::help::DEFAULT_BOUND;
use pqunits::tableaux::{
    enumerate_lr_tableaux, lr_coefficient, verify_form_a_bounds, Partition, SkewShape,
};
use pqunits::Error;

#[derive(Parser)]
#[command(
    name = "pqunits",
    version,
    about = "Exclude torsion units of mixed order pq in integral group rings"
)]
struct Cli {
    /// Box bound on every partial augmentation.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: i64,
    /// Largest partition (in boxes) the chain search will handle.
    #[arg(long, global = true, default_value_t = criterion::DEFAULT_CHAIN_CEILING)]
    chain_ceiling: usize,
    /// Seed for sampled cross-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Littlewood-Richardson coefficient c^outer_{inner,content}.
    Lr {
        #[arg(long)]
        outer: Partition,
        #[arg(long, default_value = "")]
        inner: Partition,
        #[arg(long)]
        content: Partition,
        /// Print every tableau.
        #[arg(long)]
        list: bool,
    },
    /// Check the entry and repetition bounds on all form-A LR tableaux.
    CheckCombinatorics {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 12)]
        max_boxes: usize,
    },
    /// Eigenvalue multiplicities of one candidate under the line characters.
    Multiplicities {
        case: PathBuf,
        #[arg(long)]
        unit_order: u64,
        /// Comma separated candidate tuple in report layout.
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
    },
    /// Enumerate HeLP candidates for one unit order.
    Enumerate {
        case: PathBuf,
        #[arg(long)]
        order: u64,
        /// Comma separated character ids; defaults to the target's.
        #[arg(long)]
        characters: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the targets of a case file and report.
    VerifyCase {
        case: PathBuf,
        #[arg(long)]
        order: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare the line inequality with the chain search on small profiles.
    Crosscheck {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        max_entry: u64,
        /// Random profiles to try; all profiles when omitted.
        #[arg(long)]
        samples: Option<u64>,
    },
}

fn parse_tuple(s: &str) -> Result<Vec<i64>, Error> {
    s.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::InvalidInput(format!("bad candidate entry {t:?}: {e}")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let settings = RunSettings {
        bound: cli.bound,
        chain_ceiling: cli.chain_ceiling,
    };
    match cli.command {
        Command::Lr {
            outer,
            inner,
            content,
            list,
        } => {
            let shape = SkewShape::new(outer.clone(), inner.clone())?;
            println!(
                "c^{outer}_{{{inner},{content}}} = {}",
                lr_coefficient(&outer, &inner, &content)
            );
            if list {
                for (i, t) in enumerate_lr_tableaux(&shape, &content)?.iter().enumerate() {
                    println!("\n#{}\n{t}", i + 1);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckCombinatorics { p, max_boxes } => {
            let report =
                verify_form_a_bounds(p, max_boxes, pqunits::tableaux::DEFAULT_TABLEAU_CEILING)?;
            println!(
                "p = {p}, up to {max_boxes} boxes: {} shapes, {} tableaux, {} counterexample(s)",
                report.shapes_checked,
                report.tableaux_checked,
                report.counterexamples.len()
            );
            for c in report.counterexamples.iter().take(20) {
                println!("  {c:?}");
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Multiplicities {
            case,
            unit_order,
            candidate,
        } => {
            let case = case::load_case(&case)?;
            let tuple = parse_tuple(&candidate)?;
            let (line, unit, rows) = case::candidate_table(&case, unit_order, &tuple)?;
            println!(
                "{} unit of order {unit_order}, candidate {unit}",
                case.group
            );
            println!("line {} (p = {})", line.id, line.prime);
            println!(
                "{:<10} {:>12} {:>12} {:>12} {:>12}",
                "character",
                "mu(1)",
                format!("mu(z{})", unit.p),
                format!("mu(z{})", unit.q),
                format!("mu(z{})", unit.order())
            );
            for (id, row) in rows {
                match row {
                    Ok(m) => println!(
                        "{id:<10} {:>12} {:>12} {:>12} {:>12}",
                        m.mu_1, m.mu_zp, m.mu_zq, m.mu_zpq
                    ),
                    Err(v) => println!("{id:<10} {v}"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            case,
            order,
            characters,
            format,
        } => {
            let case = case::load_case(&case)?;
            let ids: Vec<String> = match characters {
                Some(list) => list
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect(),
                None => case.target(order)?.characters.clone(),
            };
            let report = case::enumeration_report(&case, order, &ids, &settings)?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Structured => print!("{}", report.to_structured()?),
            }
            if !report.complete {
                eprintln!(
                    "warning: search bound {} saturated or constraints unbounded",
                    report.bound
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyCase {
            case,
            order,
            format,
        } => {
            let case = case::load_case(&case)?;
            let report = case::run_case(&case, order, &settings)?;
            match format {
                Format::Text => print!("{}", case::to_text(&report)),
                Format::Structured => print!("{}", case::to_structured(&report)?),
            }
            if !report.expectations_met() {
                eprintln!("error: results differ from the candidates declared in the case file");
                return Ok(ExitCode::from(1));
            }
            Ok(if report.all_excluded() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Crosscheck {
            p,
            max_entry,
            samples,
        } => {
            let report = match samples {
                None => criterion::cross_validate_exhaustive(p, max_entry, settings.chain_ceiling)?,
                Some(n) => sampled_crosscheck(p, max_entry, n, cli.seed, settings.chain_ceiling)?,
            };
            println!(
                "p = {p}, entries <= {max_entry}: {} profiles, {} with a chain, {} violating the inequality, {} skipped, {} inconsistent",
                report.profiles,
                report.feasible,
                report.violated,
                report.skipped,
                report.inconsistent.len()
            );
            for bad in report.inconsistent.iter().take(20) {
                println!("  inconsistent: s = {:?}, r = {:?}", bad.s, bad.r);
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn sampled_crosscheck(
    p: u64,
    max_entry: u64,
    samples: u64,
    seed: u64,
    ceiling: usize,
) -> Result<criterion::CrossValidationReport, Error> {
    let line = BrauerLine {
        id: format!("line{p}"),
        prime: p,
        characters: (1..=p).map(|i| format!("chi{i}")).collect(),
        unramified: true,
    };
    let mut rng = StdRng::seed_from_u64(seed);
    let mut search = ChainSearch::new();
    let mut report = criterion::CrossValidationReport {
        p,
        max_entry,
        ..Default::default()
    };
    let len = p as usize;
    for _ in 0..samples {
        let mut draw = || {
            (0..len)
                .map(|_| rng.random_range(0..=max_entry))
                .collect::<Vec<u64>>()
        };
        let profile = EigenvalueProfile::new(draw(), draw())?;
        let check = criterion::cross_validate(&mut search, &profile, &line, ceiling)?;
        report.profiles += 1;
        report.violated += u64::from(check.inequality.violated);
        report.feasible += u64::from(check.chain.is_feasible());
        report.skipped += u64::from(matches!(
            check.chain,
            criterion::ChainStatus::SkippedSize { .. }
        ));
        if !check.consistent() {
            report.inconsistent.push(profile);
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
