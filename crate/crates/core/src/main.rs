use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pglcent::cli::{
    emit_centralizer, emit_report, emit_suite, parse_problem, run_paper_suite, Format, ProblemFile,
    EXIT_FAILURE, EXIT_OK, EXIT_PARSE,
};
use pglcent::{centralizer, component_group_with, WitnessSearch};

#[derive(Parser)]
#[command(
    name = "pglcent",
    version,
    about = "Centralizers and component groups in PGL_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Commutant of the generators and one invertible element of it.
    Centralizer {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// All twisted strata and the component group.
    ComponentGroup {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// The built-in regression cases.
    Paper {
        #[command(flatten)]
        common: Common,
        /// Override an expected label, as CASE=LABEL.
        #[arg(long, hide = true, value_parser = parse_expect)]
        expect: Vec<(String, String)>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Defaults to the problem file's `seed`, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 32)]
    trials: u32,
    #[arg(long, default_value_t = 10)]
    coeff_bound: i64,
}

impl Common {
    fn search(&self) -> WitnessSearch {
        WitnessSearch {
            trials: self.trials,
            coeff_bound: self.coeff_bound,
        }
    }
}

fn parse_expect(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(c, l)| (c.to_string(), l.to_string()))
        .ok_or_else(|| format!("expected CASE=LABEL, got '{s}'"))
}

fn load(path: &PathBuf) -> Result<ProblemFile, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_PARSE as u8)
    })?;
    parse_problem(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        let code = if e.is_parse_error() {
            EXIT_PARSE
        } else {
            EXIT_FAILURE
        };
        ExitCode::from(code as u8)
    })
}

fn run(cli: Cli) -> Result<(), ExitCode> {
    let fail = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(EXIT_FAILURE as u8)
    };
    match cli.command {
        Command::Centralizer { input, common } => {
            let problem = load(&input)?;
            let gens = problem.generator_set().map_err(|e| fail(e.to_string()))?;
            let seed = common.seed.or(problem.seed).unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let stratum = centralizer(&gens, &common.search(), &mut rng);
            print!(
                "{}",
                emit_centralizer(
                    &problem.case_name(),
                    gens.n(),
                    problem.order,
                    &stratum,
                    common.format
                )
            );
            Ok(())
        }
        Command::ComponentGroup { input, common } => {
            let problem = load(&input)?;
            let gens = problem.generator_set().map_err(|e| fail(e.to_string()))?;
            let seed = common.seed.or(problem.seed).unwrap_or(0);
            let report = component_group_with(&gens, seed, &common.search())
                .map_err(|e| fail(e.to_string()))?;
            print!(
                "{}",
                emit_report(&problem.case_name(), &report, common.format)
            );
            match &problem.expected {
                Some(label) if label != &report.iso_label => Err(fail(format!(
                    "expected component group {label}, found {}",
                    report.iso_label
                ))),
                _ => Ok(()),
            }
        }
        Command::Paper { common, expect } => {
            let overrides: BTreeMap<String, String> = expect.into_iter().collect();
            let seed = common.seed.unwrap_or(0);
            let result = run_paper_suite(seed, &common.search(), &overrides)
                .map_err(|e| fail(e.to_string()))?;
            print!("{}", emit_suite(&result, common.format));
            if result.all_match() {
                Ok(())
            } else {
                let bad: Vec<&str> = result
                    .rows
                    .iter()
                    .filter(|r| !r.matches)
                    .map(|r| r.case.as_str())
                    .collect();
                Err(fail(format!("mismatch in {}", bad.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::from(EXIT_OK as u8),
        Err(code) => code,
    }
}
