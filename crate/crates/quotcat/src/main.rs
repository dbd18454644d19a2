use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quotcat::build::build_world;
use quotcat::dsl::{parse_scenario, Task};
use quotcat::fixtures::{description, fixture_text, load_text, FIXTURES};
use quotcat::runner::{run_world, Options, DEFAULT_TRIANGLE_CAP};
use quotcat::schema::{validate_report, REPORT_SCHEMA};
use quotcat::{CliError, Result};
use quotcat_core::rigidstar::SearchOptions;

/// Exit code for unreadable or invalid input.
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "quotcat", version, about = "Checks stable-category quotients against module categories over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

/// Order in which bounded searches enumerate candidate coefficient vectors.
#[derive(Clone, Copy, ValueEnum)]
enum SeedOrder {
    Lex,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a scenario and build its algebra and modules.
    Validate {
        /// Scenario file, or `fixture:NAME`.
        file: String,
    },
    /// Run the tasks of a scenario and print a report.
    Run {
        /// Scenario file, or `fixture:NAME`.
        file: String,
        /// Run this task instead of those in the file; repeatable.
        #[arg(long = "task", value_parser = parse_task)]
        tasks: Vec<Task>,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        /// Enumeration order of bounded searches; only `lex` exists.
        #[arg(long, value_enum, default_value = "lex")]
        seed_order: SeedOrder,
        /// Unit visits allowed in each bounded search.
        #[arg(long, default_value_t = SearchOptions::default().cap)]
        cap: u64,
        /// Largest number of summands tried in exhaustive middle terms.
        #[arg(long, default_value_t = SearchOptions::default().summand_bound)]
        summand_bound: usize,
        /// Morphisms per side whose triangles are checked.
        #[arg(long, default_value_t = DEFAULT_TRIANGLE_CAP)]
        triangle_cap: usize,
    },
    /// List the embedded fixtures, or print one.
    Fixtures {
        #[arg(long)]
        show: Option<String>,
    },
    /// Print the JSON schema of reports.
    Schema,
    /// Check a JSON report against the schema.
    CheckReport { file: PathBuf },
}

fn parse_task(s: &str) -> std::result::Result<Task, String> {
    Task::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Task::ALL.iter().map(|t| t.name()).collect();
        format!("unknown task `{s}`; expected one of {}", names.join(", "))
    })
}

fn execute(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Validate { file } => {
            let s = parse_scenario(&load_text(&file)?)?;
            let w = build_world(&s)?;
            println!(
                "ok: algebra of dimension {} (bound {}), {} modules, universe of {} objects",
                w.alg.dim(),
                w.alg.bound(),
                w.modules.len(),
                w.universe.len()
            );
            for n in &w.notes {
                println!("note: {n}");
            }
            Ok(0)
        }
        Command::Run {
            file,
            tasks,
            report,
            format,
            seed_order: SeedOrder::Lex,
            cap,
            summand_bound,
            triangle_cap,
        } => {
            let s = parse_scenario(&load_text(&file)?)?;
            let w = build_world(&s)?;
            let opts = Options {
                tasks,
                search: SearchOptions { cap, summand_bound },
                triangle_cap,
            };
            let r = run_world(&s, &w, &opts)?;
            let json = r.to_json()?;
            if let Some(path) = report {
                std::fs::write(&path, &json).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            match format {
                Format::Json => print!("{json}"),
                Format::Markdown => print!("{}", r.to_markdown()),
            }
            Ok(r.exit_code() as u8)
        }
        Command::Fixtures { show } => {
            match show {
                Some(name) => print!("{}", fixture_text(&name)?),
                None => {
                    for (name, text) in FIXTURES {
                        println!("{name:22} {}", description(text));
                    }
                }
            }
            Ok(0)
        }
        Command::Schema => {
            print!("{REPORT_SCHEMA}");
            Ok(0)
        }
        Command::CheckReport { file } => {
            let text = std::fs::read_to_string(&file).map_err(|source| CliError::Io {
                path: file.display().to_string(),
                source,
            })?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            let errs = validate_report(&value);
            if errs.is_empty() {
                println!("ok");
                Ok(0)
            } else {
                for e in &errs {
                    println!("{e}");
                }
                Ok(1)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
