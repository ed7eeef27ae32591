use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use spunnorm::report::{self, CliError, CliResult, Output};
use spunnorm::{bundled, selftest};

#[derive(Parser)]
#[command(
    name = "spunnorm",
    version,
    about = "Spun-normal surface coordinates of ideal triangulations"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Skeleton counts and vertex link invariants.
    Info { file: String },
    /// Matching equations and dimension formulas.
    Qmatch { file: String },
    /// Basis of the solution space.
    Kernel { file: String },
    /// Extreme rays of the projective solution space.
    Vertices { file: String },
    /// Admissible components, boundary data and dimension bounds.
    Admissible {
        file: String,
        #[arg(long)]
        curves: Option<String>,
    },
    /// Boundary classes and slopes of a solution.
    Boundary {
        file: String,
        #[arg(long)]
        solution: String,
        #[arg(long)]
        curves: Option<String>,
    },
    /// Compact core of the surface of an admissible solution.
    Surface {
        file: String,
        #[arg(long)]
        solution: String,
        #[arg(long)]
        padding: Option<i64>,
    },
    /// Both intersection pairings of two solutions.
    Pairing {
        file: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Write the orientable double cover.
    Doublecover {
        file: String,
        #[arg(long)]
        out: String,
    },
    /// Run the checks on the bundled examples.
    Selftest,
    /// Regenerate the bundled example files into a directory.
    Examples {
        #[arg(long)]
        dir: String,
    },
}

fn selftest_output() -> CliResult<Output> {
    let seed = selftest::seed();
    let checks = selftest::run(seed);
    let mut text = format!("seed {seed}\n");
    for c in &checks {
        text.push_str(&format!(
            "{} {:>2} {}: {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            c.detail
        ));
    }
    let json = json!({
        "seed": seed,
        "checks": checks.iter().map(|c| json!({"id": c.id, "title": c.title, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
    });
    let failed = checks.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        print!("{text}");
        return Err(CliError::Internal(format!("{failed} checks failed")));
    }
    Ok(Output { text, json })
}

fn examples(dir: &str) -> CliResult<Output> {
    let files = bundled::generate().map_err(CliError::Internal)?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{dir}: {e}")))?;
    let mut names = Vec::new();
    for (name, body) in files {
        let path = format!("{dir}/{name}");
        std::fs::write(&path, body).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        names.push(path);
    }
    Ok(Output {
        text: format!("wrote {}\n", names.join(", ")),
        json: json!({ "files": names }),
    })
}

fn run(cmd: Command) -> CliResult<Output> {
    use report::*;
    match cmd {
        Command::Info { file } => info(&load(&file)?),
        Command::Qmatch { file } => qmatch(&load(&file)?),
        Command::Kernel { file } => kernel(&load(&file)?),
        Command::Vertices { file } => vertices(&load(&file)?),
        Command::Admissible { file, curves } => admissible(&load(&file)?, curves.as_deref()),
        Command::Boundary {
            file,
            solution,
            curves,
        } => boundary(&load(&file)?, &parse_csv(&solution)?, curves.as_deref()),
        Command::Surface {
            file,
            solution,
            padding,
        } => surface(&load(&file)?, &parse_csv(&solution)?, padding),
        Command::Pairing { file, a, b } => {
            pairing_cmd(&load(&file)?, &parse_csv(&a)?, &parse_csv(&b)?)
        }
        Command::Doublecover { file, out } => doublecover(&load(&file)?, &out),
        Command::Selftest => selftest_output(),
        Command::Examples { dir } => examples(&dir),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            return ExitCode::from(if help { 0 } else { 1 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = if cli.json {
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&out.json).unwrap()
                )
            } else {
                write!(stdout, "{}", out.text)
            };
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
