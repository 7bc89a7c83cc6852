use clap::Parser;
use jplab::{Command, JplabError, RunConfig, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_PASS};
use std::path::PathBuf;
use std::process::ExitCode;

/// Verification driver for the determinant identities.
#[derive(Parser, Debug)]
#[command(name = "jplab", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Directory for CSV output.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Overrides the seed in the configuration.
    #[arg(long)]
    seed: Option<u64>,
}

fn init_threads() -> Result<(), JplabError> {
    let Ok(raw) = std::env::var("JPLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        JplabError::Config(format!(
            "JPLAB_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| JplabError::Config(e.to_string()))
}

fn execute(cli: &Cli) -> Result<i32, JplabError> {
    init_threads()?;
    let mut cfg = RunConfig::load(&cli.config).map_err(JplabError::Config)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    let report = jplab::run(cli.command, &cfg)?;
    print!("{}", report.stdout);
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(csv) = &report.csv {
        std::fs::create_dir_all(&cli.out)
            .map_err(|e| JplabError::Io(format!("{}: {e}", cli.out.display())))?;
        let name = cfg
            .output
            .clone()
            .unwrap_or_else(|| format!("{}.csv", cli.command.name()));
        let path = cli.out.join(name);
        std::fs::write(&path, csv)
            .map_err(|e| JplabError::Io(format!("{}: {e}", path.display())))?;
        println!("wrote {}", path.display());
    }
    println!(
        "{}: {}",
        if report.passed { "PASS" } else { "FAIL" },
        report.summary
    );
    Ok(if report.passed {
        EXIT_PASS
    } else {
        EXIT_NUMERICAL
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() {
                EXIT_CONFIG
            } else {
                EXIT_PASS
            };
            return ExitCode::from(code as u8);
        }
    };
    let code = match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
