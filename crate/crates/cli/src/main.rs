use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gradalg_cli::report::{to_json, to_text};
use gradalg_cli::{parse_script, run_document, RunConfig};

/// Run a gradalg script and print one report per command.
#[derive(Parser, Debug)]
#[command(name = "gradalg", version)]
struct Cli {
    /// Script file; reads stdin when omitted or `-`.
    script: Option<PathBuf>,
    /// Emit the JSON document instead of text.
    #[arg(long, env = "GRADALG_JSON")]
    json: bool,
    /// Seed for randomized steps (depth sequences, generic fibers).
    #[arg(long, env = "GRADALG_SEED", default_value_t = 0)]
    seed: u64,
    /// Largest power tried by the local cohomology limit.
    #[arg(long, env = "GRADALG_POWER_CAP", default_value_t = 12)]
    power_cap: usize,
    /// Default degree window, `lo:hi`.
    #[arg(long, env = "GRADALG_WINDOW", default_value = "-4:4", value_parser = parse_window, allow_hyphen_values = true)]
    window: (i64, i64),
    /// Keep going after a failing command.
    #[arg(long, env = "GRADALG_CONTINUE_ON_ERROR")]
    continue_on_error: bool,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let src = match &cli.script {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let src = match src {
        Ok(s) => s,
        Err(e) => {
            eprintln!("gradalg: cannot read script: {e}");
            return ExitCode::from(2);
        }
    };
    let script = match parse_script(&src) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("gradalg: parse error at {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig { seed: cli.seed, power_cap: cli.power_cap, window: cli.window, continue_on_error: cli.continue_on_error };
    let doc = run_document(&script, &cfg);
    if cli.json {
        println!("{}", to_json(&doc));
    } else {
        print!("{}", to_text(&doc.reports));
    }
    if doc.reports.iter().all(|r| r.is_ok()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
