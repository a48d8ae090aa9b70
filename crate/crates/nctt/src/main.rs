use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nctt::{Options, Session};

#[derive(Parser)]
#[command(name = "nctt", version, about = "Type checker for naive cubical type theory")]
struct Cli {
    /// Start from an empty environment instead of the prelude.
    #[arg(long, global = true)]
    no_prelude: bool,
    /// Print every filling case taken by the kernel to stderr.
    #[arg(long, global = true)]
    trace_fill: bool,
    /// Abort a definition after this many evaluation steps.
    #[arg(long, global = true, value_name = "N")]
    max_steps: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check files, each against the prelude.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Check a file and print the normal form of one of its definitions.
    Normalize {
        file: PathBuf,
        #[arg(long = "def", value_name = "NAME")]
        name: String,
    },
}

fn init_logging(trace_fill: bool) {
    let mut b = env_logger::Builder::new();
    if trace_fill {
        b.filter_module("nctt::fill", log::LevelFilter::Trace);
        b.format(|f, rec| writeln!(f, "fill: {}", rec.args()));
    } else {
        b.parse_default_env();
    }
    b.init();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging(cli.trace_fill);
    // Step-limit panics are reported as diagnostics.
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        let msg = info
            .payload()
            .downcast_ref::<&str>()
            .copied()
            .or(info.payload().downcast_ref::<String>().map(|s| s.as_str()));
        if msg != Some(nctt_core::fuel::EXHAUSTED) {
            default_hook(info);
        }
    }));
    let opts = Options { no_prelude: cli.no_prelude, max_steps: cli.max_steps };
    let base = match Session::new(&opts) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("prelude: {e}");
            return ExitCode::from(2);
        }
    };
    match cli.command {
        Command::Check { files } => {
            let mut status = 0;
            for file in files {
                let mut s = base.clone();
                match s.load(&file) {
                    Ok(n) => println!("ok {} ({n} defs)", file.display()),
                    Err(e) => {
                        eprintln!("{e}");
                        status = status.max(e.exit_code());
                    }
                }
            }
            ExitCode::from(status as u8)
        }
        Command::Normalize { file, name } => {
            let mut s = base;
            if let Err(e) = s.load(&file) {
                eprintln!("{e}");
                return ExitCode::from(e.exit_code() as u8);
            }
            match s.normalize(&name) {
                Some(nf) => {
                    println!("{nf}");
                    ExitCode::SUCCESS
                }
                None => {
                    eprintln!("no definition named `{name}`");
                    ExitCode::from(2)
                }
            }
        }
    }
}
