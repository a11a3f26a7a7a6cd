use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use triquiver::fixtures::run_suite;
use triquiver::service::{handle, render, serve, ServiceError, DEFAULT_PORT, PORT_ENV};

#[derive(Parser)]
#[command(name = "triquiver", version, about = "Exact stability computations on the three-vertex quiver")]
struct Cli {
    /// Run the table fixtures and print a coverage matrix.
    #[arg(long)]
    fixture_suite: bool,
    /// Compact JSON output (the default for commands).
    #[arg(long, global = true)]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the semistable objects and curves at a point.
    Classify {
        /// Point as a file path or inline JSON.
        #[arg(long)]
        point: String,
    },
    /// Name the chamber or wall containing a point.
    Locate {
        #[arg(long)]
        point: String,
    },
    /// Sample the segment between two points of one chart.
    Walk {
        #[arg(long)]
        start: String,
        #[arg(long)]
        end: String,
        #[arg(long, default_value_t = 10)]
        steps: u32,
    },
    /// Degree and dimension of the morphisms between two objects, e.g. `a:0 b:1[1]`.
    Hom { x: String, y: String },
    /// Compare the classifier with the representation oracle at a heart point.
    Verify {
        /// Charges of the simples at x, z, y, e.g. "i,3i,2i".
        #[arg(long)]
        charge: String,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long)]
        cap: Option<i64>,
    },
    /// List the chart families and their inequalities.
    Charts,
    /// Start the HTTP service.
    Serve {
        #[arg(long, env = PORT_ENV, default_value_t = DEFAULT_PORT)]
        port: u16,
    },
}

/// Inline JSON if it looks like an object, otherwise a path.
fn load(arg: &str) -> Result<Value, ServiceError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| ServiceError { status: 400, code: "InvalidRequest".into(), detail: format!("cannot read {arg}: {e}") })?
    };
    serde_json::from_str(&text)
        .map_err(|e| ServiceError { status: 400, code: "InvalidRequest".into(), detail: format!("bad JSON in {arg}: {e}") })
}

fn request(cmd: &Cmd) -> Result<(&'static str, Value), ServiceError> {
    Ok(match cmd {
        Cmd::Classify { point } => ("classify", load(point)?),
        Cmd::Locate { point } => ("locate", load(point)?),
        Cmd::Walk { start, end, steps } => ("walk", json!({"start": load(start)?, "end": load(end)?, "steps": steps})),
        Cmd::Hom { x, y } => ("hom", json!({"x": x, "y": y})),
        Cmd::Verify { charge, bound, cap } => {
            let mut v = json!({"charge": charge, "bound": bound});
            if let Some(c) = cap {
                v["cap"] = json!(c);
            }
            ("verify", v)
        }
        Cmd::Charts => ("charts", json!({})),
        Cmd::Serve { .. } => unreachable!("serve is handled before dispatch"),
    })
}

/// Writes a line to stdout; a closed pipe is not an error worth a panic.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.fixture_suite {
        let report = run_suite();
        if cli.json || cli.pretty {
            emit(&render(&report.to_json(), cli.pretty));
        } else {
            emit(report.matrix().trim_end());
        }
        return if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    let Some(cmd) = cli.command else {
        eprintln!("no command given; see --help");
        return ExitCode::from(1);
    };
    if let Cmd::Serve { port } = cmd {
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        return match rt.block_on(serve(port)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("serve: {e}");
                ExitCode::from(1)
            }
        };
    }
    match request(&cmd).and_then(|(name, payload)| handle(name, &payload)) {
        Ok(v) => {
            emit(&render(&v, cli.pretty));
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&render(&e.to_json(), cli.pretty));
            ExitCode::from(if e.is_bug() { 2 } else { 1 })
        }
    }
}
