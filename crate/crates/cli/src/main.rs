mod cli;
mod output;
mod run;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use cli::{AlgebroidCommand, Cli, Command, DeformCommand, Format};
use output::{digest, render, Report};
use run::{run, Inputs};

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Cohomology { .. } => "cohomology",
        Command::Nijenhuis { .. } => "nijenhuis",
        Command::Deform(DeformCommand::Check { .. }) => "deform check",
        Command::Deform(DeformCommand::Extend { .. }) => "deform extend",
        Command::Deform(DeformCommand::Equiv { .. }) => "deform equiv",
        Command::Deform(DeformCommand::Rigidity { .. }) => "deform rigidity",
        Command::Obstruction { .. } => "obstruction",
        Command::Algebroid(AlgebroidCommand::Check { .. }) => "algebroid check",
        Command::Algebroid(AlgebroidCommand::ExampleFc { .. }) => "algebroid example-fc",
        Command::Algebroid(AlgebroidCommand::ExampleTopform { .. }) => "algebroid example-topform",
        Command::ReduceLie { .. } => "reduce-lie",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    if let Some(n) = g.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let name = command_name(&cli.command);
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let outcome = run(&cli.command, g, &mut inputs);
    let elapsed = g.timing.then(|| start.elapsed().as_millis());
    let input_sha256 = digest(&inputs.bytes);

    let outcome = match outcome {
        Ok(o) => o,
        Err(f) => {
            let status = f.status();
            let msg = f.message();
            match g.format {
                Format::Text => eprintln!("error: {msg}"),
                Format::Json => {
                    let v = serde_json::json!({ "error": msg });
                    let report = Report {
                        tool: "filippov",
                        version: env!("CARGO_PKG_VERSION"),
                        command: name,
                        input_sha256,
                        status,
                        timing_ms: elapsed,
                        result: &v,
                        artifact: None,
                    };
                    print!("{}", render(&report, &[], g.format));
                }
            }
            return ExitCode::from(status.exit_code() as u8);
        }
    };

    if let (Some(path), Some(a)) = (&g.output, &outcome.artifact) {
        let mut text = serde_json::to_string_pretty(a).expect("artifacts serialize");
        text.push('\n');
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let report = Report {
        tool: "filippov",
        version: env!("CARGO_PKG_VERSION"),
        command: name,
        input_sha256,
        status: outcome.status,
        timing_ms: elapsed,
        result: &outcome.result,
        // written to a file instead when --output is given
        artifact: outcome.artifact.as_ref().filter(|_| g.output.is_none()),
    };
    print!("{}", render(&report, &outcome.lines, g.format));
    ExitCode::from(outcome.status.exit_code() as u8)
}
