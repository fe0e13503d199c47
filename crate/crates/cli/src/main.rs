mod args;
mod document;
mod theories;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Args;
use document::{Document, Status};

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = theories::run(&args);
    let doc = Document::new(args.theory, args.op, args.options(), &outcome);
    let mut text = serde_json::to_string_pretty(&doc).expect("documents serialize");
    text.push('\n');

    let mut summary = format!("{:?} {:?}: {:?}\n", args.theory, args.op, doc.status);
    match &outcome {
        Ok(o) => {
            summary.push_str(&format!("result: {}\n", o.summary));
            if let Some(v) = &o.verification {
                let verdict = match v.holds {
                    Some(true) => "verified",
                    Some(false) => "FAILED",
                    None => "unverified",
                };
                summary.push_str(&format!("verification: {verdict}\n"));
            }
        }
        Err(e) => summary.push_str(&format!("error: {e}\n")),
    }

    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(Status::Invalid.exit_code() as u8);
            }
            print!("{summary}");
        }
        None => {
            eprint!("{summary}");
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    ExitCode::from(doc.status.exit_code() as u8)
}
