use clap::Parser;
use sofa_bnb::session;
use std::io::{self, IsTerminal};

/// Exact upper and lower bounds for the largest shape that can traverse a
/// right-angled hallway, by rational branch and bound.
#[derive(Parser)]
#[command(name = "sofa-bnb", version, about)]
struct Args {
    /// Run this profile (a file path or a bundled name) non-interactively
    /// and exit instead of starting the interactive session.
    #[arg(long)]
    profile: Option<String>,

    /// Include certified lower bounds in progress reports.
    #[arg(long)]
    verbose: bool,
}

fn main() {
    let args = Args::parse();
    let mut stdout = io::stdout();
    let code = match &args.profile {
        Some(arg) => session::run_batch(arg, &mut stdout, &mut io::stderr(), args.verbose),
        None => {
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            session::run_session(stdin.lock(), &mut stdout, args.verbose, prompt).unwrap_or(1)
        }
    };
    std::process::exit(code);
}
