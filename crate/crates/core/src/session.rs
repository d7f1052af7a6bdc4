//! Interactive and batch front ends. The interactive session reads
//! commands from any buffered reader and writes to any writer, so the
//! whole surface is scriptable from tests; the binary just wires it to
//! stdin/stdout.

use crate::engine::{run, EngineError, Report};
use crate::kernel::{decimal_exact, decimal_round, PythagoreanAngle};
use crate::profile::{bundled, parse_profile, Profile, BUNDLED_NAMES};
use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, Write};
use std::time::Duration;

fn duration_text(d: Duration) -> String {
    let secs = d.as_secs();
    format!("{}:{:02}:{:02}", secs / 3600, (secs % 3600) / 60, secs % 60)
}

/// One progress line. Upper bounds are rounded up and lower bounds down,
/// so the printed values are themselves valid bounds.
pub fn format_report(report: &Report, verbose: bool) -> String {
    let mut line = format!(
        "<iterations={} | upper bound={} | time={}>",
        report.iteration,
        decimal_round(&report.upper, 3, true),
        duration_text(report.elapsed)
    );
    if verbose {
        let lower = decimal_round(&report.lower, 3, false);
        line.truncate(line.len() - 1);
        line.push_str(&format!(" | lower bound={lower}>"));
    }
    line
}

fn degrees_text(a: &PythagoreanAngle) -> String {
    if a.is_right() {
        "90".to_string()
    } else if a.is_zero() {
        "0".to_string()
    } else {
        format!("{:.4}", a.degrees_approx())
    }
}

/// Human-readable echo of a loaded profile.
pub fn settings_text(p: &Profile) -> String {
    let mut out = String::new();
    let spec = p.spec();
    let _ = writeln!(out, "Number of corridors: {}", spec.k());
    let _ = writeln!(out);
    for (i, s) in spec.slopes().iter().enumerate() {
        let (a, b, c) = s.triple();
        let _ = writeln!(
            out,
            "Slope {}:{:>10}{:>8}{:>8}     (angle: {} deg)",
            i + 1,
            a,
            b,
            c,
            degrees_text(s)
        );
    }
    for (label, angle) in
        [("Minimum final slope", spec.min_final()), ("Maximum final slope", spec.max_final())]
    {
        let (a, b, c) = angle.triple();
        let _ = writeln!(out, "{label}: {a} {b} {c}     (angle: {} deg)", degrees_text(angle));
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "Reporting progress every: {} decrease in upper bound",
        decimal_exact(p.report_granularity())
    );
    if let Some(t) = p.target_upper() {
        let _ = writeln!(out, "Stop at upper bound: {}", decimal_exact(t));
    }
    if let Some(n) = p.max_iterations() {
        let _ = writeln!(out, "Stop after iterations: {n}");
    }
    if let Some(n) = p.max_time_seconds() {
        let _ = writeln!(out, "Stop after seconds: {n}");
    }
    out
}

/// Resolves a profile argument: a bundled name first, then a file path.
/// Returns the parsed profile or a printable error message.
pub fn load_profile(arg: &str) -> Result<Profile, String> {
    let text = match bundled(arg) {
        Some(t) => t.to_string(),
        None => fs::read_to_string(arg).map_err(|e| format!("cannot read '{arg}': {e}"))?,
    };
    parse_profile(&text).map_err(|e| format!("cannot parse '{arg}': {e}"))
}

const HELP: &str = "Commands:\n\
  load <profile>   Load a problem profile (a file path or a bundled name).\n\
  settings         Show the loaded problem and reporting settings.\n\
  run              Run branch and bound until a stop criterion fires.\n\
  help             Show this message.\n\
  quit             Exit.\n";

fn write_bundled_list(out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "Bundled profiles: {}", BUNDLED_NAMES.join(", "))
}

fn run_loaded(profile: &Profile, out: &mut dyn Write, verbose: bool) -> Result<(), EngineError> {
    let cfg = profile.engine_config();
    let _ = writeln!(out, "<iterations=0>");
    let cert = run(profile.spec(), &cfg, |r: &Report| {
        let _ = writeln!(out, "{}", format_report(r, verbose));
    })?;
    let _ = writeln!(
        out,
        "Run complete: stop={} | upper bound={} | lower bound={}",
        cert.stop,
        decimal_round(&cert.upper, 3, true),
        decimal_round(&cert.lower, 3, false)
    );
    Ok(())
}

/// The interactive loop. Reads one command per line; always exits 0 on a
/// clean quit or end of input. Errors are printed and the session
/// continues.
pub fn run_session(
    input: impl BufRead,
    out: &mut dyn Write,
    verbose: bool,
    prompt: bool,
) -> io::Result<i32> {
    let mut profile: Option<Profile> = None;
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (cmd, arg) = match line.split_once(char::is_whitespace) {
            Some((c, a)) => (c, a.trim()),
            None => (line, ""),
        };
        match cmd {
            "help" => {
                write!(out, "{HELP}")?;
                write_bundled_list(out)?;
            }
            "load" => {
                if arg.is_empty() {
                    writeln!(out, "Error: load needs a profile name or path.")?;
                    continue;
                }
                match load_profile(arg) {
                    Ok(p) => {
                        profile = Some(p);
                        writeln!(out, "Profile '{arg}' loaded.")?;
                    }
                    Err(e) => writeln!(out, "Error: {e}")?,
                }
            }
            "settings" => match &profile {
                Some(p) => write!(out, "{}", settings_text(p))?,
                None => writeln!(out, "No profile loaded.")?,
            },
            "run" => match &profile {
                Some(p) => {
                    if let Err(e) = run_loaded(p, out, verbose) {
                        writeln!(out, "Error: {e}")?;
                    }
                }
                None => writeln!(out, "No profile loaded.")?,
            },
            "quit" => break,
            _ => writeln!(out, "Unknown command '{cmd}'. Type 'help' for a list of commands.")?,
        }
    }
    Ok(0)
}

/// Non-interactive mode: load one profile, run it, exit. Exit codes:
/// 0 success, 2 load or parse failure, 1 engine refusal.
pub fn run_batch(arg: &str, out: &mut dyn Write, err: &mut dyn Write, verbose: bool) -> i32 {
    let profile = match load_profile(arg) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "Error: {e}");
            return 2;
        }
    };
    match run_loaded(&profile, out, verbose) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "Error: {e}");
            1
        }
    }
}
