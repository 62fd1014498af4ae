//! `staircase-lab` binary: runs one command and exits with its status code.

use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = staircase_lab::run(&args);
    if !out.stdout.is_empty() {
        let mut stdout = std::io::stdout().lock();
        // a closed pipe is not an error for a report writer
        let _ = stdout.write_all(out.stdout.as_bytes());
    }
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr.trim_end());
    }
    std::process::exit(out.code);
}
