//! Command-line interface (placeholder; filled in as subcommands land).

/// Entry point for the `hurwitz` binary.
pub fn main() {
    eprintln!("hurwitz {}: no subcommands wired up yet", crate::VERSION);
    std::process::exit(2);
}
