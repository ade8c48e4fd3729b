//! Command-line interface; see the crate README for subcommands.

fn main() {
    hurwitz::cli_main();
}
