//! Drives the command-line front end in-process.
//!
//! Run with `cargo run --example command_line`.

fn main() {
    let code = sibson::cli::run([
        "sibson", "examples", "erasure", "--delta", "0.3", "--alpha", "-2", "--convention",
        "support", "--base", "2",
    ]);
    println!("exit code {code}");
}
