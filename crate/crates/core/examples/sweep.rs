//! The summary table of the `sweep` subcommand, driven through the library.
//!
//! cargo run --release --example sweep -- 1..6

use kloosha::cli::{parse_levels, run, Command, Format, RunConfig};

fn main() {
    let levels = std::env::args().nth(1).unwrap_or_else(|| "1..6".into());
    let mut cfg = RunConfig::new(Command::Sweep, 3, 1);
    cfg.a_list = parse_levels(&levels).expect("level list");
    cfg.format = Format::Csv;
    let out = run(&cfg);
    print!("{}", out.output);
    std::process::exit(out.exit_code);
}
