//! Run the bundled benchmark config and print the report table.

use tmcfl::harness::{bench_run, BenchConfig};

fn main() {
    let config = BenchConfig::from_json(include_str!("../configs/small.json")).unwrap();
    match bench_run(&config).unwrap() {
        Ok(report) => print!("{}", report.render_table()),
        Err(failure) => {
            print!("{}", failure.report.render_table());
            for offender in failure.offenders {
                eprintln!("{}: {}", offender.id, offender.detail);
            }
            std::process::exit(1);
        }
    }
}
