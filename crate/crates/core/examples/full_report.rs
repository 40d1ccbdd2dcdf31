// Runs every check group with the default configuration and prints the
// table. Set SEXTIC_SEED to change the seed.
//
//     cargo run --release --example full_report

use elliptic_sextic::report::{run as run_checks, RunConfig, VerificationReport};
use elliptic_sextic::Result;

pub fn run() -> Result<VerificationReport> {
    let cfg = RunConfig::default().with_env()?;
    let report = run_checks(&cfg)?;
    print!("{}", report.table());
    Ok(report)
}

fn main() -> Result<()> {
    let report = run()?;
    if !report.passed() {
        std::process::exit(1);
    }
    Ok(())
}
