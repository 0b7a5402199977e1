//! The automated property suite over the catalog, printed as one line per
//! check, followed by the same command through the CLI entry point.

use digitop::suite::property_suite;
use digitop::{catalog, SearchBudget};

fn main() -> digitop::Result<()> {
    for key in ["point", "interval:0:3", "cycle:5", "cube"] {
        let x = catalog::load_key(key)?;
        let report = property_suite(&x, &SearchBudget::default(), 7)?;
        println!("{key}");
        for c in &report.checks {
            println!("  {:<24} {:<7} {}", c.name, format!("{:?}", c.status).to_lowercase(), c.detail);
        }
    }

    let mut out = Vec::new();
    let code = digitop::cli::run(["digitop", "suite", "--image", "cycle:4", "--format", "json"], &mut out);
    println!("cli exit {code}, {} bytes of JSON", out.len());
    Ok(())
}
