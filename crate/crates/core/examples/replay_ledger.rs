// Usage: cargo run --release --example replay_ledger [max_n]

use bockstein::decorated::Decoration;
use bockstein::exotic::{verify_paper_with, LedgerConfig};

fn main() {
    let max_n = std::env::args().nth(1).map_or(12, |s| s.parse().expect("max_n"));
    let report = verify_paper_with(&LedgerConfig { max_n, ..LedgerConfig::default() });
    for entry in report.entries.iter().filter(|e| e.name.starts_with("decomposition n=5")) {
        println!("{} {}", if entry.pass { "PASS" } else { "FAIL" }, entry.name);
    }
    println!("{} entries, all pass: {}", report.entries.len(), report.all_pass());

    // A broken sign rule, where + and - combine to +, is caught.
    let broken = |a: Decoration, b: Decoration| match (a, b) {
        (Decoration::Plain, x) | (x, Decoration::Plain) => x,
        (Decoration::Minus, Decoration::Minus) => Decoration::Minus,
        _ => Decoration::Plus,
    };
    let report = verify_paper_with(&LedgerConfig { max_n: 6, sign: broken, ..LedgerConfig::default() });
    println!("with a broken sign rule: {} failure(s)", report.failures().count());
    for e in report.failures().take(3) {
        println!("  FAIL {}", e.name);
    }
}
