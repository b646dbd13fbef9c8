// Usage: cargo run --example certificates_json

use bockstein::exotic::{decomposition_feasible, map_feasible};
use bockstein::DimensionType;

fn main() {
    let d1: DimensionType = "q=1 all=2-".parse().unwrap();
    let d2: DimensionType = "q=2 all=1+".parse().unwrap();

    let good = decomposition_feasible(5, &d1, &d2).unwrap();
    println!("{}", serde_json::to_string_pretty(&good.to_json()).unwrap());

    // A failing certificate still lists every check.
    let bad = map_feasible(5, 2, &"q=2".parse().unwrap(), &d2).unwrap();
    println!("{}", bad.to_text());
    assert!(!bad.is_valid() && bad.recheck());
}
