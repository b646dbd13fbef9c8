// Usage: cargo run --release --example exotic_map [n] [m]

use bockstein::exotic::{map_bound_type, paper_witness_map, search_map};
use bockstein::SearchBounds;

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("index"));
    let n = args.next().unwrap_or(6);
    let m = args.next().unwrap_or(3);

    println!("bound type D = {}", map_bound_type(n, m).unwrap());
    if let Ok((_, d1, d2)) = paper_witness_map(n, m) {
        println!("family witness: D1 = {d1}, D2 = {d2}");
    }

    let found = search_map(n, m, &SearchBounds::uniform(n)).unwrap();
    println!("{} realizable pair(s) up to value {n}", found.len());
    for c in found.iter().take(5) {
        println!("  {}  |  {}", c.d1, c.d2);
    }

    // In dimension 4 only unrealizable pairs pass the checks.
    let formal = SearchBounds { realizable_only: false, ..SearchBounds::uniform(6) };
    println!(
        "(4, 2): {} realizable, {} formal",
        search_map(4, 2, &SearchBounds::uniform(6)).unwrap().len(),
        search_map(4, 2, &formal).unwrap().len()
    );
}
