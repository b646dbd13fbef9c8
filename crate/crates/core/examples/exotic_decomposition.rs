// Usage: cargo run --release --example exotic_decomposition [n]

use bockstein::exotic::{paper_witness_decomposition, search_decomposition, PrimePolicy};
use bockstein::SearchBounds;

fn main() {
    let n: u64 = std::env::args().nth(1).map_or(5, |s| s.parse().expect("n"));

    let (d1, d2) = paper_witness_decomposition(n).unwrap();
    println!("family witness: D1 = {d1}, D2 = {d2}");
    println!("D1 (+) D2 + 1 = {}", d1.oplus(&d2).add_const(1));

    let found = search_decomposition(n, &SearchBounds::uniform(n)).unwrap();
    println!("\n{} realizable uniform pair(s) up to value {n}:", found.len());
    for c in &found {
        println!("  {}  |  {}", c.d1, c.d2);
    }
    if let Some(c) = found.first() {
        println!("\n{}", c.to_text());
    }

    let with_two = SearchBounds {
        prime_policy: PrimePolicy::Exceptions(vec![2]),
        ..SearchBounds::uniform(n.min(5))
    };
    println!("with an exception at 2: {} pair(s)", search_decomposition(n, &with_two).unwrap().len());

    for k in 2..=4 {
        let none = search_decomposition(k, &SearchBounds::uniform(6)).unwrap();
        println!("n = {k}: {} realizable pair(s)", none.len());
    }
}
