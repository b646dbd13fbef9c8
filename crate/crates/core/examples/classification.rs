// Usage: cargo run --example classification

use bockstein::DimensionType;

fn main() {
    for s in [
        "q=0",
        "q=3",
        "q=3 all=4-",
        "q=2 all=3- p5=2",
        "q=1 all=2+",
        "q=0 all=1-",
        "q=1 all=2- p2=1-",
        "q=4 p3=4+",
    ] {
        let d: DimensionType = s.parse().unwrap();
        let class = d.classify().map_or_else(|e| e.to_string(), |c| c.to_string());
        let critical = d.critical_primes().map_or_else(|e| e.to_string(), |c| c.to_string());
        println!("{s:<20} dim={:<3} realizable={:<5} {class:<12} critical: {critical}", d.dim(), d.is_realizable());
        if d.is_realizable() && !d.is_zero() {
            println!("{:<20} dim(D [+] D) = {}", "", d.boxplus(&d).dim());
        }
    }

    let b5 = DimensionType::boltyanskii(5).unwrap();
    println!("B_5 = {b5}, B_5 = B_4 + 1: {}", b5 == DimensionType::boltyanskii(4).unwrap().add_const(1));
}
