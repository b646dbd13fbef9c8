// Usage: cargo run --example bockstein_basis

use bockstein::groups::dim_g;
use bockstein::{DimensionType, GroupExpr};

fn main() {
    let d: DimensionType = "q=1 all=2- p3=3+".parse().unwrap();
    println!("D = {d}, dim D = {}", d.dim());

    for g in ["Z", "Q", "Z/2", "Z/2^2 + Z/3^2", "Z(2inf)", "Z_(3)", "Z[1/2]", "Z/5 + Q", "0"] {
        let g: GroupExpr = g.parse().unwrap();
        let r = dim_g(&d, &g);
        let note = if r.degenerate { " (trivial group)" } else { "" };
        println!("{:<14} sigma = {:<36} dim_G = {}{note}", g.to_string(), g.sigma().to_string(), r.value);
    }

    for bad in ["Z/6", "Z/2 +", "Z_(1)"] {
        println!("{bad:>8}: {}", bad.parse::<GroupExpr>().unwrap_err());
    }
}
