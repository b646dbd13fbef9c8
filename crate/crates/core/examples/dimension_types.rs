// Usage: cargo run --example dimension_types

use bockstein::dimtype::{validate, DimensionTypeParts};
use bockstein::{BocksteinGroup, Decoration, DimensionType, ExtNat};

fn main() {
    let d1: DimensionType = "q=1 all=2- p3=4+".parse().unwrap();
    let d2: DimensionType = "q=2 all=1+".parse().unwrap();

    println!("D1 = {d1}");
    for h in BocksteinGroup::restricted_basis(&[2, 3]) {
        println!("  D1({h}) = {}", d1.evaluate(h));
    }
    println!("dim D1 = {}", d1.dim());

    println!("D1*         = {}", d1.star());
    println!("D1 [+] D2   = {}", d1.boxplus(&d2));
    println!("D1 (+) D2   = {}", d1.oplus(&d2));
    println!("D1 + 3      = {}", d1.add_const(3));
    println!("D1 <= D1+1  : {}", d1.leq(&d1.add_const(1)));
    println!("D1 <= D2    : {}", d1.leq(&d2));

    // The unchecked form reports every broken rule at once.
    let parts = DimensionTypeParts {
        q: ExtNat::Finite(2),
        default: (ExtNat::Finite(3), Decoration::Plain),
        exceptions: [(4, (ExtNat::Infinite, Decoration::Plus))].into(),
    };
    println!("{}", validate(&parts));

    for bad in ["q=1 all=2", "q=2 p4=3+", "q=1 p3=1+ p3=2-", "all=1+ q=1"] {
        println!("{bad:>18}: {}", bad.parse::<DimensionType>().unwrap_err());
    }
}
