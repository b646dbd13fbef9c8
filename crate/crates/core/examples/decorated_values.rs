// Usage: cargo run --example decorated_values

use bockstein::{DecoratedValue, Decoration, ExtNat};

fn main() {
    let mut values: Vec<DecoratedValue> = ["3+", "2", "3-", "1+", "inf", "2-", "3"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    values.sort();
    let line: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    println!("ordered: {}", line.join(" < "));

    for (a, b) in [("2-", "1+"), ("2+", "2-"), ("3", "1-"), ("2+", "inf")] {
        let (x, y): (DecoratedValue, DecoratedValue) = (a.parse().unwrap(), b.parse().unwrap());
        println!("{a} [+] {b} = {}", x.box_add(y));
    }

    let v = DecoratedValue::plus(4);
    println!("dual of {v} is {}, shifted by 2 is {}", v.dual(), v.shift(2));

    for bad in ["inf+", "0-", "01", "3*"] {
        println!("{bad:>5}: {}", bad.parse::<DecoratedValue>().unwrap_err());
    }
    assert!(DecoratedValue::new(ExtNat::Infinite, Decoration::Minus).is_err());
}
