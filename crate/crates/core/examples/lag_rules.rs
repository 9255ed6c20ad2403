//! Print the four lag-length rules of thumb across sample sizes.
//!
//! Run with `cargo run --example lag_rules [T...]`.

use tsbreak::lag::LagRule;

fn main() {
    let sizes: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let sizes = if sizes.is_empty() {
        vec![25, 50, 100, 241, 500, 1000]
    } else {
        sizes
    };

    print!("{:>6}", "T");
    for rule in LagRule::ALL {
        print!(" {:>10}", rule.name());
    }
    println!();
    for t in sizes {
        print!("{t:>6}");
        for rule in LagRule::ALL {
            print!(" {:>10}", rule.lag(t));
        }
        println!();
    }
}
