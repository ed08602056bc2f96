//! Walk the full space of valid 3x3 unlock patterns and break the count
//! down by length.
//!
//!     cargo run --release --example enumerate_patterns

use pattern_oracle::enumerate_valid_patterns;

fn main() {
    let mut by_length = [0u64; 10];
    let mut total = 0u64;
    for p in enumerate_valid_patterns() {
        by_length[p.len()] += 1;
        total += 1;
    }
    println!("valid patterns by length:");
    for len in 4..=9 {
        println!("  {len} keys: {:>7}", by_length[len]);
    }
    println!("  total:  {total:>7}");

    println!("\nfirst five patterns in enumeration order:");
    for p in enumerate_valid_patterns().take(5) {
        println!("  {p}");
    }
}
