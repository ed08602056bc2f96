//! Inspect the 504-entry standard cipher dictionary the matcher compares
//! trajectory units against.
//!
//!     cargo run --release --example cipher_dictionary

use std::collections::BTreeSet;

use pattern_oracle::{build_cipher_dictionary, standard_sets};

fn main() {
    let dict = build_cipher_dictionary();
    println!("dictionary size: {}", dict.len());

    let sets = standard_sets();
    println!("standard segment lengths (grid units): {:?}", sets.distances);
    println!("standard turn angles (degrees): {:?}", sets.angles_deg);

    // ciphers whose middle stroke passes through a dot not in the triple
    let expanded: Vec<_> = dict
        .iter()
        .filter(|c| c.key_expansion.len() > 3)
        .collect();
    println!(
        "\n{} ciphers expand past their three turning dots, e.g.:",
        expanded.len()
    );
    for c in expanded.iter().take(5) {
        println!(
            "  dots {:?} -> keys {:?}  u={:?} v={:?} w=({:.3}, {:.3})",
            c.dots, c.key_expansion, c.u, c.v, c.w.0, c.w.1
        );
    }

    let distinct_dirs: BTreeSet<(i64, i64)> = dict.iter().map(|c| c.u).collect();
    println!("\ndistinct first-stroke vectors: {}", distinct_dirs.len());
}
