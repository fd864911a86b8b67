//! Noncrossing pair partitions of a word: enumeration, the admissibility
//! filter (every arc joins a T to a T*), the nested kernel value of each
//! partition, and the outer-line decomposition driving the recursion.
//!
//! Run with: cargo run --release --example partition_gallery -- "T T* T T*"

use std::env;

use triop::{admissible_partitions, enumerate_nc2, kappa_nested, outer_decomposition, Word};

fn main() {
    let input = env::args()
        .nth(1)
        .unwrap_or_else(|| "T T* T T*".to_string());
    let word: Word = input.parse().expect("word over T and T*");
    let m = word.len() / 2;
    println!("word: {word}");
    println!(
        "noncrossing pair partitions of {} points: {}",
        2 * m,
        enumerate_nc2(m).len()
    );

    let admissible = admissible_partitions(&word);
    println!("admissible for this word: {}\n", admissible.len());
    for p in &admissible {
        let value = kappa_nested(p, &word).unwrap();
        let d = outer_decomposition(p);
        println!("{p}");
        println!("  kernel value: {value}");
        println!("  outer lines:  {:?}", d.outer_lines());
        for (r, inner) in d.inner.iter().enumerate() {
            if !inner.is_empty() {
                println!("  nested under line {}: {:?}", r + 1, inner);
            }
        }
    }
}
