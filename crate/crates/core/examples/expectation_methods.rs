//! Computes E(word) by three independent routes — the sum over admissible
//! noncrossing pair partitions, the memoized outer-line recursion, and (for
//! power words) the integration recursion — and shows they coincide.
//!
//! Run with: cargo run --release --example expectation_methods -- "T T* T T*"

use std::env;

use triop::{
    expectation_direct, expectation_recursive, expectation_via_integration, power_word, Word,
};

fn main() {
    let input = env::args()
        .nth(1)
        .unwrap_or_else(|| "T T* T T*".to_string());
    let word: Word = input.parse().expect("word over T and T*");
    println!("word: {word}");

    let direct = expectation_direct(&word);
    let recursive = expectation_recursive(&word);
    println!("partition sum:       E = {direct}");
    println!("outer-line recursion: E = {recursive}");
    assert_eq!(direct, recursive);

    // When the word is some (T^k T*^k)^n, the integration recursion applies.
    if let Some((k, n)) = as_powers(&word) {
        let integrated = expectation_via_integration(k, n);
        println!("integration recursion (k={k}, n={n}): E = {integrated}");
        assert_eq!(direct, integrated);
    }

    println!("phi = {}", direct.definite_integral_01());
}

fn as_powers(w: &Word) -> Option<(u32, u32)> {
    for k in 1..=w.len() / 2 {
        let n = w.len() / (2 * k);
        if power_word(k as u32, n as u32) == *w {
            return Some((k as u32, n as u32));
        }
    }
    None
}
