//! Verifies the closed moment formula phi[(T^k T*^k)^n] = n^{nk}/(nk+1)!
//! over every (k, n) with nk <= 8, comparing the exact partition sum against
//! the closed form.
//!
//! Run with: cargo run --release --example moment_grid

use triop::{main_formula, phi_word, power_word};

fn main() {
    let bound = 8;
    let mut all_ok = true;
    println!(
        "{:>3} {:>3} {:>22} {:>22}  status",
        "k", "n", "phi (partition sum)", "n^nk/(nk+1)!"
    );
    for k in 1..=bound {
        for n in 1..=bound / k {
            let phi = phi_word(&power_word(k, n));
            let expected = main_formula(k, n);
            let ok = phi == expected;
            all_ok &= ok;
            println!(
                "{k:>3} {n:>3} {:>22} {:>22}  {}",
                phi.to_string(),
                expected.to_string(),
                if ok { "ok" } else { "MISMATCH" }
            );
        }
    }
    assert!(all_ok);
    println!("\nall {bound}-bounded cases agree exactly");
}
