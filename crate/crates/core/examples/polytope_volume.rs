//! The moments are volumes of staircase chain polytopes
//! {0 < x_0 < ... < x_{nk}, x_{jk} < j}. Three views of the same number:
//! the exact occupancy sum, a seeded Monte Carlo estimate, and the
//! cyclic-shift property that proves n * vol = n^{nk+1}/(nk+1)!.
//!
//! Run with: cargo run --release --example polytope_volume

use num_traits::ToPrimitive;
use triop::{
    closed_compositions, main_formula, raney_shift_check, volume_exact, volume_montecarlo,
    volume_polynomial,
};

fn main() {
    let (k, n) = (2u32, 2u32);

    println!(
        "occupancy vectors of the {} points over {} unit cells:",
        n * k + 1,
        n
    );
    for comp in closed_compositions(k, n) {
        println!("  {:?}", comp.counts());
    }

    let exact = volume_exact(k, n);
    println!("\nexact volume      = {exact}");
    println!("closed formula    = {}", main_formula(k, n));
    assert_eq!(exact, main_formula(k, n));

    let (estimate, stderr) = volume_montecarlo(k, n, 200_000, 42);
    println!("Monte Carlo       = {estimate:.6} +- {stderr:.6} (seed 42)");
    assert!((estimate - exact.to_f64().unwrap()).abs() <= 4.0 * stderr);

    println!("\nx-parameterized volume polynomial:");
    println!("  vol(x) = {}", volume_polynomial(k, n));

    for (k, n) in [(1u32, 2u32), (1, 3), (2, 2), (2, 3)] {
        let ok = raney_shift_check(k, n, 10_000, 7);
        println!(
            "cyclic-shift uniqueness for (k={k}, n={n}): {}",
            if ok { "ok" } else { "FAIL" }
        );
        assert!(ok);
    }
}
