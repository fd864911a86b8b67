//! The moment formula is equivalent to a family of multinomial identities.
//! For n = 2, 3, 4 the right-hand sides have explicit displayed sums; for
//! any n the bridge (nk+1)! * phi = n^{nk} checks the identity numerically.
//!
//! Run with: cargo run --release --example multinomial_identities

use triop::{identity_from_moments, identity_lhs, identity_rhs, partition_terms};

fn main() {
    for (n, k_max) in [(2u32, 12u32), (3, 8), (4, 6)] {
        for k in 1..=k_max {
            let lhs = identity_lhs(n, k);
            let rhs = identity_rhs(n, k).expect("displayed sum exists for n = 2, 3, 4");
            assert_eq!(lhs, rhs);
        }
        println!("displayed identity for n = {n} holds exactly up to k = {k_max}");
    }

    println!();
    for n in 2..=8u32 {
        let (lhs, rhs) = identity_from_moments(n, 1, 8).unwrap();
        assert_eq!(lhs, rhs);
        println!("moment bridge n = {n}, k = 1: {lhs} = (n*1+1)! * phi");
    }

    // Where the n = 3 identity comes from: one scalar term per admissible
    // partition of (T^k T*^k)^3.
    println!();
    let terms = partition_terms(3, 1);
    println!("admissible partitions of (T T*)^3 and their contributions:");
    for (p, value) in &terms {
        println!("  {p} -> {value}");
    }
    let total: triop::Rational = terms.into_iter().map(|(_, v)| v).sum();
    println!("  total = {total} = 3^3/4!");
}
