//! The basis f_{a,b}(x) = x^a (1-x)^b / (a! b!) closes under multiplication
//! and under the variance kernel, which turns nested evaluations of parallel
//! lines into index bookkeeping. This example shows the product rule, a
//! depth-3 nest, the closed form for its integral, and the diagnostic
//! comparing the two candidate nest weightings.
//!
//! Run with: cargo run --release --example f_basis_calculus

use triop::{nest_conventions, nested_parallel_kappa, phi_nested_closed, FSum, FTerm, Letter};

fn main() {
    let f21 = FTerm::basis(2, 1);
    let f13 = FTerm::basis(1, 3);
    let product = &f21 * &f13;
    println!(
        "f_(2,1) * f_(1,3) = {} f_({},{})",
        product.coeff, product.alpha, product.beta
    );
    assert_eq!(product.to_poly(), f21.to_poly() * f13.to_poly());

    let nest = nested_parallel_kappa(Letter::T, 3, &FSum::basis(2, 1));
    println!("\ndepth-3 nest of f_(2,1) with T outside:");
    for t in nest.terms() {
        println!("  {} f_({},{})", t.coeff, t.alpha, t.beta);
    }
    println!("as a polynomial: {}", nest.to_poly());
    let phi = phi_nested_closed(Letter::T, 3, 2, 1);
    println!("integral over [0,1]: {phi} (closed form C(5,2)/7!)");
    assert_eq!(phi, nest.to_poly().definite_integral_01());

    // Two candidate weightings for the nest coefficients; only the iterated
    // one integrates to the closed form.
    let conventions = nest_conventions(Letter::T, 3, 2, 1);
    println!("\niterated weights:  {:?}", weights(&conventions.iterated));
    println!("displayed weights: {:?}", weights(&conventions.displayed));
    println!(
        "iterated integral {} vs displayed integral {}",
        conventions.iterated.phi(),
        conventions.displayed.phi()
    );
    assert_eq!(conventions.iterated.phi(), phi);
    assert_ne!(conventions.displayed.phi(), phi);
}

fn weights(f: &FSum) -> Vec<String> {
    f.terms().map(|t| t.coeff.to_string()).collect()
}
