//! The expectations E[(T* T)^n] are normalized Abel polynomials:
//! E[(T* T)^n](x) = x (x + n)^{n-1} / n!, and reflecting them in x = 1/2
//! gives E[(T T*)^n].
//!
//! Run with: cargo run --release --example abel_closed_form

use triop::{abel_expectation, expectation_direct, power_word, Letter, Word};

fn main() {
    for n in 1..=8u32 {
        let word = Word::from_blocks(&[(Letter::TStar, 1), (Letter::T, 1)].repeat(n as usize));
        let closed = abel_expectation(n);
        let summed = expectation_direct(&word);
        assert_eq!(closed, summed);
        println!("n = {n}: E[(T* T)^{n}] = {closed}");

        let reflected = expectation_direct(&power_word(1, n));
        assert_eq!(closed.reflect(), reflected);
    }
    println!("\nclosed form and reflection relation hold exactly for n <= 8");
}
