//! Big-integer combinatorics shared by the exact kernels.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::poly::Rational;

/// n! as an arbitrary-precision integer.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// n! as an exact rational.
pub fn factorial_rational(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(factorial(n)))
}

/// Incrementally built factorial table; the identity sums hit the same
/// arguments millions of times.
pub struct Factorials {
    table: Vec<BigUint>,
}

impl Factorials {
    pub fn new() -> Self {
        Factorials {
            table: vec![BigUint::one()],
        }
    }

    pub fn get(&mut self, n: u64) -> &BigUint {
        let n = n as usize;
        while self.table.len() <= n {
            let next = self.table.last().unwrap() * self.table.len();
            self.table.push(next);
        }
        &self.table[n]
    }
}

impl Default for Factorials {
    fn default() -> Self {
        Self::new()
    }
}
