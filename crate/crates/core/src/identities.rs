//! Multinomial identities equivalent to the closed moment formula, evaluated
//! with exact big integers, and the per-partition decomposition that shows
//! where each identity comes from.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::expectation::kappa_nested;
use crate::moments::{phi_word, power_word};
use crate::partition::{admissible_partitions, PairPartition};
use crate::poly::Rational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("parts sum to {got}, expected {top}")]
    PartsSumMismatch { top: u64, got: u64 },
    #[error("nk = {nk} exceeds the enumeration bound {bound}")]
    EnumerationBound { nk: u32, bound: u32 },
}

/// top! / (parts_0! parts_1! ...), rejecting parts that do not sum to top.
pub fn multinomial(top: u64, parts: &[u64]) -> Result<BigUint, IdentityError> {
    let got: u64 = parts.iter().sum();
    if got != top {
        return Err(IdentityError::PartsSumMismatch { top, got });
    }
    let table = fact_table(top);
    Ok(multinomial_t(&table, top, parts))
}

fn fact_table(max: u64) -> Vec<BigUint> {
    let mut table = Vec::with_capacity(max as usize + 1);
    table.push(BigUint::one());
    for i in 1..=max {
        let next = table.last().unwrap() * i;
        table.push(next);
    }
    table
}

fn multinomial_t(table: &[BigUint], top: u64, parts: &[u64]) -> BigUint {
    debug_assert_eq!(parts.iter().sum::<u64>(), top);
    let mut acc = table[top as usize].clone();
    for &p in parts {
        acc /= &table[p as usize];
    }
    acc
}

/// n^{nk}, the left-hand side shared by every identity in the family.
pub fn identity_lhs(n: u32, k: u32) -> BigUint {
    BigUint::from(n).pow(n * k)
}

/// Literal evaluation of the displayed right-hand side for n = 2, 3, 4.
/// None for other n (no displayed formula; see [`identity_from_moments`]).
pub fn identity_rhs(n: u32, k: u32) -> Option<BigUint> {
    assert!(k >= 1);
    match n {
        2 => Some(rhs_n2(k as u64)),
        3 => Some(rhs_n3(k as u64)),
        4 => Some(rhs_n4(k as u64)),
        _ => None,
    }
}

fn rhs_n2(k: u64) -> BigUint {
    let table = fact_table(2 * k);
    let mut total = BigUint::zero();
    for p in 0..=k {
        let q = k - p;
        total += multinomial_t(&table, 2 * p, &[p, p]) * multinomial_t(&table, 2 * q, &[q, q]);
    }
    total
}

fn rhs_n3(k: u64) -> BigUint {
    let table = fact_table(3 * k + 2);
    let mut total = BigUint::zero();
    for p in 0..=k {
        let q = k - p;
        total +=
            multinomial_t(&table, 3 * p, &[p, p, p]) * multinomial_t(&table, 3 * q, &[q, q, q]);
    }
    if k == 0 {
        return total;
    }
    // Secondary sum over p + q + r = k - 1 with the coupled primed splits
    // r' + q' = r + q + 1 and p'' + r'' = p + r + 1.
    let secondary: BigUint = (0..=k - 1)
        .into_par_iter()
        .map(|p| {
            let mut sum = BigUint::zero();
            for q in 0..=k - 1 - p {
                let r = k - 1 - p - q;
                for q1 in 0..=r + q + 1 {
                    let r1 = r + q + 1 - q1;
                    for p2 in 0..=p + r + 1 {
                        let r2 = p + r + 1 - p2;
                        sum += multinomial_t(&table, 2 * p + p2, &[p, p, p2])
                            * multinomial_t(&table, 2 * q + q1, &[q, q, q1])
                            * multinomial_t(&table, r + r1 + r2, &[r, r1, r2]);
                    }
                }
            }
            sum
        })
        .reduce(BigUint::zero, |a, b| a + b);
    total + secondary * BigUint::from(3u32)
}

fn rhs_n4(k: u64) -> BigUint {
    let table = fact_table(8 * k + 8);
    let mut total = BigUint::zero();
    for p in 0..=k {
        let q = k - p;
        total += multinomial_t(&table, 4 * p, &[p, p, p, p])
            * multinomial_t(&table, 4 * q, &[q, q, q, q]);
    }
    if k == 0 {
        return total;
    }

    // Weight 8: p + q + r = k - 1, with p' + q' = p'' + q'' = p + q + 1 and
    // q''' + r''' = q + r + 1.
    let sum_b: BigUint = (0..=k - 1)
        .into_par_iter()
        .map(|p| {
            let mut sum = BigUint::zero();
            for q in 0..=k - 1 - p {
                let r = k - 1 - p - q;
                for p1 in 0..=p + q + 1 {
                    let q1 = p + q + 1 - p1;
                    for p2 in 0..=p + q + 1 {
                        let q2 = p + q + 1 - p2;
                        for q3 in 0..=q + r + 1 {
                            let r3 = q + r + 1 - q3;
                            sum += multinomial_t(&table, 2 * p + p1 + p2, &[p, p, p1, p2])
                                * multinomial_t(&table, q + q1 + q2 + q3, &[q, q1, q2, q3])
                                * multinomial_t(&table, 3 * r + r3, &[r, r, r, r3]);
                        }
                    }
                }
            }
            sum
        })
        .reduce(BigUint::zero, |a, b| a + b);

    // Weight 4: two coupled rows p + q' + r' = k - 1 and p + q'' + r'' = k - 1
    // share p; then p''' + q''' = p + q' + 1 and p'''' + q'''' = p + q'' + 1.
    let sum_c: BigUint = (0..=k - 1)
        .into_par_iter()
        .map(|p| {
            let mut sum = BigUint::zero();
            for q1 in 0..=k - 1 - p {
                let r1 = k - 1 - p - q1;
                for q2 in 0..=k - 1 - p {
                    let r2 = k - 1 - p - q2;
                    for p3 in 0..=p + q1 + 1 {
                        let q3 = p + q1 + 1 - p3;
                        for p4 in 0..=p + q2 + 1 {
                            let q4 = p + q2 + 1 - p4;
                            sum += multinomial_t(&table, 2 * p + p3 + p4, &[p, p, p3, p4])
                                * multinomial_t(&table, q1 + q3, &[q1, q3])
                                * multinomial_t(&table, q2 + q4, &[q2, q4])
                                * multinomial_t(&table, 2 * r2, &[r2, r2])
                                * multinomial_t(&table, 2 * r1, &[r1, r1])
                                * multinomial_t(
                                    &table,
                                    q1 + q2 + q3 + q4 + 2 * r1 + 2 * r2 + 2,
                                    &[q1 + q3 + 2 * r1 + 1, q2 + q4 + 2 * r2 + 1],
                                );
                        }
                    }
                }
            }
            sum
        })
        .reduce(BigUint::zero, |a, b| a + b);

    // Weight 8: p + q + r + s = k - 2, with q' + r' = q + r + s + 2 and
    // p'' + r'' = p + q + r + 2.
    let sum_d: BigUint = if k < 2 {
        BigUint::zero()
    } else {
        (0..=k - 2)
            .into_par_iter()
            .map(|p| {
                let mut sum = BigUint::zero();
                for q in 0..=k - 2 - p {
                    for r in 0..=k - 2 - p - q {
                        let s = k - 2 - p - q - r;
                        for q1 in 0..=q + r + s + 2 {
                            let r1 = q + r + s + 2 - q1;
                            for p2 in 0..=p + q + r + 2 {
                                let r2 = p + q + r + 2 - p2;
                                sum += multinomial_t(&table, 2 * p, &[p, p])
                                    * multinomial_t(&table, q + q1, &[q, q1])
                                    * multinomial_t(&table, r + r2, &[r, r2])
                                    * multinomial_t(&table, 2 * s, &[s, s])
                                    * multinomial_t(
                                        &table,
                                        3 * p + p2 + 2 * q + q1 + 2,
                                        &[2 * p + q + q1 + 1, p + q + 1, p2],
                                    )
                                    * multinomial_t(
                                        &table,
                                        2 * r + r1 + r2 + 3 * s + 2,
                                        &[r + r2 + 2 * s + 1, r + s + 1, r1],
                                    );
                            }
                        }
                    }
                }
                sum
            })
            .reduce(BigUint::zero, |a, b| a + b)
    };

    total + sum_b * BigUint::from(8u32) + sum_c * BigUint::from(4u32) + sum_d * BigUint::from(8u32)
}

/// The bridge identity for arbitrary n: returns
/// (n^{nk}, (nk+1)! · φ[(T^k T*^k)^n]) with the right side computed through
/// the full partition pipeline. Equality of the two components is the generic
/// identity check, including n >= 5 where no displayed formula exists.
pub fn identity_from_moments(
    n: u32,
    k: u32,
    max_nk: u32,
) -> Result<(BigUint, BigUint), IdentityError> {
    assert!(k >= 1 && n >= 1);
    let nk = n * k;
    if nk > max_nk {
        return Err(IdentityError::EnumerationBound { nk, bound: max_nk });
    }
    let phi = phi_word(&power_word(k, n));
    let scaled =
        phi * Rational::from_integer(BigInt::from(fact_table(nk as u64 + 1).pop().unwrap()));
    debug_assert!(scaled.is_integer());
    let rhs = scaled
        .to_integer()
        .to_biguint()
        .expect("moments of the family are nonnegative");
    Ok((identity_lhs(n, k), rhs))
}

/// One scalar term per admissible partition of (T^k T*^k)^n: the pair
/// (π, φ(κ_π)). The terms sum to φ of the word.
pub fn partition_terms(n: u32, k: u32) -> Vec<(PairPartition, Rational)> {
    let w = power_word(k, n);
    admissible_partitions(&w)
        .into_iter()
        .map(|p| {
            let value = kappa_nested(&p, &w)
                .expect("partition built for this word")
                .definite_integral_01();
            (p, value)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), BigUint::from(2u32));
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), BigUint::from(6u32));
        assert_eq!(multinomial(6, &[2, 2, 2]).unwrap(), BigUint::from(90u32));
        assert!(matches!(
            multinomial(5, &[2, 2]),
            Err(IdentityError::PartsSumMismatch { top: 5, got: 4 })
        ));
    }

    #[test]
    fn displayed_rhs_examples() {
        assert_eq!(identity_rhs(2, 1).unwrap(), BigUint::from(4u32));
        assert_eq!(identity_rhs(3, 1).unwrap(), BigUint::from(27u32));
        assert_eq!(identity_rhs(2, 2).unwrap(), BigUint::from(16u32));
        assert_eq!(identity_rhs(4, 1).unwrap(), BigUint::from(256u32));
        assert_eq!(identity_rhs(5, 1), None);
    }

    #[test]
    fn lhs_examples() {
        assert_eq!(identity_lhs(2, 1), BigUint::from(4u32));
        assert_eq!(identity_lhs(3, 1), BigUint::from(27u32));
        assert_eq!(identity_lhs(4, 1), BigUint::from(256u32));
    }

    #[test]
    fn moment_bridge_examples() {
        let (lhs, rhs) = identity_from_moments(2, 2, 8).unwrap();
        assert_eq!(lhs, BigUint::from(16u32));
        assert_eq!(rhs, BigUint::from(16u32));

        let (lhs, rhs) = identity_from_moments(3, 1, 8).unwrap();
        assert_eq!(lhs, BigUint::from(27u32));
        assert_eq!(rhs, BigUint::from(27u32));

        let (lhs, rhs) = identity_from_moments(5, 1, 8).unwrap();
        assert_eq!(lhs, BigUint::from(3125u32));
        assert_eq!(rhs, BigUint::from(3125u32));

        assert!(matches!(
            identity_from_moments(5, 2, 8),
            Err(IdentityError::EnumerationBound { nk: 10, bound: 8 })
        ));
    }

    #[test]
    fn partition_terms_examples() {
        let terms = partition_terms(1, 1);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].1, rat(1, 2));

        let terms = partition_terms(2, 1);
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().all(|(_, v)| *v == rat(1, 3)));
        let total: Rational = terms.into_iter().map(|(_, v)| v).sum();
        assert_eq!(total, rat(2, 3));
    }

    #[test]
    fn partition_terms_sum_to_phi() {
        for (n, k) in [(1u32, 2u32), (2, 2), (3, 1), (4, 1), (2, 3)] {
            let total: Rational = partition_terms(n, k).into_iter().map(|(_, v)| v).sum();
            assert_eq!(total, phi_word(&power_word(k, n)), "n={n} k={k}");
        }
    }

    #[test]
    fn alternating_word_terms_count_matches_the_shape_families() {
        // For n = 3 the admissible partitions fall into one two-parameter
        // family (p + q = k) and three three-parameter families
        // (p + q + r = k - 1).
        for k in 1..=3u32 {
            let tuples2 = (0..=k).count();
            let tuples3 = (0..=k - 1)
                .flat_map(|p| (0..=k - 1 - p).map(move |_| p))
                .count();
            let expected = tuples2 + 3 * tuples3;
            assert_eq!(
                partition_terms(3, k).len(),
                expected,
                "k = {k}: families give {tuples2} + 3*{tuples3}"
            );
        }
    }
}
