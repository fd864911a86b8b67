//! Calculus in the basis f_{α,β}(x) = x^α (1-x)^β / (α! β!).
//!
//! The basis is closed under multiplication and under the variance kernel, so
//! nested kernel evaluations of parallel lines reduce to index bookkeeping
//! with exact binomial weights. One application of the kernel acts termwise:
//!
//! - T outside:  f_{α,β} ↦ Σ_{0≤k≤α} f_{α-k, β+k+1}
//! - T* outside: f_{α,β} ↦ Σ_{0≤k≤β} f_{α+k+1, β-k}
//!
//! Iterating this single step is the ground truth for the depth-p nest; see
//! [`nest_conventions`] for the alternative weighting and a way to compare
//! the two.

use std::collections::BTreeMap;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial_rational};
use crate::poly::{Poly, Rational};
use crate::word::Letter;

/// coeff · f_{alpha,beta}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FTerm {
    pub alpha: u32,
    pub beta: u32,
    pub coeff: Rational,
}

impl FTerm {
    pub fn basis(alpha: u32, beta: u32) -> FTerm {
        FTerm {
            alpha,
            beta,
            coeff: Rational::one(),
        }
    }

    pub fn to_poly(&self) -> Poly {
        let norm = factorial_rational(self.alpha as u64) * factorial_rational(self.beta as u64);
        Poly::x()
            .pow(self.alpha)
            .mul(&Poly::one_minus_x().pow(self.beta))
            .scale(&(&self.coeff / norm))
    }
}

impl Mul for &FTerm {
    type Output = FTerm;

    /// Product rule: f_{α,β} f_{α',β'} = C(α+α',α) C(β+β',β) f_{α+α',β+β'}.
    fn mul(self, rhs: &FTerm) -> FTerm {
        let alpha = self.alpha + rhs.alpha;
        let beta = self.beta + rhs.beta;
        let weight =
            binomial(alpha as u64, self.alpha as u64) * binomial(beta as u64, self.beta as u64);
        FTerm {
            alpha,
            beta,
            coeff: &self.coeff * &rhs.coeff * Rational::from_integer(BigInt::from(weight)),
        }
    }
}

/// Finite linear combination of basis terms, keyed by (alpha, beta); zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FSum {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl FSum {
    pub fn new() -> FSum {
        FSum::default()
    }

    pub fn basis(alpha: u32, beta: u32) -> FSum {
        let mut s = FSum::new();
        s.add_term(alpha, beta, Rational::one());
        s
    }

    pub fn add_term(&mut self, alpha: u32, beta: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((alpha, beta))
            .or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(alpha, beta));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = FTerm> + '_ {
        self.terms.iter().map(|(&(alpha, beta), coeff)| FTerm {
            alpha,
            beta,
            coeff: coeff.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Expansion into monomials. Distinct sums may denote equal polynomials;
    /// this conversion is how equality of sums is decided.
    pub fn to_poly(&self) -> Poly {
        self.terms().map(|t| t.to_poly()).sum()
    }

    /// ∫_0^1 of the sum: each basis term contributes coeff/(α+β+1)!.
    pub fn phi(&self) -> Rational {
        self.terms()
            .map(|t| t.coeff / factorial_rational(t.alpha as u64 + t.beta as u64 + 1))
            .sum()
    }
}

/// Converts a sum to its polynomial expansion.
pub fn fsum_to_poly(f: &FSum) -> Poly {
    f.to_poly()
}

fn kernel_step(outside: Letter, f: &FSum) -> FSum {
    let mut out = FSum::new();
    for t in f.terms() {
        match outside {
            Letter::T => {
                for k in 0..=t.alpha {
                    out.add_term(t.alpha - k, t.beta + k + 1, t.coeff.clone());
                }
            }
            Letter::TStar => {
                for k in 0..=t.beta {
                    out.add_term(t.alpha + k + 1, t.beta - k, t.coeff.clone());
                }
            }
        }
    }
    out
}

/// The depth-fold nest κ(s, ... κ(s, f · s*) ... s*) of parallel lines,
/// computed by iterating the kernel step in the basis.
pub fn nested_parallel_kappa(outside: Letter, depth: u32, f: &FSum) -> FSum {
    assert!(depth >= 1, "a nest has at least one line");
    let mut acc = f.clone();
    for _ in 0..depth {
        acc = kernel_step(outside, &acc);
    }
    acc
}

/// Closed form for ∫_0^1 of the depth-p nest of f_{α,β}:
/// C(p+α,α)/(α+β+p+1)! with T outside, C(p+β,β)/(α+β+p+1)! with T* outside.
pub fn phi_nested_closed(outside: Letter, depth: u32, alpha: u32, beta: u32) -> Rational {
    assert!(depth >= 1, "a nest has at least one line");
    let inner = match outside {
        Letter::T => alpha,
        Letter::TStar => beta,
    } as u64;
    let num = Rational::from_integer(BigInt::from(binomial(depth as u64 + inner, inner)));
    num / factorial_rational(alpha as u64 + beta as u64 + depth as u64 + 1)
}

/// The two candidate weightings of the depth-p nest of a single basis term.
///
/// `iterated` applies the kernel step p times (weights C(k+p-1, p-1));
/// `displayed` uses weights C(k+p, p) on the same target terms. Only the
/// iterated sum is consistent with [`phi_nested_closed`]; the diagnostic is
/// exposed so the discrepancy can be inspected rather than assumed away.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NestConventions {
    pub iterated: FSum,
    pub displayed: FSum,
}

pub fn nest_conventions(outside: Letter, depth: u32, alpha: u32, beta: u32) -> NestConventions {
    assert!(depth >= 1, "a nest has at least one line");
    let iterated = nested_parallel_kappa(outside, depth, &FSum::basis(alpha, beta));
    let mut displayed = FSum::new();
    let span = match outside {
        Letter::T => alpha,
        Letter::TStar => beta,
    };
    for k in 0..=span {
        let weight = Rational::from_integer(BigInt::from(binomial(
            k as u64 + depth as u64,
            depth as u64,
        )));
        match outside {
            Letter::T => displayed.add_term(alpha - k, beta + k + depth, weight),
            Letter::TStar => displayed.add_term(alpha + k + depth, beta - k, weight),
        }
    }
    NestConventions {
        iterated,
        displayed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expectation::kappa2;
    use crate::poly::rat;

    #[test]
    fn product_rule_examples() {
        let f10 = FTerm::basis(1, 0);
        let f01 = FTerm::basis(0, 1);
        let prod = &f10 * &f01;
        assert_eq!((prod.alpha, prod.beta), (1, 1));
        assert_eq!(prod.coeff, rat(1, 1));

        let f00 = FTerm::basis(0, 0);
        let other = FTerm {
            alpha: 3,
            beta: 2,
            coeff: rat(5, 7),
        };
        let unit = &f00 * &other;
        assert_eq!(unit, other);
    }

    #[test]
    fn product_rule_matches_polynomial_multiplication() {
        for a1 in 0..4u32 {
            for b1 in 0..4u32 {
                for a2 in 0..4u32 {
                    for b2 in 0..4u32 {
                        let t1 = FTerm::basis(a1, b1);
                        let t2 = FTerm::basis(a2, b2);
                        assert_eq!((&t1 * &t2).to_poly(), t1.to_poly() * t2.to_poly());
                    }
                }
            }
        }
    }

    #[test]
    fn basis_expansion() {
        // f_{1,1} = x(1-x) = x - x^2
        assert_eq!(FSum::basis(1, 1).to_poly(), Poly::x() * Poly::one_minus_x());
    }

    #[test]
    fn single_line_nests() {
        let got = nested_parallel_kappa(Letter::T, 1, &FSum::basis(0, 0));
        assert_eq!(got, FSum::basis(0, 1));

        // ∫_x^1 t dt = (1 - x^2)/2 = f_{1,1} + f_{0,2}
        let got = nested_parallel_kappa(Letter::T, 1, &FSum::basis(1, 0));
        let mut expected = FSum::basis(1, 1);
        expected.add_term(0, 2, rat(1, 1));
        assert_eq!(got, expected);

        let got = nested_parallel_kappa(Letter::TStar, 1, &FSum::basis(0, 0));
        assert_eq!(got, FSum::basis(1, 0));
    }

    #[test]
    fn nest_agrees_with_kernel_iteration_on_polynomials() {
        for outside in [Letter::T, Letter::TStar] {
            let inside = outside.flipped();
            for depth in 1..=4u32 {
                for alpha in 0..=4u32 {
                    for beta in 0..=4u32 {
                        let f = FSum::basis(alpha, beta);
                        let in_basis = nested_parallel_kappa(outside, depth, &f).to_poly();
                        let mut direct = f.to_poly();
                        for _ in 0..depth {
                            direct = kappa2(outside, &direct, inside);
                        }
                        assert_eq!(
                            in_basis, direct,
                            "s={outside:?} p={depth} a={alpha} b={beta}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn closed_phi_examples() {
        assert_eq!(phi_nested_closed(Letter::T, 1, 0, 0), rat(1, 2));
        assert_eq!(phi_nested_closed(Letter::T, 1, 1, 0), rat(1, 3));
        assert_eq!(phi_nested_closed(Letter::TStar, 1, 0, 0), rat(1, 2));
    }

    #[test]
    fn closed_phi_matches_direct_integration() {
        for outside in [Letter::T, Letter::TStar] {
            for depth in 1..=4u32 {
                for alpha in 0..=4u32 {
                    for beta in 0..=4u32 {
                        let nest = nested_parallel_kappa(outside, depth, &FSum::basis(alpha, beta));
                        assert_eq!(
                            phi_nested_closed(outside, depth, alpha, beta),
                            nest.to_poly().definite_integral_01(),
                            "s={outside:?} p={depth} a={alpha} b={beta}"
                        );
                        // The f-sum state shortcut agrees too.
                        assert_eq!(phi_nested_closed(outside, depth, alpha, beta), nest.phi());
                    }
                }
            }
        }
    }

    #[test]
    fn the_two_conventions_differ_and_only_iterated_integrates_correctly() {
        let c = nest_conventions(Letter::T, 2, 2, 1);
        assert_ne!(c.iterated, c.displayed);
        assert_eq!(c.iterated.phi(), phi_nested_closed(Letter::T, 2, 2, 1));
        assert_ne!(c.displayed.phi(), phi_nested_closed(Letter::T, 2, 2, 1));
        // Both weightings land on the same basis terms.
        let targets: Vec<(u32, u32)> = c.iterated.terms().map(|t| (t.alpha, t.beta)).collect();
        let displayed_targets: Vec<(u32, u32)> =
            c.displayed.terms().map(|t| (t.alpha, t.beta)).collect();
        assert_eq!(targets, displayed_targets);
    }
}
