//! The variance kernel and the conditional expectation onto Q\[x\].
//!
//! Two independent evaluators are provided: `expectation_direct` sums nested
//! kernel evaluations over all admissible noncrossing pair partitions, and
//! `expectation_recursive` runs the outer-line recursion with memoization on
//! subwords. They must agree on every word; the test suites check this
//! exhaustively for short words.

use std::collections::HashMap;

use thiserror::Error;

use crate::partition::{admissible_partitions, PairPartition};
use crate::poly::Poly;
use crate::word::{Letter, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("partition covers {partition} indices but the word has length {word}")]
    SizeMismatch { partition: usize, word: usize },
}

/// The variance kernel: κ(T, b T*) = ∫_x^1 b, κ(T*, b T) = ∫_0^x b, and zero
/// when both letters are equal.
pub fn kappa2(s1: Letter, b: &Poly, s2: Letter) -> Poly {
    match (s1, s2) {
        (Letter::T, Letter::TStar) => b.integral_to_one(),
        (Letter::TStar, Letter::T) => b.integral_from_zero(),
        _ => Poly::zero(),
    }
}

/// Evaluates the nested kernel product κ_π over the word's letters.
///
/// Pairs are reduced innermost first; the scalar results of sibling brackets
/// multiply inside the enclosing bracket.
pub fn kappa_nested(p: &PairPartition, w: &Word) -> Result<Poly, EvalError> {
    if p.size() != w.len() {
        return Err(EvalError::SizeMismatch {
            partition: p.size(),
            word: w.len(),
        });
    }
    let partner = p.partner_table();
    // (accumulated product inside the currently open bracket)
    let mut stack: Vec<Poly> = Vec::new();
    let mut top = Poly::one();
    for (i, &open) in partner.iter().enumerate().skip(1) {
        if open > i {
            stack.push(std::mem::replace(&mut top, Poly::one()));
        } else {
            let value = kappa2(w.letter(open - 1), &top, w.letter(i - 1));
            top = stack.pop().expect("noncrossing partition");
            if value.is_zero() {
                return Ok(Poly::zero());
            }
            top = top * value;
        }
    }
    debug_assert!(stack.is_empty());
    Ok(top)
}

/// E(word) as the sum of κ_π over all admissible noncrossing pair partitions.
///
/// Zero for odd length, one for the empty word.
pub fn expectation_direct(w: &Word) -> Poly {
    if w.len() % 2 == 1 {
        return Poly::zero();
    }
    admissible_partitions(w)
        .iter()
        .map(|p| kappa_nested(p, w).expect("partition built for this word"))
        .sum()
}

/// Memo table for the subword recursion. A fresh cache is confined to one
/// computation; reuse it across calls to amortize work on shared subwords.
#[derive(Default)]
pub struct ExpectationCache {
    memo: HashMap<Word, Poly>,
}

impl ExpectationCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// E(word) by the recursion on the pair of the first letter: summing over
    /// the partner position j of letter 1,
    /// E(w) = Σ_j κ(s_1, E(w[2..j-1]) s_j) · E(w[j+1..]).
    pub fn expectation(&mut self, w: &Word) -> Poly {
        if w.is_empty() {
            return Poly::one();
        }
        if w.len() % 2 == 1 {
            return Poly::zero();
        }
        if let Some(hit) = self.memo.get(w) {
            return hit.clone();
        }
        let first = w.letter(0);
        let mut total = Poly::zero();
        for j in (1..w.len()).step_by(2) {
            if w.letter(j) == first {
                continue;
            }
            let between = self.expectation(&w.subword(1..j));
            if between.is_zero() {
                continue;
            }
            let closed = kappa2(first, &between, w.letter(j));
            let rest = self.expectation(&w.subword(j + 1..w.len()));
            if rest.is_zero() {
                continue;
            }
            total += &(closed * rest);
        }
        self.memo.insert(w.clone(), total.clone());
        total
    }
}

/// E(word) by the memoized outer-line recursion; equal to
/// [`expectation_direct`] on every word.
pub fn expectation_recursive(w: &Word) -> Poly {
    ExpectationCache::new().expectation(w)
}

/// The automorphism swapping T and T* (a homomorphism, so the letter order is
/// preserved). On Q\[x\] it acts as the reflection x ↦ 1-x.
pub fn alpha_word(w: &Word) -> Word {
    w.flipped()
}

/// Checks E(α(w)) = α(E(w)) with both sides computed from scratch.
pub fn alpha_check(w: &Word) -> bool {
    expectation_direct(&alpha_word(w)) == expectation_direct(w).reflect()
}
