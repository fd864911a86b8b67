//! Exact and Monte Carlo volumes of the staircase chain polytopes
//! {0 < x_0 < ... < x_{nk}, x_{jk} < j}, plus the cyclic-shift property the
//! volume argument rests on.
//!
//! The exact oracle decomposes the region by how many points land in each
//! unit interval: sorted points inside one unit interval contribute 1/a!, so
//! the volume is a finite sum of reciprocal factorial products over feasible
//! occupancy vectors.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::factorial_rational;
use crate::poly::{Poly, Rational};

/// Occupancy vector (a_0, ..., a_{n-1}): a_l points in the l-th unit cell.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Composition {
    counts: Vec<u32>,
}

impl Composition {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }
}

/// All occupancy vectors of `total` points over `cells` cells whose prefix
/// sums satisfy a_0 + ... + a_{j-1} >= min_prefix(j) for 1 <= j <= cells-1.
fn feasible_compositions(
    total: u32,
    cells: u32,
    min_prefix: impl Fn(u32) -> u32,
) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut counts = Vec::with_capacity(cells as usize);
    fn recurse(
        counts: &mut Vec<u32>,
        placed: u32,
        total: u32,
        cells: u32,
        min_prefix: &impl Fn(u32) -> u32,
        out: &mut Vec<Composition>,
    ) {
        let cell = counts.len() as u32;
        if cell == cells {
            if placed == total {
                out.push(Composition {
                    counts: counts.clone(),
                });
            }
            return;
        }
        if cell + 1 == cells {
            // Last cell takes the remainder.
            counts.push(total - placed);
            recurse(counts, total, total, cells, min_prefix, out);
            counts.pop();
            return;
        }
        let needed = min_prefix(cell + 1).saturating_sub(placed);
        for a in needed..=(total - placed) {
            counts.push(a);
            recurse(counts, placed + a, total, cells, min_prefix, out);
            counts.pop();
        }
    }
    recurse(&mut counts, 0, total, cells, &min_prefix, &mut out);
    out
}

/// Occupancy vectors of the closed polytope: nk+1 points, prefix j needs at
/// least jk+1 of them.
pub fn closed_compositions(k: u32, n: u32) -> Vec<Composition> {
    feasible_compositions(n * k + 1, n, |j| j * k + 1)
}

/// Occupancy vectors of the x-parameterized region: nk points with the first
/// cell (x, 1), prefix j needs at least jk points.
pub fn sliced_compositions(k: u32, n: u32) -> Vec<Composition> {
    feasible_compositions(n * k, n, |j| j * k)
}

/// The exact volume of {0 < x_0 < ... < x_{nk}, x_{jk} < j for j = 1..n}:
/// the sum of ∏_l 1/a_l! over feasible occupancies of nk+1 points.
pub fn volume_exact(k: u32, n: u32) -> Rational {
    assert!(k >= 1 && n >= 1);
    let mut total = Rational::zero();
    for comp in closed_compositions(k, n) {
        let mut term = Rational::one();
        for &a in comp.counts() {
            term /= factorial_rational(a as u64);
        }
        total += term;
    }
    total
}

/// The volume of {x < x_1 < ... < x_{nk}, x_{jk} < j for j = 1..n} as a
/// polynomial in x (valid for x < 1): the first cell contributes
/// (1-x)^{a_0}/a_0!, the others 1/a_l!.
pub fn volume_polynomial(k: u32, n: u32) -> Poly {
    assert!(k >= 1 && n >= 1);
    let mut total = Poly::zero();
    for comp in sliced_compositions(k, n) {
        let counts = comp.counts();
        let mut scale = Rational::one();
        for &a in counts {
            scale /= factorial_rational(a as u64);
        }
        total += &Poly::one_minus_x().pow(counts[0]).scale(&scale);
    }
    total
}

fn volume_scale(k: u32, n: u32) -> Rational {
    // n^{nk+1}/(nk+1)!: the volume of the full sorted simplex in (0, n).
    let nk = n * k;
    Rational::from_integer(BigInt::from(n).pow(nk + 1)) / factorial_rational(nk as u64 + 1)
}

fn sorted_sample(rng: &mut impl Rng, count: usize, upper: f64) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..count).map(|_| rng.random::<f64>() * upper).collect();
    xs.sort_unstable_by(f64::total_cmp);
    xs
}

fn in_polytope(sorted: &[f64], k: u32, n: u32) -> bool {
    (1..=n).all(|j| sorted[(j * k) as usize] < j as f64)
}

const CHUNK: u64 = 4096;

/// Monte Carlo estimate of [`volume_exact`]: the hit fraction of sorted
/// uniform samples from (0, n)^{nk+1}, rescaled by n^{nk+1}/(nk+1)!.
///
/// Deterministic for a fixed seed: sample chunks use independent ChaCha8
/// streams derived from the seed, independent of the worker count.
pub fn volume_montecarlo(k: u32, n: u32, samples: u64, seed: u64) -> (f64, f64) {
    assert!(k >= 1 && n >= 1 && samples >= 1);
    let points = (n * k + 1) as usize;
    let chunks: Vec<(u64, u64)> = (0..samples.div_ceil(CHUNK))
        .map(|c| (c, (samples - c * CHUNK).min(CHUNK)))
        .collect();
    let hits: u64 = chunks
        .par_iter()
        .map(|&(chunk, count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let mut hits = 0u64;
            for _ in 0..count {
                if in_polytope(&sorted_sample(&mut rng, points, n as f64), k, n) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let scale = volume_scale(k, n).to_f64().expect("scale fits in f64");
    let fraction = hits as f64 / samples as f64;
    let stderr = scale * (fraction * (1.0 - fraction) / samples as f64).sqrt();
    (scale * fraction, stderr)
}

/// Checks the cyclic-shift property behind the volume evaluation: for a
/// sorted sample from (0, n), exactly one of the n modular shifts
/// x ↦ (x + m) mod n lands in the polytope. Returns true iff that holds for
/// every sample.
pub fn raney_shift_check(k: u32, n: u32, samples: u64, seed: u64) -> bool {
    assert!(k >= 1 && n >= 1 && samples >= 1);
    let points = (n * k + 1) as usize;
    let chunks: Vec<(u64, u64)> = (0..samples.div_ceil(CHUNK))
        .map(|c| (c, (samples - c * CHUNK).min(CHUNK)))
        .collect();
    chunks.par_iter().all(|&(chunk, count)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let mut shifted = vec![0.0; points];
        for _ in 0..count {
            let xs = sorted_sample(&mut rng, points, n as f64);
            let mut in_count = 0;
            for m in 0..n {
                for (dst, &x) in shifted.iter_mut().zip(&xs) {
                    *dst = (x + m as f64) % n as f64;
                }
                shifted.sort_unstable_by(f64::total_cmp);
                if in_polytope(&shifted, k, n) {
                    in_count += 1;
                }
            }
            if in_count != 1 {
                return false;
            }
        }
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    #[test]
    fn exact_volume_examples() {
        assert_eq!(volume_exact(1, 1), rat(1, 2));
        assert_eq!(volume_exact(1, 2), rat(2, 3));
        assert_eq!(volume_exact(2, 2), rat(2, 15));
    }

    #[test]
    fn composition_listing_for_k1_n2() {
        let comps = closed_compositions(1, 2);
        let counts: Vec<&[u32]> = comps.iter().map(|c| c.counts()).collect();
        assert_eq!(counts.len(), 2);
        assert!(counts.contains(&&[2, 1][..]));
        assert!(counts.contains(&&[3, 0][..]));
    }

    #[test]
    fn volume_polynomial_examples() {
        assert_eq!(volume_polynomial(1, 1), Poly::one_minus_x());
        let expected = Poly::one_minus_x() + Poly::one_minus_x().pow(2).scale(&rat(1, 2));
        assert_eq!(volume_polynomial(1, 2), expected);
        assert_eq!(volume_polynomial(1, 2).evaluate(&rat(1, 2)), rat(5, 8));
    }

    #[test]
    fn scaled_volume_matches_the_simplex_count() {
        // n * vol = n^{nk+1}/(nk+1)!
        for (k, n) in [(1u32, 1u32), (1, 4), (2, 3), (3, 2), (5, 2), (2, 5)] {
            let lhs = volume_exact(k, n) * rat_int(n as i64);
            assert_eq!(lhs, volume_scale(k, n), "k={k} n={n}");
        }
    }

    #[test]
    fn montecarlo_within_three_stderr_on_known_volumes() {
        let cases = [(1u32, 1u32, 0.5), (1, 2, 2.0 / 3.0), (2, 2, 2.0 / 15.0)];
        for (k, n, exact) in cases {
            let (est, err) = volume_montecarlo(k, n, 100_000, 20260808);
            assert!(
                (est - exact).abs() <= 3.0 * err + 1e-12,
                "k={k} n={n}: {est} vs {exact} (stderr {err})"
            );
        }
    }

    #[test]
    fn montecarlo_is_deterministic_per_seed() {
        let a = volume_montecarlo(2, 2, 20_000, 7);
        let b = volume_montecarlo(2, 2, 20_000, 7);
        assert_eq!(a, b);
        let c = volume_montecarlo(2, 2, 20_000, 8);
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn raney_shift_holds_on_sampled_points() {
        assert!(raney_shift_check(1, 2, 10_000, 11));
        assert!(raney_shift_check(2, 3, 10_000, 12));
        // n = 1: only the trivial shift, always inside.
        assert!(raney_shift_check(3, 1, 1_000, 13));
    }
}
