//! Monte Carlo *-moments of upper-triangular Gaussian random matrices.
//!
//! Draws T_N with independent centered complex Gaussian entries above the
//! diagonal (E|t_ij|^2 = 1/N) and estimates (1/N) E Tr of a word in T_N and
//! its adjoint. The estimator uses the real part of the normalized trace;
//! the limits being estimated are real and the imaginary part is mean zero.
//!
//! Within one sample every requested word shares the same matrix draw and a
//! cache of partial products, so a batch of words costs little more than the
//! most expensive one.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use thiserror::Error;

use crate::word::{Letter, Word};

/// Entry distribution of the ensemble. Complex Gaussian means independent
/// real and imaginary parts, each of variance 1/(2N).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EntryModel {
    ComplexGaussian,
}

#[derive(Clone, Debug)]
pub struct MatrixEnsembleConfig {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub entry_model: EntryModel,
}

impl MatrixEnsembleConfig {
    pub fn new(dim: usize, samples: usize, seed: u64) -> Self {
        MatrixEnsembleConfig {
            dim,
            samples,
            seed,
            entry_model: EntryModel::ComplexGaussian,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct MomentEstimate {
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RandmatError {
    #[error("matrix dimension must be at least 1")]
    ZeroDim,
    #[error("sample count must be at least 1")]
    ZeroSamples,
}

/// Dense complex matrix in split re/im layout (row major).
struct Mat {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Mat {
    fn zeros(n: usize) -> Mat {
        Mat {
            n,
            re: vec![0.0; n * n],
            im: vec![0.0; n * n],
        }
    }

    fn mul(&self, rhs: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            let row = i * n;
            for k in 0..n {
                let are = self.re[row + k];
                let aim = self.im[row + k];
                if are == 0.0 && aim == 0.0 {
                    continue;
                }
                let bre = &rhs.re[k * n..k * n + n];
                let bim = &rhs.im[k * n..k * n + n];
                let cre = &mut out.re[row..row + n];
                let cim = &mut out.im[row..row + n];
                for j in 0..n {
                    cre[j] += are * bre[j] - aim * bim[j];
                    cim[j] += are * bim[j] + aim * bre[j];
                }
            }
        }
        out
    }

    /// Re Tr(self · rhs) without forming the product.
    fn trace_re_with(&self, rhs: &Mat) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let a = i * n + j;
                let b = j * n + i;
                acc += self.re[a] * rhs.re[b] - self.im[a] * rhs.im[b];
            }
        }
        acc
    }

    fn trace_re(&self) -> f64 {
        (0..self.n).map(|i| self.re[i * self.n + i]).sum()
    }

    fn adjoint(&self) -> Mat {
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.re[j * n + i] = self.re[i * n + j];
                out.im[j * n + i] = -self.im[i * n + j];
            }
        }
        out
    }
}

fn draw_triangular(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let sigma = 1.0 / (2.0 * n as f64).sqrt();
    let mut t = Mat::zeros(n);
    for i in 0..n {
        for j in i..n {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            t.re[i * n + j] = re * sigma;
            t.im[i * n + j] = im * sigma;
        }
    }
    t
}

/// Left-associated products of letter prefixes, cached per sample so that
/// all words of a batch share them.
struct ProductCache {
    products: HashMap<Vec<Letter>, Mat>,
}

impl ProductCache {
    fn new(t: Mat, tstar: Mat) -> ProductCache {
        let mut products = HashMap::new();
        products.insert(vec![Letter::T], t);
        products.insert(vec![Letter::TStar], tstar);
        ProductCache { products }
    }

    fn product(&mut self, letters: &[Letter]) -> &Mat {
        for end in 2..=letters.len() {
            let key = &letters[..end];
            if !self.products.contains_key(key) {
                let prefix = &self.products[&letters[..end - 1]];
                let last = &self.products[&letters[end - 1..end]];
                let prod = prefix.mul(last);
                self.products.insert(key.to_vec(), prod);
            }
        }
        &self.products[letters]
    }

    /// Re (1/N) Tr of the word product, splitting the word in half so that
    /// only products up to half the word length are ever formed.
    fn normalized_trace(&mut self, w: &Word, n: usize) -> f64 {
        if w.is_empty() {
            return 1.0;
        }
        let mid = w.len().div_ceil(2);
        let left = w.letters()[..mid].to_vec();
        let right = w.letters()[mid..].to_vec();
        self.product(&left);
        let tr = if right.is_empty() {
            self.products[&left].trace_re()
        } else {
            self.product(&right);
            self.products[&left].trace_re_with(&self.products[&right])
        };
        tr / n as f64
    }
}

const CHUNK: usize = 8;

/// Monte Carlo mean and standard error of Re (1/N) Tr over independent
/// draws, for each word of the batch on shared samples. Deterministic for a
/// fixed seed regardless of worker count.
pub fn sample_moments(
    words: &[Word],
    cfg: &MatrixEnsembleConfig,
) -> Result<Vec<MomentEstimate>, RandmatError> {
    if cfg.dim < 1 {
        return Err(RandmatError::ZeroDim);
    }
    if cfg.samples < 1 {
        return Err(RandmatError::ZeroSamples);
    }
    let EntryModel::ComplexGaussian = cfg.entry_model;
    let chunks: Vec<(usize, usize)> = (0..cfg.samples.div_ceil(CHUNK))
        .map(|c| (c, (cfg.samples - c * CHUNK).min(CHUNK)))
        .collect();
    let (sum, sumsq) = chunks
        .par_iter()
        .map(|&(chunk, count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(chunk as u64);
            let mut sum = vec![0.0; words.len()];
            let mut sumsq = vec![0.0; words.len()];
            for _ in 0..count {
                let t = draw_triangular(&mut rng, cfg.dim);
                let tstar = t.adjoint();
                let mut cache = ProductCache::new(t, tstar);
                for (w, (s, sq)) in words.iter().zip(sum.iter_mut().zip(sumsq.iter_mut())) {
                    let v = cache.normalized_trace(w, cfg.dim);
                    *s += v;
                    *sq += v * v;
                }
            }
            (sum, sumsq)
        })
        .reduce(
            || (vec![0.0; words.len()], vec![0.0; words.len()]),
            |(mut s1, mut q1), (s2, q2)| {
                for (a, b) in s1.iter_mut().zip(&s2) {
                    *a += b;
                }
                for (a, b) in q1.iter_mut().zip(&q2) {
                    *a += b;
                }
                (s1, q1)
            },
        );
    let n = cfg.samples as f64;
    Ok(sum
        .into_iter()
        .zip(sumsq)
        .map(|(s, sq)| {
            let mean = s / n;
            let stderr = if cfg.samples > 1 {
                let var = ((sq - s * s / n) / (n - 1.0)).max(0.0);
                (var / n).sqrt()
            } else {
                f64::INFINITY
            };
            MomentEstimate { mean, stderr }
        })
        .collect())
}

/// Single-word convenience wrapper over [`sample_moments`].
pub fn sample_moment(w: &Word, cfg: &MatrixEnsembleConfig) -> Result<MomentEstimate, RandmatError> {
    Ok(sample_moments(std::slice::from_ref(w), cfg)?
        .pop()
        .expect("one estimate per word"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::phi_word;
    use num_traits::ToPrimitive;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_degenerate_configs() {
        let w = word("T T*");
        assert_eq!(
            sample_moment(&w, &MatrixEnsembleConfig::new(0, 10, 1)),
            Err(RandmatError::ZeroDim)
        );
        assert_eq!(
            sample_moment(&w, &MatrixEnsembleConfig::new(10, 0, 1)),
            Err(RandmatError::ZeroSamples)
        );
    }

    #[test]
    fn deterministic_for_a_fixed_seed() {
        let cfg = MatrixEnsembleConfig::new(40, 30, 99);
        let w = word("T T* T T*");
        let a = sample_moment(&w, &cfg).unwrap();
        let b = sample_moment(&w, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn short_product_mean_matches_the_finite_n_value() {
        // E Re (1/N) Tr T T* = (N+1)/(2N) at any N.
        let n = 150;
        let cfg = MatrixEnsembleConfig::new(n, 200, 7);
        let est = sample_moment(&word("T T*"), &cfg).unwrap();
        let exact = (n as f64 + 1.0) / (2.0 * n as f64);
        assert!(
            (est.mean - exact).abs() <= 4.0 * est.stderr,
            "mean {} vs {exact} (stderr {})",
            est.mean,
            est.stderr
        );
    }

    #[test]
    fn unbalanced_and_odd_words_estimate_zero() {
        let cfg = MatrixEnsembleConfig::new(80, 120, 3);
        for w in [word("T T"), word("T* T* T*"), word("T T T*")] {
            let est = sample_moment(&w, &cfg).unwrap();
            assert!(
                est.mean.abs() <= 4.0 * est.stderr,
                "word {w}: mean {} stderr {}",
                est.mean,
                est.stderr
            );
        }
    }

    #[test]
    fn batch_estimates_approach_the_exact_moments() {
        let words = [word("T T*"), word("T T* T T*"), word("T T T* T*")];
        let cfg = MatrixEnsembleConfig::new(120, 150, 2026);
        let estimates = sample_moments(&words, &cfg).unwrap();
        for (w, est) in words.iter().zip(&estimates) {
            let exact = phi_word(w).to_f64().expect("small rational");
            assert!(
                (est.mean - exact).abs() <= 4.0 * est.stderr + 0.05,
                "word {w}: mean {} vs {exact} (stderr {})",
                est.mean,
                est.stderr
            );
        }
    }

    #[test]
    fn batch_and_single_word_sampling_agree() {
        let words = [word("T T*"), word("T* T")];
        let cfg = MatrixEnsembleConfig::new(30, 40, 5);
        let batch = sample_moments(&words, &cfg).unwrap();
        for (w, b) in words.iter().zip(&batch) {
            assert_eq!(sample_moment(w, &cfg).unwrap(), *b);
        }
    }
}
