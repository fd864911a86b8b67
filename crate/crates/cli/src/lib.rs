//! Report types and command runners behind the `triop` binary.
//!
//! Every command produces a serializable report plus a pass flag; the binary
//! renders the report (text or JSON) and maps the outcome to the exit-code
//! contract: 0 all checks pass, 1 mathematical mismatch, 2 usage error.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use triop::{
    admissible_partitions, enumerate_nc2, expectation_direct, expectation_recursive,
    expectation_via_integration, identity_from_moments, identity_lhs, identity_rhs, kappa_nested,
    main_formula, partition_terms, power_word, raney_shift_check, sample_moment, volume_exact,
    volume_montecarlo, ExpectationCache, MatrixEnsembleConfig, Poly, Word, WordParseError,
};

pub const DEFAULT_MAX_NK: u32 = 8;
const RNG_ID: &str = "chacha8-streams";

#[derive(Error, Debug)]
pub enum UsageError {
    #[error("{0}")]
    WordParse(#[from] WordParseError),
    #[error("either --word or both --k and --n must be given")]
    MissingInput,
    #[error("--word and --k/--n are mutually exclusive")]
    ConflictingInput,
    #[error("nk = {nk} exceeds the enumeration bound {bound}; raise it with --max-nk")]
    Bound { nk: u32, bound: u32 },
    #[error("method `{0}` does not apply to this command")]
    BadMethod(String),
    #[error("the integration method needs a power word; pass --k and --n")]
    IntegrationNeedsPowers,
    #[error("--dump-terms needs nk <= the enumeration bound (got nk = {nk}, bound {bound})")]
    DumpBound { nk: u32, bound: u32 },
    #[error("the --k/--n filters leave no (k, n) cases under nk <= {0}")]
    EmptyGrid(u32),
}

/// Accepts the plain word grammar plus the power shorthand `(T^k T*^k)^n`.
/// Returns the word and, when the shorthand was used, the (k, n) pair.
pub fn parse_word_argument(s: &str) -> Result<(Word, Option<(u32, u32)>), UsageError> {
    if let Some((k, n)) = parse_power_shorthand(s) {
        return Ok((power_word(k, n), Some((k, n))));
    }
    Ok((s.parse::<Word>()?, None))
}

fn parse_power_shorthand(s: &str) -> Option<(u32, u32)> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = compact.strip_prefix("(T^")?;
    let (k1, rest) = split_number(rest)?;
    let rest = rest.strip_prefix("T*^")?;
    let (k2, rest) = split_number(rest)?;
    let rest = rest.strip_prefix(")^")?;
    let (n, rest) = split_number(rest)?;
    if !rest.is_empty() || k1 != k2 || k1 == 0 || n == 0 {
        return None;
    }
    Some((k1, n))
}

fn split_number(s: &str) -> Option<(u32, &str)> {
    let digits = s.len() - s.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 {
        return None;
    }
    Some((s[..digits].parse().ok()?, &s[digits..]))
}

fn check_bound(nk: u32, bound: u32) -> Result<(), UsageError> {
    if nk > bound {
        return Err(UsageError::Bound { nk, bound });
    }
    Ok(())
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct MomentReport {
    pub word: String,
    pub expectation: String,
    pub expectation_coeffs: Vec<String>,
    pub phi: String,
    pub methods: Vec<String>,
    pub cross_check: bool,
}

/// E and φ of a word, by the requested method or by every applicable one.
pub fn run_moment(
    word: Option<&str>,
    k: Option<u32>,
    n: Option<u32>,
    method: Option<&str>,
    max_nk: u32,
) -> Result<(MomentReport, bool), UsageError> {
    let (w, powers) = match (word, k, n) {
        (Some(s), None, None) => parse_word_argument(s)?,
        (None, Some(k), Some(n)) => {
            check_bound(k * n, max_nk)?;
            (power_word(k, n), Some((k, n)))
        }
        (None, _, _) => return Err(UsageError::MissingInput),
        (Some(_), _, _) => return Err(UsageError::ConflictingInput),
    };
    if let Some((k, n)) = powers {
        check_bound(k * n, max_nk)?;
    }

    let mut values: Vec<(String, Poly)> = Vec::new();
    let compute = |name: &str| -> Result<Poly, UsageError> {
        match name {
            "direct" => Ok(expectation_direct(&w)),
            "recursive" => Ok(expectation_recursive(&w)),
            "integration" => {
                let (k, n) = powers.ok_or(UsageError::IntegrationNeedsPowers)?;
                Ok(expectation_via_integration(k, n))
            }
            other => Err(UsageError::BadMethod(other.to_string())),
        }
    };
    match method {
        Some(name) => values.push((name.to_string(), compute(name)?)),
        None => {
            values.push(("direct".into(), compute("direct")?));
            values.push(("recursive".into(), compute("recursive")?));
            if powers.is_some() {
                values.push(("integration".into(), compute("integration")?));
            }
        }
    }
    let reference = values[0].1.clone();
    let cross_check = values.iter().all(|(_, p)| *p == reference);
    let report = MomentReport {
        word: w.to_string(),
        expectation: reference.to_string(),
        expectation_coeffs: reference.coeff_strings(),
        phi: reference.definite_integral_01().to_string(),
        methods: values.into_iter().map(|(name, _)| name).collect(),
        cross_check,
    };
    Ok((report, cross_check))
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct VerifyCase {
    pub k: u32,
    pub n: u32,
    pub expected: String,
    pub phi: String,
    pub methods_agree: bool,
    pub pass: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct VerifyReport {
    pub max_nk: u32,
    pub cases: Vec<VerifyCase>,
    pub all_pass: bool,
}

/// The moment-formula grid: for every (k, n) with nk <= max_nk (optionally
/// filtered), φ by four routes against n^{nk}/(nk+1)!.
pub fn run_verify(
    max_nk: u32,
    only_k: Option<u32>,
    only_n: Option<u32>,
) -> Result<(VerifyReport, bool), UsageError> {
    let mut grid = Vec::new();
    for k in 1..=max_nk {
        for n in 1..=max_nk / k {
            if only_k.is_some_and(|v| v != k) || only_n.is_some_and(|v| v != n) {
                continue;
            }
            grid.push((k, n));
        }
    }
    if grid.is_empty() {
        return Err(UsageError::EmptyGrid(max_nk));
    }
    let cases: Vec<VerifyCase> = grid
        .par_iter()
        .map(|&(k, n)| {
            let expected = main_formula(k, n);
            let direct = expectation_direct(&power_word(k, n));
            let phi = direct.definite_integral_01();
            let methods_agree = direct == expectation_recursive(&power_word(k, n))
                && direct == expectation_via_integration(k, n)
                && volume_exact(k, n) == phi;
            VerifyCase {
                k,
                n,
                expected: expected.to_string(),
                phi: phi.to_string(),
                methods_agree,
                pass: methods_agree && phi == expected,
            }
        })
        .collect();
    let all_pass = cases.iter().all(|c| c.pass);
    Ok((
        VerifyReport {
            max_nk,
            cases,
            all_pass,
        },
        all_pass,
    ))
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct IdentityTerm {
    pub partition: String,
    pub value: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct IdentityReport {
    pub n: u32,
    pub k: u32,
    pub method: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<IdentityTerm>>,
}

/// One multinomial identity: the displayed sum for n = 2, 3, 4, the moment
/// bridge otherwise. `dump_terms` adds the per-partition decomposition.
pub fn run_identity(
    n: u32,
    k: u32,
    max_nk: u32,
    dump_terms: bool,
) -> Result<(IdentityReport, bool), UsageError> {
    let lhs = identity_lhs(n, k);
    let (method, rhs) = match identity_rhs(n, k) {
        Some(rhs) => ("displayed-sum".to_string(), rhs),
        None => {
            let (_, rhs) = identity_from_moments(n, k, max_nk).map_err(|_| UsageError::Bound {
                nk: n * k,
                bound: max_nk,
            })?;
            ("moment-bridge".to_string(), rhs)
        }
    };
    let (term_count, terms) = if dump_terms {
        if n * k > max_nk {
            return Err(UsageError::DumpBound {
                nk: n * k,
                bound: max_nk,
            });
        }
        let decomposition = partition_terms(n, k);
        let rendered = decomposition
            .iter()
            .map(|(p, v)| IdentityTerm {
                partition: p.to_string(),
                value: v.to_string(),
            })
            .collect();
        (Some(decomposition.len()), Some(rendered))
    } else {
        (None, None)
    };
    let equal = lhs == rhs;
    let report = IdentityReport {
        n,
        k,
        method,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        equal,
        term_count,
        terms,
    };
    Ok((report, equal))
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct VolumeReport {
    pub k: u32,
    pub n: u32,
    pub method: String,
    pub expected: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift_check: Option<bool>,
    pub pass: bool,
}

/// Chain-polytope volume by the exact occupancy sum or by Monte Carlo,
/// checked against the closed moment formula.
pub fn run_volume(
    k: u32,
    n: u32,
    method: &str,
    samples: u64,
    seed: u64,
    max_nk: u32,
    check_shift: bool,
) -> Result<(VolumeReport, bool), UsageError> {
    check_bound(k * n, max_nk)?;
    let expected = main_formula(k, n);
    let mut report = VolumeReport {
        k,
        n,
        method: method.to_string(),
        expected: expected.to_string(),
        value: None,
        estimate: None,
        stderr: None,
        samples: None,
        seed: None,
        rng: None,
        shift_check: None,
        pass: false,
    };
    match method {
        "composition" => {
            let value = volume_exact(k, n);
            report.pass = value == expected;
            report.value = Some(value.to_string());
        }
        "montecarlo" => {
            let (estimate, stderr) = volume_montecarlo(k, n, samples, seed);
            let exact = expected.to_f64().expect("moment fits in f64");
            report.pass = (estimate - exact).abs() <= 4.0 * stderr + 1e-12;
            report.estimate = Some(estimate);
            report.stderr = Some(stderr);
            report.samples = Some(samples);
            report.seed = Some(seed);
            report.rng = Some(RNG_ID.to_string());
        }
        other => return Err(UsageError::BadMethod(other.to_string())),
    }
    if check_shift {
        let ok = raney_shift_check(k, n, samples, seed);
        report.shift_check = Some(ok);
        report.pass = report.pass && ok;
    }
    let pass = report.pass;
    Ok((report, pass))
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct RandmatReport {
    pub word: String,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub rng: String,
    pub mean: f64,
    pub stderr: f64,
    pub exact: String,
    pub exact_f64: f64,
    pub z_score: f64,
    pub pass: bool,
}

/// Trace moment of a word of triangular Gaussian matrices, against the exact
/// value with the 4-sigma + 0.05 finite-size envelope.
pub fn run_randmat(
    word: &str,
    dim: usize,
    samples: usize,
    seed: u64,
) -> Result<(RandmatReport, bool), UsageError> {
    let (w, _) = parse_word_argument(word)?;
    let exact = ExpectationCache::new()
        .expectation(&w)
        .definite_integral_01();
    let exact_f64 = exact.to_f64().expect("moment fits in f64");
    let est = sample_moment(&w, &MatrixEnsembleConfig::new(dim, samples, seed))
        .expect("dimension and sample count validated by the parser");
    let z_score = if est.stderr > 0.0 {
        (est.mean - exact_f64) / est.stderr
    } else {
        0.0
    };
    let pass = (est.mean - exact_f64).abs() <= 4.0 * est.stderr + 0.05;
    let report = RandmatReport {
        word: w.to_string(),
        dim,
        samples,
        seed,
        rng: RNG_ID.to_string(),
        mean: est.mean,
        stderr: est.stderr,
        exact: exact.to_string(),
        exact_f64,
        z_score,
        pass,
    };
    Ok((report, pass))
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct PartitionLine {
    pub pairs: String,
    pub kernel: String,
    pub phi_term: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct EnumerateReport {
    pub word: String,
    pub length: usize,
    pub total_nc2: usize,
    pub admissible_count: usize,
    pub partitions: Vec<PartitionLine>,
    pub expectation: String,
    pub phi: String,
}

/// Lists the admissible partitions of a word with their kernel polynomials
/// and scalar contributions.
pub fn run_enumerate(word: &str, max_nk: u32) -> Result<(EnumerateReport, bool), UsageError> {
    let (w, _) = parse_word_argument(word)?;
    check_bound((w.len() / 2) as u32, max_nk)?;
    let total_nc2 = if w.len() % 2 == 0 {
        enumerate_nc2(w.len() / 2).len()
    } else {
        0
    };
    let admissible = admissible_partitions(&w);
    let partitions: Vec<PartitionLine> = admissible
        .iter()
        .map(|p| {
            let kernel = kappa_nested(p, &w).expect("partition matches word");
            PartitionLine {
                pairs: p.to_string(),
                kernel: kernel.to_string(),
                phi_term: kernel.definite_integral_01().to_string(),
            }
        })
        .collect();
    let expectation = expectation_direct(&w);
    let report = EnumerateReport {
        word: w.to_string(),
        length: w.len(),
        total_nc2,
        admissible_count: admissible.len(),
        partitions,
        expectation: expectation.to_string(),
        phi: expectation.definite_integral_01().to_string(),
    };
    Ok((report, true))
}
