use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use triop_cli::*;

#[derive(Parser)]
#[command(
    name = "triop",
    version,
    about = "Exact verifier for triangular-operator moments"
)]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (1 forces serial execution)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Method {
    Direct,
    Recursive,
    Integration,
    Composition,
    Montecarlo,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Recursive => "recursive",
            Method::Integration => "integration",
            Method::Composition => "composition",
            Method::Montecarlo => "montecarlo",
        }
    }
}

#[derive(Args)]
struct WordOrPowers {
    /// Word over T and T*, e.g. "T T* T T*" or the shorthand "(T^2 T*^2)^3"
    #[arg(long)]
    word: Option<String>,

    /// Exponent k of the power word (T^k T*^k)^n
    #[arg(long)]
    k: Option<u32>,

    /// Repetition count n of the power word (T^k T*^k)^n
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// E(word) and phi(word), cross-checked across evaluation methods
    Moment {
        #[command(flatten)]
        input: WordOrPowers,
        /// Restrict to one method instead of cross-checking all
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Enumeration bound on nk for power words
        #[arg(long, default_value_t = DEFAULT_MAX_NK)]
        max_nk: u32,
    },
    /// The moment-formula grid over every (k, n) with nk <= the bound
    Verify {
        /// Grid bound on nk
        #[arg(long, default_value_t = DEFAULT_MAX_NK)]
        max_nk: u32,
        /// Only verify cases with this k
        #[arg(long)]
        k: Option<u32>,
        /// Only verify cases with this n
        #[arg(long)]
        n: Option<u32>,
    },
    /// One multinomial identity: displayed sum (n = 2, 3, 4) or moment bridge
    Identity {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Enumeration bound on nk for the moment bridge and term dumps
        #[arg(long, default_value_t = DEFAULT_MAX_NK)]
        max_nk: u32,
        /// Include the per-partition scalar decomposition
        #[arg(long)]
        dump_terms: bool,
    },
    /// Chain-polytope volume, exact or Monte Carlo, against the closed formula
    Volume {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        /// composition (exact) or montecarlo
        #[arg(long, value_enum, default_value_t = Method::Composition)]
        method: Method,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also check the cyclic-shift property on the same samples
        #[arg(long)]
        check_shift: bool,
        /// Bound on nk
        #[arg(long, default_value_t = DEFAULT_MAX_NK)]
        max_nk: u32,
    },
    /// Monte Carlo trace moment of a word of triangular Gaussian matrices
    Randmat {
        /// Word over T and T*
        #[arg(long)]
        word: String,
        /// Matrix dimension N
        #[arg(long, default_value_t = 300, value_parser = clap::value_parser!(u32).range(1..))]
        dim: u32,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(2..))]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Admissible noncrossing pair partitions of a word, with contributions
    Enumerate {
        /// Word over T and T*
        #[arg(long)]
        word: String,
        /// Bound on half the word length
        #[arg(long, default_value_t = DEFAULT_MAX_NK)]
        max_nk: u32,
    },
}

fn emit<T: Serialize>(json: bool, report: &T, text: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        );
    } else {
        println!("{text}");
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    let json = cli.json;
    match cli.command {
        Command::Moment {
            input,
            method,
            max_nk,
        } => {
            let method_name = match method {
                Some(m @ (Method::Direct | Method::Recursive | Method::Integration)) => {
                    Some(m.name())
                }
                Some(other) => return Err(UsageError::BadMethod(other.name().to_string())),
                None => None,
            };
            let (report, pass) =
                run_moment(input.word.as_deref(), input.k, input.n, method_name, max_nk)?;
            let text = format!(
                "word: {}\nE = {}\ncoefficients = [{}]\nphi = {}\nmethods: {} -> {}",
                report.word,
                report.expectation,
                report.expectation_coeffs.join(", "),
                report.phi,
                report.methods.join(", "),
                if report.cross_check {
                    "agree"
                } else {
                    "DISAGREE"
                },
            );
            emit(json, &report, text);
            Ok(pass)
        }
        Command::Verify { max_nk, k, n } => {
            let (report, pass) = run_verify(max_nk, k, n)?;
            let mut lines: Vec<String> = report
                .cases
                .iter()
                .map(|c| {
                    format!(
                        "k={:<2} n={:<2} phi = {:<24} expected = {:<24} {}",
                        c.k,
                        c.n,
                        c.phi,
                        c.expected,
                        status(c.pass)
                    )
                })
                .collect();
            lines.push(format!(
                "{} cases, all_pass = {}",
                report.cases.len(),
                report.all_pass
            ));
            emit(json, &report, lines.join("\n"));
            Ok(pass)
        }
        Command::Identity {
            n,
            k,
            max_nk,
            dump_terms,
        } => {
            let (report, pass) = run_identity(n, k, max_nk, dump_terms)?;
            let mut text = format!(
                "n = {}, k = {} ({})\nlhs = {}\nrhs = {}\nequal = {}",
                report.n, report.k, report.method, report.lhs, report.rhs, report.equal
            );
            if let Some(terms) = &report.terms {
                text.push_str(&format!("\n{} partition terms:", terms.len()));
                for t in terms {
                    text.push_str(&format!("\n  {} -> {}", t.partition, t.value));
                }
            }
            emit(json, &report, text);
            Ok(pass)
        }
        Command::Volume {
            k,
            n,
            method,
            samples,
            seed,
            check_shift,
            max_nk,
        } => {
            let (report, pass) =
                run_volume(k, n, method.name(), samples, seed, max_nk, check_shift)?;
            let mut text = match method {
                Method::Composition => format!(
                    "volume(k={k}, n={n}) = {} (expected {}) {}",
                    report.value.as_deref().unwrap_or("-"),
                    report.expected,
                    status(report.pass)
                ),
                _ => format!(
                    "volume(k={k}, n={n}) ~ {:.6} +- {:.6} ({} samples, seed {seed}, expected {}) {}",
                    report.estimate.unwrap_or(f64::NAN),
                    report.stderr.unwrap_or(f64::NAN),
                    samples,
                    report.expected,
                    status(report.pass)
                ),
            };
            if let Some(ok) = report.shift_check {
                text.push_str(&format!("\ncyclic-shift check: {}", status(ok)));
            }
            emit(json, &report, text);
            Ok(pass)
        }
        Command::Randmat {
            word,
            dim,
            samples,
            seed,
        } => {
            let (report, pass) = run_randmat(&word, dim as usize, samples as usize, seed)?;
            let text = format!(
                "word: {}\nmean = {:.6} +- {:.6} (N = {}, {} samples, seed {})\nexact = {} = {:.6}, z = {:+.2} -> {}",
                report.word,
                report.mean,
                report.stderr,
                report.dim,
                report.samples,
                report.seed,
                report.exact,
                report.exact_f64,
                report.z_score,
                status(report.pass)
            );
            emit(json, &report, text);
            Ok(pass)
        }
        Command::Enumerate { word, max_nk } => {
            let (report, pass) = run_enumerate(&word, max_nk)?;
            let mut text = format!(
                "word: {} (length {})\nnoncrossing pair partitions: {}, admissible: {}",
                report.word, report.length, report.total_nc2, report.admissible_count
            );
            for p in &report.partitions {
                text.push_str(&format!(
                    "\n  {}  kernel = {}  phi-term = {}",
                    p.pairs, p.kernel, p.phi_term
                ));
            }
            text.push_str(&format!(
                "\nE = {}\nphi = {}",
                report.expectation, report.phi
            ));
            emit(json, &report, text);
            Ok(pass)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("thread pool is configured once at startup");
    }
    match run(cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
