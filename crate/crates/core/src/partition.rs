//! Noncrossing pair partitions and the outer-line decomposition.

use std::fmt;

use thiserror::Error;

use crate::word::Word;

/// A noncrossing perfect matching of {1, ..., 2m}, stored as (opener, closer)
/// pairs sorted by opener. Indices are 1-based to match the usual rendering.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PairPartition {
    pairs: Vec<(usize, usize)>,
    size: usize,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("{count} pairs cannot cover {size} indices")]
    WrongPairCount { count: usize, size: usize },
    #[error("index {index} is out of range or covered more than once")]
    BadCover { index: usize },
    #[error("pairs ({a}, {c}) and ({b}, {d}) cross")]
    Crossing {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },
}

impl PairPartition {
    /// Validates the perfect-matching and noncrossing invariants.
    pub fn new(mut pairs: Vec<(usize, usize)>, size: usize) -> Result<Self, PartitionError> {
        if pairs.len() * 2 != size {
            return Err(PartitionError::WrongPairCount {
                count: pairs.len(),
                size,
            });
        }
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let mut covered = vec![false; size + 1];
        for &(a, b) in &pairs {
            for i in [a, b] {
                if i < 1 || i > size || covered[i] {
                    return Err(PartitionError::BadCover { index: i });
                }
                covered[i] = true;
            }
        }
        // Noncrossing check: closers must come off a stack in last-in-first-out order.
        let mut partner = vec![0usize; size + 1];
        for &(a, b) in &pairs {
            partner[a] = b;
            partner[b] = a;
        }
        let mut stack: Vec<usize> = Vec::new();
        for i in 1..=size {
            if partner[i] > i {
                stack.push(i);
            } else {
                let open = stack.pop().expect("perfect matching");
                if open != partner[i] {
                    return Err(PartitionError::Crossing {
                        a: open,
                        b: partner[i],
                        c: partner[open],
                        d: i,
                    });
                }
            }
        }
        Ok(PairPartition { pairs, size })
    }

    /// Number of covered indices (2m).
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// partner\[i\] for i = 1..=size (entry 0 unused).
    pub fn partner_table(&self) -> Vec<usize> {
        let mut partner = vec![0usize; self.size + 1];
        for &(a, b) in &self.pairs {
            partner[a] = b;
            partner[b] = a;
        }
        partner
    }
}

impl fmt::Display for PairPartition {
    /// Sorted pair list, e.g. `{(1,4),(2,3)}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

/// All noncrossing pair partitions of {1, ..., 2m}, each exactly once.
///
/// Enumeration order is deterministic: index 1 pairs with 2, 4, ..., 2m in
/// turn, inner block before outer block.
pub fn enumerate_nc2(m: usize) -> Vec<PairPartition> {
    let size = 2 * m;
    enumerate_interval(1, size)
        .into_iter()
        .map(|pairs| PairPartition::new(pairs, size).expect("construction is noncrossing"))
        .collect()
}

fn enumerate_interval(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    debug_assert_eq!((hi - lo) % 2, 1, "interval must have even length");
    let mut out = Vec::new();
    let mut j = lo + 1;
    while j <= hi {
        for inner in enumerate_interval(lo + 1, j - 1) {
            for outer in enumerate_interval(j + 1, hi) {
                let mut pairs = Vec::with_capacity((hi + 1 - lo) / 2);
                pairs.push((lo, j));
                pairs.extend_from_slice(&inner);
                pairs.extend_from_slice(&outer);
                out.push(pairs);
            }
        }
        j += 2;
    }
    out
}

/// The noncrossing pair partitions of the word's index set in which every
/// pair joins a T with a T*. Empty for odd length.
pub fn admissible_partitions(w: &Word) -> Vec<PairPartition> {
    if w.len() % 2 == 1 {
        return Vec::new();
    }
    enumerate_nc2(w.len() / 2)
        .into_iter()
        .filter(|p| {
            p.pairs()
                .iter()
                .all(|&(a, b)| w.letter(a - 1).sign() + w.letter(b - 1).sign() == 0)
        })
        .collect()
}

/// The outer lines of a partition and the sub-partitions nested under them.
///
/// `outer_indices` is the tuple 1 = i_1 < i_2 < ... < i_{k+1} = 2m+1; the
/// outer lines are {i_r, i_{r+1}-1} and `inner[r]` holds the pairs strictly
/// between them, in the original indexing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OuterDecomposition {
    pub outer_indices: Vec<usize>,
    pub inner: Vec<Vec<(usize, usize)>>,
}

impl OuterDecomposition {
    pub fn outer_lines(&self) -> Vec<(usize, usize)> {
        self.outer_indices
            .windows(2)
            .map(|w| (w[0], w[1] - 1))
            .collect()
    }

    /// Inverse of [`outer_decomposition`].
    pub fn reassemble(&self) -> PairPartition {
        let size = self.outer_indices.last().unwrap() - 1;
        let mut pairs = self.outer_lines();
        for block in &self.inner {
            pairs.extend_from_slice(block);
        }
        PairPartition::new(pairs, size).expect("decomposition pieces form a partition")
    }
}

/// Splits a nonempty partition along its outer lines: i_1 = 1 and i_{r+1} is
/// one past the partner of i_r.
pub fn outer_decomposition(p: &PairPartition) -> OuterDecomposition {
    assert!(!p.is_empty(), "outer decomposition of an empty partition");
    let partner = p.partner_table();
    let mut outer_indices = vec![1];
    let mut inner = Vec::new();
    let mut start = 1;
    loop {
        let close = partner[start];
        inner.push(
            p.pairs()
                .iter()
                .copied()
                .filter(|&(a, b)| start < a && b < close)
                .collect(),
        );
        outer_indices.push(close + 1);
        if close + 1 > p.size() {
            break;
        }
        start = close + 1;
    }
    OuterDecomposition {
        outer_indices,
        inner,
    }
}
