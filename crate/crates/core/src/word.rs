//! Words over the two generators T and T*.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One letter of a word: the operator or its adjoint.
///
/// `T` carries sign +1 and `TStar` sign -1, so prefix sums of a word measure
/// the surplus of T's over T*'s.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    T,
    TStar,
}

impl Letter {
    pub fn sign(self) -> i64 {
        match self {
            Letter::T => 1,
            Letter::TStar => -1,
        }
    }

    /// Adjoint letter (T <-> T*).
    pub fn flipped(self) -> Letter {
        match self {
            Letter::T => Letter::TStar,
            Letter::TStar => Letter::T,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::T => write!(f, "T"),
            Letter::TStar => write!(f, "T*"),
        }
    }
}

/// A finite product of T's and T*'s, stored as its letter sequence.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordParseError {
    #[error("unexpected character {ch:?} at byte {at}; expected 'T' or 'T*'")]
    UnexpectedChar { ch: char, at: usize },
    #[error("'*' at byte {at} does not follow a 'T'")]
    DanglingStar { at: usize },
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn empty() -> Word {
        Word::default()
    }

    /// Concatenation of (letter, multiplicity) blocks; empty blocks vanish.
    pub fn from_blocks(blocks: &[(Letter, usize)]) -> Word {
        let mut letters = Vec::new();
        for &(l, count) in blocks {
            letters.extend(std::iter::repeat_n(l, count));
        }
        Word { letters }
    }

    /// All 2^len words of the given length, in lexicographic order (T < T*).
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Word> {
        assert!(len < 64);
        (0u64..1 << len).map(move |bits| {
            Word::new(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 0 {
                            Letter::T
                        } else {
                            Letter::TStar
                        }
                    })
                    .collect(),
            )
        })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// 0-based letter access.
    pub fn letter(&self, i: usize) -> Letter {
        self.letters[i]
    }

    pub fn subword(&self, range: std::ops::Range<usize>) -> Word {
        Word {
            letters: self.letters[range].to_vec(),
        }
    }

    /// s_1 + ... + s_j for j = 1..=len.
    pub fn partial_sums(&self) -> Vec<i64> {
        self.letters
            .iter()
            .scan(0i64, |acc, l| {
                *acc += l.sign();
                Some(*acc)
            })
            .collect()
    }

    pub fn total_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// Equal counts of T and T*.
    pub fn is_balanced(&self) -> bool {
        self.total_sum() == 0
    }

    /// Letterwise adjoint (order preserved).
    pub fn flipped(&self) -> Word {
        Word {
            letters: self.letters.iter().map(|l| l.flipped()).collect(),
        }
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    /// Accepts `T` and `T*` tokens (case-insensitive), whitespace ignored.
    fn from_str(s: &str) -> Result<Word, WordParseError> {
        let mut letters = Vec::new();
        let mut chars = s.char_indices().peekable();
        while let Some((at, ch)) = chars.next() {
            match ch {
                c if c.is_whitespace() => {}
                'T' | 't' => {
                    if chars.peek().is_some_and(|&(_, c)| c == '*') {
                        chars.next();
                        letters.push(Letter::TStar);
                    } else {
                        letters.push(Letter::T);
                    }
                }
                '*' => return Err(WordParseError::DanglingStar { at }),
                _ => return Err(WordParseError::UnexpectedChar { ch, at }),
            }
        }
        Ok(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
