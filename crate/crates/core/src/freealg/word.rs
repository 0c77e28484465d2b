use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A monomial of the free algebra: a sequence of generator indices `1..=n`.
/// The empty word is the unit.
///
/// Words are ordered by degree first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn new(letters: &[u8]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(i: u8) -> Self {
        Word::new(&[i])
    }

    /// Checks every letter against `1..=n`.
    pub fn checked(letters: &[u8], n: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l as usize > n) {
            return Err(Error::LetterOutOfRange { letter: bad as usize, n });
        }
        Ok(Word::new(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Per-generator letter counts, length `n`.
    pub fn multidegree(&self, n: usize) -> Vec<u8> {
        let mut m = vec![0u8; n];
        for &l in self.0.iter() {
            m[l as usize - 1] += 1;
        }
        m
    }

    /// Base-`n` index of the word among words of the same degree; lexicographic
    /// order of same-degree words is numeric order of their codes.
    pub fn code(&self, n: usize) -> u64 {
        self.0
            .iter()
            .fold(0u64, |acc, &l| acc * n as u64 + (l as u64 - 1))
    }

    pub fn from_code(mut code: u64, n: usize, degree: usize) -> Word {
        let mut v: SmallVec<[u8; 16]> = SmallVec::from_elem(0, degree);
        for slot in v.iter_mut().rev() {
            *slot = (code % n as u64) as u8 + 1;
            code /= n as u64;
        }
        Word(v)
    }

    /// All words of the given degree over `1..=n`, in increasing order.
    pub fn all(n: usize, degree: usize) -> impl Iterator<Item = Word> {
        let count = (n as u64).pow(degree as u32);
        (0..count).map(move |c| Word::from_code(c, n, degree))
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let k = k % self.degree().max(1);
        let mut v: SmallVec<[u8; 16]> = SmallVec::from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}", l)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(".");
        write!(f, "w[{}]", s)
    }
}
