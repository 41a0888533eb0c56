//! Subsets of the ground set `[n]`, stored as bit masks.
//!
//! Elements are 1-based in every textual form (`"1,2,4"`, `e_{124}`) and
//! 0-based bit positions internally. `Ord` is the lexicographic order on
//! sorted element lists, which is the order the rest of the crate uses for
//! enumeration, reports, and tie-breaking.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::fmt::Write as _;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported ambient rank.
pub const MAX_RANK: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds a subset from 1-based elements; duplicates and out-of-range
    /// entries are rejected.
    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n || n > MAX_RANK {
                return Err(Error::InvalidSubset(alloc::format!("element {e} outside 1..={n}")));
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(Error::InvalidSubset(alloc::format!("repeated element {e}")));
            }
            bits |= bit;
        }
        Ok(Subset(bits))
    }

    /// Shorthand for tests and fixtures: `Subset::of(&[1, 2, 4])`.
    ///
    /// Panics on a zero or repeated element.
    pub fn of(elements: &[usize]) -> Self {
        Self::from_elements(MAX_RANK, elements).expect("valid subset literal")
    }

    pub fn singleton(element: usize) -> Self {
        Subset(1u64 << (element - 1))
    }

    /// `[n]` itself.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: usize) -> bool {
        (1..=64).contains(&element) && self.0 & (1u64 << (element - 1)) != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// `I + j`.
    pub fn with(self, element: usize) -> Self {
        Subset(self.0 | (1u64 << (element - 1)))
    }

    /// `I - j`.
    pub fn without(self, element: usize) -> Self {
        Subset(self.0 & !(1u64 << (element - 1)))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    /// `[n] \ I`.
    pub fn complement(self, n: usize) -> Self {
        Subset(Subset::full(n).0 & !self.0)
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Ascending 1-based elements.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `e_{124}`-style label; elements are comma-separated once any exceeds 9.
    pub fn label(self, prefix: char) -> String {
        let mut s = String::new();
        s.push(prefix);
        s.push_str("_{");
        let sep = if self.max_element().unwrap_or(0) > 9 { "," } else { "" };
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                s.push_str(sep);
            }
            let _ = write!(s, "{e}");
        }
        s.push('}');
        s
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Below the lowest differing bit the sorted lists agree.
        let t = diff.trailing_zeros();
        let (lacks, has_first) = if self.0 & (1u64 << t) != 0 {
            (other.0, Ordering::Less)
        } else {
            (self.0, Ordering::Greater)
        };
        // If the set lacking `t` stops before `t`, it is a proper prefix.
        if lacks >> t == 0 {
            has_first.reverse()
        } else {
            has_first
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Comma-joined 1-based elements, the JSON key form: `"1,2,4"`.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                f.write_char(',')?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Subset {
    type Err = Error;

    /// Parses `"1,2,4"`; the empty string is the empty set. Sortedness is
    /// required so that keys are canonical.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let mut elements = Vec::new();
        for part in s.split(',') {
            let e: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSubset(String::from(s)))?;
            elements.push(e);
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubset(alloc::format!("{s:?} is not strictly increasing")));
        }
        Subset::from_elements(MAX_RANK, &elements)
    }
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        idx: if k <= n { Some((1..=k).collect()) } else { None },
    }
}

pub struct Combinations {
    n: usize,
    idx: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let idx = self.idx.as_mut()?;
        let out = Subset(idx.iter().fold(0u64, |b, &e| b | (1u64 << (e - 1))));
        let k = idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.idx = None;
                break;
            }
            i -= 1;
            if idx[i] < self.n - (k - 1 - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All subsets of `set` (including the empty set and `set`), in no
/// particular order.
pub fn sub_subsets(set: Subset) -> impl Iterator<Item = Subset> {
    let full = set.0;
    let mut cur = Some(full);
    core::iter::from_fn(move || {
        let c = cur?;
        cur = if c == 0 { None } else { Some((c - 1) & full) };
        Some(Subset(c))
    })
}
