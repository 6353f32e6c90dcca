use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition stored without trailing zeros.
///
/// Indexing past the last part yields 0, so partitions of different lengths
/// compare row by row as if zero padded.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing, got {parts:?}"
            )));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `count` copies of each `(length, count)` pair, in the given order.
    pub fn from_blocks(blocks: &[(usize, usize)]) -> Result<Self> {
        let parts = blocks
            .iter()
            .flat_map(|&(len, count)| std::iter::repeat_n(len, count))
            .collect();
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Row length, 0 beyond the last part.
    pub fn row(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Height of column `j` (0-based).
    pub fn column_height(&self, j: usize) -> usize {
        self.parts.iter().take_while(|&&len| len > j).count()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.row(0);
        Partition {
            parts: (0..width).map(|j| self.column_height(j)).collect(),
        }
    }

    /// True if the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.row(i) <= self.row(i))
    }

    /// All partitions of `n`, in reverse lexicographic order (`(n)` first).
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for part in (1..=remaining.min(max)).rev() {
                cur.push(part);
                rec(remaining - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions whose diagram is contained in `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(
            outer: &Partition,
            i: usize,
            max: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            if i == outer.len() {
                out.push(Partition::new(cur.clone()).expect("weakly decreasing by construction"));
                return;
            }
            for part in 0..=outer.row(i).min(max) {
                cur.push(part);
                rec(outer, i + 1, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, usize::MAX, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Parses comma separated parts such as `2,1`. The empty string, `0` and
/// `-` all denote the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}
