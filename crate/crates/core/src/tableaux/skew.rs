use std::fmt;

use crate::error::{Error, Result};
use crate::tableaux::Partition;

/// The skew diagram `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::InvalidShape(format!(
                "{inner} is not contained in {outer}"
            )));
        }
        Ok(SkewShape { outer, inner })
    }

    /// A straight shape, i.e. `outer / ∅`.
    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Number of boxes in row `i`.
    pub fn row_len(&self, i: usize) -> usize {
        self.outer.row(i) - self.inner.row(i)
    }

    /// First occupied column of row `i` (0-based).
    pub fn row_start(&self, i: usize) -> usize {
        self.inner.row(i)
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        col >= self.inner.row(row) && col < self.outer.row(row)
    }

    /// Occupied rows of column `col`, as a half-open range of row indices.
    pub fn column_rows(&self, col: usize) -> std::ops::Range<usize> {
        let end = self.outer.column_height(col);
        let start = self.inner.column_height(col).min(end);
        start..end
    }

    /// Boxes in reading order: rows top to bottom, each row right to left.
    pub fn reading_order(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows()).flat_map(move |i| {
            (self.row_start(i)..self.outer.row(i))
                .rev()
                .map(move |j| (i, j))
        })
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

/// A filling of a skew shape with positive integer letters, stored row by
/// row (each row left to right).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewTableau {
    shape: SkewShape,
    rows: Vec<Vec<u32>>,
}

impl SkewTableau {
    pub fn new(shape: SkewShape, rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.len() != shape.rows() {
            return Err(Error::MalformedTableau(format!(
                "shape {shape} has {} rows but filling has {}",
                shape.rows(),
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != shape.row_len(i) {
                return Err(Error::MalformedTableau(format!(
                    "row {i} of {shape} needs {} entries, got {}",
                    shape.row_len(i),
                    row.len()
                )));
            }
            if row.contains(&0) {
                return Err(Error::MalformedTableau("letters must be positive".into()));
            }
        }
        Ok(SkewTableau { shape, rows })
    }

    pub(crate) fn from_parts_unchecked(shape: SkewShape, rows: Vec<Vec<u32>>) -> Self {
        SkewTableau { shape, rows }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entry at absolute position `(row, col)`, if that box belongs to the shape.
    pub fn entry(&self, row: usize, col: usize) -> Option<u32> {
        if self.shape.contains_box(row, col) {
            Some(self.rows[row][col - self.shape.row_start(row)])
        } else {
            None
        }
    }

    /// Rows weakly increase to the right, columns strictly increase downwards.
    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self
            .rows
            .iter()
            .all(|row| row.windows(2).all(|w| w[0] <= w[1]));
        rows_ok
            && (1..self.shape.rows()).all(|i| {
                (self.shape.row_start(i)..self.shape.outer().row(i)).all(|j| {
                    match self.entry(i - 1, j) {
                        Some(above) => above < self.rows[i][j - self.shape.row_start(i)],
                        None => true,
                    }
                })
            })
    }

    /// Rows top to bottom, each read right to left.
    pub fn reading_word(&self) -> Vec<u32> {
        self.rows
            .iter()
            .flat_map(|row| row.iter().rev().copied())
            .collect()
    }

    pub fn satisfies_lattice_property(&self) -> bool {
        is_lattice_word(&self.reading_word())
    }

    /// Letter multiplicities of a lattice tableau.
    pub fn content(&self) -> Result<Partition> {
        let word = self.reading_word();
        if !is_lattice_word(&word) {
            return Err(Error::NotLattice);
        }
        Partition::new(letter_counts(&word))
    }

    /// Number of distinct letters occurring at least `i` times in the
    /// reading word.
    pub fn gamma(&self, i: usize) -> usize {
        gamma_of_word(&self.reading_word(), i)
    }
}

impl fmt::Display for SkewTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for _ in 0..self.shape.row_start(i) {
                write!(f, "  .")?;
            }
            for letter in row {
                write!(f, "{letter:>3}")?;
            }
        }
        Ok(())
    }
}

/// `counts[k]` is the number of occurrences of letter `k + 1`.
pub fn letter_counts(word: &[u32]) -> Vec<usize> {
    let max = word.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0; max];
    for &letter in word {
        counts[letter as usize - 1] += 1;
    }
    counts
}

/// Every prefix contains letter `i` at least as often as `i + 1`.
pub fn is_lattice_word(word: &[u32]) -> bool {
    let mut counts: Vec<usize> = Vec::new();
    for &letter in word {
        let k = letter as usize;
        if k == 0 {
            return false;
        }
        if counts.len() < k {
            counts.resize(k, 0);
        }
        counts[k - 1] += 1;
        if k >= 2 && counts[k - 1] > counts[k - 2] {
            return false;
        }
    }
    true
}

pub fn gamma_of_word(word: &[u32], i: usize) -> usize {
    letter_counts(word)
        .into_iter()
        .filter(|&c| c >= i && c > 0)
        .count()
}
