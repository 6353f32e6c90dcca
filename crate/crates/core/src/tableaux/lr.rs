//! Littlewood-Richardson tableaux: semistandard skew fillings whose reading
//! word is a lattice word.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::tableaux::{Partition, SkewShape, SkewTableau};

/// Depth-first generator of semistandard lattice fillings.
///
/// Boxes are filled in reading order, so the lattice condition can be
/// checked incrementally: when a box is visited its right neighbour and the
/// box above it are already filled.
pub(crate) struct LatticeFillings<'a> {
    shape: &'a SkewShape,
    order: Vec<(usize, usize)>,
    cap: Option<Vec<usize>>,
}

impl<'a> LatticeFillings<'a> {
    /// With `content`, only fillings of exactly that content are produced.
    pub(crate) fn new(shape: &'a SkewShape, content: Option<&Partition>) -> Self {
        LatticeFillings {
            shape,
            order: shape.reading_order().collect(),
            cap: content.map(|c| c.parts().to_vec()),
        }
    }

    /// Calls `visit(rows, counts)` on each filling; `counts[k]` is the number
    /// of occurrences of letter `k + 1`. Stops early on `Break`.
    pub(crate) fn for_each<F>(&self, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[Vec<u32>], &[usize]) -> ControlFlow<()>,
    {
        let mut grid: Vec<Vec<u32>> = (0..self.shape.rows())
            .map(|i| vec![0; self.shape.row_len(i)])
            .collect();
        let mut counts = Vec::new();
        self.fill(0, &mut grid, &mut counts, &mut visit)
    }

    fn fill<F>(
        &self,
        idx: usize,
        grid: &mut [Vec<u32>],
        counts: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[Vec<u32>], &[usize]) -> ControlFlow<()>,
    {
        let Some(&(i, j)) = self.order.get(idx) else {
            return visit(grid, counts);
        };
        let shape = self.shape;
        let lo = if i > 0 && shape.contains_box(i - 1, j) {
            grid[i - 1][j - shape.row_start(i - 1)] + 1
        } else {
            1
        };
        let mut hi = counts.len() as u32 + 1;
        if shape.contains_box(i, j + 1) {
            hi = hi.min(grid[i][j + 1 - shape.row_start(i)]);
        }
        if let Some(cap) = &self.cap {
            hi = hi.min(cap.len() as u32);
        }
        for letter in lo..=hi {
            let k = letter as usize - 1;
            let have = counts.get(k).copied().unwrap_or(0);
            if k > 0 && have >= counts[k - 1] {
                continue;
            }
            if let Some(cap) = &self.cap {
                if have >= cap[k] {
                    continue;
                }
            }
            if k == counts.len() {
                counts.push(0);
            }
            counts[k] += 1;
            grid[i][j - shape.row_start(i)] = letter;
            let flow = self.fill(idx + 1, grid, counts, visit);
            counts[k] -= 1;
            if counts[k] == 0 && k + 1 == counts.len() {
                counts.pop();
            }
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// All LR tableaux of the given shape and content, ordered lexicographically
/// on their rows read left to right.
pub fn enumerate_lr_tableaux(shape: &SkewShape, content: &Partition) -> Result<Vec<SkewTableau>> {
    if shape.size() != content.size() {
        return Err(Error::SizeMismatch {
            boxes: shape.size(),
            content: content.size(),
        });
    }
    let mut found = Vec::new();
    let _ = LatticeFillings::new(shape, Some(content)).for_each(|rows, _| {
        found.push(rows.to_vec());
        ControlFlow::Continue(())
    });
    found.sort();
    Ok(found
        .into_iter()
        .map(|rows| SkewTableau::from_parts_unchecked(shape.clone(), rows))
        .collect())
}

/// The LR coefficient `c^outer_{inner, content}`; zero whenever `inner` is not
/// contained in `outer` or the sizes do not add up.
pub fn lr_coefficient(outer: &Partition, inner: &Partition, content: &Partition) -> u64 {
    let Ok(shape) = SkewShape::new(outer.clone(), inner.clone()) else {
        return 0;
    };
    if shape.size() != content.size() || !outer.contains(content) {
        return 0;
    }
    let mut count = 0u64;
    let _ = LatticeFillings::new(&shape, Some(content)).for_each(|_, _| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// True iff `c^outer_{inner, content} != 0`; stops at the first tableau.
pub fn lr_nonzero(outer: &Partition, inner: &Partition, content: &Partition) -> bool {
    let Ok(shape) = SkewShape::new(outer.clone(), inner.clone()) else {
        return false;
    };
    if shape.size() != content.size() || !outer.contains(content) {
        return false;
    }
    LatticeFillings::new(&shape, Some(content))
        .for_each(|_, _| ControlFlow::Break(()))
        .is_break()
}

/// Every content `ν` with `c^outer_{inner, ν} != 0`, in ascending order.
pub fn lr_nonzero_contents(outer: &Partition, inner: &Partition) -> Vec<Partition> {
    let Ok(shape) = SkewShape::new(outer.clone(), inner.clone()) else {
        return Vec::new();
    };
    let mut contents = BTreeSet::new();
    let _ = LatticeFillings::new(&shape, None).for_each(|_, counts| {
        if !contents.contains(counts) {
            contents.insert(counts.to_vec());
        }
        ControlFlow::Continue(())
    });
    let mut out: Vec<Partition> = contents
        .into_iter()
        .map(|c| Partition::new(c).expect("lattice counts are weakly decreasing"))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn empty_shape_has_one_empty_tableau() {
        let shape = SkewShape::new(p("3,1"), p("3,1")).unwrap();
        let tabs = enumerate_lr_tableaux(&shape, &Partition::empty()).unwrap();
        assert_eq!(tabs.len(), 1);
        assert!(tabs[0].reading_word().is_empty());
    }

    #[test]
    fn small_skew_examples() {
        let shape = SkewShape::new(p("2,1"), p("1")).unwrap();
        let tabs = enumerate_lr_tableaux(&shape, &p("1,1")).unwrap();
        assert_eq!(tabs.len(), 1);
        assert_eq!(tabs[0].rows(), &[vec![1], vec![2]]);
        // the two boxes share no column, so both may hold 1
        assert_eq!(enumerate_lr_tableaux(&shape, &p("2")).unwrap().len(), 1);
        assert!(enumerate_lr_tableaux(&shape, &p("3")).is_err());
    }

    #[test]
    fn coefficients() {
        assert_eq!(lr_coefficient(&p("3,1"), &p("3,1"), &Partition::empty()), 1);
        assert_eq!(lr_coefficient(&p("2,1"), &p("1"), &p("1,1")), 1);
        assert_eq!(lr_coefficient(&p("4"), &p("2"), &p("2")), 1);
        assert_eq!(lr_coefficient(&p("3,2,1"), &p("2,1"), &p("2,1")), 2);
        assert_eq!(lr_coefficient(&p("3"), &p("1"), &p("1,1")), 0);
        // containment and size failures are zero, not errors
        assert_eq!(lr_coefficient(&p("2"), &p("1,1"), &p("1")), 0);
        assert_eq!(lr_coefficient(&p("2"), &p("1"), &p("2")), 0);
    }

    #[test]
    fn nonzero_contents() {
        assert_eq!(
            lr_nonzero_contents(&p("1"), &Partition::empty()),
            vec![p("1")]
        );
        assert_eq!(
            lr_nonzero_contents(&p("2,1"), &p("1")),
            vec![p("1,1"), p("2")]
        );
        assert_eq!(
            lr_nonzero_contents(&p("3"), &p("3")),
            vec![Partition::empty()]
        );
        assert!(lr_nonzero_contents(&p("3"), &p("1,1")).is_empty());
    }

    #[test]
    fn canonical_order_is_row_major_lexicographic() {
        let shape = SkewShape::new(p("3,2,1"), p("2,1")).unwrap();
        let tabs = enumerate_lr_tableaux(&shape, &p("2,1")).unwrap();
        assert_eq!(tabs.len(), 2);
        assert!(tabs[0].rows() < tabs[1].rows());
        for t in &tabs {
            assert!(t.is_semistandard() && t.satisfies_lattice_property());
            assert_eq!(t.content().unwrap(), p("2,1"));
        }
    }
}
