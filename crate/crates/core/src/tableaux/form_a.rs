//! Skew diagrams with `p` columns whose middle columns `2..p-1` all end on
//! the same row, and the multiplicity bounds satisfied by their lattice
//! fillings.
//!
//! Such a diagram splits into a *body* (columns `1..p-1`, rows `1..=m`), a
//! *tail* (column 1 below row `m`) and a *head* (column `p`). The bounds
//! checked here are:
//!
//! * column repetition: a body entry `e` in column `k` occurs at least
//!   `p - k` times in the reading word up to and including its box;
//! * entry bound: a body entry in column `k <= p - 2` whose right neighbour
//!   is the `h`-th box of column `k + 1` is at most `h`;
//! * gamma bounds: if column `k` has `h` body boxes then
//!   `gamma_{p-k} >= h`, and `gamma_{p-k+2} <= h` when `k >= 2`.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableaux::lr::LatticeFillings;
use crate::tableaux::skew::gamma_of_word;
use crate::tableaux::{Partition, SkewShape};

/// Body/tail/head split of a form-A diagram. Column numbers are 1-based in
/// documentation, 0-based in the vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormADecomposition {
    pub p: usize,
    /// Last row (1-based) of the body.
    pub m: usize,
    pub body_boxes: usize,
    pub tail_height: usize,
    pub head_height: usize,
    /// Body boxes in each of the columns `1..=p-1`.
    pub body_column_heights: Vec<usize>,
}

/// Returns the decomposition if `shape` is of form A with `p` columns.
///
/// `m` is read off the outer partition: it is the common height of columns
/// `2..=p-1`. For `p = 2` there are no middle columns and `m` is the height
/// of column 1, so the whole first column is body.
pub fn classify_form_a(shape: &SkewShape, p: usize) -> Option<FormADecomposition> {
    if p < 2 {
        return None;
    }
    let outer = shape.outer();
    if outer.row(0) > p {
        return None;
    }
    let m = if p == 2 {
        outer.column_height(0)
    } else {
        let m = outer.column_height(1);
        if (2..p - 1).any(|c| outer.column_height(c) != m) {
            return None;
        }
        m
    };
    let body_column_heights: Vec<usize> = (0..p - 1)
        .map(|c| {
            let rows = shape.column_rows(c);
            rows.start.min(m)..rows.end.min(m)
        })
        .map(|r| r.len())
        .collect();
    let col1 = shape.column_rows(0);
    let tail_height = col1.end.saturating_sub(col1.start.max(m));
    Some(FormADecomposition {
        p,
        m,
        body_boxes: body_column_heights.iter().sum(),
        tail_height,
        head_height: shape.column_rows(p - 1).len(),
        body_column_heights,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundCheck {
    ColumnRepetition,
    EntryBound,
    GammaLower,
    GammaUpper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: BoundCheck,
    pub outer: Partition,
    pub inner: Partition,
    pub rows: Vec<Vec<u32>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormAReport {
    pub p: usize,
    pub max_boxes: usize,
    pub shapes_checked: u64,
    pub tableaux_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl FormAReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Default ceiling on the number of fillings examined by
/// [`verify_form_a_bounds`].
pub const DEFAULT_TABLEAU_CEILING: u64 = 200_000_000;

/// Checks the three bounds on every lattice filling of every form-A shape
/// with `p` columns and at most `max_boxes` boxes.
///
/// Shapes are taken up to translation: the first and last rows are
/// nonempty and no two consecutive rows are empty.
pub fn verify_form_a_bounds(
    p: usize,
    max_boxes: usize,
    tableau_ceiling: u64,
) -> Result<FormAReport> {
    if p < 3 {
        return Err(Error::InvalidInput(format!(
            "form-A bounds need p >= 3, got {p}"
        )));
    }
    let mut report = FormAReport {
        p,
        max_boxes,
        shapes_checked: 0,
        tableaux_checked: 0,
        counterexamples: Vec::new(),
    };
    for shape in form_a_shapes(p, max_boxes) {
        let decomposition = classify_form_a(&shape, p).expect("generated shapes are of form A");
        report.shapes_checked += 1;
        let mut over_ceiling = false;
        let _ = LatticeFillings::new(&shape, None).for_each(|rows, _| {
            report.tableaux_checked += 1;
            if report.tableaux_checked > tableau_ceiling {
                over_ceiling = true;
                return ControlFlow::Break(());
            }
            if let Some((check, detail)) = check_filling(&shape, &decomposition, rows) {
                report.counterexamples.push(Counterexample {
                    check,
                    outer: shape.outer().clone(),
                    inner: shape.inner().clone(),
                    rows: rows.to_vec(),
                    detail,
                });
            }
            ControlFlow::Continue(())
        });
        if over_ceiling {
            return Err(Error::ResourceLimit {
                what: "form-A tableau enumeration",
                limit: tableau_ceiling as usize,
            });
        }
    }
    Ok(report)
}

/// First violated bound of a single semistandard lattice filling, if any.
fn check_filling(
    shape: &SkewShape,
    dec: &FormADecomposition,
    rows: &[Vec<u32>],
) -> Option<(BoundCheck, String)> {
    let p = dec.p;
    let entry = |i: usize, j: usize| rows[i][j - shape.row_start(i)];
    let mut counts: Vec<usize> = Vec::new();
    for (i, j) in shape.reading_order() {
        let e = entry(i, j) as usize;
        if counts.len() < e {
            counts.resize(e, 0);
        }
        counts[e - 1] += 1;
        let in_body = i < dec.m && j < p - 1;
        if !in_body {
            continue;
        }
        let k = j + 1;
        if counts[e - 1] < p - k {
            return Some((
                BoundCheck::ColumnRepetition,
                format!(
                    "entry {e} at row {} column {k} seen {} < {} times",
                    i + 1,
                    counts[e - 1],
                    p - k
                ),
            ));
        }
        if k <= p - 2 {
            let h = i - shape.column_rows(j + 1).start + 1;
            if e > h {
                return Some((
                    BoundCheck::EntryBound,
                    format!(
                        "entry {e} at row {} column {k} exceeds right neighbour position {h}",
                        i + 1
                    ),
                ));
            }
        }
    }
    let word: Vec<u32> = shape.reading_order().map(|(i, j)| entry(i, j)).collect();
    for k in 1..p {
        let h = dec.body_column_heights[k - 1];
        let lower = gamma_of_word(&word, p - k);
        if lower < h {
            return Some((
                BoundCheck::GammaLower,
                format!("gamma_{} = {lower} < {h} (column {k})", p - k),
            ));
        }
        if k >= 2 {
            let upper = gamma_of_word(&word, p - k + 2);
            if upper > h {
                return Some((
                    BoundCheck::GammaUpper,
                    format!("gamma_{} = {upper} > {h} (column {k})", p - k + 2),
                ));
            }
        }
    }
    None
}

/// All form-A skew shapes with `p >= 3` columns and `1..=max_boxes` boxes,
/// normalised as described on [`verify_form_a_bounds`].
pub fn form_a_shapes(p: usize, max_boxes: usize) -> Vec<SkewShape> {
    let mut shapes = Vec::new();
    if max_boxes == 0 {
        return shapes;
    }
    let max_rows = 2 * max_boxes - 1;
    for m in 0..=max_rows {
        let full_rows = if m == 0 { 0..=0 } else { 0..=m };
        for j in full_rows {
            for t in 0..=(max_rows - m) {
                if m + t == 0 {
                    continue;
                }
                let outer = Partition::from_blocks(&[(p, j), (p - 1, m - j), (1, t)])
                    .expect("blocks are weakly decreasing");
                let mut inner = Vec::with_capacity(outer.len());
                extend_inner(&outer, max_boxes, &mut inner, 0, false, &mut shapes);
            }
        }
    }
    shapes
}

fn extend_inner(
    outer: &Partition,
    budget: usize,
    inner: &mut Vec<usize>,
    used: usize,
    prev_empty: bool,
    out: &mut Vec<SkewShape>,
) {
    let i = inner.len();
    if i == outer.len() {
        if !prev_empty {
            let inner = Partition::new(inner.clone()).expect("weakly decreasing by construction");
            out.push(SkewShape::new(outer.clone(), inner).expect("contained by construction"));
        }
        return;
    }
    let max_inner = outer
        .row(i)
        .min(inner.last().copied().unwrap_or(usize::MAX));
    for start in 0..=max_inner {
        let boxes = outer.row(i) - start;
        let empty = boxes == 0;
        if empty && (i == 0 || prev_empty) {
            continue;
        }
        if used + boxes > budget {
            continue;
        }
        inner.push(start);
        extend_inner(outer, budget, inner, used + boxes, empty, out);
        inner.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn figure_shapes() {
        let upper = SkewShape::new(p("5,5,4,4,4,1,1"), p("4,2,2,1")).unwrap();
        let dec = classify_form_a(&upper, 5).unwrap();
        assert_eq!(dec.m, 5);
        assert_eq!(dec.tail_height, 2);
        assert_eq!(dec.head_height, 2);
        assert_eq!(dec.body_column_heights, vec![1, 2, 4, 4]);
        assert_eq!(dec.body_boxes, 11);

        let lower = SkewShape::new(p("5,5,4,4,3,1,1"), p("4,2,2,1")).unwrap();
        assert_eq!(classify_form_a(&lower, 5), None);
    }

    #[test]
    fn too_wide_is_not_form_a() {
        let shape = SkewShape::straight(p("4,3"));
        assert_eq!(classify_form_a(&shape, 3), None);
        assert!(classify_form_a(&shape, 4).is_some());
    }

    #[test]
    fn single_column_degenerate_cases() {
        let column = SkewShape::straight(p("1,1,1"));
        let dec = classify_form_a(&column, 2).unwrap();
        assert_eq!(
            (dec.m, dec.body_boxes, dec.tail_height, dec.head_height),
            (3, 3, 0, 0)
        );
        // with middle columns absent from the outer shape, everything is tail
        let dec = classify_form_a(&column, 3).unwrap();
        assert_eq!((dec.m, dec.body_boxes, dec.tail_height), (0, 0, 3));
    }

    #[test]
    fn generated_shapes_are_form_a_and_bounded() {
        for shape in form_a_shapes(4, 5) {
            assert!(shape.size() >= 1 && shape.size() <= 5);
            assert!(classify_form_a(&shape, 4).is_some(), "{shape}");
            assert!(shape.row_len(0) > 0 && shape.row_len(shape.rows() - 1) > 0);
        }
        assert!(form_a_shapes(3, 0).is_empty());
    }

    #[test]
    fn zero_boxes_checks_nothing() {
        let report = verify_form_a_bounds(3, 0, DEFAULT_TABLEAU_CEILING).unwrap();
        assert_eq!((report.shapes_checked, report.tableaux_checked), (0, 0));
        assert!(report.passed());
    }

    #[test]
    fn small_exhaustive_runs_pass() {
        let report = verify_form_a_bounds(3, 8, DEFAULT_TABLEAU_CEILING).unwrap();
        assert!(report.shapes_checked > 0 && report.tableaux_checked > 0);
        assert!(report.passed(), "{:?}", report.counterexamples.first());
    }

    #[test]
    fn checker_detects_violations() {
        // reading word (2,1) is not lattice, so the repetition bound fails
        let shape = SkewShape::straight(p("2"));
        let dec = classify_form_a(&shape, 3).unwrap();
        let (check, _) = check_filling(&shape, &dec, &[vec![1, 2]]).unwrap();
        assert_eq!(check, BoundCheck::ColumnRepetition);
        assert_eq!(check_filling(&shape, &dec, &[vec![1, 1]]), None);
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(matches!(
            verify_form_a_bounds(3, 6, 10),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(verify_form_a_bounds(2, 6, 10).is_err());
    }
}
