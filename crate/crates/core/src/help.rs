//! Enumeration of partial augmentations that survive the HeLP constraints.
//!
//! Each constraint character turns the multiplicity formulas into affine
//! inequalities in the partial augmentations. The last class is eliminated
//! through `sum eps = 1`; the remaining free variables are bounded with
//! Fourier-Motzkin projections and scanned level by level. Every leaf is
//! checked exactly with the multiplicity functions, so the projections only
//! need to be valid outer bounds.

use std::collections::BTreeMap;

use crate::character::{
    chi_of_unit, is_prime, CharacterData, CharacterKind, ClassTable, PartialAugmentation,
};
use crate::error::{Error, Result};
use crate::multiplicities::{
    multiplicities_order_pq, multiplicities_prime_order, split_order, UnitCandidate,
};

pub const DEFAULT_BOUND: i64 = 128;

/// Projected systems larger than this are truncated; the scan stays exact
/// because leaves are rechecked.
const ROW_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct HelpQuery<'a> {
    pub unit_order: u64,
    pub characters: Vec<&'a CharacterData>,
    pub classes: &'a ClassTable,
    /// Box bound `B`: every partial augmentation satisfies `|eps| <= B`.
    pub bound: i64,
}

impl<'a> HelpQuery<'a> {
    pub fn new(
        unit_order: u64,
        characters: Vec<&'a CharacterData>,
        classes: &'a ClassTable,
    ) -> Self {
        HelpQuery {
            unit_order,
            characters,
            classes,
            bound: DEFAULT_BOUND,
        }
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        self.bound = bound;
        self
    }

    fn check(&self) -> Result<()> {
        if self.bound < 1 {
            return Err(Error::InvalidInput(format!(
                "search bound must be positive, got {}",
                self.bound
            )));
        }
        for chi in &self.characters {
            if let CharacterKind::Brauer(ell) = chi.kind {
                if self.unit_order.is_multiple_of(ell) {
                    return Err(Error::BrauerCharacteristic {
                        character: chi.id.clone(),
                        ell,
                        order: self.unit_order,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Candidates in canonical order together with the search diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet<T> {
    pub candidates: Vec<T>,
    pub bound: i64,
    /// Some candidate has an entry of absolute value `bound`, so a larger
    /// box might contain more.
    pub bound_saturated: bool,
    /// The real relaxation of the constraints is unbounded; the box alone
    /// limited the search.
    pub unbounded: bool,
}

impl<T> CandidateSet<T> {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// True when the set is known to contain every candidate.
    pub fn is_complete(&self) -> bool {
        !self.bound_saturated && !self.unbounded
    }
}

/// `a . v <= b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    a: Vec<i128>,
    b: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

enum Normalized {
    Row(Row),
    Trivial,
    Infeasible,
}

fn normalize(mut row: Row) -> Normalized {
    let g = row.a.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        return if row.b >= 0 {
            Normalized::Trivial
        } else {
            Normalized::Infeasible
        };
    }
    for x in &mut row.a {
        *x /= g;
    }
    row.b = row.b.div_euclid(g);
    Normalized::Row(row)
}

/// Inequality system over `n` integer variables; `None` when infeasible.
fn build_system(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: BTreeMap<Vec<i128>, i128> = BTreeMap::new();
    for row in rows {
        match normalize(row) {
            Normalized::Row(r) => {
                let entry = best.entry(r.a).or_insert(r.b);
                *entry = (*entry).min(r.b);
            }
            Normalized::Trivial => {}
            Normalized::Infeasible => return None,
        }
    }
    Some(best.into_iter().map(|(a, b)| Row { a, b }).collect())
}

fn eliminate(rows: &[Row], k: usize, extra: &[Row]) -> Option<Vec<Row>> {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for r in rows {
        match r.a[k].signum() {
            1 => pos.push(r),
            -1 => neg.push(r),
            _ => out.push(r.clone()),
        }
    }
    for p in &pos {
        for n in &neg {
            let (cp, cn) = (-n.a[k], p.a[k]);
            let a = p.a.iter().zip(&n.a).map(|(x, y)| cp * x + cn * y).collect();
            out.push(Row {
                a,
                b: cp * p.b + cn * n.b,
            });
        }
    }
    let mut sys = build_system(out)?;
    if sys.len() > ROW_CAP {
        sys.truncate(ROW_CAP);
        sys.extend(extra.iter().cloned());
        sys = build_system(sys)?;
    }
    Some(sys)
}

/// Bounds `lo <= v_i <= hi` implied by `rows` once `v_0..v_{i-1}` are fixed.
/// `None` for an empty range; missing sides are reported as `i128::MIN/MAX`.
fn level_bounds(rows: &[Row], prefix: &[i128]) -> Option<(i128, i128)> {
    let i = prefix.len();
    let (mut lo, mut hi) = (i128::MIN, i128::MAX);
    for r in rows {
        let rest = r.b
            - r.a[..i]
                .iter()
                .zip(prefix)
                .map(|(a, v)| a * v)
                .sum::<i128>();
        let c = r.a[i];
        if c == 0 {
            if rest < 0 {
                return None;
            }
        } else if c > 0 {
            hi = hi.min(rest.div_euclid(c));
        } else {
            lo = lo.max(-(rest.div_euclid(-c)));
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// An affine form `offset + coeffs . v` in the free variables.
#[derive(Clone, Debug)]
struct Affine {
    offset: i128,
    coeffs: Vec<i128>,
}

impl Affine {
    fn eval(&self, v: &[i128]) -> i128 {
        self.offset + self.coeffs.iter().zip(v).map(|(c, x)| c * x).sum::<i128>()
    }
}

/// `chi(u)` as an affine form in the first `k - 1` partial augmentations.
fn character_form(chi: &CharacterData, classes: &[String]) -> Result<Affine> {
    let values = classes
        .iter()
        .map(|c| {
            chi.value(c)
                .map(i128::from)
                .ok_or_else(|| Error::MissingClassValue {
                    character: chi.id.clone(),
                    class: c.clone(),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let last = *values.last().expect("at least one class");
    Ok(Affine {
        offset: last,
        coeffs: values[..values.len() - 1]
            .iter()
            .map(|v| v - last)
            .collect(),
    })
}

/// Lower bounds `alpha + beta * z >= 0` on the value `z` of a character.
struct Halfline {
    alpha: i128,
    beta: i128,
}

/// Search problem for a single partial augmentation vector over `classes`.
struct Scan<'a> {
    classes: &'a [String],
    forms: Vec<Affine>,
    halflines: Vec<Vec<Halfline>>,
    bound: i64,
}

struct ScanResult {
    points: Vec<Vec<i64>>,
    saturated: bool,
    unbounded: bool,
}

impl Scan<'_> {
    fn free(&self) -> usize {
        self.classes.len() - 1
    }

    fn rows(&self, with_box: bool) -> Vec<Row> {
        let mut rows = Vec::new();
        for (form, lines) in self.forms.iter().zip(&self.halflines) {
            for h in lines {
                // alpha + beta (offset + coeffs . v) >= 0
                rows.push(Row {
                    a: form.coeffs.iter().map(|c| -h.beta * c).collect(),
                    b: h.alpha + h.beta * form.offset,
                });
            }
        }
        if with_box {
            rows.extend(self.box_rows());
        }
        rows
    }

    fn box_rows(&self) -> Vec<Row> {
        let n = self.free();
        let b = i128::from(self.bound);
        let mut rows = Vec::new();
        for i in 0..n {
            let mut a = vec![0; n];
            a[i] = 1;
            rows.push(Row { a: a.clone(), b });
            a[i] = -1;
            rows.push(Row { a, b });
        }
        // the dependent entry 1 - sum v lies in [-B, B]
        rows.push(Row {
            a: vec![-1; n],
            b: b - 1,
        });
        rows.push(Row {
            a: vec![1; n],
            b: b + 1,
        });
        rows
    }

    /// Whether the real relaxation without the box is unbounded.
    fn relaxation_unbounded(&self) -> bool {
        let n = self.free();
        if n == 0 {
            return false;
        }
        let Some(base) = build_system(self.rows(false)) else {
            return false;
        };
        for keep in 0..n {
            let mut sys = base.clone();
            for k in (0..n).filter(|&k| k != keep) {
                match eliminate(&sys, k, &[]) {
                    Some(s) => sys = s,
                    None => return false,
                }
            }
            let has_upper = sys.iter().any(|r| r.a[keep] > 0);
            let has_lower = sys.iter().any(|r| r.a[keep] < 0);
            if !(has_upper && has_lower) {
                return true;
            }
        }
        false
    }

    fn run(&self, accept: &mut dyn FnMut(&[i128]) -> bool) -> ScanResult {
        let n = self.free();
        let unbounded = self.relaxation_unbounded();
        let mut result = ScanResult {
            points: Vec::new(),
            saturated: false,
            unbounded,
        };
        let Some(full) = build_system(self.rows(true)) else {
            return result;
        };
        let box_rows = self.box_rows();
        // systems[k] constrains v_0..v_{k-1} (the other coefficients are zero)
        let mut systems = vec![Vec::new(); n + 1];
        systems[n] = full;
        for k in (0..n).rev() {
            match eliminate(&systems[k + 1], k, &box_rows) {
                Some(s) => systems[k] = s,
                None => return result,
            }
        }
        let mut prefix = Vec::with_capacity(n + 1);
        self.descend(&systems, &mut prefix, accept, &mut result);
        result
    }

    fn descend(
        &self,
        systems: &[Vec<Row>],
        prefix: &mut Vec<i128>,
        accept: &mut dyn FnMut(&[i128]) -> bool,
        out: &mut ScanResult,
    ) {
        let n = self.free();
        if prefix.len() == n {
            let last = 1 - prefix.iter().sum::<i128>();
            prefix.push(last);
            if accept(prefix) {
                let point: Vec<i64> = prefix.iter().map(|&v| v as i64).collect();
                if point.iter().any(|v| v.abs() == self.bound) {
                    out.saturated = true;
                }
                out.points.push(point);
            }
            prefix.pop();
            return;
        }
        let Some((lo, hi)) = level_bounds(&systems[prefix.len() + 1], prefix) else {
            return;
        };
        for v in lo..=hi {
            prefix.push(v);
            self.descend(systems, prefix, accept, out);
            prefix.pop();
        }
    }
}

/// Every normalised partial augmentation vector of a unit of prime order `r`
/// on the classes of order `r`, in lexicographic order.
pub fn enumerate_prime_order(query: &HelpQuery<'_>) -> Result<CandidateSet<PartialAugmentation>> {
    query.check()?;
    let r = query.unit_order;
    if !is_prime(r) {
        return Err(Error::InvalidInput(format!("{r} is not prime")));
    }
    let classes = query.classes.of_order(r);
    if classes.is_empty() {
        return Err(Error::InvalidInput(format!("no classes of order {r}")));
    }
    let r128 = i128::from(r);
    let mut forms = Vec::new();
    let mut halflines = Vec::new();
    for chi in &query.characters {
        forms.push(character_form(chi, &classes)?);
        let d = i128::from(chi.degree);
        halflines.push(vec![
            Halfline {
                alpha: d,
                beta: r128 - 1,
            },
            Halfline { alpha: d, beta: -1 },
        ]);
    }
    let scan = Scan {
        classes: &classes,
        forms,
        halflines,
        bound: query.bound,
    };
    let mut failure = None;
    let mut accept = |v: &[i128]| {
        for (chi, form) in query.characters.iter().zip(&scan.forms) {
            // congruence before signs: d and chi(u) agree modulo r
            let z = form.eval(v);
            if (i128::from(chi.degree) - z).rem_euclid(r128) != 0 {
                return false;
            }
            match narrow(z).and_then(|z| multiplicities_prime_order(chi.degree, z, r)) {
                Ok(Ok(_)) => {}
                Ok(Err(_)) => return false,
                Err(e) => {
                    failure.get_or_insert(e);
                    return false;
                }
            }
        }
        true
    };
    let result = scan.run(&mut accept);
    if let Some(e) = failure {
        return Err(e);
    }
    let mut candidates = result
        .points
        .iter()
        .map(|p| PartialAugmentation::new(r, &classes, p))
        .collect::<Result<Vec<_>>>()?;
    candidates.sort_by_key(|c| c.values());
    candidates.dedup();
    Ok(CandidateSet {
        candidates,
        bound: query.bound,
        bound_saturated: result.saturated,
        unbounded: result.unbounded,
    })
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("character value of a unit"))
}

/// Every candidate for a unit of order `pq`. `powers_p` holds the candidates
/// for `u^q` (order `p`) and `powers_q` those for `u^p` (order `q`).
pub fn enumerate_order_pq(
    query: &HelpQuery<'_>,
    powers_p: &CandidateSet<PartialAugmentation>,
    powers_q: &CandidateSet<PartialAugmentation>,
) -> Result<CandidateSet<UnitCandidate>> {
    query.check()?;
    let (p, q) = split_order(query.unit_order)?;
    for (set, r) in [(powers_p, p), (powers_q, q)] {
        if let Some(bad) = set.candidates.iter().find(|c| c.unit_order != r) {
            return Err(Error::InvalidInput(format!(
                "power candidate {bad} has order {}, expected {r}",
                bad.unit_order
            )));
        }
    }
    let classes = query.classes.support_for(query.unit_order);
    let n = i128::from(p) * i128::from(q);
    let forms = query
        .characters
        .iter()
        .map(|chi| character_form(chi, &classes))
        .collect::<Result<Vec<_>>>()?;
    let mut candidates = Vec::new();
    let mut saturated = powers_p.bound_saturated || powers_q.bound_saturated;
    let mut unbounded = powers_p.unbounded || powers_q.unbounded;
    for pa_uq in &powers_p.candidates {
        for pa_up in &powers_q.candidates {
            let mut xy = Vec::new();
            let mut halflines = Vec::new();
            for chi in &query.characters {
                let x = chi_of_unit(chi, pa_up)?;
                let y = chi_of_unit(chi, pa_uq)?;
                let (d, xi, yi) = (i128::from(chi.degree), i128::from(x), i128::from(y));
                let (p1, q1) = (i128::from(p) - 1, i128::from(q) - 1);
                halflines.push(vec![
                    Halfline {
                        alpha: d + q1 * xi + p1 * yi,
                        beta: p1 * q1,
                    },
                    Halfline {
                        alpha: d + q1 * xi - yi,
                        beta: -q1,
                    },
                    Halfline {
                        alpha: d - xi + p1 * yi,
                        beta: -p1,
                    },
                    Halfline {
                        alpha: d - xi - yi,
                        beta: 1,
                    },
                ]);
                xy.push((x, y));
            }
            let scan = Scan {
                classes: &classes,
                forms: forms.clone(),
                halflines,
                bound: query.bound,
            };
            let mut failure = None;
            let mut accept = |v: &[i128]| {
                for ((chi, form), &(x, y)) in query.characters.iter().zip(&scan.forms).zip(&xy) {
                    let z = form.eval(v);
                    let d = i128::from(chi.degree);
                    if (d - i128::from(x) - i128::from(y) + z).rem_euclid(n) != 0 {
                        return false;
                    }
                    match narrow(z).and_then(|z| multiplicities_order_pq(chi.degree, x, y, z, p, q))
                    {
                        Ok(Ok(_)) => {}
                        Ok(Err(_)) => return false,
                        Err(e) => {
                            failure.get_or_insert(e);
                            return false;
                        }
                    }
                }
                true
            };
            let result = scan.run(&mut accept);
            if let Some(e) = failure {
                return Err(e);
            }
            saturated |= result.saturated;
            unbounded |= result.unbounded;
            for point in result.points {
                candidates.push(UnitCandidate {
                    p,
                    q,
                    pa_up: pa_up.clone(),
                    pa_uq: pa_uq.clone(),
                    pa_u: PartialAugmentation::new(query.unit_order, &classes, &point)?,
                });
            }
        }
    }
    candidates.sort_by_key(|c| c.sort_key());
    candidates.dedup();
    Ok(CandidateSet {
        candidates,
        bound: query.bound,
        bound_saturated: saturated,
        unbounded,
    })
}
