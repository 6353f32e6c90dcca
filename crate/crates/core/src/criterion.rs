//! Exclusion of unit candidates through a Brauer tree that is a line.
//!
//! Along a line `chi_1 - chi_2 - ... - chi_p` with `p` unramified, a unit
//! whose eigenvalue multiplicities are `s_i = mu(xi, u, chi_i)` and
//! `r_i = mu(xi * zeta_p, u, chi_i)` can only exist if
//!
//! ```text
//! r_{p-1} - r_p <= s_1 - sum_{i=1}^{p-2} (-1)^i r_i.
//! ```
//!
//! The inequality is the closed form of a search for chains of partitions
//! linked by nonvanishing Littlewood-Richardson coefficients. That search is
//! implemented here as well, for profiles small enough to run it.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::character::is_prime;
use crate::error::{Error, Result};
use crate::tableaux::{lr_nonzero, lr_nonzero_contents, Partition};

pub const DEFAULT_CHAIN_CEILING: usize = 40;

/// A Brauer tree that is a line, read from one end to the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerLine {
    pub id: String,
    pub prime: u64,
    pub characters: Vec<String>,
    /// Whether the prime is declared unramified in the character field.
    pub unramified: bool,
}

impl BrauerLine {
    pub fn problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        if !is_prime(self.prime) || self.prime == 2 {
            problems.push(format!(
                "line {}: {} is not an odd prime",
                self.id, self.prime
            ));
        }
        if self.characters.len() as u64 != self.prime {
            problems.push(format!(
                "line {} has {} characters but its prime is {}",
                self.id,
                self.characters.len(),
                self.prime
            ));
        }
        problems
    }
}

/// Multiplicities along a line: `s[i] = mu(xi)` and `r[i] = mu(xi * zeta_p)`
/// for the `i`-th character (0-based).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenvalueProfile {
    pub s: Vec<u64>,
    pub r: Vec<u64>,
}

impl EigenvalueProfile {
    pub fn new(s: Vec<u64>, r: Vec<u64>) -> Result<Self> {
        if s.len() != r.len() {
            return Err(Error::InvalidInput(format!(
                "profile has {} values of s but {} of r",
                s.len(),
                r.len()
            )));
        }
        Ok(EigenvalueProfile { s, r })
    }

    pub fn zero(len: usize) -> Self {
        EigenvalueProfile {
            s: vec![0; len],
            r: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityOutcome {
    pub lhs: i64,
    pub rhs: i64,
    /// `lhs > rhs`: no unit with this profile exists.
    pub violated: bool,
}

/// Evaluates the line inequality for `profile`.
pub fn check_line_inequality(
    profile: &EigenvalueProfile,
    line: &BrauerLine,
) -> Result<InequalityOutcome> {
    if !line.unramified {
        return Err(Error::InvalidInput(format!(
            "line {} is not declared unramified; the inequality does not apply",
            line.id
        )));
    }
    let p = line.prime as usize;
    if profile.len() != p || line.characters.len() != p || p < 3 {
        return Err(Error::InvalidInput(format!(
            "line {} needs a profile of length {p}, got {}",
            line.id,
            profile.len()
        )));
    }
    let r = |i: usize| i128::from(profile.r[i - 1]);
    let lhs = r(p - 1) - r(p);
    let alternating: i128 = (1..=p - 2)
        .map(|i| if i % 2 == 0 { r(i) } else { -r(i) })
        .sum();
    let rhs = i128::from(profile.s[0]) - alternating;
    let narrow = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("line inequality"));
    Ok(InequalityOutcome {
        lhs: narrow(lhs)?,
        rhs: narrow(rhs)?,
        violated: lhs > rhs,
    })
}

/// `(p^a, (p-1)^(r-a), 1^(s-a))`, the partition of a module with `r` copies
/// of `zeta` and `s` copies of `1` split as `a` blocks of dimension `p`.
pub fn module_partition(p: usize, r: usize, s: usize, a: usize) -> Result<Partition> {
    if a > r.min(s) {
        return Err(Error::InvalidInput(format!(
            "parameter a = {a} exceeds min({r}, {s})"
        )));
    }
    Partition::from_blocks(&[(p, a), (p - 1, r - a), (1, s - a)])
}

/// Parameters and partitions of a feasible chain. `a[i]` indexes the option
/// chosen for the `i`-th character and `mu` holds `mu_1..mu_{p-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainWitness {
    pub a: Vec<usize>,
    pub mu: Vec<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ChainStatus {
    Feasible {
        witness: ChainWitness,
    },
    Infeasible,
    /// Some partition exceeds the ceiling; the search was not run.
    SkippedSize {
        largest: u64,
        ceiling: u64,
    },
}

impl ChainStatus {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ChainStatus::Feasible { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ChainStatus::Feasible { .. } => "feasible",
            ChainStatus::Infeasible => "infeasible",
            ChainStatus::SkippedSize { .. } => "skipped (size)",
        }
    }
}

/// Chain search with memoised Littlewood-Richardson queries.
#[derive(Default)]
pub struct ChainSearch {
    contents: HashMap<(Partition, Partition), Rc<[Partition]>>,
    nonzero: HashMap<(Partition, Partition, Partition), bool>,
}

impl ChainSearch {
    pub fn new() -> Self {
        ChainSearch::default()
    }

    fn contents(&mut self, outer: &Partition, inner: &Partition) -> Rc<[Partition]> {
        self.contents
            .entry((outer.clone(), inner.clone()))
            .or_insert_with(|| lr_nonzero_contents(outer, inner).into())
            .clone()
    }

    fn nonzero(&mut self, outer: &Partition, inner: &Partition, content: &Partition) -> bool {
        *self
            .nonzero
            .entry((outer.clone(), inner.clone(), content.clone()))
            .or_insert_with(|| lr_nonzero(outer, inner, content))
    }

    /// Runs the chain search for a profile along a line of prime `p`.
    ///
    /// `lambda_i(a) = (p^a, (p-1)^(r_i-a), 1^(s_i-a))` for every admissible
    /// `a`; the chain starts at `mu_1 = lambda_1(a_1)` for any `a_1` and must
    /// end at `mu_{p-1} = lambda_p(a_p)`.
    pub fn feasibility(
        &mut self,
        profile: &EigenvalueProfile,
        p: usize,
        ceiling: usize,
    ) -> Result<ChainStatus> {
        if p < 3 || profile.len() != p {
            return Err(Error::InvalidInput(format!(
                "chain search needs p >= 3 and a profile of length p, got p = {p} and length {}",
                profile.len()
            )));
        }
        let sizes: Vec<u128> = (0..p)
            .map(|i| (p as u128 - 1) * u128::from(profile.r[i]) + u128::from(profile.s[i]))
            .collect();
        let largest = *sizes.iter().max().expect("p >= 3");
        if largest > ceiling as u128 {
            return Ok(ChainStatus::SkippedSize {
                largest: u64::try_from(largest).unwrap_or(u64::MAX),
                ceiling: ceiling as u64,
            });
        }
        // sizes along the chain are forced: |mu_i| = |lambda_i| - |mu_{i-1}|
        let mut size = sizes[0] as i128;
        for n in &sizes[1..p - 1] {
            size = *n as i128 - size;
            if size < 0 {
                return Ok(ChainStatus::Infeasible);
            }
        }
        if size != sizes[p - 1] as i128 {
            return Ok(ChainStatus::Infeasible);
        }
        let options = (0..p)
            .map(|i| {
                let (r, s) = (profile.r[i] as usize, profile.s[i] as usize);
                (0..=r.min(s))
                    .map(|a| module_partition(p, r, s, a))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.search(&options))
    }

    /// Chain search over explicit option sets: `options[i]` lists the
    /// candidates for `lambda_{i+1}`. Needs at least three option sets.
    pub fn feasibility_with_options(&mut self, options: &[Vec<Partition>]) -> Result<ChainStatus> {
        if options.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "a chain needs at least three partitions, got {}",
                options.len()
            )));
        }
        Ok(self.search(options))
    }

    fn search(&mut self, options: &[Vec<Partition>]) -> ChainStatus {
        let p = options.len();
        // layer[mu] = (a, parent mu) of the first way found to reach mu
        let mut layers: Vec<BTreeMap<Partition, (usize, Option<Partition>)>> =
            Vec::with_capacity(p - 1);
        layers.push(
            options[0]
                .iter()
                .enumerate()
                .map(|(a, lam)| (lam.clone(), (a, None)))
                .collect(),
        );
        for i in 1..p - 2 {
            let mut next = BTreeMap::new();
            let previous = layers.last().expect("first layer");
            let previous: Vec<Partition> = previous.keys().cloned().collect();
            for mu in &previous {
                for (a, lam) in options[i].iter().enumerate() {
                    if !lam.contains(mu) {
                        continue;
                    }
                    for nu in self.contents(lam, mu).iter() {
                        if !options[i + 1].iter().any(|l| l.contains(nu)) {
                            continue;
                        }
                        next.entry(nu.clone())
                            .or_insert_with(|| (a, Some(mu.clone())));
                    }
                }
            }
            if next.is_empty() {
                return ChainStatus::Infeasible;
            }
            layers.push(next);
        }
        let last: Vec<Partition> = layers
            .last()
            .expect("first layer")
            .keys()
            .cloned()
            .collect();
        for mu in &last {
            for (a, lam) in options[p - 2].iter().enumerate() {
                for (a_end, end) in options[p - 1].iter().enumerate() {
                    if lam.size() != mu.size() + end.size()
                        || !lam.contains(mu)
                        || !self.nonzero(lam, mu, end)
                    {
                        continue;
                    }
                    return ChainStatus::Feasible {
                        witness: rebuild(&layers, mu, a, end, a_end),
                    };
                }
            }
        }
        ChainStatus::Infeasible
    }
}

fn rebuild(
    layers: &[BTreeMap<Partition, (usize, Option<Partition>)>],
    last: &Partition,
    a_last: usize,
    end: &Partition,
    a_end: usize,
) -> ChainWitness {
    let mut mu = vec![end.clone(), last.clone()];
    let mut a = vec![a_end, a_last];
    let mut current = last.clone();
    for layer in layers.iter().rev() {
        let (choice, parent) = layer[&current].clone();
        a.push(choice);
        if let Some(parent) = parent {
            mu.push(parent.clone());
            current = parent;
        }
    }
    mu.reverse();
    a.reverse();
    ChainWitness { a, mu }
}

/// Checks every condition a witness must satisfy against the option sets.
pub fn verify_witness(witness: &ChainWitness, options: &[Vec<Partition>]) -> bool {
    let p = options.len();
    if witness.a.len() != p || witness.mu.len() != p - 1 {
        return false;
    }
    let lambda = |i: usize| options[i].get(witness.a[i]);
    let (Some(first), Some(end)) = (lambda(0), lambda(p - 1)) else {
        return false;
    };
    if witness.mu[0] != *first || witness.mu[p - 2] != *end {
        return false;
    }
    (1..p - 1).all(|i| {
        lambda(i)
            .is_some_and(|lam| crate::tableaux::lr_nonzero(lam, &witness.mu[i - 1], &witness.mu[i]))
    })
}

/// Option sets `lambda_i(a)` of a profile, as used by the chain search.
pub fn profile_options(profile: &EigenvalueProfile, p: usize) -> Result<Vec<Vec<Partition>>> {
    (0..profile.len())
        .map(|i| {
            let (r, s) = (profile.r[i] as usize, profile.s[i] as usize);
            (0..=r.min(s))
                .map(|a| module_partition(p, r, s, a))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub inequality: InequalityOutcome,
    pub chain: ChainStatus,
}

impl CrossCheck {
    /// A feasible chain with a violated inequality would contradict the
    /// derivation of the inequality.
    pub fn consistent(&self) -> bool {
        !(self.chain.is_feasible() && self.inequality.violated)
    }
}

pub fn cross_validate(
    search: &mut ChainSearch,
    profile: &EigenvalueProfile,
    line: &BrauerLine,
    ceiling: usize,
) -> Result<CrossCheck> {
    let inequality = check_line_inequality(profile, line)?;
    let chain = search.feasibility(profile, line.prime as usize, ceiling)?;
    Ok(CrossCheck { inequality, chain })
}

/// Summary of running [`cross_validate`] on every profile with entries in
/// `0..=max_entry`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidationReport {
    pub p: u64,
    pub max_entry: u64,
    pub profiles: u64,
    pub feasible: u64,
    pub violated: u64,
    pub skipped: u64,
    pub inconsistent: Vec<EigenvalueProfile>,
}

impl CrossValidationReport {
    pub fn passed(&self) -> bool {
        self.inconsistent.is_empty() && self.skipped == 0
    }
}

pub fn cross_validate_exhaustive(
    p: u64,
    max_entry: u64,
    ceiling: usize,
) -> Result<CrossValidationReport> {
    let line = BrauerLine {
        id: format!("line{p}"),
        prime: p,
        characters: (1..=p).map(|i| format!("chi{i}")).collect(),
        unramified: true,
    };
    if let Some(problem) = line.problems().into_iter().next() {
        return Err(Error::InvalidInput(problem));
    }
    let mut report = CrossValidationReport {
        p,
        max_entry,
        ..Default::default()
    };
    let mut search = ChainSearch::new();
    let n = 2 * p as usize;
    let mut digits = vec![0u64; n];
    loop {
        let profile = EigenvalueProfile {
            s: digits[..p as usize].to_vec(),
            r: digits[p as usize..].to_vec(),
        };
        let check = cross_validate(&mut search, &profile, &line, ceiling)?;
        report.profiles += 1;
        report.violated += u64::from(check.inequality.violated);
        match check.chain {
            ChainStatus::Feasible { .. } => report.feasible += 1,
            ChainStatus::SkippedSize { .. } => report.skipped += 1,
            ChainStatus::Infeasible => {}
        }
        if !check.consistent() {
            report.inconsistent.push(profile);
        }
        let Some(k) = digits.iter().position(|&d| d < max_entry) else {
            break;
        };
        digits[k] += 1;
        digits[..k].fill(0);
    }
    Ok(report)
}
