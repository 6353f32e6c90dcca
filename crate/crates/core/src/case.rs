//! Case files: the character data of a group together with the unit orders
//! to examine, and the reports produced by running them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::character::{
    is_prime, CharacterData, CharacterKind, ClassInfo, ClassTable, PartialAugmentation,
};
use crate::criterion::{
    check_line_inequality, BrauerLine, ChainSearch, ChainStatus, EigenvalueProfile,
    InequalityOutcome, DEFAULT_CHAIN_CEILING,
};
use crate::error::{Error, Result};
use crate::help::{
    enumerate_order_pq, enumerate_prime_order, CandidateSet, HelpQuery, DEFAULT_BOUND,
};
use crate::multiplicities::{
    split_order, Feasibility, MultiplicityQuadruple, UnitCandidate, Violation,
};

pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    group: String,
    #[serde(default)]
    provenance: String,
    classes: Vec<RawClass>,
    characters: Vec<RawCharacter>,
    #[serde(default)]
    brauer_lines: Vec<RawLine>,
    #[serde(default)]
    targets: Vec<Target>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    id: String,
    order: u64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCharacter {
    id: String,
    kind: String,
    #[serde(default)]
    characteristic: Option<u64>,
    degree: i64,
    values: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLine {
    id: String,
    prime: u64,
    characters: Vec<String>,
    unramified: bool,
}

/// A unit order to examine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Target {
    pub order: u64,
    /// Constraint characters for the enumeration.
    pub characters: Vec<String>,
    /// Brauer line used to exclude the surviving candidates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_count: Option<usize>,
    /// Candidate tuples in report order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_candidates: Option<Vec<Vec<i64>>>,
}

/// A validated case file.
#[derive(Clone, Debug)]
pub struct CaseFile {
    pub group: String,
    pub provenance: String,
    pub classes: ClassTable,
    pub characters: Vec<CharacterData>,
    pub brauer_lines: Vec<BrauerLine>,
    pub targets: Vec<Target>,
}

pub fn load_case(path: impl AsRef<Path>) -> Result<CaseFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_case(&text, &path.display().to_string())
}

/// Parses and validates case text; `origin` names the source in messages.
pub fn parse_case(text: &str, origin: &str) -> Result<CaseFile> {
    let raw: RawCase = toml::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_string(),
        message: e.to_string().trim_end().to_string(),
    })?;
    validate(raw)
}

fn validate(raw: RawCase) -> Result<CaseFile> {
    let mut problems = Vec::new();
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for c in &raw.classes {
        if !seen.insert(c.id.clone()) {
            problems.push(format!("duplicate class {:?}", c.id));
            continue;
        }
        if c.order == 0 {
            problems.push(format!("class {} has element order 0", c.id));
        }
        classes.push(ClassInfo {
            id: c.id.clone(),
            order: c.order,
        });
    }
    let identity: Vec<&ClassInfo> = classes.iter().filter(|c| c.order == 1).collect();
    if identity.len() != 1 {
        problems.push(format!(
            "expected exactly one class of element order 1, found {}",
            identity.len()
        ));
    }
    let identity = identity.first().map(|c| c.id.clone());
    let table = ClassTable::new(classes).expect("duplicates were skipped");

    let mut characters = Vec::new();
    let mut char_ids = BTreeSet::new();
    for c in &raw.characters {
        if !char_ids.insert(c.id.clone()) {
            problems.push(format!("duplicate character {:?}", c.id));
        }
        let kind = match (c.kind.as_str(), c.characteristic) {
            ("ordinary", None) => CharacterKind::Ordinary,
            ("ordinary", Some(_)) => {
                problems.push(format!(
                    "character {}: an ordinary character has no characteristic",
                    c.id
                ));
                CharacterKind::Ordinary
            }
            ("brauer", Some(ell)) if is_prime(ell) => CharacterKind::Brauer(ell),
            ("brauer", other) => {
                problems.push(format!(
                    "character {}: brauer characters need a prime characteristic, got {other:?}",
                    c.id
                ));
                CharacterKind::Ordinary
            }
            (other, _) => {
                problems.push(format!("character {}: unknown kind {other:?}", c.id));
                CharacterKind::Ordinary
            }
        };
        if c.degree < 1 {
            problems.push(format!("character {} has degree {}", c.id, c.degree));
        }
        for class in c.values.keys() {
            match table.get(class) {
                None => problems.push(format!(
                    "character {} has a value on undeclared class {class:?}",
                    c.id
                )),
                Some(info) => {
                    if let CharacterKind::Brauer(ell) = kind {
                        if info.order % ell == 0 {
                            problems.push(format!(
                                "character {} is {ell}-modular but has a value on class {class} of order {}",
                                c.id, info.order
                            ));
                        }
                    }
                }
            }
        }
        match identity.as_ref().map(|id| c.values.get(id)) {
            Some(Some(&v)) if v != c.degree => problems.push(format!(
                "character {}: value {v} at the identity differs from degree {}",
                c.id, c.degree
            )),
            Some(None) => problems.push(format!("character {} has no value at the identity", c.id)),
            _ => {}
        }
        characters.push(CharacterData {
            id: c.id.clone(),
            degree: c.degree,
            kind,
            values: c.values.clone(),
        });
    }

    let mut lines = Vec::new();
    let mut line_ids = BTreeSet::new();
    for l in &raw.brauer_lines {
        if !line_ids.insert(l.id.clone()) {
            problems.push(format!("duplicate brauer line {:?}", l.id));
        }
        let line = BrauerLine {
            id: l.id.clone(),
            prime: l.prime,
            characters: l.characters.clone(),
            unramified: l.unramified,
        };
        problems.extend(line.problems());
        for c in &l.characters {
            match characters.iter().find(|x| &x.id == c) {
                None => problems.push(format!(
                    "line {} references undeclared character {c:?}",
                    l.id
                )),
                Some(x) if x.kind != CharacterKind::Ordinary => problems.push(format!(
                    "line {} contains the non-ordinary character {c}",
                    l.id
                )),
                _ => {}
            }
        }
        lines.push(line);
    }

    let mut orders = BTreeSet::new();
    for t in &raw.targets {
        if !orders.insert(t.order) {
            problems.push(format!("duplicate target for order {}", t.order));
        }
        problems.extend(target_problems(t, &table, &characters, &lines));
    }

    if !problems.is_empty() {
        return Err(Error::Validation(problems));
    }
    Ok(CaseFile {
        group: raw.group,
        provenance: raw.provenance,
        classes: table,
        characters,
        brauer_lines: lines,
        targets: raw.targets,
    })
}

fn target_problems(
    t: &Target,
    table: &ClassTable,
    characters: &[CharacterData],
    lines: &[BrauerLine],
) -> Vec<String> {
    let mut problems = Vec::new();
    let n = t.order;
    let prime = is_prime(n);
    let pq = split_order(n).ok();
    if !prime && pq.is_none() {
        problems.push(format!(
            "target order {n} is neither prime nor a product of two distinct primes"
        ));
        return problems;
    }
    for c in &t.characters {
        match characters.iter().find(|x| &x.id == c) {
            None => problems.push(format!("target {n} references undeclared character {c:?}")),
            Some(x) => {
                if !x.applies_to_order(n) {
                    problems.push(format!(
                        "target {n}: character {c} cannot be evaluated on units of order {n}"
                    ));
                }
            }
        }
    }
    for r in pq.map_or_else(|| vec![n], |(p, q)| vec![p, q]) {
        if table.of_order(r).is_empty() {
            problems.push(format!("target {n}: no classes of order {r}"));
        }
    }
    if let Some(id) = &t.line {
        match lines.iter().find(|l| &l.id == id) {
            None => problems.push(format!("target {n} references undeclared line {id:?}")),
            Some(l) => match pq {
                Some((p, q)) if l.prime == p || l.prime == q => {}
                _ => problems.push(format!(
                    "target {n}: line {id} has prime {} not dividing a mixed order",
                    l.prime
                )),
            },
        }
    }
    if let Some(expected) = &t.expected_candidates {
        if let Some(count) = t.expected_count {
            if count != expected.len() {
                problems.push(format!(
                    "target {n}: expected_count {count} disagrees with {} expected candidates",
                    expected.len()
                ));
            }
        }
        for tuple in expected {
            let found = if prime {
                PartialAugmentation::new(n, &table.of_order(n), tuple).map(|pa| pa.problems(table))
            } else {
                UnitCandidate::from_tuple(table, n, tuple).map(|c| c.problems(table))
            };
            match found {
                Ok(list) => problems.extend(
                    list.into_iter()
                        .map(|m| format!("target {n}: candidate {tuple:?}: {m}")),
                ),
                Err(e) => problems.push(format!("target {n}: candidate {tuple:?}: {e}")),
            }
        }
    }
    problems
}

impl CaseFile {
    pub fn character(&self, id: &str) -> Result<&CharacterData> {
        self.characters
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::unknown("character", id))
    }

    pub fn line(&self, id: &str) -> Result<&BrauerLine> {
        self.brauer_lines
            .iter()
            .find(|l| l.id == id)
            .ok_or_else(|| Error::unknown("brauer line", id))
    }

    pub fn target(&self, order: u64) -> Result<&Target> {
        self.targets
            .iter()
            .find(|t| t.order == order)
            .ok_or_else(|| Error::unknown("target order", order.to_string()))
    }

    fn characters_of(&self, ids: &[String]) -> Result<Vec<&CharacterData>> {
        ids.iter().map(|id| self.character(id)).collect()
    }

    /// Labels of the entries of a candidate tuple of a unit of order `n`.
    pub fn tuple_layout(&self, n: u64) -> Result<Vec<String>> {
        if is_prime(n) {
            return Ok(self
                .classes
                .of_order(n)
                .iter()
                .map(|c| format!("eps_{c}(u)"))
                .collect());
        }
        let (p, q) = split_order(n)?;
        let mut out = Vec::new();
        for (r, power) in [(p, q), (q, p)] {
            let classes = self.classes.of_order(r);
            if classes.len() > 1 {
                out.extend(classes.iter().map(|c| format!("eps_{c}(u^{power})")));
            }
        }
        out.extend(
            self.classes
                .support_for(n)
                .iter()
                .map(|c| format!("eps_{c}(u)")),
        );
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunSettings {
    pub bound: i64,
    pub chain_ceiling: usize,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            bound: DEFAULT_BOUND,
            chain_ceiling: DEFAULT_CHAIN_CEILING,
        }
    }
}

/// Enumerates the candidates of a prime-order target, or of the powers of a
/// mixed-order target when no target for that prime is declared.
pub fn prime_candidates(
    case: &CaseFile,
    r: u64,
    fallback: &[String],
    settings: &RunSettings,
) -> Result<(Vec<String>, CandidateSet<PartialAugmentation>)> {
    let ids: Vec<String> = match case.target(r) {
        Ok(t) => t.characters.clone(),
        Err(_) => fallback
            .iter()
            .filter(|id| case.character(id).is_ok_and(|c| c.applies_to_order(r)))
            .cloned()
            .collect(),
    };
    let chars = case.characters_of(&ids)?;
    let set =
        enumerate_prime_order(&HelpQuery::new(r, chars, &case.classes).with_bound(settings.bound))?;
    Ok((ids, set))
}

pub fn enumerate_target(
    case: &CaseFile,
    order: u64,
    characters: &[String],
    settings: &RunSettings,
) -> Result<TargetEnumeration> {
    let chars = case.characters_of(characters)?;
    let query = HelpQuery::new(order, chars, &case.classes).with_bound(settings.bound);
    if is_prime(order) {
        let set = enumerate_prime_order(&query)?;
        return Ok(TargetEnumeration::Prime(set));
    }
    let (p, q) = split_order(order)?;
    let (_, powers_p) = prime_candidates(case, p, characters, settings)?;
    let (_, powers_q) = prime_candidates(case, q, characters, settings)?;
    Ok(TargetEnumeration::Mixed(enumerate_order_pq(
        &query, &powers_p, &powers_q,
    )?))
}

/// Result of a standalone enumeration with an explicit character set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub format_version: u32,
    pub group: String,
    pub order: u64,
    pub characters: Vec<String>,
    pub tuple_layout: Vec<String>,
    pub bound: i64,
    pub complete: bool,
    pub candidate_count: usize,
    pub candidates: Vec<Vec<i64>>,
}

pub fn enumeration_report(
    case: &CaseFile,
    order: u64,
    characters: &[String],
    settings: &RunSettings,
) -> Result<EnumerationReport> {
    let found = enumerate_target(case, order, characters, settings)?;
    let candidates = found.tuples();
    Ok(EnumerationReport {
        format_version: REPORT_FORMAT_VERSION,
        group: case.group.clone(),
        order,
        characters: characters.to_vec(),
        tuple_layout: case.tuple_layout(order)?,
        bound: settings.bound,
        complete: found.complete(),
        candidate_count: candidates.len(),
        candidates,
    })
}

impl EnumerationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group {}, units of order {}", self.group, self.order);
        let _ = writeln!(out, "constraint characters: {}", self.characters.join(", "));
        let _ = writeln!(
            out,
            "search bound {}: {}",
            self.bound,
            if self.complete {
                "complete"
            } else {
                "incomplete (bound saturated or constraints unbounded)"
            }
        );
        let _ = writeln!(out, "tuple layout: ({})", self.tuple_layout.join(", "));
        let _ = writeln!(out, "{} candidate(s)", self.candidate_count);
        for (i, c) in self.candidates.iter().enumerate() {
            let _ = writeln!(out, "{:>5}. {}", i + 1, tuple_text(c));
        }
        out
    }

    pub fn to_structured(&self) -> Result<String> {
        toml::to_string(self)
            .map_err(|e| Error::InvalidInput(format!("cannot serialise report: {e}")))
    }
}

pub enum TargetEnumeration {
    Prime(CandidateSet<PartialAugmentation>),
    Mixed(CandidateSet<UnitCandidate>),
}

impl TargetEnumeration {
    pub fn tuples(&self) -> Vec<Vec<i64>> {
        match self {
            TargetEnumeration::Prime(s) => s.candidates.iter().map(|c| c.values()).collect(),
            TargetEnumeration::Mixed(s) => s.candidates.iter().map(|c| c.tuple()).collect(),
        }
    }

    pub fn complete(&self) -> bool {
        match self {
            TargetEnumeration::Prime(s) => s.is_complete(),
            TargetEnumeration::Mixed(s) => s.is_complete(),
        }
    }
}

/// Multiplicities of one character of the line under one candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRow {
    pub character: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<MultiplicityQuadruple>,
    /// Set when the character itself rules the candidate out.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Excluded,
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub tuple: Vec<i64>,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<LineRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequality: Option<InequalityOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainStatus>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// No unit of this order exists.
    Excluded,
    /// Some candidate survives, or the search was not known to be complete.
    Undecided,
    /// Prime-order targets only list their candidates.
    Listed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSummary {
    pub id: String,
    pub prime: u64,
    pub unramified: bool,
    pub characters: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetReport {
    pub order: u64,
    pub characters: Vec<String>,
    /// Constraint characters used for the prime-order powers.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub power_characters: BTreeMap<String, Vec<String>>,
    pub tuple_layout: Vec<String>,
    pub bound: i64,
    pub bound_saturated: bool,
    pub unbounded: bool,
    pub candidate_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<LineSummary>,
    pub candidates: Vec<CandidateReport>,
    pub conclusion: Conclusion,
    pub summary: String,
    /// Whether the candidates match those declared in the case file; absent
    /// when nothing was declared.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation_met: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub format_version: u32,
    pub group: String,
    pub provenance: String,
    pub bound: i64,
    pub chain_ceiling: u64,
    pub targets: Vec<TargetReport>,
}

impl CaseReport {
    pub fn new(case: &CaseFile, settings: &RunSettings) -> Self {
        CaseReport {
            format_version: REPORT_FORMAT_VERSION,
            group: case.group.clone(),
            provenance: case.provenance.clone(),
            bound: settings.bound,
            chain_ceiling: settings.chain_ceiling as u64,
            targets: Vec::new(),
        }
    }

    pub fn all_excluded(&self) -> bool {
        self.targets
            .iter()
            .all(|t| t.conclusion != Conclusion::Undecided)
    }

    pub fn expectations_met(&self) -> bool {
        self.targets
            .iter()
            .all(|t| t.expectation_met != Some(false))
    }
}

/// The line rows of `candidate`, in line order.
pub fn line_rows(
    case: &CaseFile,
    line: &BrauerLine,
    candidate: &UnitCandidate,
) -> Result<Vec<LineRow>> {
    line.characters
        .iter()
        .map(|id| {
            let chi = case.character(id)?;
            let row = match candidate.quadruple(chi)? {
                Ok(m) => LineRow {
                    character: id.clone(),
                    multiplicities: Some(m),
                    violation: None,
                },
                Err(v) => LineRow {
                    character: id.clone(),
                    multiplicities: None,
                    violation: Some(v.to_string()),
                },
            };
            Ok(row)
        })
        .collect()
}

/// `s_i = mu(1)` and `r_i = mu(zeta_l)` along the line, if every character
/// admits the candidate.
pub fn line_profile(
    rows: &[LineRow],
    line: &BrauerLine,
    candidate: &UnitCandidate,
) -> Option<EigenvalueProfile> {
    let mut s = Vec::new();
    let mut r = Vec::new();
    for row in rows {
        let m = row.multiplicities?;
        s.push(m.mu_1 as u64);
        r.push(m.mu_zeta(line.prime, candidate.p, candidate.q)? as u64);
    }
    Some(EigenvalueProfile { s, r })
}

pub fn run_target(case: &CaseFile, order: u64, settings: &RunSettings) -> Result<TargetReport> {
    let target = case.target(order)?;
    let tuple_layout = case.tuple_layout(order)?;
    let chars = case.characters_of(&target.characters)?;
    let query = HelpQuery::new(order, chars, &case.classes).with_bound(settings.bound);
    let mut report = TargetReport {
        order,
        characters: target.characters.clone(),
        power_characters: BTreeMap::new(),
        tuple_layout,
        bound: settings.bound,
        bound_saturated: false,
        unbounded: false,
        candidate_count: 0,
        line: None,
        candidates: Vec::new(),
        conclusion: Conclusion::Listed,
        summary: String::new(),
        expectation_met: None,
    };

    if is_prime(order) {
        let set = enumerate_prime_order(&query)?;
        report.bound_saturated = set.bound_saturated;
        report.unbounded = set.unbounded;
        report.candidate_count = set.len();
        report.candidates = set
            .candidates
            .iter()
            .map(|c| CandidateReport {
                tuple: c.values(),
                verdict: Verdict::Open,
                reasons: Vec::new(),
                rows: Vec::new(),
                inequality: None,
                chain: None,
            })
            .collect();
        report.summary = format!(
            "{} candidate(s) for units of order {order}{}",
            set.len(),
            if set.is_complete() {
                ""
            } else {
                " (search incomplete)"
            }
        );
    } else {
        let (p, q) = split_order(order)?;
        let (ids_p, powers_p) = prime_candidates(case, p, &target.characters, settings)?;
        let (ids_q, powers_q) = prime_candidates(case, q, &target.characters, settings)?;
        report.power_characters.insert(p.to_string(), ids_p);
        report.power_characters.insert(q.to_string(), ids_q);
        let set = enumerate_order_pq(&query, &powers_p, &powers_q)?;
        report.bound_saturated = set.bound_saturated;
        report.unbounded = set.unbounded;
        report.candidate_count = set.len();
        let line = target.line.as_deref().map(|id| case.line(id)).transpose()?;
        report.line = line.map(|l| LineSummary {
            id: l.id.clone(),
            prime: l.prime,
            unramified: l.unramified,
            characters: l.characters.clone(),
        });
        let mut search = ChainSearch::new();
        for candidate in &set.candidates {
            report
                .candidates
                .push(judge(case, line, candidate, &mut search, settings)?);
        }
        let all_excluded = report
            .candidates
            .iter()
            .all(|c| c.verdict == Verdict::Excluded);
        report.conclusion = if set.is_complete() && all_excluded {
            Conclusion::Excluded
        } else {
            Conclusion::Undecided
        };
        report.summary = match report.conclusion {
            Conclusion::Excluded => format!("no units of order {order}"),
            _ if !set.is_complete() => {
                format!("undecided: the search for units of order {order} is incomplete")
            }
            _ => format!(
                "undecided: {} candidate(s) of order {order} remain",
                report
                    .candidates
                    .iter()
                    .filter(|c| c.verdict == Verdict::Open)
                    .count()
            ),
        };
    }

    let tuples: Vec<Vec<i64>> = report.candidates.iter().map(|c| c.tuple.clone()).collect();
    let mut met = None;
    if let Some(count) = target.expected_count {
        met = Some(count == tuples.len());
    }
    if let Some(expected) = &target.expected_candidates {
        met = Some(met.unwrap_or(true) && expected == &tuples);
    }
    report.expectation_met = met;
    Ok(report)
}

fn judge(
    case: &CaseFile,
    line: Option<&BrauerLine>,
    candidate: &UnitCandidate,
    search: &mut ChainSearch,
    settings: &RunSettings,
) -> Result<CandidateReport> {
    let mut out = CandidateReport {
        tuple: candidate.tuple(),
        verdict: Verdict::Open,
        reasons: Vec::new(),
        rows: Vec::new(),
        inequality: None,
        chain: None,
    };
    let Some(line) = line else {
        out.reasons.push("no brauer line configured".into());
        return Ok(out);
    };
    out.rows = line_rows(case, line, candidate)?;
    for row in &out.rows {
        if let Some(v) = &row.violation {
            out.reasons
                .push(format!("{} admits no such unit: {v}", row.character));
        }
    }
    if let Some(profile) = line_profile(&out.rows, line, candidate) {
        if line.unramified {
            let outcome = check_line_inequality(&profile, line)?;
            if outcome.violated {
                out.reasons.push(format!(
                    "line inequality violated: {} > {}",
                    outcome.lhs, outcome.rhs
                ));
            }
            out.inequality = Some(outcome);
        } else {
            out.reasons
                .push(format!("line {} is not declared unramified", line.id));
        }
        let chain = search.feasibility(&profile, line.prime as usize, settings.chain_ceiling)?;
        if chain == ChainStatus::Infeasible {
            out.reasons
                .push("no chain of modules along the line".into());
        }
        out.chain = Some(chain);
    }
    let excluded = out.rows.iter().any(|r| r.violation.is_some())
        || out.inequality.is_some_and(|o| o.violated)
        || out.chain == Some(ChainStatus::Infeasible);
    if excluded {
        out.verdict = Verdict::Excluded;
    }
    Ok(out)
}

/// Runs the given target, or every target in declaration order.
pub fn run_case(case: &CaseFile, order: Option<u64>, settings: &RunSettings) -> Result<CaseReport> {
    let mut report = CaseReport::new(case, settings);
    match order {
        Some(n) => report.targets.push(run_target(case, n, settings)?),
        None => {
            for t in &case.targets {
                report.targets.push(run_target(case, t.order, settings)?);
            }
        }
    }
    Ok(report)
}

/// Line character ids with their multiplicities under one candidate.
pub type CandidateRows = Vec<(String, Feasibility<MultiplicityQuadruple>)>;

/// Multiplicity quadruples of every line character under one candidate.
pub fn candidate_table(
    case: &CaseFile,
    order: u64,
    tuple: &[i64],
) -> Result<(BrauerLine, UnitCandidate, CandidateRows)> {
    let target = case.target(order)?;
    let line_id = target
        .line
        .as_deref()
        .ok_or_else(|| Error::InvalidInput(format!("target {order} has no brauer line")))?;
    let line = case.line(line_id)?.clone();
    let candidate = UnitCandidate::from_tuple(&case.classes, order, tuple)?;
    candidate.validate(&case.classes)?;
    let rows = line
        .characters
        .iter()
        .map(|id| Ok((id.clone(), candidate.quadruple(case.character(id)?)?)))
        .collect::<Result<
            Vec<(
                String,
                std::result::Result<MultiplicityQuadruple, Violation>,
            )>,
        >>()?;
    Ok((line, candidate, rows))
}

pub fn to_structured(report: &CaseReport) -> Result<String> {
    toml::to_string(report)
        .map_err(|e| Error::InvalidInput(format!("cannot serialise report: {e}")))
}

pub fn from_structured(text: &str) -> Result<CaseReport> {
    let report: CaseReport = toml::from_str(text).map_err(|e| Error::Parse {
        path: "report".into(),
        message: e.to_string(),
    })?;
    if report.format_version != REPORT_FORMAT_VERSION {
        return Err(Error::Parse {
            path: "report".into(),
            message: format!(
                "format_version {} is not supported (expected {REPORT_FORMAT_VERSION})",
                report.format_version
            ),
        });
    }
    Ok(report)
}

fn tuple_text(t: &[i64]) -> String {
    let parts: Vec<String> = t.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Plain text rendering; line tables put characters in rows and one
/// `mu(1)`, `mu(zeta)` column pair under each candidate.
pub fn to_text(report: &CaseReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group {}", report.group);
    let _ = writeln!(
        out,
        "search bound {}, chain ceiling {} boxes",
        report.bound, report.chain_ceiling
    );
    for t in &report.targets {
        let _ = writeln!(out);
        let _ = writeln!(out, "units of order {}", t.order);
        let _ = writeln!(out, "  constraint characters: {}", t.characters.join(", "));
        for (r, ids) in &t.power_characters {
            let _ = writeln!(out, "  order {r} powers from: {}", ids.join(", "));
        }
        let status = match (t.bound_saturated, t.unbounded) {
            (false, false) => "complete".to_string(),
            (true, false) => "bound saturated".to_string(),
            (false, true) => "constraints unbounded".to_string(),
            (true, true) => "bound saturated, constraints unbounded".to_string(),
        };
        let _ = writeln!(out, "  search: {status}");
        let _ = writeln!(out, "  tuple layout: ({})", t.tuple_layout.join(", "));
        let _ = writeln!(out, "  {} candidate(s)", t.candidate_count);
        for (i, c) in t.candidates.iter().enumerate() {
            let _ = writeln!(out, "  {:>4}. {}", i + 1, tuple_text(&c.tuple));
        }
        if let Some(line) = &t.line {
            if !t.candidates.is_empty() {
                write_line_table(&mut out, t, line);
            }
        }
        let _ = writeln!(out, "  conclusion: {}", t.summary);
        match t.expectation_met {
            Some(true) => {
                let _ = writeln!(out, "  matches the declared candidates");
            }
            Some(false) => {
                let _ = writeln!(out, "  DOES NOT match the declared candidates");
            }
            None => {}
        }
    }
    out
}

fn write_line_table(out: &mut String, t: &TargetReport, line: &LineSummary) {
    let zeta = format!("mu(z{})", line.prime);
    let _ = writeln!(
        out,
        "  line {} (p = {}): {}",
        line.id,
        line.prime,
        line.characters.join(" - ")
    );
    let width = line
        .characters
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max(9);
    let cell = 11;
    let _ = write!(out, "  {:width$}", "candidate");
    for i in 0..t.candidates.len() {
        let _ = write!(out, " {:>w$}", format!("#{}", i + 1), w = 2 * cell + 1);
    }
    let _ = writeln!(out);
    let _ = write!(out, "  {:width$}", "character");
    for _ in &t.candidates {
        let _ = write!(out, " {:>cell$} {:>cell$}", "mu(1)", zeta);
    }
    let _ = writeln!(out);
    for (k, id) in line.characters.iter().enumerate() {
        let _ = write!(out, "  {id:width$}");
        for c in &t.candidates {
            match c.rows.get(k).and_then(|r| r.multiplicities) {
                Some(m) => {
                    let zeta_value = if line.prime == c_p(t) {
                        m.mu_zp
                    } else {
                        m.mu_zq
                    };
                    let _ = write!(out, " {:>cell$} {:>cell$}", m.mu_1, zeta_value);
                }
                None => {
                    let _ = write!(out, " {:>cell$} {:>cell$}", "-", "-");
                }
            }
        }
        let _ = writeln!(out);
    }
    for (i, c) in t.candidates.iter().enumerate() {
        let ineq = match &c.inequality {
            Some(o) => format!(
                "{} <= {} {}",
                o.lhs,
                o.rhs,
                if o.violated { "violated" } else { "holds" }
            ),
            None => "not evaluated".into(),
        };
        let chain = c.chain.as_ref().map_or("not run", ChainStatus::label);
        let verdict = match c.verdict {
            Verdict::Excluded => "excluded",
            Verdict::Open => "open",
        };
        let _ = writeln!(
            out,
            "  #{}: inequality {ineq}; chain search {chain}; {verdict}",
            i + 1
        );
    }
}

fn c_p(t: &TargetReport) -> u64 {
    split_order(t.order).map_or(0, |(p, _)| p)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
group = "toy"
provenance = "made up"

[[classes]]
id = "1a"
order = 1

[[classes]]
id = "3a"
order = 3

[[characters]]
id = "one"
kind = "ordinary"
degree = 1
values = { "1a" = 1, "3a" = 1 }

[[targets]]
order = 3
characters = ["one"]
expected_candidates = [[1]]
"#;

    #[test]
    fn small_case_runs() {
        let case = parse_case(SMALL, "small").unwrap();
        let report = run_case(&case, None, &RunSettings::default()).unwrap();
        assert_eq!(report.targets[0].candidate_count, 1);
        assert_eq!(report.targets[0].expectation_met, Some(true));
        let text = to_structured(&report).unwrap();
        assert_eq!(from_structured(&text).unwrap(), report);
    }

    #[test]
    fn empty_text_is_a_parse_error() {
        assert!(matches!(parse_case("", "empty"), Err(Error::Parse { .. })));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_case("group = \"x\"\nclasses = [\n", "broken")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line"), "{err}");
    }

    #[test]
    fn validation_lists_every_problem() {
        let bad = SMALL
            .replace("expected_candidates = [[1]]", "expected_candidates = [[2]]")
            .replace("degree = 1", "degree = 2");
        match parse_case(&bad, "bad") {
            Err(Error::Validation(list)) => assert_eq!(list.len(), 2, "{list:?}"),
            other => panic!("{other:?}"),
        }
    }
}
