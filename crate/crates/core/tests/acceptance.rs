//! Acceptance suite. Prints one PASS/FAIL line per criterion, with indented
//! detail lines, and exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{eigenvalue_sums, fixture, lr_brute_force, partitions_of};
use pqunits::case::{
    enumerate_target, load_case, run_target, CaseFile, RunSettings, TargetReport, Verdict,
};
use pqunits::criterion::{check_line_inequality, cross_validate_exhaustive, EigenvalueProfile};
use pqunits::multiplicities::{
    forward_character_values, multiplicities_order_pq, MultiplicityQuadruple,
};
use pqunits::tableaux::{lr_coefficient, verify_form_a_bounds, Partition, DEFAULT_TABLEAU_CEILING};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const ORDER_35_TUPLES: [[i64; 5]; 2] = [[-4, 5, 3, 12, -14], [-3, 4, 4, 11, -14]];

const ORDER_55_TUPLES: [[i64; 7]; 4] = [
    [1, 5, -5, 1, -6, -5, 11],
    [1, 6, -6, 1, -5, -6, 11],
    [2, 6, -7, 2, -5, -7, 11],
    [2, 7, -8, 2, -4, -8, 11],
];

/// Published multiplicity columns of the order-35 tables: `mu(1)` of the
/// first line character, then `mu(zeta_5)` down the line.
const CO3_TABLE: [[i64; 6]; 2] = [
    [33, 2, 2119, 7029, 5071, 104],
    [29, 3, 2118, 7030, 5070, 105],
];
const CO2_TABLE: [[i64; 6]; 2] = [
    [33, 2, 3269, 13354, 11396, 1254],
    [29, 3, 3268, 13355, 11395, 1255],
];

/// Published order-55 columns: `mu(1)` of the trivial character, then the
/// eleven entries headed `mu(zeta_11)` down the line.
const CO1_TABLE: [[i64; 12]; 4] = [
    [
        1, 0, 5668, 138600, 391385, 1929876, 4495195, 5326485, 3734505, 1522180, 297293, 6885,
    ],
    [
        1, 0, 5670, 138600, 391385, 1929870, 4495195, 5326495, 3734505, 1522180, 297285, 6875,
    ],
    [
        1, 0, 5638, 138520, 391350, 1929856, 4495195, 5326570, 3734540, 1522180, 297303, 6880,
    ],
    [
        1, 0, 5640, 138520, 391350, 1929850, 4495195, 5326580, 3734540, 1522180, 297295, 6870,
    ],
];
const CO1_INEQUALITIES: [(i64, i64); 4] = [
    (290408, 290389),
    (290410, 290391),
    (290423, 290304),
    (290425, 290306),
];

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            summary: String::new(),
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.passed &= ok;
        self.details.push(format!(
            "{} {}",
            if ok { "ok  " } else { "FAIL" },
            what.into()
        ));
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("     {}", what.into()));
    }
}

fn load(name: &str) -> CaseFile {
    load_case(fixture(name)).unwrap_or_else(|e| panic!("cannot load {name}: {e}"))
}

fn quadruples(report: &TargetReport, candidate: usize) -> Vec<MultiplicityQuadruple> {
    report.candidates[candidate]
        .rows
        .iter()
        .map(|row| row.multiplicities.expect("line character passes"))
        .collect()
}

fn tuples_of(report: &TargetReport) -> Vec<Vec<i64>> {
    report.candidates.iter().map(|c| c.tuple.clone()).collect()
}

fn order_35(
    name: &str,
    expected: [(i64, i64); 2],
    table: Option<[[i64; 6]; 2]>,
    limit: Duration,
) -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let case = load(name);
    let report = run_target(&case, 35, &RunSettings::default()).expect("order 35 runs");
    let elapsed = start.elapsed();
    let wanted: Vec<Vec<i64>> = ORDER_35_TUPLES.iter().map(|t| t.to_vec()).collect();
    out.check(
        !report.unbounded && !report.bound_saturated,
        "enumeration complete within the box",
    );
    out.check(
        tuples_of(&report) == wanted,
        format!("candidates {:?}", tuples_of(&report)),
    );
    for (i, (lhs, rhs)) in expected.iter().enumerate() {
        let got = report.candidates.get(i).and_then(|c| c.inequality);
        let ok = got.is_some_and(|g| g.lhs == *lhs && g.rhs == *rhs && g.violated);
        let shown = got.map_or("missing".to_string(), |g| {
            format!("{} <= {} (violated: {})", g.lhs, g.rhs, g.violated)
        });
        out.check(
            ok,
            format!(
                "candidate {} inequality {shown}, want {lhs} <= {rhs} violated",
                i + 1
            ),
        );
        out.check(
            report
                .candidates
                .get(i)
                .is_some_and(|c| c.verdict == Verdict::Excluded),
            format!("candidate {} excluded", i + 1),
        );
    }
    if let Some(table) = table {
        for (i, column) in table.iter().enumerate() {
            let quads = quadruples(&report, i);
            let mut got = vec![quads[0].mu_1];
            got.extend(quads.iter().map(|m| m.mu_zp));
            out.check(
                got == column,
                format!("table column {}: {got:?}, want {column:?}", i + 1),
            );
        }
    }
    out.check(
        elapsed < limit,
        format!("runtime {elapsed:.2?} < {limit:?}"),
    );
    out.summary = format!(
        "{} order 35, {} candidates",
        case.group,
        report.candidates.len()
    );
    out
}

fn criterion_1() -> Outcome {
    order_35(
        "co3.case",
        [(4967, 4945), (4965, 4944)],
        None,
        Duration::from_secs(60),
    )
}

fn criterion_2() -> Outcome {
    let mut out = order_35(
        "co3.case",
        [(4967, 4945), (4965, 4944)],
        Some(CO3_TABLE),
        Duration::from_secs(60),
    );
    out.summary = "Co3 table of multiplicities".into();
    out
}

fn criterion_3() -> Outcome {
    let mut out = order_35(
        "co2.case",
        [(10142, 10120), (10140, 10119)],
        Some(CO2_TABLE),
        Duration::from_secs(60),
    );
    let co3 = run_target(&load("co3.case"), 35, &RunSettings::default()).expect("order 35 runs");
    let co2 = run_target(&load("co2.case"), 35, &RunSettings::default()).expect("order 35 runs");
    out.check(
        tuples_of(&co3) == tuples_of(&co2),
        "candidate set equals the Co3 set",
    );
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let case = load("co1.case");
    let settings = RunSettings::default();
    let ids = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();

    let order5 = enumerate_target(&case, 5, &ids(&["chi2", "chi3", "psi"]), &settings)
        .expect("order 5 runs");
    out.check(
        order5.complete() && order5.tuples().len() == 98,
        format!("order 5: {} candidates, want 98", order5.tuples().len()),
    );
    let order65 = enumerate_target(&case, 65, &ids(&["chi2", "chi4", "chi5", "psi"]), &settings)
        .expect("order 65 runs");
    out.check(
        order65.complete() && order65.tuples().is_empty(),
        format!("order 65: {} candidates, want none", order65.tuples().len()),
    );

    let report = run_target(&case, 55, &settings).expect("order 55 runs");
    out.check(
        report.characters == ids(&["chi2", "chi3", "chi4", "psi"]),
        format!("order 55 characters {:?}", report.characters),
    );
    let wanted: Vec<Vec<i64>> = ORDER_55_TUPLES.iter().map(|t| t.to_vec()).collect();
    out.check(
        !report.unbounded && !report.bound_saturated && tuples_of(&report) == wanted,
        format!("order 55 candidates {:?}", tuples_of(&report)),
    );
    if tuples_of(&report) != wanted {
        out.summary = "Co1 order 55 candidates differ".into();
        return out;
    }

    let line = case.line("b11").expect("line b11");
    let mut all_violated = true;
    let mut table_rows = Vec::new();
    for (i, &(lhs, rhs)) in CO1_INEQUALITIES.iter().enumerate() {
        let got = report.candidates[i]
            .inequality
            .expect("inequality evaluated");
        all_violated &= got.violated && report.candidates[i].verdict == Verdict::Excluded;
        out.check(
            got.lhs == lhs && got.rhs == rhs,
            format!(
                "candidate {} inequality {} <= {}, printed {lhs} <= {rhs}",
                i + 1,
                got.lhs,
                got.rhs
            ),
        );
        let quads = quadruples(&report, i);
        let mut zeta11 = vec![quads[0].mu_1];
        zeta11.extend(quads.iter().map(|m| m.mu_zq));
        let mut zeta5 = vec![quads[0].mu_1];
        zeta5.extend(quads.iter().map(|m| m.mu_zp));
        out.check(
            zeta11 == CO1_TABLE[i],
            format!(
                "table column {}: mu(1), mu(zeta_11) = {zeta11:?}, printed {:?}",
                i + 1,
                CO1_TABLE[i]
            ),
        );
        let profile = EigenvalueProfile::new(
            quads.iter().map(|m| m.mu_1 as u64).collect(),
            quads.iter().map(|m| m.mu_zp as u64).collect(),
        )
        .expect("profile");
        let swapped = check_line_inequality(&profile, line).expect("inequality");
        table_rows.push((zeta5 == CO1_TABLE[i], swapped));
    }
    out.check(
        all_violated,
        "all four inequalities violated, all four candidates excluded",
    );
    for (i, (matches, swapped)) in table_rows.iter().enumerate() {
        out.note(format!(
            "column {}: printed entries {} mu(zeta_5); the inequality on (mu(1), mu(zeta_5)) gives {} <= {}",
            i + 1,
            if *matches { "equal" } else { "differ from" },
            swapped.lhs,
            swapped.rhs
        ));
    }
    let elapsed = start.elapsed();
    out.check(
        elapsed < Duration::from_secs(600),
        format!("runtime {elapsed:.2?} < 600s"),
    );
    out.summary = "Co1 orders 5, 65, 55".into();
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let part = |v: &[usize]| Partition::new(v.to_vec()).expect("partition");
    let (mut triples, mut mismatches, mut asymmetric) = (0u64, Vec::new(), 0u64);
    for n in 0..=8 {
        let all: Vec<Vec<usize>> = (0..=n).flat_map(partitions_of).collect();
        for outer in partitions_of(n) {
            for inner in all.iter().filter(|i| part(&outer).contains(&part(i))) {
                for content in partitions_of(n - inner.iter().sum::<usize>()) {
                    triples += 1;
                    let (lam, mu, nu) = (part(&outer), part(inner), part(&content));
                    let got = lr_coefficient(&lam, &mu, &nu);
                    let want = lr_brute_force(&outer, inner, &content);
                    if got != want {
                        mismatches.push(format!("{lam}/{mu} content {nu}: {got} vs {want}"));
                    }
                    if got != lr_coefficient(&lam, &nu, &mu) {
                        asymmetric += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    out.check(
        mismatches.is_empty(),
        format!(
            "{triples} triples with |outer| <= 8, {} mismatches",
            mismatches.len()
        ),
    );
    for m in mismatches.iter().take(5) {
        out.note(m.clone());
    }
    out.check(
        asymmetric == 0,
        format!("{asymmetric} triples with c(outer; inner, content) != c(outer; content, inner)"),
    );
    out.check(
        elapsed < Duration::from_secs(300),
        format!("runtime {elapsed:.2?} < 300s"),
    );
    out.summary = "LR coefficients against brute-force fillings".into();
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for p in [3, 5] {
        let report =
            verify_form_a_bounds(p, 12, DEFAULT_TABLEAU_CEILING).expect("form-A check runs");
        out.check(
            report.passed(),
            format!(
                "p = {p}: {} shapes, {} tableaux, {} counterexamples",
                report.shapes_checked,
                report.tableaux_checked,
                report.counterexamples.len()
            ),
        );
    }
    let elapsed = start.elapsed();
    out.check(
        elapsed < Duration::from_secs(300),
        format!("runtime {elapsed:.2?} < 300s"),
    );
    out.summary = "form-A tableau bounds up to 12 boxes".into();
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (p, q) in [(5u64, 7u64), (5, 11), (3, 7)] {
        let mut failures = 0;
        for _ in 0..10_000 {
            let mu: [i64; 4] = std::array::from_fn(|_| rng.random_range(0..=1_000_000));
            let m = MultiplicityQuadruple {
                mu_1: mu[0],
                mu_zp: mu[1],
                mu_zq: mu[2],
                mu_zpq: mu[3],
            };
            let Ok(values) = forward_character_values(&m, p, q) else {
                failures += 1;
                continue;
            };
            let oracle = eigenvalue_sums(mu, p, q);
            let forward_ok = [values.degree, values.at_u_p, values.at_u_q, values.at_u] == oracle;
            let back = multiplicities_order_pq(
                values.degree,
                values.at_u_p,
                values.at_u_q,
                values.at_u,
                p,
                q,
            );
            if !forward_ok || !matches!(back, Ok(Ok(b)) if b == m) {
                failures += 1;
            }
        }
        out.check(
            failures == 0,
            format!("(p, q) = ({p}, {q}): 10000 quadruples, {failures} failures"),
        );
    }
    out.summary = "multiplicity round trip".into();
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    for p in [3, 5] {
        let start = Instant::now();
        let report = cross_validate_exhaustive(p, 4, pqunits::criterion::DEFAULT_CHAIN_CEILING)
            .expect("cross-check runs");
        out.check(
            report.passed(),
            format!(
                "p = {p}: {} profiles, {} feasible chains, {} violated, {} skipped, {} inconsistent ({:.2?})",
                report.profiles,
                report.feasible,
                report.violated,
                report.skipped,
                report.inconsistent.len(),
                start.elapsed()
            ),
        );
    }
    out.summary = "chain feasibility implies the inequality, entries <= 4".into();
    out
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = BTreeSet::new();
    for (n, run) in criteria {
        let outcome = run();
        println!(
            "{} criterion {n}: {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.summary
        );
        for line in &outcome.details {
            println!("    {line}");
        }
        if !outcome.passed {
            failed.insert(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
