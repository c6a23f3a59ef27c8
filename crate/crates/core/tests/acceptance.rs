//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints its own line; exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;

use sqrank::bijections::psi;
use sqrank::partitions::{stat, Stat};
use sqrank::paths::{energy, phi};
use sqrank::verify::{
    check_abf, check_bijections, check_configuration_sums, check_equinumerosity, check_generating_functions,
    check_kostka, check_worked_examples, Report,
};
use sqrank::{BitSeq, Partition};

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn from_report(r: &Report) -> Outcome {
        let mut detail = format!("{} cells", r.cells_checked);
        if let Some(first) = r.counterexamples.first() {
            detail.push_str(&format!(", {} counterexamples, first: {first}", r.counterexamples.len()));
        }
        Outcome { pass: r.pass, detail }
    }

    fn all(parts: Vec<Outcome>) -> Outcome {
        Outcome {
            pass: parts.iter().all(|o| o.pass),
            detail: parts.into_iter().map(|o| o.detail).collect::<Vec<_>>().join("; "),
        }
    }

    fn fail(detail: impl Into<String>) -> Outcome {
        Outcome { pass: false, detail: detail.into() }
    }
}

/// Rows of the n = 8 tables: (partition, statistic value, mex value).
const SQRANK_ROWS: [(&str, usize, usize); 22] = [
    ("1^8", 1, 3),
    ("2 1^6", 0, 3),
    ("2^2 1^4", 2, 3),
    ("2^3 1^2", 2, 3),
    ("2^4", 2, 1),
    ("3 1^5", 1, 5),
    ("3 2 1^3", 1, 5),
    ("3 2^2 1", 1, 5),
    ("3^2 1^2", 1, 5),
    ("3^2 2", 1, 1),
    ("4 1^4", 0, 3),
    ("4 2 1^2", 0, 3),
    ("4 2^2", 0, 1),
    ("4 3 1", 1, 5),
    ("4^2", 0, 1),
    ("5 1^3", 1, 3),
    ("5 2 1", 2, 3),
    ("5 3", 2, 1),
    ("6 1^2", 0, 3),
    ("6 2", 1, 1),
    ("7 1", 1, 3),
    ("8", 0, 1),
];

const RERANK_ROWS: [(&str, usize, usize); 22] = [
    ("1^8", 0, 2),
    ("2 1^6", 1, 4),
    ("2^2 1^4", 1, 4),
    ("2^3 1^2", 1, 4),
    ("2^4", 1, 4),
    ("3 1^5", 0, 2),
    ("3 2 1^3", 0, 4),
    ("3 2^2 1", 0, 4),
    ("3^2 1^2", 2, 2),
    ("3^2 2", 2, 4),
    ("4 1^4", 0, 2),
    ("4 2 1^2", 0, 6),
    ("4 2^2", 0, 6),
    ("4 3 1", 1, 2),
    ("4^2", 1, 2),
    ("5 1^3", 1, 2),
    ("5 2 1", 1, 4),
    ("5 3", 0, 2),
    ("6 1^2", 0, 2),
    ("6 2", 0, 4),
    ("7 1", 0, 2),
    ("8", 1, 2),
];

fn compare_table(table: &Value, expected: &[(&str, usize, usize)], totals: [u64; 3]) -> Result<(), String> {
    let rows = table["rows"].as_array().ok_or("rows missing")?;
    if rows.len() != expected.len() {
        return Err(format!("{} rows, expected {}", rows.len(), expected.len()));
    }
    for (row, &(name, s, m)) in rows.iter().zip(expected) {
        let parts = Partition::parse_any(name).map_err(|e| e.to_string())?;
        let got_parts: Vec<usize> = serde_json::from_value(row["partition"].clone()).map_err(|e| e.to_string())?;
        if got_parts != parts.parts() || row["notation"] != name || row["stat"] != s || row["mex"] != m {
            return Err(format!("row {row} differs from ({name}, {s}, {m})"));
        }
    }
    for key in ["stat", "mex"] {
        let got: Vec<u64> = serde_json::from_value(table["totals"][key].clone()).map_err(|e| e.to_string())?;
        if got != totals {
            return Err(format!("{key} totals {got:?}, expected {totals:?}"));
        }
    }
    Ok(())
}

fn criterion_tables() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_sqrank")).args(["table", "--n", "8", "--format", "json"]).output();
    let out = match out {
        Ok(o) if o.status.success() => o,
        Ok(o) => return Outcome::fail(format!("exit {:?}", o.status.code())),
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let v: Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let checks = [
        compare_table(&v["tables"][0], &SQRANK_ROWS, [7, 10, 5]),
        compare_table(&v["tables"][1], &RERANK_ROWS, [11, 9, 2]),
    ];
    match checks.into_iter().find_map(Result::err) {
        Some(e) => Outcome::fail(e),
        None => Outcome { pass: true, detail: "44 rows, totals (7,10,5) and (11,9,2)".into() },
    }
}

/// All partitions of `n` with parts at most `max`, by plain recursion.
fn brute_partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if n == 0 {
        out(prefix);
        return;
    }
    for p in (1..=max.min(n)).rev() {
        prefix.push(p);
        brute_partitions(n - p, p, prefix, out);
        prefix.pop();
    }
}

fn brute_mex(parts: &[usize], start: usize) -> usize {
    let mut m = start;
    while parts.contains(&m) {
        m += 2;
    }
    m
}

fn criterion_equinumerosity() -> Outcome {
    let n_max = 40;
    let report = check_equinumerosity(n_max);
    // Independent recount: mex values from a separate enumeration, the
    // statistics from the library.
    let mut mismatches = Vec::new();
    for n in 0..=n_max {
        let mut hist: BTreeMap<(Stat, usize), (i64, i64)> = BTreeMap::new();
        brute_partitions(n, n, &mut Vec::new(), &mut |parts| {
            let lam = Partition::new(parts.to_vec()).expect("generated weakly decreasing");
            for (which, start) in [(Stat::Sqrank, 1), (Stat::Rerank, 2)] {
                hist.entry((which, stat(&lam, which))).or_default().0 += 1;
                hist.entry((which, (brute_mex(parts, start) - start) / 2)).or_default().1 += 1;
            }
        });
        for ((which, r), (a, b)) in hist {
            if a != b {
                mismatches.push(format!("n={n} {} r={r}: {a} vs {b}", which.name()));
            }
        }
    }
    let recount = match mismatches.first() {
        None => Outcome { pass: true, detail: format!("independent recount n <= {n_max} agrees") },
        Some(m) => Outcome::fail(format!("{} recount mismatches, first: {m}", mismatches.len())),
    };
    Outcome::all(vec![Outcome::from_report(&report), recount])
}

fn criterion_worked_examples() -> Outcome {
    let lam = Partition::new(vec![19, 16, 9, 2, 1]).expect("partition");
    let eta: BitSeq = "101001100011010".parse().expect("bits");
    let image = phi(&eta);
    let psi_weights_ok = [vec![10], vec![9, 1], vec![8, 2], vec![7, 3], vec![6, 4], vec![5, 5]]
        .into_iter()
        .all(|nu| psi(&Partition::new(nu).expect("partition"), 2, 1).is_ok_and(|p| p.weight() == 10));
    let direct = stat(&lam, Stat::Sqrank) == 2
        && stat(&lam, Stat::Rerank) == 0
        && image.parts() == [7, 7, 5, 4, 4, 2, 1]
        && energy(&eta) == 30
        && psi_weights_ok;
    let direct = if direct {
        Outcome { pass: true, detail: "direct values agree".into() }
    } else {
        Outcome::fail("a direct value differs")
    };
    Outcome::all(vec![Outcome::from_report(&check_worked_examples()), direct])
}

fn run(name: &str, budget: Duration, f: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if elapsed > budget {
        o.pass = false;
        o.detail.push_str(&format!("; over budget {budget:?}"));
    }
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {name} ({:.2}s): {}", elapsed.as_secs_f64(), o.detail);
    o.pass
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 8] = [
        ("criterion 1: n = 8 tables", secs(1), criterion_tables),
        ("criterion 2: equinumerosity n <= 40", secs(300), criterion_equinumerosity),
        ("criterion 3: worked examples", secs(1), criterion_worked_examples),
        ("criterion 4: configuration sums L <= 14", secs(30), || {
            Outcome::from_report(&check_configuration_sums(14))
        }),
        ("criterion 5: bijections L <= 14, weight <= 30", secs(60), || {
            Outcome::from_report(&check_bijections(14, 30))
        }),
        ("criterion 6: series identities to order 30", secs(30), || {
            Outcome::from_report(&check_generating_functions(30))
        }),
        ("criterion 7: Kostka, spinon and string functions L <= 14", secs(60), || {
            Outcome::from_report(&check_kostka(14, 30))
        }),
        ("criterion 8: boundary-weighted sums L <= 14", secs(30), || Outcome::from_report(&check_abf(14))),
    ];
    let mut failed = 0;
    for (name, budget, f) in criteria {
        if !run(name, budget, f) {
            failed += 1;
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
