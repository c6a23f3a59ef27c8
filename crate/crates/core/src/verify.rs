//! Exhaustive finite checks of the identities relating the statistics,
//! bijections and configuration sums.
//!
//! Every check returns a [`Report`]. Work inside a check is split into
//! independent cells evaluated in parallel; results are reassembled in cell
//! order, so two runs with the same parameters give the same report apart
//! from `elapsed_ms`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abf::{abf_closed, abf_energy, abf_sum, Direction, HalfSeries};
use crate::bijections::{phi_a, phi_a_inv, psi, xi, StrippedPair};
use crate::error::{Error, Result};
use crate::kostka::{
    branching_coefficient, charge, kostka_charge, kostka_level, kostka_macdonald, spinon_sum, string_function,
    two_column,
};
use crate::partitions::{
    decompose, durfee_side, e1_stat, enumerate, enumerate_up_to, mex, stat_trace, Partition, Stat,
};
use crate::paths::{
    config_sum, crystal_e1, crystal_f1, energy, enumerate_h, epsilon1, phi, phi_inv, sigma, BitSeq,
};
use crate::qseries::{
    gaussian, inv_poch_inf, invert_unit, pochhammer, product_one_minus, qfac, PochLen, QSeries,
};

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub cells_checked: u64,
    pub counterexamples: Vec<Value>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(
            f,
            "[{}] {} ({}) cells={} counterexamples={} elapsed={}ms",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            params.join(", "),
            self.cells_checked,
            self.counterexamples.len(),
            self.elapsed_ms
        )?;
        for c in &self.counterexamples {
            writeln!(f, "  counterexample: {c}")?;
        }
        Ok(())
    }
}

/// Identifiers accepted by `verify --check`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    Equinumerosity,
    GeneratingFunctions,
    ConfigurationSums,
    Bijections,
    Appendices,
}

impl CheckId {
    pub const ALL: [CheckId; 5] = [
        CheckId::Equinumerosity,
        CheckId::GeneratingFunctions,
        CheckId::ConfigurationSums,
        CheckId::Bijections,
        CheckId::Appendices,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Equinumerosity => "equinumerosity",
            CheckId::GeneratingFunctions => "generating_functions",
            CheckId::ConfigurationSums => "configuration_sums",
            CheckId::Bijections => "bijections",
            CheckId::Appendices => "appendices",
        }
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse { what: "check id", token: s.to_string() })
    }
}

/// Size bounds shared by all checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub n_max: usize,
    pub l_max: usize,
    pub order: usize,
    pub weight_max: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { n_max: 40, l_max: 14, order: 30, weight_max: 30 }
    }
}

pub fn run_check(id: CheckId, b: &Bounds) -> Report {
    match id {
        CheckId::Equinumerosity => check_equinumerosity(b.n_max),
        CheckId::GeneratingFunctions => check_generating_functions(b.order),
        CheckId::ConfigurationSums => check_configuration_sums(b.l_max),
        CheckId::Bijections => check_bijections(b.l_max, b.weight_max),
        CheckId::Appendices => check_appendices(b.l_max, b.order),
    }
}

/// Runs the given checks in parallel; reports come back in input order.
pub fn run_checks(ids: &[CheckId], b: &Bounds) -> Vec<Report> {
    ids.par_iter().map(|&id| run_check(id, b)).collect()
}

/// Accumulates cells and the counterexamples of failing ones.
#[derive(Default)]
struct Tally {
    cells: u64,
    failures: Vec<Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        self.cells += 1;
        if !ok {
            self.failures.push(payload());
        }
    }

    fn series(&mut self, cell: &str, at: Value, left: &QSeries, right: &QSeries) {
        self.check(left == right, || json!({"cell": cell, "at": at, "left": left.to_json(), "right": right.to_json()}));
    }

    fn half(&mut self, cell: &str, at: Value, left: &HalfSeries, right: &HalfSeries) {
        self.check(left == right, || json!({"cell": cell, "at": at, "left": left.to_json(), "right": right.to_json()}));
    }

    fn value<T: PartialEq + Serialize>(&mut self, cell: &str, at: Value, left: T, right: T) {
        let ok = left == right;
        self.check(ok, || json!({"cell": cell, "at": at, "left": left, "right": right}));
    }

    fn error(&mut self, cell: &str, at: Value, e: &Error) {
        self.check(false, || json!({"cell": cell, "at": at, "error": e.to_string()}));
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cells += other.cells;
        self.failures.extend(other.failures);
        self
    }

    fn merge_all(parts: Vec<Tally>) -> Tally {
        parts.into_iter().fold(Tally::default(), Tally::merge)
    }

    fn report(self, check: &str, params: Value, start: Instant) -> Report {
        let params = match params {
            Value::Object(m) => m.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        Report {
            check: check.to_string(),
            params,
            pass: self.failures.is_empty(),
            cells_checked: self.cells,
            counterexamples: self.failures,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Per-weight counts of the two statistics and the two mex values,
/// indexed by `r` (mex values `2r+1`, `2r+2`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histograms {
    pub sqrank: BTreeMap<usize, u64>,
    pub mex21: BTreeMap<usize, u64>,
    pub rerank: BTreeMap<usize, u64>,
    pub mex22: BTreeMap<usize, u64>,
}

impl Histograms {
    pub fn of_weight(n: usize) -> Histograms {
        let mut h = Histograms::default();
        for lam in enumerate(n, None, None) {
            *h.sqrank.entry(stat_trace(&lam, Stat::Sqrank).value).or_default() += 1;
            *h.rerank.entry(stat_trace(&lam, Stat::Rerank).value).or_default() += 1;
            let m1 = mex(&lam, 2, 1).expect("valid modulus");
            let m2 = mex(&lam, 2, 2).expect("valid modulus");
            *h.mex21.entry((m1 - 1) / 2).or_default() += 1;
            *h.mex22.entry((m2 - 2) / 2).or_default() += 1;
        }
        h
    }

    pub fn stat(&self, which: Stat) -> &BTreeMap<usize, u64> {
        match which {
            Stat::Sqrank => &self.sqrank,
            Stat::Rerank => &self.rerank,
        }
    }

    pub fn mex(&self, which: Stat) -> &BTreeMap<usize, u64> {
        match which {
            Stat::Sqrank => &self.mex21,
            Stat::Rerank => &self.mex22,
        }
    }
}

const STATS: [Stat; 2] = [Stat::Sqrank, Stat::Rerank];

/// For every `n <= n_max` and every `r` in the union of the observed
/// supports, the statistic and the matching mex have equal counts.
pub fn check_equinumerosity(n_max: usize) -> Report {
    let start = Instant::now();
    let parts: Vec<Tally> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let h = Histograms::of_weight(n);
            let mut t = Tally::default();
            for which in STATS {
                let (s, m) = (h.stat(which), h.mex(which));
                let support: std::collections::BTreeSet<usize> = s.keys().chain(m.keys()).copied().collect();
                for r in support {
                    let (a, b) = (s.get(&r).copied().unwrap_or(0), m.get(&r).copied().unwrap_or(0));
                    t.check(a == b, || json!({"n": n, "stat": which.name(), "r": r, "stat_count": a, "mex_count": b}));
                }
            }
            t
        })
        .collect();
    Tally::merge_all(parts).report("equinumerosity", json!({"n_max": n_max}), start)
}

fn counts_series(counts: &[u64], order: usize) -> QSeries {
    QSeries::truncated_from(counts.iter().copied(), order)
}

/// `Z^{(r)}_{L,s}` closed form `[L,s-r] - [L,s-r-1]`.
fn z_closed(l: usize, s: usize, r: usize) -> QSeries {
    let (l, k) = (l as i64, s as i64 - r as i64);
    gaussian(l, k) - gaussian(l, k - 1)
}

fn b_poly(n: usize) -> QSeries {
    (0..=n)
        .map(|r| {
            let g = gaussian(2 * n as i64 + 1, n as i64 - r as i64);
            if r % 2 == 0 {
                g
            } else {
                -g
            }
        })
        .sum()
}

/// Coefficientwise identities between partition counts and q-series:
/// three routes for each mex class, the `p_{2,2}` formula with `B_n`,
/// the conjugate Bailey relation and the Cauchy formula.
pub fn check_generating_functions(order: usize) -> Report {
    let start = Instant::now();
    let hists: Vec<Histograms> = (0..=order).into_par_iter().map(Histograms::of_weight).collect();
    let count = |f: &dyn Fn(&Histograms) -> u64| -> Vec<u64> { hists.iter().map(f).collect() };
    let r_max = 4;

    let mut cells: Vec<Box<dyn Fn() -> Tally + Sync + '_>> = Vec::new();
    for a in 0..=1usize {
        for r in 0..=r_max {
            let which = Stat::from_offset(a).expect("a in 0..=1");
            let count = &count;
            cells.push(Box::new(move || {
                let mut t = Tally::default();
                let at = json!({"a": a, "r": r});
                let mex_side = counts_series(&count(&|h| h.mex(which).get(&r).copied().unwrap_or(0)), order);
                let stat_side = counts_series(&count(&|h| h.stat(which).get(&r).copied().unwrap_or(0)), order);
                let mut bosonic = QSeries::zero_to(order);
                let mut n = r;
                while n * n + a * n <= order {
                    let l = 2 * n + a;
                    let term = z_closed(l, n, r).shift(n * n + a * n);
                    bosonic = bosonic + &term * &invert_unit(&qfac(l), order).expect("unit");
                    n += 1;
                }
                let k = 2 * r + 1 + a;
                let others = product_one_minus((1..=order).filter(|&m| m != k), Some(order));
                let product = invert_unit(&others, order).expect("unit").shift(r * (r + a)).truncate(order);
                t.series("mex_vs_bosonic", at.clone(), &mex_side, &bosonic);
                t.series("mex_vs_product", at.clone(), &mex_side, &product);
                t.series("mex_vs_statistic", at, &mex_side, &stat_side);
                t
            }));
        }
    }

    // p_{2,2}(n): mex_{2,2} = 2r + 2 with r even.
    cells.push(Box::new(|| {
        let mut t = Tally::default();
        let even = counts_series(&count(&|h| h.mex22.iter().filter(|(r, _)| *r % 2 == 0).map(|(_, c)| c).sum()), order);
        let mut rhs = QSeries::zero_to(order);
        let mut n = 0;
        while n * n + n <= order {
            rhs = rhs + &b_poly(n).shift(n * n + n) * &invert_unit(&qfac(2 * n + 1), order).expect("unit");
            n += 1;
        }
        t.series("p22_vs_b_sum", json!({"order": order}), &even, &rhs);
        t
    }));

    for n in 0..=20usize {
        cells.push(Box::new(move || {
            let mut t = Tally::default();
            let b = b_poly(n);
            t.check(b.has_nonnegative_coeffs(), || json!({"cell": "b_nonnegative", "at": {"n": n}, "left": b.to_json()}));
            if n <= 8 {
                let mut counts = vec![0u64; n * (n + 1) + 1];
                for lam in enumerate_up_to(n * (n + 1), Some(n), Some(n + 1)) {
                    if e1_stat(&lam, n).is_multiple_of(2) {
                        counts[lam.weight()] += 1;
                    }
                }
                t.series("b_counts_even_e1", json!({"n": n}), &QSeries::from_coeffs(counts), &b);
            }
            t
        }));
    }

    for ae in 0..=1usize {
        for big_l in 0..=4usize {
            cells.push(Box::new(move || {
                let mut t = Tally::default();
                let gamma = inv_poch_inf(1 + ae, order).shift(ae * big_l + big_l * big_l).truncate(order);
                let mut sum = QSeries::zero_to(order);
                let mut r = big_l;
                while r * r + ae * r <= order {
                    let den = &qfac(r - big_l) * &pochhammer(1 + ae, PochLen::Finite(r + big_l), None).expect("finite");
                    sum = sum + invert_unit(&den, order).expect("unit").shift(ae * r + r * r);
                    r += 1;
                }
                t.series("conjugate_bailey", json!({"a_exp": ae, "L": big_l}), &gamma, &sum.truncate(order));
                t
            }));
        }
    }

    for a in 1..=6usize {
        cells.push(Box::new(move || {
            let mut t = Tally::default();
            let mut lhs = QSeries::zero_to(order);
            let mut n = 0;
            while n * n - n + a * n <= order {
                let den = &qfac(n) * &pochhammer(a, PochLen::Finite(n), None).expect("finite");
                lhs = lhs + invert_unit(&den, order).expect("unit").shift(n * n - n + a * n);
                n += 1;
            }
            t.series("cauchy", json!({"z_exp": a}), &lhs.truncate(order), &inv_poch_inf(a, order));
            t
        }));
    }

    let parts: Vec<Tally> = cells.par_iter().map(|c| c()).collect();
    Tally::merge_all(parts).report("generating_functions", json!({"order": order}), start)
}

/// `X_{L,s}` from the linear recursion with `X_{L,0} = X_{L,L} = 1`.
pub fn recursion_x(l_max: usize) -> Vec<Vec<QSeries>> {
    let mut x: Vec<Vec<QSeries>> = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        let mut row = Vec::with_capacity(l + 1);
        for s in 0..=l {
            let v = if s == 0 || s == l {
                QSeries::one()
            } else {
                let mut v = x[l - 1][s].clone();
                for k in 1..=s {
                    v = v + x[l - k - 1][s - k].shift(l - k);
                }
                v
            };
            row.push(v);
        }
        x.push(row);
    }
    x
}

/// `X⁺_{L,s}` for `2s <= L + 1`, from the same recursion with
/// `X⁺_{L,0} = 1` and `X⁺_{2s-1,s} = 0`.
pub fn recursion_x_plus(l_max: usize) -> Vec<Vec<QSeries>> {
    let mut x: Vec<Vec<QSeries>> = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        let mut row = Vec::new();
        for s in 0..=l.div_ceil(2) {
            let v = if s == 0 {
                QSeries::one()
            } else if l + 1 == 2 * s {
                QSeries::zero()
            } else {
                let mut v = x[l - 1][s].clone();
                for k in 1..=s {
                    v = v + x[l - k - 1][s - k].shift(l - k);
                }
                v
            };
            row.push(v);
        }
        x.push(row);
    }
    x
}

/// Enumerated configuration sums against recursion-built and Gaussian
/// closed forms, with and without the `ε₁` restriction.
pub fn check_configuration_sums(l_max: usize) -> Report {
    let start = Instant::now();
    let x = recursion_x(l_max);
    let xp = recursion_x_plus(l_max);
    let parts: Vec<Tally> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let mut t = Tally::default();
            for s in 0..=l {
                let at = json!({"L": l, "s": s});
                let g = gaussian(l as i64, s as i64);
                let full = config_sum(l, s, None);
                t.series("x_recursion_vs_gaussian", at.clone(), &x[l][s], &g);
                t.series("enumeration_vs_gaussian", at.clone(), &full, &g);
                let strata: QSeries = (0..=s).map(|r| config_sum(l, s, Some(r))).sum();
                t.series("strata_sum", at.clone(), &strata, &full);
                if 2 * s <= l {
                    t.series("x_plus_recursion_vs_closed", at.clone(), &xp[l][s], &z_closed(l, s, 0));
                    for r in 0..=s {
                        let at = json!({"L": l, "s": s, "r": r});
                        t.series("stratum_vs_closed", at, &config_sum(l, s, Some(r)), &z_closed(l, s, r));
                    }
                }
            }
            if l % 2 == 1 {
                let s = l.div_ceil(2);
                let at = json!({"L": l, "s": s});
                t.series("x_plus_boundary", at.clone(), &xp[l][s], &QSeries::zero());
                t.series("empty_stratum", at, &config_sum(l, s, Some(0)), &QSeries::zero());
            }
            t
        })
        .collect();
    Tally::merge_all(parts).report("configuration_sums", json!({"L_max": l_max}), start)
}

fn crystal_cells(l: usize) -> Tally {
    let mut t = Tally::default();
    for s in 0..=l / 2 {
        if s < l / 2 {
            for eta in enumerate_h(l, s, None) {
                let at = json!({"L": l, "s": s, "eta": eta.to_string()});
                match crystal_f1(&eta) {
                    Ok(f) => {
                        t.value("f1_ones", at.clone(), f.ones(), s + 1);
                        t.value("f1_epsilon1", at.clone(), epsilon1(&f), epsilon1(&eta) + 1);
                        t.value("f1_energy", at.clone(), energy(&f), energy(&eta));
                        match crystal_e1(&f) {
                            Ok(back) => t.value("e1_after_f1", at, back.to_string(), eta.to_string()),
                            Err(e) => t.error("e1_after_f1", at, &e),
                        }
                    }
                    Err(e) => t.error("f1", at, &e),
                }
            }
        }
        if s >= 1 {
            for eta in enumerate_h(l, s, None).filter(|e| epsilon1(e) >= 1) {
                let at = json!({"L": l, "s": s, "eta": eta.to_string()});
                match crystal_e1(&eta) {
                    Ok(e) => {
                        t.value("e1_epsilon1", at.clone(), epsilon1(&e) + 1, epsilon1(&eta));
                        t.value("e1_energy", at.clone(), energy(&e), energy(&eta));
                        match crystal_f1(&e) {
                            Ok(back) => t.value("f1_after_e1", at, back.to_string(), eta.to_string()),
                            Err(err) => t.error("f1_after_e1", at, &err),
                        }
                    }
                    Err(e) => t.error("e1", at, &e),
                }
            }
        }
    }
    t
}

fn phi_cells(l: usize) -> Tally {
    let mut t = Tally::default();
    for s in 0..=l {
        let mut images = HashSet::new();
        let mut total = 0usize;
        for eta in enumerate_h(l, s, None) {
            total += 1;
            let lam = phi(&eta);
            let at = json!({"L": l, "s": s, "eta": eta.to_string()});
            t.check(lam.fits_in(s, l - s), || json!({"cell": "phi_codomain", "at": at, "left": lam.parts()}));
            t.value("phi_energy", at.clone(), lam.weight(), energy(&eta));
            t.value("phi_epsilon1", at.clone(), e1_stat(&lam, s), epsilon1(&eta));
            match phi_inv(&lam, l, s) {
                Ok(back) => t.value("phi_inverse", at, back.to_string(), eta.to_string()),
                Err(e) => t.error("phi_inverse", at, &e),
            }
            images.insert(lam);
        }
        let box_count = enumerate_up_to(s * (l - s), Some(s), Some(l - s)).count();
        let at = json!({"L": l, "s": s});
        t.value("phi_injective", at.clone(), images.len(), total);
        t.value("phi_surjective", at, images.len(), box_count);
    }
    t
}

/// Number of partitions of each weight `0..=w` with all parts in `lo..=hi`.
fn range_counts(w: usize, lo: usize, hi: usize) -> Vec<u64> {
    (0..=w)
        .map(|m| enumerate(m, None, Some(hi)).filter(|p| p.parts().iter().all(|&x| x >= lo)).count() as u64)
        .collect()
}

fn box_counts(w: usize, rows: usize, cols: usize) -> Vec<u64> {
    let mut c = vec![0u64; w + 1];
    for p in enumerate_up_to(w, Some(rows), Some(cols)) {
        c[p.weight()] += 1;
    }
    c
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    (0..a.len().min(b.len())).map(|m| (0..=m).map(|i| a[i] * b[m - i]).sum()).collect()
}

fn psi_cells(n: usize, a: usize, w: usize) -> Tally {
    let mut t = Tally::default();
    let k = n + a;
    let mut by_weight: Vec<HashSet<StrippedPair>> = vec![HashSet::new(); w + 1];
    let mut source = vec![0u64; w + 1];
    for nu in enumerate_up_to(w, Some(n), None) {
        source[nu.weight()] += 1;
        let at = json!({"n": n, "a": a, "nu": nu.parts()});
        match psi(&nu, n, a) {
            Ok(pair) => {
                t.value("psi_weight", at.clone(), pair.weight(), nu.weight());
                match xi(&pair) {
                    Ok(back) => t.value("xi_after_psi", at, back.parts(), nu.parts()),
                    Err(e) => t.error("xi_after_psi", at, &e),
                }
                by_weight[nu.weight()].insert(pair);
            }
            Err(e) => t.error("psi", at, &e),
        }
    }
    let image: Vec<u64> = by_weight.iter().map(|s| s.len() as u64).collect();
    let codomain = convolve(&box_counts(w, n, k), &range_counts(w, k + 1, k + n));
    let at = json!({"n": n, "a": a});
    t.value("psi_image_counts", at.clone(), &image, &source);
    t.value("psi_codomain_counts", at.clone(), &codomain, &source);
    let gf = &(&gaussian((2 * n + a) as i64, n as i64) * &qfac(k)) * &invert_unit(&qfac(2 * n + a), w).expect("unit");
    let euler_n = invert_unit(&qfac(n), w).expect("unit");
    t.series("psi_product_gf", at.clone(), &gf, &euler_n);
    t.series("psi_counts_gf", at, &counts_series(&source, w), &euler_n);
    t
}

fn phi_a_cells(n: usize, a: usize, w: usize) -> Tally {
    let mut t = Tally::default();
    let k = n + a;
    let mut by_weight: Vec<HashSet<(Partition, Partition)>> = vec![HashSet::new(); w + 1];
    let mut source = vec![0u64; w + 1];
    let nus: Vec<Partition> = enumerate_up_to(w, Some(n), None).collect();
    let pis: Vec<Partition> = enumerate_up_to(w, None, Some(k)).collect();
    for nu in &nus {
        for pi in pis.iter().take_while(|pi| pi.weight() + nu.weight() <= w) {
            let m = nu.weight() + pi.weight();
            source[m] += 1;
            match phi_a(nu, pi, n, a) {
                Ok((lam, merged)) => {
                    let ok = lam.fits_in(n, k) && merged.largest_part() <= 2 * n + a && lam.weight() + merged.weight() == m;
                    if !ok || phi_a_inv(&lam, &merged, n, a).ok().as_ref() != Some(&(nu.clone(), pi.clone())) {
                        t.check(false, || {
                            json!({"cell": "phi_a_pointwise", "at": {"n": n, "a": a, "nu": nu.parts(), "pi": pi.parts()},
                                   "left": [lam.parts(), merged.parts()]})
                        });
                    }
                    by_weight[m].insert((lam, merged));
                }
                Err(e) => t.error("phi_a", json!({"n": n, "a": a, "nu": nu.parts(), "pi": pi.parts()}), &e),
            }
        }
    }
    t.cells += source.iter().sum::<u64>();
    let image: Vec<u64> = by_weight.iter().map(|s| s.len() as u64).collect();
    let codomain = convolve(&box_counts(w, n, k), &range_counts(w, 1, 2 * n + a));
    let at = json!({"n": n, "a": a});
    t.value("phi_a_injective", at.clone(), &image, &source);
    t.value("phi_a_surjective", at, &image, &codomain);
    t
}

fn stratified_factor_cells(w: usize, factor_n_max: usize) -> Tally {
    let mut t = Tally::default();
    // hist[a][n][r][weight]
    let mut hist = vec![vec![vec![vec![0u64; w + 1]; factor_n_max + 2]; factor_n_max + 1]; 2];
    for lam in enumerate_up_to(w, None, None) {
        for which in STATS {
            let a = which.offset();
            let tr = stat_trace(&lam, which);
            let d = &tr.decomposition;
            let at = json!({"a": a, "lambda": lam.parts()});
            match psi(&d.right, d.n, a) {
                Ok(pair) => t.value("residual_is_psi1", at.clone(), pair.lam.parts(), tr.stripped.residual.parts()),
                Err(e) => t.error("residual_is_psi1", at.clone(), &e),
            }
            match phi_a(&d.right, &d.below, d.n, a) {
                Ok((lam1, merged)) => {
                    t.value("phi_a_weight", at, d.rect.weight() + lam1.weight() + merged.weight(), lam.weight())
                }
                Err(e) => t.error("phi_a_weight", at, &e),
            }
            if d.n <= factor_n_max {
                hist[a][d.n][tr.value][lam.weight()] += 1;
            }
        }
    }
    for (a, by_n) in hist.iter().enumerate() {
        for (n, by_r) in by_n.iter().enumerate() {
            let tail = invert_unit(&qfac(2 * n + a), w).expect("unit");
            for (r, counts) in by_r.iter().enumerate().take(n + 1) {
                let mut box_r = vec![0u64; n * (n + a) + 1];
                for pi in enumerate_up_to(n * (n + a), Some(n), Some(n + a)) {
                    if e1_stat(&pi, n) == r {
                        box_r[pi.weight()] += 1;
                    }
                }
                let rhs = (&QSeries::from_coeffs(box_r).shift(n * n + a * n) * &tail).truncate(w);
                let lhs = counts_series(counts, w);
                t.series("stratified_factorization", json!({"a": a, "n": n, "r": r}), &lhs, &rhs);
            }
        }
    }
    t
}

/// The worked examples: the two statistics of `(19,16,9,2,1)`, the Φ image
/// of `101001100011010`, and `Ψ` at `n = 2`, `a = 1`, weight 10.
pub fn check_worked_examples() -> Report {
    let start = Instant::now();
    let mut t = Tally::default();
    let lam = Partition::new(vec![19, 16, 9, 2, 1]).expect("partition");
    t.value("sqrank", json!({"lambda": lam.parts()}), stat_trace(&lam, Stat::Sqrank).value, 2);
    t.value("rerank", json!({"lambda": lam.parts()}), stat_trace(&lam, Stat::Rerank).value, 0);
    t.value("durfee_sides", json!({"lambda": lam.parts()}), (durfee_side(&lam, 0), durfee_side(&lam, 1)), (3, 3));
    let d0 = decompose(&lam, 0);
    t.value("a0_part", json!({"lambda": lam.parts()}), d0.right.parts(), &[16, 13, 6][..]);

    let eta: BitSeq = "101001100011010".parse().expect("bits");
    let image = phi(&eta);
    t.value("phi_example", json!({"eta": eta.to_string()}), image.parts(), &[7, 7, 5, 4, 4, 2, 1][..]);
    t.value("phi_example_energy", json!({"eta": eta.to_string()}), (energy(&eta), image.weight()), (30, 30));

    let table: [(&[usize], &[usize], &[usize]); 6] = [
        (&[10], &[2], &[4, 4]),
        (&[9, 1], &[1, 1], &[4, 4]),
        (&[8, 2], &[1], &[5, 4]),
        (&[7, 3], &[3, 3], &[4]),
        (&[6, 4], &[3, 2], &[5]),
        (&[5, 5], &[], &[5, 5]),
    ];
    for (nu, lam, mu) in table {
        let at = json!({"nu": nu, "n": 2, "a": 1});
        match Partition::new(nu.to_vec()).and_then(|nu| psi(&nu, 2, 1)) {
            Ok(pair) => t.value("psi_table", at, (pair.lam.parts(), pair.mu.parts()), (lam, mu)),
            Err(e) => t.error("psi_table", at, &e),
        }
    }
    t.report("worked_examples", json!({}), start)
}

/// Crystal operators, Φ, Ψ/Ξ, Φ⁽ᵃ⁾, the consistency of the statistics with
/// Ψ, the stratified product identities, and the worked examples.
pub fn check_bijections(l_max: usize, weight_max: usize) -> Report {
    let start = Instant::now();
    let psi_n_max = 5;
    let factor_n_max = 4;
    let mut jobs: Vec<Box<dyn Fn() -> Tally + Sync>> = Vec::new();
    for l in 0..=l_max {
        jobs.push(Box::new(move || crystal_cells(l)));
        jobs.push(Box::new(move || phi_cells(l)));
    }
    for n in 0..=psi_n_max {
        for a in 0..=1 {
            jobs.push(Box::new(move || psi_cells(n, a, weight_max)));
            jobs.push(Box::new(move || phi_a_cells(n, a, weight_max)));
        }
    }
    jobs.push(Box::new(move || stratified_factor_cells(weight_max, factor_n_max)));
    jobs.push(Box::new(|| {
        let r = check_worked_examples();
        Tally { cells: r.cells_checked, failures: r.counterexamples }
    }));
    let parts: Vec<Tally> = jobs.par_iter().map(|j| j()).collect();
    let params = json!({
        "L_max": l_max,
        "weight_max": weight_max,
        "psi_n_max": psi_n_max,
        "factor_n_max": factor_n_max,
    });
    Tally::merge_all(parts).report("bijections", params, start)
}

fn kostka_cells(l: usize) -> Tally {
    let mut t = Tally::default();
    for s in 0..=l / 2 {
        let at = json!({"L": l, "s": s});
        let by_charge = kostka_charge(s, l);
        match two_column(s, l).and_then(|shape| kostka_macdonald(&shape)) {
            Ok(mac) => t.series("macdonald_vs_charge", at.clone(), &mac, &by_charge),
            Err(e) => t.error("macdonald_vs_charge", at.clone(), &e),
        }
        t.series("charge_vs_energy", at.clone(), &by_charge, &config_sum(l, s, Some(0)));
        t.series("charge_vs_closed", at.clone(), &by_charge, &z_closed(l, s, 0));
        if l >= 1 {
            let mut strata = QSeries::zero();
            for level in 1..=l - s {
                match kostka_level(s, l, level) {
                    Ok(k) => strata = strata + k,
                    Err(e) => t.error("level_stratum", json!({"L": l, "s": s, "l": level}), &e),
                }
            }
            t.series("level_strata_sum", at, &strata, &by_charge);
        }
        for eta in enumerate_h(l, s, Some(0)) {
            let at = json!({"L": l, "s": s, "eta": eta.to_string()});
            match sigma(&eta) {
                Ok(sg) => {
                    t.check(sg.ones() == s && epsilon1(&sg) == 0, || {
                        json!({"cell": "sigma_codomain", "at": at, "left": sg.to_string()})
                    });
                    match sigma(&sg) {
                        Ok(back) => t.value("sigma_involution", at.clone(), back.to_string(), eta.to_string()),
                        Err(e) => t.error("sigma_involution", at.clone(), &e),
                    }
                    match charge(&eta) {
                        Ok(c) => t.value("charge_is_energy_of_sigma", at, c, energy(&sg)),
                        Err(e) => t.error("charge_is_energy_of_sigma", at, &e),
                    }
                }
                Err(e) => t.error("sigma", at, &e),
            }
        }
    }
    t
}

/// Kostka polynomials by three routes, σ, the level strata, level-1
/// monomials, the spinon sums and the string-function differences.
pub fn check_kostka(l_max: usize, order: usize) -> Report {
    let start = Instant::now();
    let level1_n_max = 6;
    let mut jobs: Vec<Box<dyn Fn() -> Tally + Sync>> = Vec::new();
    for l in 0..=l_max {
        jobs.push(Box::new(move || kostka_cells(l)));
    }
    for n in 1..=level1_n_max {
        jobs.push(Box::new(move || {
            let mut t = Tally::default();
            for i in 0..=1 {
                let at = json!({"n": n, "i": i});
                match kostka_level(n, 2 * n + i, 1) {
                    Ok(k) => t.series("level1_monomial", at, &k, &QSeries::monomial(1, n * n + i * n)),
                    Err(e) => t.error("level1_monomial", at, &e),
                }
            }
            t
        }));
    }
    for i in 0..=1usize {
        let mut r = 0;
        while r * (r + i) <= order {
            jobs.push(Box::new(move || {
                let mut t = Tally::default();
                let at = json!({"r": r, "i": i});
                let closed = match branching_coefficient(r, i, order) {
                    Ok(b) => b,
                    Err(e) => {
                        t.error("branching", at, &e);
                        return t;
                    }
                };
                match spinon_sum(r, i, order) {
                    Ok(s) => t.series("spinon_vs_branching", at.clone(), &s, &closed),
                    Err(e) => t.error("spinon_vs_branching", at.clone(), &e),
                }
                let (m, l) = ((2 * r + i) as i64, i as i64);
                match (string_function(m, l, order), string_function(m + 2, l, order)) {
                    (Ok(c0), Ok(c1)) => t.series("string_difference", at, &(c0 - c1), &closed),
                    (Err(e), _) | (_, Err(e)) => t.error("string_difference", at, &e),
                }
                t
            }));
            r += 1;
        }
    }
    let parts: Vec<Tally> = jobs.par_iter().map(|j| j()).collect();
    let params = json!({"L_max": l_max, "order": order, "level1_n_max": level1_n_max});
    Tally::merge_all(parts).report("kostka", params, start)
}

fn abf_cells(l: usize) -> Tally {
    let mut t = Tally::default();
    let x_l = HalfSeries::half_monomial(l);
    let times_xl = |h: &HalfSeries| HalfSeries::from_x(h.as_x() * x_l.as_x());
    t.half("up_boundary", json!({"L": l, "s": 0}), &abf_sum(l, 0, Direction::Up), &HalfSeries::half_monomial(0));
    t.half("down_boundary", json!({"L": l, "s": 0}), &abf_sum(l, 0, Direction::Down), &x_l);
    if l % 2 == 1 {
        let s = l.div_ceil(2);
        let zero = HalfSeries::from_x(QSeries::zero());
        t.half("up_vanishes", json!({"L": l, "s": s}), &abf_sum(l, s, Direction::Up), &zero);
    }
    for s in 0..=l / 2 {
        let at = json!({"L": l, "s": s});
        for dir in [Direction::Up, Direction::Down] {
            let cell = format!("sum_vs_closed_{}", dir.name());
            match abf_closed(l, s, dir) {
                Ok(c) => t.half(&cell, at.clone(), &abf_sum(l, s, dir), &c),
                Err(e) => t.error(&cell, at.clone(), &e),
            }
        }
        if s >= 1 {
            let up = &times_xl(&abf_sum(l - 1, s - 1, Direction::Down)) + &abf_sum(l - 1, s, Direction::Up);
            t.half("recursion_up", at.clone(), &abf_sum(l, s, Direction::Up), &up);
            let down = &abf_sum(l - 1, s - 1, Direction::Down) + &times_xl(&abf_sum(l - 1, s, Direction::Up));
            t.half("recursion_down", at.clone(), &abf_sum(l, s, Direction::Down), &down);
        }
        for eta in enumerate_h(l, s, Some(0)) {
            let halves = abf_energy(&eta, 0).expect("boundary 0");
            t.value("offset_law", json!({"L": l, "s": s, "eta": eta.to_string()}), halves, 2 * energy(&eta) + s);
        }
    }
    t
}

/// `Z↗`, `Z↘` by enumeration against the closed forms and the recursions,
/// and the pointwise `q^{s/2}` offset.
pub fn check_abf(l_max: usize) -> Report {
    let start = Instant::now();
    let parts: Vec<Tally> = (0..=l_max).into_par_iter().map(abf_cells).collect();
    Tally::merge_all(parts).report("abf", json!({"L_max": l_max}), start)
}

pub fn check_appendices(l_max: usize, order: usize) -> Report {
    let start = Instant::now();
    let (k, a) = rayon::join(|| check_kostka(l_max, order), || check_abf(l_max));
    let t = Tally { cells: k.cells_checked, failures: k.counterexamples }
        .merge(Tally { cells: a.cells_checked, failures: a.counterexamples });
    t.report("appendices", json!({"L_max": l_max, "order": order}), start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for r in [
            check_equinumerosity(12),
            check_generating_functions(10),
            check_configuration_sums(7),
            check_bijections(6, 10),
            check_appendices(6, 10),
            check_worked_examples(),
        ] {
            assert!(r.pass, "{r}");
            assert!(r.cells_checked > 0);
        }
    }

    #[test]
    fn weight_eight_histograms() {
        let h = Histograms::of_weight(8);
        let v = |m: &BTreeMap<usize, u64>| m.values().copied().collect::<Vec<_>>();
        assert_eq!(v(&h.sqrank), vec![7, 10, 5]);
        assert_eq!(v(&h.mex21), vec![7, 10, 5]);
        assert_eq!(v(&h.rerank), vec![11, 9, 2]);
        assert_eq!(v(&h.mex22), vec![11, 9, 2]);
        let z = Histograms::of_weight(0);
        assert_eq!(v(&z.sqrank), vec![1]);
        assert_eq!(v(&z.mex22), vec![1]);
    }

    #[test]
    fn recursion_tables() {
        let x = recursion_x(6);
        assert_eq!(x[5][2], gaussian(5, 2));
        let xp = recursion_x_plus(6);
        assert_eq!(xp[5][2], QSeries::from_coeffs([0, 0, 1, 1, 1, 1, 1]));
        assert!(xp[3][2].is_zero());
    }

    #[test]
    fn check_ids_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        }
        assert!("nope".parse::<CheckId>().is_err());
    }

    #[test]
    fn failing_cell_reports_payload() {
        let mut t = Tally::default();
        t.series("demo", json!({"L": 3}), &QSeries::one(), &QSeries::zero());
        let r = t.report("demo", json!({"x": 1}), Instant::now());
        assert!(!r.pass);
        assert_eq!(r.counterexamples[0]["at"]["L"], 3);
        assert_eq!(r.to_json()["params"]["x"], 1);
    }
}
