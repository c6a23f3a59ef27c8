//! Integer partitions, Frobenius coordinates, Durfee rectangles, rim-hook
//! stripping, and the statistics built on them (sqrank, rerank, mex, E1).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the unique partition of zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros, so any multiset of parts is accepted.
    pub fn from_multiset(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// An `rows x cols` rectangle; empty if either side is zero.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition(vec![cols; rows])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest_part(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// `λ_i` with 1-based `i`, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.largest_part();
        let mut out = Vec::with_capacity(cols);
        for j in 1..=cols {
            out.push(self.0.iter().take_while(|&&p| p >= j).count());
        }
        Partition(out)
    }

    /// Has at most `max_parts` parts, each at most `max_part`.
    pub fn fits_in(&self, max_parts: usize, max_part: usize) -> bool {
        self.len() <= max_parts && self.largest_part() <= max_part
    }

    /// Multiset union, parts in decreasing order.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_multiset(v)
    }

    /// Multiplicity notation such as `3^2 2 1^2`; the empty partition is `∅`.
    pub fn multiplicity_notation(&self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let m = self.0[i..].iter().take_while(|&&x| x == p).count();
            out.push(if m == 1 { p.to_string() } else { format!("{p}^{m}") });
            i += m;
        }
        out.join(" ")
    }

    /// Parses either the comma form (`19,16,9,2,1`) or multiplicity notation
    /// (`2^3 1^2`, `2^31^2` is not accepted; tokens must be separated).
    pub fn parse_any(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.contains('^') || (t.contains(' ') && !t.contains(',')) {
            parse_multiplicity(t)
        } else {
            t.parse()
        }
    }
}

fn parse_multiplicity(s: &str) -> Result<Partition> {
    let mut parts = Vec::new();
    for tok in s.split_whitespace() {
        let bad = || Error::Parse { what: "partition", token: tok.to_string() };
        let (p, m) = match tok.split_once('^') {
            Some((p, m)) => (p, m),
            None => (tok, "1"),
        };
        let p: usize = p.parse().map_err(|_| bad())?;
        let m: usize = m.parse().map_err(|_| bad())?;
        if p == 0 {
            return Err(bad());
        }
        parts.extend(std::iter::repeat_n(p, m));
    }
    Partition::new(parts)
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "∅" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<usize>() {
                    Ok(v) if v > 0 => Ok(v),
                    _ => Err(Error::Parse { what: "partition", token: tok.to_string() }),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Frobenius coordinates `(x_1..x_d | y_1..y_d)`: arm and leg lengths of the
/// diagonal hooks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusRep {
    pub arms: Vec<usize>,
    pub legs: Vec<usize>,
}

impl FrobeniusRep {
    pub fn new(arms: Vec<usize>, legs: Vec<usize>) -> Result<Self> {
        if arms.len() != legs.len() {
            return Err(Error::InvalidFrobenius(format!(
                "{} arms but {} legs",
                arms.len(),
                legs.len()
            )));
        }
        for (name, v) in [("arms", &arms), ("legs", &legs)] {
            if v.windows(2).any(|w| w[0] <= w[1]) {
                return Err(Error::InvalidFrobenius(format!("{name} {v:?} not strictly decreasing")));
            }
        }
        Ok(FrobeniusRep { arms, legs })
    }

    /// Side of the Durfee square.
    pub fn d(&self) -> usize {
        self.arms.len()
    }
}

impl fmt::Display for FrobeniusRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({} | {})", j(&self.arms), j(&self.legs))
    }
}

pub fn frobenius(lambda: &Partition) -> FrobeniusRep {
    let d = durfee_side(lambda, 0);
    let conj = lambda.conjugate();
    let arms = (1..=d).map(|i| lambda.part(i) - i).collect();
    let legs = (1..=d).map(|i| conj.part(i) - i).collect();
    FrobeniusRep { arms, legs }
}

pub fn from_frobenius(f: &FrobeniusRep) -> Result<Partition> {
    let f = FrobeniusRep::new(f.arms.clone(), f.legs.clone())?;
    let d = f.d();
    let mut parts: Vec<usize> = (0..d).map(|i| f.arms[i] + i + 1).collect();
    // Rows below the square: row i > d meets column j <= d iff y_j + j >= i.
    let depth = f.legs.first().map_or(0, |y| y + 1);
    for i in (d + 1)..=depth {
        parts.push((0..d).filter(|&j| f.legs[j] + j + 1 >= i).count());
    }
    Partition::new(parts)
}

/// Vertical side of the largest `n x (n + a)` rectangle inside `λ`:
/// `max{i : λ_i >= i + a}`, or 0.
pub fn durfee_side(lambda: &Partition, a: usize) -> usize {
    lambda
        .parts()
        .iter()
        .enumerate()
        .take_while(|(i, &p)| p >= i + 1 + a)
        .count()
}

/// `λ = D ⊎ A ⊎ L`: the Durfee rectangle, the cells to its right, and the
/// cells below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub a: usize,
    pub rect: Partition,
    pub right: Partition,
    pub below: Partition,
}

pub fn decompose(lambda: &Partition, a: usize) -> Decomposition {
    let n = durfee_side(lambda, a);
    let w = n + a;
    let p = lambda.parts();
    let right = Partition::from_multiset(p[..n].iter().map(|&x| x - w).collect());
    let below = Partition::from_multiset(p[n..].iter().map(|&x| x.min(w)).collect());
    Decomposition { n, a, rect: Partition::rectangle(n, w), right, below }
}

/// Result of stripping rim hooks of a fixed arm length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stripped {
    pub residual: Partition,
    /// Removed hook lengths, last removed first; weakly decreasing.
    pub hooks: Vec<usize>,
}

/// Removes from `λ` the maximal rim prefix anchored at the top-right cell
/// that spans exactly `arm + 1` columns. Returns the new partition and the
/// hook length. Requires `λ_1 >= arm + 1`.
fn strip_once(parts: &mut Vec<usize>, arm: usize) -> Result<usize> {
    let first = parts[0];
    let c0 = first - arm; // leftmost column of the hook, 1-based
    let mut removed = 0;
    let mut rows = 0;
    for i in 0..parts.len() {
        let next = parts.get(i + 1).copied().unwrap_or(0);
        let old = parts[i];
        let new = if next >= c0 { next - 1 } else { c0 - 1 };
        removed += old - new;
        parts[i] = new;
        rows += 1;
        if next < c0 {
            break;
        }
    }
    while parts.last() == Some(&0) {
        parts.pop();
    }
    // The removed cells must span exactly `arm + 1` columns and leave a
    // partition behind; anything else would be an ambiguous strip.
    let cols = first - (c0 - 1);
    if cols != arm + 1 || parts.windows(2).any(|w| w[0] < w[1]) || removed != arm + rows {
        return Err(Error::Invariant(format!(
            "rim strip with arm {arm} produced {cols} columns and {removed} cells"
        )));
    }
    Ok(removed)
}

/// Repeatedly strips the longest rightmost rim hook with arm length `arm`
/// until fewer than `arm + 1` columns remain.
pub fn strip_rim_hooks(nu: &Partition, arm: usize) -> Result<Stripped> {
    let mut parts = nu.parts().to_vec();
    let mut hooks = Vec::new();
    while parts.first().is_some_and(|&p| p > arm) {
        hooks.push(strip_once(&mut parts, arm)?);
    }
    hooks.reverse();
    if hooks.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invariant(format!("hook lengths {hooks:?} not weakly decreasing")));
    }
    Ok(Stripped { residual: Partition(parts), hooks })
}

/// Least positive integer congruent to `a` mod `modulus` that is not a part.
/// `a == modulus` denotes the residue class of zero.
pub fn mex(lambda: &Partition, modulus: usize, a: usize) -> Result<usize> {
    if modulus == 0 || a > modulus {
        return Err(Error::Domain(format!("mex needs 0 <= a <= A, A >= 1 (got A={modulus}, a={a})")));
    }
    let mut m = if a == 0 { modulus } else { a };
    // Parts are sorted decreasing, so scan them from the small end.
    let mut parts = lambda.parts().iter().rev().peekable();
    loop {
        while parts.next_if(|&&p| p < m).is_some() {}
        if parts.peek() != Some(&&m) {
            return Ok(m);
        }
        m += modulus;
    }
}

/// `max_{0<=i<=d}(y_i - x_{i+1}) - 1` with `y_0 = n` and `x_{d+1} = -1`.
pub fn e1_stat(lambda: &Partition, n: usize) -> usize {
    let f = frobenius(lambda);
    let d = f.d() as i64;
    let y = |i: i64| if i == 0 { n as i64 } else { f.legs[i as usize - 1] as i64 };
    let x = |i: i64| if i == d + 1 { -1 } else { f.arms[i as usize - 1] as i64 };
    let best = (0..=d).map(|i| y(i) - x(i + 1)).max().expect("nonempty range");
    (best - 1) as usize
}

/// Which of the two statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stat {
    /// Durfee square, arm length `n`.
    Sqrank,
    /// Durfee rectangle `n x (n+1)`, arm length `n + 1`.
    Rerank,
}

impl Stat {
    pub fn offset(self) -> usize {
        match self {
            Stat::Sqrank => 0,
            Stat::Rerank => 1,
        }
    }

    pub fn from_offset(a: usize) -> Result<Stat> {
        match a {
            0 => Ok(Stat::Sqrank),
            1 => Ok(Stat::Rerank),
            _ => Err(Error::Domain(format!("statistic offset must be 0 or 1, got {a}"))),
        }
    }

    /// The mex that the statistic is equidistributed with: residue `a + 1`
    /// modulo 2, value `2r + a + 1`.
    pub fn mex_residue(self) -> usize {
        self.offset() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Stat::Sqrank => "sqrank",
            Stat::Rerank => "rerank",
        }
    }
}

/// Intermediate data of the statistic computation, for display and tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatTrace {
    pub decomposition: Decomposition,
    pub stripped: Stripped,
    pub value: usize,
}

pub fn stat_trace(lambda: &Partition, which: Stat) -> StatTrace {
    let a = which.offset();
    let decomposition = decompose(lambda, a);
    let n = decomposition.n;
    let stripped = strip_rim_hooks(&decomposition.right, n + a)
        .expect("rim stripping of a Durfee remainder is well defined");
    let value = e1_stat(&stripped.residual, n);
    StatTrace { decomposition, stripped, value }
}

pub fn stat(lambda: &Partition, which: Stat) -> usize {
    stat_trace(lambda, which).value
}

pub fn sqrank(lambda: &Partition) -> usize {
    stat(lambda, Stat::Sqrank)
}

pub fn rerank(lambda: &Partition) -> usize {
    stat(lambda, Stat::Rerank)
}

/// Partitions of a fixed weight with optional bounds, in lexicographically
/// decreasing order: `(n)` first, `(1^n)` last.
#[derive(Clone, Debug)]
pub struct Partitions {
    max_parts: usize,
    max_part: usize,
    current: Option<Vec<usize>>,
}

/// Largest completion of `rem` into at most `slots` parts each `<= cap`.
fn fill(out: &mut Vec<usize>, mut rem: usize, cap: usize, slots: usize) -> bool {
    if rem > cap.saturating_mul(slots) {
        return false;
    }
    while rem > 0 {
        let p = rem.min(cap);
        out.push(p);
        rem -= p;
    }
    true
}

impl Partitions {
    fn advance(parts: &mut Vec<usize>, max_parts: usize) -> bool {
        let mut tail = 0;
        while let Some(p) = parts.pop() {
            let i = parts.len();
            tail += p;
            if p > 1 {
                let np = p - 1;
                let rem = tail - np;
                parts.push(np);
                if fill(parts, rem, np, max_parts - (i + 1)) {
                    return true;
                }
                parts.pop();
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if Self::advance(&mut succ, self.max_parts) {
            self.current = Some(succ);
        }
        Some(Partition(cur))
    }
}

/// All partitions of `n` with at most `max_parts` parts, each at most
/// `max_part` (`None` means unbounded).
pub fn enumerate(n: usize, max_parts: Option<usize>, max_part: Option<usize>) -> Partitions {
    let max_parts = max_parts.unwrap_or(usize::MAX);
    let max_part = max_part.unwrap_or(usize::MAX);
    let mut first = Vec::new();
    let ok = fill(&mut first, n, max_part.min(n.max(1)), max_parts);
    // The successor step never increases a part, so capping the first part
    // at `max_part` is enough to bound all later ones.
    Partitions { max_parts, max_part, current: ok.then_some(first) }
}

impl Partitions {
    pub fn max_part(&self) -> usize {
        self.max_part
    }
}

/// All partitions of weight `0..=max_weight` inside the given bounds.
pub fn enumerate_up_to(
    max_weight: usize,
    max_parts: Option<usize>,
    max_part: Option<usize>,
) -> impl Iterator<Item = Partition> {
    (0..=max_weight).flat_map(move |n| enumerate(n, max_parts, max_part))
}
