//! Half-integer energies and the boundary-weighted sums `Z↗`, `Z↘`.
//!
//! All exponents are multiples of `1/2`; series are kept in `x = q^{1/2}`
//! so that no fractional exponent exists at runtime.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::paths::{enumerate_h, BitSeq};
use crate::qseries::{bigint_json, gaussian, render_terms, QSeries};

/// A series in `q^{1/2}`: coefficient `k` of the inner series belongs to
/// `q^{k/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSeries(QSeries);

impl HalfSeries {
    pub fn from_x(x: QSeries) -> Self {
        HalfSeries(x)
    }

    /// Substitutes `q = x²`.
    pub fn from_q(s: &QSeries) -> Self {
        let mut coeffs = vec![BigInt::default(); 2 * s.coeffs().len()];
        for (e, c) in s.terms() {
            coeffs[2 * e] = c.clone();
        }
        let x = match s.order() {
            Some(n) => QSeries::truncated_from(coeffs, 2 * n + 1),
            None => QSeries::from_coeffs(coeffs),
        };
        HalfSeries(x)
    }

    /// `q^{k/2}`.
    pub fn half_monomial(k: usize) -> Self {
        HalfSeries(QSeries::monomial(1, k))
    }

    pub fn as_x(&self) -> &QSeries {
        &self.0
    }

    /// Multiply by `q^{k/2}`.
    pub fn shift_halves(&self, k: usize) -> Self {
        HalfSeries(self.0.shift(k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `{"denominator": 2, "terms": [[numerator, coefficient], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> =
            self.0.terms().map(|(e, c)| serde_json::json!([e, bigint_json(c)])).collect();
        serde_json::json!({ "denominator": 2, "terms": terms })
    }
}

impl std::ops::Add<&HalfSeries> for &HalfSeries {
    type Output = HalfSeries;
    fn add(self, rhs: &HalfSeries) -> HalfSeries {
        HalfSeries(&self.0 + &rhs.0)
    }
}

impl fmt::Display for HalfSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_terms(f, self.0.terms(), |e| match e {
            0 => None,
            2 => Some("q".to_string()),
            e if e % 2 == 0 => Some(format!("q^{}", e / 2)),
            e => Some(format!("q^{{{e}/2}}")),
        })?;
        if let Some(n) = self.0.order() {
            write!(f, " + O(q^{{{}/2}})", n + 1)?;
        }
        Ok(())
    }
}

/// Boundary value appended after the last site: 0 for `↗`, 1 for `↘`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn boundary(self) -> u8 {
        match self {
            Direction::Up => 0,
            Direction::Down => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            other => Err(Error::Parse { what: "direction (up|down)", token: other.to_string() }),
        }
    }
}

/// `Σ_{j<L} j·H(η_j,η_{j+1}) + L·H(η_L, boundary)` with `H = 1/2` on
/// unequal pairs, returned in units of `1/2`.
pub fn abf_energy(eta: &BitSeq, boundary: u8) -> Result<usize> {
    if boundary > 1 {
        return Err(domain(format!("boundary must be 0 or 1, got {boundary}")));
    }
    let b = eta.bits();
    let inner: usize = b.windows(2).enumerate().map(|(j, w)| (j + 1) * usize::from(w[0] != w[1])).sum();
    let edge = b.last().map_or(0, |&last| b.len() * usize::from(last != boundary));
    Ok(inner + edge)
}

/// `Σ q^{E_ABF(η) + L·H(η_L, b)}` over `H^(0)(L,s)` by enumeration.
pub fn abf_sum(l: usize, s: usize, dir: Direction) -> HalfSeries {
    let mut coeffs: Vec<BigInt> = Vec::new();
    for eta in enumerate_h(l, s, Some(0)) {
        let e = abf_energy(&eta, dir.boundary()).expect("boundary in range");
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::default());
        }
        coeffs[e] += BigInt::one();
    }
    HalfSeries(QSeries::from_coeffs(coeffs))
}

/// `Z↗ = q^{s/2}([L,s] - [L,s-1])`, `Z↘ = q^{(L-s)/2}([L,s] - q[L,s-1])`.
/// Requires `2s <= L`; `↗` also accepts `L = 2s - 1`, where it vanishes.
pub fn abf_closed(l: usize, s: usize, dir: Direction) -> Result<HalfSeries> {
    let ok = 2 * s <= l || (dir == Direction::Up && 2 * s == l + 1);
    if !ok {
        return Err(domain(format!("closed form needs 2s <= L, got L = {l}, s = {s}")));
    }
    let (li, si) = (l as i64, s as i64);
    let out = match dir {
        Direction::Up => HalfSeries::from_q(&(gaussian(li, si) - gaussian(li, si - 1))).shift_halves(s),
        Direction::Down => {
            HalfSeries::from_q(&(gaussian(li, si) - gaussian(li, si - 1).shift(1))).shift_halves(l - s)
        }
    };
    Ok(out)
}
