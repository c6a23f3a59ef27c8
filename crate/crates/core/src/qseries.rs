//! Exact polynomials and truncated power series in `q`.
//!
//! A [`QSeries`] is a dense coefficient vector over [`BigInt`] together with
//! an optional truncation order. `order == None` marks a genuine polynomial;
//! `order == Some(n)` means the coefficients of `q^0..=q^n` are known and
//! everything above is unknown. Mixing the two follows the min-order rule:
//! the result of any binary operation is truncated at the smallest finite
//! order among the operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    // Invariant: no trailing zeros; len <= order + 1 when truncated.
    coeffs: Vec<BigInt>,
    order: Option<usize>,
}

/// Length of a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    Finite(usize),
    Infinite,
}

fn min_order(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl QSeries {
    fn build(mut coeffs: Vec<BigInt>, order: Option<usize>) -> Self {
        if let Some(n) = order {
            coeffs.truncate(n + 1);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QSeries { coeffs, order }
    }

    pub fn zero() -> Self {
        QSeries { coeffs: Vec::new(), order: None }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^k` as an exact polynomial.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::build(coeffs, None)
    }

    /// Exact polynomial from its coefficients, constant term first.
    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::build(coeffs.into_iter().map(Into::into).collect(), None)
    }

    /// Series known up to and including `q^order`.
    pub fn truncated_from<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::build(coeffs.into_iter().map(Into::into).collect(), Some(order))
    }

    /// The truncated zero series `O(q^{order+1})`.
    pub fn zero_to(order: usize) -> Self {
        QSeries { coeffs: Vec::new(), order: Some(order) }
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero series: the true degree for an exact polynomial,
    /// the truncation order for a truncated one. `None` for the exact zero.
    pub fn degree(&self) -> Option<usize> {
        match self.order {
            Some(n) => Some(n),
            None => self.coeffs.len().checked_sub(1),
        }
    }

    /// Index of the highest stored nonzero coefficient.
    pub fn top_exponent(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_exponent(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient as `i64`, if it fits.
    pub fn coeff_i64(&self, k: usize) -> Option<i64> {
        self.coeff(k).to_i64()
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::build(self.coeffs.clone(), min_order(self.order, Some(order)))
    }

    /// Value at `q = 1` (sum of the stored coefficients).
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiply by `c * q^k`.
    pub fn scale_monomial(&self, c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::build(Vec::new(), self.order.map(|n| n + k));
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().map(|x| x * &c));
        Self::build(coeffs, self.order.map(|n| n + k))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        self.scale_monomial(1, k)
    }

    /// Multiply in place by `(1 - q^k)`, `k >= 1`.
    fn mul_one_minus_pow(&mut self, k: usize) {
        let limit = match self.order {
            Some(n) => (self.coeffs.len() + k).min(n + 1),
            None => self.coeffs.len() + k,
        };
        self.coeffs.resize(limit, BigInt::zero());
        for i in (k..limit).rev() {
            let sub = self.coeffs[i - k].clone();
            self.coeffs[i] -= sub;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Exact quotient of two exact polynomials; errors if the division
    /// leaves a remainder or the divisor is zero.
    pub fn div_exact(&self, divisor: &QSeries) -> Result<QSeries> {
        if !self.is_exact() || !divisor.is_exact() {
            return Err(Error::Domain("exact division needs exact polynomials".into()));
        }
        let Some(dtop) = divisor.top_exponent() else {
            return Err(Error::Domain("division by zero polynomial".into()));
        };
        let lead = &divisor.coeffs[dtop];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dtop {
            return if rem.is_empty() { Ok(QSeries::zero()) } else { Err(Error::InexactDivision) };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dtop];
        for qi in (0..quot.len()).rev() {
            let top = rem[qi + dtop].clone();
            if top.is_zero() {
                continue;
            }
            if !(&top % lead).is_zero() {
                return Err(Error::InexactDivision);
            }
            let f = top / lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[qi + j] -= &f * d;
                }
            }
            quot[qi] = f;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(QSeries::build(quot, None))
    }

    fn add_sub(&self, rhs: &QSeries, negate: bool) -> QSeries {
        let order = min_order(self.order, rhs.order);
        let mut len = self.coeffs.len().max(rhs.coeffs.len());
        if let Some(n) = order {
            len = len.min(n + 1);
        }
        let coeffs = (0..len)
            .map(|k| {
                let a = self.coeffs.get(k);
                let b = rhs.coeffs.get(k);
                match (a, b, negate) {
                    (Some(a), Some(b), false) => a + b,
                    (Some(a), Some(b), true) => a - b,
                    (Some(a), None, _) => a.clone(),
                    (None, Some(b), false) => b.clone(),
                    (None, Some(b), true) => -b,
                    (None, None, _) => BigInt::zero(),
                }
            })
            .collect();
        QSeries::build(coeffs, order)
    }

    fn mul_ref(&self, rhs: &QSeries) -> QSeries {
        let order = min_order(self.order, rhs.order);
        if self.is_zero() || rhs.is_zero() {
            return QSeries::build(Vec::new(), order);
        }
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if let Some(n) = order {
            len = len.min(n + 1);
        }
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries::build(out, order)
    }

    /// `[[exponent, coefficient], ...]`; coefficients outside the `i64`
    /// range are emitted as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|(e, c)| serde_json::json!([e, bigint_json(c)]))
            .collect();
        serde_json::Value::Array(terms)
    }
}

pub(crate) fn bigint_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

/// Writes `c0 + c1*q + c2*q^2 + ...` with `var` as the variable name and
/// `exp` rendering each exponent suffix.
pub(crate) fn render_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, &'a BigInt)>,
    monomial: impl Fn(usize) -> Option<String>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        match monomial(e) {
            None => write!(f, "{abs}")?,
            Some(m) if abs.is_one() => write!(f, "{m}")?,
            Some(m) => write!(f, "{abs}*{m}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            if let Some(n) = self.order {
                return write!(f, "O(q^{})", n + 1);
            }
        } else {
            render_terms(f, self.terms(), |e| match e {
                0 => None,
                1 => Some("q".to_string()),
                _ => Some(format!("q^{e}")),
            })?;
        }
        match self.order {
            Some(n) if !self.is_zero() => write!(f, " + O(q^{})", n + 1),
            Some(_) => Ok(()),
            None if self.is_zero() => write!(f, "0"),
            None => Ok(()),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                $body(self, rhs)
            }
        }
        impl $tr<QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                $body(&self, &rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                $body(&self, rhs)
            }
        }
        impl $tr<QSeries> for &QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &QSeries, b: &QSeries| a.add_sub(b, false));
forward_binop!(Sub, sub, |a: &QSeries, b: &QSeries| a.add_sub(b, true));
forward_binop!(Mul, mul, |a: &QSeries, b: &QSeries| a.mul_ref(b));

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::build(self.coeffs.iter().map(|c| -c).collect(), self.order)
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl std::iter::Sum for QSeries {
    fn sum<I: Iterator<Item = QSeries>>(iter: I) -> QSeries {
        iter.fold(QSeries::zero(), |acc, x| acc + x)
    }
}

/// `(q^{a_exp}; q)_n = prod_{k=1}^{n} (1 - q^{a_exp + k - 1})`.
///
/// For `n = Infinite` an order is required; factors whose exponent exceeds
/// it are skipped since they cannot touch the retained coefficients. With a
/// finite `n` and `order = None` the result is an exact polynomial.
pub fn pochhammer(a_exp: usize, n: PochLen, order: Option<usize>) -> Result<QSeries> {
    let mut acc = match order {
        Some(o) => QSeries::truncated_from([1], o),
        None => QSeries::one(),
    };
    if n == PochLen::Infinite && order.is_none() {
        return Err(Error::Domain("infinite product needs a finite truncation order".into()));
    }
    let mut k = 1;
    loop {
        if let PochLen::Finite(n) = n {
            if k > n {
                break;
            }
        }
        let e = a_exp + k - 1;
        if e == 0 {
            return Ok(match order {
                Some(o) => QSeries::zero_to(o),
                None => QSeries::zero(),
            });
        }
        if order.is_some_and(|o| e > o) {
            break;
        }
        acc.mul_one_minus_pow(e);
        k += 1;
    }
    Ok(acc)
}

/// `prod (1 - q^e)` over the given exponents (all `>= 1`), truncated at
/// `order` when given.
pub fn product_one_minus(exps: impl IntoIterator<Item = usize>, order: Option<usize>) -> QSeries {
    let mut acc = match order {
        Some(o) => QSeries::truncated_from([1], o),
        None => QSeries::one(),
    };
    for e in exps {
        assert!(e >= 1, "factor (1 - q^0) vanishes");
        if order.is_some_and(|o| e > o) {
            continue;
        }
        acc.mul_one_minus_pow(e);
    }
    acc
}

/// Exact `(q;q)_n`.
pub fn qfac(n: usize) -> QSeries {
    pochhammer(1, PochLen::Finite(n), None).expect("finite product")
}

/// `1 / (q^{a_exp}; q)_∞` truncated at `order`; `a_exp >= 1`.
pub fn inv_poch_inf(a_exp: usize, order: usize) -> QSeries {
    let p = pochhammer(a_exp.max(1), PochLen::Infinite, Some(order)).expect("finite order");
    invert_unit(&p, order).expect("constant term is 1")
}

/// `1/(q;q)_∞` truncated at `order`: the partition generating function.
pub fn euler_inverse(order: usize) -> QSeries {
    inv_poch_inf(1, order)
}

/// Multiplicative inverse of a series with constant term `±1`, to `order`.
pub fn invert_unit(s: &QSeries, order: usize) -> Result<QSeries> {
    let order = min_order(s.order, Some(order)).expect("finite");
    let c0 = s.coeff(0);
    if !(c0.is_one() || (-&c0).is_one()) {
        return Err(Error::NotUnit(c0.to_string()));
    }
    let mut t: Vec<BigInt> = Vec::with_capacity(order + 1);
    t.push(c0.clone());
    for k in 1..=order {
        let mut acc = BigInt::zero();
        for j in 1..=k.min(s.coeffs.len().saturating_sub(1)) {
            let sj = &s.coeffs[j];
            if !sj.is_zero() {
                acc += sj * &t[k - j];
            }
        }
        // t_k = -c0^{-1} * acc, and c0^{-1} = c0 for a unit.
        t.push(-(&c0 * acc));
    }
    Ok(QSeries::build(t, Some(order)))
}

/// The Gaussian polynomial `[L, m]`, zero outside `0 <= m <= L`.
///
/// Computed as the exact quotient
/// `((q;q)_L / (q;q)_{L-k}) / (q;q)_k` with `k = min(m, L-m)`.
pub fn gaussian(l: i64, m: i64) -> QSeries {
    if m < 0 || m > l {
        return QSeries::zero();
    }
    let k = m.min(l - m) as usize;
    let l = l as usize;
    let mut num = QSeries::one();
    for e in (l - k + 1)..=l {
        num.mul_one_minus_pow(e);
    }
    num.div_exact(&qfac(k)).expect("Gaussian quotient is exact")
}
