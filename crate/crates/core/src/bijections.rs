//! Weight-preserving bijections between partitions and pairs of partitions.
//!
//! With `k = n + a`:
//! * [`psi`] sends `ν` (at most `n` parts) to `(λ, μ)` where `λ` fits in an
//!   `n x k` box and every part of `μ` lies in `[k+1, k+n]`;
//! * [`xi`] is its inverse;
//! * [`phi_a`] extends `psi` to `P^(n) x P_k -> P^(n)_k x P_{2n+a}` by
//!   merging the second component with a partition into parts `<= k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::partitions::{strip_rim_hooks, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrippedPair {
    pub lam: Partition,
    pub mu: Partition,
    pub n: usize,
    pub a: usize,
}

impl StrippedPair {
    /// Checks `λ ∈ P^(n)_{n+a}` and every part of `μ` in `[n+a+1, 2n+a]`.
    pub fn new(lam: Partition, mu: Partition, n: usize, a: usize) -> Result<Self> {
        let k = n + a;
        if !lam.fits_in(n, k) {
            return Err(domain(format!("lam = ({lam}) must have at most {n} parts, each <= {k}")));
        }
        if let Some(bad) = mu.parts().iter().find(|&&m| m <= k || m > k + n) {
            return Err(domain(format!("mu part {bad} outside [{}, {}]", k + 1, k + n)));
        }
        Ok(StrippedPair { lam, mu, n, a })
    }

    pub fn weight(&self) -> usize {
        self.lam.weight() + self.mu.weight()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lam": self.lam.parts(),
            "mu": self.mu.parts(),
            "n": self.n,
            "a": self.a,
        })
    }
}

impl fmt::Display for StrippedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.lam, self.mu)
    }
}

fn check_a(a: usize) -> Result<()> {
    if a > 1 {
        return Err(domain(format!("a must be 0 or 1, got {a}")));
    }
    Ok(())
}

pub fn psi(nu: &Partition, n: usize, a: usize) -> Result<StrippedPair> {
    check_a(a)?;
    if nu.len() > n {
        return Err(domain(format!("({nu}) has {} parts, more than n = {n}", nu.len())));
    }
    let s = strip_rim_hooks(nu, n + a)?;
    let mu = Partition::new(s.hooks)?;
    StrippedPair::new(s.residual, mu, n, a)
}

/// Reattaches rim hooks of lengths `μ_1 >= μ_2 >= ...`, each with arm
/// length `n + a`. The hook of length `n + a + l` occupies rows `1..=l`,
/// its lower-left cell sitting at `(l, λ_l + 1)`.
pub fn xi(pair: &StrippedPair) -> Result<Partition> {
    let pair = StrippedPair::new(pair.lam.clone(), pair.mu.clone(), pair.n, pair.a)?;
    check_a(pair.a)?;
    let k = pair.n + pair.a;
    let mut parts = pair.lam.parts().to_vec();
    for &m in pair.mu.parts() {
        let l = m - k;
        if parts.len() < l {
            parts.resize(l, 0);
        }
        // Rows 2..=l shift down from the row above plus one cell; row 1
        // ends arm-length columns right of the new cell in row l.
        let last = parts[l - 1];
        for j in (1..l).rev() {
            parts[j] = parts[j - 1] + 1;
        }
        parts[0] = last + 1 + k;
        if parts.len() > 1 && parts[0] < parts[1] {
            return Err(domain(format!("hook of length {m} cannot be attached to ({})", pair.lam)));
        }
    }
    Partition::new(parts)
}

/// `(ν, π) -> (Ψ_1(ν), Ψ_2(ν) ∪ π)` for `ν ∈ P^(n)`, `π ∈ P_{n+a}`.
pub fn phi_a(nu: &Partition, pi: &Partition, n: usize, a: usize) -> Result<(Partition, Partition)> {
    check_a(a)?;
    if pi.largest_part() > n + a {
        return Err(domain(format!("({pi}) has a part larger than n + a = {}", n + a)));
    }
    let pair = psi(nu, n, a)?;
    Ok((pair.lam, pair.mu.union(pi)))
}

/// Inverse of [`phi_a`]: splits the second component at `n + a`.
pub fn phi_a_inv(lam: &Partition, merged: &Partition, n: usize, a: usize) -> Result<(Partition, Partition)> {
    check_a(a)?;
    let k = n + a;
    if merged.largest_part() > k + n {
        return Err(domain(format!("({merged}) has a part larger than 2n + a = {}", k + n)));
    }
    let (big, small): (Vec<usize>, Vec<usize>) = merged.parts().iter().partition(|&&m| m > k);
    let pair = StrippedPair::new(lam.clone(), Partition::new(big)?, n, a)?;
    Ok((xi(&pair)?, Partition::new(small)?))
}
