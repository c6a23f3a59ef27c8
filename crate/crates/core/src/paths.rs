//! Bit sequences over {0,1}: energy, path encoding, the ε₁ statistic,
//! the Kashiwara-type operators ẽ₁/f̃₁, the bijection Φ onto restricted
//! partitions, configuration sums, and box-ball evolution.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::partitions::{frobenius, from_frobenius, FrobeniusRep, Partition};
use crate::qseries::QSeries;

/// A finite word over {0,1}; index 1 is the leftmost bit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitSeq(Vec<u8>);

impl BitSeq {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Parse { what: "bit string", token: b.to_string() });
        }
        Ok(BitSeq(bits))
    }

    /// `1^ones 0^zeros`.
    pub fn ones_then_zeros(ones: usize, zeros: usize) -> Self {
        let mut v = vec![1; ones];
        v.resize(ones + zeros, 0);
        BitSeq(v)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    /// `L`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s`, the number of ones.
    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn reversed(&self) -> BitSeq {
        BitSeq(self.0.iter().rev().copied().collect())
    }
}

impl FromStr for BitSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse { what: "bit string", token: other.to_string() }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BitSeq)
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// The local energy: 1 on the pair (0,1), 0 elsewhere.
pub fn local_energy(left: u8, right: u8) -> usize {
    usize::from(left == 0 && right == 1)
}

/// `E(η) = Σ_{j=1}^{L-1} j·H(η_j, η_{j+1})`.
pub fn energy(eta: &BitSeq) -> usize {
    eta.0.windows(2).enumerate().map(|(j, w)| (j + 1) * local_energy(w[0], w[1])).sum()
}

/// `S_0 = 0`, `S_i = S_{i-1} + 1 - 2η_i`.
pub fn path_encode(eta: &BitSeq) -> Vec<i64> {
    let mut s = Vec::with_capacity(eta.len() + 1);
    let mut acc = 0i64;
    s.push(acc);
    for &b in &eta.0 {
        acc += 1 - 2 * i64::from(b);
        s.push(acc);
    }
    s
}

/// Minus the minimum of the path.
pub fn epsilon1(eta: &BitSeq) -> usize {
    (-path_encode(eta).into_iter().min().unwrap_or(0)) as usize
}

/// Maximum of `S_1..S_L` (0 for the empty word).
pub fn path_max(eta: &BitSeq) -> i64 {
    path_encode(eta).into_iter().skip(1).max().unwrap_or(0)
}

/// Lowering operator: `H^(r)(L,s) -> H^(r+1)(L,s+1)`, defined when
/// `s <= floor(L/2) - 1`. With `i` the last position where the path attains
/// its minimum, the step `η_{i+1}` turns from 0 to 1: the window
/// `(0,0)` becomes `(1,0)` when `i = 0`, and `(1,0,0)` becomes `(1,1,0)`
/// otherwise.
pub fn crystal_f1(eta: &BitSeq) -> Result<BitSeq> {
    let l = eta.len();
    let s = eta.ones();
    if l < 2 || s + 1 > l / 2 {
        return Err(domain(format!("f1 undefined on {eta}: needs s <= floor(L/2) - 1")));
    }
    let path = path_encode(eta);
    let min = *path.iter().min().expect("nonempty");
    let i = path.iter().rposition(|&v| v == min).expect("minimum exists");
    flip(eta, i, 0)
}

/// Raising operator, inverse of [`crystal_f1`]; defined when `ε₁ >= 1`.
/// With `i` the first position where the path attains its minimum, the
/// step `η_i` turns from 1 to 0: `(1,0)` becomes `(0,0)` when `i = 1`, and
/// `(1,1,0)` becomes `(1,0,0)` otherwise.
pub fn crystal_e1(eta: &BitSeq) -> Result<BitSeq> {
    let path = path_encode(eta);
    let min = *path.iter().min().expect("nonempty");
    if min >= 0 {
        return Err(domain(format!("e1 undefined on {eta}: epsilon1 is 0")));
    }
    let i = path.iter().position(|&v| v == min).expect("minimum exists");
    flip(eta, i - 1, 1)
}

fn flip(eta: &BitSeq, idx: usize, expected: u8) -> Result<BitSeq> {
    let mut out = eta.0.clone();
    match out.get(idx) {
        Some(&b) if b == expected => {
            out[idx] = 1 - b;
            Ok(BitSeq(out))
        }
        _ => Err(Error::Invariant(format!("expected {expected} at position {} of {eta}", idx + 1))),
    }
}

/// All words of length `l` with `s` ones, lexicographically increasing
/// (`0^{L-s}1^s` first), optionally restricted to `ε₁ = r`.
pub fn enumerate_h(l: usize, s: usize, r: Option<usize>) -> impl Iterator<Item = BitSeq> {
    let start = (s <= l).then(|| {
        let mut v = vec![0u8; l - s];
        v.resize(l, 1);
        v
    });
    Combinations { current: start }.filter(move |eta| r.is_none_or(|r| epsilon1(eta) == r))
}

struct Combinations {
    current: Option<Vec<u8>>,
}

impl Iterator for Combinations {
    type Item = BitSeq;
    fn next(&mut self) -> Option<BitSeq> {
        let cur = self.current.take()?;
        let mut v = cur.clone();
        // next lexicographic permutation
        if let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
            let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot");
            v.swap(i - 1, j);
            v[i..].reverse();
            self.current = Some(v);
        }
        Some(BitSeq(cur))
    }
}

/// `Σ q^{E(η)}` over `H(L,s)`, or over the `ε₁ = r` stratum.
pub fn config_sum(l: usize, s: usize, r: Option<usize>) -> QSeries {
    let mut coeffs: Vec<BigInt> = Vec::new();
    for eta in enumerate_h(l, s, r) {
        let e = energy(&eta);
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::default());
        }
        coeffs[e] += BigInt::one();
    }
    QSeries::from_coeffs(coeffs)
}

/// Maximal runs `1^{α_k} 0^{β_k}`, `k = 1..=d+1`.
fn runs(eta: &BitSeq) -> Vec<(usize, usize)> {
    let b = eta.bits();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() || out.is_empty() {
        let ones = b[i..].iter().take_while(|&&x| x == 1).count();
        i += ones;
        let zeros = b[i..].iter().take_while(|&&x| x == 0).count();
        i += zeros;
        out.push((ones, zeros));
    }
    out
}

/// Energy-preserving bijection `H(L,s) -> P^{(s)}_{L-s}`.
pub fn phi(eta: &BitSeq) -> Partition {
    let blocks = runs(eta);
    let d = blocks.len() - 1;
    if d == 0 {
        return Partition::empty();
    }
    let mut arms = Vec::with_capacity(d);
    let mut legs = Vec::with_capacity(d);
    for i in 1..=d {
        let prefix = &blocks[..=d - i];
        arms.push(prefix.iter().map(|b| b.1).sum::<usize>() - 1);
        legs.push(prefix.iter().map(|b| b.0).sum::<usize>());
    }
    from_frobenius(&FrobeniusRep { arms, legs }).expect("run lengths give strictly decreasing coordinates")
}

/// Inverse of [`phi`]; `λ` must fit in an `s x (L-s)` box.
pub fn phi_inv(lambda: &Partition, l: usize, s: usize) -> Result<BitSeq> {
    if s > l || !lambda.fits_in(s, l - s) {
        return Err(domain(format!("{lambda:?} is not in P^({s})_{}", l.saturating_sub(s))));
    }
    let f = frobenius(lambda);
    let d = f.d();
    if d == 0 {
        return Ok(BitSeq::ones_then_zeros(s, l - s));
    }
    let (x, y) = (&f.arms, &f.legs);
    let mut out = Vec::with_capacity(l);
    let mut push = |ones: usize, zeros: usize| {
        out.extend(std::iter::repeat_n(1u8, ones));
        out.extend(std::iter::repeat_n(0u8, zeros));
    };
    push(y[d - 1], x[d - 1] + 1);
    for i in (1..d).rev() {
        push(y[i - 1] - y[i], x[i - 1] - x[i]);
    }
    push(s - y[0], l - s - x[0] - 1);
    Ok(BitSeq(out))
}

/// One box-ball time step via a left-to-right carrier of unbounded
/// capacity. Errors if balls remain in the carrier after the last box.
pub fn bbs_evolve(eta: &BitSeq) -> Result<BitSeq> {
    let mut carrier = 0usize;
    let mut out = Vec::with_capacity(eta.len());
    for &b in eta.bits() {
        if b == 1 {
            carrier += 1;
            out.push(0);
        } else if carrier > 0 {
            carrier -= 1;
            out.push(1);
        } else {
            out.push(0);
        }
    }
    if carrier > 0 {
        return Err(domain(format!("carrier nonempty at end: {carrier} ball(s) left after evolving {eta}")));
    }
    Ok(BitSeq(out))
}

/// Reverse, then evolve once. Defined on `H^(0)(L,s)`.
pub fn sigma(eta: &BitSeq) -> Result<BitSeq> {
    if epsilon1(eta) != 0 {
        return Err(domain(format!("sigma needs epsilon1 = 0, {eta} has {}", epsilon1(eta))));
    }
    bbs_evolve(&eta.reversed())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitSeq {
        s.parse().unwrap()
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(&b("01011001100100")), 22);
        assert_eq!(energy(&b("11000")), 0);
        assert_eq!(energy(&b("00101")), 6);
    }

    #[test]
    fn path_examples() {
        assert_eq!(path_encode(&b("")), vec![0]);
        assert_eq!(path_encode(&b("11000")), vec![0, -1, -2, -1, 0, 1]);
        assert_eq!(*path_encode(&b("01011001100100")).last().unwrap(), 2);
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon1(&b("01011001100100")), 1);
        assert_eq!(epsilon1(&b("11000")), 2);
        assert_eq!(epsilon1(&b("00110")), 0);
    }

    #[test]
    fn crystal_examples() {
        assert_eq!(crystal_f1(&b("01011001100100")).unwrap(), b("01011001110100"));
        assert_eq!(crystal_e1(&b("01011001110100")).unwrap(), b("01011001100100"));
        assert_eq!(crystal_e1(&b("10")).unwrap(), b("00"));
        assert!(crystal_e1(&b("0011")).is_err());
        assert!(crystal_f1(&b("0101")).is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_h(5, 2, None).count(), 10);
        let r0: Vec<String> = enumerate_h(5, 2, Some(0)).map(|e| e.to_string()).collect();
        assert_eq!(r0, ["00011", "00101", "00110", "01001", "01010"]);
        let z: Vec<_> = enumerate_h(4, 0, None).collect();
        assert_eq!(z, vec![b("0000")]);
        assert_eq!(epsilon1(&z[0]), 0);
        assert_eq!(enumerate_h(3, 4, None).count(), 0);
    }

    #[test]
    fn config_sum_examples() {
        let ex = |v: &[i64]| QSeries::from_coeffs(v.iter().copied());
        assert_eq!(config_sum(5, 2, None), ex(&[1, 1, 2, 2, 2, 1, 1]));
        assert_eq!(config_sum(5, 2, Some(1)), ex(&[0, 1, 1, 1, 1]));
        assert_eq!(config_sum(5, 2, Some(2)), ex(&[1]));
    }

    #[test]
    fn phi_examples() {
        let eta = b("101001100011010");
        let lam = phi(&eta);
        assert_eq!(lam.parts(), &[7, 7, 5, 4, 4, 2, 1]);
        assert_eq!(energy(&eta), 30);
        assert_eq!(phi_inv(&lam, 15, 7).unwrap(), eta);
        assert_eq!(phi(&b("1110000")), Partition::empty());
        let l11 = Partition::new(vec![1, 1]).unwrap();
        for l in 8..12 {
            assert_eq!(epsilon1(&phi_inv(&l11, l, 3).unwrap()), 2);
        }
        assert!(phi_inv(&Partition::new(vec![5]).unwrap(), 6, 2).is_err());
    }

    #[test]
    fn bbs_examples() {
        assert_eq!(bbs_evolve(&b("1110000")).unwrap(), b("0001110"));
        assert_eq!(bbs_evolve(&b("0110010")).unwrap(), b("0001101"));
        assert_eq!(bbs_evolve(&b("0110100")).unwrap(), b("0001011"));
        assert!(bbs_evolve(&b("0011")).is_err());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&b("0000111")).unwrap(), b("0001110"));
        assert_eq!(sigma(&b("0100110")).unwrap(), b("0001101"));
        assert_eq!(sigma(&b("0010110")).unwrap(), b("0001011"));
        assert!(sigma(&b("1000")).is_err());
    }

    #[test]
    fn parse_errors_name_token() {
        let e = "0120".parse::<BitSeq>().unwrap_err();
        assert_eq!(e, Error::Parse { what: "bit string", token: "2".into() });
    }
}
