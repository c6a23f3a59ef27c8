//! Kostka polynomials `K_{λ,(1^L)}(q)` for two-column shapes by two
//! independent routes, their level-restricted refinements, string functions
//! and branching coefficients of level-1 modules.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::partitions::Partition;
use crate::paths::{energy, enumerate_h, epsilon1, local_energy, path_max, sigma, BitSeq};
use crate::qseries::{euler_inverse, invert_unit, product_one_minus, qfac, QSeries};

/// The shape `2^s 1^{L-2s}`.
pub fn two_column(s: usize, l: usize) -> Result<Partition> {
    if 2 * s > l {
        return Err(domain(format!("2^{s} 1^(L-2s) needs 2s <= L, got L = {l}")));
    }
    let mut parts = vec![2; s];
    parts.resize(l - s, 1);
    Partition::new(parts)
}

/// Hook lengths `arm + leg + 1`, one per cell, row by row.
pub fn hook_lengths(lambda: &Partition) -> Vec<usize> {
    let conj = lambda.conjugate();
    let mut out = Vec::with_capacity(lambda.weight());
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            out.push((row - j - 1) + (conj.parts()[j] - i - 1) + 1);
        }
    }
    out
}

/// `H_λ(q) = prod_{x ∈ λ} (1 - q^{h(x)})`.
pub fn hook_length_poly(lambda: &Partition) -> QSeries {
    product_one_minus(hook_lengths(lambda), None)
}

/// `q^{n(λ')} (q;q)_L / H_λ(q)` with `n(λ') = Σ C(λ_i, 2)`.
pub fn kostka_macdonald(lambda: &Partition) -> Result<QSeries> {
    let n: usize = lambda.parts().iter().map(|&p| p * p.saturating_sub(1) / 2).sum();
    let quotient = qfac(lambda.weight()).div_exact(&hook_length_poly(lambda)).map_err(|e| match e {
        Error::InexactDivision => Error::Invariant(format!("hook formula for ({lambda}) left a remainder")),
        other => other,
    })?;
    Ok(quotient.shift(n))
}

/// `Σ_j (L - j) H(η_j, η_{j+1})`, the charge of the standard tableau whose
/// second column holds the positions of the ones.
pub fn charge(eta: &BitSeq) -> Result<usize> {
    if epsilon1(eta) != 0 {
        return Err(domain(format!("charge needs epsilon1 = 0, {eta} has {}", epsilon1(eta))));
    }
    let l = eta.len();
    Ok(eta.bits().windows(2).enumerate().map(|(j, w)| (l - j - 1) * local_energy(w[0], w[1])).sum())
}

fn accumulate(exps: impl Iterator<Item = usize>) -> QSeries {
    let mut coeffs: Vec<BigInt> = Vec::new();
    for e in exps {
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::default());
        }
        coeffs[e] += BigInt::one();
    }
    QSeries::from_coeffs(coeffs)
}

/// `Σ q^{charge(η)}` over `H^(0)(L,s)`.
pub fn kostka_charge(s: usize, l: usize) -> QSeries {
    accumulate(enumerate_h(l, s, Some(0)).map(|eta| charge(&eta).expect("epsilon1 = 0 by construction")))
}

/// `Σ q^{E(σ(η))}` over the words in `H^(0)(L,s)` whose path reaches
/// height exactly `level`.
pub fn kostka_level(s: usize, l: usize, level: usize) -> Result<QSeries> {
    let mut exps = Vec::new();
    for eta in enumerate_h(l, s, Some(0)) {
        if path_max(&eta) == level as i64 {
            exps.push(energy(&sigma(&eta)?));
        }
    }
    Ok(accumulate(exps.into_iter()))
}

/// `C_{m,l}(q) = q^{(m²-l²)/4} / (q;q)_∞` when `m + l` is even, else 0.
pub fn string_function(m: i64, l: i64, order: usize) -> Result<QSeries> {
    if l < 0 || m < l {
        return Err(domain(format!("string function needs m >= l >= 0, got m = {m}, l = {l}")));
    }
    if (m + l) % 2 != 0 {
        return Ok(QSeries::zero_to(order));
    }
    let e = ((m * m - l * l) / 4) as usize;
    Ok(euler_inverse(order).shift(e).truncate(order))
}

/// Closed form `q^{r(r+i)} (1 - q^{2r+1+i}) / (q;q)_∞`.
pub fn branching_coefficient(r: usize, i: usize, order: usize) -> Result<QSeries> {
    if i > 1 {
        return Err(domain(format!("i must be 0 or 1, got {i}")));
    }
    let head = product_one_minus([2 * r + 1 + i], None).shift(r * (r + i));
    Ok(&head * &euler_inverse(order))
}

/// `Σ_{n >= r} K_{2^{n-r} 1^{2r+i}}(q) K^{(1)}_{2^n 1^i}(q) / (q;q)_{2n+i}`.
///
/// The level-1 stratum of `H^(0)(2n+i, n)` is the single alternating word,
/// whose charge is `n² + in`; terms with that exponent above `order` are
/// therefore dropped. The `n = 0`, `i = 0` level factor is taken as 1.
pub fn spinon_sum(r: usize, i: usize, order: usize) -> Result<QSeries> {
    if i > 1 {
        return Err(domain(format!("i must be 0 or 1, got {i}")));
    }
    let mut acc = QSeries::zero_to(order);
    let mut n = r;
    while n * n + i * n <= order {
        let l = 2 * n + i;
        let k = kostka_macdonald(&two_column(n - r, l)?)?;
        // The empty word has no path steps and so lies in no level stratum;
        // the n = 0 term of the identity is 1.
        let level = if l == 0 { QSeries::one() } else { kostka_level(n, l, 1)? };
        let denom = invert_unit(&qfac(l), order)?;
        acc = acc + &(&k * &level) * &denom;
        n += 1;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{gaussian, pochhammer, PochLen};

    fn ex(v: &[i64]) -> QSeries {
        QSeries::from_coeffs(v.iter().copied())
    }

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hook_polynomials() {
        assert_eq!(hook_length_poly(&p(&[1])), ex(&[1, -1]));
        let expect = &(&ex(&[1, 0, 0, -1]) * &ex(&[1, -1])) * &ex(&[1, -1]);
        assert_eq!(hook_length_poly(&p(&[2, 1])), expect);
        let closed = &(&qfac(2) * &qfac(1)) * &pochhammer(3, PochLen::Finite(2), None).unwrap();
        assert_eq!(hook_length_poly(&p(&[2, 2, 1])), closed);
    }

    #[test]
    fn macdonald_examples() {
        assert_eq!(kostka_macdonald(&p(&[2, 2, 1])).unwrap(), ex(&[0, 0, 1, 1, 1, 1, 1]));
        assert_eq!(kostka_macdonald(&p(&[1, 1, 1, 1])).unwrap(), QSeries::one());
        assert_eq!(kostka_macdonald(&p(&[2, 1])).unwrap(), ex(&[0, 1, 1]));
        assert_eq!(kostka_macdonald(&p(&[3])).unwrap(), ex(&[0, 0, 0, 1]));
    }

    #[test]
    fn charge_examples() {
        assert_eq!(charge(&"0000".parse().unwrap()).unwrap(), 0);
        assert_eq!(charge(&"00110".parse().unwrap()).unwrap(), 3);
        assert!(charge(&"10".parse().unwrap()).is_err());
        let alt: BitSeq = "010101".parse().unwrap();
        assert_eq!(energy(&sigma(&alt).unwrap()), 9);
        assert_eq!(charge(&alt).unwrap(), 9);
    }

    #[test]
    fn kostka_charge_examples() {
        assert_eq!(kostka_charge(2, 5), ex(&[0, 0, 1, 1, 1, 1, 1]));
        assert_eq!(kostka_charge(0, 6), QSeries::one());
        assert_eq!(kostka_charge(1, 2), ex(&[0, 1]));
        assert_eq!(kostka_charge(3, 5), QSeries::zero());
    }

    #[test]
    fn level_examples() {
        for n in 1..=4 {
            assert_eq!(kostka_level(n, 2 * n, 1).unwrap(), QSeries::monomial(1, n * n));
            assert_eq!(kostka_level(n, 2 * n + 1, 1).unwrap(), QSeries::monomial(1, n * n + n));
        }
        assert_eq!(kostka_level(1, 2, 1).unwrap(), ex(&[0, 1]));
    }

    #[test]
    fn string_function_examples() {
        assert_eq!(string_function(0, 0, 10).unwrap(), euler_inverse(10));
        assert!(string_function(1, 0, 10).unwrap().is_zero());
        assert_eq!(string_function(2, 0, 10).unwrap(), euler_inverse(10).shift(1).truncate(10));
        assert!(string_function(0, 2, 10).is_err());
        assert!(string_function(1, -1, 10).is_err());
    }

    #[test]
    fn branching_examples() {
        assert_eq!(branching_coefficient(1, 0, 10).unwrap().coeff(8), BigInt::from(10));
        assert_eq!(branching_coefficient(0, 1, 10).unwrap().coeff(8), BigInt::from(11));
        let b = branching_coefficient(3, 0, 20).unwrap();
        assert_eq!(b.low_exponent(), Some(9));
    }

    #[test]
    fn spinon_matches_closed_form_small() {
        for i in 0..=1 {
            for r in 0..=2 {
                assert_eq!(spinon_sum(r, i, 15).unwrap(), branching_coefficient(r, i, 15).unwrap());
            }
        }
    }

    #[test]
    fn two_column_closed_form() {
        for l in 0..=8i64 {
            for s in 0..=l / 2 {
                let k = kostka_macdonald(&two_column(s as usize, l as usize).unwrap()).unwrap();
                assert_eq!(k, gaussian(l, s) - gaussian(l, s - 1));
            }
        }
    }
}
