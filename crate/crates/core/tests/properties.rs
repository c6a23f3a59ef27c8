use num_bigint::BigInt;
use proptest::prelude::*;

use sqrank::bijections::{psi, xi};
use sqrank::partitions::{
    decompose, durfee_side, e1_stat, enumerate, frobenius, from_frobenius, stat, strip_rim_hooks, Stat,
};
use sqrank::paths::{crystal_e1, crystal_f1, energy, epsilon1, phi, phi_inv};
use sqrank::qseries::{gaussian, invert_unit};
use sqrank::{BitSeq, Partition, QSeries};

fn partition(max_len: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(Partition::from_multiset)
}

fn bits(max_len: usize) -> impl Strategy<Value = BitSeq> {
    prop::collection::vec(0u8..=1, 0..=max_len).prop_map(|v| BitSeq::new(v).unwrap())
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #[test]
    fn gaussian_symmetric_and_pascal(l in 1i64..=20, m in 0i64..=20) {
        prop_assume!(m <= l);
        prop_assert_eq!(gaussian(l, m), gaussian(l, l - m));
        let left = gaussian(l - 1, m - 1) + gaussian(l - 1, m).shift(m as usize);
        let right = gaussian(l - 1, m) + gaussian(l - 1, m - 1).shift((l - m) as usize);
        prop_assert_eq!(&gaussian(l, m), &left);
        prop_assert_eq!(&gaussian(l, m), &right);
    }

    #[test]
    fn gaussian_nonnegative_with_binomial_value(l in 0i64..=20, m in 0i64..=20) {
        prop_assume!(m <= l);
        let g = gaussian(l, m);
        prop_assert!(g.has_nonnegative_coeffs());
        prop_assert_eq!(g.eval_at_one(), binomial(l as u64, m as u64));
        prop_assert_eq!(g.degree(), Some((m * (l - m)) as usize));
    }

    #[test]
    fn unit_inverse(coeffs in prop::collection::vec(-5i64..=5, 0..8), order in 0usize..25) {
        let mut c = coeffs;
        c.insert(0, 1);
        let s = QSeries::from_coeffs(c);
        let inv = invert_unit(&s, order).unwrap();
        prop_assert_eq!((&s * &inv).truncate(order), QSeries::one().truncate(order));
    }

    #[test]
    fn frobenius_round_trip(p in partition(12, 12)) {
        let f = frobenius(&p);
        prop_assert_eq!(f.d(), durfee_side(&p, 0));
        prop_assert_eq!(f.arms.iter().chain(&f.legs).sum::<usize>() + f.d(), p.weight());
        prop_assert_eq!(from_frobenius(&f).unwrap(), p);
    }

    #[test]
    fn decomposition_accounts_for_every_cell(p in partition(12, 12), a in 0usize..=1) {
        let d = decompose(&p, a);
        prop_assert_eq!(d.rect.weight() + d.right.weight() + d.below.weight(), p.weight());
        prop_assert!(d.right.len() <= d.n);
        prop_assert!(d.below.largest_part() <= d.n + a);
        prop_assert!(p.parts().get(d.n).is_none_or(|&row| row < d.n + 1 + a));
    }

    #[test]
    fn stripping_invariants(p in partition(10, 14), arm in 0usize..6) {
        let st = strip_rim_hooks(&p, arm).unwrap();
        prop_assert!(st.residual.largest_part() <= arm);
        prop_assert_eq!(st.residual.weight() + st.hooks.iter().sum::<usize>(), p.weight());
        prop_assert!(st.hooks.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(st.hooks.iter().all(|&h| h > arm));
    }

    #[test]
    fn statistics_bounded_by_durfee(p in partition(14, 14)) {
        prop_assert!(stat(&p, Stat::Sqrank) <= durfee_side(&p, 0));
        prop_assert!(stat(&p, Stat::Rerank) <= durfee_side(&p, 1));
    }

    #[test]
    fn psi_xi_round_trip(p in partition(6, 16), a in 0usize..=1) {
        let n = durfee_side(&p, a).max(p.len());
        let pair = psi(&p, n, a).unwrap();
        prop_assert_eq!(pair.weight(), p.weight());
        prop_assert_eq!(xi(&pair).unwrap(), p);
    }

    #[test]
    fn phi_preserves_energy(eta in bits(16)) {
        let lam = phi(&eta);
        prop_assert_eq!(lam.weight(), energy(&eta));
        prop_assert_eq!(phi_inv(&lam, eta.len(), eta.ones()).unwrap(), eta);
    }

    #[test]
    fn crystal_operators_invert(eta in bits(16)) {
        if let Ok(down) = crystal_f1(&eta) {
            prop_assert_eq!(epsilon1(&down), epsilon1(&eta) + 1);
            prop_assert_eq!(energy(&down), energy(&eta));
            prop_assert_eq!(crystal_e1(&down).unwrap(), eta.clone());
        }
        if let (true, Ok(up)) = (2 * eta.ones() <= eta.len(), crystal_e1(&eta)) {
            prop_assert_eq!(epsilon1(&up) + 1, epsilon1(&eta));
            prop_assert_eq!(crystal_f1(&up).unwrap(), eta);
        }
    }
}

#[test]
fn box_generating_function_is_gaussian() {
    for n in 0..=6 {
        for l in 0..=6 {
            let coeffs = (0..=n * l).map(|w| enumerate(w, Some(n), Some(l)).count() as i64);
            assert_eq!(QSeries::from_coeffs(coeffs), gaussian((n + l) as i64, n as i64), "n = {n}, l = {l}");
        }
    }
}

#[test]
fn e1_stat_bounded_by_box() {
    for n in 0..=4 {
        for w in 0..=n * (n + 1) {
            for p in enumerate(w, Some(n), Some(n + 1)) {
                assert!(e1_stat(&p, n) <= n, "{p:?}");
            }
        }
    }
}
