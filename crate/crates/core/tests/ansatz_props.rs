use std::collections::HashSet;

use num_bigint::BigInt;

use rieszwalk_core::ansatz::{
    alpha, b_decompose, backbone_value, class_base, class_contains, class_modulus, count_up_to,
    first_positive, Backbone, BIndex,
};
use rieszwalk_core::series::{ratio, Rational};

#[test]
fn residue_classes_partition_the_integers() {
    for t in -10_000i128..=10_000 {
        let hits: Vec<u32> = (0..=30).filter(|&j| class_contains(j, t)).collect();
        assert_eq!(hits.len(), 1, "t = {t} lies in classes {hits:?}");
    }
}

#[test]
fn listed_class_members() {
    // A few of the printed members of v_0 … v_10.
    let listed: [(u32, &[i128]); 6] = [
        (1, &[-13, -9, -5, -1, 3, 7, 11, 15]),
        (3, &[-35, -19, -3, 13, 29, 45]),
        (5, &[-267, -203, -139, -75, -11, 53, 117, 181]),
        (7, &[-1067, -811, -555, -299, -43, 213, 469, 725]),
        (9, &[-2219, -1195, -171, 853, 1877, 2901]),
        (10, &[-5803, -3755, -1707, 341, 2389, 4437]),
    ];
    for (j, members) in listed {
        for &t in members {
            assert!(class_contains(j, t), "{t} ∉ v_{j}");
        }
    }
}

/// Members of `v_j` in increasing order starting at the first one above `from`.
fn members_from(j: u32, from: i128) -> impl Iterator<Item = i128> {
    let m = class_modulus(j);
    let mut t = class_base(j);
    while t > from {
        t -= m;
    }
    while t <= from {
        t += m;
    }
    std::iter::successors(Some(t), move |x| Some(x + m))
}

#[test]
fn closed_forms_match_enumeration() {
    const N: i128 = 10_000;
    let mut per_n_total = vec![0i128; (N + 1) as usize];
    for j in 0..=20 {
        assert_eq!(members_from(j, 0).next(), Some(first_positive(j)), "d_{j}");
        let mut members = members_from(j, 0).peekable();
        let mut count = 0;
        for n in 0..=N {
            while members.peek().is_some_and(|&t| t <= n) {
                members.next();
                count += 1;
            }
            assert_eq!(count_up_to(j, n), count, "w({j}, {n})");
            per_n_total[n as usize] += count;
        }
    }
    // Classes beyond 20 start above 10^4.
    assert!(first_positive(21) > N);
    for (n, total) in per_n_total.into_iter().enumerate() {
        assert_eq!(total, n as i128, "Σ_j w(j, {n})");
    }
}

#[test]
fn b_decomposition_is_a_bijection() {
    const M: u64 = 1_000_000;
    let mut seen = HashSet::with_capacity(M as usize);
    for m in 1..=M {
        let b = b_decompose(m);
        assert_eq!(b.reconstruct(), u128::from(m));
        assert_ne!(b.n % 4, 3);
        assert!(b.n >= 1);
        assert!(seen.insert((b.n, b.p)));
    }
    // Onto: every admissible (n, p) landing in range is hit.
    for p in 0..12u32 {
        for n in (1..).filter(|n| n % 4 != 3) {
            let idx = BIndex { m: 0, n, p };
            let m = idx.reconstruct();
            if m > u128::from(M) {
                break;
            }
            assert!(seen.contains(&(n, p)));
            assert_eq!(b_decompose(m as u64), BIndex { m: m as u64, ..idx });
        }
    }
}

#[test]
fn offset_recipe_agrees_with_closed_form() {
    let mut backbone = Backbone::new();
    for j in (15..200_000u64).filter(|j| j % 4 == 3) {
        assert_eq!(backbone.offset_alpha(j).unwrap(), backbone.alpha(j), "α_{j}");
    }
    assert!((0..200u64).filter(|j| j % 4 != 3).all(|j| alpha(j) == ratio(0, 1)));
}

#[test]
fn memoised_backbone_matches_direct() {
    let b = Backbone::with_len(2000);
    for (k, &v) in b.values().iter().enumerate() {
        assert_eq!(v, backbone_value(k as u64 + 1));
    }
    assert!(b.values().iter().all(|&a| a >= 13));
}

#[test]
fn parameters_inside_the_disk() {
    let lo = ratio(-1, 3);
    let hi = ratio(2, 3);
    let mut backbone = Backbone::for_parameters(200_000);
    for m in 1..=200_000u64 {
        let x = backbone.xi(m);
        assert!(x >= lo && x < hi, "ξ_{m} = {x}");
    }
}

#[test]
fn limit_law_for_the_n1_family() {
    let mut backbone = Backbone::new();
    for p in 0..=10u32 {
        let m = (1 + 2 * 4u64.pow(p)) / 3;
        assert_eq!(b_decompose(m), BIndex { m, n: 1, p });
        let gap = ratio(2, 3) - backbone.xi(m);
        assert_eq!(gap, Rational::new(BigInt::from(1), BigInt::from(6) * BigInt::from(4).pow(p)));
    }
    let limits = backbone.limit_values(50);
    let all: Vec<&Rational> = limits.negative.iter().chain(&limits.positive).chain(&limits.shifted).collect();
    assert_eq!(all.iter().copied().max().unwrap(), &ratio(2, 3));
    assert_eq!(all.iter().copied().min().unwrap(), &ratio(-2, 9));
}
