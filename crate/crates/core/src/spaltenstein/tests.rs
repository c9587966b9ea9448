use super::*;
use crate::combinatorics::{compositions_of, enumerate_bipartitions, Bipartition, Partition};
use crate::exactla::enumerate_subspaces;
use crate::jordan::exotic_type_of_subquotient;
use crate::polyid::Stratum;
use crate::symplectic::{normal_basis, normal_index, normal_index_star};

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn bp(mu: &[u32], nu: &[u32]) -> Bipartition {
    Bipartition::new(p(mu), p(nu))
}

fn comp(v: &[u32]) -> Composition {
    Composition::new(v.to_vec()).unwrap()
}

fn seq(steps: &[Bipartition]) -> BipartitionSequence {
    BipartitionSequence(steps.to_vec())
}

/// Every chain of subspaces of the right dimensions, filtered by membership.
fn brute_force_fiber(pt: &ExoticPoint, ft: &FlagType) -> Vec<PartialFlag> {
    let check = ft.alpha_check();
    let m = ft.m();
    let mut chains: Vec<Vec<Subspace>> = vec![Vec::new()];
    for &dim in &check[1..=m] {
        let mut next = Vec::new();
        for c in &chains {
            for s in enumerate_subspaces(pt.dim(), dim as usize, pt.p(), None).unwrap() {
                if c.last().is_none_or(|l| s.contains(l)) {
                    let mut c2 = c.clone();
                    c2.push(s);
                    next.push(c2);
                }
            }
        }
        chains = next;
    }
    chains
        .into_iter()
        .map(|c| PartialFlag::from_lower_half(pt, c))
        .filter(|f| f.check_in_fiber(pt, ft).is_ok())
        .collect()
}

#[test]
fn flag_type_derived_data() {
    let ft = FlagType::new(comp(&[1, 2]));
    assert_eq!(ft.alpha_hat(), vec![1, 2, 2, 1]);
    assert_eq!(ft.alpha_check(), vec![0, 1, 3, 5, 6]);
}

#[test]
fn fiber_matches_brute_force_n2() {
    for b in enumerate_bipartitions(2) {
        for alpha in compositions_of(2) {
            for q in [2, 3] {
                let pt = normal_basis(&b, q).unwrap();
                let ft = FlagType::new(alpha.clone());
                let mut fast: Vec<PartialFlag> = enumerate_fiber(&pt, &ft).unwrap().collect();
                let mut slow = brute_force_fiber(&pt, &ft);
                for f in &fast {
                    f.check_in_fiber(&pt, &ft).unwrap();
                }
                let key = |f: &PartialFlag| format!("{:?}", f.subspaces);
                fast.sort_by_key(key);
                slow.sort_by_key(key);
                assert_eq!(fast, slow, "{b} α={alpha} q={q}");
            }
        }
    }
}

#[test]
fn lagrangians_containing_v() {
    let b = bp(&[1, 1], &[]);
    let pt = normal_basis(&b, 3).unwrap();
    let ft = FlagType::new(comp(&[2]));
    let flags: Vec<_> = enumerate_fiber(&pt, &ft).unwrap().collect();
    assert_eq!(flags.len(), 4);
    assert!(flags.iter().all(|f| f.subspaces[0].contains_vector(&pt.v)));
}

#[test]
fn x_zero_v_zero_gives_all_lagrangians() {
    for (n, expected) in [(1usize, 3u64), (2, 15), (3, 135)] {
        let b = Bipartition::new(Partition::empty(), Partition::rectangle(1, n));
        let pt = normal_basis(&b, 2).unwrap();
        let ft = FlagType::new(Composition::new(vec![n as u32]).unwrap());
        assert_eq!(enumerate_fiber(&pt, &ft).unwrap().count() as u64, expected);
    }
}

#[test]
fn empty_type_has_one_flag() {
    let pt = normal_basis(&Bipartition::empty(), 2).unwrap();
    let ft = FlagType::new(Composition::new(vec![]).unwrap());
    let census = fiber_census(&pt, &ft, DEFAULT_GUARD).unwrap();
    assert_eq!(census.len(), 1);
    assert_eq!(census.values().sum::<u64>(), 1);
    let mut it = enumerate_fiber(&pt, &ft).unwrap();
    assert!(it.next().is_some());
    assert!(it.next().is_none());
    assert!(it.next().is_none());
}

#[test]
fn phi_on_worked_examples() {
    let b = bp(&[1, 1], &[]);
    let pt = normal_basis(&b, 3).unwrap();
    let e = |i| {
        let mut v = vec![0; 4];
        v[i] = 1;
        v
    };
    let f2 = Subspace::from_rows(3, 4, &[e(normal_index(&b, 1, 1)), e(normal_index(&b, 2, 1))]);
    let flag = PartialFlag::from_lower_half(&pt, vec![f2.clone()]);
    let ft = FlagType::new(comp(&[2]));
    assert_eq!(phi(&pt, &ft, &flag).unwrap(), seq(&[Bipartition::empty(), b.clone()]));

    let f1 = Subspace::span_of(3, 4, &pt.v);
    let flag = PartialFlag::from_lower_half(&pt, vec![f1, f2]);
    let ft = FlagType::new(comp(&[1, 1]));
    let s = phi(&pt, &ft, &flag).unwrap();
    assert_eq!(s, seq(&[Bipartition::empty(), bp(&[], &[1]), b.clone()]));
    assert!(!s.is_nested());

    let b = bp(&[], &[2]);
    let pt = normal_basis(&b, 3).unwrap();
    let f2 = Subspace::from_rows(
        3,
        4,
        &[e(normal_index(&b, 1, 1)), e(normal_index_star(&b, 1, 2))],
    );
    let flag = PartialFlag::from_lower_half(&pt, vec![f2]);
    let ft = FlagType::new(comp(&[2]));
    let s = phi(&pt, &ft, &flag).unwrap();
    assert_eq!(s, seq(&[Bipartition::empty(), b.clone()]));
    let t = crate::combinatorics::sequence_to_bitableau(&s).unwrap();
    assert!(!crate::combinatorics::is_semistandard(&t, &comp(&[2])).unwrap());

    // A flag outside the fibre is rejected.
    let bad = Subspace::from_rows(3, 4, &[e(0), e(1)]);
    let flag = PartialFlag::from_lower_half(&pt, vec![bad]);
    assert!(matches!(phi(&pt, &ft, &flag), Err(Error::NotInFiber(_))));
}

#[test]
fn census_of_orbit_0_21_has_two_keys() {
    let b = bp(&[], &[2, 1]);
    let pt = normal_basis(&b, 2).unwrap();
    let ft = FlagType::new(comp(&[1, 2]));
    let census = fiber_census(&pt, &ft, DEFAULT_GUARD).unwrap();
    let keys: Vec<_> = census.keys().cloned().collect();
    assert_eq!(
        keys,
        vec![
            seq(&[Bipartition::empty(), bp(&[], &[1, 1]), b.clone()]),
            seq(&[Bipartition::empty(), bp(&[], &[2]), b.clone()]),
        ]
    );
    let total: u64 = census.values().sum();
    assert_eq!(total as usize, enumerate_fiber(&pt, &ft).unwrap().count());
}

#[test]
fn census_is_independent_of_thread_count() {
    let b = bp(&[1], &[1, 1]);
    let pt = normal_basis(&b, 3).unwrap();
    let ft = FlagType::new(comp(&[1, 1, 1]));
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| fiber_census(&pt, &ft, DEFAULT_GUARD).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn guard_refuses_large_fibres() {
    let b = bp(&[], &[1, 1, 1]);
    let pt = normal_basis(&b, 13).unwrap();
    let ft = FlagType::new(comp(&[1, 1, 1]));
    assert!(matches!(
        fiber_census(&pt, &ft, 1000),
        Err(Error::GuardExceeded { .. })
    ));
}

#[test]
fn case_examples() {
    // x = 0, v ≠ 0, v ∈ F.
    let b = bp(&[1, 1], &[]);
    let pt = normal_basis(&b, 3).unwrap();
    let f = Subspace::span_of(3, 4, &pt.v);
    let tag = classify_case_x2(&pt, &f).unwrap();
    assert_eq!(tag.kind, CaseKind::X0VnzInF);
    assert_eq!(predict_exotic_type_x2(&tag, 2, 0).unwrap(), bp(&[], &[1]));

    // v ∉ ker x and xv ∈ F.
    let b = bp(&[2], &[]);
    let pt = normal_basis(&b, 3).unwrap();
    let xv = pt.x.apply(&pt.v);
    let f = Subspace::span_of(3, 4, &xv);
    assert_eq!(classify_case_x2(&pt, &f).unwrap().kind, CaseKind::VNotKerA);

    // v = 0.
    let b = bp(&[], &[2, 1]);
    let pt = normal_basis(&b, 2).unwrap();
    let f = pt.x.image();
    let tag = classify_case_x2(&pt, &f).unwrap();
    assert_eq!(tag.kind, CaseKind::V0);
    assert_eq!((tag.k1, tag.k2, tag.h), (0, 2, 1));

    // x² ≠ 0 is refused.
    let pt = normal_basis(&bp(&[], &[3]), 2).unwrap();
    assert!(classify_case_x2(&pt, &pt.space.zero_space()).is_err());
}

#[test]
fn prediction_examples() {
    let t = CaseTag::new(CaseKind::X0V0, 1, 0, 0).unwrap();
    assert_eq!(predict_exotic_type_x2(&t, 3, 0).unwrap(), bp(&[], &[1, 1]));
    let t = CaseTag::new(CaseKind::VNotKerB, 1, 2, 1).unwrap();
    // n2' = 2−2+1 = 1, n1' = 2−1+2−2 = 1.
    assert_eq!(predict_exotic_type_x2(&t, 2, 2).unwrap(), bp(&[2, 1], &[]));
    let t = CaseTag::new(CaseKind::VInImA, 0, 1, 0).unwrap();
    assert_eq!(predict_exotic_type_x2(&t, 1, 1).unwrap(), bp(&[], &[1, 1]));
    assert!(predict_exotic_type_x2(&t, 0, 0).is_err());
    assert!(CaseTag::new(CaseKind::V0, 0, 1, 1).is_err());
}

#[test]
fn nonemptiness_examples() {
    assert!(stratum_nonempty(2, 3, 4, 4, 2));
    assert!(!stratum_nonempty(2, 3, 4, 5, 2));
    assert!(!stratum_nonempty(1, 2, 3, 3, 0));
}

#[test]
fn stratum_dim_examples() {
    assert_eq!(stratum_dim(Stratum::X, 0, 0, 0, 0, 0), 0);
    assert_eq!("X5".parse::<Stratum>().unwrap(), Stratum::X5);
    assert!("X9".parse::<Stratum>().is_err());
}

#[test]
fn stratum_census_trivia() {
    let pt = normal_basis(&bp(&[], &[2, 1]), 2).unwrap();
    let c = stratum_census_x2(&pt, 0, DEFAULT_GUARD).unwrap();
    assert_eq!(c.len(), 1);
    let (key, count) = c.iter().next().unwrap();
    assert_eq!((key.k2, key.h, *count), (0, 0, 1));
    let pt = normal_basis(&bp(&[1, 1, 1], &[]), 2).unwrap();
    for k in 0..=3 {
        for key in stratum_census_x2(&pt, k, DEFAULT_GUARD).unwrap().keys() {
            assert_eq!((key.k2, key.h), (0, 0));
        }
    }
}

#[test]
fn case_table_small() {
    for n in 1..=2 {
        for b in enumerate_bipartitions(n) {
            let Some((n1, n2)) = twos_ones_counts(&b) else { continue };
            for q in [2, 3] {
                let pt = normal_basis(&b, q).unwrap();
                let allowed = allowed_space(&pt, &pt.space.zero_space()).unwrap();
                for k in 0..=n as usize {
                    for f in crate::symplectic::enumerate_isotropic(&pt.space, k, &allowed) {
                        let tag = classify_case_x2(&pt, &f).unwrap();
                        let direct = exotic_type_of_subquotient(&pt, &f).unwrap();
                        assert_eq!(predict_exotic_type_x2(&tag, n1, n2).unwrap(), direct, "{b} {tag}");
                    }
                }
            }
        }
    }
}

#[test]
fn top_keys_with_a_lower_degree_component() {
    let b = bp(&[], &[2, 1]);
    let a = comp(&[1, 2]);
    let degrees = stratified_key_degrees(&b, &a, &[2, 3], DEFAULT_GUARD).unwrap();
    let top = seq(&[Bipartition::empty(), bp(&[], &[1, 1]), b.clone()]);
    let low = seq(&[Bipartition::empty(), bp(&[], &[2]), b.clone()]);
    assert_eq!(degrees.get(&top), Some(&4));
    assert_eq!(degrees.get(&low), Some(&3));
    let report = verify_theorem_main(&b, &a, DegreeMethod::Stratified { primes: vec![2, 3] }, DEFAULT_GUARD).unwrap();
    assert!(report.passed);
    assert_eq!(report.d_alpha, 4);
}

#[test]
fn theorem_fitted_single_key() {
    let b = bp(&[1, 1], &[]);
    let a = comp(&[2]);
    let r = verify_theorem_main(&b, &a, DegreeMethod::Fitted { primes: vec![2, 3, 5] }, DEFAULT_GUARD).unwrap();
    assert!(r.passed);
    assert_eq!(r.keys.len(), 1);
    assert_eq!(r.keys[0].degree, Some(1));
}

#[test]
fn complete_flags_are_pure() {
    let b = bp(&[1], &[1]);
    let a = comp(&[1, 1]);
    let r = verify_theorem_main(
        &b,
        &a,
        DegreeMethod::Fitted { primes: DEFAULT_PRIMES.to_vec() },
        DEFAULT_GUARD,
    )
    .unwrap();
    assert!(r.passed, "{r:?}");
    assert!(r.keys.iter().all(|k| k.semistandard && k.degree == Some(r.d_alpha)));
}
