use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::intpoly::cyclotomic;

fn sp(signs: &[i8], perm: &[usize]) -> SignedPerm {
    SignedPerm::new(signs.to_vec(), perm.to_vec()).unwrap()
}

fn rp(half: &[i64]) -> RecPoly {
    RecPoly::from_i64s(half).unwrap()
}

fn full_group(m: usize) -> HashSet<SignedPerm> {
    let mut gens = vec![sp(&[vec![-1], vec![1; m - 1]].concat(), &(1..=m).collect::<Vec<_>>())];
    if m >= 2 {
        let mut t: Vec<usize> = (1..=m).collect();
        t.swap(0, 1);
        gens.push(sp(&vec![1; m], &t));
        gens.push(sp(&vec![1; m], &(1..=m).map(|i| i % m + 1).collect::<Vec<_>>()));
    }
    generate(&gens, m, usize::MAX).unwrap()
}

#[test]
fn compose_examples() {
    let g = sp(&[-1, 1], &[2, 1]);
    let id = SignedPerm::identity(2);
    assert_eq!(id.compose(&g).unwrap(), g);
    assert_eq!(g.compose(&id).unwrap(), g);
    assert_eq!(g.compose(&g.inverse()).unwrap(), id);
    assert_eq!(g.compose(&g).unwrap(), sp(&[-1, -1], &[1, 2]));
    assert!(g.compose(&SignedPerm::identity(3)).is_err());
}

#[test]
fn worked_example_cycles() {
    let g = sp(&[-1, 1, -1, 1], &[2, 1, 3, 4]);
    assert_eq!(
        g.cycle_decomposition(),
        vec![vec![1, 2, -1, -2], vec![3, -3], vec![4], vec![-4]]
    );
    assert_eq!(g.to_string(), "(1 2 -1 -2)(3 -3)");
    assert_eq!(SignedPerm::identity(3).cycle_decomposition().len(), 6);
    assert_eq!(sp(&[-1], &[1]).cycle_decomposition(), vec![vec![1, -1]]);
    assert!(matches!(g.act(5), Err(Error::LetterOutOfRange { .. })));
    assert!(g.act(0).is_err());
}

#[test]
fn flag_examples() {
    let all = SubgroupFlags {
        in_g1: true,
        in_g2: true,
        in_g3: true,
        in_g4: true,
        in_g5: true,
    };
    assert_eq!(SignedPerm::identity(4).subgroup_flags(), all);
    assert_eq!(sp(&[-1, -1], &[1, 2]).subgroup_flags(), all);
    assert_eq!(
        sp(&[-1, 1], &[2, 1]).subgroup_flags(),
        SubgroupFlags {
            in_g1: false,
            in_g2: true,
            in_g3: false,
            in_g4: false,
            in_g5: false
        }
    );
}

#[test]
fn subgroup_orders_by_enumeration() {
    for m in 1..=4 {
        let g = full_group(m);
        let n = (1usize << m) * factorial(m);
        assert_eq!(g.len(), n);
        let count = |f: fn(&SubgroupFlags) -> bool| g.iter().filter(|x| f(&x.subgroup_flags())).count();
        if m >= 2 {
            assert_eq!(count(|f| f.in_g1), n / 2);
            assert_eq!(count(|f| f.in_g2), n / 2);
            assert_eq!(count(|f| f.in_g3), n / 2);
            assert_eq!(count(|f| f.in_g4), n / 4);
        }
        assert_eq!(count(|f| f.in_g5), 2 * factorial(m));
        // the sign on 2m letters is the sign product
        for x in &g {
            let parity: usize = x.cycle_type().iter().map(|c| c - 1).sum();
            let sign = if parity.is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(sign, x.sign_product());
        }
    }
}

#[test]
fn long_cycles_split_by_sign_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 1..=8 {
        let cycle: Vec<usize> = (1..=m).map(|i| i % m + 1).collect();
        for _ in 0..20 {
            let signs: Vec<i8> = (0..m).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
            let g = sp(&signs, &cycle);
            if g.sign_product() == -1 {
                assert_eq!(g.cycle_type(), vec![2 * m]);
            } else {
                assert_eq!(g.cycle_type(), vec![m, m]);
            }
        }
    }
}

proptest! {
    #[test]
    fn action_respects_composition(m in 1usize..=8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = SignedPerm::random(m, &mut rng);
        let h = SignedPerm::random(m, &mut rng);
        let gh = g.compose(&h).unwrap();
        for k in (1..=m as i64).chain((1..=m as i64).map(|k| -k)) {
            prop_assert_eq!(gh.act(k).unwrap(), g.act(h.act(k).unwrap()).unwrap());
        }
        prop_assert_eq!(gh.inverse(), h.inverse().compose(&g.inverse()).unwrap());
    }

    #[test]
    fn flag_relations(m in 2usize..=8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = SignedPerm::random(m, &mut rng);
        let h = SignedPerm::random(m, &mut rng);
        let (f, fh) = (g.subgroup_flags(), h.subgroup_flags());
        prop_assert_eq!(f.in_g4, f.in_g1 && f.in_g3);
        if f.in_g1 && f.in_g2 { prop_assert!(f.in_g3); }
        let fp = g.compose(&h).unwrap().subgroup_flags();
        let pairs = [
            (f.in_g1, fh.in_g1, fp.in_g1),
            (f.in_g2, fh.in_g2, fp.in_g2),
            (f.in_g3, fh.in_g3, fp.in_g3),
            (f.in_g4, fh.in_g4, fp.in_g4),
            (f.in_g5, fh.in_g5, fp.in_g5),
        ];
        for (a, b, c) in pairs {
            if a && b { prop_assert!(c); }
        }
    }
}

/// Invariant subgroups by trying every subset of `F_2^m`.
fn invariant_by_subsets(m: usize, k: PermGroup) -> usize {
    let n = 1usize << m;
    let gens = perm_generators(m, k);
    let mut count = 0;
    for set in 0u64..1 << n {
        if set & 1 == 0 {
            continue;
        }
        let has = |v: u64| set >> v & 1 == 1;
        let members: Vec<u64> = (0..n as u64).filter(|&v| has(v)).collect();
        let closed = members.iter().all(|&a| members.iter().all(|&b| has(a ^ b)));
        let stable = members.iter().all(|&a| gens.iter().all(|g| has(permute_mask(a, g))));
        if closed && stable {
            count += 1;
        }
    }
    count
}

#[test]
fn invariant_subgroups_match_subset_search() {
    for m in 1..=4 {
        for k in [PermGroup::Alternating, PermGroup::Symmetric] {
            let found = invariant_subgroups(m, k).unwrap();
            assert_eq!(found.len(), invariant_by_subsets(m, k), "m={m} {k:?}");
        }
    }
    let s3 = invariant_subgroups(3, PermGroup::Symmetric).unwrap();
    assert_eq!(s3.iter().map(|g| g.size).collect::<Vec<_>>(), vec![1, 2, 4, 8]);
    assert_eq!(invariant_subgroups(4, PermGroup::Alternating).unwrap().len(), 4);
    assert!(invariant_subgroups(2, PermGroup::Alternating).unwrap().len() > 4);
    assert!(invariant_subgroups(13, PermGroup::Symmetric).is_err());
}

#[test]
fn invariant_subgroups_are_the_four_standard_ones() {
    for m in 3..=8 {
        for k in [PermGroup::Alternating, PermGroup::Symmetric] {
            let found = invariant_subgroups(m, k).unwrap();
            let dims: Vec<usize> = found.iter().map(|g| g.dim).collect();
            assert_eq!(dims, vec![0, 1, m - 1, m], "m={m} {k:?}");
            let all_ones = (1u64 << m) - 1;
            assert_eq!(found[1].basis, vec![all_ones]);
            // the even-weight hyperplane
            assert!(found[2].basis.iter().all(|b| b.count_ones() % 2 == 0));
        }
    }
}

#[test]
fn subgroup_classification_examples() {
    let m = 5;
    let cyc: Vec<usize> = (1..=m).map(|i| i % m + 1).collect();
    let mut t: Vec<usize> = (1..=m).collect();
    t.swap(0, 1);
    let flip = sp(&[-1, 1, 1, 1, 1], &(1..=m).collect::<Vec<_>>());
    let gens = vec![sp(&[1; 5], &cyc), sp(&[1; 5], &t), flip];
    assert_eq!(classify_subgroup(&gens, m), Ok(SubgroupClass::Full));
    let g5 = vec![sp(&[-1; 5], &cyc), sp(&[1; 5], &t)];
    assert_eq!(classify_subgroup(&g5, m), Ok(SubgroupClass::InsideG5));
    let g3 = vec![
        sp(&[1; 5], &cyc),
        sp(&[1, 1, 1, 1, 1], &[2, 3, 1, 4, 5]),
        sp(&[-1, 1, 1, 1, 1], &[1, 2, 3, 4, 5]),
    ];
    assert_eq!(classify_subgroup(&g3, m), Ok(SubgroupClass::G3));
}

#[test]
fn random_subgroups_fit_the_classification() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let r = random_subgroup_classification(5, 60, &mut rng).unwrap();
    assert!(r.violations.is_empty(), "{:?}", r.violations);
    assert_eq!(r.counts.values().sum::<usize>(), 60);
    assert!(r.counts.len() >= 4, "{:?}", r.counts);
    assert!(random_subgroup_classification(4, 1, &mut rng).is_err());
}

#[test]
fn frobenius_witness_examples() {
    let phi5 = rp(&[1, 1, 1]);
    let w = frobenius_witness(&phi5, &[2]).unwrap().unwrap();
    assert_eq!(
        w,
        FrobeniusWitness {
            p: 2,
            factor: vec![1, 1, 1, 1, 1],
            d: 1
        }
    );
    // (T^2+3T+1)(T^2+5T+1) = T^4 + 8T^3 + 17T^2 + 8T + 1
    let prod = rp(&[17, 8, 1]);
    let ps: Vec<u64> = primes().take(30).collect();
    if let Some(w) = frobenius_witness(&prod, &ps).unwrap() {
        let f = FpPoly::new(Prime::new(w.p).unwrap(), w.factor.clone());
        assert!(f.is_reciprocal() && f.degree() == Some(4 * w.d));
        let ap = prod.reduce(f.modulus());
        assert!(f.divides(&ap) && !(&f * &f).divides(&ap));
    }
    // T^4 + 2T^2 + 1 = (T^2+1)^2 is not squarefree
    assert!(matches!(
        frobenius_witness(&rp(&[2, 0, 1]), &[3]),
        Err(Error::NotSquarefree)
    ));
    // every prime divides the discriminant of T^2 + 1? no: only 2; skip it explicitly
    assert_eq!(frobenius_witness(&rp(&[0, 1]), &[2]).unwrap(), None);
}

#[test]
fn galois_examples() {
    let phi5 = rp(&[1, 1, 1]);
    let r = classify_galois(&phi5).unwrap();
    assert!(r.irreducible);
    assert_eq!(r.disc_square, Some(false));
    assert_eq!(r.g3_square, Some(false));
    assert_eq!(r.g2_square, Some(true));
    assert_eq!(r.c2sm_excluded, Some(true));
    assert_eq!(r.verdict, Verdict::G2);
    assert!(r.small_m_fallback);
    assert!(r.contradictions().is_empty());

    let t2 = classify_galois(&rp(&[1, 1])).unwrap();
    assert_eq!(t2.verdict, Verdict::Full);
    assert_eq!(t2.disc_square, Some(false));
    assert_eq!(discriminant_via_trace(&rp(&[1, 1])).unwrap(), BigInt::from(-3));

    let red = classify_galois(&rp(&[17, 8, 1])).unwrap();
    assert_eq!(red.verdict, Verdict::Reducible);
    assert!(red.disc_square.is_none());
    assert!(matches!(classify_galois(&rp(&[2, 0, 1])), Err(Error::NotSquarefree)));

    let json = serde_json::to_value(&r).unwrap();
    for key in [
        "irreducible",
        "disc_square",
        "g2_square",
        "g3_square",
        "c2sm_excluded",
        "proj_certificate",
        "verdict",
    ] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["verdict"], "G2");
}

#[test]
fn cyclotomic_reports_are_consistent() {
    // Phi_n for the n with phi(n) = 2m even and Phi_n reciprocal
    for n in [5u64, 7, 8, 9, 11, 12, 13, 15, 16, 20] {
        let phi = cyclotomic(n);
        let a = RecPoly::from_dense(&phi).unwrap();
        let r = classify_galois(&a).unwrap();
        assert!(r.irreducible);
        assert!(r.contradictions().is_empty(), "n={n}: {:?}", r.contradictions());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn discriminant_identity(half in proptest::collection::vec(-9i64..=9, 1..=10)) {
        let mut h = half.clone();
        h.push(1);
        let a = rp(&h);
        prop_assert_eq!(discriminant(&a.to_dense()).unwrap(), discriminant_via_trace(&a).unwrap());
    }

    #[test]
    fn random_reports_are_consistent(half in proptest::collection::vec(-9i64..=9, 3..=6)) {
        let mut h = half.clone();
        h.push(1);
        let a = rp(&h);
        match classify_galois(&a) {
            Ok(r) => prop_assert!(r.contradictions().is_empty(), "{:?}", r),
            Err(e) => prop_assert_eq!(e, Error::NotSquarefree),
        }
    }
}
