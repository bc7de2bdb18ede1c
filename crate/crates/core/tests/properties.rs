use std::collections::BTreeSet;
use std::sync::Arc;

use permcong::congruence::{
    closure_bruteforce, congruence_from_contracted, forcing_ideal, ForcingOrder,
};
use permcong::family::{is_contracted_by_scrambles, CongruenceFamily, Family, FamilySpec};
use permcong::fan::{build_fan, chamber_point, h_from_covers, h_from_f, intersection_dim};
use permcong::hopf::{mr_coproduct, mr_product, HopfAmbient, QuotientHopf};
use permcong::perm::{
    all_permutations, ltimes, occurs, occurs_with_adjacent_cliff, parabolic_factor, standardize,
    times, Side,
};
use permcong::weak_order::{join2, join_irreducibles, lambda, leq, meet2};
use permcong::{Congruence, InversionSet, JoinIrreducible, Permutation, WeakOrder};
use proptest::prelude::*;

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn arb_perm(lo: usize, hi: usize) -> impl Strategy<Value = Permutation> {
    (lo..=hi).prop_flat_map(|n| {
        Just((1..=n as u8).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|w| Permutation::new(w).unwrap())
    })
}

fn arb_pair(lo: usize, hi: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (lo..=hi).prop_flat_map(|n| {
        let w = Just((1..=n as u8).collect::<Vec<_>>()).prop_shuffle();
        (w.clone(), w)
            .prop_map(|(a, b)| (Permutation::new(a).unwrap(), Permutation::new(b).unwrap()))
    })
}

/// A random congruence on `S_n` generated by up to three join-irreducibles.
fn arb_congruence(lo: usize, hi: usize) -> impl Strategy<Value = Congruence> {
    (lo..=hi).prop_flat_map(|n| {
        let jis = join_irreducibles(n);
        proptest::sample::subsequence(jis.clone(), 0..=3.min(jis.len())).prop_map(move |gens| {
            congruence_from_contracted(n, &forcing_ideal(n, &gens).unwrap()).unwrap()
        })
    })
}

fn named(name: &str, n: usize) -> Arc<Congruence> {
    Family::named(name).unwrap().congruence(n).unwrap()
}

fn pad(p: usize, g: &Permutation, q: usize) -> Permutation {
    times(
        &Permutation::identity(p),
        &times(g, &Permutation::identity(q)),
    )
}

// perm_core

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn standardize_recovers_pattern(x in arb_perm(0, 9), gaps in proptest::collection::vec(1u32..5, 9)) {
        prop_assert_eq!(standardize(x.word()).unwrap(), x.clone());
        // any order-preserving relabelling standardizes back to x
        let mut value = vec![0u32; x.len() + 1];
        for v in 1..=x.len() {
            value[v] = value[v - 1] + gaps[v - 1];
        }
        let relabelled: Vec<u32> = x.word().iter().map(|&v| value[v as usize]).collect();
        prop_assert_eq!(standardize(&relabelled).unwrap(), x);
    }

    #[test]
    fn times_below_ltimes(u in arb_perm(0, 5), v in arb_perm(0, 5)) {
        let lo = times(&u, &v);
        let hi = ltimes(&u, &v);
        prop_assert!(lo.inversions().is_subset(&hi.inversions()));
        prop_assert!(leq(&lo, &hi));
    }

    #[test]
    fn adjacent_cliff_occurrence_is_occurrence(g in arb_perm(2, 4), x in arb_perm(2, 8)) {
        prop_assume!(g.is_join_irreducible() && g.is_untranslated());
        if occurs_with_adjacent_cliff(&g, &x).unwrap() {
            prop_assert!(occurs(&g, &x));
        }
    }

    #[test]
    fn inversion_count_is_length(x in arb_perm(0, 10)) {
        let n = x.len();
        prop_assert_eq!(x.inversions().len(), x.length());
        prop_assert!(x.length() <= n * n.saturating_sub(1) / 2);
        prop_assert_eq!(x.inversion_set().len(), x.length());
    }
}

#[test]
fn occurs_is_a_partial_order_up_to_six() {
    let perms: Vec<Permutation> = (0..=6).flat_map(all_permutations).collect();
    let len = perms.len();
    let words = len.div_ceil(64);
    let mut above = vec![vec![0u64; words]; len];
    for (i, y) in perms.iter().enumerate() {
        for (j, x) in perms.iter().enumerate() {
            if y.len() <= x.len() && occurs(y, x) {
                above[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    let has = |row: &[u64], j: usize| row[j / 64] >> (j % 64) & 1 == 1;
    for i in 0..len {
        assert!(has(&above[i], i), "{} does not occur in itself", perms[i]);
        for j in 0..len {
            if i != j && has(&above[i], j) {
                assert!(
                    !has(&above[j], i),
                    "{} and {} occur in each other",
                    perms[i],
                    perms[j]
                );
                for (k, &word) in above[j].iter().enumerate() {
                    assert_eq!(
                        word & !above[i][k],
                        0,
                        "transitivity fails through {}",
                        perms[j]
                    );
                }
            }
        }
    }
}

#[test]
fn cliff_adjacent_avoidance_for_degree_two() {
    for g in [perm("312"), perm("231")] {
        for n in 0..=7 {
            for x in all_permutations(n) {
                assert_eq!(
                    occurs(&g, &x),
                    occurs_with_adjacent_cliff(&g, &x).unwrap(),
                    "{g} in {x}"
                );
            }
        }
    }
}

// weak_order

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn join_meet_match_inversion_sets((x, y) in arb_pair(1, 7)) {
        let n = x.len();
        let union = InversionSet::from_bits(n, x.inversions().bits() | y.inversions().bits());
        let j = join2(&x, &y);
        prop_assert_eq!(j.inversions(), union.transitive_closure());
        // meet via the order-reversing complement
        let m = meet2(&x, &y);
        let mj = join2(&x.complement(), &y.complement()).complement();
        prop_assert_eq!(m.clone(), mj);
        prop_assert!(leq(&m, &x) && leq(&m, &y) && leq(&x, &j) && leq(&y, &j));
    }

    #[test]
    fn lambda_lies_below(x in arb_perm(2, 9)) {
        for i in x.descents() {
            let g = lambda(&x, i).unwrap();
            prop_assert!(leq(&g.to_permutation(), &x));
            prop_assert!(leq(&g.lower_cover(), &x.swap_adjacent(i)));
        }
    }
}

#[test]
fn join_meet_exhaustive_against_inversion_sets() {
    for n in 1..=5 {
        let w = WeakOrder::new(n).unwrap();
        for a in 0..w.len() {
            for b in 0..w.len() {
                let union = InversionSet::from_bits(n, w.inversion_bits(a) | w.inversion_bits(b));
                let closure = union.transitive_closure();
                let j = w.join_idx(a, b);
                assert_eq!(w.inversion_bits(j), closure.bits());
                // smallest inversion set of a permutation containing the union
                assert!((0..w.len())
                    .filter(|&z| union.bits() & !w.inversion_bits(z) == 0)
                    .all(|z| w.leq_idx(j, z)));
                let m = w.meet_idx(a, b);
                assert!((0..w.len())
                    .filter(|&z| w.leq_idx(z, a) && w.leq_idx(z, b))
                    .all(|z| w.leq_idx(z, m)));
            }
        }
    }
}

#[test]
fn join_irreducible_count() {
    for n in 0..=8usize {
        let expected = (1usize << n) - n - 1;
        assert_eq!(join_irreducibles(n).len(), expected, "n = {n}");
        let by_scan = all_permutations(n)
            .filter(|x| x.is_join_irreducible())
            .count();
        assert_eq!(by_scan, expected, "n = {n}");
    }
}

#[test]
fn join_irreducible_shape() {
    for n in 2..=7 {
        for g in join_irreducibles(n) {
            let x = g.to_permutation();
            let d = x.descents();
            assert_eq!(d.len(), 1);
            let i = d[0];
            assert_eq!(g.degree(), (x.at(i) - x.at(i + 1)) as usize);
            assert!(g.big_m() > g.m());
            assert_eq!(JoinIrreducible::from_permutation(&x).unwrap(), g);
        }
    }
}

#[test]
fn support_shrinks_up_the_forcing_order() {
    for n in 2..=6 {
        let f = ForcingOrder::shared(n).unwrap();
        for a in f.elements() {
            let sa = a.to_permutation().support();
            for b in f.elements() {
                if f.leq(a, b) {
                    let sb = b.to_permutation().support();
                    assert!(sb.is_subset(&sa), "{a} ≤ {b}");
                }
            }
        }
    }
}

// congruence_engine

fn check_quotient_covers(c: &Congruence) {
    let w = c.order();
    let q = c.quotient().poset();
    for class in 0..c.num_classes() {
        let images: Vec<usize> = w
            .down_covers(c.bottom_idx(class))
            .iter()
            .map(|&y| c.class_of_idx(y as usize))
            .collect();
        let distinct: BTreeSet<usize> = images.iter().copied().collect();
        assert_eq!(distinct.len(), images.len(), "covers of a bottom collide");
        let below: BTreeSet<usize> = q.down_covers(class).iter().copied().collect();
        assert_eq!(distinct, below);
    }
}

fn check_classes_are_intervals(c: &Congruence) {
    let w = c.order();
    for class in 0..c.num_classes() {
        let (lo, hi) = (c.bottom_idx(class), c.top_idx(class));
        let members: BTreeSet<usize> = c.members_idx(class).iter().map(|&i| i as usize).collect();
        let interval: BTreeSet<usize> = (0..w.len())
            .filter(|&z| w.leq_idx(lo, z) && w.leq_idx(z, hi))
            .collect();
        assert_eq!(members, interval);
    }
}

/// Class order defined directly: `[a] ≤ [b]` iff some member of `[a]` lies
/// below some member of `[b]`, closed transitively.
fn class_order(c: &Congruence) -> Vec<Vec<bool>> {
    let w = c.order();
    let k = c.num_classes();
    let mut le = vec![vec![false; k]; k];
    for a in 0..w.len() {
        for b in 0..w.len() {
            if w.leq_idx(a, b) {
                le[c.class_of_idx(a)][c.class_of_idx(b)] = true;
            }
        }
    }
    le
}

#[test]
fn quotient_poset_matches_class_order() {
    for name in ["tamari", "descent", "twisted-baxter", "snk 2", "pnk 2"] {
        for n in 1..=5 {
            let c = named(name, n);
            let q = c.quotient().poset();
            let le = class_order(&c);
            for a in 0..c.num_classes() {
                for b in 0..c.num_classes() {
                    assert_eq!(q.leq(a, b), le[a][b], "{name} n={n}");
                }
            }
            check_quotient_covers(&c);
            check_classes_are_intervals(&c);
        }
    }
}

#[test]
fn projections_preserve_order() {
    for name in ["tamari", "twisted-baxter", "pnk 3"] {
        let c = named(name, 5);
        let w = c.order();
        for a in 0..w.len() {
            for &b in w.up_covers(a) {
                let (x, y) = (w.element(a), w.element(b as usize));
                assert!(leq(c.pi_down(x), c.pi_down(y)));
                assert!(leq(c.pi_up(x), c.pi_up(y)));
            }
        }
    }
}

#[test]
fn contracted_iff_equivalent_to_lower_cover() {
    for name in ["tamari", "descent", "twisted-baxter", "snk 3"] {
        for n in 2..=6 {
            let c = named(name, n);
            for g in join_irreducibles(n) {
                assert_eq!(
                    c.contracts(&g),
                    c.equivalent(&g.to_permutation(), &g.lower_cover()),
                    "{name} {g}"
                );
            }
        }
    }
}

#[test]
fn single_generator_closure_matches_forcing_ideal() {
    for n in 2..=5 {
        for g in join_irreducibles(n) {
            let brute = closure_bruteforce(n, &[(g.lower_cover(), g.to_permutation())]).unwrap();
            let fast = congruence_from_contracted(n, &forcing_ideal(n, &[g]).unwrap()).unwrap();
            assert_eq!(brute, fast, "Cg({g})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_congruences_are_lattice_congruences(c in arb_congruence(2, 5)) {
        let w = c.order().clone();
        check_classes_are_intervals(&c);
        check_quotient_covers(&c);
        // join and meet compatibility on each contracted edge
        for a in 0..w.len() {
            for &b in w.up_covers(a) {
                let b = b as usize;
                if c.class_of_idx(a) != c.class_of_idx(b) {
                    continue;
                }
                for z in 0..w.len() {
                    prop_assert_eq!(c.class_of_idx(w.join_idx(a, z)), c.class_of_idx(w.join_idx(b, z)));
                    prop_assert_eq!(c.class_of_idx(w.meet_idx(a, z)), c.class_of_idx(w.meet_idx(b, z)));
                }
            }
        }
    }

    #[test]
    fn random_closure_matches_forcing_ideal(gens in proptest::sample::subsequence(join_irreducibles(6), 1..=3)) {
        let pairs: Vec<_> = gens.iter().map(|g| (g.lower_cover(), g.to_permutation())).collect();
        let brute = closure_bruteforce(6, &pairs).unwrap();
        let fast = congruence_from_contracted(6, &forcing_ideal(6, &gens).unwrap()).unwrap();
        prop_assert_eq!(brute, fast);
    }

    #[test]
    fn intervals_project_to_intervals(c in arb_congruence(3, 6), seed in any::<(u32, u32)>()) {
        let w = c.order();
        let (a, b) = (seed.0 as usize % w.len(), seed.1 as usize % w.len());
        let (x, y) = (w.meet_idx(a, b), w.join_idx(a, b));
        let images: BTreeSet<usize> = (0..w.len())
            .filter(|&z| w.leq_idx(x, z) && w.leq_idx(z, y))
            .map(|z| c.class_of_idx(z))
            .collect();
        let q = c.quotient().poset();
        let (cx, cy) = (c.class_of_idx(x), c.class_of_idx(y));
        let interval: BTreeSet<usize> = (0..c.num_classes()).filter(|&k| q.leq(cx, k) && q.leq(k, cy)).collect();
        prop_assert_eq!(images, interval);
    }

    #[test]
    fn refinement_keeps_bottoms(a in arb_congruence(3, 6), extra in proptest::collection::vec(any::<usize>(), 0..=2)) {
        // enlarge a by contracting more join-irreducibles of the same size
        let n = a.n();
        let mut gens: Vec<JoinIrreducible> = a.contracted().to_vec();
        let pool = join_irreducibles(n);
        for &i in &extra {
            gens.push(pool[i % pool.len()]);
        }
        let b = congruence_from_contracted(n, &forcing_ideal(n, &gens).unwrap()).unwrap();
        prop_assert!(a.refines(&b));
        let fine: BTreeSet<Permutation> = a.bottoms().into_iter().collect();
        prop_assert!(b.bottoms().iter().all(|x| fine.contains(x)));
    }
}

/// `w ↦ w · ^K w₀` carries `(S_n)_K` onto the top coset, and the congruence
/// restricted to either side induces the same partition.
#[test]
fn parabolic_and_top_coset_restrictions_agree() {
    let mut congruences: Vec<Arc<Congruence>> = Vec::new();
    for n in 2..=6 {
        for name in ["tamari", "descent", "twisted-baxter", "snk 2", "pnk 3"] {
            congruences.push(named(name, n));
        }
        for g in join_irreducibles(n).into_iter().step_by(5) {
            let c = congruence_from_contracted(n, &forcing_ideal(n, &[g]).unwrap()).unwrap();
            congruences.push(Arc::new(c));
        }
    }
    for c in congruences {
        let n = c.n();
        for p in 1..n {
            let q = n - p;
            let k: BTreeSet<usize> = (1..n).filter(|&i| i != p).collect();
            let (_, shift) = parabolic_factor(&Permutation::longest(n), &k, Side::Left).unwrap();
            let pairs: Vec<(Permutation, Permutation)> = all_permutations(p)
                .flat_map(|u| all_permutations(q).map(move |v| (u.clone(), v)))
                .collect();
            let low: Vec<Permutation> = pairs.iter().map(|(u, v)| times(u, v)).collect();
            let high: Vec<Permutation> = low.iter().map(|w| w.compose(&shift).unwrap()).collect();
            for ((u, v), h) in pairs.iter().zip(&high) {
                assert_eq!(h, &ltimes(u, v));
            }
            for i in 0..low.len() {
                for j in i + 1..low.len() {
                    assert_eq!(
                        c.equivalent(&low[i], &low[j]),
                        c.equivalent(&high[i], &high[j]),
                        "{} vs {} for p = {p}",
                        low[i],
                        low[j]
                    );
                }
            }
        }
    }
}

// h_families

#[test]
fn tamari_bottoms_are_312_avoiders() {
    let spec = FamilySpec::h([perm("312")]).unwrap();
    let g = perm("312");
    for n in 0..=8 {
        let bottoms: BTreeSet<Permutation> = spec.bottoms(n).unwrap().into_iter().collect();
        let avoiders: BTreeSet<Permutation> =
            all_permutations(n).filter(|x| !occurs(&g, x)).collect();
        assert_eq!(bottoms, avoiders, "n = {n}");
    }
}

#[test]
fn snk_contracts_large_descents() {
    for k in 1..=4 {
        let spec: FamilySpec = format!("snk {k}").parse().unwrap();
        for n in 0..=7 {
            for x in all_permutations(n) {
                let big = x
                    .word()
                    .windows(2)
                    .any(|p| p[0] as usize >= p[1] as usize + k);
                assert_eq!(
                    spec.is_contracted_perm(&x).unwrap(),
                    big,
                    "k = {k}, x = {x}"
                );
            }
        }
    }
}

#[test]
fn twisted_baxter_is_the_meet() {
    let tb = FamilySpec::h([perm("2413"), perm("3412")]).unwrap();
    let a = FamilySpec::h([perm("231")]).unwrap();
    let b = FamilySpec::h([perm("312")]).unwrap();
    for n in 2..=8 {
        let both: BTreeSet<JoinIrreducible> = a
            .contracted_jis(n)
            .unwrap()
            .intersection(&b.contracted_jis(n).unwrap())
            .copied()
            .collect();
        assert_eq!(tb.contracted_jis(n).unwrap(), both, "n = {n}");
    }
    for n in 2..=6 {
        let meet = permcong::congruence::meet_congruences(
            &Family::new(a.clone()).congruence(n).unwrap(),
            &Family::new(b.clone()).congruence(n).unwrap(),
        )
        .unwrap();
        assert_eq!(&meet, &*Family::new(tb.clone()).congruence(n).unwrap());
    }
}

#[test]
fn padding_preserves_forcing_order() {
    for k in 2..=4 {
        let small = ForcingOrder::shared(k).unwrap();
        for (p, q) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
            let n = p + k + q;
            let big = ForcingOrder::shared(n).unwrap();
            let lift = |g: &JoinIrreducible| {
                JoinIrreducible::from_permutation(&pad(p, &g.to_permutation(), q)).unwrap()
            };
            for a in small.elements() {
                for b in small.elements() {
                    assert_eq!(
                        small.leq(a, b),
                        big.leq(&lift(a), &lift(b)),
                        "{a} {b} p={p} q={q}"
                    );
                }
                // everything above a translate is a translate with the same padding
                let la = lift(a);
                for g in big.elements() {
                    if big.leq(&la, g) {
                        let w = g.to_permutation();
                        let padded = (1..=p).all(|i| w.at(i) == i as u8)
                            && (n - q + 1..=n).all(|i| w.at(i) == i as u8);
                        assert!(padded, "{g} above {la}");
                    }
                }
            }
        }
    }
}

#[test]
fn degree_three_untranslated_rank() {
    let deg3: BTreeSet<String> = join_irreducibles(4)
        .into_iter()
        .filter(|g| g.degree() == 3 && g.is_untranslated())
        .map(|g| g.to_string())
        .collect();
    let expected: BTreeSet<String> = ["2341", "3412", "2413", "4123"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(deg3, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fast_contraction_matches_scrambles(x in arb_perm(2, 6)) {
        for name in ["tamari", "twisted-baxter", "snk 2", "pnk 3"] {
            let spec: FamilySpec = name.parse().unwrap();
            prop_assert_eq!(
                spec.is_contracted_perm(&x).unwrap(),
                is_contracted_by_scrambles(&spec, &x).unwrap(),
                "{}", name
            );
        }
    }

    #[test]
    fn fast_projection_matches_lattice(x in arb_perm(1, 6)) {
        for name in ["tamari", "descent", "twisted-baxter", "pnk 2"] {
            let spec: FamilySpec = name.parse().unwrap();
            let c = named(name, x.len());
            prop_assert_eq!(&spec.pi_down_fast(&x).unwrap(), c.pi_down(&x));
        }
    }
}

// hopf_algebra

#[test]
fn hopf_grading_and_small_degrees() {
    for name in ["tamari", "descent", "twisted-baxter", "snk 2", "pnk 3"] {
        let h = QuotientHopf::new(name.parse().unwrap());
        assert_eq!(h.basis(0).unwrap().len(), 1, "{name}");
        assert_eq!(h.basis(1).unwrap().len(), 1, "{name}");
        for p in 0..=3 {
            for q in 0..=3 - p {
                for u in h.basis(p).unwrap() {
                    for v in h.basis(q).unwrap() {
                        let prod = h.product(&u, &v).unwrap();
                        assert!(prod.iter().all(|(w, _)| w.len() == p + q));
                    }
                }
            }
        }
        for n in 0..=4 {
            for x in h.basis(n).unwrap() {
                let cop = h.coproduct(&x).unwrap();
                assert!(cop.iter().all(|((a, b), _)| a.len() + b.len() == n));
            }
        }
    }
}

#[test]
fn retraction_inverts_embedding() {
    for name in ["tamari", "twisted-baxter", "snk 3"] {
        let h = QuotientHopf::new(name.parse().unwrap());
        for n in 0..=6 {
            for x in h.basis(n).unwrap() {
                let cx = h.c_map(&x).unwrap();
                assert_eq!(h.r_map(&cx).unwrap(), permcong::GradedVector::basis(x));
            }
        }
        // c ∘ r is not the identity on non-bottoms
        let w = Permutation::longest(3);
        if !h.is_bottom(&w).unwrap() {
            let rw = h.r_map(&permcong::GradedVector::basis(w.clone())).unwrap();
            assert_ne!(h.c_map_vec(&rw).unwrap(), permcong::GradedVector::basis(w));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mr_grading(u in arb_perm(0, 4), v in arb_perm(0, 4)) {
        let p = mr_product(&u, &v);
        prop_assert!(p.iter().all(|(w, _)| w.len() == u.len() + v.len()));
        let x = times(&u, &v);
        let d = mr_coproduct(&x);
        prop_assert!(d.iter().all(|((a, b), _)| a.len() + b.len() == x.len()));
        prop_assert_eq!(d.len(), x.len() + 1);
    }
}

// fan_geometry

#[test]
fn tamari_fan_refines_descent_fan() {
    for n in 2..=5 {
        let fine = build_fan(named("tamari", n)).unwrap();
        let coarse = build_fan(named("descent", n)).unwrap();
        for cone in fine.cones() {
            let holders = coarse
                .cones()
                .iter()
                .filter(|c| cone.is_subset_of(c))
                .count();
            assert_eq!(holders, 1);
        }
    }
}

#[test]
fn fans_lineality_and_interiors() {
    for name in [
        "trivial",
        "tamari",
        "descent",
        "twisted-baxter",
        "snk 2",
        "pnk 2",
    ] {
        for n in 1..=5 {
            let c = named(name, n);
            let fan = build_fan(c.clone()).unwrap();
            if n >= 2 && !permcong::fan::contracts_atom(&c) {
                assert_eq!(fan.lineality_dim(), 1, "{name} n={n}");
            }
            assert_eq!(fan.lineality_dim(), intersection_dim(&c));
            for (class, cone) in fan.cones().iter().enumerate() {
                let mut p = vec![0i64; n];
                for x in c.members(class) {
                    for (acc, v) in p.iter_mut().zip(chamber_point(&x)) {
                        *acc += v;
                    }
                }
                assert!(cone.contains_in_relative_interior(&p), "{name} n={n}");
            }
            if fan.is_simplicial() {
                assert_eq!(h_from_covers(&c), h_from_f(&fan.f_vector()), "{name} n={n}");
            }
        }
    }
}

#[test]
fn fan_json_is_deterministic_and_round_trips() {
    let a = serde_json::to_string(&build_fan(named("tamari", 4)).unwrap().to_json()).unwrap();
    let b = serde_json::to_string(&build_fan(named("tamari", 4)).unwrap().to_json()).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::to_string(&v).unwrap().len(), a.len());
    let c = named("twisted-baxter", 4);
    let j = serde_json::to_value(c.to_json()).unwrap();
    assert_eq!(
        j,
        serde_json::to_value(named("twisted-baxter", 4).to_json()).unwrap()
    );
    let x = perm("2413");
    let s = serde_json::to_string(&x).unwrap();
    assert_eq!(serde_json::from_str::<Permutation>(&s).unwrap(), x);
}
