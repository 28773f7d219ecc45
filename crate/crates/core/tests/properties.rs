//! Algebraic laws and structural invariants under randomized inputs.

use proptest::prelude::*;

use stringy_mckay::monomial::{Angle, MonomialElement, MonomialGroup};
use stringy_mckay::orbifold::diagonal_orthant_fan;
use stringy_mckay::resolve::crepant_resolution;
use stringy_mckay::scalar::{fr, fr_int, int, to_u64, Frac};
use stringy_mckay::{Int, MotivicClass};

fn klass() -> impl Strategy<Value = MotivicClass<Int>> {
    proptest::collection::vec(((0i64..4, 0i64..4), -3i64..=3), 0..6).prop_map(|terms| {
        let mut acc = MotivicClass::zero();
        for ((p, q), c) in terms {
            acc = acc.add(&MotivicClass::term(int(c), fr_int(p), fr_int(q)).unwrap());
        }
        acc
    })
}

fn element() -> impl Strategy<Value = MonomialElement<Int>> {
    (1usize..4).prop_flat_map(|n| {
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        let angles = proptest::collection::vec((0i64..12, 1i64..5), n);
        (perm, angles).prop_map(|(p, a)| {
            let angles = a.into_iter().map(|(num, den)| Angle::new(fr(num, den))).collect();
            MonomialElement::new(p, angles).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn addition_commutes(a in klass(), b in klass()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn addition_associates(a in klass(), b in klass(), c in klass()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn multiplication_commutes(a in klass(), b in klass()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn multiplication_associates(a in klass(), b in klass(), c in klass()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(a in klass(), b in klass(), c in klass()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn one_and_zero_are_neutral(a in klass()) {
        prop_assert_eq!(a.mul(&MotivicClass::one()), a.clone());
        prop_assert_eq!(a.add(&MotivicClass::zero()), a);
    }

    #[test]
    fn tate_powers_are_additive(n1 in 0i64..20, d1 in 1i64..8, n2 in 0i64..20, d2 in 1i64..8) {
        let a: Frac<Int> = fr(n1, d1);
        let b: Frac<Int> = fr(n2, d2);
        let lhs = MotivicClass::tate_power(a.clone()).unwrap()
            .mul(&MotivicClass::tate_power(b.clone()).unwrap());
        prop_assert_eq!(lhs, MotivicClass::tate_power(a + b).unwrap());
    }

    #[test]
    fn euler_characteristic_is_a_ring_map(a in klass(), b in klass()) {
        prop_assert_eq!(
            a.add(&b).euler_characteristic(),
            a.euler_characteristic() + b.euler_characteristic()
        );
        prop_assert_eq!(
            a.mul(&b).euler_characteristic(),
            a.euler_characteristic() * b.euler_characteristic()
        );
    }

    #[test]
    fn render_separates_classes(a in klass(), b in klass()) {
        prop_assert_eq!(a == b, a.to_string() == b.to_string());
    }

    #[test]
    fn construction_order_is_irrelevant(
        terms in proptest::collection::vec(((0i64..4, 0i64..4), -3i64..=3), 0..6)
    ) {
        let build = |ts: &[((i64, i64), i64)]| {
            let mut acc = MotivicClass::<Int>::zero();
            for &((p, q), c) in ts {
                acc = acc.add(&MotivicClass::term(int(c), fr_int(p), fr_int(q)).unwrap());
            }
            acc
        };
        let reversed: Vec<_> = terms.iter().rev().copied().collect();
        prop_assert_eq!(build(&terms), build(&reversed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn age_pairs_with_the_inverse(g in element()) {
        let n = g.dim();
        let duality = g.age() + g.inverse().age();
        prop_assert_eq!(duality, fr_int((n - g.fixed_dim()) as i64));
    }

    #[test]
    fn shift_equals_inverse_age(g in element()) {
        let m = g.order();
        prop_assert_eq!(g.shift_w(&m).unwrap(), g.inverse().age());
    }

    #[test]
    fn eigen_angles_of_the_inverse_negate(g in element()) {
        let mut negated: Vec<Angle<Int>> = g.eigen_angles().iter().map(Angle::neg).collect();
        negated.sort();
        prop_assert_eq!(negated, g.inverse().eigen_angles());
    }

    #[test]
    fn order_annihilates(g in element()) {
        let ord = to_u64(&g.order()).unwrap();
        let mut acc = MonomialElement::identity(g.dim());
        for _ in 0..ord {
            acc = acc.multiply(&g).unwrap();
        }
        prop_assert!(acc.is_identity());
        // No smaller positive power reaches the identity.
        let mut acc = MonomialElement::identity(g.dim());
        for _ in 0..ord.saturating_sub(1) {
            acc = acc.multiply(&g).unwrap();
            prop_assert!(!acc.is_identity());
        }
    }

    #[test]
    fn closures_are_groups(gens in proptest::collection::vec(element(), 1..3)) {
        let n = gens[0].dim();
        prop_assume!(gens.iter().all(|g| g.dim() == n));
        let Ok(group) = MonomialGroup::close(n, gens, 300) else {
            // Oversized closures are exercised elsewhere; skip them here.
            return Ok(());
        };
        prop_assert!(group.contains(&MonomialElement::identity(n)));
        for a in group.elements().iter().take(5) {
            prop_assert!(group.contains(&a.inverse()));
            for b in group.elements().iter().take(5) {
                prop_assert!(group.contains(&a.multiply(b).unwrap()));
            }
        }
        let class_total: usize = group.conjugacy_classes().iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(class_total, group.order());
    }

    #[test]
    fn box_counts_match_cone_indices(
        r in 2i64..12,
        w in proptest::collection::vec(0i64..12, 3)
    ) {
        let angles = w.iter().map(|&x| Angle::new(fr(x, r))).collect();
        let group = MonomialGroup::close_default(3, vec![MonomialElement::diagonal(angles)])
            .unwrap();
        let fan = diagonal_orthant_fan(&group).unwrap();
        let top = fan.maximal_cones()[0].clone();
        let boxes = fan.box_elements(&top, 20_000).unwrap();
        prop_assert_eq!(int::<Int>(boxes.len() as i64), fan.cone_index(&top).unwrap());
        // Axis elements of the group shorten the primitive rays; the box
        // index recovers the group order up to those denominators.
        let mut ray_denoms = Int::from(1);
        for (i, ray) in fan.rays().iter().enumerate() {
            ray_denoms *= ray[i].denom().clone();
        }
        prop_assert_eq!(
            int::<Int>(boxes.len() as i64) * ray_denoms,
            int::<Int>(group.order() as i64)
        );
        let distinct: std::collections::BTreeSet<_> =
            boxes.iter().map(|b| b.residues.clone()).collect();
        prop_assert_eq!(distinct.len(), boxes.len());
        for b in &boxes {
            prop_assert!(fan.lattice().contains(&b.point).unwrap());
        }
    }

    #[test]
    fn cyclic_quotients_in_special_position_resolve(
        r in 2i64..10,
        a in 0i64..10,
        b in 0i64..10
    ) {
        let a = a % r;
        let b = b % r;
        let c = (2 * r - a - b) % r;
        let angles = [a, b, c].iter().map(|&x| Angle::<Int>::new(fr(x, r))).collect();
        let group = MonomialGroup::close_default(3, vec![MonomialElement::diagonal(angles)])
            .unwrap();
        prop_assert!(group.is_sl());
        let fan = diagonal_orthant_fan(&group).unwrap();
        let res = crepant_resolution(&fan, 20_000).unwrap();
        prop_assert!(res.is_smooth().unwrap());
        prop_assert_eq!(res.epoly(), fan.stringy_epoly(20_000).unwrap());
        // Rebuilding the resolution is byte for byte reproducible.
        let again = crepant_resolution(&fan, 20_000).unwrap();
        prop_assert_eq!(res.render_text(), again.render_text());
    }
}
