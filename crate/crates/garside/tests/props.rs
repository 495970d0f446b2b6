//! Property-based tests over randomly generated monoid elements: normal-form
//! validity, the lattice laws for gcd/lcm, head behavior, fraction axioms and
//! the parabolic head transport rules.

use std::sync::OnceLock;

use proptest::prelude::*;

use garside::coxeter::CoxeterType;
use garside::fractions::GroupFraction;
use garside::monoid::{Monoid, MonoidElement};
use garside::parabolic;
use garside::presentations::{artin_for_type, dual_for_rank};
use garside::AtomId;

fn artin_a2() -> &'static Monoid {
    static M: OnceLock<Monoid> = OnceLock::new();
    M.get_or_init(|| artin_for_type(&CoxeterType::A(2)).unwrap())
}

fn artin_a3() -> &'static Monoid {
    static M: OnceLock<Monoid> = OnceLock::new();
    M.get_or_init(|| artin_for_type(&CoxeterType::A(3)).unwrap())
}

fn dual_a3() -> &'static Monoid {
    static M: OnceLock<Monoid> = OnceLock::new();
    M.get_or_init(|| dual_for_rank(3).unwrap())
}

fn instances() -> [&'static Monoid; 3] {
    [artin_a2(), artin_a3(), dual_a3()]
}

fn instance() -> impl Strategy<Value = &'static Monoid> {
    (0usize..3).prop_map(|i| instances()[i])
}

fn word(max_atoms: usize) -> impl Strategy<Value = (&'static Monoid, MonoidElement)> {
    instance().prop_flat_map(move |m| {
        prop::collection::vec(0..m.n_atoms() as u32, 0..max_atoms)
            .prop_map(move |ids| {
                let atoms: Vec<AtomId> = ids.into_iter().map(AtomId).collect();
                (m, m.from_atoms(&atoms))
            })
    })
}

fn word_pair(max_atoms: usize) -> impl Strategy<Value = (&'static Monoid, MonoidElement, MonoidElement)> {
    instance().prop_flat_map(move |m| {
        let ids = || prop::collection::vec(0..m.n_atoms() as u32, 0..max_atoms);
        (ids(), ids()).prop_map(move |(xs, ys)| {
            let to_elt = |ids: Vec<u32>| {
                let atoms: Vec<AtomId> = ids.into_iter().map(AtomId).collect();
                m.from_atoms(&atoms)
            };
            (m, to_elt(xs), to_elt(ys))
        })
    })
}

fn word_triple(
    max_atoms: usize,
) -> impl Strategy<Value = (&'static Monoid, MonoidElement, MonoidElement, MonoidElement)> {
    instance().prop_flat_map(move |m| {
        let ids = || prop::collection::vec(0..m.n_atoms() as u32, 0..max_atoms);
        (ids(), ids(), ids()).prop_map(move |(xs, ys, zs)| {
            let to_elt = |ids: Vec<u32>| {
                let atoms: Vec<AtomId> = ids.into_iter().map(AtomId).collect();
                m.from_atoms(&atoms)
            };
            (m, to_elt(xs), to_elt(ys), to_elt(zs))
        })
    })
}

proptest! {
    #[test]
    fn products_are_left_normal((m, g, h) in word_pair(8)) {
        let p = m.multiply(&g, &h);
        prop_assert!(m.is_left_normal(p.factors()));
    }

    #[test]
    fn format_parse_roundtrip((m, g) in word(8)) {
        let text = m.format_element(&g);
        let back = m.parse_word(&text.replace(' ', ".")).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn atom_word_rebuilds_the_element((m, g) in word(8)) {
        let atoms = m.atom_word(&g);
        prop_assert_eq!(m.from_atoms(&atoms), g);
    }

    #[test]
    fn multiplication_is_associative((m, g, h, k) in word_triple(6)) {
        let left = m.multiply(&m.multiply(&g, &h), &k);
        let right = m.multiply(&g, &m.multiply(&h, &k));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unit_is_neutral((m, g) in word(8)) {
        prop_assert_eq!(m.multiply(&m.unit(), &g), g.clone());
        prop_assert_eq!(m.multiply(&g, &m.unit()), g);
    }

    #[test]
    fn left_quotient_of_a_product((m, g, h) in word_pair(6)) {
        let p = m.multiply(&g, &h);
        prop_assert_eq!(m.left_divide_exact(&g, &p), Some(h.clone()));
        prop_assert_eq!(m.right_divide_exact(&p, &h), Some(g));
    }

    #[test]
    fn gcd_divides_and_lcm_is_divided((m, g, h) in word_pair(6)) {
        let d = m.left_gcd(&g, &h);
        prop_assert!(m.left_divides(&d, &g));
        prop_assert!(m.left_divides(&d, &h));
        let l = m.right_lcm(&g, &h);
        prop_assert!(m.left_divides(&g, &l));
        prop_assert!(m.left_divides(&h, &l));
        prop_assert_eq!(m.left_gcd(&h, &g), d);
        prop_assert_eq!(m.right_lcm(&h, &g), l);
    }

    #[test]
    fn gcd_lcm_absorption((m, g, h) in word_pair(6)) {
        let d = m.left_gcd(&g, &h);
        let l = m.right_lcm(&g, &h);
        prop_assert_eq!(m.right_lcm(&g, &d), g.clone());
        prop_assert_eq!(m.left_gcd(&g, &l), g);
    }

    #[test]
    fn mirrored_gcd_lcm_laws((m, g, h) in word_pair(6)) {
        let d = m.right_gcd(&g, &h);
        prop_assert!(m.right_divides(&d, &g));
        prop_assert!(m.right_divides(&d, &h));
        let l = m.left_lcm(&g, &h);
        prop_assert!(m.right_divides(&g, &l));
        prop_assert!(m.right_divides(&h, &l));
    }

    #[test]
    fn head_is_gcd_with_delta((m, g) in word(8)) {
        let head = m.simple_elt(m.head(&g));
        prop_assert_eq!(m.left_gcd(&g, &m.delta()), head.clone());
        prop_assert_eq!(m.multiply(&head, &m.tail(&g)), g.clone());
        let shifted = m.multiply(&m.delta(), &g);
        prop_assert_eq!(m.head(&shifted), m.delta_simple());
    }

    #[test]
    fn delta_conjugation_commutes_past_delta((m, g) in word(8)) {
        let left = m.multiply(&g, &m.delta());
        let right = m.multiply(&m.delta(), &m.delta_conjugate(&g, 1));
        prop_assert_eq!(left, right);
        prop_assert_eq!(m.delta_conjugate(&m.delta_conjugate(&g, 1), -1), g);
    }

    #[test]
    fn fraction_reduction_cancels_common_prefix((m, g, h) in word_pair(6)) {
        let d = m.multiply(&g, &h);
        let base = GroupFraction::reduce(m, &g, &h);
        let padded = GroupFraction::reduce(m, &m.multiply(&d, &g), &m.multiply(&d, &h));
        prop_assert_eq!(base.clone(), padded);
        prop_assert!(m.left_gcd(base.den(), base.num()).is_unit());
    }

    #[test]
    fn fraction_group_laws((m, g, h) in word_pair(5)) {
        let x = GroupFraction::reduce(m, &g, &h);
        let inv = x.inverse();
        prop_assert!(GroupFraction::multiply(m, &x, &inv).is_one());
        prop_assert!(GroupFraction::multiply(m, &inv, &x).is_one());
        let y = GroupFraction::from_monoid(&m.multiply(&h, &g));
        let conj = GroupFraction::conjugate(m, &x, &y);
        let back = GroupFraction::conjugate(m, &conj, &y.inverse());
        prop_assert_eq!(back, x);
    }

    #[test]
    fn fraction_conjugation_composes((m, g, h, k) in word_triple(4)) {
        let b = GroupFraction::reduce(m, &g, &h);
        let x = GroupFraction::from_monoid(&k);
        let y = GroupFraction::reduce(m, &h, &g);
        let stepwise = GroupFraction::conjugate(m, &GroupFraction::conjugate(m, &b, &x), &y);
        let joined = GroupFraction::conjugate(m, &b, &GroupFraction::multiply(m, &x, &y));
        prop_assert_eq!(stepwise, joined);
    }

    #[test]
    fn parabolic_head_absorbs_prefixes_from_the_submonoid((m, g, h) in word_pair(6)) {
        let p = parabolic::smallest_parabolic_containing(m, &g);
        let gh = m.multiply(&g, &h);
        let head = parabolic::head_p(m, &p, &gh);
        let expected = m.multiply(&g, &parabolic::head_p(m, &p, &h));
        prop_assert_eq!(head, expected);
        prop_assert!(parabolic::is_p_reduced(m, &p, &parabolic::tail_p(m, &p, &gh)));
    }

    #[test]
    fn smallest_parabolic_contains_and_is_closed((m, g) in word(6)) {
        let p = parabolic::smallest_parabolic_containing(m, &g);
        prop_assert!(parabolic::contains_element(m, &p, &g));
        let atoms: Vec<AtomId> = p.atom_ids().iter().copied().collect();
        let again = parabolic::parabolic_closure(m, &atoms);
        prop_assert_eq!(again.atom_ids(), p.atom_ids());
        prop_assert_eq!(again.delta(), p.delta());
    }
}
