//! End-to-end acceptance checks. Each test covers one advertised guarantee
//! and prints a single pass line with its runtime; any failure is fatal.

use std::time::{Duration, Instant};

use garside::fractions::{self, GroupFraction, ParabolicSubgroup};
use garside::monoid::Monoid;
use garside::oracle::{self, AgreementBounds};
use garside::parabolic::{self, StandardParabolic};
use garside::presentations::{
    artin_for_type, check_lcm_parabolic_compatibility, check_square_free, dual_for_rank,
};
use garside::ribbon;
use garside::coxeter::CoxeterType;
use garside::AtomId;

fn finish(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "{name} took {elapsed:?}, over the budget of {budget:?}"
    );
    println!("PASS {name} ({elapsed:?})");
}

fn parab(m: &Monoid, names: &[&str]) -> StandardParabolic {
    let atoms: Vec<AtomId> = names.iter().map(|n| m.atom_id(n).unwrap()).collect();
    parabolic::parabolic_closure(m, &atoms)
}

#[test]
fn criterion_1_golden_values_in_the_dual_monoid_of_s5() {
    let started = Instant::now();
    let m = dual_for_rank(4).unwrap();
    let s5 = m.parse_word("s5").unwrap();
    let s6 = m.parse_word("s6").unwrap();
    let expected = m.parse_word("s5.s1.s3").unwrap();
    assert_eq!(m.right_lcm(&s5, &s6), expected);

    let p = parab(&m, &["s5"]);
    let v6 = ribbon::v_s_p(&m, &p, m.atom_id("s6").unwrap()).unwrap();
    assert_eq!(m.format_simple(m.as_simple(&v6).unwrap()), "s1.s3");
    let v1 = ribbon::v_s_p(&m, &p, m.atom_id("s1").unwrap()).unwrap();
    assert_eq!(m.format_simple(m.as_simple(&v1).unwrap()), "s1");
    assert!(!m.left_divides(&s6, &v6));
    finish("criterion 1: golden dual-monoid values", started, Duration::from_secs(1));
}

#[test]
fn criterion_2_structure_counts() {
    let started = Instant::now();
    let a2 = artin_for_type(&CoxeterType::A(2)).unwrap();
    assert_eq!(a2.n_simples(), 6);
    let a3 = artin_for_type(&CoxeterType::A(3)).unwrap();
    assert_eq!(a3.n_simples(), 24);
    let dual = dual_for_rank(4).unwrap();
    assert_eq!(dual.n_simples(), 42);
    assert_eq!(dual.n_atoms(), 10);
    finish("criterion 2: structure counts", started, Duration::from_secs(5));
}

fn mandatory_instances() -> Vec<Monoid> {
    vec![
        artin_for_type(&CoxeterType::A(2)).unwrap(),
        artin_for_type(&CoxeterType::A(3)).unwrap(),
        artin_for_type(&CoxeterType::B(2)).unwrap(),
        dual_for_rank(3).unwrap(),
        dual_for_rank(4).unwrap(),
    ]
}

#[test]
fn criterion_3_lattice_compatibility_suite() {
    let started = Instant::now();
    for m in mandatory_instances() {
        let report = check_lcm_parabolic_compatibility(&m);
        assert!(report.ok, "{}: {:?}", m.name(), report.failures);
        assert!(report.exhaustive, "{} was not checked exhaustively", m.name());
        if m.name().starts_with("dual") {
            let sq = check_square_free(&m);
            assert!(sq.ok, "{}: {:?}", m.name(), sq.failures);
        }
    }
    finish("criterion 3: lattice compatibility suite", started, Duration::from_secs(30));
}

#[test]
fn criterion_4_lemma_suite() {
    let started = Instant::now();
    let runs = [
        (artin_for_type(&CoxeterType::A(2)).unwrap(), 3usize),
        (artin_for_type(&CoxeterType::A(3)).unwrap(), 3),
        (dual_for_rank(4).unwrap(), 2),
    ];
    for (m, bound) in &runs {
        for report in oracle::lemma_suite(m, *bound) {
            assert!(
                report.ok,
                "{} on {}: {:?}",
                report.check,
                m.name(),
                report.failures
            );
            assert!(report.cases > 0, "{} on {} ran no cases", report.check, m.name());
        }
    }
    finish("criterion 4: lemma suite", started, Duration::from_secs(60));
}

#[test]
fn criterion_5_oracle_agreement() {
    let started = Instant::now();
    for m in mandatory_instances() {
        let bounds = AgreementBounds::for_instance(&m);
        for report in oracle::oracle_agreement(&m, &bounds) {
            assert!(
                report.ok,
                "{} on {}: {:?}",
                report.check,
                m.name(),
                report.failures
            );
            assert!(report.cases > 0, "{} on {} ran no cases", report.check, m.name());
        }
    }
    finish("criterion 5: oracle agreement", started, Duration::from_secs(60));
}

#[test]
fn criterion_6_standardizer_behavior() {
    let started = Instant::now();
    let m = artin_for_type(&CoxeterType::A(3)).unwrap();
    let bs = m.elements_up_to(2);
    let us = m.elements_up_to(2);
    let u_inverses: Vec<GroupFraction> = us
        .iter()
        .map(|u| GroupFraction::from_monoid(u).inverse())
        .collect();
    let mut tested = 0u64;
    for p in parabolic::all_parabolics(&m) {
        for b in &bs {
            let (b2, _) = fractions::minimal_standardizer(&m, &p, b);
            let k = ParabolicSubgroup::new(&m, p.clone(), GroupFraction::from_monoid(b));
            let own = GroupFraction::conjugate(
                &m,
                k.z(),
                &GroupFraction::from_monoid(&b2).inverse(),
            );
            assert!(
                own.is_positive(),
                "{} over {}: the standardizer does not standardize",
                m.format_element(b),
                p.label(&m)
            );
            assert_eq!(
                k.is_standard(),
                k.z().is_positive(),
                "standardness criterion broke for {} over {}",
                m.format_element(b),
                p.label(&m)
            );
            assert_eq!(
                k.is_standard(),
                b2.is_unit(),
                "{} over {}: standard subgroup with nontrivial standardizer {}",
                m.format_element(b),
                p.label(&m),
                m.format_element(&b2)
            );
            for (u, uinv) in us.iter().zip(&u_inverses) {
                let moved = GroupFraction::conjugate(&m, k.z(), uinv);
                if moved.is_positive() {
                    assert!(
                        m.right_divides(&b2, u),
                        "{} standardizes {} over {} but is not a left multiple of {}",
                        m.format_element(u),
                        m.format_element(b),
                        p.label(&m),
                        m.format_element(&b2)
                    );
                }
            }
            tested += 1;
        }
    }
    assert!(tested > 0);
    finish("criterion 6: standardizer minimality", started, Duration::from_secs(60));
}

#[test]
fn criterion_7_conjugacy_coherence() {
    let started = Instant::now();
    let m = artin_for_type(&CoxeterType::A(3)).unwrap();
    let parabolics = parabolic::all_parabolics(&m);
    let samples = m.elements_up_to(2);
    for p in &parabolics {
        let k = p.central_exponent() as usize;
        let zp = m.pow(&p.delta_elt(&m), k);
        for q in &parabolics {
            let zq = m.pow(&q.delta_elt(&m), k);
            let search = fractions::conjugate_parabolics(&m, p, q);
            if let Ok(rb) = &search {
                assert_eq!(
                    ribbon::conjugate_if_defined(&m, &zp, rb.word()),
                    Some(zq.clone()),
                    "witness from {} to {} does not carry the central power",
                    p.label(&m),
                    q.label(&m)
                );
            }
            let sampled_witness = samples
                .iter()
                .find(|g| ribbon::conjugate_if_defined(&m, &zp, g) == Some(zq.clone()));
            if let Some(g) = sampled_witness {
                assert!(
                    search.is_ok(),
                    "{} carries the central power of {} to {} but the search found nothing",
                    m.format_element(g),
                    p.label(&m),
                    q.label(&m)
                );
            }
        }
    }
    finish("criterion 7: conjugacy coherence", started, Duration::from_secs(60));
}

#[test]
fn criterion_8_conjecture_scan_completes() {
    let started = Instant::now();
    let m = dual_for_rank(4).unwrap();
    let report = oracle::conjecture_scan(&m, 2);
    assert!(report.cases > 0, "the scan ran no cases");
    if report.ok {
        println!("conjecture scan: {} cases, no counterexamples", report.cases);
    } else {
        println!(
            "conjecture scan: {} cases, counterexample witnesses: {:?}",
            report.cases, report.failures
        );
    }
    finish("criterion 8: conjecture scan", started, Duration::from_secs(60));
}
