use super::*;
use crate::budget::Budget;
use crate::presentation::{catalog, Presentation};
use crate::zlattice::AbelianInvariants;

fn pres(t: &str) -> Presentation {
    Presentation::parse(t).unwrap()
}

fn h2(p: &Presentation) -> AbelianInvariants {
    schur_multiplier(p, &Budget::default()).unwrap().multiplier
}

const SL25: &str = "< s, t | (s t)^2 s^-3, s^3 t^-5 >";

#[test]
fn schur_examples() {
    let a5 = catalog("A5", &[]).unwrap().presentation;
    let r = schur_multiplier(&a5, &Budget::default()).unwrap();
    assert_eq!(r.group_order, 60);
    assert_eq!(r.schreier_rank, 61);
    assert_eq!(r.multiplier, AbelianInvariants::from_cyclic_orders(&[2]));
    assert!(h2(&pres("< a | a^5 >")).is_trivial());
    assert_eq!(h2(&catalog("klein4", &[]).unwrap().presentation), AbelianInvariants::from_cyclic_orders(&[2]));
    assert!(h2(&catalog("S3", &[]).unwrap().presentation).is_trivial());
    // quaternion group: trivial; dihedral of order 8 and A4: Z/2
    assert!(h2(&pres("< a, b | a^4, a^2 b^-2, b^-1 a b a >")).is_trivial());
    assert_eq!(h2(&pres("< a, b | a^4, b^2, (a b)^2 >")).to_string(), "Z/2");
    assert_eq!(h2(&pres("< a, b | a^2, b^3, (a b)^3 >")).to_string(), "Z/2");
    // binary icosahedral group is superperfect
    let r = schur_multiplier(&pres(SL25), &Budget::default()).unwrap();
    assert_eq!(r.group_order, 120);
    assert!(r.multiplier.is_trivial());
    assert!(h2(&pres("< | >")).is_trivial());
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn abelian_groups_match_pairwise_gcds() {
    // H_2(Z/a x Z/b x Z/c) = Z/(a,b) + Z/(a,c) + Z/(b,c)
    for (a, b, c) in [(2, 2, 1), (2, 4, 1), (6, 4, 1), (3, 3, 1), (2, 2, 2), (2, 4, 6), (3, 9, 1), (5, 1, 1)] {
        let text = format!("< x, y, z | x^{a}, y^{b}, z^{c}, [x, y], [x, z], [y, z] >");
        let expected = AbelianInvariants::from_cyclic_orders(&[gcd(a, b), gcd(a, c), gcd(b, c)]);
        assert_eq!(h2(&pres(&text)), expected, "{a} {b} {c}");
    }
}

#[test]
fn invariant_under_relator_rewriting() {
    let a5 = catalog("A5", &[]).unwrap().presentation;
    let base = h2(&a5);
    let mut rels: Vec<_> = a5.relators().to_vec();
    rels.reverse();
    rels[0] = rels[0].rotate(3).inverse();
    rels[2] = rels[2].inverse();
    assert_eq!(h2(&a5.with_relators(rels).unwrap()), base);
}

#[test]
fn schur_reports_exhaustion() {
    let r = schur_multiplier(&catalog("free", &[1]).unwrap().presentation, &Budget::default().with_max_cosets(500));
    assert!(matches!(r, Err(crate::Error::Exhausted(_))));
}

#[test]
fn lemma_l0_instances() {
    let b = Budget::default();
    let sl = pres(SL25);
    let centre = lemma_l0_check(
        &L0Instance {
            ambient: sl.clone(),
            normal_generators: vec![sl.word("s^3").unwrap()],
            quotient: pres("< s, t | (s t)^2, s^3, t^5 >"),
        },
        &b,
    )
    .unwrap();
    assert!(centre.hypotheses_met);
    assert_eq!(centre.normal_order, Some(2));
    assert_eq!(centre.coinvariants.as_ref().unwrap().to_string(), "Z/2");
    assert_eq!(centre.agree, Some(true));

    let whole = lemma_l0_check(
        &L0Instance {
            ambient: sl.clone(),
            normal_generators: vec![sl.word("s").unwrap()],
            quotient: pres("< | >"),
        },
        &b,
    )
    .unwrap();
    assert_eq!(whole.normal_order, Some(120));
    assert_eq!(whole.agree, Some(true));
    assert!(whole.coinvariants.unwrap().is_trivial());

    let a5 = catalog("A5", &[]).unwrap().presentation;
    let guarded = lemma_l0_check(
        &L0Instance {
            ambient: a5.clone(),
            normal_generators: vec![],
            quotient: a5.clone(),
        },
        &b,
    )
    .unwrap();
    assert!(!guarded.hypotheses_met);
    assert!(guarded.agree.is_none());
    assert!(guarded.reason.unwrap().contains("hypotheses not met"));

    let wrong_quotient = lemma_l0_check(
        &L0Instance {
            ambient: sl.clone(),
            normal_generators: vec![sl.word("s^3").unwrap()],
            quotient: pres("< a | a^2 >"),
        },
        &b,
    )
    .unwrap();
    assert!(!wrong_quotient.hypotheses_met);
}

#[test]
fn h2_rank_formula() {
    assert_eq!(aspherical_h2_rank(&catalog("Bp", &[2]).unwrap().presentation, true).unwrap(), 0);
    let p = pres("< a, b, c | a, b, c, a b, b c >");
    assert_eq!(aspherical_h2_rank(&p, true).unwrap(), 2);
    assert_eq!(aspherical_h2_rank(&pres("< a, b | a b a^-1 b^-2, b a b^-1 a^-2 >"), true).unwrap(), 0);
    assert!(matches!(aspherical_h2_rank(&pres("< a | a^2 >"), true), Err(crate::Error::NotPerfect(_))));
    assert!(aspherical_h2_rank(&p, false).is_err());
}

#[test]
fn baumslag_arithmetic() {
    let v = baumslag_iso_test(25, 6, 2).unwrap();
    assert_eq!((v.twisted, v.unit_inverse, v.isomorphic), (11, 21, false));
    assert!(baumslag_iso_test(25, 6, 1).unwrap().isomorphic);
    assert!(baumslag_iso_test(25, 6, -1).unwrap().isomorphic);
    // 6 has order 5 mod 25, so 6^6 = 6
    assert!(baumslag_iso_test(25, 6, 6).unwrap().isomorphic);
    assert!(baumslag_iso_test(25, 5, 1).is_err());
    assert!(baumslag_iso_test(24, 5, 1).is_err());
}
