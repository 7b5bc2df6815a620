use super::*;
use crate::budget::Budget;
use crate::presentation::{catalog, Presentation};
use crate::word::Word;
use crate::zlattice::abelianization;
use crate::Error;

fn pres(t: &str) -> Presentation {
    Presentation::parse(t).unwrap()
}

fn order(p: &Presentation) -> usize {
    todd_coxeter(p, &[], &Budget::default()).unwrap().index()
}

#[test]
fn enumeration_examples() {
    assert_eq!(order(&pres("< a | a^5 >")), 5);
    assert_eq!(order(&catalog("A5", &[]).unwrap().presentation), 60);
    assert_eq!(order(&catalog("S3", &[]).unwrap().presentation), 6);
    assert_eq!(order(&catalog("klein4", &[]).unwrap().presentation), 4);
    assert_eq!(order(&pres("< a, b | a^2, b^2, (a b)^7 >")), 14);
    assert_eq!(order(&pres("< x | x >")), 1);
    assert_eq!(order(&pres("< | >")), 1);
    // quaternion group
    assert_eq!(order(&pres("< a, b | a^4, a^2 b^-2, b^-1 a b a >")), 8);
    // PSL(2,7)
    assert_eq!(order(&pres("< a, b | a^2, b^3, (a b)^7, [a, b]^4 >")), 168);
}

#[test]
fn subgroup_enumeration() {
    let a5 = catalog("A5", &[]).unwrap().presentation;
    let t = todd_coxeter(&a5, &[Word::generator(0)], &Budget::default()).unwrap();
    assert_eq!(t.index(), 30);
    assert!(t.verify(&a5));
    assert!(t.is_standardized());
    let t = todd_coxeter(&a5, &[Word::generator(1)], &Budget::default()).unwrap();
    assert_eq!(t.index(), 20);
    let z = pres("< a | >");
    let t = todd_coxeter(&z, &[Word::generator(0).pow(4)], &Budget::default()).unwrap();
    assert_eq!(t.index(), 4);
}

#[test]
fn exhaustion_is_reported() {
    let a5 = catalog("A5", &[]).unwrap().presentation;
    let r = todd_coxeter(&a5, &[], &Budget::default().with_max_cosets(10));
    assert!(matches!(r, Err(Error::Exhausted(_))));
    let z = pres("< a | >");
    assert!(matches!(
        todd_coxeter(&z, &[], &Budget::default().with_max_cosets(1000)),
        Err(Error::Exhausted(_))
    ));
}

#[test]
fn deterministic_standard_tables() {
    let a5 = catalog("A5", &[]).unwrap().presentation;
    let t1 = todd_coxeter(&a5, &[], &Budget::default()).unwrap();
    let t2 = todd_coxeter(&a5, &[], &Budget::default()).unwrap();
    assert_eq!(t1, t2);
    // a different relator order gives the same standardized table
    let mut rels = a5.relators().to_vec();
    rels.reverse();
    let t3 = todd_coxeter(&a5.with_relators(rels).unwrap(), &[], &Budget::default()).unwrap();
    assert_eq!(t1.raw_rows(), t3.raw_rows());
}

#[test]
fn schreier_examples() {
    let z = pres("< a | >");
    let t = todd_coxeter(&z, &[Word::generator(0).pow(2)], &Budget::default()).unwrap();
    let h = reidemeister_schreier(&z, &t).unwrap();
    assert_eq!((h.generator_count(), h.relator_count()), (1, 0));

    let f2 = pres("< a, b | >");
    let sub = [
        Word::generator(0),
        Word::generator(1).pow(2),
        Word::generator(0).conjugate_by(&Word::generator(1)),
    ];
    let t = todd_coxeter(&f2, &sub, &Budget::default()).unwrap();
    assert_eq!(t.index(), 2);
    let h = reidemeister_schreier(&f2, &t).unwrap();
    assert_eq!((h.generator_count(), h.relator_count()), (3, 0));

    let c6 = pres("< a | a^6 >");
    let t = todd_coxeter(&c6, &[Word::generator(0).pow(3)], &Budget::default()).unwrap();
    let h = reidemeister_schreier(&c6, &t).unwrap();
    assert_eq!(h.generator_count(), 1);
    assert_eq!(abelianization(&h).torsion, vec![2.into()]);
}

#[test]
fn schreier_rank_formula_and_rewriting() {
    let a5 = catalog("A5", &[]).unwrap().presentation;
    let t = todd_coxeter(&a5, &[], &Budget::default()).unwrap();
    let sys = SchreierSystem::new(&t).unwrap();
    assert_eq!(sys.rank(), 60 * 2 - 60 + 1);
    // rewriting a Schreier generator's own word gives that generator back
    for s in 0..sys.rank() {
        let w = sys.generator_word(&t, s);
        let (rw, end) = sys.rewrite(&t, 0, &w);
        assert_eq!(end, 0);
        assert_eq!(rw, Word::generator(s));
    }
    // the trivial subgroup of a finite group: N is the whole relator closure
    let h = reidemeister_schreier(&a5, &t).unwrap();
    assert!(abelianization(&h).is_finite() || h.generator_count() == 61);
}

#[test]
fn low_index_examples() {
    let b = Budget::default();
    let z = pres("< a | >");
    assert_eq!(low_index(&z, 5, &b).totals(), vec![1, 1, 1, 1, 1]);
    let f2 = pres("< a, b | >");
    let fp = low_index(&f2, 3, &b);
    assert_eq!(fp.counts[1].subgroups, 3);
    // free group of rank 2: 1, 3, 13 subgroups of index 1, 2, 3
    assert_eq!(fp.totals(), vec![1, 3, 13]);
    let a5 = catalog("A5", &[]).unwrap().presentation;
    let fp = low_index(&a5, 6, &b);
    assert_eq!(fp.totals(), vec![1, 0, 0, 0, 5, 6]);
    assert_eq!(fp.counts[4].classes, 1);
    assert_eq!(fp.counts[5].classes, 1);
    let s3 = catalog("S3", &[]).unwrap().presentation;
    let fp = low_index(&s3, 6, &b);
    // S3: index 2 (A3), index 3 (three conjugate C2), index 6 (trivial)
    assert_eq!(fp.totals(), vec![1, 1, 3, 0, 0, 1]);
    assert_eq!(fp.counts[2].classes, 1);
}

#[test]
fn index_two_count_matches_abelianization() {
    let b = Budget::default();
    for t in [
        "< a, b | >",
        "< a, b | a^2, b^2, [a, b] >",
        "< a, b, c | a^4, b^6 c^2 >",
        "< a | a^5 >",
        "< a, b | a^2, b^3, (a b)^5 >",
    ] {
        let p = pres(t);
        let s = abelianization(&p).two_rank() as u32;
        assert_eq!(low_index(&p, 2, &b).counts[1].subgroups, 2u64.pow(s) - 1, "{t}");
    }
}

#[test]
fn fingerprint_comparisons() {
    let b = Budget::default();
    let c = fingerprint_compare(&pres("< a | a^2 >"), &pres("< a | a^3 >"), 3, &b);
    assert_eq!(c.first_discrepancy, Some(2));
    let a5 = catalog("A5", &[]).unwrap().presentation;
    assert!(fingerprint_compare(&a5, &a5, 5, &b).equal());
}
