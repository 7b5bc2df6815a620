use super::*;
use crate::budget::Budget;
use crate::coset::low_index;
use crate::presentation::{catalog, Presentation};
use crate::word::Word;

fn pres(t: &str) -> Presentation {
    Presentation::parse(t).unwrap()
}

fn perm(t: &str, n: usize) -> Perm {
    Perm::parse_cycles(t, n).unwrap()
}

fn accepted(p: &Presentation, images: &[Perm]) -> GroupHom {
    match verify_hom(p, images).unwrap() {
        HomCheck::Accepted(h) => h,
        HomCheck::Rejected { word, .. } => panic!("rejected on {word}"),
    }
}

#[test]
fn verify_hom_examples() {
    let p = pres("< a | a^5 >");
    assert!(matches!(verify_hom(&p, &[perm("(1,2,3,4,5)", 5)]).unwrap(), HomCheck::Accepted(_)));
    match verify_hom(&p, &[perm("(1,2)", 5)]).unwrap() {
        HomCheck::Rejected { relator, word, value } => {
            assert_eq!(relator, 0);
            assert_eq!(word, "a^5");
            assert_eq!(value, perm("(1,2)", 5));
        }
        other => panic!("{other:?}"),
    }
    assert!(verify_hom(&p, &[]).is_err());
    let q = pres("< a, b | a >");
    assert!(verify_hom(&q, &[perm("()", 2), perm("()", 3)]).is_err());
}

#[test]
fn acceptance_ignores_relator_conjugation() {
    let a5 = catalog("A5", &[]).unwrap().presentation;
    let images = [perm("(1,2)(3,4)", 5), perm("(1,3,5)", 5)];
    assert!(matches!(verify_hom(&a5, &images).unwrap(), HomCheck::Accepted(_)));
    let c = a5.word("b a b").unwrap();
    let twisted: Vec<Word> = a5.relators().iter().map(|r| r.inverse().conjugate_by(&c)).collect();
    let b = a5.with_relators(twisted).unwrap();
    assert!(matches!(verify_hom(&b, &images).unwrap(), HomCheck::Accepted(_)));
    let bad = [perm("(1,2)(3,4)", 5), perm("(1,2,3)", 5)];
    assert!(matches!(verify_hom(&a5, &bad).unwrap(), HomCheck::Rejected { .. }));
    assert!(matches!(verify_hom(&b, &bad).unwrap(), HomCheck::Rejected { .. }));
}

/// Counts by brute force over every assignment of group elements.
fn brute_counts(p: &Presentation, target: &PermGroup) -> (usize, usize) {
    let g = IndexedGroup::new(target, 1000).unwrap();
    let n = p.generator_count();
    let mut homs = 0;
    let mut epis = 0;
    let total = g.order().pow(n as u32);
    for mut code in 0..total {
        let mut images = Vec::with_capacity(n);
        for _ in 0..n {
            images.push(code % g.order());
            code /= g.order();
        }
        if p.relators().iter().all(|r| g.eval(r, &images) == 0) {
            homs += 1;
            if g.generated_order(&images) == g.order() {
                epis += 1;
            }
        }
    }
    (homs, epis)
}

#[test]
fn hom_search_examples() {
    let b = Budget::default();
    let s3 = named_group("S3").unwrap();
    let r = hom_search(&pres("< a | a^2 >"), &s3, &b).unwrap();
    assert!(r.complete);
    assert_eq!(r.hom_count(), 4);
    assert_eq!(r.homs[0].0.images()[0], Perm::identity(3));
    let f2 = catalog("free", &[2]).unwrap().presentation;
    let r = hom_search(&f2, &s3, &b).unwrap();
    assert_eq!((r.hom_count(), r.epi_count()), (36, 18));
    for p in [
        catalog("A5", &[]).unwrap().presentation,
        catalog("klein4", &[]).unwrap().presentation,
        pres("< a, b | a^2 b^-3, [a, b a b] >"),
    ] {
        for (_, t) in transitive_groups(4) {
            let r = hom_search(&p, &t, &b).unwrap();
            assert_eq!((r.hom_count(), r.epi_count()), brute_counts(&p, &t));
        }
    }
}

#[test]
fn hom_search_is_sorted_and_closed_under_automorphisms() {
    let a5 = catalog("A5", &[]).unwrap().presentation;
    let s5 = named_group("S5").unwrap();
    let r = hom_search(&a5, &named_group("A5").unwrap(), &Budget::default()).unwrap();
    // epimorphisms A5 -> A5 form one Aut(A5) = S5 orbit of size 120
    assert_eq!(r.epi_count(), 120);
    let epis: Vec<Vec<Perm>> = r.homs.iter().filter(|(_, e)| *e).map(|(h, _)| h.images().to_vec()).collect();
    let t = &s5.generators()[1];
    for e in &epis {
        let conj: Vec<Perm> = e.iter().map(|x| t.inverse().mul(x).mul(t)).collect();
        assert!(epis.contains(&conj));
    }
    let keys: Vec<Vec<String>> = r.homs.iter().map(|(h, _)| h.image_strings()).collect();
    let again: Vec<Vec<String>> = hom_search(&a5, &named_group("A5").unwrap(), &Budget::default())
        .unwrap()
        .homs
        .iter()
        .map(|(h, _)| h.image_strings())
        .collect();
    assert_eq!(keys, again);
}

#[test]
fn b2_has_no_finite_quotients_in_range() {
    let b2 = catalog("Bp", &[2]).unwrap().presentation;
    let b = Budget::default();
    let mut targets = transitive_groups(5);
    for name in ["C6", "D6", "C7", "D7", "S4", "D10", "C11", "D12", "D15"] {
        targets.push((name, named_group(name).unwrap()));
    }
    // SL(2,3) of order 24 and the binary dihedral group of order 12
    targets.push(("SL(2,3)", PermGroup::from_cycles(&["(2,3,4)(5,8,6)", "(1,2,5,7)(3,6,8,4)"], Some(8)).unwrap()));
    for (name, t) in targets {
        let r = hom_search(&b2, &t, &b).unwrap();
        assert!(r.only_trivial(), "B2 maps nontrivially to {name}");
        assert_eq!(r.hom_count(), 1);
    }
}

#[test]
fn epi_count_examples() {
    let b = Budget::default();
    let r = epi_count_product_check(&pres("< a | a^2 >"), &named_group("C2").unwrap(), &b).unwrap();
    assert_eq!((r.e1, r.e2, r.inequality), (1, 3, Some(true)));
    let r = epi_count_product_check(&catalog("free", &[1]).unwrap().presentation, &named_group("C3").unwrap(), &b).unwrap();
    assert_eq!((r.e1, r.e2, r.inequality), (2, 8, Some(true)));
    let r = epi_count_product_check(&pres("< a | a^3 >"), &named_group("C2").unwrap(), &b).unwrap();
    assert_eq!((r.e1, r.e2, r.inequality), (0, 0, None));
    let r = epi_count_product_check(&catalog("A5", &[]).unwrap().presentation, &named_group("A5").unwrap(), &b).unwrap();
    assert_eq!(r.e1, 120);
    assert!(r.e2 >= 2 * r.e1);
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

#[test]
fn transitive_actions_match_low_index() {
    let b = Budget::default();
    for p in [
        catalog("A5", &[]).unwrap().presentation,
        catalog("S3", &[]).unwrap().presentation,
        catalog("klein4", &[]).unwrap().presentation,
        pres("< a, b | a^2, b^3 >"),
    ] {
        let fp = low_index(&p, 5, &b);
        for k in 1..=5 {
            let sk = named_group(&format!("S{k}")).unwrap();
            let r = hom_search(&p, &sk, &b).unwrap();
            let transitive = r.homs.iter().filter(|(h, _)| h.image().is_transitive()).count();
            assert_eq!(transitive % factorial(k - 1), 0);
            assert_eq!((transitive / factorial(k - 1)) as u64, fp.counts[k - 1].subgroups, "index {k}");
        }
    }
}

#[test]
fn named_groups() {
    let cap = 1000;
    let orders: Vec<(&str, usize)> = transitive_groups(5).iter().map(|(n, g)| (*n, g.order(cap).unwrap())).collect();
    assert_eq!(
        orders,
        vec![
            ("C2", 2), ("C3", 3), ("S3", 6), ("C4", 4), ("V4", 4), ("D4", 8), ("A4", 12),
            ("S4", 24), ("C5", 5), ("D5", 10), ("F20", 20), ("A5", 60), ("S5", 120)
        ]
    );
    assert!(transitive_groups(5).iter().all(|(_, g)| g.is_transitive()));
    assert_eq!(named_group("D12").unwrap().order(cap).unwrap(), 24);
    assert_eq!(named_group("A6").unwrap().order(cap).unwrap(), 360);
    assert_eq!(named_group("S1").unwrap().order(cap).unwrap(), 1);
    assert!(named_group("X5").is_err());
}

fn z6_instance() -> (GroupHom, GroupHom) {
    let p = pres("< a | a^6 >");
    let rho = accepted(&p, &[perm("(1,2,3,4,5,6)", 6)]);
    let eta = accepted(&p, &[perm("(1,2,3)", 3)]);
    (rho, eta)
}

#[test]
fn fibre_product_sizes() {
    let b = Budget::default();
    let (rho, eta) = z6_instance();
    let ffp = fibre_product_finite(&rho, &eta, &b).unwrap();
    assert_eq!(ffp.len(), 12);
    assert_eq!(ffp.len(), ffp.kernel_order() * ffp.g_order());
    let (a, a4) = (perm("(1,2,3,4,5,6)", 6), perm("(1,5,3)(2,6,4)", 6));
    assert!(ffp.contains(&a, &a4));
    assert!(ffp.contains(&a, &a));
    assert!(!ffp.contains(&a, &Perm::identity(6)));
    assert_eq!(ffp.ambient().degree(), 12);
    assert_eq!(ffp.ambient().order(1000).unwrap(), 36);

    // injective eta: the diagonal
    let ffp = fibre_product_finite(&rho, &rho, &b).unwrap();
    assert_eq!((ffp.len(), ffp.kernel_order()), (6, 1));

    // S3 over Z/2: kernel A3
    let s3 = catalog("S3", &[]).unwrap().presentation;
    let rho = accepted(&s3, &[perm("(1,2)", 3), perm("(2,3)", 3)]);
    let eta = accepted(&s3, &[perm("(1,2)", 2), perm("(1,2)", 2)]);
    let ffp = fibre_product_finite(&rho, &eta, &b).unwrap();
    assert_eq!(ffp.len(), 18);

    assert!(fibre_product_finite(&rho, &eta, &Budget::default().with_max_elements(20)).is_err());
}

#[test]
fn fibre_product_rejects_maps_that_do_not_factor() {
    // a -> 2-cycle on Z/4 but a -> 4-cycle for eta: not a function of G = Z/2
    let p = pres("< a | a^4 >");
    let rho = accepted(&p, &[perm("(1,2)", 2)]);
    let eta = accepted(&p, &[perm("(1,2,3,4)", 4)]);
    assert!(matches!(
        fibre_product_finite(&rho, &eta, &Budget::default()),
        Err(crate::Error::IllDefinedMap(_))
    ));
}

#[test]
fn generation_checks() {
    let (rho, eta) = z6_instance();
    let ffp = fibre_product_finite(&rho, &eta, &Budget::default()).unwrap();
    let a = Word::generator(0);
    let diagonal = PairWord::new(a.clone(), a.clone());
    let kernel = PairWord::new(a.pow(3), Word::identity());
    assert!(check_generation(&ffp, &[diagonal.clone(), kernel], &rho).unwrap());
    assert!(!check_generation(&ffp, &[diagonal.clone()], &rho).unwrap());
    // (a, 1) is not in P
    let outside = PairWord::new(a.clone(), Word::identity());
    assert!(!check_generation(&ffp, &[diagonal, outside], &rho).unwrap());
    let foreign = PairWord::new(Word::generator(3), Word::identity());
    assert!(check_generation(&ffp, &[foreign], &rho).is_err());
}
