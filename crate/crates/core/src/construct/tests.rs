use super::*;
use crate::budget::Budget;
use crate::cancel::check_metric;
use crate::coset::todd_coxeter;
use crate::permrep::{check_generation, fibre_product_finite, verify_hom, GroupHom, HomCheck, Perm};
use crate::presentation::{catalog, Presentation};
use crate::word::Word;
use crate::zlattice::{abelianization, is_perfect};

fn pres(t: &str) -> Presentation {
    Presentation::parse(t).unwrap()
}

fn a5() -> Presentation {
    catalog("A5", &[]).unwrap().presentation
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
fn rips_on_a5() {
    let q = a5();
    let r = rips(&q, 7, false).unwrap();
    let g = &r.gamma;
    assert_eq!(g.generator_count(), 4);
    assert_eq!(g.relator_count(), 3 + 4 * 2);
    assert_eq!(g.alphabet().names()[2..], ["a_1".to_string(), "a_2".to_string()]);
    assert!(check_metric(g, 7).verdict);
    assert!(is_perfect(g));
    for (k, rel) in g.relators().iter().enumerate() {
        let image = crate::word::free_reduce(&r.quotient_image(rel));
        if k < 3 {
            assert_eq!(image, q.relators()[k]);
        } else {
            assert!(image.is_empty());
        }
    }
    // X goes to an A5 pair, the a_i to the identity
    let id = Perm::identity(5);
    let images = [perm("(1,2)(3,4)", 5), perm("(1,3,5)", 5), id.clone(), id];
    assert!(matches!(verify_hom(g, &images).unwrap(), HomCheck::Accepted(_)));
    assert_eq!(rips(&q, 7, false).unwrap(), r);
}

#[test]
fn rips_zero_exponent() {
    for q in [pres("< x | x >"), pres("< a | a^5 >"), catalog("klein4", &[]).unwrap().presentation] {
        let r = rips(&q, 6, true).unwrap();
        assert!(check_metric(&r.gamma, 6).verdict);
        assert_eq!(abelianization(&r.gamma), abelianization(&q));
        let (a1, a2) = r.normal_gens;
        for (k, rel) in r.gamma.relators().iter().enumerate() {
            let expected = if k < q.relator_count() { (0, 0) } else if (k - q.relator_count()) % 4 < 2 { (1, 0) } else { (0, 1) };
            assert_eq!((rel.exponent_sum(a1), rel.exponent_sum(a2)), expected);
        }
    }
    assert!(is_perfect(&rips(&pres("< x | x >"), 6, true).unwrap().gamma));
}

#[test]
fn rips_rejects_bad_input() {
    assert!(rips(&pres("< | >"), 6, false).is_err());
    assert!(rips(&a5(), 5, false).is_err());
    // free input: only conjugation relators
    let r = rips(&catalog("free", &[2]).unwrap().presentation, 6, false).unwrap();
    assert_eq!(r.gamma.relator_count(), 8);
}

#[test]
fn uce_of_a5_has_order_120() {
    let u = uce(&a5()).unwrap();
    assert_eq!(u.tilde.relator_count(), 8);
    assert!(is_perfect(&u.tilde));
    let t = todd_coxeter(&u.tilde, &[], &Budget::default()).unwrap();
    assert_eq!(t.index(), 120);
    // every added relator dies in A5
    let images = [perm("(1,2)(3,4)", 5), perm("(1,3,5)", 5)];
    for w in &u.expressions {
        assert!(accepted(&a5(), &images).apply(w).is_identity());
    }
    for (a, c) in u.witnesses.iter().enumerate() {
        let mut sum = vec![0i64; 2];
        for (r, &e) in a5().exponent_matrix().iter().zip(c) {
            for j in 0..2 {
                sum[j] += e * r[j];
            }
        }
        let mut basis = vec![0i64; 2];
        basis[a] = 1;
        assert_eq!(sum, basis);
    }
}

#[test]
fn uce_counts_and_refusal() {
    // [a, a] is the empty word: both families are built, one relator survives
    let u = uce(&pres("< a | a >")).unwrap();
    assert_eq!(u.commutators.len() + u.expressions.len(), 2);
    assert_eq!(u.tilde.relator_count(), 1);
    assert_eq!(todd_coxeter(&u.tilde, &[], &Budget::default()).unwrap().index(), 1);
    // [a, a^2] is replaced by [a, b a^2 b^-1] to keep the count
    let u = uce(&catalog("A5", &[]).unwrap().presentation).unwrap();
    assert!(u.commutators.iter().all(|c| !c.is_empty()));
    let b2 = catalog("Bp", &[2]).unwrap().presentation;
    let u = uce(&b2).unwrap();
    assert_eq!(u.tilde.relator_count(), 20);
    assert!(is_perfect(&u.tilde));
    assert!(matches!(uce(&pres("< a | a^2 >")), Err(crate::Error::NotPerfect(_))));
}

#[test]
fn fibre_generator_sets() {
    let g = pres("< x | x^6 >");
    let x3 = g.word("x^3").unwrap();
    let gens = fibre_generators(&g, &[x3.clone()]).unwrap();
    assert_eq!(
        gens,
        vec![
            PairWord::new(Word::generator(0), Word::generator(0)),
            PairWord::new(x3, Word::identity())
        ]
    );
    assert_eq!(fibre_generators(&g, &[]).unwrap().len(), 1);
    assert!(fibre_generators(&g, &[Word::generator(2)]).is_err());
}

#[test]
fn fibre_product_over_a5() {
    // G = uce(A5) acting regularly on its 120 cosets, Q = A5
    let q = a5();
    let u = uce(&q).unwrap();
    let t = todd_coxeter(&u.tilde, &[], &Budget::default()).unwrap();
    let regular: Vec<Perm> = (0..2)
        .map(|g| Perm::from_images(t.permutation(g).into_iter().map(|x| x as u32).collect()).unwrap())
        .collect();
    let rho = accepted(&u.tilde, &regular);
    let eta = accepted(&u.tilde, &[perm("(1,2)(3,4)", 5), perm("(1,3,5)", 5)]);
    let ffp = fibre_product_finite(&rho, &eta, &Budget::default()).unwrap();
    assert_eq!((ffp.g_order(), ffp.kernel_order(), ffp.len()), (120, 2, 240));
    let gens = fibre_generators(&u.tilde, q.relators()).unwrap();
    assert!(check_generation(&ffp, &gens, &rho).unwrap());
    assert!(!check_generation(&ffp, &gens[..2], &rho).unwrap());
}

#[test]
fn pipeline_counts_for_a5() {
    let r = pipeline(&a5(), 7, 3, &Budget::default()).unwrap();
    assert_eq!((r.counts.generators, r.counts.relators), (8, 112));
    assert!(r.counts.matches());
    assert!(r.perfect);
    assert_eq!(r.p_generators.len(), 2 + 2 + 3);
    assert!(!r.evidence.satisfied);
    assert!(pipeline(&pres("< a | a^2 >"), 7, 3, &Budget::default()).is_err());
}

#[test]
fn evidence_examples() {
    let b = Budget::default().with_max_cosets(20_000);
    let e = grothendieck_evidence(&catalog("Bp", &[2]).unwrap().presentation, 5, &b);
    assert!(e.h1.is_trivial());
    assert_eq!(e.proper_subgroups_found, 0);
    assert!(e.low_index.complete);
    assert!(matches!(e.h2, H2Status::NotComputed(_)));
    assert!(e.satisfied, "{}", e.verdict);
    let e = grothendieck_evidence(&pres("< a | a^5 >"), 5, &b);
    assert!(!e.satisfied);
    assert!(e.verdict.starts_with("criterion fails"));
    let e = grothendieck_evidence(&a5(), 5, &b);
    assert!(!e.satisfied);
    assert_eq!(e.low_index.counts[4].subgroups, 5);
    assert_eq!(e.h2, H2Status::Computed(crate::zlattice::AbelianInvariants::from_cyclic_orders(&[2])));
    let e = grothendieck_evidence(&pres("< x | x >"), 3, &b);
    assert!(e.satisfied);
}
