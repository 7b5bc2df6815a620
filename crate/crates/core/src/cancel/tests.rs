use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::presentation::catalog;
use crate::word::{Letter, Word};

/// Maximum piece length per (relator, inverted) by comparing every pair of
/// raw starting positions directly.
fn brute_max_pieces(p: &Presentation) -> Vec<((usize, bool), usize)> {
    let mut elems: Vec<((usize, bool), Vec<Letter>)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, r) in p.relators().iter().enumerate() {
        let core = crate::word::cyclic_reduce(r).0;
        for (inv, w) in [(false, core.clone()), (true, core.inverse())] {
            if !seen.insert(crate::presentation::least_rotation(&w)) {
                continue;
            }
            for k in 0..w.len() {
                elems.push(((i, inv), w.rotate(k).letters().to_vec()));
            }
        }
    }
    let mut best: std::collections::BTreeMap<(usize, bool), usize> = Default::default();
    for (a, (ka, wa)) in elems.iter().enumerate() {
        let e = best.entry(*ka).or_insert(0);
        for (b, (_, wb)) in elems.iter().enumerate() {
            if a == b {
                continue;
            }
            let l = wa.iter().zip(wb).take_while(|(x, y)| x == y).count();
            *e = (*e).max(l);
        }
    }
    best.into_iter().collect()
}

fn report_pieces(r: &PieceReport) -> Vec<((usize, bool), usize)> {
    let mut v: Vec<_> = r.relators.iter().map(|x| ((x.relator, x.inverted), x.max_piece)).collect();
    v.sort();
    v
}

#[test]
fn commutator_example() {
    let p = Presentation::parse("< a, b | [a, b] >").unwrap();
    assert!(check_metric(&p, 3).verdict);
    let r = check_metric(&p, 4);
    assert!(!r.verdict);
    let f = r.failure().unwrap();
    assert_eq!((f.length, f.max_piece), (4, 1));
    let w = f.witness.as_ref().unwrap();
    assert_ne!(w.first, w.second);
    assert_eq!(r.best_m, Some(3));
}

#[test]
fn no_pieces_is_vacuous() {
    let p = Presentation::parse("< a, b | a b >").unwrap();
    let r = check_metric(&p, 1000);
    assert!(r.verdict);
    assert_eq!(r.best_m, None);
}

#[test]
fn proper_power_overlaps_itself() {
    let p = Presentation::parse("< a, b | (a b)^3 >").unwrap();
    let r = check_metric(&p, 2);
    assert!(r.proper_power_warning);
    assert!(!r.verdict);
    assert_eq!(r.relators[0].max_piece, 6);
}

#[test]
fn pieces_match_brute_force() {
    let texts = [
        "< a, b | [a, b] >",
        "< a, b | a^2, b^3, (a b)^5 >",
        "< a, b, c | a b c a^-1 b, c^2 a b^-1 a >",
        "< a, b | a b a b^-1 a^-1 b^2, b a^3 b^-1 a >",
        "< x, y | x y x y x^-1 y^-2 x y^3 >",
    ];
    for t in texts {
        let p = Presentation::parse(t).unwrap();
        assert_eq!(report_pieces(&check_metric(&p, 2)), brute_max_pieces(&p), "{t}");
    }
    let b2 = catalog("Bp", &[2]).unwrap().presentation;
    assert_eq!(report_pieces(&check_metric(&b2, 2)), brute_max_pieces(&b2));
}

#[test]
fn invariant_under_inversion_and_rotation() {
    let p = Presentation::parse("< a, b | a b a b^-1 a^-1 b^2, b a^3 b^-1 a >").unwrap();
    let q = p
        .with_relators(vec![p.relators()[1].rotate(2), p.relators()[0].inverse()])
        .unwrap();
    for m in 2..6 {
        assert_eq!(check_metric(&p, m).verdict, check_metric(&q, m).verdict);
    }
    assert_eq!(check_metric(&p, 2).best_m, check_metric(&q, 2).best_m);
}

fn random_word(rng: &mut ChaCha8Rng, gens: usize, len: usize) -> Word {
    let mut w = Word::identity();
    while w.len() < len {
        w.push_reduced(Letter::new(rng.gen_range(0..gens), rng.gen_bool(0.5)));
    }
    w
}

#[test]
fn dehn_on_surface_group() {
    let p = Presentation::parse("< a, b, c, d | [a, b] [c, d] >").unwrap();
    let solver = DehnSolver::new(&p).unwrap();
    let r = p.relators()[0].clone();
    assert!(solver.is_trivial(&r).0);
    assert!(solver.is_trivial(&r.inverse().rotate(3)).0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let k = rng.gen_range(1..=5);
        let mut w = Word::identity();
        for _ in 0..k {
            let len = rng.gen_range(0..6);
            let x = random_word(&mut rng, 4, len);
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            w = w.mul(&r.rotate(rng.gen_range(0..8)).pow(e).conjugate_by(&x));
        }
        let (t, trace) = solver.is_trivial(&w);
        assert!(t, "{}", p.display_word(&w));
        assert!(trace.verify(&p));
        for s in &trace.steps {
            assert!(s.after.len() < s.before.len());
        }
    }
    for g in 0..4 {
        let (t, trace) = solver.is_trivial(&Word::generator(g));
        assert!(!t);
        assert!(trace.steps.is_empty());
    }
    // a tampered trace no longer verifies
    let (_, mut trace) = solver.is_trivial(&r.mul(&r));
    trace.steps[0].after = Word::generator(0);
    assert!(!trace.verify(&p));
}

#[test]
fn dehn_refuses_without_small_cancellation() {
    let a5 = catalog("A5", &[]).unwrap().presentation;
    assert!(matches!(
        dehn_is_trivial(&Word::generator(0), &a5),
        Err(crate::Error::Precondition(_))
    ));
}

#[test]
fn dehn_rotated_relator() {
    let p = Presentation::parse("< a, b, c, d | [a, b] [c, d] >").unwrap();
    let r = p.relators()[0].clone();
    let w = r.rotate(5);
    let (t, trace) = dehn_is_trivial(&w, &p).unwrap();
    assert!(t);
    assert!(trace.verify(&p));
}
