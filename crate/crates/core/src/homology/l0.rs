use std::collections::HashSet;

use serde::Serialize;

use crate::budget::Budget;
use crate::coset::todd_coxeter;
use crate::error::Result;
use crate::permrep::{IndexedGroup, Perm, PermGroup};
use crate::presentation::Presentation;
use crate::word::Word;
use crate::zlattice::{abelianization, AbelianInvariants};

use super::schur::schur_multiplier;

/// A finite group `G`, words generating a normal subgroup `N` (as a normal
/// closure), and a presentation of `Q = G/N`.
#[derive(Clone, Debug)]
pub struct L0Instance {
    pub ambient: Presentation,
    pub normal_generators: Vec<Word>,
    pub quotient: Presentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct L0Report {
    pub ambient_order: usize,
    pub normal_order: Option<usize>,
    pub quotient_order: Option<usize>,
    pub hypotheses_met: bool,
    /// Why no verdict was given.
    pub reason: Option<String>,
    /// `N/[N,G]`, computed inside the regular permutation image of `G`.
    pub coinvariants: Option<AbelianInvariants>,
    pub quotient_multiplier: Option<AbelianInvariants>,
    pub agree: Option<bool>,
}

/// Elements of the subgroup generated by `gens`, closed under products.
fn closure(g: &IndexedGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut out = vec![0];
    let mut i = 0;
    while i < out.len() {
        for &s in gens {
            let y = g.mul(out[i], s);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// Orbit of a set of elements under conjugation by the group generators.
fn conjugation_closure(g: &IndexedGroup, seeds: Vec<usize>, gens: &[usize]) -> Vec<usize> {
    let mut seen: HashSet<usize> = seeds.iter().copied().collect();
    let mut out = seeds;
    let mut i = 0;
    while i < out.len() {
        for &x in gens {
            let y = g.mul(g.mul(g.inv(x), out[i]), x);
            if seen.insert(y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

fn power(g: &IndexedGroup, x: usize, e: u64) -> usize {
    let mut acc = 0;
    for _ in 0..e {
        acc = g.mul(acc, x);
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariants of the abelian group `N/K` from the sizes of its `p^j`-torsion.
fn quotient_invariants(g: &IndexedGroup, n: &[usize], k: &[usize]) -> AbelianInvariants {
    let in_k: HashSet<usize> = k.iter().copied().collect();
    // one representative per coset of K in N
    let mut covered = HashSet::new();
    let mut reps = Vec::new();
    for &x in n {
        if covered.contains(&x) {
            continue;
        }
        reps.push(x);
        for &y in k {
            covered.insert(g.mul(x, y));
        }
    }
    let order = reps.len() as u64;
    let mut cyclic = Vec::new();
    for p in prime_factors(order) {
        // ranks[j] = log_p |A[p^j]|
        let mut ranks = vec![0u32];
        let mut pj = 1u64;
        loop {
            pj *= p;
            let count = reps.iter().filter(|&&x| in_k.contains(&power(g, x, pj))).count() as u64;
            let mut r = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                r += 1;
            }
            if r == *ranks.last().unwrap() {
                break;
            }
            ranks.push(r);
        }
        // cyclic factors of order >= p^j number ranks[j] - ranks[j-1]
        let at_least: Vec<u32> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
        for j in 0..at_least.len() {
            let exact = at_least[j] - at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..exact {
                cyclic.push(p.pow(j as u32 + 1) as i64);
            }
        }
    }
    AbelianInvariants::from_cyclic_orders(&cyclic)
}

fn guarded(ambient_order: usize, reason: String) -> L0Report {
    L0Report {
        ambient_order,
        normal_order: None,
        quotient_order: None,
        hypotheses_met: false,
        reason: Some(reason),
        coinvariants: None,
        quotient_multiplier: None,
        agree: None,
    }
}

/// Compares `N/[N,G]` with `H_2(Q)` for a superperfect finite `G`.
pub fn lemma_l0_check(inst: &L0Instance, budget: &Budget) -> Result<L0Report> {
    let t = todd_coxeter(&inst.ambient, &[], budget)?;
    let order = t.index();
    let h1 = abelianization(&inst.ambient);
    if !h1.is_trivial() {
        return Ok(guarded(order, format!("hypotheses not met: H_1 of the ambient group is {h1}")));
    }
    let h2 = schur_multiplier(&inst.ambient, budget)?.multiplier;
    if !h2.is_trivial() {
        return Ok(guarded(order, format!("hypotheses not met: H_2 of the ambient group is {h2}")));
    }
    let gens: Vec<Perm> = (0..t.generator_count())
        .map(|g| Perm::from_images(t.permutation(g).into_iter().map(|x| x as u32).collect()))
        .collect::<Result<_>>()?;
    let group = PermGroup::new(order, gens.clone())?;
    let g = IndexedGroup::new(&group, budget.max_elements)?;
    let gi: Vec<usize> = gens.iter().map(|p| g.index_of(p).expect("generator")).collect();
    let eval = |w: &Word| g.eval(w, &gi);

    let seeds: Vec<usize> = inst.normal_generators.iter().map(eval).collect();
    let n = closure(&g, &conjugation_closure(&g, seeds, &gi));
    let mut commutators = Vec::new();
    for &x in &n {
        for &s in &gi {
            let c = g.mul(g.mul(g.inv(x), g.inv(s)), g.mul(x, s));
            if c != 0 {
                commutators.push(c);
            }
        }
    }
    commutators.sort_unstable();
    commutators.dedup();
    let k = closure(&g, &conjugation_closure(&g, commutators, &gi));
    let coinvariants = quotient_invariants(&g, &n, &k);

    let q_order = todd_coxeter(&inst.quotient, &[], budget)?.index();
    if q_order * n.len() != order {
        let mut r = guarded(
            order,
            format!(
                "quotient presentation has order {q_order}, expected {} / {} = {}",
                order,
                n.len(),
                order / n.len()
            ),
        );
        r.normal_order = Some(n.len());
        r.quotient_order = Some(q_order);
        return Ok(r);
    }
    let hq = schur_multiplier(&inst.quotient, budget)?.multiplier;
    Ok(L0Report {
        ambient_order: order,
        normal_order: Some(n.len()),
        quotient_order: Some(q_order),
        hypotheses_met: true,
        reason: None,
        agree: Some(coinvariants == hq),
        coinvariants: Some(coinvariants),
        quotient_multiplier: Some(hq),
    })
}
