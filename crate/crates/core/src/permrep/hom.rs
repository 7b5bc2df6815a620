use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::presentation::{direct_product, Presentation};

use super::group::{eval_word, IndexedGroup, PermGroup};
use super::perm::Perm;

/// A homomorphism from a finitely presented group to a permutation group,
/// checked on every relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Presentation,
    images: Vec<Perm>,
    degree: usize,
}

impl GroupHom {
    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn apply(&self, w: &crate::word::Word) -> Perm {
        eval_word(w, &self.images, self.degree)
    }

    /// The image as a permutation group.
    pub fn image(&self) -> PermGroup {
        PermGroup::new(self.degree, self.images.clone()).expect("common degree")
    }

    pub fn image_strings(&self) -> Vec<String> {
        self.images.iter().map(|p| p.to_string()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomCheck {
    Accepted(GroupHom),
    /// The first relator that does not evaluate to the identity.
    Rejected { relator: usize, word: String, value: Perm },
}

/// Accepts the assignment iff every relator evaluates to the identity.
pub fn verify_hom(p: &Presentation, images: &[Perm]) -> Result<HomCheck> {
    if images.len() != p.generator_count() {
        return Err(Error::Dimension(format!(
            "{} images for {} generators",
            images.len(),
            p.generator_count()
        )));
    }
    let degree = images.first().map_or(1, |g| g.degree());
    if images.iter().any(|g| g.degree() != degree) {
        return Err(Error::InvalidPermutation("images have different degrees".into()));
    }
    for (i, r) in p.relators().iter().enumerate() {
        let v = eval_word(r, images, degree);
        if !v.is_identity() {
            return Ok(HomCheck::Rejected {
                relator: i,
                word: p.display_word(r),
                value: v,
            });
        }
    }
    Ok(HomCheck::Accepted(GroupHom {
        source: p.clone(),
        images: images.to_vec(),
        degree,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundHom {
    pub images: Vec<String>,
    pub epi: bool,
}

#[derive(Clone, Debug)]
pub struct HomSearch {
    pub target_order: usize,
    pub homs: Vec<(GroupHom, bool)>,
    pub complete: bool,
}

impl HomSearch {
    pub fn hom_count(&self) -> usize {
        self.homs.len()
    }

    pub fn epi_count(&self) -> usize {
        self.homs.iter().filter(|(_, e)| *e).count()
    }

    /// Only the trivial homomorphism was found (and the search finished).
    pub fn only_trivial(&self) -> bool {
        self.complete && self.homs.iter().all(|(h, _)| h.images.iter().all(Perm::is_identity))
    }

    pub fn summary(&self) -> Vec<FoundHom> {
        self.homs
            .iter()
            .map(|(h, e)| FoundHom {
                images: h.image_strings(),
                epi: *e,
            })
            .collect()
    }
}

/// Order in which to assign generator images: greedily pick the generator
/// that completes the most relators, so relators are checked as early as possible.
fn assignment_order(p: &Presentation) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = p.generator_count();
    let supports: Vec<Vec<bool>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut s = vec![false; n];
            for l in r.letters() {
                s[l.generator()] = true;
            }
            s
        })
        .collect();
    let mut chosen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |g: usize| -> (usize, usize, std::cmp::Reverse<usize>) {
            let completes = supports
                .iter()
                .filter(|s| s[g] && s.iter().enumerate().all(|(h, &u)| !u || chosen[h] || h == g))
                .count();
            let touches = supports.iter().filter(|s| s[g]).count();
            (completes, touches, std::cmp::Reverse(g))
        };
        let g = (0..n).filter(|&g| !chosen[g]).max_by_key(|&g| score(g)).unwrap();
        chosen[g] = true;
        order.push(g);
    }
    // relators to check once the k-th generator in `order` is assigned
    let mut position = vec![0; n];
    for (k, &g) in order.iter().enumerate() {
        position[g] = k;
    }
    let mut checks = vec![Vec::new(); n.max(1)];
    for (i, s) in supports.iter().enumerate() {
        let last = (0..n).filter(|&g| s[g]).map(|g| position[g]).max().unwrap_or(0);
        checks[last].push(i);
    }
    (order, checks)
}

/// Every homomorphism to `target`, in lexicographic order of image indices
/// (elements in breadth-first order from the target's generators), each
/// flagged as onto or not.
pub fn hom_search(p: &Presentation, target: &PermGroup, budget: &Budget) -> Result<HomSearch> {
    let group = IndexedGroup::new(target, budget.max_elements)?;
    let deadline = budget.start();
    let n = p.generator_count();
    let (order, checks) = assignment_order(p);
    let mut images = vec![0usize; n];
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut complete = true;
    let size = group.order();
    let mut nodes = 0u64;

    // Iterative depth-first search over positions in `order`.
    let mut choice = vec![0usize; n];
    let mut depth = 0usize;
    if n == 0 {
        if p.relators().iter().all(|r| r.is_empty()) {
            found.push(Vec::new());
        }
    } else {
        loop {
            if choice[depth] >= size {
                if depth == 0 {
                    break;
                }
                depth -= 1;
                choice[depth] += 1;
                continue;
            }
            nodes += 1;
            if nodes & 0xffff == 0 && deadline.expired() {
                complete = false;
                break;
            }
            images[order[depth]] = choice[depth];
            let ok = checks[depth]
                .iter()
                .all(|&r| group.eval(&p.relators()[r], &images) == 0);
            if ok {
                if depth + 1 == n {
                    found.push(images.clone());
                    choice[depth] += 1;
                } else {
                    depth += 1;
                    choice[depth] = 0;
                }
            } else {
                choice[depth] += 1;
            }
        }
    }
    found.sort();
    let homs = found
        .into_iter()
        .map(|imgs| {
            let epi = group.generated_order(&imgs) == size;
            let perms = imgs.iter().map(|&i| group.elements[i].clone()).collect();
            (
                GroupHom {
                    source: p.clone(),
                    images: perms,
                    degree: target.degree(),
                },
                epi,
            )
        })
        .collect();
    Ok(HomSearch {
        target_order: size,
        homs,
        complete,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpiCountReport {
    pub target_order: usize,
    pub e1: usize,
    pub e2: usize,
    /// `Some(e2 >= 2 e1)` when asserted (e1 > 0 and a nontrivial target), else `None`.
    pub inequality: Option<bool>,
    pub complete: bool,
}

/// Compares epimorphism counts from `p` and from `p x p` onto `target`.
pub fn epi_count_product_check(p: &Presentation, target: &PermGroup, budget: &Budget) -> Result<EpiCountReport> {
    let one = hom_search(p, target, budget)?;
    let pp = direct_product(p, p)?;
    let two = hom_search(&pp, target, budget)?;
    let (e1, e2) = (one.epi_count(), two.epi_count());
    let inequality = (e1 > 0 && one.target_order > 1).then_some(e2 >= 2 * e1);
    Ok(EpiCountReport {
        target_order: one.target_order,
        e1,
        e2,
        inequality,
        complete: one.complete && two.complete,
    })
}
