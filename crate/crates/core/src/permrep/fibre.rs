use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::word::Word;

use super::group::{IndexedGroup, PermGroup};
use super::hom::GroupHom;
use super::perm::Perm;

/// An element of `G x G` written as a pair of words over the generators of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairWord {
    pub left: Word,
    pub right: Word,
}

impl PairWord {
    pub fn new(left: Word, right: Word) -> Self {
        PairWord { left, right }
    }
}

/// `P = {(g, h) in G x G : eta(g) = eta(h)}` for a finite permutation group
/// `G` and a map `eta` from `G` to another permutation group, both given on
/// the generators of one presentation.
pub struct FiniteFibreProduct {
    g: IndexedGroup,
    degree: usize,
    generators: Vec<Perm>,
    /// `eta[i]`: index (in the image of eta) of the image of element `i` of `G`.
    eta: Vec<usize>,
    q_order: usize,
    elements: BTreeSet<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibreSummary {
    pub g_order: usize,
    pub q_order: usize,
    pub kernel_order: usize,
    pub fibre_order: usize,
}

impl FiniteFibreProduct {
    pub fn g_order(&self) -> usize {
        self.g.order()
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn kernel_order(&self) -> usize {
        self.eta.iter().filter(|&&q| q == 0).count()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Perm, h: &Perm) -> bool {
        match (self.g.index_of(g), self.g.index_of(h)) {
            (Some(a), Some(b)) => self.elements.contains(&(a as u32, b as u32)),
            _ => false,
        }
    }

    pub fn summary(&self) -> FibreSummary {
        FibreSummary {
            g_order: self.g_order(),
            q_order: self.q_order,
            kernel_order: self.kernel_order(),
            fibre_order: self.len(),
        }
    }

    /// `G x G` acting on `2 * degree` points, the first factor on the first block.
    pub fn ambient(&self) -> PermGroup {
        let n = 2 * self.degree;
        let mut gens: Vec<Perm> = self.generators.iter().map(|p| p.shifted(0, n)).collect();
        gens.extend(self.generators.iter().map(|p| p.shifted(self.degree, n)));
        PermGroup::new(n, gens).expect("common degree")
    }

    /// Whether every element of `P` is the product of its members.
    fn is_closed(&self) -> bool {
        let v: Vec<&(u32, u32)> = self.elements.iter().take(64).collect();
        v.iter().all(|&&(a, b)| {
            v.iter().all(|&&(c, d)| {
                let x = self.g.mul(a as usize, c as usize) as u32;
                let y = self.g.mul(b as usize, d as usize) as u32;
                self.elements.contains(&(x, y))
            })
        })
    }
}

/// Builds `P` by brute force. `rho` presents `G` (as the image of its
/// generators) and `eta` gives the images in the quotient; `eta` must
/// factor through `rho`, which is verified on every element.
pub fn fibre_product_finite(rho: &GroupHom, eta: &GroupHom, budget: &Budget) -> Result<FiniteFibreProduct> {
    if rho.source().generator_count() != eta.source().generator_count() {
        return Err(Error::Dimension("the two maps have different sources".into()));
    }
    let g_group = rho.image();
    let g = IndexedGroup::new(&g_group, budget.max_elements)?;
    let q = IndexedGroup::new(&eta.image(), budget.max_elements)?;
    let n = g.order();
    if n.saturating_mul(n) > budget.max_elements {
        return Err(Error::Exhausted(format!("|G|^2 = {} pairs exceeds the enumeration cap", n * n)));
    }
    let gi: Vec<usize> = rho.images().iter().map(|p| g.index_of(p).unwrap()).collect();
    let qi: Vec<usize> = eta.images().iter().map(|p| q.index_of(p).unwrap()).collect();
    // The graph of eta, grown from the identity along generators.
    let mut eta_of = vec![usize::MAX; n];
    eta_of[0] = 0;
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (&a, &b) in gi.iter().zip(&qi) {
            for (ga, qb) in [(a, b), (g.inv(a), q.inv(b))] {
                let y = g.mul(x, ga);
                let v = q.mul(eta_of[x], qb);
                if eta_of[y] == usize::MAX {
                    eta_of[y] = v;
                    queue.push(y);
                } else if eta_of[y] != v {
                    return Err(Error::IllDefinedMap(format!(
                        "element {} of G would have two images",
                        g.elements[y]
                    )));
                }
            }
        }
    }
    let mut fibres: HashMap<usize, Vec<u32>> = HashMap::new();
    for (x, &v) in eta_of.iter().enumerate() {
        fibres.entry(v).or_default().push(x as u32);
    }
    let mut elements = BTreeSet::new();
    for f in fibres.values() {
        for &a in f {
            for &b in f {
                elements.insert((a, b));
            }
        }
    }
    let ffp = FiniteFibreProduct {
        degree: g_group.degree(),
        generators: g_group.generators().to_vec(),
        g,
        eta: eta_of,
        q_order: q.order(),
        elements,
    };
    debug_assert!(ffp.is_closed());
    Ok(ffp)
}

/// Whether the pairs generate exactly `P`. Words are evaluated with `rho`.
pub fn check_generation(ffp: &FiniteFibreProduct, gens: &[PairWord], rho: &GroupHom) -> Result<bool> {
    let eval = |w: &Word| -> Result<usize> {
        if w.max_generator().is_some_and(|m| m >= rho.source().generator_count()) {
            return Err(Error::UnknownGenerator(format!("generator {} outside the source", w.max_generator().unwrap())));
        }
        ffp.g
            .index_of(&rho.apply(w))
            .ok_or_else(|| Error::IllDefinedMap("pair word evaluates outside G".into()))
    };
    let pairs: Vec<(usize, usize)> = gens
        .iter()
        .map(|pw| Ok((eval(&pw.left)?, eval(&pw.right)?)))
        .collect::<Result<_>>()?;
    let mut seen: BTreeSet<(u32, u32)> = BTreeSet::new();
    seen.insert((0, 0));
    let mut queue = vec![(0usize, 0usize)];
    let mut k = 0;
    while k < queue.len() {
        let (a, b) = queue[k];
        k += 1;
        for &(x, y) in &pairs {
            let c = (ffp.g.mul(a, x), ffp.g.mul(b, y));
            if seen.insert((c.0 as u32, c.1 as u32)) {
                if !ffp.elements.contains(&(c.0 as u32, c.1 as u32)) {
                    return Ok(false);
                }
                queue.push(c);
            }
        }
    }
    Ok(seen.len() == ffp.elements.len())
}
