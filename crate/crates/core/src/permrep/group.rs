use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::word::Word;

use super::perm::Perm;

/// A permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup { degree, generators })
    }

    /// Parses generators in cycle notation; the degree is the largest point
    /// mentioned unless given.
    pub fn from_cycles(gens: &[&str], degree: Option<usize>) -> Result<Self> {
        let n = degree.unwrap_or_else(|| gens.iter().map(|g| Perm::max_point(g)).max().unwrap_or(1).max(1));
        let perms = gens.iter().map(|g| Perm::parse_cycles(g, n)).collect::<Result<Vec<_>>>()?;
        Self::new(n, perms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements by breadth-first closure, identity first; fails past `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let id = Perm::identity(self.degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let h = out[i].mul(g);
                if !seen.contains_key(&h) {
                    if out.len() >= cap {
                        return Err(Error::Exhausted(format!(
                            "group has more than {cap} elements"
                        )));
                    }
                    seen.insert(h.clone(), ());
                    out.push(h);
                }
            }
            i += 1;
        }
        Ok(out)
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        Ok(self.elements(cap)?.len())
    }

    pub fn is_transitive(&self) -> bool {
        orbit(0, &self.generators, self.degree).len() == self.degree
    }
}

/// Orbit of `point` under the group generated by `gens`.
pub fn orbit(point: usize, gens: &[Perm], degree: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    let mut out = vec![point];
    seen[point] = true;
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = g.apply(out[i]);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

const TABLE_LIMIT: usize = 2048;

/// A finite permutation group with its elements indexed, for fast word
/// evaluation. Element 0 is the identity.
pub struct IndexedGroup {
    pub elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl IndexedGroup {
    pub fn new(g: &PermGroup, cap: usize) -> Result<Self> {
        let elements = g.elements(cap)?;
        let index: HashMap<Perm, u32> = elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * n + j] = index[&a.mul(b)];
                }
            }
            t
        });
        Ok(IndexedGroup {
            elements,
            index,
            inverse,
            table,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].mul(&self.elements[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// Evaluates `w` with generator `g` sent to element `images[g]`.
    pub fn eval(&self, w: &Word, images: &[usize]) -> usize {
        let mut acc = 0;
        for l in w.letters() {
            let x = images[l.generator()];
            acc = self.mul(acc, if l.is_inverse() { self.inv(x) } else { x });
        }
        acc
    }

    /// Size of the subgroup generated by the given elements.
    pub fn generated_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            for &g in gens {
                let h = self.mul(queue[i], g);
                if !seen[h] {
                    seen[h] = true;
                    queue.push(h);
                }
            }
            i += 1;
        }
        queue.len()
    }
}

/// Evaluates `w` directly on permutations.
pub fn eval_word(w: &Word, images: &[Perm], degree: usize) -> Perm {
    let mut acc: Vec<u32> = (0..degree as u32).collect();
    let inverses: Vec<Option<Perm>> = {
        let mut used = vec![false; images.len()];
        for l in w.letters() {
            if l.is_inverse() {
                used[l.generator()] = true;
            }
        }
        images
            .iter()
            .zip(used)
            .map(|(p, u)| u.then(|| p.inverse()))
            .collect()
    };
    for l in w.letters() {
        let p = if l.is_inverse() {
            inverses[l.generator()].as_ref().unwrap()
        } else {
            &images[l.generator()]
        };
        for x in acc.iter_mut() {
            *x = p.apply(*x as usize) as u32;
        }
    }
    Perm::from_images(acc).expect("product of permutations")
}
