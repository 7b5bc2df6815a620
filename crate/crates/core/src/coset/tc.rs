use crate::budget::{Budget, Deadline};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{cyclic_reduce, free_reduce, Word};

use super::table::{CosetTable, UNDEF};

/// HLT enumeration state. Cosets are never renumbered while running except
/// by `compact`, which keeps their relative order.
struct Enumerator<'a> {
    width: usize,
    rows: Vec<u32>,
    /// Union-find parent; `parent[c] == c` iff `c` is live.
    parent: Vec<u32>,
    live: usize,
    queue: Vec<u32>,
    relators: &'a [Vec<usize>],
    max_cosets: usize,
    deadline: Deadline,
    defined_total: usize,
}

enum Stop {
    Full,
    Timeout,
}

impl<'a> Enumerator<'a> {
    #[inline]
    fn get(&self, c: usize, code: usize) -> u32 {
        self.rows[c * self.width + code]
    }

    #[inline]
    fn set(&mut self, c: usize, code: usize, d: u32) {
        self.rows[c * self.width + code] = d;
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn new_coset(&mut self) -> std::result::Result<u32, Stop> {
        if self.live >= self.max_cosets {
            return Err(Stop::Full);
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.rows.extend(std::iter::repeat_n(UNDEF, self.width));
        self.live += 1;
        self.defined_total += 1;
        Ok(d)
    }

    fn define(&mut self, c: usize, code: usize) -> std::result::Result<(), Stop> {
        let d = self.new_coset()?;
        self.set(c, code, d);
        self.set(d as usize, code ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i] as usize;
            i += 1;
            for code in 0..self.width {
                let f = self.get(e, code);
                if f == UNDEF {
                    continue;
                }
                if self.get(f as usize, code ^ 1) == e as u32 {
                    self.set(f as usize, code ^ 1, UNDEF);
                }
                let e1 = self.rep(e as u32) as usize;
                let f1 = self.rep(f);
                let t = self.get(e1, code);
                if t != UNDEF {
                    self.merge(f1, t);
                } else {
                    let s = self.get(f1 as usize, code ^ 1);
                    if s != UNDEF {
                        self.merge(e1 as u32, s);
                    } else {
                        self.set(e1, code, f1);
                        self.set(f1 as usize, code ^ 1, e1 as u32);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `w` at `c`, defining cosets when `fill` is set; otherwise only
    /// deductions and coincidences are processed.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> std::result::Result<(), Stop> {
        let mut f = c as u32;
        let mut b = c as u32;
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j {
                let n = self.get(f as usize, w[i as usize]);
                if n == UNDEF {
                    break;
                }
                f = n;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let n = self.get(b as usize, w[j as usize] ^ 1);
                if n == UNDEF {
                    break;
                }
                b = n;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f as usize, x, b);
                self.set(b as usize, x ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f as usize, w[i as usize])?;
        }
    }

    /// Deduction-only pass over every live coset; frees space after coincidences.
    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.parent.len() {
            if self.alive(c) {
                let rels = self.relators;
                for w in rels {
                    let _ = self.scan(c, w, false);
                    if !self.alive(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }

    /// Drops dead cosets, keeping the order of live ones. Returns the new
    /// number of the first live coset at or after `c`.
    fn compact(&mut self, c: usize) -> usize {
        let n = self.parent.len();
        let mut new_of = vec![UNDEF; n];
        let mut next = 0u32;
        for (k, slot) in new_of.iter_mut().enumerate() {
            if self.parent[k] as usize == k {
                *slot = next;
                next += 1;
            }
        }
        let mut rows = Vec::with_capacity(next as usize * self.width);
        for k in 0..n {
            if new_of[k] == UNDEF {
                continue;
            }
            for code in 0..self.width {
                let d = self.get(k, code);
                rows.push(if d == UNDEF { UNDEF } else { new_of[d as usize] });
            }
        }
        self.rows = rows;
        self.parent = (0..next).collect();
        new_of[c..]
            .iter()
            .find(|&&x| x != UNDEF)
            .map_or(next as usize, |&x| x as usize)
    }

    fn run(&mut self, subgroup: &[Vec<usize>]) -> std::result::Result<(), Stop> {
        for h in subgroup {
            self.scan(0, h, true)?;
        }
        let mut c = 0usize;
        let mut since_check = 0usize;
        while c < self.parent.len() {
            if self.alive(c) {
                let rels = self.relators;
                for w in rels {
                    match self.scan(c, w, true) {
                        Ok(()) => {}
                        Err(Stop::Full) => {
                            self.lookahead();
                            if self.live >= self.max_cosets {
                                return Err(Stop::Full);
                            }
                            // rescan this coset from the start
                            if self.alive(c) {
                                self.scan(c, w, true)?;
                            }
                        }
                        Err(e) => return Err(e),
                    }
                    if !self.alive(c) {
                        break;
                    }
                }
                if self.alive(c) {
                    for code in 0..self.width {
                        if self.get(c, code) == UNDEF {
                            if let Err(Stop::Full) = self.define(c, code) {
                                self.lookahead();
                                if !self.alive(c) {
                                    break;
                                }
                                if self.get(c, code) == UNDEF {
                                    self.define(c, code)?;
                                }
                            }
                        }
                    }
                }
            }
            c += 1;
            since_check += 1;
            if since_check >= 256 {
                since_check = 0;
                if self.deadline.expired() {
                    return Err(Stop::Timeout);
                }
                if self.parent.len() > 4 * self.live.max(1024) {
                    c = self.compact(c);
                }
            }
        }
        Ok(())
    }

    fn finish(self, generators: usize, subgroup_gens: Vec<Word>) -> CosetTable {
        // Renumber live cosets breadth-first from coset 0.
        let mut order = vec![UNDEF; self.parent.len()];
        let mut seq = vec![0usize];
        order[0] = 0;
        let mut i = 0;
        while i < seq.len() {
            let c = seq[i];
            for code in 0..self.width {
                let d = self.get(c, code) as usize;
                if order[d] == UNDEF {
                    order[d] = seq.len() as u32;
                    seq.push(d);
                }
            }
            i += 1;
        }
        let mut rows = Vec::with_capacity(seq.len() * self.width);
        for &c in &seq {
            for code in 0..self.width {
                rows.push(order[self.get(c, code) as usize]);
            }
        }
        if self.width == 0 {
            return CosetTable::from_rows(generators, Vec::new(), subgroup_gens);
        }
        CosetTable::from_rows(generators, rows, subgroup_gens)
    }
}

fn codes(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.code()).collect()
}

/// Todd–Coxeter (HLT with lookahead) for the cosets of `subgroup`.
/// Fails with `Error::Exhausted` when the live-coset cap or time limit is hit.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], budget: &Budget) -> Result<CosetTable> {
    if budget.max_cosets == 0 {
        return Err(Error::BadParameters {
            name: "max_cosets".into(),
            reason: "must be at least 1".into(),
        });
    }
    let width = 2 * p.generator_count();
    let mut relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| codes(&cyclic_reduce(r).0))
        .filter(|r| !r.is_empty())
        .collect();
    relators.sort_by_key(|r| r.len());
    let subgroup_gens: Vec<Word> = subgroup.iter().map(free_reduce).collect();
    let sub_codes: Vec<Vec<usize>> = subgroup_gens.iter().map(codes).collect();
    let mut e = Enumerator {
        width,
        rows: vec![UNDEF; width],
        parent: vec![0],
        live: 1,
        queue: Vec::new(),
        relators: &relators,
        max_cosets: budget.max_cosets,
        deadline: budget.start(),
        defined_total: 1,
    };
    match e.run(&sub_codes) {
        Ok(()) => {
            log::debug!(
                "coset enumeration finished: index {}, {} cosets defined",
                e.live,
                e.defined_total
            );
            let t = e.finish(p.generator_count(), subgroup_gens);
            if !t.verify(p) {
                return Err(Error::Internal("coset table failed verification".into()));
            }
            Ok(t)
        }
        Err(Stop::Full) => Err(Error::Exhausted(format!(
            "coset limit of {} reached ({} cosets defined)",
            budget.max_cosets, e.defined_total
        ))),
        Err(Stop::Timeout) => Err(Error::Exhausted(format!(
            "time limit reached with {} live cosets ({} defined)",
            e.live, e.defined_total
        ))),
    }
}
