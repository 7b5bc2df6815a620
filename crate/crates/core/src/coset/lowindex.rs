use serde::Serialize;

use crate::budget::{Budget, Deadline};
use crate::presentation::Presentation;
use crate::word::cyclic_reduce;

use super::table::{CosetTable, UNDEF};

/// Subgroup counts at one index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexCount {
    pub index: usize,
    pub subgroups: u64,
    pub classes: u64,
    /// The search at this index ran to the end.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub bound: usize,
    pub counts: Vec<IndexCount>,
    pub complete: bool,
}

impl Fingerprint {
    pub fn totals(&self) -> Vec<u64> {
        self.counts.iter().map(|c| c.subgroups).collect()
    }

    /// Number of subgroups of index `2..=bound` found.
    pub fn proper_subgroups(&self) -> u64 {
        self.counts.iter().filter(|c| c.index > 1).map(|c| c.subgroups).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintComparison {
    pub bound: usize,
    pub left: Fingerprint,
    pub right: Fingerprint,
    /// Per index: whether the totals agree (only meaningful where both searches completed).
    pub agree: Vec<bool>,
    pub first_discrepancy: Option<usize>,
    pub complete: bool,
}

impl FingerprintComparison {
    pub fn equal(&self) -> bool {
        self.complete && self.first_discrepancy.is_none()
    }
}

struct Search<'a> {
    width: usize,
    max: usize,
    table: Vec<u32>,
    n: usize,
    trail: Vec<usize>,
    queue: Vec<(usize, usize)>,
    /// Relator cycles grouped by their first letter code.
    cycles: &'a [Vec<Vec<usize>>],
    deadline: Deadline,
    nodes: u64,
    aborted: bool,
}

impl Search<'_> {
    #[inline]
    fn get(&self, c: usize, code: usize) -> u32 {
        self.table[c * self.width + code]
    }

    fn put(&mut self, c: usize, code: usize, d: usize) {
        self.table[c * self.width + code] = d as u32;
        self.table[d * self.width + (code ^ 1)] = c as u32;
        self.trail.push(c * self.width + code);
        self.trail.push(d * self.width + (code ^ 1));
        self.queue.push((c, code));
        self.queue.push((d, code ^ 1));
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().unwrap();
            self.table[e] = UNDEF;
        }
    }

    /// Sets `c.code = d` and closes under deductions; false on contradiction.
    fn assign(&mut self, c: usize, code: usize, d: usize) -> bool {
        self.queue.clear();
        self.put(c, code, d);
        let mut qi = 0;
        while qi < self.queue.len() {
            let (c, code) = self.queue[qi];
            qi += 1;
            let cycles = self.cycles;
            for w in &cycles[code] {
                if !self.scan(c, w) {
                    return false;
                }
            }
        }
        true
    }

    fn scan(&mut self, c: usize, w: &[usize]) -> bool {
        let mut f = c as u32;
        let mut i = 0usize;
        let len = w.len();
        while i < len {
            let n = self.get(f as usize, w[i]);
            if n == UNDEF {
                break;
            }
            f = n;
            i += 1;
        }
        if i == len {
            return f as usize == c;
        }
        let mut b = c as u32;
        let mut j = len;
        while j > i {
            let n = self.get(b as usize, w[j - 1] ^ 1);
            if n == UNDEF {
                break;
            }
            b = n;
            j -= 1;
        }
        if j == i {
            return f == b;
        }
        if j == i + 1 {
            let x = w[i];
            if self.get(b as usize, x ^ 1) != UNDEF {
                return false;
            }
            self.put(f as usize, x, b as usize);
        }
        true
    }

    fn dfs(&mut self, from: usize, found: &mut dyn FnMut(&[u32], usize)) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes & 0xfff == 0 && self.deadline.expired() {
            self.aborted = true;
            return;
        }
        let limit = self.n * self.width;
        let Some(pos) = (from..limit).find(|&e| self.table[e] == UNDEF) else {
            found(&self.table[..limit], self.n);
            return;
        };
        let (c, code) = (pos / self.width, pos % self.width);
        for d in 0..self.n {
            if self.get(d, code ^ 1) != UNDEF {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(c, code, d) {
                self.dfs(pos + 1, found);
            }
            self.undo(mark);
        }
        if self.n < self.max {
            let mark = self.trail.len();
            self.n += 1;
            if self.assign(c, code, self.n - 1) {
                self.dfs(pos + 1, found);
            }
            self.undo(mark);
            self.n -= 1;
        }
    }
}

fn relator_cycles(p: &Presentation) -> Vec<Vec<Vec<usize>>> {
    let width = 2 * p.generator_count();
    let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); width];
    for r in p.relators() {
        let core = cyclic_reduce(r).0;
        for w in [core.clone(), core.inverse()] {
            for k in 0..w.len() {
                let codes: Vec<usize> = w.rotate(k).letters().iter().map(|l| l.code()).collect();
                let first = codes[0];
                if !by_first[first].contains(&codes) {
                    by_first[first].push(codes);
                }
            }
        }
    }
    by_first
}

/// Calls `found` with every standardized coset table of exactly `index` cosets
/// (one per subgroup of that index). Returns false if the deadline cut the search short.
pub(crate) fn for_each_table(
    p: &Presentation,
    index: usize,
    deadline: Deadline,
    found: &mut dyn FnMut(&[u32]),
) -> bool {
    let width = 2 * p.generator_count();
    let cycles = relator_cycles(p);
    if width == 0 {
        if index == 1 {
            found(&[]);
        }
        return true;
    }
    let mut s = Search {
        width,
        max: index,
        table: vec![UNDEF; index * width],
        n: 1,
        trail: Vec::new(),
        queue: Vec::new(),
        cycles: &cycles,
        deadline,
        nodes: 0,
        aborted: false,
    };
    s.dfs(0, &mut |t, n| {
        if n == index {
            found(t);
        }
    });
    !s.aborted
}

/// All subgroups of a given index, as standardized coset tables.
pub fn subgroups_of_index(p: &Presentation, index: usize, budget: &Budget) -> (Vec<CosetTable>, bool) {
    let mut out = Vec::new();
    let g = p.generator_count();
    let complete = for_each_table(p, index, budget.start(), &mut |t| {
        out.push(CosetTable::from_rows(g, t.to_vec(), Vec::new()));
    });
    (out, complete)
}

/// Counts subgroups of each index `1..=bound`, with conjugacy classes.
pub fn low_index(p: &Presentation, bound: usize, budget: &Budget) -> Fingerprint {
    let deadline = budget.start();
    let g = p.generator_count();
    let mut counts = Vec::new();
    let mut all_complete = true;
    for k in 1..=bound {
        if !all_complete {
            counts.push(IndexCount {
                index: k,
                subgroups: 0,
                classes: 0,
                complete: false,
            });
            continue;
        }
        let mut subgroups = 0u64;
        let mut classes = 0u64;
        let mut class_total = 0u64;
        let complete = for_each_table(p, k, deadline, &mut |rows| {
            subgroups += 1;
            let t = CosetTable::from_rows(g, rows.to_vec(), Vec::new());
            let mut conjugates: Vec<Vec<u32>> = (0..k).map(|b| t.rebased(b).raw_rows().to_vec()).collect();
            if conjugates.iter().all(|c| c.as_slice() >= rows) {
                conjugates.sort();
                conjugates.dedup();
                classes += 1;
                class_total += conjugates.len() as u64;
            }
        });
        if complete && class_total != subgroups {
            log::error!("index {k}: class sizes sum to {class_total}, expected {subgroups}");
        }
        all_complete &= complete;
        counts.push(IndexCount {
            index: k,
            subgroups,
            classes,
            complete,
        });
    }
    Fingerprint {
        bound,
        counts,
        complete: all_complete,
    }
}

pub fn fingerprint_compare(p1: &Presentation, p2: &Presentation, bound: usize, budget: &Budget) -> FingerprintComparison {
    let left = low_index(p1, bound, budget);
    let right = low_index(p2, bound, budget);
    let agree: Vec<bool> = left
        .counts
        .iter()
        .zip(&right.counts)
        .map(|(a, b)| a.subgroups == b.subgroups)
        .collect();
    let first_discrepancy = left
        .counts
        .iter()
        .zip(&right.counts)
        .find(|(a, b)| a.complete && b.complete && a.subgroups != b.subgroups)
        .map(|(a, _)| a.index);
    FingerprintComparison {
        bound,
        complete: left.complete && right.complete,
        left,
        right,
        agree,
        first_discrepancy,
    }
}
