use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}`, printed 1-based in cycle notation.
///
/// Products compose left to right: `p.mul(q)` applies `p` first, so
/// `p.mul(q).apply(i) == q.apply(p.apply(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// From 0-based images; fails unless they form a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based images, the usual "image array" form.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let mut v = Vec::with_capacity(images.len());
        for &x in images {
            if x == 0 {
                return Err(Error::InvalidPermutation("points are numbered from 1".into()));
            }
            v.push((x - 1) as u32);
        }
        Self::from_images(v)
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)` or `()`, on `degree` points.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let bad = |m: &str| Error::InvalidPermutation(format!("`{text}`: {m}"));
        let mut img: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected `(`"));
            }
            let close = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = rest[1..close].trim();
            rest = rest[close + 1..].trim_start();
            if body.is_empty() {
                continue;
            }
            let pts: Vec<usize> = body
                .split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad("points must be positive integers")))
                .collect::<Result<_>>()?;
            for &x in &pts {
                if x == 0 || x > degree {
                    return Err(bad(&format!("point {x} outside 1..={degree}")));
                }
                if seen[x - 1] {
                    return Err(bad(&format!("point {x} repeated")));
                }
                seen[x - 1] = true;
            }
            for k in 0..pts.len() {
                img[pts[k] - 1] = (pts[(k + 1) % pts.len()] - 1) as u32;
            }
        }
        Ok(Perm(img))
    }

    /// Largest point mentioned in cycle notation, for inferring a degree.
    pub fn max_point(text: &str) -> usize {
        text.split(|c: char| !c.is_ascii_digit())
            .filter_map(|s| s.parse::<usize>().ok())
            .max()
            .unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut l = 1usize;
        for i in 0..self.degree() {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.apply(j);
                len += 1;
            }
            l = num_integer::lcm(l, len);
        }
        l
    }

    /// The same permutation acting on `offset..offset+n` inside `total` points.
    pub fn shifted(&self, offset: usize, total: usize) -> Perm {
        let mut v: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.0.iter().enumerate() {
            v[offset + i] = (offset as u32) + x;
        }
        Perm(v)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for i in 0..self.degree() {
            if seen[i] || self.apply(i) == i {
                continue;
            }
            let mut c = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                c.push(j + 1);
                j = self.apply(j);
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        // (1,2,3) then (1,2): 1 -> 2 -> 1
        let c = Perm::parse_cycles("(1,2,3)", 3).unwrap();
        let t = Perm::parse_cycles("(1,2)", 3).unwrap();
        let ct = c.mul(&t);
        assert_eq!(ct.apply(0), 0);
        assert_eq!(ct.to_string(), "(2,3)");
        assert_eq!(t.mul(&c).to_string(), "(1,3)");
    }

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles("(1,3)(2, 4 ,5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1,3)(2,4,5)");
        assert_eq!(p.order(), 6);
        assert_eq!(p.mul(&p.inverse()), Perm::identity(5));
        assert_eq!(p.pow(6), Perm::identity(5));
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(Perm::parse_cycles("()", 2).unwrap(), Perm::identity(2));
        assert!(Perm::parse_cycles("(1,2)(2,3)", 3).is_err());
        assert!(Perm::parse_cycles("(1,7)", 3).is_err());
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert_eq!(Perm::max_point("(1,12)(3,4)"), 12);
        assert_eq!(Perm::from_one_based(&[2, 3, 1]).unwrap().to_string(), "(1,2,3)");
    }
}
