//! Exact integer linear algebra over arbitrary-precision integers.

mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;

pub use matrix::IntMatrix;
pub use snf::{invariant_factors, smith_normal_form, SnfResult};

use snf::{diagonalize, Track};

/// A finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_k`
/// with `t_1 | t_2 | ... | t_k` and every `t_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(with = "matrix::bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Canonicalizes an arbitrary list of cyclic orders (`0` meaning infinite).
    pub fn from_cyclic_orders(orders: &[i64]) -> Self {
        let rows: Vec<Vec<i64>> = orders
            .iter()
            .enumerate()
            .map(|(i, &o)| {
                let mut r = vec![0; orders.len()];
                r[i] = o;
                r
            })
            .collect();
        let m = IntMatrix::from_rows_i64(&rows, orders.len()).expect("square");
        Self::from_relation_matrix(&m)
    }

    /// Invariants of the cokernel of `m` (rows are relations).
    pub fn from_relation_matrix(m: &IntMatrix) -> Self {
        Self::from_factors(m.cols(), &invariant_factors(m))
    }

    fn from_factors(generators: usize, factors: &[BigInt]) -> Self {
        AbelianInvariants {
            free_rank: generators - factors.len(),
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }

    /// Number of cyclic factors of even order, i.e. the rank of the group tensored with Z/2.
    pub fn two_rank(&self) -> usize {
        self.free_rank + self.torsion.iter().filter(|t| t.is_even()).count()
    }

    /// Torsion split into prime powers, sorted by prime then exponent.
    pub fn primary_decomposition(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for t in &self.torsion {
            let mut n = t.clone();
            let mut p = BigInt::from(2u32);
            while &p * &p <= n {
                let mut e = 0;
                while n.is_multiple_of(&p) {
                    n /= &p;
                    e += 1;
                }
                if e > 0 {
                    out.push((p.to_u64().unwrap_or(u64::MAX), e));
                }
                p += 1;
            }
            if n > BigInt::one() {
                out.push((n.to_u64().unwrap_or(u64::MAX), 1));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn primary_display(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(free_part(self.free_rank));
        }
        for (p, e) in self.primary_decomposition() {
            if e == 1 {
                parts.push(format!("Z/{p}"));
            } else {
                parts.push(format!("Z/{p}^{e}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn free_part(rank: usize) -> String {
    if rank == 1 {
        "Z".to_string()
    } else {
        format!("Z^{rank}")
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(free_part(self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The cokernel of an integer relation matrix on `generators` generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpAbelianGroup {
    pub generators: usize,
    pub relations: IntMatrix,
}

impl FpAbelianGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != generators {
            return Err(Error::Dimension(format!(
                "relation matrix has {} columns for {generators} generators",
                relations.cols()
            )));
        }
        Ok(FpAbelianGroup {
            generators,
            relations,
        })
    }

    pub fn free(generators: usize) -> Self {
        FpAbelianGroup {
            generators,
            relations: IntMatrix::zeros(0, generators),
        }
    }

    pub fn invariants(&self) -> AbelianInvariants {
        AbelianInvariants::from_relation_matrix(&self.relations)
    }
}

/// Invariants of the abelianization, read off the relator exponent matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let m = IntMatrix::from_rows_i64(&p.exponent_matrix(), p.generator_count()).expect("shape");
    AbelianInvariants::from_relation_matrix(&m)
}

pub fn is_perfect(p: &Presentation) -> bool {
    abelianization(p).is_trivial()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Finds integer `c` with `c * basis = target`, or `None` if `target` is
/// outside the row lattice. Returned certificates are re-verified.
pub fn lattice_solve(target: &[BigInt], basis: &IntMatrix) -> Result<Option<Vec<BigInt>>> {
    if target.len() != basis.cols() {
        return Err(Error::Dimension(format!(
            "target of length {} against {} columns",
            target.len(),
            basis.cols()
        )));
    }
    let d = diagonalize(
        basis,
        Track {
            u: true,
            u_inv: false,
            v: true,
        },
    );
    let u = d.u.expect("tracked");
    let v = IntMatrix::from_rows(d.v.expect("tracked"), basis.cols())?;
    // c U^-1 S = t V
    let tv = v.left_mul_vec(target)?;
    let rank = d.diag.len();
    if tv[rank..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut y = vec![BigInt::zero(); basis.rows()];
    for i in 0..rank {
        let (q, r) = tv[i].div_rem(&d.diag[i]);
        if !r.is_zero() {
            return Ok(None);
        }
        y[i] = q;
    }
    let u_mat = IntMatrix::from_rows(u.clone(), basis.rows())?;
    let mut c = u_mat.left_mul_vec(&y)?;

    // Shorten with left-kernel vectors (rows rank.. of U).
    let kernel: Vec<&Vec<BigInt>> = u[rank..].iter().collect();
    for _ in 0..64 {
        let mut improved = false;
        for k in &kernel {
            let kk = dot(k, k);
            if kk.is_zero() {
                continue;
            }
            let ck = dot(&c, k);
            let (q, r) = ck.div_mod_floor(&kk);
            let step = if &r * 2 > kk { q + 1 } else { q };
            if !step.is_zero() {
                for (ci, ki) in c.iter_mut().zip(k.iter()) {
                    *ci -= &step * ki;
                }
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }

    if basis.left_mul_vec(&c)? != target {
        return Err(Error::Internal("lattice certificate failed to verify".into()));
    }
    Ok(Some(c))
}

fn check_square(a: &IntMatrix, n: usize) -> Result<()> {
    if a.rows() != n || a.cols() != n {
        return Err(Error::Dimension(format!(
            "action matrix is {}x{}, expected {n}x{n}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// Invariants of the coinvariant quotient `g / <x A - x>`. Each `A` acts on
/// row vectors and is assumed to be a genuine module action on `g`.
pub fn coinvariants(g: &FpAbelianGroup, actions: &[IntMatrix]) -> Result<AbelianInvariants> {
    Ok(coinvariant_group(g, actions)?.invariants())
}

/// The coinvariant quotient as a presented group on the same generators.
pub fn coinvariant_group(g: &FpAbelianGroup, actions: &[IntMatrix]) -> Result<FpAbelianGroup> {
    let n = g.generators;
    let mut rows = g.relations.to_rows();
    for a in actions {
        check_square(a, n)?;
        for i in 0..n {
            let mut r = a.row(i).to_vec();
            r[i] -= 1;
            if r.iter().any(|x| !x.is_zero()) {
                rows.push(r);
            }
        }
    }
    FpAbelianGroup::new(n, IntMatrix::from_rows(rows, n)?)
}

/// Invariants of the kernel of `coker(relations) -> Z^m` induced by `map`
/// (one row per generator).
pub fn kernel_invariants(domain: &FpAbelianGroup, map: &IntMatrix) -> Result<AbelianInvariants> {
    let n = domain.generators;
    if map.rows() != n {
        return Err(Error::Dimension(format!(
            "map has {} rows for {n} generators",
            map.rows()
        )));
    }
    let rel = &domain.relations;
    let images = rel.mul(map)?;
    if images.max_abs_entry() > BigInt::zero() {
        return Err(Error::IllDefinedMap(
            "map does not vanish on the relation lattice".into(),
        ));
    }
    let d = diagonalize(
        map,
        Track {
            u: false,
            u_inv: true,
            v: false,
        },
    );
    let rank = d.diag.len();
    // Rows rank.. of U span the left kernel; coordinates in the U basis are x U^-1.
    let u_inv = IntMatrix::from_rows(d.u_inv.expect("tracked"), n)?;
    let k = n - rank;
    let mut coords = Vec::with_capacity(rel.rows());
    for i in 0..rel.rows() {
        let x = u_inv.left_mul_vec(rel.row(i))?;
        if x[..rank].iter().any(|v| !v.is_zero()) {
            return Err(Error::Internal("relation outside the kernel lattice".into()));
        }
        coords.push(x[rank..].to_vec());
    }
    Ok(AbelianInvariants::from_relation_matrix(&IntMatrix::from_rows(coords, k)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::catalog;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn m(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
        IntMatrix::from_rows_i64(rows, cols).unwrap()
    }

    #[test]
    fn abelianization_examples() {
        let free = Presentation::parse("< a, b | >").unwrap();
        assert_eq!(abelianization(&free), AbelianInvariants::free(2));
        let c5 = Presentation::parse("< a | a^5 >").unwrap();
        assert_eq!(abelianization(&c5).torsion, ints(&[5]));
        assert!(!is_perfect(&c5));
        for p in 2..=10 {
            assert!(is_perfect(&catalog("Bp", &[p]).unwrap().presentation), "B_{p}");
        }
        assert!(is_perfect(&catalog("A5", &[]).unwrap().presentation));
    }

    #[test]
    fn lattice_solve_examples() {
        let c = lattice_solve(&ints(&[1]), &m(&[vec![2], vec![3]], 1)).unwrap().unwrap();
        assert_eq!(c[0].clone() * 2 + c[1].clone() * 3, BigInt::one());
        let a5 = m(&[vec![2, 0], vec![0, 3], vec![5, 5]], 2);
        let c = lattice_solve(&ints(&[1, 0]), &a5).unwrap().unwrap();
        assert_eq!(a5.left_mul_vec(&c).unwrap(), ints(&[1, 0]));
        assert!(lattice_solve(&ints(&[1, 0]), &m(&[vec![2, 0], vec![0, 3]], 2)).unwrap().is_none());
        assert!(lattice_solve(&ints(&[0, 0]), &IntMatrix::zeros(0, 2)).unwrap().is_some());
    }

    #[test]
    fn coinvariant_examples() {
        let z2 = FpAbelianGroup::free(2);
        assert_eq!(coinvariants(&z2, &[IntMatrix::identity(2)]).unwrap(), AbelianInvariants::free(2));
        let swap = m(&[vec![0, 1], vec![1, 0]], 2);
        assert_eq!(coinvariants(&z2, &[swap]).unwrap(), AbelianInvariants::free(1));
        let c2 = FpAbelianGroup::new(1, m(&[vec![2]], 1)).unwrap();
        assert_eq!(coinvariants(&c2, &[IntMatrix::identity(1)]).unwrap().torsion, ints(&[2]));
        assert!(coinvariants(&c2, &[IntMatrix::identity(2)]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let z2 = FpAbelianGroup::free(2);
        assert_eq!(kernel_invariants(&z2, &IntMatrix::zeros(2, 3)).unwrap(), AbelianInvariants::free(2));
        assert!(kernel_invariants(&z2, &IntMatrix::identity(2)).unwrap().is_trivial());
        // Z + Z/2 -> Z, (x, y) -> x
        let g = FpAbelianGroup::new(2, m(&[vec![0, 2]], 2)).unwrap();
        let k = kernel_invariants(&g, &m(&[vec![1], vec![0]], 1)).unwrap();
        assert_eq!(k.torsion, ints(&[2]));
        assert_eq!(k.free_rank, 0);
        // ill-defined: Z/2 -> Z, 1 -> 1
        let c2 = FpAbelianGroup::new(1, m(&[vec![2]], 1)).unwrap();
        assert!(matches!(
            kernel_invariants(&c2, &m(&[vec![1]], 1)),
            Err(Error::IllDefinedMap(_))
        ));
    }

    #[test]
    fn display_forms() {
        let g = AbelianInvariants::from_cyclic_orders(&[0, 4, 6]);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
        assert_eq!(g.primary_display(), "Z + Z/2 + Z/2^2 + Z/3");
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"free_rank":1,"torsion":[2,12]}"#
        );
    }
}
