use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U * A * V = S` with `S` diagonal, nonnegative, `s_1 | s_2 | ...`, and
/// `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// The nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        diagonal(&self.s)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn diagonal(s: &IntMatrix) -> Vec<BigInt> {
    (0..s.rows().min(s.cols()))
        .map(|i| s.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

/// Which transforms to accumulate while diagonalizing.
#[derive(Clone, Copy, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

pub(crate) struct Diagonalized {
    pub diag: Vec<BigInt>,
    pub u: Option<Vec<Vec<BigInt>>>,
    pub u_inv: Option<Vec<Vec<BigInt>>>,
    pub v: Option<Vec<Vec<BigInt>>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Nearest-integer quotient: `a - q b` has absolute value at most `|b| / 2`.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    // floor division leaves r with the sign of b
    let (q, r) = a.div_mod_floor(b);
    let twice: BigInt = &r * 2;
    if twice.abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

struct Engine {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<BigInt>>>,
    u_inv: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Engine {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let (lo, hi) = if i < t { (i, t) } else { (t, i) };
        let (first, second) = self.a.split_at_mut(hi);
        let (ri, rt) = if i < t {
            (&mut first[lo], &second[0])
        } else {
            (&mut second[0], &first[lo])
        };
        for (x, y) in ri.iter_mut().zip(rt.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
        if let Some(u) = &mut self.u {
            let rt = u[t].clone();
            for (x, y) in u[i].iter_mut().zip(rt.iter()) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse operation acts on columns: col_t += q * col_i
            for row in ui.iter_mut() {
                if !row[i].is_zero() {
                    let add = q * &row[i];
                    row[t] += add;
                }
            }
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            if !row[t].is_zero() {
                let sub = q * &row[t];
                row[j] -= sub;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[t].is_zero() {
                    let sub = q * &row[t];
                    row[j] -= sub;
                }
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[t] = -&row[t];
            }
        }
    }

    /// Position of a minimal nonzero |entry| in the lower-right block from `t`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.abs() < self.a[bi][bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
                if x.abs().is_one() {
                    return best;
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut diag = Vec::new();
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // Clear column t and row t with nearest-integer quotients.
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = nearest_quotient(&self.a[i][t], &self.a[t][t]);
                        self.row_sub(i, t, &q);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = nearest_quotient(&self.a[t][j], &self.a[t][t]);
                        self.col_sub(j, t, &q);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // A remainder smaller than the pivot survived; promote it.
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // Enforce that the pivot divides the remaining block.
                let p = self.a[t][t].clone();
                let offending = (t + 1..self.rows).find(|&i| {
                    self.a[i][t + 1..]
                        .iter()
                        .any(|x| !x.is_zero() && !x.is_multiple_of(&p))
                });
                match offending {
                    Some(i) => {
                        // row_t += row_i
                        self.row_sub(t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            diag.push(self.a[t][t].clone());
        }
        diag
    }
}

pub(crate) fn diagonalize(m: &IntMatrix, track: Track) -> Diagonalized {
    let (rows, cols) = (m.rows(), m.cols());
    let mut e = Engine {
        a: m.to_rows(),
        rows,
        cols,
        u: track.u.then(|| identity(rows)),
        u_inv: track.u_inv.then(|| identity(rows)),
        v: track.v.then(|| identity(cols)),
    };
    let diag = e.run();
    Diagonalized {
        diag,
        u: e.u,
        u_inv: e.u_inv,
        v: e.v,
    }
}

/// Nonzero invariant factors of `m` without accumulating transforms.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    diagonalize(m, Track::default()).diag
}

/// Smith normal form with both transformation matrices.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let d = diagonalize(
        m,
        Track {
            u: true,
            u_inv: false,
            v: true,
        },
    );
    let mut s = IntMatrix::zeros(m.rows(), m.cols());
    for (i, x) in d.diag.iter().enumerate() {
        s.set(i, i, x.clone());
    }
    let u = IntMatrix::from_rows(d.u.unwrap(), m.rows()).expect("square");
    let v = IntMatrix::from_rows(d.v.unwrap(), m.cols()).expect("square");
    SnfResult { s, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
        IntMatrix::from_rows_i64(rows, cols).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(r.u.mul(a).unwrap().mul(&r.v).unwrap(), r.s);
        assert!(r.s.is_diagonal());
        assert!(r.u.determinant().unwrap().abs().is_one());
        assert!(r.v.determinant().unwrap().abs().is_one());
        r
    }

    #[test]
    fn examples() {
        assert_eq!(check(&m(&[vec![2, 0], vec![0, 3]], 2)).invariant_factors(), ints(&[1, 6]));
        assert_eq!(check(&m(&[vec![2, 4], vec![6, 8]], 2)).invariant_factors(), ints(&[2, 4]));
        let z = check(&IntMatrix::zeros(2, 2));
        assert!(z.invariant_factors().is_empty());
        assert_eq!(z.u, IntMatrix::identity(2));
    }

    #[test]
    fn rectangular_and_empty() {
        let r = check(&m(&[vec![2, 0], vec![0, 3], vec![5, 5]], 2));
        assert_eq!(r.invariant_factors(), ints(&[1, 1]));
        let r = check(&IntMatrix::zeros(0, 3));
        assert!(r.invariant_factors().is_empty());
        let r = check(&m(&[vec![4, 6, 10]], 3));
        assert_eq!(r.invariant_factors(), ints(&[2]));
    }

    #[test]
    fn nearest_quotient_bounds_remainder() {
        for a in -20i64..=20 {
            for b in [-7i64, -4, -1, 1, 3, 6] {
                let q = nearest_quotient(&BigInt::from(a), &BigInt::from(b));
                let r = BigInt::from(a) - q * b;
                assert!(r.abs() * 2 <= BigInt::from(b.abs()), "{a} {b}");
            }
        }
    }
}
