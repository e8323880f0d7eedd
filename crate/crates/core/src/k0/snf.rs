use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `None` if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Option<IntMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Some(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
        assert_eq!(entries.len(), rows * cols, "entry count does not match dimensions");
        IntMatrix { rows, cols, data: entries.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &m[(n - 1, n - 1)]
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[a] += k * row[b]`
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        for j in 0..self.cols {
            let t = k * &self[(b, j)];
            self[(a, j)] += t;
        }
    }

    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        for i in 0..self.rows {
            let t = k * &self[(i, b)];
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -&self[(a, j)];
            self[(a, j)] = t;
        }
    }

    /// Replaces rows `a`, `b` by `[[p, q], [r, s]]` times them.
    fn mix_rows(&mut self, a: usize, b: usize, [p, q, r, s]: &[BigInt; 4]) {
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)].clone(), self[(b, j)].clone());
            self[(a, j)] = p * &x + q * &y;
            self[(b, j)] = r * &x + s * &y;
        }
    }

    fn mix_cols(&mut self, a: usize, b: usize, [p, q, r, s]: &[BigInt; 4]) {
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)].clone(), self[(i, b)].clone());
            self[(i, a)] = p * &x + q * &y;
            self[(i, b)] = r * &x + s * &y;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SNFResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SNFResult {
    /// The diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Re-multiplies and checks shape, divisibility and unimodularity.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        if self.u.mul(a).mul(&self.v) != self.d {
            return false;
        }
        let off_diagonal_zero = (0..self.d.rows)
            .all(|i| (0..self.d.cols).all(|j| i == j || self.d[(i, j)].is_zero()));
        let diag = self.diagonal();
        let chain = diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    w[1].is_multiple_of(&w[0])
                }
            });
        let unimodular = |m: &IntMatrix| m.determinant().abs().is_one();
        off_diagonal_zero && chain && unimodular(&self.u) && unimodular(&self.v)
    }
}

/// Bezout step: `[[p, q], [r, s]]` of determinant 1 sending `(a, b)` to
/// `(g, 0)` with `g = gcd(a, b) ≥ 0`.
fn bezout(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    let e = a.extended_gcd(b);
    let (g, x, y) = (e.gcd, e.x, e.y);
    [x, y, -(b / &g), a / &g]
}

/// Smith normal form over arbitrary-precision integers.
pub fn smith_normal_form(a: &IntMatrix) -> SNFResult {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                if d[(i, t)].is_multiple_of(&d[(t, t)]) {
                    let k = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_row(i, t, &k);
                    u.add_row(i, t, &k);
                } else {
                    let b = bezout(&d[(t, t)], &d[(i, t)]);
                    d.mix_rows(t, i, &b);
                    u.mix_rows(t, i, &b);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                if d[(t, j)].is_multiple_of(&d[(t, t)]) {
                    let k = -(&d[(t, j)] / &d[(t, t)]);
                    d.add_col(j, t, &k);
                    v.add_col(j, t, &k);
                } else {
                    let b = bezout(&d[(t, t)], &d[(t, j)]);
                    d.mix_cols(t, j, &b);
                    v.mix_cols(t, j, &b);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // The pivot must divide the remaining block.
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SNFResult { d, u, v }
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(r: &SNFResult) -> Vec<i64> {
        r.diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(3);
        let r = smith_normal_form(&a);
        assert_eq!(r.d, a);
        assert!(r.verify(&a));
    }

    #[test]
    fn coprime_diagonal() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let r = smith_normal_form(&a);
        assert_eq!(diag(&r), vec![1, 6]);
        assert!(r.verify(&a));
    }

    #[test]
    fn rectangular_and_zero() {
        let a = IntMatrix::from_i64(3, 2, &[2, 4, 6, 8, 10, 12]);
        let r = smith_normal_form(&a);
        assert_eq!(diag(&r), vec![2, 4]);
        assert!(r.verify(&a));
        let z = IntMatrix::zeros(2, 3);
        let r = smith_normal_form(&z);
        assert_eq!(r.rank(), 0);
        assert!(r.verify(&z));
    }

    #[test]
    fn determinant_small() {
        let a = IntMatrix::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]);
        assert_eq!(a.determinant(), BigInt::from(6));
    }
}
