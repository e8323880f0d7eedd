//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

/// Hermite-style row reduction over `i128`; returns the nonzero rows.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = rows.first().map_or(0, Vec::len);
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for r in rows {
        let mut r: Vec<i128> = r.iter().map(|&x| x as i128).collect();
        let mut k = 0;
        while k < basis.len() {
            let p = basis[k].iter().position(|&x| x != 0).unwrap();
            let lead = r.iter().position(|&x| x != 0);
            match lead {
                None => break,
                Some(c) if c < p => break,
                Some(c) if c > p => {
                    k += 1;
                    continue;
                }
                Some(_) => {}
            }
            // Euclid on the pivot column.
            while r[p] != 0 {
                let q = basis[k][p] / r[p];
                for j in 0..n {
                    basis[k][j] -= q * r[j];
                }
                std::mem::swap(&mut basis[k], &mut r);
            }
            k += 1;
        }
        if r.iter().any(|&x| x != 0) {
            basis.push(r);
            basis.sort_by_key(|b| b.iter().position(|&x| x != 0).unwrap());
        }
    }
    for b in &mut basis {
        if b.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            b.iter_mut().for_each(|x| *x = -*x);
        }
    }
    basis
}

/// Whether `z` lies in the integer row space of `basis` (echelon form).
pub fn in_lattice(basis: &[Vec<i128>], z: &[i64]) -> bool {
    let mut z: Vec<i128> = z.iter().map(|&x| x as i128).collect();
    for b in basis {
        let p = b.iter().position(|&x| x != 0).unwrap();
        if z[p] % b[p] != 0 {
            return false;
        }
        let q = z[p] / b[p];
        for j in 0..z.len() {
            z[j] -= q * b[j];
        }
    }
    z.iter().all(|&x| x == 0)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Free rank and the product of the invariant factors, from the gcd of
/// maximal minors of the reduced relation rows.
pub fn rank_and_torsion_order(rows: &[Vec<i64>]) -> (usize, i128) {
    let basis = hermite_rows(rows);
    let n = rows.first().map_or(0, Vec::len);
    let r = basis.len();
    let mut g = 0;
    for cols in subsets(n, r) {
        let m: Vec<Vec<i128>> = basis.iter().map(|b| cols.iter().map(|&c| b[c]).collect()).collect();
        g = gcd(g, det(&m));
    }
    (n - r, if r == 0 { 1 } else { g })
}
