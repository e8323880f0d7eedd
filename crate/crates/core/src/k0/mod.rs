//! Grothendieck groups of squares categories.

mod snf;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use snf::{smith_normal_form, IntMatrix, SNFResult};

use crate::catcore::ObjId;
use crate::double::{extension_category, SquaresCat};
use crate::error::{Error, Result};
use crate::report::CheckReport;

/// An element of `ℤ^r ⊕ ⨁ ℤ/t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K0Element {
    pub free: Vec<BigInt>,
    /// Reduced into `0..t_i`.
    pub torsion: Vec<BigInt>,
}

impl K0Element {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}

/// The presented group `ℤ[objects] / ([O], [A] + [D] − [B] − [C])`.
#[derive(Debug, Clone)]
pub struct K0Result {
    pub object_names: Vec<String>,
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// The class of each object.
    pub images: Vec<K0Element>,
    /// An echelon basis of the relation lattice.
    pub relations: IntMatrix,
    /// Number of relation rows before reduction.
    pub relation_count: usize,
    /// Columns of the change of basis that survive in the quotient, with
    /// their moduli (zero for free columns).
    kept: Vec<(usize, BigInt)>,
    basis: IntMatrix,
}

/// The relation rows: one for `[O]` and one per square.
pub fn relation_rows(d: &SquaresCat) -> Vec<Vec<i64>> {
    let n = d.n_objects();
    let mut rows = Vec::with_capacity(d.squares().len() + 1);
    let mut base = vec![0i64; n];
    base[d.o()] = 1;
    rows.push(base);
    for s in d.squares() {
        let [a, b, c, dd] = d.corners(s);
        let mut r = vec![0i64; n];
        r[a] += 1;
        r[dd] += 1;
        r[b] -= 1;
        r[c] -= 1;
        rows.push(r);
    }
    rows
}

/// The relation rows as a matrix.
pub fn relation_matrix(d: &SquaresCat) -> IntMatrix {
    IntMatrix::from_rows(&relation_rows(d)).expect("rows have equal length")
}

/// `K₀` by Smith normal form of the relation matrix.
pub fn k0_group(d: &SquaresCat) -> K0Result {
    let names = d.objects().map(|o| d.object_name(o).to_string()).collect();
    k0_presented(names, &relation_rows(d))
}

/// Row echelon basis of the integer row space, one row per pivot.
fn echelon_basis(n: usize, rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let distinct: BTreeSet<&Vec<i64>> = rows.iter().collect();
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for row in distinct {
        let mut r: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
        while let Some(c) = r.iter().position(|x| !x.is_zero()) {
            let Some(b) = basis[c].as_mut() else {
                if r[c].is_negative() {
                    r.iter_mut().for_each(|x| *x = -&*x);
                }
                basis[c] = Some(r);
                break;
            };
            if r[c].is_multiple_of(&b[c]) {
                let k = &r[c] / &b[c];
                for j in c..n {
                    let t = &k * &b[j];
                    r[j] -= t;
                }
            } else {
                let e = b[c].extended_gcd(&r[c]);
                let (p, q) = (&b[c] / &e.gcd, &r[c] / &e.gcd);
                for j in c..n {
                    let (x, y) = (b[j].clone(), r[j].clone());
                    b[j] = &e.x * &x + &e.y * &y;
                    r[j] = &p * &y - &q * &x;
                }
            }
        }
    }
    basis.into_iter().flatten().collect()
}

/// The abelian group on `names` modulo the given relation rows.
pub fn k0_presented(object_names: Vec<String>, rows: &[Vec<i64>]) -> K0Result {
    let n = object_names.len();
    assert!(rows.iter().all(|r| r.len() == n), "one column per generator");
    let relations = IntMatrix::from_rows(&echelon_basis(n, rows))
        .filter(|m| m.rows() > 0)
        .unwrap_or_else(|| IntMatrix::zeros(0, n));
    let snf = smith_normal_form(&relations);
    let diag = snf.diagonal();
    let mut kept = Vec::new();
    let mut torsion = Vec::new();
    let mut free_rank = 0;
    for j in 0..n {
        let dj = diag.get(j).cloned().unwrap_or_else(BigInt::zero);
        if dj.is_one() {
            continue;
        }
        if dj.is_zero() {
            free_rank += 1;
        } else {
            torsion.push(dj.clone());
        }
        kept.push((j, dj));
    }
    let mut r = K0Result {
        object_names,
        free_rank,
        torsion,
        images: Vec::new(),
        relations,
        relation_count: rows.len(),
        kept,
        basis: snf.v,
    };
    r.images = (0..n)
        .map(|o| {
            let mut z = vec![BigInt::zero(); n];
            z[o] = BigInt::one();
            r.image(&z)
        })
        .collect();
    r
}

impl K0Result {
    fn image(&self, z: &[BigInt]) -> K0Element {
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for (j, m) in &self.kept {
            let y: BigInt = z.iter().enumerate().map(|(i, zi)| zi * &self.basis[(i, *j)]).sum();
            if m.is_zero() {
                free.push(y);
            } else {
                torsion.push(y.mod_floor(m));
            }
        }
        K0Element { free, torsion }
    }

    /// The class of a formal combination of objects.
    pub fn class_of(&self, z: &[(ObjId, i64)]) -> Result<K0Element> {
        let n = self.object_names.len();
        let mut v = vec![BigInt::zero(); n];
        for &(o, k) in z {
            if o >= n {
                return Err(Error::UnknownObject(format!("object id {o}")));
            }
            v[o] += k;
        }
        Ok(self.image(&v))
    }

    /// Whether two formal combinations have the same class.
    pub fn class_equal(&self, z1: &[(ObjId, i64)], z2: &[(ObjId, i64)]) -> Result<bool> {
        let diff: Vec<(ObjId, i64)> = z1.iter().copied().chain(z2.iter().map(|&(o, k)| (o, -k))).collect();
        Ok(self.class_of(&diff)?.is_zero())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    fn scaled(&self, e: &K0Element, k: &BigInt) -> K0Element {
        K0Element {
            free: e.free.iter().map(|x| x * k).collect(),
            torsion: e
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(x, m)| (x * k).mod_floor(m))
                .collect(),
        }
    }

    /// `k` with `image[b] = k · image[a]` and `k ∉ {0, 1}`, if any.
    fn multiple(&self, a: usize, b: usize) -> Option<BigInt> {
        let (ea, eb) = (&self.images[a], &self.images[b]);
        if ea.is_zero() || eb.is_zero() || ea == eb {
            return None;
        }
        let candidates: Vec<BigInt> = match ea.free.iter().position(|x| !x.is_zero()) {
            Some(i) => {
                let (q, r) = eb.free[i].div_rem(&ea.free[i]);
                if r.is_zero() {
                    vec![q]
                } else {
                    Vec::new()
                }
            }
            None => {
                let top = self.torsion.iter().max().cloned().unwrap_or_else(BigInt::one);
                let mut ks = Vec::new();
                let mut k = BigInt::from(2);
                while k < top {
                    ks.push(k.clone());
                    k += 1;
                }
                ks
            }
        };
        candidates.into_iter().find(|k| !k.is_zero() && !k.is_one() && &self.scaled(ea, k) == eb)
    }

    /// Relations `[b] = k·[a]` between object classes, each `b` against the
    /// first earlier object it is a multiple of.
    pub fn multiples(&self) -> Vec<(usize, BigInt, usize)> {
        let mut out = Vec::new();
        for b in 0..self.images.len() {
            if let Some((a, k)) = (0..b).find_map(|a| self.multiple(a, b).map(|k| (a, k))) {
                out.push((b, k, a));
            }
        }
        out
    }

    /// Objects whose single class generates the group.
    pub fn generating_objects(&self) -> Vec<usize> {
        if self.free_rank != 1 || !self.torsion.is_empty() {
            return Vec::new();
        }
        (0..self.images.len())
            .filter(|&o| self.images[o].free[0].abs().is_one())
            .collect()
    }

    pub fn summary(&self) -> String {
        let torsion = if self.torsion.is_empty() {
            "none".to_string()
        } else {
            self.torsion.iter().map(|t| format!("ℤ/{t}")).collect::<Vec<_>>().join(" ⊕ ")
        };
        let mut s = format!("free rank {}, torsion {torsion}", self.free_rank);
        for (b, k, a) in self.multiples() {
            s.push_str(&format!(", [{}] = {k}·[{}]", self.object_names[b], self.object_names[a]));
        }
        s
    }
}

impl fmt::Display for K0Result {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        let gens = self.generating_objects();
        if !gens.is_empty() {
            let names: Vec<String> = gens.iter().map(|&o| format!("[{}]", self.object_names[o])).collect();
            writeln!(f, "generated by {}", names.join(" or "))?;
        }
        for (o, e) in self.images.iter().enumerate() {
            let free: Vec<String> = e.free.iter().map(ToString::to_string).collect();
            let tor: Vec<String> = e.torsion.iter().map(ToString::to_string).collect();
            write!(f, "  [{}] = ({})", self.object_names[o], free.join(", "))?;
            if !tor.is_empty() {
                write!(f, " + torsion ({})", tor.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Whether `z1` and `z2` have the same class in `K₀(d)`.
pub fn k0_class_equal(k: &K0Result, z1: &[(ObjId, i64)], z2: &[(ObjId, i64)]) -> Result<bool> {
    k.class_equal(z1, z2)
}

/// For every ordered pair `(A, B)`, an `X` with squares
/// `(A ↣ X, A ↠ O, X ↠ B, O ↣ B)` and `(B ↣ X, B ↠ O, X ↠ A, O ↣ A)`.
pub fn check_sum_existence(d: &SquaresCat) -> CheckReport {
    check_sum_existence_where(d, |_, _| true)
}

/// As [`check_sum_existence`] over the pairs accepted by `filter`.
pub fn check_sum_existence_where(d: &SquaresCat, filter: impl Fn(ObjId, ObjId) -> bool) -> CheckReport {
    let mut r = CheckReport::new("sum existence");
    let mut checked = 0;
    let mut failure = None;
    'outer: for a in d.objects() {
        for b in d.objects() {
            if !filter(a, b) {
                continue;
            }
            checked += 1;
            if sum_object(d, a, b).is_none() {
                failure = Some((a, b));
                break 'outer;
            }
        }
    }
    match failure {
        None => r.push("every pair has a sum", true, format!("{checked} pairs")),
        Some((a, b)) => r.push(
            "every pair has a sum",
            false,
            format!("no X for ({}, {})", d.object_name(a), d.object_name(b)),
        ),
    }
    r
}

/// An object `X` exhibiting `A` and `B` as complementary pieces.
pub fn sum_object(d: &SquaresCat, a: ObjId, b: ObjId) -> Option<ObjId> {
    let (h, v) = (d.h(), d.v());
    let o = d.o();
    let witness = |p: ObjId, q: ObjId, x: ObjId| {
        h.hom(p, x).iter().any(|&top| {
            v.hom(x, q).iter().any(|&right| {
                h.hom(o, q)
                    .iter()
                    .any(|&bottom| d.has_square(top, d.zero_v(p), right, bottom))
            })
        })
    };
    d.objects().find(|&x| witness(a, b, x) && witness(b, a, x))
}

/// Compares `σ ↦ [B] + [C]` and `σ ↦ [A] + [D]` as maps `K₀(E□) → K₀`.
pub fn check_k0_additivity(d: &SquaresCat) -> CheckReport {
    let e = extension_category(d);
    let kd = k0_group(d);
    let ke = k0_group(&e);
    let mut r = CheckReport::new("K0 additivity shadow");
    r.note(format!("K0 = {}", kd.summary()));
    r.note(format!("K0 of the extension category = {}", ke.summary()));
    let squares = d.squares();
    let corner_sum = |s: usize, pick: [usize; 2]| -> Vec<(ObjId, i64)> {
        let c = d.corners(&squares[s]);
        vec![(c[pick[0]], 1), (c[pick[1]], 1)]
    };
    let ur_bl = |s| corner_sum(s, [1, 2]);
    let ul_br = |s| corner_sum(s, [0, 3]);
    let relations: Vec<Vec<i64>> = relation_rows(&e).into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    for (label, f) in [("[ur]+[bl]", &ur_bl as &dyn Fn(usize) -> Vec<(ObjId, i64)>), ("[ul]+[br]", &ul_br)] {
        let bad = (0..relations.len()).find(|&i| {
            let mut z = Vec::new();
            for (s, &k) in relations[i].iter().enumerate() {
                if k != 0 {
                    z.extend(f(s).into_iter().map(|(o, m)| (o, m * k)));
                }
            }
            !kd.class_of(&z).map(|x| x.is_zero()).unwrap_or(false)
        });
        r.push(
            format!("σ ↦ {label} respects relations"),
            bad.is_none(),
            match bad {
                None => format!("{} distinct relations", relations.len()),
                Some(i) => format!("relation row {i}"),
            },
        );
    }
    let bad = (0..squares.len()).find(|&s| !kd.class_equal(&ur_bl(s), &ul_br(s)).unwrap_or(false));
    r.push(
        "maps agree on all generators",
        bad.is_none(),
        match bad {
            None => format!("{} generators", squares.len()),
            Some(s) => d.square_name(&squares[s]),
        },
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{finset_squares, partial_monoid_squares};
    use crate::simplicial::PartialMonoid;

    #[test]
    fn point_is_trivial() {
        let k = k0_group(&SquaresCat::point());
        assert!(k.is_trivial());
        assert!(k.class_equal(&[(0, 1)], &[]).unwrap());
    }

    #[test]
    fn finset_is_cardinality() {
        let (d, _) = finset_squares(2);
        let k = k0_group(&d);
        assert_eq!(k.summary(), "free rank 1, torsion none, [2] = 2·[1]");
        assert!(k.class_equal(&[(2, 1)], &[(1, 2)]).unwrap());
        assert!(!k.class_equal(&[(1, 1)], &[]).unwrap());
        assert!(k.class_equal(&[(9, 1)], &[]).is_err());
    }

    #[test]
    fn partial_monoid_generated_by_x() {
        let d = partial_monoid_squares(&PartialMonoid::one_x()).unwrap();
        let k = k0_group(&d);
        let x = d.h().find_object("x").unwrap();
        assert_eq!(k.free_rank, 1);
        assert_eq!(k.generating_objects(), vec![x]);
        assert!(!k.class_equal(&[(x, 1)], &[]).unwrap());
    }

    #[test]
    fn sums_in_small_finsets() {
        let (d1, _) = finset_squares(1);
        let r = check_sum_existence(&d1);
        assert!(!r.passed());
        assert!(r.items[0].detail.contains("(1, 1)"), "{r}");
        let (d3, _) = finset_squares(3);
        let size = |o: ObjId| d3.object_name(o).parse::<usize>().unwrap();
        assert!(check_sum_existence_where(&d3, |a, b| size(a) + size(b) <= 3).passed());
        assert!(check_sum_existence(&SquaresCat::point()).passed());
    }

    #[test]
    fn additivity_on_finset() {
        let (d, _) = finset_squares(2);
        let r = check_k0_additivity(&d);
        assert!(r.passed(), "{r}");
    }
}
