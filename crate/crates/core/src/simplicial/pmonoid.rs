use std::collections::HashMap;

use crate::report::{ValidationReport, Violation};

/// A set with a unit and a partially defined product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMonoid {
    pub elements: Vec<String>,
    pub unit: usize,
    /// `table[a][b] = Some(a*b)` where defined.
    pub table: Vec<Vec<Option<usize>>>,
}

impl PartialMonoid {
    /// Builds from the non-unit products; products with the unit are added.
    pub fn new(elements: Vec<String>, unit: usize, products: &[(usize, usize, usize)]) -> Self {
        let n = elements.len();
        let mut table = vec![vec![None; n]; n];
        for m in 0..n {
            table[unit][m] = Some(m);
            table[m][unit] = Some(m);
        }
        for &(a, b, c) in products {
            table[a][b] = Some(c);
        }
        PartialMonoid { elements, unit, table }
    }

    /// `{1}`.
    pub fn trivial() -> Self {
        PartialMonoid::new(vec!["1".into()], 0, &[])
    }

    /// `{1, x}` with `x*x` undefined.
    pub fn one_x() -> Self {
        PartialMonoid::new(vec!["1".into(), "x".into()], 0, &[])
    }

    /// The cyclic group of order `n`, written additively as `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n).map(|k| if k == 0 { "1".into() } else { format!("g{k}") }).collect();
        let products: Vec<_> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b, (a + b) % n)))
            .collect();
        PartialMonoid::new(elements, 0, &products)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a][b]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(|r| r.iter().all(Option::is_some))
    }

    /// All defined products `(a, b, a*b)` in lexicographic order.
    pub fn products(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (a, row) in self.table.iter().enumerate() {
            for (b, p) in row.iter().enumerate() {
                if let Some(c) = p {
                    out.push((a, b, *c));
                }
            }
        }
        out
    }

    /// Unit laws, and for every triple: `(ab)c` is defined exactly when
    /// `a(bc)` is, with equal values.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut v = Vec::new();
        if self.unit >= n || self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            v.push(Violation::new("shape", "table does not match the carrier"));
            return ValidationReport::new("partial monoid", v);
        }
        let mut names = HashMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            if names.insert(e, i).is_some() {
                v.push(Violation::new("duplicate element", e.clone()));
            }
        }
        if self.table.iter().flatten().flatten().any(|&c| c >= n) {
            v.push(Violation::new("shape", "product outside the carrier"));
            return ValidationReport::new("partial monoid", v);
        }
        for m in 0..n {
            if self.mul(self.unit, m) != Some(m) || self.mul(m, self.unit) != Some(m) {
                v.push(Violation::new("unit law", self.name(m).to_string()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let l = self.mul(a, b).and_then(|ab| self.mul(ab, c));
                    let r = self.mul(b, c).and_then(|bc| self.mul(a, bc));
                    let t = format!("({},{},{})", self.name(a), self.name(b), self.name(c));
                    match (l, r) {
                        (Some(x), Some(y)) if x != y => v.push(Violation::new("associativity", t)),
                        (Some(_), None) | (None, Some(_)) => {
                            v.push(Violation::new("associativity definedness", t))
                        }
                        _ => {}
                    }
                }
            }
        }
        ValidationReport::new("partial monoid", v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_validate() {
        assert!(PartialMonoid::trivial().validate().passed());
        assert!(PartialMonoid::one_x().validate().passed());
        assert!(PartialMonoid::cyclic(3).validate().passed());
    }

    #[test]
    fn one_sided_definedness_is_rejected() {
        let names = ["1", "a", "b", "c"].map(String::from).to_vec();
        let m = PartialMonoid::new(names, 0, &[(1, 2, 3)]);
        let r = m.validate();
        assert!(r.passed());
        let m = PartialMonoid::new(m.elements.clone(), 0, &[(1, 2, 3), (3, 1, 1)]);
        assert!(m.validate().has_rule("associativity definedness"));
    }
}
