use std::collections::HashMap;
use std::sync::Arc;

use crate::catcore::{validate_category, validate_functor, FinCat, Functor};
use crate::error::{Error, Result};
use crate::report::{ValidationReport, Violation};

/// A simplicial set truncated at `bound()`. Degeneracies out of the top
/// level are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSSet {
    pub names: Vec<Vec<String>>,
    /// `faces[n][i][x]` is `d_i x` for `x` at level `n ≥ 1`.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][i][x]` is `s_i x` for `x` at level `n < bound`.
    pub degens: Vec<Vec<Vec<usize>>>,
}

impl TruncSSet {
    /// Builds a truncated simplicial set from canonical tuples.
    pub fn from_tuples<T: Clone + Eq + std::hash::Hash>(
        levels: Vec<Vec<T>>,
        face: impl Fn(usize, usize, &T) -> T,
        degen: impl Fn(usize, usize, &T) -> T,
        name: impl Fn(usize, &T) -> String,
    ) -> TruncSSet {
        let index: Vec<HashMap<&T, usize>> = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        let bound = levels.len() - 1;
        let mut faces = vec![Vec::new()];
        for n in 1..=bound {
            let fs = (0..=n)
                .map(|i| {
                    levels[n]
                        .iter()
                        .map(|t| index[n - 1][&face(n, i, t)])
                        .collect()
                })
                .collect();
            faces.push(fs);
        }
        let mut degens = Vec::new();
        for n in 0..bound {
            let ds = (0..=n)
                .map(|i| {
                    levels[n]
                        .iter()
                        .map(|t| index[n + 1][&degen(n, i, t)])
                        .collect()
                })
                .collect();
            degens.push(ds);
        }
        let names = levels
            .iter()
            .enumerate()
            .map(|(n, l)| l.iter().map(|t| name(n, t)).collect())
            .collect();
        TruncSSet { names, faces, degens }
    }

    /// The point, truncated at `bound`.
    pub fn point(bound: usize) -> TruncSSet {
        let levels = vec![vec![()]; bound + 1];
        TruncSSet::from_tuples(levels, |_, _, _| (), |_, _, _| (), |_, _| "*".into())
    }

    pub fn bound(&self) -> usize {
        self.names.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.names[n].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degen(&self, n: usize, i: usize, x: usize) -> usize {
        self.degens[n][i][x]
    }

    /// Restricts an `n`-simplex to the sorted vertex subset `keep`.
    pub fn restrict(&self, n: usize, x: usize, keep: &[usize]) -> usize {
        let mut cur = x;
        let mut level = n;
        for j in (0..=n).rev() {
            if !keep.contains(&j) {
                cur = self.face(level, j, cur);
                level -= 1;
            }
        }
        cur
    }

    pub fn truncate(&self, bound: usize) -> TruncSSet {
        let b = bound.min(self.bound());
        TruncSSet {
            names: self.names[..=b].to_vec(),
            faces: self.faces[..=b].to_vec(),
            degens: self.degens[..b].to_vec(),
        }
    }
}

fn shape_violations(x: &TruncSSet) -> Vec<Violation> {
    let mut v = Vec::new();
    let b = x.bound();
    if x.faces.len() != b + 1 || x.degens.len() != b {
        v.push(Violation::new("shape", "structure map arrays do not match the bound"));
        return v;
    }
    for n in 1..=b {
        if x.faces[n].len() != n + 1 {
            v.push(Violation::new("shape", format!("level {n} needs {} faces", n + 1)));
            continue;
        }
        for (i, f) in x.faces[n].iter().enumerate() {
            if f.len() != x.size(n) || f.iter().any(|&y| y >= x.size(n - 1)) {
                v.push(Violation::new("shape", format!("d_{i} at level {n} is not a map")));
            }
        }
    }
    for n in 0..b {
        if x.degens[n].len() != n + 1 {
            v.push(Violation::new("shape", format!("level {n} needs {} degeneracies", n + 1)));
            continue;
        }
        for (i, s) in x.degens[n].iter().enumerate() {
            if s.len() != x.size(n) || s.iter().any(|&y| y >= x.size(n + 1)) {
                v.push(Violation::new("shape", format!("s_{i} at level {n} is not a map")));
            }
        }
    }
    v
}

/// Checks every simplicial identity that stays inside the truncation.
pub fn validate_truncated(x: &TruncSSet) -> ValidationReport {
    let mut v = shape_violations(x);
    if !v.is_empty() {
        return ValidationReport::new("truncated simplicial set", v);
    }
    let b = x.bound();
    let mut fail = |rule: String, n: usize, s: usize| {
        v.push(Violation::new(rule, format!("level {n}, simplex {}", x.names[n][s])));
    };
    for n in 2..=b {
        for s in 0..x.size(n) {
            for j in 0..=n {
                for i in 0..j {
                    let l = x.face(n - 1, i, x.face(n, j, s));
                    let r = x.face(n - 1, j - 1, x.face(n, i, s));
                    if l != r {
                        fail(format!("d_{i} d_{j} = d_{} d_{i}", j - 1), n, s);
                    }
                }
            }
        }
    }
    for n in 0..b {
        for s in 0..x.size(n) {
            for j in 0..=n {
                let t = x.degen(n, j, s);
                for i in 0..=n + 1 {
                    let l = x.face(n + 1, i, t);
                    let r = if i < j {
                        x.degen(n - 1, j - 1, x.face(n, i, s))
                    } else if i == j || i == j + 1 {
                        s
                    } else {
                        x.degen(n - 1, j, x.face(n, i - 1, s))
                    };
                    if l != r {
                        fail(format!("d_{i} s_{j}"), n, s);
                    }
                }
            }
            if n + 2 <= b {
                for j in 0..=n {
                    for i in 0..=j {
                        let l = x.degen(n + 1, i, x.degen(n, j, s));
                        let r = x.degen(n + 1, j + 1, x.degen(n, i, s));
                        if l != r {
                            fail(format!("s_{i} s_{j} = s_{} s_{i}", j + 1), n, s);
                        }
                    }
                }
            }
        }
    }
    ValidationReport::new("truncated simplicial set", v)
}

/// A simplicial category truncated at `bound()`.
#[derive(Debug, Clone)]
pub struct TruncSCat {
    pub levels: Vec<Arc<FinCat>>,
    /// `faces[n][i]: level n → level n-1`.
    pub faces: Vec<Vec<Functor>>,
    /// `degens[n][i]: level n → level n+1`.
    pub degens: Vec<Vec<Functor>>,
}

impl TruncSCat {
    pub fn bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FinCat {
        &self.levels[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &Functor {
        &self.faces[n][i]
    }

    pub fn degen(&self, n: usize, i: usize) -> &Functor {
        &self.degens[n][i]
    }

    /// The functor restricting level `n` to the sorted vertex subset `keep`.
    pub fn restrict(&self, n: usize, keep: &[usize]) -> Functor {
        let mut cur = Functor::identity(self.levels[n].clone());
        let mut level = n;
        for j in (0..=n).rev() {
            if !keep.contains(&j) {
                cur = cur.then(&self.faces[level][j]);
                level -= 1;
            }
        }
        cur
    }

    /// The simplicial set of objects.
    pub fn objects(&self) -> TruncSSet {
        TruncSSet {
            names: self
                .levels
                .iter()
                .map(|c| c.objects().map(|o| c.object_name(o).to_string()).collect())
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|fs| fs.iter().map(|f| f.obj_map.clone()).collect())
                .collect(),
            degens: self
                .degens
                .iter()
                .map(|ds| ds.iter().map(|f| f.obj_map.clone()).collect())
                .collect(),
        }
    }

    /// The simplicial set of morphisms.
    pub fn morphisms(&self) -> TruncSSet {
        TruncSSet {
            names: self
                .levels
                .iter()
                .map(|c| c.morphisms().map(|m| c.morphism_name(m).to_string()).collect())
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|fs| fs.iter().map(|f| f.mor_map.clone()).collect())
                .collect(),
            degens: self
                .degens
                .iter()
                .map(|ds| ds.iter().map(|f| f.mor_map.clone()).collect())
                .collect(),
        }
    }

    pub fn truncate(&self, bound: usize) -> TruncSCat {
        let b = bound.min(self.bound());
        TruncSCat {
            levels: self.levels[..=b].to_vec(),
            faces: self.faces[..=b].to_vec(),
            degens: self.degens[..b].to_vec(),
        }
    }
}

/// Validates every level and structure functor, then the simplicial
/// identities on objects and on morphisms.
pub fn validate_truncated_cat(x: &TruncSCat) -> ValidationReport {
    let mut v = Vec::new();
    for (n, c) in x.levels.iter().enumerate() {
        for viol in validate_category(c).violations {
            v.push(Violation::new(format!("level {n} {}", viol.rule), viol.detail));
        }
    }
    for (n, fs) in x.faces.iter().enumerate() {
        for (i, f) in fs.iter().enumerate() {
            if !validate_functor(f).passed() {
                v.push(Violation::new("functor", format!("d_{i} at level {n}")));
            }
        }
    }
    for (n, ds) in x.degens.iter().enumerate() {
        for (i, f) in ds.iter().enumerate() {
            if !validate_functor(f).passed() {
                v.push(Violation::new("functor", format!("s_{i} at level {n}")));
            }
        }
    }
    if v.is_empty() {
        for part in [x.objects(), x.morphisms()] {
            v.extend(validate_truncated(&part).violations);
        }
    }
    ValidationReport::new("truncated simplicial category", v)
}

/// Builds a truncated simplicial category from levels and a function that
/// produces each structure functor.
pub fn assemble_scat(
    levels: Vec<Arc<FinCat>>,
    face: impl Fn(usize, usize) -> (Vec<usize>, Vec<usize>),
    degen: impl Fn(usize, usize) -> (Vec<usize>, Vec<usize>),
) -> TruncSCat {
    let bound = levels.len() - 1;
    let mk = |n: usize, m: usize, (o, mo): (Vec<usize>, Vec<usize>)| Functor {
        source: levels[n].clone(),
        target: levels[m].clone(),
        obj_map: o,
        mor_map: mo,
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=bound {
        faces.push((0..=n).map(|i| mk(n, n - 1, face(n, i))).collect());
    }
    let degens = (0..bound)
        .map(|n| (0..=n).map(|i| mk(n, n + 1, degen(n, i))).collect())
        .collect();
    TruncSCat { levels, faces, degens }
}

/// Level-wise bijections commuting with all faces and degeneracies, found
/// by backtracking over the top level.
pub fn find_isomorphism(x: &TruncSSet, y: &TruncSSet) -> Option<Vec<Vec<usize>>> {
    if x.bound() != y.bound() || x.sizes() != y.sizes() {
        return None;
    }
    let b = x.bound();
    let sig = |z: &TruncSSet, n: usize, s: usize| -> Vec<bool> {
        if n == 0 {
            return Vec::new();
        }
        (0..n)
            .map(|i| z.degen(n - 1, i, z.face(n, i, s)) == s)
            .collect()
    };
    let mut fwd: Vec<Vec<usize>> = (0..=b).map(|n| vec![usize::MAX; x.size(n)]).collect();
    let mut bwd: Vec<Vec<usize>> = (0..=b).map(|n| vec![usize::MAX; y.size(n)]).collect();
    let xs: Vec<Vec<Vec<bool>>> = (0..=b)
        .map(|n| (0..x.size(n)).map(|s| sig(x, n, s)).collect())
        .collect();
    let ys: Vec<Vec<Vec<bool>>> = (0..=b)
        .map(|n| (0..y.size(n)).map(|s| sig(y, n, s)).collect())
        .collect();

    fn assign(
        x: &TruncSSet,
        y: &TruncSSet,
        fwd: &mut [Vec<usize>],
        bwd: &mut [Vec<usize>],
        log: &mut Vec<(usize, usize, usize)>,
        n: usize,
        a: usize,
        c: usize,
    ) -> bool {
        if fwd[n][a] != usize::MAX || bwd[n][c] != usize::MAX {
            return fwd[n][a] == c && bwd[n][c] == a;
        }
        fwd[n][a] = c;
        bwd[n][c] = a;
        log.push((n, a, c));
        if n == 0 {
            return true;
        }
        (0..=n).all(|i| assign(x, y, fwd, bwd, log, n - 1, x.face(n, i, a), y.face(n, i, c)))
    }

    fn undo(fwd: &mut [Vec<usize>], bwd: &mut [Vec<usize>], log: &mut Vec<(usize, usize, usize)>, to: usize) {
        while log.len() > to {
            let (n, a, c) = log.pop().unwrap();
            fwd[n][a] = usize::MAX;
            bwd[n][c] = usize::MAX;
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        x: &TruncSSet,
        y: &TruncSSet,
        xs: &[Vec<Vec<bool>>],
        ys: &[Vec<Vec<bool>>],
        fwd: &mut Vec<Vec<usize>>,
        bwd: &mut Vec<Vec<usize>>,
        log: &mut Vec<(usize, usize, usize)>,
        k: usize,
    ) -> bool {
        let b = x.bound();
        if k == x.size(b) {
            return degeneracies_commute(x, y, fwd);
        }
        if fwd[b][k] != usize::MAX {
            return search(x, y, xs, ys, fwd, bwd, log, k + 1);
        }
        for c in 0..y.size(b) {
            if bwd[b][c] != usize::MAX || xs[b][k] != ys[b][c] {
                continue;
            }
            let mark = log.len();
            if assign(x, y, fwd, bwd, log, b, k, c) && search(x, y, xs, ys, fwd, bwd, log, k + 1) {
                return true;
            }
            undo(fwd, bwd, log, mark);
        }
        false
    }

    let mut log = Vec::new();
    if search(x, y, &xs, &ys, &mut fwd, &mut bwd, &mut log, 0) {
        Some(fwd)
    } else {
        None
    }
}

fn degeneracies_commute(x: &TruncSSet, y: &TruncSSet, fwd: &[Vec<usize>]) -> bool {
    let b = x.bound();
    if fwd.iter().any(|l| l.contains(&usize::MAX)) {
        return false;
    }
    (0..b).all(|n| {
        (0..x.size(n)).all(|s| {
            (0..=n).all(|i| fwd[n + 1][x.degen(n, i, s)] == y.degen(n, i, fwd[n][s]))
        })
    })
}

/// Checks that `iso` is a level-wise bijection commuting with all structure
/// maps.
pub fn is_isomorphism(x: &TruncSSet, y: &TruncSSet, iso: &[Vec<usize>]) -> bool {
    if x.sizes() != y.sizes() || iso.len() != x.bound() + 1 {
        return false;
    }
    for (n, m) in iso.iter().enumerate() {
        let mut seen = vec![false; y.size(n)];
        if m.len() != x.size(n) || m.iter().any(|&c| c >= y.size(n) || std::mem::replace(&mut seen[c], true)) {
            return false;
        }
    }
    let faces_ok = (1..=x.bound()).all(|n| {
        (0..x.size(n)).all(|s| (0..=n).all(|i| iso[n - 1][x.face(n, i, s)] == y.face(n, i, iso[n][s])))
    });
    faces_ok && degeneracies_commute(x, y, iso)
}

pub(crate) fn need_bound(have: usize, needed: usize) -> Result<()> {
    if have < needed {
        return Err(Error::InsufficientBound { needed, have });
    }
    Ok(())
}
