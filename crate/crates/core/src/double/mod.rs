//! Flat double categories and squares categories.

mod completion;
mod extension;

pub use completion::{
    check_completion_axioms, check_isostable, cospan_morphisms, spans, cospans, span_morphisms,
    square_morphisms, CompletionData, CompletionMode, Cospan, CospanMor, Span, SpanMor, SquareMor,
};
pub use extension::{extension_category, extension_category_with, ExtensionVariant};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::catcore::{validate_category, FinCat, MorId, ObjId};
use crate::error::{Error, Result};
use crate::report::{ValidationReport, Violation};

/// A square is a property of its boundary: `top: A ↣ B`, `left: A ↠ C`,
/// `right: B ↠ D`, `bottom: C ↣ D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub top: MorId,
    pub left: MorId,
    pub right: MorId,
    pub bottom: MorId,
}

impl Square {
    pub fn new(top: MorId, left: MorId, right: MorId, bottom: MorId) -> Self {
        Square { top, left, right, bottom }
    }
}

#[derive(Debug, Clone)]
pub struct FlatDoubleCat {
    pub hcat: Arc<FinCat>,
    pub vcat: Arc<FinCat>,
    squares: Vec<Square>,
    index: HashMap<Square, usize>,
    by_span: HashMap<(MorId, MorId), Vec<usize>>,
    by_cospan: HashMap<(MorId, MorId), Vec<usize>>,
    by_left: HashMap<MorId, Vec<usize>>,
    by_top: HashMap<MorId, Vec<usize>>,
}

impl FlatDoubleCat {
    pub fn new(hcat: Arc<FinCat>, vcat: Arc<FinCat>, mut squares: Vec<Square>) -> Self {
        squares.sort_unstable();
        squares.dedup();
        let mut d = FlatDoubleCat {
            hcat,
            vcat,
            squares,
            index: HashMap::new(),
            by_span: HashMap::new(),
            by_cospan: HashMap::new(),
            by_left: HashMap::new(),
            by_top: HashMap::new(),
        };
        for (i, s) in d.squares.iter().enumerate() {
            d.index.insert(*s, i);
            d.by_span.entry((s.top, s.left)).or_default().push(i);
            d.by_cospan.entry((s.right, s.bottom)).or_default().push(i);
            d.by_left.entry(s.left).or_default().push(i);
            d.by_top.entry(s.top).or_default().push(i);
        }
        d
    }

    pub fn h(&self) -> &FinCat {
        &self.hcat
    }

    pub fn v(&self) -> &FinCat {
        &self.vcat
    }

    pub fn n_objects(&self) -> usize {
        self.hcat.n_objects()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        self.hcat.objects()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        self.hcat.object_name(o)
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn square_index(&self, s: &Square) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn is_square(&self, s: &Square) -> bool {
        self.index.contains_key(s)
    }

    pub fn has_square(&self, top: MorId, left: MorId, right: MorId, bottom: MorId) -> bool {
        self.is_square(&Square::new(top, left, right, bottom))
    }

    fn pick(&self, ids: Option<&Vec<usize>>) -> Vec<Square> {
        ids.map(|v| v.iter().map(|&i| self.squares[i]).collect())
            .unwrap_or_default()
    }

    /// Squares with the given top and left edges.
    pub fn completions_of_span(&self, top: MorId, left: MorId) -> Vec<Square> {
        self.pick(self.by_span.get(&(top, left)))
    }

    /// Squares with the given right and bottom edges.
    pub fn completions_of_cospan(&self, right: MorId, bottom: MorId) -> Vec<Square> {
        self.pick(self.by_cospan.get(&(right, bottom)))
    }

    pub fn squares_with_left(&self, left: MorId) -> Vec<Square> {
        self.pick(self.by_left.get(&left))
    }

    pub fn squares_with_top(&self, top: MorId) -> Vec<Square> {
        self.pick(self.by_top.get(&top))
    }

    /// Corners `(A, B, C, D)` of a square.
    pub fn corners(&self, s: &Square) -> [ObjId; 4] {
        [
            self.hcat.src(s.top),
            self.hcat.dst(s.top),
            self.hcat.src(s.bottom),
            self.hcat.dst(s.bottom),
        ]
    }

    pub fn square_name(&self, s: &Square) -> String {
        format!(
            "({} | {} | {} | {})",
            self.hcat.morphism_name(s.top),
            self.vcat.morphism_name(s.left),
            self.vcat.morphism_name(s.right),
            self.hcat.morphism_name(s.bottom)
        )
    }

    pub fn without_square(&self, s: &Square) -> FlatDoubleCat {
        let rest = self.squares.iter().copied().filter(|x| x != s).collect();
        FlatDoubleCat::new(self.hcat.clone(), self.vcat.clone(), rest)
    }

    pub fn with_squares(&self, squares: Vec<Square>) -> FlatDoubleCat {
        FlatDoubleCat::new(self.hcat.clone(), self.vcat.clone(), squares)
    }

    /// Vertical category replaced by its opposite. Morphism ids are kept, so
    /// the square `(f, g, h, k)` becomes `(k, g, h, f)`.
    pub fn opposite_vertical(&self) -> FlatDoubleCat {
        let squares = self
            .squares
            .iter()
            .map(|s| Square::new(s.bottom, s.left, s.right, s.top))
            .collect();
        FlatDoubleCat::new(self.hcat.clone(), Arc::new(self.vcat.opposite()), squares)
    }
}

/// A flat double category with a basepoint initial for horizontal and
/// terminal for vertical morphisms.
#[derive(Debug, Clone)]
pub struct SquaresCat {
    pub base: FlatDoubleCat,
    pub basepoint: ObjId,
}

impl std::ops::Deref for SquaresCat {
    type Target = FlatDoubleCat;
    fn deref(&self) -> &FlatDoubleCat {
        &self.base
    }
}

impl SquaresCat {
    pub fn new(base: FlatDoubleCat, basepoint: ObjId) -> Self {
        SquaresCat { base, basepoint }
    }

    /// The one-object squares category.
    pub fn point() -> SquaresCat {
        let mk = || {
            let mut c = FinCat::new();
            let o = c.add_object("O");
            c.add_identity(o, "id_O");
            c.fill_unit_composites();
            Arc::new(c)
        };
        let d = FlatDoubleCat::new(mk(), mk(), vec![Square::new(0, 0, 0, 0)]);
        SquaresCat::new(d, 0)
    }

    pub fn o(&self) -> ObjId {
        self.basepoint
    }

    /// The unique horizontal morphism `O ↣ a`.
    pub fn zero_h(&self, a: ObjId) -> MorId {
        self.hcat.hom(self.basepoint, a)[0]
    }

    /// The unique vertical morphism `a ↠ O`.
    pub fn zero_v(&self, a: ObjId) -> MorId {
        self.vcat.hom(a, self.basepoint)[0]
    }

    pub fn with_base(&self, base: FlatDoubleCat) -> SquaresCat {
        SquaresCat::new(base, self.basepoint)
    }
}

fn square_violations(d: &FlatDoubleCat) -> Vec<Violation> {
    let (h, v) = (d.h(), d.v());
    let mut out = Vec::new();
    let hname = |m: MorId| h.morphism_name(m).to_string();
    let vname = |m: MorId| v.morphism_name(m).to_string();
    for s in d.squares() {
        if s.top >= h.n_morphisms()
            || s.bottom >= h.n_morphisms()
            || s.left >= v.n_morphisms()
            || s.right >= v.n_morphisms()
        {
            out.push(Violation::new("dangling square edge", format!("{s:?}")));
            continue;
        }
        let ok = h.src(s.top) == v.src(s.left)
            && h.dst(s.top) == v.src(s.right)
            && v.dst(s.left) == h.src(s.bottom)
            && v.dst(s.right) == h.dst(s.bottom);
        if !ok {
            out.push(Violation::new("square boundary", d.square_name(s)));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for u in v.morphisms() {
        let (a, c) = (v.src(u), v.dst(u));
        if !d.has_square(h.id(a), u, u, h.id(c)) {
            out.push(Violation::new("missing horizontal identity square", vname(u)));
        }
    }
    for f in h.morphisms() {
        let (a, b) = (h.src(f), h.dst(f));
        if !d.has_square(f, v.id(a), v.id(b), f) {
            out.push(Violation::new("missing vertical identity square", hname(f)));
        }
    }
    for s1 in d.squares() {
        for s2 in d.squares_with_left(s1.right) {
            let s = Square::new(
                h.comp(s2.top, s1.top),
                s1.left,
                s2.right,
                h.comp(s2.bottom, s1.bottom),
            );
            if !d.is_square(&s) {
                out.push(Violation::new(
                    "horizontal pasting",
                    format!("{} then {}", d.square_name(s1), d.square_name(&s2)),
                ));
            }
        }
        for s2 in d.squares_with_top(s1.bottom) {
            let s = Square::new(
                s1.top,
                v.comp(s2.left, s1.left),
                v.comp(s2.right, s1.right),
                s2.bottom,
            );
            if !d.is_square(&s) {
                out.push(Violation::new(
                    "vertical pasting",
                    format!("{} then {}", d.square_name(s1), d.square_name(&s2)),
                ));
            }
        }
    }
    out
}

fn prefixed(prefix: &str, r: ValidationReport) -> Vec<Violation> {
    r.violations
        .into_iter()
        .map(|v| Violation::new(format!("{prefix} {}", v.rule), v.detail))
        .collect()
}

fn structure_violations(d: &FlatDoubleCat) -> Vec<Violation> {
    let mut out = prefixed("hcat", validate_category(d.h()));
    out.extend(prefixed("vcat", validate_category(d.v())));
    let same_objects = d.h().n_objects() == d.v().n_objects()
        && d.objects().all(|o| d.h().object_name(o) == d.v().object_name(o));
    if !same_objects {
        out.push(Violation::new("object sets", "hcat and vcat objects differ"));
    }
    if out.is_empty() {
        out.extend(square_violations(d));
    }
    out
}

pub fn validate_flat_double(d: &FlatDoubleCat) -> ValidationReport {
    ValidationReport::new("flat double category", structure_violations(d))
}

fn pointing_violations(d: &FlatDoubleCat, o: ObjId) -> Vec<Violation> {
    let mut out = Vec::new();
    if o >= d.n_objects() {
        out.push(Violation::new("basepoint", "basepoint is not an object"));
        return out;
    }
    for a in d.objects() {
        let n = d.h().hom(o, a).len();
        if n != 1 {
            out.push(Violation::new(
                "basepoint not initial in hcat",
                format!("{} has {n} morphisms from O", d.object_name(a)),
            ));
        }
        let n = d.v().hom(a, o).len();
        if n != 1 {
            out.push(Violation::new(
                "basepoint not terminal in vcat",
                format!("{} has {n} morphisms to O", d.object_name(a)),
            ));
        }
    }
    out
}

pub fn validate_squares_category(d: &SquaresCat) -> ValidationReport {
    let mut out = structure_violations(&d.base);
    if out.iter().all(|v| !v.rule.starts_with("hcat") && !v.rule.starts_with("vcat")) {
        out.extend(pointing_violations(&d.base, d.basepoint));
    }
    ValidationReport::new("squares category", out)
}

/// Flip the vertical direction and re-point at `basepoint`.
pub fn opposite_vertical(d: &FlatDoubleCat, basepoint: ObjId) -> Result<SquaresCat> {
    let flipped = d.opposite_vertical();
    let v = pointing_violations(&flipped, basepoint);
    if let Some(first) = v.first() {
        return Err(Error::Precondition(format!(
            "pointing fails after flipping: {first}"
        )));
    }
    Ok(SquaresCat::new(flipped, basepoint))
}

/// Weak equivalences together with their witnessing squares.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeqSets {
    pub hweq: BTreeMap<MorId, Square>,
    pub vweq: BTreeMap<MorId, Square>,
}

impl WeqSets {
    pub fn is_hweq(&self, f: MorId) -> bool {
        self.hweq.contains_key(&f)
    }

    pub fn is_vweq(&self, u: MorId) -> bool {
        self.vweq.contains_key(&u)
    }
}

pub fn weak_equivalences(d: &SquaresCat) -> WeqSets {
    let (h, v, o) = (d.h(), d.v(), d.o());
    let mut w = WeqSets::default();
    for f in h.morphisms() {
        let s = Square::new(f, d.zero_v(h.src(f)), d.zero_v(h.dst(f)), h.id(o));
        if d.is_square(&s) {
            w.hweq.insert(f, s);
        }
    }
    for u in v.morphisms() {
        let s = Square::new(d.zero_h(v.src(u)), v.id(o), u, d.zero_h(v.dst(u)));
        if d.is_square(&s) {
            w.vweq.insert(u, s);
        }
    }
    w
}

impl fmt::Display for WeqSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} horizontal, {} vertical", self.hweq.len(), self.vweq.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_is_valid() {
        let p = SquaresCat::point();
        assert!(validate_squares_category(&p).passed());
        let w = weak_equivalences(&p);
        assert_eq!(w.hweq.len(), 1);
        assert_eq!(w.vweq.len(), 1);
    }

    #[test]
    fn opposite_vertical_of_point() {
        let p = SquaresCat::point();
        let q = opposite_vertical(&p.base, 0).unwrap();
        assert!(validate_squares_category(&q).passed());
        assert_eq!(q.squares(), p.squares());
    }
}
