use std::collections::{BTreeMap, HashMap};

use super::{weak_equivalences, Square, SquaresCat};
use crate::catcore::MorId;
use crate::error::{Error, Result};
use crate::report::CheckReport;

/// `top: A ↣ B` and `left: A ↠ C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub top: MorId,
    pub left: MorId,
}

/// `right: B ↠ D` and `bottom: C ↣ D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cospan {
    pub right: MorId,
    pub bottom: MorId,
}

/// A vertical morphism of spans with components on `A`, `B`, `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanMor {
    pub src: Span,
    pub dst: Span,
    pub a: MorId,
    pub b: MorId,
    pub c: MorId,
}

/// A vertical morphism of cospans with components on `B`, `C`, `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CospanMor {
    pub src: Cospan,
    pub dst: Cospan,
    pub b: MorId,
    pub c: MorId,
    pub d: MorId,
}

/// A vertical morphism of squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareMor {
    pub src: Square,
    pub dst: Square,
    pub a: MorId,
    pub b: MorId,
    pub c: MorId,
    pub d: MorId,
}

impl SquareMor {
    pub fn span_part(&self) -> SpanMor {
        SpanMor {
            src: span_of(&self.src),
            dst: span_of(&self.dst),
            a: self.a,
            b: self.b,
            c: self.c,
        }
    }

    pub fn cospan_part(&self) -> CospanMor {
        CospanMor {
            src: cospan_of(&self.src),
            dst: cospan_of(&self.dst),
            b: self.b,
            c: self.c,
            d: self.d,
        }
    }
}

pub fn span_of(s: &Square) -> Span {
    Span { top: s.top, left: s.left }
}

pub fn cospan_of(s: &Square) -> Cospan {
    Cospan { right: s.right, bottom: s.bottom }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionMode {
    ProtoWaldhausen,
    Stable,
}

/// Chosen span and cospan completions with their actions on morphisms and
/// the comparison components `w` and `u`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompletionData {
    pub span_complete: BTreeMap<Span, Square>,
    pub span_action: BTreeMap<SpanMor, MorId>,
    pub w: BTreeMap<Square, MorId>,
    pub cospan_complete: BTreeMap<Cospan, Square>,
    pub cospan_action: BTreeMap<CospanMor, MorId>,
    pub u: BTreeMap<Square, MorId>,
}

pub fn spans(d: &SquaresCat) -> Vec<Span> {
    let (h, v) = (d.h(), d.v());
    let mut out = Vec::new();
    for top in h.morphisms() {
        for &left in v.out_of(h.src(top)) {
            out.push(Span { top, left });
        }
    }
    out
}

pub fn cospans(d: &SquaresCat) -> Vec<Cospan> {
    let (h, v) = (d.h(), d.v());
    let mut out = Vec::new();
    for right in v.morphisms() {
        for &bottom in h.into_obj(v.dst(right)) {
            out.push(Cospan { right, bottom });
        }
    }
    out
}

pub fn span_morphisms(d: &SquaresCat) -> Vec<SpanMor> {
    let v = d.v();
    let mut out = Vec::new();
    for sp in spans(d) {
        for face in d.squares_with_top(sp.top) {
            let a = face.left;
            for &left2 in v.out_of(v.dst(a)) {
                let lhs = v.comp(left2, a);
                for &c in v.hom(v.dst(sp.left), v.dst(left2)) {
                    if v.comp(c, sp.left) == lhs {
                        out.push(SpanMor {
                            src: sp,
                            dst: Span { top: face.bottom, left: left2 },
                            a,
                            b: face.right,
                            c,
                        });
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn cospan_morphisms(d: &SquaresCat) -> Vec<CospanMor> {
    let v = d.v();
    let mut out = Vec::new();
    for cs in cospans(d) {
        for face in d.squares_with_top(cs.bottom) {
            let dd = face.right;
            let lhs = v.comp(dd, cs.right);
            for &right2 in v.into_obj(v.dst(dd)) {
                for &b in v.hom(v.src(cs.right), v.src(right2)) {
                    if v.comp(right2, b) == lhs {
                        out.push(CospanMor {
                            src: cs,
                            dst: Cospan { right: right2, bottom: face.bottom },
                            b,
                            c: face.left,
                            d: dd,
                        });
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn square_morphisms(d: &SquaresCat) -> Vec<SquareMor> {
    let v = d.v();
    let mut out = Vec::new();
    for s in d.squares() {
        for top_face in d.squares_with_top(s.top) {
            for bottom_face in d.squares_with_top(s.bottom) {
                let (a, b) = (top_face.left, top_face.right);
                let (c, dd) = (bottom_face.left, bottom_face.right);
                let left_lhs = v.comp(c, s.left);
                let right_lhs = v.comp(dd, s.right);
                for s2 in d.squares_with_top(top_face.bottom) {
                    if s2.bottom != bottom_face.bottom {
                        continue;
                    }
                    if v.comp(s2.left, a) == left_lhs && v.comp(s2.right, b) == right_lhs {
                        out.push(SquareMor { src: *s, dst: s2, a, b, c, d: dd });
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

impl CompletionData {
    /// Brute-force completions: the first candidate in id order wherever one
    /// exists. Spans without any completion are simply left out.
    pub fn search(d: &SquaresCat, mode: CompletionMode) -> CompletionData {
        CompletionData::default().completed_by_search(d, mode)
    }

    /// Fills every missing entry by search, keeping supplied ones. Induced
    /// maps are searched against the final choice of completions.
    pub fn completed_by_search(self, d: &SquaresCat, mode: CompletionMode) -> CompletionData {
        let mut data = CompletionData {
            span_complete: self.span_complete.clone(),
            cospan_complete: self.cospan_complete.clone(),
            ..Default::default()
        };
        for sp in spans(d) {
            if let Some(s) = d.completions_of_span(sp.top, sp.left).first() {
                data.span_complete.entry(sp).or_insert(*s);
            }
        }
        if mode == CompletionMode::Stable {
            for cs in cospans(d) {
                if let Some(s) = d.completions_of_cospan(cs.right, cs.bottom).first() {
                    data.cospan_complete.entry(cs).or_insert(*s);
                }
            }
        }
        let mut data = search_actions(d, mode, data);
        data.span_action.extend(self.span_action);
        data.w.extend(self.w);
        data.cospan_action.extend(self.cospan_action);
        data.u.extend(self.u);
        data
    }
}

fn search_actions(d: &SquaresCat, mode: CompletionMode, mut data: CompletionData) -> CompletionData {
    let v = d.v();
    for m in span_morphisms(d) {
        let (Some(s1), Some(s2)) = (data.span_complete.get(&m.src), data.span_complete.get(&m.dst))
        else {
            continue;
        };
        let found = d.squares_with_top(s1.bottom).into_iter().find(|f| {
            f.left == m.c && f.bottom == s2.bottom && v.comp(f.right, s1.right) == v.comp(s2.right, m.b)
        });
        if let Some(f) = found {
            data.span_action.insert(m, f.right);
        }
    }
    for s in d.squares() {
        let Some(s0) = data.span_complete.get(&span_of(s)) else {
            continue;
        };
        let id_c = v.id(v.dst(s.left));
        let found = d
            .completions_of_span(s0.bottom, id_c)
            .into_iter()
            .find(|f| f.bottom == s.bottom && v.comp(f.right, s0.right) == s.right);
        if let Some(f) = found {
            data.w.insert(*s, f.right);
        }
    }
    if mode == CompletionMode::ProtoWaldhausen {
        return data;
    }
    for m in cospan_morphisms(d) {
        let (Some(s1), Some(s2)) = (
            data.cospan_complete.get(&m.src),
            data.cospan_complete.get(&m.dst),
        ) else {
            continue;
        };
        let found = d.squares_with_top(s1.top).into_iter().find(|f| {
            f.right == m.b && f.bottom == s2.top && v.comp(m.c, s1.left) == v.comp(s2.left, f.left)
        });
        if let Some(f) = found {
            data.cospan_action.insert(m, f.left);
        }
    }
    for s in d.squares() {
        let Some(s0) = data.cospan_complete.get(&cospan_of(s)) else {
            continue;
        };
        let id_b = v.id(v.src(s.right));
        let found = d.squares_with_top(s0.top).into_iter().find(|f| {
            f.right == id_b && f.bottom == s.top && v.comp(s.left, f.left) == s0.left
        });
        if let Some(f) = found {
            data.u.insert(*s, f.left);
        }
    }
    data
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, bad: impl Fn(&T) -> Option<String>) -> (bool, String) {
    for it in items {
        if let Some(msg) = bad(&it) {
            return (false, msg);
        }
    }
    (true, String::new())
}

fn span_name(d: &SquaresCat, s: &Span) -> String {
    format!("({}, {})", d.h().morphism_name(s.top), d.v().morphism_name(s.left))
}

fn cospan_name(d: &SquaresCat, s: &Cospan) -> String {
    format!("({}, {})", d.v().morphism_name(s.right), d.h().morphism_name(s.bottom))
}

/// Checks the section, functoriality and comparison conditions for spans,
/// and in stable mode also for cospans. Missing data is an error, failing
/// axioms are report items.
pub fn check_completion_axioms(
    d: &SquaresCat,
    comp: &CompletionData,
    mode: CompletionMode,
) -> Result<CheckReport> {
    let v = d.v();
    let title = match mode {
        CompletionMode::ProtoWaldhausen => "completion axioms (proto-Waldhausen)",
        CompletionMode::Stable => "completion axioms (stable)",
    };
    let mut rep = CheckReport::new(title);
    let all_spans = spans(d);
    for sp in &all_spans {
        if !comp.span_complete.contains_key(sp) {
            return Err(Error::IncompleteData(format!(
                "no completion supplied for span {}",
                span_name(d, sp)
            )));
        }
    }
    let (ok, msg) = first_failure(&all_spans, |sp| {
        let s = comp.span_complete[*sp];
        (s.top != sp.top || s.left != sp.left || !d.is_square(&s))
            .then(|| format!("span {}", span_name(d, sp)))
    });
    rep.push("span section", ok, msg);

    let smors = span_morphisms(d);
    for m in &smors {
        if !comp.span_action.contains_key(m) {
            return Err(Error::IncompleteData(format!(
                "no induced map for a morphism of spans {} -> {}",
                span_name(d, &m.src),
                span_name(d, &m.dst)
            )));
        }
    }
    let (ok, msg) = first_failure(&smors, |m| {
        let (s1, s2) = (comp.span_complete[&m.src], comp.span_complete[&m.dst]);
        let dm = comp.span_action[*m];
        let good = v.src(dm) == v.dst(s1.right)
            && v.dst(dm) == v.dst(s2.right)
            && d.has_square(s1.bottom, m.c, dm, s2.bottom)
            && v.comp(dm, s1.right) == v.comp(s2.right, m.b);
        (!good).then(|| format!("{} -> {}", span_name(d, &m.src), span_name(d, &m.dst)))
    });
    rep.push("span action shape", ok, msg);

    let (ok, msg) = first_failure(&all_spans, |sp| {
        let (a, b, c) = (v.id(d.h().src(sp.top)), v.id(d.h().dst(sp.top)), v.id(v.dst(sp.left)));
        let m = SpanMor { src: **sp, dst: **sp, a, b, c };
        let s = comp.span_complete[sp];
        (comp.span_action.get(&m) != Some(&v.id(v.dst(s.right)))).then(|| span_name(d, sp))
    });
    rep.push("span functoriality on identities", ok, msg);

    let mut by_src: HashMap<Span, Vec<&SpanMor>> = HashMap::new();
    for m in &smors {
        by_src.entry(m.src).or_default().push(m);
    }
    let (ok, msg) = first_failure(&smors, |m1| {
        for m2 in by_src.get(&m1.dst).into_iter().flatten() {
            let m = SpanMor {
                src: m1.src,
                dst: m2.dst,
                a: v.comp(m2.a, m1.a),
                b: v.comp(m2.b, m1.b),
                c: v.comp(m2.c, m1.c),
            };
            let lhs = comp.span_action.get(&m).copied();
            let rhs = v.comp(comp.span_action[*m2], comp.span_action[*m1]);
            if lhs != Some(rhs) {
                return Some(format!(
                    "{} -> {} -> {}",
                    span_name(d, &m1.src),
                    span_name(d, &m1.dst),
                    span_name(d, &m2.dst)
                ));
            }
        }
        None
    });
    rep.push("span functoriality on composites", ok, msg);

    for s in d.squares() {
        if !comp.w.contains_key(s) {
            return Err(Error::IncompleteData(format!(
                "no w component for square {}",
                d.square_name(s)
            )));
        }
    }
    let (ok, msg) = first_failure(d.squares(), |s| {
        let s0 = comp.span_complete[&span_of(s)];
        let w = comp.w[*s];
        let id_c = v.id(v.dst(s.left));
        let good = d.has_square(s0.bottom, id_c, w, s.bottom) && v.comp(w, s0.right) == s.right;
        (!good).then(|| d.square_name(s))
    });
    rep.push("w shape", ok, msg);

    let sqmors = square_morphisms(d);
    let (ok, msg) = first_failure(&sqmors, |m| {
        let d0 = comp.span_action[&m.span_part()];
        let lhs = v.comp(comp.w[&m.dst], d0);
        let rhs = v.comp(m.d, comp.w[&m.src]);
        (lhs != rhs).then(|| format!("{} -> {}", d.square_name(&m.src), d.square_name(&m.dst)))
    });
    rep.push("w naturality", ok, msg);

    if mode == CompletionMode::ProtoWaldhausen {
        return Ok(rep);
    }

    let all_cospans = cospans(d);
    for cs in &all_cospans {
        if !comp.cospan_complete.contains_key(cs) {
            return Err(Error::IncompleteData(format!(
                "no completion supplied for cospan {}",
                cospan_name(d, cs)
            )));
        }
    }
    let (ok, msg) = first_failure(&all_cospans, |cs| {
        let s = comp.cospan_complete[*cs];
        (s.right != cs.right || s.bottom != cs.bottom || !d.is_square(&s))
            .then(|| format!("cospan {}", cospan_name(d, cs)))
    });
    rep.push("cospan section", ok, msg);

    let cmors = cospan_morphisms(d);
    for m in &cmors {
        if !comp.cospan_action.contains_key(m) {
            return Err(Error::IncompleteData(format!(
                "no induced map for a morphism of cospans {} -> {}",
                cospan_name(d, &m.src),
                cospan_name(d, &m.dst)
            )));
        }
    }
    let (ok, msg) = first_failure(&cmors, |m| {
        let (s1, s2) = (comp.cospan_complete[&m.src], comp.cospan_complete[&m.dst]);
        let a = comp.cospan_action[*m];
        let good = v.src(a) == v.src(s1.left)
            && v.dst(a) == v.src(s2.left)
            && d.has_square(s1.top, a, m.b, s2.top)
            && v.comp(m.c, s1.left) == v.comp(s2.left, a);
        (!good).then(|| format!("{} -> {}", cospan_name(d, &m.src), cospan_name(d, &m.dst)))
    });
    rep.push("cospan action shape", ok, msg);

    let (ok, msg) = first_failure(&all_cospans, |cs| {
        let b = v.id(v.src(cs.right));
        let c = v.id(d.h().src(cs.bottom));
        let dd = v.id(v.dst(cs.right));
        let m = CospanMor { src: **cs, dst: **cs, b, c, d: dd };
        let s = comp.cospan_complete[cs];
        (comp.cospan_action.get(&m) != Some(&v.id(v.src(s.left)))).then(|| cospan_name(d, cs))
    });
    rep.push("cospan functoriality on identities", ok, msg);

    let mut by_src: HashMap<Cospan, Vec<&CospanMor>> = HashMap::new();
    for m in &cmors {
        by_src.entry(m.src).or_default().push(m);
    }
    let (ok, msg) = first_failure(&cmors, |m1| {
        for m2 in by_src.get(&m1.dst).into_iter().flatten() {
            let m = CospanMor {
                src: m1.src,
                dst: m2.dst,
                b: v.comp(m2.b, m1.b),
                c: v.comp(m2.c, m1.c),
                d: v.comp(m2.d, m1.d),
            };
            let lhs = comp.cospan_action.get(&m).copied();
            let rhs = v.comp(comp.cospan_action[*m2], comp.cospan_action[*m1]);
            if lhs != Some(rhs) {
                return Some(format!(
                    "{} -> {} -> {}",
                    cospan_name(d, &m1.src),
                    cospan_name(d, &m1.dst),
                    cospan_name(d, &m2.dst)
                ));
            }
        }
        None
    });
    rep.push("cospan functoriality on composites", ok, msg);

    for s in d.squares() {
        if !comp.u.contains_key(s) {
            return Err(Error::IncompleteData(format!(
                "no u component for square {}",
                d.square_name(s)
            )));
        }
    }
    let (ok, msg) = first_failure(d.squares(), |s| {
        let s0 = comp.cospan_complete[&cospan_of(s)];
        let u = comp.u[*s];
        let id_b = v.id(v.src(s.right));
        let good = d.has_square(s0.top, u, id_b, s.top) && v.comp(s.left, u) == s0.left;
        (!good).then(|| d.square_name(s))
    });
    rep.push("u shape", ok, msg);

    let (ok, msg) = first_failure(&sqmors, |m| {
        let a0 = comp.cospan_action[&m.cospan_part()];
        let lhs = v.comp(m.a, comp.u[&m.src]);
        let rhs = v.comp(comp.u[&m.dst], a0);
        (lhs != rhs).then(|| format!("{} -> {}", d.square_name(&m.src), d.square_name(&m.dst)))
    });
    rep.push("u naturality", ok, msg);

    let weq = weak_equivalences(d);
    let (ok, msg) = first_failure(d.squares(), |s| {
        let u = comp.u[*s];
        (!weq.is_vweq(u)).then(|| format!("{} at {}", v.morphism_name(u), d.square_name(s)))
    });
    rep.push("u components are weak equivalences", ok, msg);
    Ok(rep)
}

/// Stability, invertible vertical weak equivalences and flip closure.
pub fn check_isostable(d: &SquaresCat, comp: &CompletionData) -> Result<CheckReport> {
    let v = d.v();
    let mut rep = check_completion_axioms(d, comp, CompletionMode::Stable)?;
    rep.title = "isostable".into();
    let weq = weak_equivalences(d);
    let (ok, msg) = first_failure(weq.vweq.keys(), |u| {
        (!v.is_invertible(**u)).then(|| v.morphism_name(**u).to_string())
    });
    rep.push("vertical weak equivalences invertible", ok, msg);
    let (ok, msg) = first_failure(d.squares(), |s| {
        if !(weq.is_vweq(s.left) && weq.is_vweq(s.right)) {
            return None;
        }
        let (Some(gi), Some(hi)) = (v.inverse(s.left), v.inverse(s.right)) else {
            return Some(d.square_name(s));
        };
        (!d.has_square(s.bottom, gi, hi, s.top)).then(|| d.square_name(s))
    });
    rep.push("flip closure", ok, msg);
    Ok(rep)
}
