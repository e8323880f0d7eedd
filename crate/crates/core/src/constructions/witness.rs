use super::shape::{Cell, Diagram, Shape, ShapeCat, ShapeKind};
use crate::catcore::{
    check_functor_equivalence, validate_functor, validate_nat_trans, Functor, MorId, NatTrans,
};
use crate::double::{weak_equivalences, CompletionData, Cospan, CospanMor, Span, SpanMor, SquaresCat};
use crate::error::{Error, Result};
use crate::report::CheckReport;

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Chains `O ↣ A_1 ↣ ⋯ ↣ A_n`.
    H,
    /// Chains `A_1 ↠ ⋯ ↠ A_n ↠ O`.
    V,
}

fn cell_with_bottom_right(shape: &Shape, k: usize) -> Option<Cell> {
    shape.cells.iter().copied().find(|c| shape.h_edges[c.bottom].1 == k)
}

fn cell_with_top_left(shape: &Shape, k: usize) -> Option<Cell> {
    shape.cells.iter().copied().find(|c| shape.h_edges[c.top].0 == k)
}

fn missing(d: &SquaresCat, what: &str, h: MorId, v: MorId) -> Error {
    Error::IncompleteData(format!(
        "no {what} for ({}, {})",
        d.h().morphism_name(h),
        d.v().morphism_name(v)
    ))
}

/// Fills every unset node by successive span completions.
fn fill_spans(d: &SquaresCat, comp: &CompletionData, shape: &Shape, x: &mut Diagram) -> Result<Vec<bool>> {
    let mut filled = vec![false; x.objs.len()];
    for &k in shape.order() {
        if x.objs[k] != UNSET {
            continue;
        }
        filled[k] = true;
        if let Some(c) = cell_with_bottom_right(shape, k) {
            let span = Span { top: x.h[c.top], left: x.v[c.left] };
            let s = comp
                .span_complete
                .get(&span)
                .ok_or_else(|| missing(d, "span completion", span.top, span.left))?;
            x.objs[k] = d.v().dst(s.right);
            x.v[c.right] = s.right;
            x.h[c.bottom] = s.bottom;
        } else if shape.zero[k] {
            x.objs[k] = d.o();
            if let Some(e) = shape.v_edge_into(k) {
                x.v[e] = d.zero_v(x.objs[shape.v_edges[e].0]);
            }
            if let Some(e) = shape.h_edge_into(k) {
                x.h[e] = d.h().id(d.o());
            }
        } else {
            return Err(Error::Invalid(format!("node {:?} cannot be filled", shape.positions[k])));
        }
    }
    Ok(filled)
}

/// Extends a transformation known on the unfilled nodes through span
/// actions.
fn extend_spans(
    d: &SquaresCat,
    comp: &CompletionData,
    shape: &Shape,
    x: &Diagram,
    y: &Diagram,
    filled: &[bool],
    comps: &mut [MorId],
) -> Result<()> {
    for &k in shape.order() {
        if !filled[k] {
            continue;
        }
        comps[k] = match cell_with_bottom_right(shape, k) {
            Some(c) => {
                let tl = shape.h_edges[c.top].0;
                let tr = shape.h_edges[c.top].1;
                let bl = shape.h_edges[c.bottom].0;
                let m = SpanMor {
                    src: Span { top: x.h[c.top], left: x.v[c.left] },
                    dst: Span { top: y.h[c.top], left: y.v[c.left] },
                    a: comps[tl],
                    b: comps[tr],
                    c: comps[bl],
                };
                *comp
                    .span_action
                    .get(&m)
                    .ok_or_else(|| Error::IncompleteData("span morphism without an induced map".into()))?
            }
            None => d.v().id(d.o()),
        };
    }
    Ok(())
}

/// Components `F U X ⇒ X` built from span actions followed by `w`.
fn tau_spans(
    d: &SquaresCat,
    comp: &CompletionData,
    shape: &Shape,
    fux: &Diagram,
    x: &Diagram,
    filled: &[bool],
) -> Result<Vec<MorId>> {
    let mut comps: Vec<MorId> = x.objs.iter().map(|&o| d.v().id(o)).collect();
    for &k in shape.order() {
        if !filled[k] {
            continue;
        }
        let Some(c) = cell_with_bottom_right(shape, k) else {
            continue;
        };
        let tl = shape.h_edges[c.top].0;
        let tr = shape.h_edges[c.top].1;
        let bl = shape.h_edges[c.bottom].0;
        let m = SpanMor {
            src: Span { top: fux.h[c.top], left: fux.v[c.left] },
            dst: Span { top: x.h[c.top], left: x.v[c.left] },
            a: comps[tl],
            b: comps[tr],
            c: comps[bl],
        };
        let act = *comp
            .span_action
            .get(&m)
            .ok_or_else(|| Error::IncompleteData("span morphism without an induced map".into()))?;
        let sq = x.cell_square(&c);
        let w = *comp
            .w
            .get(&sq)
            .ok_or_else(|| Error::IncompleteData(format!("no w component for {}", d.square_name(&sq))))?;
        comps[k] = d.v().comp(w, act);
    }
    Ok(comps)
}

/// Fills every unset node by cospan completions, working backwards.
fn fill_cospans(d: &SquaresCat, comp: &CompletionData, shape: &Shape, x: &mut Diagram) -> Result<Vec<bool>> {
    let mut filled = vec![false; x.objs.len()];
    for &k in shape.order().iter().rev() {
        if x.objs[k] != UNSET {
            continue;
        }
        filled[k] = true;
        if shape.zero[k] {
            x.objs[k] = d.o();
            if let Some(e) = shape.h_edge_from(k) {
                x.h[e] = d.zero_h(x.objs[shape.h_edges[e].1]);
            }
            if let Some(e) = shape.v_edge_from(k) {
                x.v[e] = d.v().id(d.o());
            }
        } else if let Some(c) = cell_with_top_left(shape, k) {
            let cs = Cospan { right: x.v[c.right], bottom: x.h[c.bottom] };
            let s = comp.cospan_complete.get(&cs).ok_or_else(|| {
                Error::IncompleteData(format!(
                    "no cospan completion for ({}, {})",
                    d.v().morphism_name(cs.right),
                    d.h().morphism_name(cs.bottom)
                ))
            })?;
            x.objs[k] = d.h().src(s.top);
            x.h[c.top] = s.top;
            x.v[c.left] = s.left;
        } else {
            return Err(Error::Invalid(format!("node {:?} cannot be filled", shape.positions[k])));
        }
    }
    Ok(filled)
}

fn extend_cospans(
    d: &SquaresCat,
    comp: &CompletionData,
    shape: &Shape,
    x: &Diagram,
    y: &Diagram,
    filled: &[bool],
    comps: &mut [MorId],
) -> Result<()> {
    for &k in shape.order().iter().rev() {
        if !filled[k] {
            continue;
        }
        comps[k] = match cell_with_top_left(shape, k).filter(|_| !shape.zero[k]) {
            Some(c) => {
                let tr = shape.h_edges[c.top].1;
                let bl = shape.h_edges[c.bottom].0;
                let br = shape.h_edges[c.bottom].1;
                let m = CospanMor {
                    src: Cospan { right: x.v[c.right], bottom: x.h[c.bottom] },
                    dst: Cospan { right: y.v[c.right], bottom: y.h[c.bottom] },
                    b: comps[tr],
                    c: comps[bl],
                    d: comps[br],
                };
                *comp
                    .cospan_action
                    .get(&m)
                    .ok_or_else(|| Error::IncompleteData("cospan morphism without an induced map".into()))?
            }
            None => d.v().id(d.o()),
        };
    }
    Ok(())
}

fn eta_cospans(
    d: &SquaresCat,
    comp: &CompletionData,
    shape: &Shape,
    gux: &Diagram,
    x: &Diagram,
    filled: &[bool],
) -> Result<Vec<MorId>> {
    let mut comps: Vec<MorId> = x.objs.iter().map(|&o| d.v().id(o)).collect();
    for &k in shape.order().iter().rev() {
        if !filled[k] || shape.zero[k] {
            continue;
        }
        let Some(c) = cell_with_top_left(shape, k) else {
            continue;
        };
        let tr = shape.h_edges[c.top].1;
        let bl = shape.h_edges[c.bottom].0;
        let br = shape.h_edges[c.bottom].1;
        let m = CospanMor {
            src: Cospan { right: gux.v[c.right], bottom: gux.h[c.bottom] },
            dst: Cospan { right: x.v[c.right], bottom: x.h[c.bottom] },
            b: comps[tr],
            c: comps[bl],
            d: comps[br],
        };
        let act = *comp
            .cospan_action
            .get(&m)
            .ok_or_else(|| Error::IncompleteData("cospan morphism without an induced map".into()))?;
        let sq = x.cell_square(&c);
        let u = *comp
            .u
            .get(&sq)
            .ok_or_else(|| Error::IncompleteData(format!("no u component for {}", d.square_name(&sq))))?;
        comps[k] = d.v().comp(u, act);
    }
    Ok(comps)
}

/// A partial diagram of `shape` with the nodes given by `pos` copied from
/// `x` (a diagram of `from`).
fn seed(from: &Shape, x: &Diagram, shape: &Shape, known: impl Fn((usize, usize)) -> Option<(usize, usize)>) -> Diagram {
    let mut y = Diagram {
        objs: vec![UNSET; shape.positions.len()],
        h: vec![UNSET; shape.h_edges.len()],
        v: vec![UNSET; shape.v_edges.len()],
    };
    for (k, &p) in shape.positions.iter().enumerate() {
        if let Some(k2) = known(p).and_then(|q| from.node(q)) {
            y.objs[k] = x.objs[k2];
        }
    }
    for (e, &(a, b)) in shape.h_edges.iter().enumerate() {
        if let (Some(a2), Some(b2)) = (
            known(shape.positions[a]).and_then(|q| from.node(q)),
            known(shape.positions[b]).and_then(|q| from.node(q)),
        ) {
            y.h[e] = from.h_path(a2, b2).first().map(|&e2| x.h[e2]).unwrap_or(UNSET);
        }
    }
    for (e, &(a, b)) in shape.v_edges.iter().enumerate() {
        if let (Some(a2), Some(b2)) = (
            known(shape.positions[a]).and_then(|q| from.node(q)),
            known(shape.positions[b]).and_then(|q| from.node(q)),
        ) {
            y.v[e] = from.v_path(a2, b2).first().map(|&e2| x.v[e2]).unwrap_or(UNSET);
        }
    }
    y
}

fn seed_comps(from: &Shape, comps: &[MorId], shape: &Shape, known: impl Fn((usize, usize)) -> Option<(usize, usize)>) -> Vec<MorId> {
    shape
        .positions
        .iter()
        .map(|&p| known(p).and_then(|q| from.node(q)).map_or(UNSET, |k| comps[k]))
        .collect()
}

/// A section `small → big` that copies the known part and fills the rest;
/// returns the functor and, per object of `small`, the filled flags.
#[allow(clippy::type_complexity)]
fn section(
    d: &SquaresCat,
    comp: &CompletionData,
    small: &ShapeCat,
    big: &ShapeCat,
    known: impl Fn((usize, usize)) -> Option<(usize, usize)> + Copy,
    spans: bool,
) -> Result<(Option<Functor>, Vec<Diagram>, Vec<Vec<bool>>)> {
    let mut images = Vec::new();
    let mut flags = Vec::new();
    for x in &small.diagrams {
        let mut y = seed(&small.shape, x, &big.shape, known);
        let f = if spans {
            fill_spans(d, comp, &big.shape, &mut y)?
        } else {
            fill_cospans(d, comp, &big.shape, &mut y)?
        };
        images.push(y);
        flags.push(f);
    }
    let Some(obj_map) = images.iter().map(|y| big.find(y)).collect::<Option<Vec<_>>>() else {
        return Ok((None, images, flags));
    };
    let mut mor_map = Vec::new();
    for m in small.cat.morphisms() {
        let (s, t) = (small.cat.src(m), small.cat.dst(m));
        let mut comps = seed_comps(&small.shape, &small.components[m], &big.shape, known);
        if spans {
            extend_spans(d, comp, &big.shape, &images[s], &images[t], &flags[s], &mut comps)?;
        } else {
            extend_cospans(d, comp, &big.shape, &images[s], &images[t], &flags[s], &mut comps)?;
        }
        match big.find_morphism(obj_map[s], obj_map[t], &comps) {
            Some(mm) => mor_map.push(mm),
            None => return Ok((None, images, flags)),
        }
    }
    Ok((
        Some(Functor {
            source: small.cat.clone(),
            target: big.cat.clone(),
            obj_map,
            mor_map,
        }),
        images,
        flags,
    ))
}

fn push_functor(r: &mut CheckReport, label: &str, f: &Option<Functor>) -> bool {
    match f {
        Some(f) => {
            let v = validate_functor(f);
            let ok = v.passed();
            r.push(label, ok, if ok { "valid".to_string() } else { v.to_string() });
            ok
        }
        None => {
            r.push(label, false, "does not land in the target category");
            false
        }
    }
}

/// The transformation with the given components, validated.
fn push_transformation(
    r: &mut CheckReport,
    label: &str,
    cat: &ShapeCat,
    source: Functor,
    target: Functor,
    comps: Vec<Option<MorId>>,
) -> Option<NatTrans> {
    let Some(components) = comps.into_iter().collect::<Option<Vec<_>>>() else {
        r.push(label, false, "a component is not a morphism of the diagram category");
        return None;
    };
    let nt = NatTrans { source, target, components };
    let v = validate_nat_trans(&nt);
    r.push(label, v.passed(), format!("{} components; {}", cat.diagrams.len(), if v.passed() { "natural".into() } else { v.to_string() }));
    Some(nt)
}

/// Sections and natural transformations for `T⁺_n → T_n` and
/// `T⁺_n → S□_n`.
pub fn comparison_witnesses(d: &SquaresCat, comp: &CompletionData, n: usize) -> Result<CheckReport> {
    let t = ShapeCat::build(d, Shape::new(ShapeKind::Chain, n), None);
    let tp = ShapeCat::build(d, Shape::new(ShapeKind::TPlus, n), None);
    let s = ShapeCat::build(d, Shape::new(ShapeKind::Staircase, n), None);
    let mut r = CheckReport::new(format!("comparison witnesses at n={n}"));
    r.note(format!(
        "{} chains, {} extended diagrams, {} staircases",
        t.diagrams.len(),
        tp.diagrams.len(),
        s.diagrams.len()
    ));

    let u = tp.pullback_functor(d, &t, |(_, j)| (0, j + 1));
    let u_ok = push_functor(&mut r, "U: T+ -> T (top row)", &u);
    let known = |(p, q): (usize, usize)| (p == 0).then(|| (0, q - 1));
    let (f, _, flags) = section(d, comp, &t, &tp, known, true)?;
    let f_ok = push_functor(&mut r, "F: T -> T+ (span completions)", &f);
    if let (true, true, Some(u), Some(f)) = (u_ok, f_ok, u.as_ref(), f.as_ref()) {
        let uf = f.then(u);
        r.push("U F = id", uf.same_maps(&Functor::identity(t.cat.clone())), "");
        let fu = u.then(f);
        let mut comps = Vec::new();
        let mut identities = 0;
        for (xi, x) in tp.diagrams.iter().enumerate() {
            let fux = &tp.diagrams[fu.ob(xi)];
            let c = tau_spans(d, comp, &tp.shape, fux, x, &flags[u.ob(xi)])?;
            if c.iter().all(|&m| d.v().is_identity(m)) {
                identities += 1;
            }
            comps.push(tp.find_morphism(fu.ob(xi), xi, &c));
        }
        push_transformation(&mut r, "tau: F U => id natural", &tp, fu, Functor::identity(tp.cat.clone()), comps);
        r.push(
            "tau components",
            true,
            format!("{identities} of {} components are identities", tp.diagrams.len()),
        );
    }

    let u2 = tp.pullback_functor(d, &s, |(p, q)| (p + 1, q + 1));
    let u2_ok = push_functor(&mut r, "U': T+ -> S (delete top row)", &u2);
    let f2 = s.pullback_functor(d, &tp, |(p, q)| (p.saturating_sub(1), q - 1));
    let f2_ok = push_functor(&mut r, "F': S -> T+ (repeat top row)", &f2);
    if let (true, true, Some(u2), Some(f2)) = (u2_ok, f2_ok, u2.as_ref(), f2.as_ref()) {
        let uf = f2.then(u2);
        r.push("U' F' = id", uf.same_maps(&Functor::identity(s.cat.clone())), "");
        let fu = u2.then(f2);
        let mut comps = Vec::new();
        for (xi, x) in tp.diagrams.iter().enumerate() {
            let c: Vec<MorId> = tp
                .shape
                .positions
                .iter()
                .enumerate()
                .map(|(k, &(p, _))| match (p, tp.shape.v_edge_from(k)) {
                    (0, Some(e)) => x.v[e],
                    _ => d.v().id(x.objs[k]),
                })
                .collect();
            comps.push(tp.find_morphism(xi, fu.ob(xi), &c));
        }
        push_transformation(&mut r, "tau': id => F' U' natural", &tp, Functor::identity(tp.cat.clone()), fu, comps);
    }
    Ok(r)
}

/// A level of the horizontal or vertical chain construction together with
/// its modified face map.
#[derive(Debug, Clone)]
pub struct HvLevel {
    pub direction: Direction,
    pub level: ShapeCat,
    pub lower: ShapeCat,
    /// `d_0` for `H`, `d_n` for `V`.
    pub modified_face: Functor,
}

fn hv_shape(dir: Direction, n: usize) -> Shape {
    match dir {
        Direction::H => Shape::new(ShapeKind::TopRow, n),
        Direction::V => Shape::new(ShapeKind::RightColumn, n),
    }
}

/// `H_n` with `d_0`, or `V_n` with `d_n`, both computed by completing
/// spans or cospans inductively.
pub fn hv_level(d: &SquaresCat, comp: &CompletionData, n: usize, dir: Direction) -> Result<HvLevel> {
    if n == 0 {
        return Err(Error::Precondition("the modified face needs n ≥ 1".into()));
    }
    let w = weak_equivalences(d);
    let level = ShapeCat::build(d, hv_shape(dir, n), Some(&w));
    let lower = ShapeCat::build(d, hv_shape(dir, n - 1), Some(&w));
    let s = ShapeCat::from_diagrams(d, Shape::new(ShapeKind::Staircase, n), Vec::new(), None);
    let mut obj_map = Vec::new();
    let mut filled_all = Vec::new();
    let mut stairs = Vec::new();
    for x in &level.diagrams {
        let mut y = seed(&level.shape, x, &s.shape, Some);
        let filled = match dir {
            Direction::H => fill_spans(d, comp, &s.shape, &mut y)?,
            Direction::V => fill_cospans(d, comp, &s.shape, &mut y)?,
        };
        let face = restrict_face(d, &s.shape, &y, &lower.shape, dir, n);
        let o = lower.find(&face).ok_or_else(|| {
            Error::Invalid(format!("modified face of {} is not a chain", level.cat.object_name(obj_map.len())))
        })?;
        obj_map.push(o);
        filled_all.push(filled);
        stairs.push(y);
    }
    let mut mor_map = Vec::new();
    for m in level.cat.morphisms() {
        let (a, b) = (level.cat.src(m), level.cat.dst(m));
        let mut comps = seed_comps(&level.shape, &level.components[m], &s.shape, Some);
        match dir {
            Direction::H => extend_spans(d, comp, &s.shape, &stairs[a], &stairs[b], &filled_all[a], &mut comps)?,
            Direction::V => extend_cospans(d, comp, &s.shape, &stairs[a], &stairs[b], &filled_all[a], &mut comps)?,
        }
        let restricted: Vec<MorId> = lower
            .shape
            .positions
            .iter()
            .map(|&p| comps[s.shape.node(face_position(dir, n, p)).unwrap()])
            .collect();
        let mm = lower.find_morphism(obj_map[a], obj_map[b], &restricted).ok_or_else(|| {
            Error::Invalid(format!(
                "modified face of {} is not a weak equivalence of chains",
                level.cat.morphism_name(m)
            ))
        })?;
        mor_map.push(mm);
    }
    let modified_face = Functor {
        source: level.cat.clone(),
        target: lower.cat.clone(),
        obj_map,
        mor_map,
    };
    Ok(HvLevel { direction: dir, level, lower, modified_face })
}

/// Where a node of the lower chain sits in the filled staircase.
fn face_position(dir: Direction, n: usize, (p, q): (usize, usize)) -> (usize, usize) {
    match dir {
        Direction::H => (1, q + 1),
        Direction::V => (p, n - 1),
    }
}

fn restrict_face(d: &SquaresCat, s: &Shape, y: &Diagram, lower: &Shape, dir: Direction, n: usize) -> Diagram {
    super::shape::reindex(d, s, y, lower, &|p| face_position(dir, n, p))
}

/// The forgetful functor from staircases to their top row (`H`) or
/// rightmost column (`V`), its section, and the comparison transformation.
pub fn forgetful_equivalence(d: &SquaresCat, comp: &CompletionData, n: usize, target: Direction) -> Result<CheckReport> {
    let w = weak_equivalences(d);
    let s = ShapeCat::build(d, Shape::new(ShapeKind::Staircase, n), None);
    let hv = ShapeCat::build(d, hv_shape(target, n), Some(&w));
    let name = match target {
        Direction::H => "H",
        Direction::V => "V",
    };
    let mut r = CheckReport::new(format!("forgetful functor S_{n} -> {name}_{n}"));
    r.note(format!("{} staircases, {} chains", s.diagrams.len(), hv.diagrams.len()));
    let u = s.pullback_functor(d, &hv, |p| p);
    if !push_functor(&mut r, "U is a functor", &u) {
        return Ok(r);
    }
    let u = u.unwrap();
    let eq = check_functor_equivalence(&u);
    r.push("U is an equivalence", eq.is_equivalence(), eq.to_string());
    r.note(format!("U is an isomorphism of categories: {}", u.is_isomorphism()));
    let spans = target == Direction::H;
    let (f, _, flags) = section(d, comp, &hv, &s, |p| Some(p).filter(|&q| hv.shape.node(q).is_some()), spans)?;
    if !push_functor(&mut r, "section is a functor", &f) {
        return Ok(r);
    }
    let f = f.unwrap();
    r.push("U section = id", f.then(&u).same_maps(&Functor::identity(hv.cat.clone())), "");
    let fu = u.then(&f);
    let mut comps = Vec::new();
    for (xi, x) in s.diagrams.iter().enumerate() {
        let fux = &s.diagrams[fu.ob(xi)];
        let c = if spans {
            tau_spans(d, comp, &s.shape, fux, x, &flags[u.ob(xi)])?
        } else {
            eta_cospans(d, comp, &s.shape, fux, x, &flags[u.ob(xi)])?
        };
        comps.push(s.find_morphism(fu.ob(xi), xi, &c));
    }
    if let Some(nt) = push_transformation(&mut r, "comparison transformation natural", &s, fu, Functor::identity(s.cat.clone()), comps) {
        let inv = nt.components.iter().all(|&m| s.cat.is_invertible(m));
        r.push("comparison transformation invertible", inv, "");
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::finset_squares;

    #[test]
    fn finset_comparisons() {
        let (d, comp) = finset_squares(2);
        for n in 1..=2 {
            let r = comparison_witnesses(&d, &comp, n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn finset_forgetful() {
        let (d, comp) = finset_squares(2);
        for dir in [Direction::H, Direction::V] {
            let r = forgetful_equivalence(&d, &comp, 2, dir).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn modified_faces_are_functors() {
        let (d, comp) = finset_squares(2);
        for dir in [Direction::H, Direction::V] {
            let hv = hv_level(&d, &comp, 2, dir).unwrap();
            assert!(validate_functor(&hv.modified_face).passed());
        }
        assert!(hv_level(&d, &comp, 0, Direction::H).is_err());
    }
}
