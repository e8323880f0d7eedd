//! Finite categories, functors and natural transformations.
//!
//! A [`FinCat`] is stored as explicit tables. Nothing is quotiented: objects
//! and morphisms are dense indices with display names, and every question
//! about isomorphism is answered by search.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::{ValidationReport, Violation};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismRec {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
}

#[derive(Debug, Clone, Default)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismRec>,
    identities: Vec<Option<MorId>>,
    comp: HashMap<(MorId, MorId), MorId>,
    outgoing: Vec<Vec<MorId>>,
    incoming: Vec<Vec<MorId>>,
    hom: HashMap<(ObjId, ObjId), Vec<MorId>>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

impl FinCat {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> ObjId {
        let name = name.into();
        let id = self.objects.len();
        self.obj_index.entry(name.clone()).or_insert(id);
        self.objects.push(name);
        self.identities.push(None);
        self.outgoing.push(Vec::new());
        self.incoming.push(Vec::new());
        id
    }

    /// Adds a morphism. Out-of-range endpoints are kept and reported by
    /// [`validate_category`].
    pub fn add_morphism(&mut self, name: impl Into<String>, src: ObjId, dst: ObjId) -> MorId {
        let name = name.into();
        let id = self.morphisms.len();
        self.mor_index.entry(name.clone()).or_insert(id);
        self.morphisms.push(MorphismRec { name, src, dst });
        if src < self.objects.len() && dst < self.objects.len() {
            self.outgoing[src].push(id);
            self.incoming[dst].push(id);
            self.hom.entry((src, dst)).or_default().push(id);
        }
        id
    }

    pub fn set_identity(&mut self, obj: ObjId, mor: MorId) {
        if obj < self.identities.len() {
            self.identities[obj] = Some(mor);
        }
    }

    /// Records `g ∘ f = gf`.
    pub fn set_composite(&mut self, g: MorId, f: MorId, gf: MorId) {
        self.comp.insert((g, f), gf);
    }

    pub fn remove_composite(&mut self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp.remove(&(g, f))
    }

    /// Adds an identity morphism named `name` for `obj`.
    pub fn add_identity(&mut self, obj: ObjId, name: impl Into<String>) -> MorId {
        let m = self.add_morphism(name, obj, obj);
        self.set_identity(obj, m);
        m
    }

    /// Fills in `id ∘ f = f` and `f ∘ id = f` for every morphism.
    pub fn fill_unit_composites(&mut self) {
        for f in 0..self.morphisms.len() {
            let MorphismRec { src, dst, .. } = self.morphisms[f];
            if let Some(Some(i)) = self.identities.get(dst) {
                self.comp.insert((*i, f), f);
            }
            if let Some(Some(i)) = self.identities.get(src) {
                self.comp.insert((f, *i), f);
            }
        }
    }

    /// Fills the composition table from a function on composable pairs.
    pub fn fill_composites(&mut self, mut compose: impl FnMut(&FinCat, MorId, MorId) -> MorId) {
        let mut table = Vec::new();
        for f in 0..self.morphisms.len() {
            let dst = self.morphisms[f].dst;
            if dst >= self.objects.len() {
                continue;
            }
            for &g in &self.outgoing[dst] {
                table.push((g, f, compose(self, g, f)));
            }
        }
        for (g, f, gf) in table {
            self.comp.insert((g, f), gf);
        }
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<MorId> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn morphism(&self, m: MorId) -> &MorphismRec {
        &self.morphisms[m]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m].name
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m].src
    }

    pub fn dst(&self, m: MorId) -> ObjId {
        self.morphisms[m].dst
    }

    pub fn identity(&self, o: ObjId) -> Option<MorId> {
        self.identities.get(o).copied().flatten()
    }

    /// Identity on `o`. Panics if the category has none recorded.
    pub fn id(&self, o: ObjId) -> MorId {
        self.identity(o)
            .unwrap_or_else(|| panic!("object {} has no identity", self.objects[o]))
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity(self.src(m)) == Some(m)
    }

    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp.get(&(g, f)).copied()
    }

    /// `g ∘ f`, panicking on a missing composite.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| {
            panic!(
                "missing composite ({}, {})",
                self.morphisms[g].name, self.morphisms[f].name
            )
        })
    }

    /// Composite of a path listed in order of traversal.
    pub fn comp_path(&self, path: &[MorId]) -> Option<MorId> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &m| self.compose(m, acc))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.hom.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn out_of(&self, a: ObjId) -> &[MorId] {
        &self.outgoing[a]
    }

    pub fn into_obj(&self, b: ObjId) -> &[MorId] {
        &self.incoming[b]
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn composition_entries(&self) -> Vec<(MorId, MorId, MorId)> {
        let mut v: Vec<_> = self.comp.iter().map(|(&(g, f), &gf)| (g, f, gf)).collect();
        v.sort_unstable();
        v
    }

    /// Two-sided inverse of `m`, if any.
    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let (a, b) = (self.src(m), self.dst(m));
        let (ia, ib) = (self.identity(a)?, self.identity(b)?);
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&n| self.compose(n, m) == Some(ia) && self.compose(m, n) == Some(ib))
    }

    pub fn is_invertible(&self, m: MorId) -> bool {
        self.inverse(m).is_some()
    }

    /// Same objects, reversed morphisms. Morphism ids are preserved.
    pub fn opposite(&self) -> FinCat {
        self.opposite_named(|_, n| n.to_string())
    }

    /// As [`FinCat::opposite`] with morphisms renamed by `name`.
    pub fn opposite_named(&self, name: impl Fn(MorId, &str) -> String) -> FinCat {
        let mut op = FinCat::new();
        for o in &self.objects {
            op.add_object(o.clone());
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            op.add_morphism(name(i, &m.name), m.dst, m.src);
        }
        for (o, i) in self.identities.iter().enumerate() {
            if let Some(i) = i {
                op.set_identity(o, *i);
            }
        }
        for (&(g, f), &gf) in &self.comp {
            op.set_composite(f, g, gf);
        }
        op
    }
}

/// Checks every invariant of a finite category.
pub fn validate_category(c: &FinCat) -> ValidationReport {
    let mut v = Vec::new();
    let n_obj = c.n_objects();
    let n_mor = c.n_morphisms();
    let mname = |m: MorId| -> String {
        if m < n_mor {
            c.morphisms[m].name.clone()
        } else {
            format!("#{m}")
        }
    };
    let mut seen = BTreeSet::new();
    for o in &c.objects {
        if !seen.insert(o) {
            v.push(Violation::new("duplicate object", o.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    for m in &c.morphisms {
        if !seen.insert(&m.name) {
            v.push(Violation::new("duplicate morphism", m.name.clone()));
        }
        if m.src >= n_obj || m.dst >= n_obj {
            v.push(Violation::new("dangling endpoint", m.name.clone()));
        }
    }
    if !v.is_empty() {
        return ValidationReport::new("category", v);
    }
    for o in c.objects() {
        match c.identity(o) {
            None => v.push(Violation::new("missing identity", c.objects[o].clone())),
            Some(i) if i >= n_mor || c.src(i) != o || c.dst(i) != o => {
                v.push(Violation::new(
                    "identity endpoints",
                    format!("{} for {}", mname(i), c.objects[o]),
                ))
            }
            _ => {}
        }
    }
    for (&(g, f), &gf) in &c.comp {
        if g >= n_mor || f >= n_mor || gf >= n_mor {
            v.push(Violation::new(
                "dangling composite",
                format!("({},{})", mname(g), mname(f)),
            ));
            continue;
        }
        if c.dst(f) != c.src(g) {
            v.push(Violation::new(
                "composite of non-composable pair",
                format!("({},{})", mname(g), mname(f)),
            ));
        } else if c.src(gf) != c.src(f) || c.dst(gf) != c.dst(g) {
            v.push(Violation::new(
                "composite endpoints",
                format!("({},{}) = {}", mname(g), mname(f), mname(gf)),
            ));
        }
    }
    if !v.is_empty() {
        return ValidationReport::new("category", v);
    }
    for f in c.morphisms() {
        for &g in c.out_of(c.dst(f)) {
            if c.compose(g, f).is_none() {
                v.push(Violation::new(
                    "missing composite",
                    format!("({},{})", mname(g), mname(f)),
                ));
            }
        }
        let (s, t) = (c.src(f), c.dst(f));
        if let (Some(is), Some(it)) = (c.identity(s), c.identity(t)) {
            if c.compose(it, f) != Some(f) || c.compose(f, is) != Some(f) {
                v.push(Violation::new("unit law", mname(f)));
            }
        }
    }
    if !v.is_empty() {
        return ValidationReport::new("category", v);
    }
    for f in c.morphisms() {
        for &g in c.out_of(c.dst(f)) {
            let gf = c.comp(g, f);
            for &h in c.out_of(c.dst(g)) {
                let hg = c.comp(h, g);
                if c.compose(h, gf) != c.compose(hg, f) {
                    v.push(Violation::new(
                        "associativity",
                        format!("({},{},{})", mname(h), mname(g), mname(f)),
                    ));
                }
            }
        }
    }
    ValidationReport::new("category", v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidVerdict {
    pub is_groupoid: bool,
    /// A morphism without a two-sided inverse.
    pub witness: Option<MorId>,
}

pub fn is_groupoid(c: &FinCat) -> GroupoidVerdict {
    let witness = c.morphisms().find(|&m| !c.is_invertible(m));
    GroupoidVerdict {
        is_groupoid: witness.is_none(),
        witness,
    }
}

#[derive(Debug, Clone)]
pub struct Functor {
    pub source: Arc<FinCat>,
    pub target: Arc<FinCat>,
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

impl Functor {
    pub fn identity(c: Arc<FinCat>) -> Functor {
        Functor {
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
            source: c.clone(),
            target: c,
        }
    }

    pub fn ob(&self, o: ObjId) -> ObjId {
        self.obj_map[o]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            obj_map: self.obj_map.iter().map(|&o| other.obj_map[o]).collect(),
            mor_map: self.mor_map.iter().map(|&m| other.mor_map[m]).collect(),
        }
    }

    /// Equal as maps (source and target are compared by identity of tables).
    pub fn same_maps(&self, other: &Functor) -> bool {
        self.obj_map == other.obj_map && self.mor_map == other.mor_map
    }

    pub fn is_isomorphism(&self) -> bool {
        let bij = |map: &[usize], n: usize| {
            map.len() == n && {
                let mut seen = vec![false; n];
                map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
            }
        };
        bij(&self.obj_map, self.target.n_objects()) && bij(&self.mor_map, self.target.n_morphisms())
    }
}

pub fn validate_functor(f: &Functor) -> ValidationReport {
    let (s, t) = (&*f.source, &*f.target);
    let mut v = Vec::new();
    if f.obj_map.len() != s.n_objects() || f.mor_map.len() != s.n_morphisms() {
        v.push(Violation::new("shape", "map lengths do not match the source"));
        return ValidationReport::new("functor", v);
    }
    if f.obj_map.iter().any(|&o| o >= t.n_objects()) || f.mor_map.iter().any(|&m| m >= t.n_morphisms()) {
        v.push(Violation::new("shape", "map values out of range"));
        return ValidationReport::new("functor", v);
    }
    for m in s.morphisms() {
        let fm = f.mor(m);
        if t.src(fm) != f.ob(s.src(m)) || t.dst(fm) != f.ob(s.dst(m)) {
            v.push(Violation::new("endpoints", s.morphism_name(m).to_string()));
        }
    }
    for o in s.objects() {
        if t.identity(f.ob(o)) != s.identity(o).map(|i| f.mor(i)) {
            v.push(Violation::new("identity", s.object_name(o).to_string()));
        }
    }
    for (g, h, gh) in s.composition_entries() {
        if t.compose(f.mor(g), f.mor(h)) != Some(f.mor(gh)) {
            v.push(Violation::new(
                "composite",
                format!("({},{})", s.morphism_name(g), s.morphism_name(h)),
            ));
        }
    }
    ValidationReport::new("functor", v)
}

#[derive(Debug, Clone)]
pub struct NatTrans {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<MorId>,
}

pub fn validate_nat_trans(n: &NatTrans) -> ValidationReport {
    let c = &*n.source.source;
    let e = &*n.source.target;
    let mut v = Vec::new();
    if n.components.len() != c.n_objects() {
        v.push(Violation::new("shape", "component count does not match"));
        return ValidationReport::new("natural transformation", v);
    }
    for o in c.objects() {
        let a = n.components[o];
        if e.src(a) != n.source.ob(o) || e.dst(a) != n.target.ob(o) {
            v.push(Violation::new("component endpoints", c.object_name(o).to_string()));
        }
    }
    if !v.is_empty() {
        return ValidationReport::new("natural transformation", v);
    }
    for m in c.morphisms() {
        let (a, b) = (c.src(m), c.dst(m));
        let lhs = e.compose(n.target.mor(m), n.components[a]);
        let rhs = e.compose(n.components[b], n.source.mor(m));
        if lhs.is_none() || lhs != rhs {
            v.push(Violation::new("naturality", c.morphism_name(m).to_string()));
        }
    }
    ValidationReport::new("natural transformation", v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
    /// Pair of source objects whose hom-sets are not in bijection.
    pub ff_witness: Option<(String, String)>,
    /// Target object not isomorphic to any image.
    pub es_witness: Option<String>,
}

impl EquivalenceReport {
    pub fn is_equivalence(&self) -> bool {
        self.fully_faithful && self.essentially_surjective
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fully faithful: {}, essentially surjective: {}, equivalence: {}",
            self.fully_faithful,
            self.essentially_surjective,
            self.is_equivalence()
        )?;
        if let Some((a, b)) = &self.ff_witness {
            write!(f, "; hom({a}, {b}) is not mapped bijectively")?;
        }
        if let Some(t) = &self.es_witness {
            write!(f, "; {t} is not isomorphic to an image")?;
        }
        Ok(())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Isomorphism classes of objects, as a representative per object.
pub fn iso_classes(c: &FinCat) -> Vec<ObjId> {
    let mut uf = UnionFind::new(c.n_objects());
    for m in c.morphisms() {
        let (a, b) = (c.src(m), c.dst(m));
        if a != b && uf.find(a) != uf.find(b) && c.is_invertible(m) {
            uf.union(a, b);
        }
    }
    c.objects().map(|o| uf.find(o)).collect()
}

pub fn check_functor_equivalence(f: &Functor) -> EquivalenceReport {
    let (s, t) = (&*f.source, &*f.target);
    let mut preimage: HashMap<ObjId, Vec<ObjId>> = HashMap::new();
    for o in s.objects() {
        preimage.entry(f.ob(o)).or_default().push(o);
    }
    let mut ff_witness = None;
    'outer: for a in s.objects() {
        let mut partners = BTreeSet::new();
        for &m in t.out_of(f.ob(a)) {
            if let Some(bs) = preimage.get(&t.dst(m)) {
                partners.extend(bs.iter().copied());
            }
        }
        for &m in s.out_of(a) {
            partners.insert(s.dst(m));
        }
        for b in partners {
            let source_hom = s.hom(a, b);
            let target_hom = t.hom(f.ob(a), f.ob(b));
            let mut images: Vec<MorId> = source_hom.iter().map(|&m| f.mor(m)).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != source_hom.len() || images.len() != target_hom.len() {
                ff_witness = Some((s.object_name(a).to_string(), s.object_name(b).to_string()));
                break 'outer;
            }
        }
    }
    let classes = iso_classes(t);
    let mut hit = vec![false; t.n_objects()];
    for o in s.objects() {
        hit[classes[f.ob(o)]] = true;
    }
    let es_witness = t
        .objects()
        .find(|&o| !hit[classes[o]])
        .map(|o| t.object_name(o).to_string());
    EquivalenceReport {
        fully_faithful: ff_witness.is_none(),
        essentially_surjective: es_witness.is_none(),
        ff_witness,
        es_witness,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PullbackMode {
    /// Every comparison morphism in the common target must be invertible.
    Groupoid,
    /// Non-invertible comparison morphisms are skipped.
    General,
}

/// The iso-comma category of a cospan `F: C → E ← D: G`.
#[derive(Debug, Clone)]
pub struct PseudoPullback {
    pub cat: Arc<FinCat>,
    pub p1: Functor,
    pub p2: Functor,
    /// Object `k` is the triple `(c, d, α)` with `α: F(c) → G(d)`.
    pub objects: Vec<(ObjId, ObjId, MorId)>,
    /// Morphism `k` is the pair `(p, q)`.
    pub morphisms: Vec<(MorId, MorId)>,
    obj_lookup: HashMap<(ObjId, ObjId, MorId), ObjId>,
    mor_lookup: HashMap<(ObjId, ObjId, MorId, MorId), MorId>,
}

impl PseudoPullback {
    pub fn object(&self, c: ObjId, d: ObjId, alpha: MorId) -> Option<ObjId> {
        self.obj_lookup.get(&(c, d, alpha)).copied()
    }

    pub fn morphism(&self, src: ObjId, dst: ObjId, p: MorId, q: MorId) -> Option<MorId> {
        self.mor_lookup.get(&(src, dst, p, q)).copied()
    }

    /// The functor `X → P` induced by `h: X → C`, `k: X → D` and components
    /// `theta(x): F(h x) → G(k x)`.
    pub fn induced_functor(
        &self,
        h: &Functor,
        k: &Functor,
        theta: impl Fn(ObjId) -> MorId,
    ) -> Result<Functor> {
        let x = h.source.clone();
        let mut obj_map = Vec::with_capacity(x.n_objects());
        for o in x.objects() {
            let key = (h.ob(o), k.ob(o), theta(o));
            let p = self.obj_lookup.get(&key).copied().ok_or_else(|| {
                Error::Invalid(format!("no pseudo-pullback object over {}", x.object_name(o)))
            })?;
            obj_map.push(p);
        }
        let mut mor_map = Vec::with_capacity(x.n_morphisms());
        for m in x.morphisms() {
            let key = (obj_map[x.src(m)], obj_map[x.dst(m)], h.mor(m), k.mor(m));
            let p = self.mor_lookup.get(&key).copied().ok_or_else(|| {
                Error::Invalid(format!(
                    "no pseudo-pullback morphism over {}",
                    x.morphism_name(m)
                ))
            })?;
            mor_map.push(p);
        }
        Ok(Functor {
            source: x,
            target: self.cat.clone(),
            obj_map,
            mor_map,
        })
    }

    /// The components `α` as a transformation `F∘p1 ⇒ G∘p2`.
    pub fn tautological(&self, f: &Functor, g: &Functor) -> NatTrans {
        NatTrans {
            source: self.p1.then(f),
            target: self.p2.then(g),
            components: self.objects.iter().map(|&(_, _, a)| a).collect(),
        }
    }
}

pub fn pseudo_pullback(f: &Functor, g: &Functor, mode: PullbackMode) -> Result<PseudoPullback> {
    let e = &*f.target;
    let (c, d) = (&*f.source, &*g.source);
    let mut cat = FinCat::new();
    let mut objects = Vec::new();
    let mut obj_lookup = HashMap::new();
    let mut by_cd: HashMap<(ObjId, ObjId), Vec<ObjId>> = HashMap::new();
    for x in c.objects() {
        for y in d.objects() {
            for &alpha in e.hom(f.ob(x), g.ob(y)) {
                if !e.is_invertible(alpha) {
                    if mode == PullbackMode::Groupoid {
                        return Err(Error::NotInvertible(e.morphism_name(alpha).to_string()));
                    }
                    continue;
                }
                let id = cat.add_object(format!(
                    "({},{},{})",
                    c.object_name(x),
                    d.object_name(y),
                    e.morphism_name(alpha)
                ));
                objects.push((x, y, alpha));
                obj_lookup.insert((x, y, alpha), id);
                by_cd.entry((x, y)).or_default().push(id);
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_lookup = HashMap::new();
    for (src, &(x, y, alpha)) in objects.iter().enumerate() {
        for &p in c.out_of(x) {
            for &q in d.out_of(y) {
                let (x2, y2) = (c.dst(p), d.dst(q));
                let rhs = e.comp(g.mor(q), alpha);
                let Some(targets) = by_cd.get(&(x2, y2)) else {
                    continue;
                };
                for &dst in targets {
                    let alpha2 = objects[dst].2;
                    if e.comp(alpha2, f.mor(p)) == rhs {
                        let name = format!(
                            "({},{})@{}",
                            c.morphism_name(p),
                            d.morphism_name(q),
                            cat.object_name(src)
                        );
                        let m = cat.add_morphism(name, src, dst);
                        morphisms.push((p, q));
                        mor_lookup.insert((src, dst, p, q), m);
                    }
                }
            }
        }
    }
    for (o, &(x, y, _)) in objects.iter().enumerate() {
        let i = mor_lookup[&(o, o, c.id(x), d.id(y))];
        cat.set_identity(o, i);
    }
    let ends: Vec<(ObjId, ObjId)> = cat.morphisms().map(|m| (cat.src(m), cat.dst(m))).collect();
    cat.fill_composites(|_, gm, fm| {
        let (p1, q1) = morphisms[fm];
        let (p2, q2) = morphisms[gm];
        mor_lookup[&(ends[fm].0, ends[gm].1, c.comp(p2, p1), d.comp(q2, q1))]
    });
    let cat = Arc::new(cat);
    let p1 = Functor {
        source: cat.clone(),
        target: f.source.clone(),
        obj_map: objects.iter().map(|o| o.0).collect(),
        mor_map: morphisms.iter().map(|m| m.0).collect(),
    };
    let p2 = Functor {
        source: cat.clone(),
        target: g.source.clone(),
        obj_map: objects.iter().map(|o| o.1).collect(),
        mor_map: morphisms.iter().map(|m| m.1).collect(),
    };
    Ok(PseudoPullback {
        cat,
        p1,
        p2,
        objects,
        morphisms,
        obj_lookup,
        mor_lookup,
    })
}

/// The strict pullback of a cospan `F: C → E ← D: G`.
#[derive(Debug, Clone)]
pub struct StrictPullback {
    pub cat: Arc<FinCat>,
    pub p1: Functor,
    pub p2: Functor,
    obj_lookup: HashMap<(ObjId, ObjId), ObjId>,
    mor_lookup: HashMap<(MorId, MorId), MorId>,
}

impl StrictPullback {
    /// The functor `X → C ×_E D` induced by a strictly commuting pair.
    pub fn induced_functor(&self, h: &Functor, k: &Functor) -> Option<Functor> {
        let x = h.source.clone();
        let obj_map = x
            .objects()
            .map(|o| self.obj_lookup.get(&(h.ob(o), k.ob(o))).copied())
            .collect::<Option<Vec<_>>>()?;
        let mor_map = x
            .morphisms()
            .map(|m| self.mor_lookup.get(&(h.mor(m), k.mor(m))).copied())
            .collect::<Option<Vec<_>>>()?;
        Some(Functor {
            source: x,
            target: self.cat.clone(),
            obj_map,
            mor_map,
        })
    }
}

pub fn strict_pullback(f: &Functor, g: &Functor) -> StrictPullback {
    let (c, d) = (&*f.source, &*g.source);
    let mut cat = FinCat::new();
    let mut obj_lookup = HashMap::new();
    let mut objs = Vec::new();
    for x in c.objects() {
        for y in d.objects() {
            if f.ob(x) == g.ob(y) {
                let o = cat.add_object(format!("({},{})", c.object_name(x), d.object_name(y)));
                obj_lookup.insert((x, y), o);
                objs.push((x, y));
            }
        }
    }
    let mut mor_lookup = HashMap::new();
    let mut mors = Vec::new();
    for p in c.morphisms() {
        for q in d.morphisms() {
            if f.mor(p) != g.mor(q) {
                continue;
            }
            let (Some(&s), Some(&t)) = (
                obj_lookup.get(&(c.src(p), d.src(q))),
                obj_lookup.get(&(c.dst(p), d.dst(q))),
            ) else {
                continue;
            };
            let m = cat.add_morphism(
                format!("({},{})", c.morphism_name(p), d.morphism_name(q)),
                s,
                t,
            );
            mor_lookup.insert((p, q), m);
            mors.push((p, q));
        }
    }
    for (o, &(x, y)) in objs.iter().enumerate() {
        cat.set_identity(o, mor_lookup[&(c.id(x), d.id(y))]);
    }
    cat.fill_composites(|_, gm, fm| {
        let (p1, q1) = mors[fm];
        let (p2, q2) = mors[gm];
        mor_lookup[&(c.comp(p2, p1), d.comp(q2, q1))]
    });
    let cat = Arc::new(cat);
    let p1 = Functor {
        source: cat.clone(),
        target: f.source.clone(),
        obj_map: objs.iter().map(|o| o.0).collect(),
        mor_map: mors.iter().map(|m| m.0).collect(),
    };
    let p2 = Functor {
        source: cat.clone(),
        target: g.source.clone(),
        obj_map: objs.iter().map(|o| o.1).collect(),
        mor_map: mors.iter().map(|m| m.1).collect(),
    };
    StrictPullback {
        cat,
        p1,
        p2,
        obj_lookup,
        mor_lookup,
    }
}

/// The terminal category.
pub fn terminal_category() -> FinCat {
    let mut c = FinCat::new();
    let o = c.add_object("*");
    c.add_identity(o, "id_*");
    c.fill_unit_composites();
    c
}

/// One-object category of a finite monoid given by its multiplication table.
/// Element 0 must be the unit. A morphism `a` composed after `b` is `b * a`,
/// so that nerve tuples multiply left to right.
pub fn monoid_category(names: &[&str], mul: &[Vec<usize>]) -> FinCat {
    let mut c = FinCat::new();
    let o = c.add_object("*");
    for n in names {
        c.add_morphism(*n, o, o);
    }
    c.set_identity(o, 0);
    c.fill_composites(|_, g, f| mul[f][g]);
    c
}

/// A finite poset on `0..n` given by its covering relation closure `le(a, b)`.
pub fn poset_category(n: usize, le: impl Fn(usize, usize) -> bool) -> FinCat {
    let mut c = FinCat::new();
    for i in 0..n {
        c.add_object(i.to_string());
    }
    let mut idx = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if le(a, b) {
                let m = c.add_morphism(format!("{a}<={b}"), a, b);
                idx.insert((a, b), m);
                if a == b {
                    c.set_identity(a, m);
                }
            }
        }
    }
    c.fill_composites(|c, g, f| idx[&(c.src(f), c.dst(g))]);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FinCat {
        monoid_category(&["e", "g"], &[vec![0, 1], vec![1, 0]])
    }

    #[test]
    fn terminal_is_valid_groupoid() {
        let t = terminal_category();
        assert!(validate_category(&t).passed());
        assert!(is_groupoid(&t).is_groupoid);
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut c = poset_category(3, |a, b| a <= b);
        assert!(validate_category(&c).passed());
        let f = c.find_morphism("0<=1").unwrap();
        let g = c.find_morphism("1<=2").unwrap();
        c.remove_composite(g, f);
        let r = validate_category(&c);
        assert!(!r.passed());
        assert_eq!(r.violations[0].rule, "missing composite");
        assert_eq!(r.violations[0].detail, "(1<=2,0<=1)");
    }

    #[test]
    fn poset_arrow_is_not_invertible() {
        let c = poset_category(2, |a, b| a <= b);
        let v = is_groupoid(&c);
        assert!(!v.is_groupoid);
        assert_eq!(c.morphism_name(v.witness.unwrap()), "0<=1");
    }

    #[test]
    fn group_is_groupoid() {
        assert!(is_groupoid(&z2()).is_groupoid);
    }

    #[test]
    fn skeleton_inclusion_is_equivalence() {
        let mut g = FinCat::new();
        let a = g.add_object("a");
        let b = g.add_object("b");
        let ia = g.add_identity(a, "1a");
        let ib = g.add_identity(b, "1b");
        let f = g.add_morphism("f", a, b);
        let fi = g.add_morphism("f'", b, a);
        g.fill_unit_composites();
        g.set_composite(fi, f, ia);
        g.set_composite(f, fi, ib);
        assert!(validate_category(&g).passed());
        let g = Arc::new(g);
        let inc = Functor {
            source: Arc::new(terminal_category()),
            target: g.clone(),
            obj_map: vec![a],
            mor_map: vec![ia],
        };
        assert!(validate_functor(&inc).passed());
        assert!(check_functor_equivalence(&inc).is_equivalence());
        assert!(check_functor_equivalence(&Functor::identity(g)).is_equivalence());
    }

    #[test]
    fn pullback_over_point_is_product() {
        let t = Arc::new(terminal_category());
        let c = Arc::new(poset_category(3, |a, b| a <= b));
        let d = Arc::new(z2());
        let to_t = |x: &Arc<FinCat>| Functor {
            source: x.clone(),
            target: t.clone(),
            obj_map: vec![0; x.n_objects()],
            mor_map: vec![0; x.n_morphisms()],
        };
        let p = pseudo_pullback(&to_t(&c), &to_t(&d), PullbackMode::Groupoid).unwrap();
        assert_eq!(p.cat.n_objects(), 3);
        assert_eq!(p.cat.n_morphisms(), 6 * 2);
        assert!(validate_category(&p.cat).passed());
        assert!(validate_functor(&p.p1).passed());
    }

    #[test]
    fn pullback_of_identities_on_group() {
        let g = Arc::new(z2());
        let id = Functor::identity(g);
        let p = pseudo_pullback(&id, &id, PullbackMode::Groupoid).unwrap();
        assert_eq!(p.cat.n_objects(), 2);
        assert!(validate_category(&p.cat).passed());
        let t = p.tautological(&id, &id);
        assert!(validate_nat_trans(&t).passed());
    }

    #[test]
    fn groupoid_mode_rejects_non_invertible() {
        let c = Arc::new(poset_category(2, |a, b| a <= b));
        let id = Functor::identity(c);
        assert!(matches!(
            pseudo_pullback(&id, &id, PullbackMode::Groupoid),
            Err(Error::NotInvertible(_))
        ));
        let p = pseudo_pullback(&id, &id, PullbackMode::General).unwrap();
        assert_eq!(p.cat.n_objects(), 2);
    }

    #[test]
    fn opposite_is_involutive() {
        let c = poset_category(3, |a, b| a <= b);
        let oo = c.opposite().opposite();
        assert_eq!(oo.composition_entries(), c.composition_entries());
        assert!(validate_category(&c.opposite()).passed());
    }
}
