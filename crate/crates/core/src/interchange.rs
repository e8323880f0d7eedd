//! JSON interchange for squares categories, partial monoids and truncated
//! simplicial sets.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::catcore::{FinCat, MorId, ObjId};
use crate::double::{CompletionData, Cospan, CospanMor, FlatDoubleCat, Span, SpanMor, Square, SquaresCat};
use crate::error::{Error, Result};
use crate::simplicial::{PartialMonoid, TruncSSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareSpec {
    pub top: String,
    pub left: String,
    pub right: String,
    pub bottom: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanSpec {
    pub top: String,
    pub left: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CospanSpec {
    pub right: String,
    pub bottom: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanCompletionSpec {
    pub span: SpanSpec,
    pub square: SquareSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CospanCompletionSpec {
    pub cospan: CospanSpec,
    pub square: SquareSpec,
}

/// A morphism of spans and the induced map on completions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanActionSpec {
    pub src: SpanSpec,
    pub dst: SpanSpec,
    pub a: String,
    pub b: String,
    pub c: String,
    pub induced: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CospanActionSpec {
    pub src: CospanSpec,
    pub dst: CospanSpec,
    pub b: String,
    pub c: String,
    pub d: String,
    pub induced: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub square: SquareSpec,
    pub mor: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompletionsSpec {
    #[serde(default)]
    pub span: Vec<SpanCompletionSpec>,
    #[serde(default)]
    pub span_action: Vec<SpanActionSpec>,
    #[serde(default)]
    pub w: Vec<ComponentSpec>,
    #[serde(default)]
    pub cospan: Vec<CospanCompletionSpec>,
    #[serde(default)]
    pub cospan_action: Vec<CospanActionSpec>,
    #[serde(default)]
    pub u: Vec<ComponentSpec>,
}

/// A squares category with identities and composites listed explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub objects: Vec<String>,
    pub hmor: Vec<MorSpec>,
    pub vmor: Vec<MorSpec>,
    pub hid: BTreeMap<String, String>,
    pub vid: BTreeMap<String, String>,
    pub hcomp: Vec<[String; 3]>,
    pub vcomp: Vec<[String; 3]>,
    pub squares: Vec<SquareSpec>,
    pub basepoint: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completions: Option<CompletionsSpec>,
}

/// Parses JSON, reporting the field path of the first error.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Malformed {
            path: if path == "." { "(document)".into() } else { path },
            message: format!("{inner} (line {}, column {})", inner.line(), inner.column()),
        }
    })
}

fn malformed(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Malformed { path: path.into(), message: message.into() }
}

struct Names {
    objects: HashMap<String, ObjId>,
    h: HashMap<String, MorId>,
    v: HashMap<String, MorId>,
}

impl Names {
    fn obj(&self, name: &str, path: &str) -> Result<ObjId> {
        self.objects
            .get(name)
            .copied()
            .ok_or_else(|| malformed(path, format!("unknown object `{name}`")))
    }

    fn hmor(&self, name: &str, path: &str) -> Result<MorId> {
        self.h
            .get(name)
            .copied()
            .ok_or_else(|| malformed(path, format!("unknown horizontal morphism `{name}`")))
    }

    fn vmor(&self, name: &str, path: &str) -> Result<MorId> {
        self.v
            .get(name)
            .copied()
            .ok_or_else(|| malformed(path, format!("unknown vertical morphism `{name}`")))
    }

    fn square(&self, s: &SquareSpec, path: &str) -> Result<Square> {
        Ok(Square::new(
            self.hmor(&s.top, &format!("{path}.top"))?,
            self.vmor(&s.left, &format!("{path}.left"))?,
            self.vmor(&s.right, &format!("{path}.right"))?,
            self.hmor(&s.bottom, &format!("{path}.bottom"))?,
        ))
    }

    fn span(&self, s: &SpanSpec, path: &str) -> Result<Span> {
        Ok(Span {
            top: self.hmor(&s.top, &format!("{path}.top"))?,
            left: self.vmor(&s.left, &format!("{path}.left"))?,
        })
    }

    fn cospan(&self, s: &CospanSpec, path: &str) -> Result<Cospan> {
        Ok(Cospan {
            right: self.vmor(&s.right, &format!("{path}.right"))?,
            bottom: self.hmor(&s.bottom, &format!("{path}.bottom"))?,
        })
    }
}

fn build_cat(
    objects: &[String],
    obj_index: &HashMap<String, ObjId>,
    mors: &[MorSpec],
    ids: &BTreeMap<String, String>,
    comps: &[[String; 3]],
    key: &str,
) -> Result<(FinCat, HashMap<String, MorId>)> {
    let mut c = FinCat::new();
    for o in objects {
        c.add_object(o.clone());
    }
    let mut index = HashMap::new();
    for (i, m) in mors.iter().enumerate() {
        let path = format!("{key}mor[{i}]");
        let src = *obj_index
            .get(&m.src)
            .ok_or_else(|| malformed(format!("{path}.src"), format!("unknown object `{}`", m.src)))?;
        let dst = *obj_index
            .get(&m.dst)
            .ok_or_else(|| malformed(format!("{path}.dst"), format!("unknown object `{}`", m.dst)))?;
        if index.insert(m.id.clone(), c.add_morphism(m.id.clone(), src, dst)).is_some() {
            return Err(malformed(format!("{path}.id"), format!("duplicate morphism id `{}`", m.id)));
        }
    }
    for o in objects {
        let path = format!("{key}id.{o}");
        let name = ids.get(o).ok_or_else(|| malformed(&path, "missing identity"))?;
        let m = *index
            .get(name)
            .ok_or_else(|| malformed(&path, format!("unknown morphism `{name}`")))?;
        c.set_identity(obj_index[o], m);
    }
    if let Some(extra) = ids.keys().find(|o| !obj_index.contains_key(*o)) {
        return Err(malformed(format!("{key}id.{extra}"), "unknown object"));
    }
    for (i, [g, f, gf]) in comps.iter().enumerate() {
        let look = |name: &String, j: usize| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| malformed(format!("{key}comp[{i}][{j}]"), format!("unknown morphism `{name}`")))
        };
        let (g, f, gf) = (look(g, 0)?, look(f, 1)?, look(gf, 2)?);
        c.set_composite(g, f, gf);
    }
    Ok((c, index))
}

/// Reads a document into a squares category and its optional completions.
/// Dangling references are errors; axioms are left to validation.
pub fn from_document(doc: &Document) -> Result<(SquaresCat, Option<CompletionData>)> {
    let mut objects = HashMap::new();
    for (i, o) in doc.objects.iter().enumerate() {
        if objects.insert(o.clone(), i).is_some() {
            return Err(malformed(format!("objects[{i}]"), format!("duplicate object `{o}`")));
        }
    }
    let (h, hn) = build_cat(&doc.objects, &objects, &doc.hmor, &doc.hid, &doc.hcomp, "h")?;
    let (v, vn) = build_cat(&doc.objects, &objects, &doc.vmor, &doc.vid, &doc.vcomp, "v")?;
    let names = Names { objects, h: hn, v: vn };
    let squares = doc
        .squares
        .iter()
        .enumerate()
        .map(|(i, s)| names.square(s, &format!("squares[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let basepoint = names.obj(&doc.basepoint, "basepoint")?;
    let d = SquaresCat::new(FlatDoubleCat::new(Arc::new(h), Arc::new(v), squares), basepoint);
    let comp = doc.completions.as_ref().map(|c| read_completions(&names, c)).transpose()?;
    Ok((d, comp))
}

fn read_completions(names: &Names, c: &CompletionsSpec) -> Result<CompletionData> {
    let mut out = CompletionData::default();
    for (i, e) in c.span.iter().enumerate() {
        let p = format!("completions.span[{i}]");
        out.span_complete
            .insert(names.span(&e.span, &format!("{p}.span"))?, names.square(&e.square, &format!("{p}.square"))?);
    }
    for (i, e) in c.span_action.iter().enumerate() {
        let p = format!("completions.span_action[{i}]");
        let m = SpanMor {
            src: names.span(&e.src, &format!("{p}.src"))?,
            dst: names.span(&e.dst, &format!("{p}.dst"))?,
            a: names.vmor(&e.a, &format!("{p}.a"))?,
            b: names.vmor(&e.b, &format!("{p}.b"))?,
            c: names.vmor(&e.c, &format!("{p}.c"))?,
        };
        out.span_action.insert(m, names.vmor(&e.induced, &format!("{p}.induced"))?);
    }
    for (i, e) in c.w.iter().enumerate() {
        let p = format!("completions.w[{i}]");
        out.w
            .insert(names.square(&e.square, &format!("{p}.square"))?, names.vmor(&e.mor, &format!("{p}.mor"))?);
    }
    for (i, e) in c.cospan.iter().enumerate() {
        let p = format!("completions.cospan[{i}]");
        out.cospan_complete.insert(
            names.cospan(&e.cospan, &format!("{p}.cospan"))?,
            names.square(&e.square, &format!("{p}.square"))?,
        );
    }
    for (i, e) in c.cospan_action.iter().enumerate() {
        let p = format!("completions.cospan_action[{i}]");
        let m = CospanMor {
            src: names.cospan(&e.src, &format!("{p}.src"))?,
            dst: names.cospan(&e.dst, &format!("{p}.dst"))?,
            b: names.vmor(&e.b, &format!("{p}.b"))?,
            c: names.vmor(&e.c, &format!("{p}.c"))?,
            d: names.vmor(&e.d, &format!("{p}.d"))?,
        };
        out.cospan_action.insert(m, names.vmor(&e.induced, &format!("{p}.induced"))?);
    }
    for (i, e) in c.u.iter().enumerate() {
        let p = format!("completions.u[{i}]");
        out.u
            .insert(names.square(&e.square, &format!("{p}.square"))?, names.vmor(&e.mor, &format!("{p}.mor"))?);
    }
    Ok(out)
}

/// Parses and reads a document.
pub fn read_squares(text: &str) -> Result<(SquaresCat, Option<CompletionData>)> {
    from_document(&parse_json(text)?)
}

fn unique_names(names: impl Iterator<Item = String>) -> Vec<String> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    names
        .map(|n| {
            let k = seen.entry(n.clone()).or_insert(0);
            *k += 1;
            if *k == 1 {
                n
            } else {
                format!("{n}#{k}")
            }
        })
        .collect()
}

/// Writes a squares category, and optionally its completions, as a
/// document. Repeated names are disambiguated with a `#k` suffix.
pub fn to_document(d: &SquaresCat, comp: Option<&CompletionData>) -> Document {
    let objects = unique_names(d.objects().map(|o| d.object_name(o).to_string()));
    let cat_names = |c: &FinCat| unique_names(c.morphisms().map(|m| c.morphism_name(m).to_string()));
    let (hn, vn) = (cat_names(d.h()), cat_names(d.v()));
    let mors = |c: &FinCat, names: &[String]| -> Vec<MorSpec> {
        c.morphisms()
            .map(|m| MorSpec {
                id: names[m].clone(),
                src: objects[c.src(m)].clone(),
                dst: objects[c.dst(m)].clone(),
            })
            .collect()
    };
    let ids = |c: &FinCat, names: &[String]| -> BTreeMap<String, String> {
        c.objects()
            .filter_map(|o| c.identity(o).map(|m| (objects[o].clone(), names[m].clone())))
            .collect()
    };
    let comps = |c: &FinCat, names: &[String]| -> Vec<[String; 3]> {
        let mut e = c.composition_entries();
        e.sort_unstable();
        e.into_iter()
            .map(|(g, f, gf)| [names[g].clone(), names[f].clone(), names[gf].clone()])
            .collect()
    };
    let sq = |s: &Square| SquareSpec {
        top: hn[s.top].clone(),
        left: vn[s.left].clone(),
        right: vn[s.right].clone(),
        bottom: hn[s.bottom].clone(),
    };
    let span = |s: &Span| SpanSpec { top: hn[s.top].clone(), left: vn[s.left].clone() };
    let cospan = |s: &Cospan| CospanSpec { right: vn[s.right].clone(), bottom: hn[s.bottom].clone() };
    let completions = comp.map(|c| CompletionsSpec {
        span: c
            .span_complete
            .iter()
            .map(|(k, s)| SpanCompletionSpec { span: span(k), square: sq(s) })
            .collect(),
        span_action: c
            .span_action
            .iter()
            .map(|(m, &x)| SpanActionSpec {
                src: span(&m.src),
                dst: span(&m.dst),
                a: vn[m.a].clone(),
                b: vn[m.b].clone(),
                c: vn[m.c].clone(),
                induced: vn[x].clone(),
            })
            .collect(),
        w: c.w.iter().map(|(s, &m)| ComponentSpec { square: sq(s), mor: vn[m].clone() }).collect(),
        cospan: c
            .cospan_complete
            .iter()
            .map(|(k, s)| CospanCompletionSpec { cospan: cospan(k), square: sq(s) })
            .collect(),
        cospan_action: c
            .cospan_action
            .iter()
            .map(|(m, &x)| CospanActionSpec {
                src: cospan(&m.src),
                dst: cospan(&m.dst),
                b: vn[m.b].clone(),
                c: vn[m.c].clone(),
                d: vn[m.d].clone(),
                induced: vn[x].clone(),
            })
            .collect(),
        u: c.u.iter().map(|(s, &m)| ComponentSpec { square: sq(s), mor: vn[m].clone() }).collect(),
    });
    Document {
        hmor: mors(d.h(), &hn),
        vmor: mors(d.v(), &vn),
        hid: ids(d.h(), &hn),
        vid: ids(d.v(), &vn),
        hcomp: comps(d.h(), &hn),
        vcomp: comps(d.v(), &vn),
        squares: d.squares().iter().map(sq).collect(),
        basepoint: objects[d.o()].clone(),
        objects,
        completions,
    }
}

pub fn write_squares(d: &SquaresCat, comp: Option<&CompletionData>) -> String {
    serde_json::to_string_pretty(&to_document(d, comp)).expect("documents serialize")
}

/// A partial monoid file: elements, the unit and the defined products
/// other than those with the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialMonoidDoc {
    pub elements: Vec<String>,
    pub unit: String,
    #[serde(default)]
    pub products: Vec<[String; 3]>,
}

pub fn read_partial_monoid(text: &str) -> Result<PartialMonoid> {
    let doc: PartialMonoidDoc = parse_json(text)?;
    let find = |name: &str, path: String| {
        doc.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| malformed(path, format!("unknown element `{name}`")))
    };
    let unit = find(&doc.unit, "unit".into())?;
    let products = doc
        .products
        .iter()
        .enumerate()
        .map(|(i, [a, b, c])| {
            Ok((
                find(a, format!("products[{i}][0]"))?,
                find(b, format!("products[{i}][1]"))?,
                find(c, format!("products[{i}][2]"))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PartialMonoid::new(doc.elements.clone(), unit, &products))
}

/// A truncated simplicial set file, with the same layout as [`TruncSSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetDoc {
    pub names: Vec<Vec<String>>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degens: Vec<Vec<Vec<usize>>>,
}

/// Reads a truncated simplicial set, checking indices but not identities.
pub fn read_sset(text: &str) -> Result<TruncSSet> {
    let doc: SSetDoc = parse_json(text)?;
    let levels = doc.names.len();
    if levels == 0 {
        return Err(malformed("names", "at least one level is required"));
    }
    let size = |n: usize| doc.names[n].len();
    if doc.faces.len() != levels {
        return Err(malformed("faces", format!("expected {levels} levels, level 0 empty")));
    }
    if doc.degens.len() + 1 != levels {
        return Err(malformed("degens", format!("expected {} levels", levels - 1)));
    }
    for (n, ops) in doc.faces.iter().enumerate() {
        let want = if n == 0 { 0 } else { n + 1 };
        if ops.len() != want {
            return Err(malformed(format!("faces[{n}]"), format!("expected {want} face maps")));
        }
        for (i, map) in ops.iter().enumerate() {
            check_map(map, size(n), size(n.saturating_sub(1)), &format!("faces[{n}][{i}]"))?;
        }
    }
    for (n, ops) in doc.degens.iter().enumerate() {
        if ops.len() != n + 1 {
            return Err(malformed(format!("degens[{n}]"), format!("expected {} degeneracies", n + 1)));
        }
        for (i, map) in ops.iter().enumerate() {
            check_map(map, size(n), size(n + 1), &format!("degens[{n}][{i}]"))?;
        }
    }
    Ok(TruncSSet { names: doc.names, faces: doc.faces, degens: doc.degens })
}

fn check_map(map: &[usize], len: usize, range: usize, path: &str) -> Result<()> {
    if map.len() != len {
        return Err(malformed(path, format!("expected {len} entries, found {}", map.len())));
    }
    if let Some((k, x)) = map.iter().enumerate().find(|(_, &x)| x >= range) {
        return Err(malformed(format!("{path}[{k}]"), format!("index {x} out of range {range}")));
    }
    Ok(())
}

pub fn write_sset(x: &TruncSSet) -> String {
    let doc = SSetDoc { names: x.names.clone(), faces: x.faces.clone(), degens: x.degens.clone() };
    serde_json::to_string(&doc).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::validate_squares_category;
    use crate::examples::finset_squares;

    #[test]
    fn finset_round_trip() {
        let (d, comp) = finset_squares(2);
        let text = write_squares(&d, Some(&comp));
        let (e, c2) = read_squares(&text).unwrap();
        assert!(validate_squares_category(&e).passed());
        assert_eq!(c2.as_ref(), Some(&comp));
        assert_eq!(write_squares(&e, c2.as_ref()), text);
    }

    #[test]
    fn dangling_source_names_the_field() {
        let (d, _) = finset_squares(1);
        let mut doc = to_document(&d, None);
        doc.hmor[1].src = "7".into();
        let err = from_document(&doc).unwrap_err();
        assert!(matches!(&err, Error::Malformed { path, .. } if path == "hmor[1].src"), "{err}");
    }

    #[test]
    fn unknown_key_is_rejected() {
        let err = parse_json::<MorSpec>(r#"{"id":"f","src":"a","dst":"b","colour":1}"#).unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");
        let err = read_squares(r#"{"objects": [1]}"#).unwrap_err();
        assert!(matches!(&err, Error::Malformed { path, .. } if path == "objects[0]"), "{err}");
    }

    #[test]
    fn partial_monoid_file() {
        let m = read_partial_monoid(r#"{"elements":["1","x"],"unit":"1"}"#).unwrap();
        assert_eq!(m, PartialMonoid::one_x());
        assert!(read_partial_monoid(r#"{"elements":["1"],"unit":"e"}"#).is_err());
    }
}
