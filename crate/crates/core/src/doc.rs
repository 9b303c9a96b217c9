//! JSON workbench documents: named frames, spaces and maps.
//!
//! ```json
//! {
//!   "frames": { "F2": { "elements": ["0", "1"], "leq": [[true, true], [false, true]] } },
//!   "spaces": { "S": { "frame": "F2", "points": ["0", "1"], "opens": [["0", "0"], ["0", "1"], ["1", "1"]] } },
//!   "maps": { "id": { "source": "S", "target": "S", "mapping": { "0": "0", "1": "1" } } }
//! }
//! ```
//!
//! A space's `frame` is either the name of a document frame, the name of a
//! stock frame (`F2`, `F3`, `D4`), or an inline frame document. Meets and
//! joins are always derived from `leq`. Serialization is canonical: names
//! are sorted, opens are sorted, and a document re-serializes byte for byte.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fixtures::frame_by_name;
use crate::frame::{is_frame_map, Elem, Frame, FrameMap};
use crate::sober::PointSpace;
use crate::space::{LSet, Space, StructuredMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrameRefDoc {
    Name(String),
    Inline(FrameDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointTablesDoc {
    pub base: String,
    pub tables: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub frame: FrameRefDoc,
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame_maps: Option<PointTablesDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: String,
    pub target: String,
    pub mapping: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentDoc {
    #[serde(default)]
    pub frames: BTreeMap<String, FrameDoc>,
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceDoc>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{location}: unknown {kind} `{name}`")]
    Dangling { location: String, kind: &'static str, name: String },
    #[error("{location}: {source}")]
    Invalid { location: String, source: crate::Error },
    #[error("{location}: {message}")]
    Malformed { location: String, message: String },
}

fn malformed(location: &str, message: impl Into<String>) -> DocError {
    DocError::Malformed { location: location.to_string(), message: message.into() }
}

fn invalid(location: &str, source: impl Into<crate::Error>) -> DocError {
    DocError::Invalid { location: location.to_string(), source: source.into() }
}

/// How a space names its frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameRef {
    Named(String),
    Inline,
}

/// A point space's frame-map table, one [`FrameMap`] per point of the
/// space, over the opens of `base` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointTables {
    pub base: String,
    pub tables: Vec<FrameMap>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceEntry {
    pub frame: FrameRef,
    pub space: Arc<Space>,
    pub point_tables: Option<PointTables>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEntry {
    pub source: String,
    pub target: String,
    pub map: StructuredMap,
}

/// A fully validated document.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WorkbenchDocument {
    frames: BTreeMap<String, Arc<Frame>>,
    spaces: BTreeMap<String, SpaceEntry>,
    maps: BTreeMap<String, MapEntry>,
}

impl WorkbenchDocument {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn frames(&self) -> &BTreeMap<String, Arc<Frame>> {
        &self.frames
    }

    pub fn spaces(&self) -> &BTreeMap<String, SpaceEntry> {
        &self.spaces
    }

    pub fn maps(&self) -> &BTreeMap<String, MapEntry> {
        &self.maps
    }

    pub fn frame(&self, name: &str) -> Option<&Arc<Frame>> {
        self.frames.get(name)
    }

    pub fn space(&self, name: &str) -> Option<&Arc<Space>> {
        self.spaces.get(name).map(|e| &e.space)
    }

    pub fn map(&self, name: &str) -> Option<&StructuredMap> {
        self.maps.get(name).map(|e| &e.map)
    }

    /// Name of a space in this document equal to `space`, if any.
    pub fn name_of(&self, space: &Space) -> Option<&str> {
        self.spaces.iter().find(|(_, e)| *e.space == *space).map(|(n, _)| n.as_str())
    }

    pub fn add_frame(&mut self, name: &str, frame: Arc<Frame>) {
        self.frames.insert(name.to_string(), frame);
    }

    /// Adds a space referring to its frame by `frame_name`, or inline when `None`.
    pub fn add_space(&mut self, name: &str, frame_name: Option<&str>, space: Arc<Space>) {
        let frame = match frame_name {
            Some(n) => FrameRef::Named(n.to_string()),
            None => FrameRef::Inline,
        };
        self.spaces.insert(name.to_string(), SpaceEntry { frame, space, point_tables: None });
    }

    /// Adds a point space together with its frame-map table.
    pub fn add_point_space(&mut self, name: &str, frame_name: Option<&str>, base: &str, points: &PointSpace) {
        self.add_space(name, frame_name, points.space().clone());
        if let Some(e) = self.spaces.get_mut(name) {
            e.point_tables = Some(PointTables { base: base.to_string(), tables: points.points().to_vec() });
        }
    }

    pub fn add_map(&mut self, name: &str, source: &str, target: &str, map: StructuredMap) {
        self.maps.insert(
            name.to_string(),
            MapEntry { source: source.to_string(), target: target.to_string(), map },
        );
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty() && self.spaces.is_empty() && self.maps.is_empty()
    }

    /// The raw document form.
    pub fn to_doc(&self) -> DocumentDoc {
        let frames = self.frames.iter().map(|(n, f)| (n.clone(), frame_doc(f))).collect();
        let spaces = self
            .spaces
            .iter()
            .map(|(n, e)| {
                let s = &e.space;
                let frame = match &e.frame {
                    FrameRef::Named(n) => FrameRefDoc::Name(n.clone()),
                    FrameRef::Inline => FrameRefDoc::Inline(frame_doc(s.frame())),
                };
                let opens = s
                    .opens()
                    .iter()
                    .map(|o| o.values().iter().map(|&v| s.frame().label(v).to_string()).collect())
                    .collect();
                let frame_maps = e.point_tables.as_ref().map(|t| PointTablesDoc {
                    base: t.base.clone(),
                    tables: t
                        .tables
                        .iter()
                        .enumerate()
                        .map(|(i, p)| {
                            let row = p.table().iter().map(|&v| s.frame().label(v).to_string()).collect();
                            (s.point_label(i).to_string(), row)
                        })
                        .collect(),
                });
                (n.clone(), SpaceDoc { frame, points: s.points().to_vec(), opens, frame_maps })
            })
            .collect();
        let maps = self
            .maps
            .iter()
            .map(|(n, e)| {
                let (s, t) = (e.map.source(), e.map.target());
                let mapping = (0..s.len())
                    .map(|x| (s.point_label(x).to_string(), t.point_label(e.map.apply(x)).to_string()))
                    .collect();
                (n.clone(), MapDoc { source: e.source.clone(), target: e.target.clone(), mapping })
            })
            .collect();
        DocumentDoc { frames, spaces, maps }
    }

    /// Validates a raw document.
    pub fn from_doc(doc: DocumentDoc) -> Result<Self, DocError> {
        let mut out = WorkbenchDocument::new();
        for (name, fd) in doc.frames {
            let loc = format!("frames.{name}");
            let frame = Frame::validate(fd.elements, fd.leq).map_err(|e| invalid(&loc, e))?;
            out.frames.insert(name, Arc::new(frame));
        }

        let mut pending_tables = Vec::new();
        for (name, sd) in doc.spaces {
            let loc = format!("spaces.{name}");
            let (frame_ref, frame) = match sd.frame {
                FrameRefDoc::Name(n) => {
                    let frame = match out.frames.get(&n) {
                        Some(f) => f.clone(),
                        None => Arc::new(frame_by_name(&n).ok_or_else(|| DocError::Dangling {
                            location: loc.clone(),
                            kind: "frame",
                            name: n.clone(),
                        })?),
                    };
                    (FrameRef::Named(n), frame)
                }
                FrameRefDoc::Inline(fd) => {
                    let frame = Frame::validate(fd.elements, fd.leq).map_err(|e| invalid(&format!("{loc}.frame"), e))?;
                    (FrameRef::Inline, Arc::new(frame))
                }
            };
            let width = sd.points.len();
            let mut opens = Vec::with_capacity(sd.opens.len());
            for (i, row) in sd.opens.iter().enumerate() {
                let oloc = format!("{loc}.opens[{i}]");
                if row.len() != width {
                    return Err(malformed(&oloc, format!("{} values for {width} points", row.len())));
                }
                let values = row
                    .iter()
                    .map(|l| frame.element(l).map_err(|e| invalid(&oloc, e)))
                    .collect::<Result<Vec<Elem>, _>>()?;
                opens.push(LSet::new(values));
            }
            let space = Space::new(frame, sd.points, opens).map_err(|e| invalid(&loc, e))?;
            if let Some(t) = sd.frame_maps {
                pending_tables.push((name.clone(), t));
            }
            out.spaces.insert(name, SpaceEntry { frame: frame_ref, space: Arc::new(space), point_tables: None });
        }

        for (name, t) in pending_tables {
            let loc = format!("spaces.{name}.frame_maps");
            let base = out
                .spaces
                .get(&t.base)
                .ok_or_else(|| DocError::Dangling { location: loc.clone(), kind: "space", name: t.base.clone() })?
                .space
                .clone();
            let space = out.spaces[&name].space.clone();
            if base.frame() != space.frame() {
                return Err(invalid(&loc, crate::Error::FrameMismatch));
            }
            let open_frame = base.open_frame();
            let mut tables = Vec::with_capacity(space.len());
            for label in space.points() {
                let row = t.tables.get(label).ok_or_else(|| malformed(&loc, format!("no table for point `{label}`")))?;
                if row.len() != base.opens().len() {
                    return Err(malformed(&loc, format!("table for `{label}` has {} entries", row.len())));
                }
                let values = row
                    .iter()
                    .map(|l| space.frame().element(l).map_err(|e| invalid(&loc, e)))
                    .collect::<Result<Vec<Elem>, _>>()?;
                is_frame_map(&values, &open_frame, space.frame())
                    .map_err(|v| malformed(&loc, format!("table for `{label}` is not a frame map: {v}")))?;
                tables.push(FrameMap::new(values));
            }
            if let Some(extra) = t.tables.keys().find(|k| space.point(k).is_err()) {
                return Err(malformed(&loc, format!("table for unknown point `{extra}`")));
            }
            if let Some(e) = out.spaces.get_mut(&name) {
                e.point_tables = Some(PointTables { base: t.base, tables });
            }
        }

        for (name, md) in doc.maps {
            let loc = format!("maps.{name}");
            let lookup = |n: &str| {
                out.spaces.get(n).map(|e| e.space.clone()).ok_or_else(|| DocError::Dangling {
                    location: loc.clone(),
                    kind: "space",
                    name: n.to_string(),
                })
            };
            let (source, target) = (lookup(&md.source)?, lookup(&md.target)?);
            let mut mapping = Vec::with_capacity(source.len());
            for label in source.points() {
                let image = md
                    .mapping
                    .get(label)
                    .ok_or_else(|| malformed(&loc, format!("point `{label}` has no image")))?;
                mapping.push(target.point(image).map_err(|e| invalid(&loc, e))?);
            }
            if let Some(extra) = md.mapping.keys().find(|k| source.point(k).is_err()) {
                return Err(malformed(&loc, format!("mapping names unknown source point `{extra}`")));
            }
            let map = StructuredMap::new(source, target, mapping).map_err(|e| invalid(&loc, e))?;
            out.maps.insert(name, MapEntry { source: md.source, target: md.target, map });
        }
        Ok(out)
    }
}

fn frame_doc(frame: &Frame) -> FrameDoc {
    FrameDoc { elements: frame.labels().to_vec(), leq: frame.order_matrix() }
}

/// Parses and validates a document.
pub fn parse_document(text: &str) -> Result<WorkbenchDocument, DocError> {
    let doc: DocumentDoc = serde_json::from_str(text).map_err(|e| DocError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    WorkbenchDocument::from_doc(doc)
}

/// Canonical text form, terminated by a newline. Objects are indented two
/// spaces per level; arrays of scalars stay on one line.
pub fn serialize_document(doc: &WorkbenchDocument) -> String {
    serialize_raw(&doc.to_doc())
}

/// [`serialize_document`] for a raw, unvalidated document.
pub fn serialize_raw(doc: &DocumentDoc) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut text = String::new();
    write_value(&value, 0, &mut text);
    text.push('\n');
    text
}

fn write_value(value: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(v, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|v| v.is_array() || v.is_object()) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(v, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}
