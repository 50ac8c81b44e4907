//! Reader for the line-oriented `.chow` declaration format.
//!
//! A document is a sequence of blocks. A block starts with an unindented
//! header line and continues with indented body lines:
//!
//! ```text
//! ring R
//!   var x : 1
//! ideal I in R
//!   rel name = x^2
//! class c in R
//!   x
//! map f from R to S [mod J]
//!   send x -> y
//! stratum Z
//!   ring S
//!   ideal J
//! glue G
//!   open Z            # a stratum or another glue block
//!   closed W
//!   class x : 1
//!   pullback f
//!   ctop y
//! ```
//!
//! Inside `ideal` and `map` blocks a line indented deeper than the first
//! item continues the previous item. `#` starts a comment. The comment lines
//! directly above a header become that entry's note. Names may be used before
//! the block that declares them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::groebner::Ideal;
use crate::poly::{GradedRing, Polynomial, RingMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{file}:{line}: {msg}")]
pub struct ChowFileError {
    pub file: String,
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntryKind {
    Ring,
    Ideal,
    Class,
    Map,
    Stratum,
    Glue,
}

impl EntryKind {
    pub fn keyword(self) -> &'static str {
        match self {
            EntryKind::Ring => "ring",
            EntryKind::Ideal => "ideal",
            EntryKind::Class => "class",
            EntryKind::Map => "map",
            EntryKind::Stratum => "stratum",
            EntryKind::Glue => "glue",
        }
    }
}

/// Where an entry came from and what its leading comment says.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryInfo {
    pub kind: EntryKind,
    pub name: String,
    pub file: String,
    pub line: usize,
    pub note: String,
}

/// A relation list keeps the declared names and the order of its members.
#[derive(Debug, Clone)]
pub struct RelationList {
    pub ring: GradedRing,
    pub relations: Vec<(String, Polynomial)>,
}

impl RelationList {
    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.relations.iter().map(|(_, p)| p.clone()).collect())
            .expect("relations were audited at load")
    }

    pub fn get(&self, name: &str) -> Option<&Polynomial> {
        self.relations.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

#[derive(Debug, Clone)]
pub struct MapDecl {
    pub map: RingMap,
    pub modulo: Option<String>,
}

#[derive(Debug, Clone)]
pub struct StratumDecl {
    pub ring: String,
    pub ideal: Option<String>,
}

#[derive(Debug, Clone)]
pub struct GlueDecl {
    pub open: String,
    pub closed: String,
    pub class_var: String,
    pub class_degree: u32,
    pub pullback: String,
    pub c_top: Polynomial,
}

/// A fully resolved document.
#[derive(Debug, Clone, Default)]
pub struct ChowDocument {
    pub rings: BTreeMap<String, GradedRing>,
    pub ideals: BTreeMap<String, RelationList>,
    pub classes: BTreeMap<String, Polynomial>,
    pub maps: BTreeMap<String, MapDecl>,
    pub strata: BTreeMap<String, StratumDecl>,
    pub glues: BTreeMap<String, GlueDecl>,
    pub entries: Vec<EntryInfo>,
}

struct Item {
    line: usize,
    text: String,
}

struct Block {
    kind: EntryKind,
    file: String,
    line: usize,
    header: Vec<String>,
    items: Vec<Item>,
    note: String,
}

impl Block {
    fn err(&self, line: usize, msg: impl Into<String>) -> ChowFileError {
        ChowFileError { file: self.file.clone(), line, msg: msg.into() }
    }

    fn header_err(&self, msg: impl Into<String>) -> ChowFileError {
        self.err(self.line, msg)
    }

    fn name(&self) -> &str {
        &self.header[1]
    }
}

fn strip_comment(line: &str) -> (&str, Option<&str>) {
    match line.find('#') {
        Some(i) => (&line[..i], Some(line[i + 1..].trim())),
        None => (line, None),
    }
}

fn indent_of(line: &str) -> usize {
    line.len() - line.trim_start().len()
}

fn split_blocks(file: &str, text: &str) -> Result<Vec<Block>, ChowFileError> {
    let mut blocks: Vec<Block> = Vec::new();
    let mut pending_note: Vec<String> = Vec::new();
    let mut file_note: Option<String> = None;
    let mut item_indent: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (code, comment) = strip_comment(raw);
        if code.trim().is_empty() {
            match comment {
                Some(c) if indent_of(raw) == 0 => pending_note.push(c.to_string()),
                Some(_) => {}
                None => {
                    if file_note.is_none() && blocks.is_empty() && !pending_note.is_empty() {
                        file_note = Some(pending_note.join(" "));
                    }
                    pending_note.clear();
                }
            }
            continue;
        }
        let indent = indent_of(code);
        if indent == 0 {
            let header: Vec<String> = code.split_whitespace().map(str::to_string).collect();
            let kind = match header[0].as_str() {
                "ring" => EntryKind::Ring,
                "ideal" => EntryKind::Ideal,
                "class" => EntryKind::Class,
                "map" => EntryKind::Map,
                "stratum" => EntryKind::Stratum,
                "glue" => EntryKind::Glue,
                other => {
                    return Err(ChowFileError {
                        file: file.to_string(),
                        line: line_no,
                        msg: format!("unknown declaration `{other}`"),
                    })
                }
            };
            if header.len() < 2 {
                return Err(ChowFileError { file: file.to_string(), line: line_no, msg: "missing name".into() });
            }
            let note =
                if pending_note.is_empty() { file_note.clone().unwrap_or_default() } else { pending_note.join(" ") };
            pending_note.clear();
            item_indent = None;
            blocks.push(Block { kind, file: file.to_string(), line: line_no, header, items: Vec::new(), note });
            continue;
        }
        let Some(block) = blocks.last_mut() else {
            return Err(ChowFileError {
                file: file.to_string(),
                line: line_no,
                msg: "indented line outside of a declaration".into(),
            });
        };
        let base = *item_indent.get_or_insert(indent);
        let continues = indent > base && matches!(block.kind, EntryKind::Ideal | EntryKind::Map | EntryKind::Class);
        let joins_class = block.kind == EntryKind::Class && !block.items.is_empty();
        match block.items.last_mut() {
            Some(prev) if continues || joins_class => {
                prev.text.push(' ');
                prev.text.push_str(code.trim());
            }
            _ => block.items.push(Item { line: line_no, text: code.trim().to_string() }),
        }
    }
    Ok(blocks)
}

impl ChowDocument {
    pub fn parse(file: &str, text: &str) -> Result<ChowDocument, ChowFileError> {
        ChowDocument::parse_sources(&[(file, text)])
    }

    /// Parses several sources as one document, so that they may refer to each
    /// other's declarations.
    pub fn parse_sources(sources: &[(&str, &str)]) -> Result<ChowDocument, ChowFileError> {
        let mut blocks = Vec::new();
        for (file, text) in sources {
            blocks.extend(split_blocks(file, text)?);
        }
        let mut doc = ChowDocument::default();
        let mut seen = BTreeMap::new();
        for b in &blocks {
            if let Some(prev) = seen.insert((b.kind, b.name().to_string()), b.line) {
                return Err(b.header_err(format!("`{}` already declared on line {prev}", b.name())));
            }
            doc.entries.push(EntryInfo {
                kind: b.kind,
                name: b.name().to_string(),
                file: b.file.clone(),
                line: b.line,
                note: b.note.clone(),
            });
        }
        let of = |k: EntryKind| blocks.iter().filter(move |b| b.kind == k);
        for b in of(EntryKind::Ring) {
            doc.resolve_ring(b)?;
        }
        for b in of(EntryKind::Ideal) {
            doc.resolve_ideal(b)?;
        }
        for b in of(EntryKind::Class) {
            doc.resolve_class(b)?;
        }
        for b in of(EntryKind::Map) {
            doc.resolve_map(b)?;
        }
        for b in of(EntryKind::Stratum) {
            doc.resolve_stratum(b)?;
        }
        for b in of(EntryKind::Glue) {
            doc.resolve_glue(b)?;
        }
        for b in of(EntryKind::Glue) {
            let g = &doc.glues[b.name()];
            if !doc.strata.contains_key(&g.open) && !doc.glues.contains_key(&g.open) {
                return Err(b.header_err(format!("open side `{}` is neither a stratum nor a glue block", g.open)));
            }
        }
        Ok(doc)
    }

    fn ring_ref(&self, b: &Block, name: &str) -> Result<GradedRing, ChowFileError> {
        self.rings.get(name).cloned().ok_or_else(|| b.header_err(format!("unknown ring `{name}`")))
    }

    fn resolve_ring(&mut self, b: &Block) -> Result<(), ChowFileError> {
        if b.header.len() != 2 {
            return Err(b.header_err("expected `ring NAME`"));
        }
        let mut vars = Vec::new();
        for item in &b.items {
            let rest =
                item.text.strip_prefix("var ").ok_or_else(|| b.err(item.line, "expected `var NAME : DEGREE`"))?;
            let (name, deg) = rest.split_once(':').ok_or_else(|| b.err(item.line, "missing `: DEGREE`"))?;
            let deg: u32 = deg.trim().parse().map_err(|_| b.err(item.line, format!("bad degree `{}`", deg.trim())))?;
            vars.push((name.trim().to_string(), deg));
        }
        let ring = GradedRing::new(vars).map_err(|e| b.header_err(e.to_string()))?;
        self.rings.insert(b.name().to_string(), ring);
        Ok(())
    }

    fn in_ring(&self, b: &Block) -> Result<GradedRing, ChowFileError> {
        match b.header.as_slice() {
            [_, _, kw, ring] if kw == "in" => self.ring_ref(b, ring),
            _ => Err(b.header_err(format!("expected `{} NAME in RING`", b.kind.keyword()))),
        }
    }

    fn resolve_ideal(&mut self, b: &Block) -> Result<(), ChowFileError> {
        let ring = self.in_ring(b)?;
        let mut relations = Vec::new();
        for (k, item) in b.items.iter().enumerate() {
            let rest =
                item.text.strip_prefix("rel ").ok_or_else(|| b.err(item.line, "expected `rel [NAME =] EXPR`"))?;
            let (name, expr) = match rest.split_once('=') {
                Some((n, e)) => (n.trim().to_string(), e),
                None => (format!("r{}", k + 1), rest),
            };
            let p = ring.parse(expr).map_err(|e| b.err(item.line, e.to_string()))?;
            if !p.is_homogeneous() {
                return Err(b.err(item.line, format!("relation `{name}` is not homogeneous")));
            }
            relations.push((name, p));
        }
        self.ideals.insert(b.name().to_string(), RelationList { ring, relations });
        Ok(())
    }

    fn resolve_class(&mut self, b: &Block) -> Result<(), ChowFileError> {
        let ring = self.in_ring(b)?;
        let item = match b.items.as_slice() {
            [one] => one,
            _ => return Err(b.header_err("a class needs exactly one expression")),
        };
        let p = ring.parse(&item.text).map_err(|e| b.err(item.line, e.to_string()))?;
        if !p.is_homogeneous() {
            return Err(b.err(item.line, format!("class `{}` is not homogeneous", b.name())));
        }
        self.classes.insert(b.name().to_string(), p);
        Ok(())
    }

    fn resolve_map(&mut self, b: &Block) -> Result<(), ChowFileError> {
        let (src, tgt, modulo) = match b.header.as_slice() {
            [_, _, f, s, t, d] if f == "from" && t == "to" => (s, d, None),
            [_, _, f, s, t, d, m, j] if f == "from" && t == "to" && m == "mod" => (s, d, Some(j.clone())),
            _ => return Err(b.header_err("expected `map NAME from RING to RING [mod IDEAL]`")),
        };
        let (source, target) = (self.ring_ref(b, src)?, self.ring_ref(b, tgt)?);
        if let Some(j) = &modulo {
            let rel = self.ideals.get(j).ok_or_else(|| b.header_err(format!("unknown ideal `{j}`")))?;
            if !rel.ring.same_as(&target) {
                return Err(b.header_err(format!("ideal `{j}` does not live in `{tgt}`")));
            }
        }
        let mut images: Vec<Option<Polynomial>> = vec![None; source.nvars()];
        for item in &b.items {
            let rest =
                item.text.strip_prefix("send ").ok_or_else(|| b.err(item.line, "expected `send VAR -> EXPR`"))?;
            let (var, expr) = rest.split_once("->").ok_or_else(|| b.err(item.line, "missing `->`"))?;
            let i = source
                .index_of(var.trim())
                .ok_or_else(|| b.err(item.line, format!("`{}` is not a variable of `{src}`", var.trim())))?;
            if images[i].is_some() {
                return Err(b.err(item.line, format!("`{}` is sent twice", var.trim())));
            }
            images[i] = Some(target.parse(expr).map_err(|e| b.err(item.line, e.to_string()))?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| b.header_err(format!("no image for `{}`", source.name(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        let map = RingMap::new(&source, &target, images).map_err(|e| b.header_err(e.to_string()))?;
        self.maps.insert(b.name().to_string(), MapDecl { map, modulo });
        Ok(())
    }

    fn keyed<'a>(b: &'a Block, keys: &[&str]) -> Result<BTreeMap<String, (&'a str, usize)>, ChowFileError> {
        let mut out = BTreeMap::new();
        for item in &b.items {
            let (k, v) = item.text.split_once(char::is_whitespace).unwrap_or((&item.text, ""));
            if !keys.contains(&k) {
                return Err(b.err(item.line, format!("unexpected `{k}` in {} block", b.kind.keyword())));
            }
            if out.insert(k.to_string(), (v.trim(), item.line)).is_some() {
                return Err(b.err(item.line, format!("`{k}` given twice")));
            }
        }
        Ok(out)
    }

    fn resolve_stratum(&mut self, b: &Block) -> Result<(), ChowFileError> {
        let kv = Self::keyed(b, &["ring", "ideal"])?;
        let ring = kv.get("ring").ok_or_else(|| b.header_err("stratum without `ring`"))?.0.to_string();
        let r = self.ring_ref(b, &ring)?;
        let ideal = kv.get("ideal").map(|(v, _)| v.to_string());
        if let Some(j) = &ideal {
            match self.ideals.get(j) {
                Some(rel) if rel.ring.same_as(&r) => {}
                Some(_) => return Err(b.header_err(format!("ideal `{j}` does not live in `{ring}`"))),
                None => return Err(b.header_err(format!("unknown ideal `{j}`"))),
            }
        }
        self.strata.insert(b.name().to_string(), StratumDecl { ring, ideal });
        Ok(())
    }

    fn resolve_glue(&mut self, b: &Block) -> Result<(), ChowFileError> {
        let kv = Self::keyed(b, &["open", "closed", "class", "pullback", "ctop"])?;
        let get = |k: &str| kv.get(k).copied().ok_or_else(|| b.header_err(format!("glue block without `{k}`")));
        let closed = get("closed")?.0.to_string();
        let stratum = self.strata.get(&closed).ok_or_else(|| b.header_err(format!("unknown stratum `{closed}`")))?;
        let closed_ring = self.rings[&stratum.ring].clone();
        let (class, class_line) = get("class")?;
        let (var, deg) = class.split_once(':').ok_or_else(|| b.err(class_line, "expected `class VAR : DEGREE`"))?;
        let class_degree: u32 = deg.trim().parse().map_err(|_| b.err(class_line, "bad degree"))?;
        let pullback = get("pullback")?.0.to_string();
        let map = self.maps.get(&pullback).ok_or_else(|| b.header_err(format!("unknown map `{pullback}`")))?;
        if !map.map.target().same_as(&closed_ring) {
            return Err(b.header_err(format!("map `{pullback}` does not land in the closed stratum's ring")));
        }
        let (ctop, ctop_line) = get("ctop")?;
        let c_top = closed_ring.parse(ctop).map_err(|e| b.err(ctop_line, e.to_string()))?;
        if c_top.degree() != Some(class_degree) && !c_top.is_zero() {
            return Err(b.err(ctop_line, format!("top Chern class must have degree {class_degree}")));
        }
        self.glues.insert(
            b.name().to_string(),
            GlueDecl {
                open: get("open")?.0.to_string(),
                closed,
                class_var: var.trim().to_string(),
                class_degree,
                pullback,
                c_top,
            },
        );
        Ok(())
    }

    pub fn entry(&self, name: &str) -> Option<&EntryInfo> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn ring(&self, name: &str) -> Option<&GradedRing> {
        self.rings.get(name)
    }

    pub fn ideal(&self, name: &str) -> Option<Ideal> {
        self.ideals.get(name).map(RelationList::ideal)
    }

    pub fn class(&self, name: &str) -> Option<&Polynomial> {
        self.classes.get(name)
    }

    pub fn map(&self, name: &str) -> Option<&MapDecl> {
        self.maps.get(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = "\
# toy document

ring R
  var x : 1
  var y : 2

# the relations
ideal I in R
  rel a = x^2
      - y
  rel x*y

class c in S
  t^3

map f from R to S mod J
  send x -> t
  send y -> t^2

ideal J in S
  rel t^4

ring S
  var t : 1

stratum Z
  ring S
  ideal J
";

    #[test]
    fn parses_with_forward_references() {
        let doc = ChowDocument::parse("toy.chow", TOY).unwrap();
        let i = &doc.ideals["I"];
        assert_eq!(i.relations.len(), 2);
        assert_eq!(i.relations[0].0, "a");
        assert_eq!(i.relations[0].1.to_string(), "x^2 - y");
        assert_eq!(i.relations[1].0, "r2");
        assert_eq!(doc.classes["c"].to_string(), "t^3");
        assert_eq!(doc.maps["f"].modulo.as_deref(), Some("J"));
        assert_eq!(doc.entry("I").unwrap().note, "the relations");
        assert_eq!(doc.entry("R").unwrap().note, "toy document");
        assert_eq!(doc.strata["Z"].ideal.as_deref(), Some("J"));
    }

    #[test]
    fn reports_line_of_bad_expression() {
        let err = ChowDocument::parse("bad.chow", "ring R\n  var x : 1\nideal I in R\n  rel x +* x\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.to_string().starts_with("bad.chow:4:"));
    }

    #[test]
    fn rejects_inhomogeneous_relation() {
        let err = ChowDocument::parse("bad.chow", "ring R\n  var x : 1\nideal I in R\n  rel x + x^2\n").unwrap_err();
        assert!(err.msg.contains("not homogeneous"));
    }

    #[test]
    fn rejects_missing_image_and_duplicates() {
        let src = "ring R\n  var x : 1\n  var y : 1\nmap f from R to R\n  send x -> y\n";
        assert!(ChowDocument::parse("m.chow", src).unwrap_err().msg.contains("no image for `y`"));
        let dup = "ring R\n  var x : 1\nring R\n  var y : 1\n";
        assert!(ChowDocument::parse("d.chow", dup).unwrap_err().msg.contains("already declared"));
    }

    #[test]
    fn empty_ideal_is_allowed() {
        let doc = ChowDocument::parse("e.chow", "ring R\n  var x : 1\nideal I0 in R\n").unwrap();
        assert!(doc.ideal("I0").unwrap().is_zero());
    }
}
