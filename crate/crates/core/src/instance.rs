//! The plain-text instance format.
//!
//! ```text
//! # comments run to the end of the line
//! [group Z2]
//! elements = e a
//! table =
//! e a
//! a e
//!
//! [space X]
//! points = x0 x1
//!
//! [code A]
//! group = Z2
//! space = X
//! generators =
//! a e
//! e a
//!
//! [hom H]
//! from = A
//! to = A
//! map =
//! a e -> e a
//! e a -> a e
//! ```
//!
//! Block keys (`table`, `generators`, `map`) take the following lines up to
//! the next key or header. Map lines list the source generators in order.
//! Sections may appear in any order; references are resolved after the whole
//! file is read. [`InstanceFile::serialize`] writes groups, spaces, codes and
//! homs in declaration order, one blank line between sections.

use std::sync::Arc;

use indexmap::IndexMap;
use thiserror::Error;

use crate::code::{CodeError, FunctionGroup, GFunction};
use crate::group::{FiniteGroup, GroupError};
use crate::hom::{CodeHom, HomError};
use crate::sets::{PointSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown {kind} `{name}`")]
    UnknownReference { line: usize, kind: &'static str, name: String },
    #[error("line {line}: {source}")]
    Validation { line: usize, source: ValidationError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// Errors from building an [`InstanceFile`] programmatically.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("`{0}` cannot be used as a name or label")]
    BadToken(String),
    #[error("{kind} `{name}` is already defined")]
    Duplicate { kind: &'static str, name: String },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("code group or space does not match the named one")]
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeEntry {
    pub group: String,
    pub space: String,
    pub code: Arc<FunctionGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomEntry {
    pub from: String,
    pub to: String,
    pub hom: CodeHom,
}

/// Named groups, spaces, codes and homomorphisms, in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceFile {
    groups: IndexMap<String, Arc<FiniteGroup>>,
    spaces: IndexMap<String, Arc<PointSpace>>,
    codes: IndexMap<String, CodeEntry>,
    homs: IndexMap<String, HomEntry>,
}

/// Names and labels must survive a write/read cycle.
fn valid_token(s: &str) -> bool {
    !s.is_empty()
        && !s.contains("->")
        && !s.chars().any(|c| c.is_whitespace() || matches!(c, '=' | '#' | '[' | ']'))
}

fn check_tokens<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<(), BuildError> {
    match tokens.into_iter().find(|t| !valid_token(t)) {
        Some(t) => Err(BuildError::BadToken(t.to_string())),
        None => Ok(()),
    }
}

fn insert_new<V>(map: &mut IndexMap<String, V>, kind: &'static str, name: &str, v: V) -> Result<(), BuildError> {
    check_tokens([name])?;
    if map.contains_key(name) {
        return Err(BuildError::Duplicate { kind, name: name.to_string() });
    }
    map.insert(name.to_string(), v);
    Ok(())
}

impl InstanceFile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn groups(&self) -> &IndexMap<String, Arc<FiniteGroup>> {
        &self.groups
    }

    pub fn spaces(&self) -> &IndexMap<String, Arc<PointSpace>> {
        &self.spaces
    }

    pub fn codes(&self) -> &IndexMap<String, CodeEntry> {
        &self.codes
    }

    pub fn homs(&self) -> &IndexMap<String, HomEntry> {
        &self.homs
    }

    pub fn add_group(&mut self, name: &str, group: Arc<FiniteGroup>) -> Result<(), BuildError> {
        check_tokens(group.labels().iter().map(String::as_str))?;
        insert_new(&mut self.groups, "group", name, group)
    }

    pub fn add_space(&mut self, name: &str, space: Arc<PointSpace>) -> Result<(), BuildError> {
        check_tokens(space.labels().iter().map(String::as_str))?;
        insert_new(&mut self.spaces, "space", name, space)
    }

    /// `code` must be over the named group and space.
    pub fn add_code(&mut self, name: &str, group: &str, space: &str, code: Arc<FunctionGroup>) -> Result<(), BuildError> {
        let g = self.groups.get(group).ok_or_else(|| BuildError::Unknown { kind: "group", name: group.into() })?;
        let s = self.spaces.get(space).ok_or_else(|| BuildError::Unknown { kind: "space", name: space.into() })?;
        if g != code.group() || s != code.space() {
            return Err(BuildError::Mismatch);
        }
        let entry = CodeEntry { group: group.into(), space: space.into(), code };
        insert_new(&mut self.codes, "code", name, entry)
    }

    /// `hom` must run between the named codes.
    pub fn add_hom(&mut self, name: &str, from: &str, to: &str, hom: CodeHom) -> Result<(), BuildError> {
        let a = self.codes.get(from).ok_or_else(|| BuildError::Unknown { kind: "code", name: from.into() })?;
        let b = self.codes.get(to).ok_or_else(|| BuildError::Unknown { kind: "code", name: to.into() })?;
        if &a.code != hom.source() || &b.code != hom.target() {
            return Err(BuildError::Mismatch);
        }
        let entry = HomEntry { from: from.into(), to: to.into(), hom };
        insert_new(&mut self.homs, "hom", name, entry)
    }

    /// Canonical text form; [`parse_instance`] reads it back to an equal
    /// instance.
    pub fn serialize(&self) -> String {
        let mut sections: Vec<String> = Vec::new();
        for (name, g) in &self.groups {
            let mut s = format!("[group {name}]\nelements = {}\ntable =\n", g.labels().join(" "));
            for row in g.table_rows() {
                let labels: Vec<&str> = row.iter().map(|&x| g.label(x)).collect();
                s.push_str(&labels.join(" "));
                s.push('\n');
            }
            sections.push(s);
        }
        for (name, sp) in &self.spaces {
            sections.push(format!("[space {name}]\npoints = {}\n", sp.labels().join(" ")));
        }
        for (name, entry) in &self.codes {
            let code = &entry.code;
            let mut s = format!("[code {name}]\ngroup = {}\nspace = {}\ngenerators =\n", entry.group, entry.space);
            for g in code.generators() {
                s.push_str(&code.format_function(g));
                s.push('\n');
            }
            sections.push(s);
        }
        for (name, entry) in &self.homs {
            let hom = &entry.hom;
            let (a, b) = (hom.source(), hom.target());
            let mut s = format!("[hom {name}]\nfrom = {}\nto = {}\nmap =\n", entry.from, entry.to);
            for (g, img) in a.generators().iter().zip(hom.generator_images()) {
                s.push_str(&format!("{} -> {}\n", a.format_function(g), b.format_function(&img)));
            }
            sections.push(s);
        }
        sections.join("\n")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Group,
    Space,
    Code,
    Hom,
}

impl Kind {
    fn keys(self) -> &'static [(&'static str, bool)] {
        // (key, is_block)
        match self {
            Kind::Group => &[("elements", false), ("table", true)],
            Kind::Space => &[("points", false)],
            Kind::Code => &[("group", false), ("space", false), ("generators", true)],
            Kind::Hom => &[("from", false), ("to", false), ("map", true)],
        }
    }
}

/// A line's 1-based number and its comment-free, trimmed text.
type Line<'a> = (usize, &'a str);

#[derive(Debug)]
struct RawSection<'a> {
    kind: Kind,
    name: &'a str,
    line: usize,
    values: IndexMap<&'static str, Line<'a>>,
    blocks: IndexMap<&'static str, (usize, Vec<Line<'a>>)>,
}

impl<'a> RawSection<'a> {
    fn value(&self, key: &str) -> Result<Line<'a>, InstanceError> {
        self.values.get(key).copied().ok_or_else(|| missing(self.line, key))
    }

    fn block(&self, key: &str) -> Result<&(usize, Vec<Line<'a>>), InstanceError> {
        self.blocks.get(key).ok_or_else(|| missing(self.line, key))
    }
}

fn missing(line: usize, key: &str) -> InstanceError {
    syntax(line, format!("section is missing `{key}`"))
}

fn syntax(line: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Syntax { line, message: message.into() }
}

fn invalid(line: usize, e: impl Into<ValidationError>) -> InstanceError {
    InstanceError::Validation { line, source: e.into() }
}

fn tokens(line: Line<'_>) -> Result<Vec<String>, InstanceError> {
    let toks: Vec<String> = line.1.split_whitespace().map(str::to_string).collect();
    match toks.iter().find(|t| !valid_token(t)) {
        Some(t) => Err(syntax(line.0, format!("`{t}` is not a valid label"))),
        None => Ok(toks),
    }
}

fn single_name(line: Line<'_>) -> Result<&str, InstanceError> {
    let toks: Vec<&str> = line.1.split_whitespace().collect();
    match toks.as_slice() {
        [name] if valid_token(name) => Ok(name),
        _ => Err(syntax(line.0, format!("expected a single name, found `{}`", line.1))),
    }
}

fn split_sections(text: &str) -> Result<Vec<RawSection<'_>>, InstanceError> {
    let mut sections: Vec<RawSection<'_>> = Vec::new();
    let mut open_block: Option<&'static str> = None;
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let header = header
                .strip_suffix(']')
                .ok_or_else(|| syntax(number, "unterminated section header"))?;
            let mut parts = header.split_whitespace();
            let kind = match parts.next() {
                Some("group") => Kind::Group,
                Some("space") => Kind::Space,
                Some("code") => Kind::Code,
                Some("hom") => Kind::Hom,
                _ => return Err(syntax(number, format!("unknown section `[{header}]`"))),
            };
            let name = match (parts.next(), parts.next()) {
                (Some(name), None) if valid_token(name) => name,
                _ => return Err(syntax(number, "section header needs exactly one valid name")),
            };
            sections.push(RawSection {
                kind,
                name,
                line: number,
                values: IndexMap::new(),
                blocks: IndexMap::new(),
            });
            open_block = None;
            continue;
        }
        let section = sections
            .last_mut()
            .ok_or_else(|| syntax(number, "content before the first section header"))?;
        if let Some((key, value)) = line.split_once('=') {
            let (key, value) = (key.trim(), value.trim());
            let &(key, is_block) = section
                .kind
                .keys()
                .iter()
                .find(|(k, _)| *k == key)
                .ok_or_else(|| syntax(number, format!("unknown key `{key}`")))?;
            if section.values.contains_key(key) || section.blocks.contains_key(key) {
                return Err(syntax(number, format!("`{key}` given twice")));
            }
            if is_block {
                if !value.is_empty() {
                    return Err(syntax(number, format!("`{key} =` takes its entries on the following lines")));
                }
                section.blocks.insert(key, (number, Vec::new()));
                open_block = Some(key);
            } else {
                section.values.insert(key, (number, value));
                open_block = None;
            }
        } else {
            let key = open_block.ok_or_else(|| syntax(number, format!("unexpected line `{line}`")))?;
            section.blocks[key].1.push((number, line));
        }
    }
    Ok(sections)
}

fn labels_to_elems(group: &FiniteGroup, line: Line<'_>) -> Result<Vec<usize>, InstanceError> {
    tokens(line)?
        .iter()
        .map(|t| {
            group
                .element(t)
                .ok_or_else(|| syntax(line.0, format!("`{t}` is not an element of the group")))
        })
        .collect()
}

fn function(group: &FiniteGroup, n_points: usize, line: Line<'_>) -> Result<GFunction, InstanceError> {
    let values = labels_to_elems(group, line)?;
    if values.len() != n_points {
        return Err(syntax(line.0, format!("expected {n_points} values, found {}", values.len())));
    }
    Ok(GFunction::new(values))
}

fn lookup<'m, V>(map: &'m IndexMap<String, V>, kind: &'static str, line: Line<'_>) -> Result<(&'m str, &'m V), InstanceError> {
    let name = single_name(line)?;
    map.get_key_value(name)
        .map(|(k, v)| (k.as_str(), v))
        .ok_or_else(|| InstanceError::UnknownReference { line: line.0, kind, name: name.to_string() })
}

fn build_group(s: &RawSection<'_>) -> Result<FiniteGroup, InstanceError> {
    let elements = s.value("elements")?;
    let labels = tokens(elements)?;
    let (table_line, rows) = s.block("table")?;
    if rows.len() != labels.len() {
        return Err(syntax(*table_line, format!("table has {} rows, expected {}", rows.len(), labels.len())));
    }
    let mut table = Vec::with_capacity(rows.len());
    for &row in rows {
        let mut entries = Vec::new();
        for t in tokens(row)? {
            let x = labels
                .iter()
                .position(|l| *l == t)
                .ok_or_else(|| syntax(row.0, format!("`{t}` is not one of the declared elements")))?;
            entries.push(x);
        }
        table.push(entries);
    }
    FiniteGroup::new(labels, table).map_err(|e| invalid(s.line, e))
}

/// Parses and fully validates an instance. `code_cap` bounds the size of
/// every generated code.
pub fn parse_instance(text: &str, code_cap: usize) -> Result<InstanceFile, InstanceError> {
    let sections = split_sections(text)?;
    let mut out = InstanceFile::new();
    let duplicate = |s: &RawSection<'_>, e: BuildError| match e {
        BuildError::Duplicate { kind, name } => syntax(s.line, format!("{kind} `{name}` is already defined")),
        other => syntax(s.line, other.to_string()),
    };

    for s in sections.iter().filter(|s| s.kind == Kind::Group) {
        let g = build_group(s)?;
        out.add_group(s.name, Arc::new(g)).map_err(|e| duplicate(s, e))?;
    }
    for s in sections.iter().filter(|s| s.kind == Kind::Space) {
        let points = s.value("points")?;
        let space = PointSpace::new(tokens(points)?).map_err(|e| invalid(points.0, e))?;
        out.add_space(s.name, Arc::new(space)).map_err(|e| duplicate(s, e))?;
    }
    for s in sections.iter().filter(|s| s.kind == Kind::Code) {
        let (gname, group) = lookup(&out.groups, "group", s.value("group")?)?;
        let (sname, space) = lookup(&out.spaces, "space", s.value("space")?)?;
        let (block_line, rows) = s.block("generators")?;
        let gens = rows
            .iter()
            .map(|&row| function(group, space.len(), row))
            .collect::<Result<Vec<_>, _>>()?;
        let code = FunctionGroup::generate(space.clone(), group.clone(), gens, code_cap)
            .map_err(|e| invalid(*block_line, e))?;
        let (gname, sname) = (gname.to_string(), sname.to_string());
        out.add_code(s.name, &gname, &sname, Arc::new(code)).map_err(|e| duplicate(s, e))?;
    }
    for s in sections.iter().filter(|s| s.kind == Kind::Hom) {
        let (from, a) = lookup(&out.codes, "code", s.value("from")?)?;
        let (to, b) = lookup(&out.codes, "code", s.value("to")?)?;
        let (a, b) = (a.code.clone(), b.code.clone());
        let (from, to) = (from.to_string(), to.to_string());
        let (block_line, rows) = s.block("map")?;
        if rows.len() != a.generators().len() {
            return Err(syntax(
                *block_line,
                format!("map has {} lines, source code has {} generators", rows.len(), a.generators().len()),
            ));
        }
        let mut images = Vec::with_capacity(rows.len());
        for (k, &(number, text)) in rows.iter().enumerate() {
            let (lhs, rhs) = text
                .split_once("->")
                .ok_or_else(|| syntax(number, "map lines have the form `<generator> -> <image>`"))?;
            let g = function(a.group(), a.n_points(), (number, lhs))?;
            if g != a.generators()[k] {
                return Err(syntax(number, format!("map line {} must start with generator {}", k + 1, k + 1)));
            }
            images.push(function(b.group(), b.n_points(), (number, rhs))?);
        }
        let hom = CodeHom::from_generator_images(a, b, &images).map_err(|e| invalid(*block_line, e))?;
        out.add_hom(s.name, &from, &to, hom).map_err(|e| duplicate(s, e))?;
    }
    Ok(out)
}
