//! Line-oriented group catalog.
//!
//! ```text
//! # comment
//! S4   = S(4)
//! SD16 = gens(8): (1 2 3 4 5 6 7 8), (2 4)(3 7)(6 8)
//! G    = direct(S4, SD16)
//! ```
//!
//! Names are unique. A definition may refer to names defined anywhere in the
//! file, but not to itself through a cycle. Inside its own definition a name
//! denotes the builtin of the same spelling, so `V4 = V4` is allowed.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::builtin::resolve;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::perm::Permutation;

/// The catalog shipped with the crate.
pub const SHIPPED: &str = include_str!("../catalog/groups.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definition {
    /// Any builtin expression, possibly naming other entries.
    Builtin(String),
    Gens { degree: usize, gens: Vec<Permutation> },
    Direct(Vec<String>),
}

impl Definition {
    fn references(&self) -> BTreeSet<String> {
        match self {
            Definition::Builtin(expr) => identifiers(expr),
            Definition::Gens { .. } => BTreeSet::new(),
            Definition::Direct(names) => names.iter().cloned().collect(),
        }
    }
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Definition::Builtin(expr) => f.write_str(expr),
            Definition::Gens { degree, gens } => {
                write!(f, "gens({degree}):")?;
                for (i, g) in gens.iter().enumerate() {
                    write!(f, "{}{g}", if i == 0 { " " } else { ", " })?;
                }
                Ok(())
            }
            Definition::Direct(names) => write!(f, "direct({})", names.join(", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub definition: Definition,
    pub line: usize,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.name, self.definition)
    }
}

/// A parsed catalog with every entry resolved to a group.
#[derive(Debug, Clone)]
pub struct CatalogFile {
    pub entries: Vec<Entry>,
    groups: HashMap<String, FiniteGroup>,
}

fn identifiers(expr: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut cur = String::new();
    for c in expr.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphanumeric() || c == '_' {
            cur.push(c);
        } else {
            if cur.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
                out.insert(cur.clone());
            }
            cur.clear();
        }
    }
    out
}

fn is_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn catalog_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Catalog {
        line,
        msg: msg.into(),
    }
}

fn parse_definition(rhs: &str, line: usize) -> Result<Definition> {
    if let Some(rest) = rhs.strip_prefix("gens(") {
        let close = rest
            .find(')')
            .ok_or_else(|| catalog_err(line, "expected `)` after the degree"))?;
        let degree: usize = rest[..close]
            .trim()
            .parse()
            .map_err(|_| catalog_err(line, "degree must be a positive integer"))?;
        if degree == 0 {
            return Err(catalog_err(line, "degree must be a positive integer"));
        }
        let body = rest[close + 1..]
            .trim_start()
            .strip_prefix(':')
            .ok_or_else(|| catalog_err(line, "expected `:` after gens(degree)"))?;
        let gens = body
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                Permutation::parse(s, Some(degree))
                    .map_err(|e| catalog_err(line, format!("bad generator `{s}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Definition::Gens { degree, gens });
    }
    if let Some(inner) = rhs.strip_prefix("direct(").and_then(|r| r.strip_suffix(')')) {
        let names: Vec<String> = inner.split(',').map(|s| s.trim().to_string()).collect();
        if names.iter().all(|n| is_name(n)) {
            return Ok(Definition::Direct(names));
        }
    }
    Ok(Definition::Builtin(rhs.to_string()))
}

impl CatalogFile {
    /// Parses and resolves every entry under the given limits.
    pub fn parse(text: &str, limits: &Limits) -> Result<Self> {
        let mut entries: Vec<Entry> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (name, rhs) = content
                .split_once('=')
                .ok_or_else(|| catalog_err(line, "expected `name = definition`"))?;
            let (name, rhs) = (name.trim(), rhs.trim());
            if !is_name(name) {
                return Err(catalog_err(line, format!("invalid name `{name}`")));
            }
            if rhs.is_empty() {
                return Err(catalog_err(line, "empty definition"));
            }
            if let Some(&prev) = index.get(name) {
                return Err(catalog_err(
                    line,
                    format!("`{name}` already defined on line {}", entries[prev].line),
                ));
            }
            index.insert(name.to_string(), entries.len());
            entries.push(Entry {
                name: name.to_string(),
                definition: parse_definition(rhs, line)?,
                line,
            });
        }

        // Depth-first resolution; state 1 = in progress, 2 = done.
        let mut state = vec![0u8; entries.len()];
        let mut groups = HashMap::new();
        for start in 0..entries.len() {
            visit(start, &entries, &index, &mut state, &mut groups, limits, &mut Vec::new())?;
        }
        Ok(CatalogFile { entries, groups })
    }

    pub fn shipped() -> Self {
        Self::parse(SHIPPED, &Limits::default()).expect("shipped catalog is valid")
    }

    pub fn get(&self, name: &str) -> Option<&FiniteGroup> {
        self.groups.get(name)
    }

    pub fn groups(&self) -> &HashMap<String, FiniteGroup> {
        &self.groups
    }

    /// Entries with their groups, in file order.
    pub fn iter(&self) -> impl Iterator<Item = (&Entry, &FiniteGroup)> {
        self.entries.iter().map(|e| (e, &self.groups[&e.name]))
    }

    /// Resolves a group expression that may mention catalog names.
    pub fn resolve(&self, spec: &str, limits: &Limits) -> Result<FiniteGroup> {
        resolve(spec, &self.groups, limits)
    }
}

impl fmt::Display for CatalogFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

fn visit(
    i: usize,
    entries: &[Entry],
    index: &HashMap<String, usize>,
    state: &mut [u8],
    groups: &mut HashMap<String, FiniteGroup>,
    limits: &Limits,
    path: &mut Vec<String>,
) -> Result<()> {
    match state[i] {
        2 => return Ok(()),
        1 => {
            path.push(entries[i].name.clone());
            return Err(catalog_err(
                entries[i].line,
                format!("cyclic definition: {}", path.join(" -> ")),
            ));
        }
        _ => {}
    }
    state[i] = 1;
    path.push(entries[i].name.clone());
    let entry = &entries[i];
    for r in entry.definition.references() {
        if r == entry.name {
            continue;
        }
        if let Some(&j) = index.get(&r) {
            visit(j, entries, index, state, groups, limits, path)?;
        }
    }
    path.pop();
    let wrap = |e: Error| match e {
        Error::Catalog { .. } => e,
        other => catalog_err(entry.line, format!("`{}`: {other}", entry.name)),
    };
    let g = match &entry.definition {
        Definition::Gens { degree, gens } => {
            FiniteGroup::generate_with(*degree, gens, limits).map_err(wrap)?
        }
        def => resolve(&def.to_string(), groups, limits).map_err(wrap)?,
    };
    groups.insert(entry.name.clone(), g.with_name(entry.name.clone()));
    state[i] = 2;
    Ok(())
}
