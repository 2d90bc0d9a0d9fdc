//! Input files: groups, presentations and elements, each versioned with a
//! `"schema": 1` field and rejecting unknown fields.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;

use amalgsep::amalgam::{build_amalgam, AmalgamPresentation, FreeAmalgam, Side};
use amalgsep::compat::Description;
use amalgsep::fingrp::{subgroup_generated, Elem, FiniteGroup, GroupJson, Subgroup};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: unsupported schema version {found}, expected {SCHEMA_VERSION}")]
    Schema { path: PathBuf, found: u32 },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(e: impl ToString) -> InputError {
    InputError::Invalid(e.to_string())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| InputError::Json { path: path.into(), source })
}

fn check_schema(path: &Path, found: u32) -> Result<(), InputError> {
    if found == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(InputError::Schema { path: path.into(), found })
    }
}

/// A factor group: a path to a group file, relative to the presentation, or
/// the table inline.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Path(String),
    Inline(GroupJson),
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PresentationFile {
    /// Finite factors; `h` and `k` are generator lists by element name and
    /// `phi` maps every member of `H` to its image in `K` (the identity may
    /// be omitted).
    Finite {
        schema: u32,
        a: GroupSource,
        b: GroupSource,
        h: Vec<String>,
        k: Vec<String>,
        phi: BTreeMap<String, String>,
    },
    /// Free factors on the named generators; `h` and `k` are free bases,
    /// matched up in order by `φ`.
    Free {
        schema: u32,
        a_gens: Vec<String>,
        b_gens: Vec<String>,
        h: Vec<String>,
        k: Vec<String>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub schema: u32,
    pub word: String,
}

pub fn load_group(path: &Path) -> Result<FiniteGroup, InputError> {
    let json: GroupJson = read_json(path)?;
    check_schema(path, json.schema.unwrap_or(SCHEMA_VERSION))?;
    FiniteGroup::from_json(&json).map_err(invalid)
}

fn resolve_group(base: &Path, src: &GroupSource) -> Result<Arc<FiniteGroup>, InputError> {
    match src {
        GroupSource::Path(p) => load_group(&base.join(p)).map(Arc::new),
        GroupSource::Inline(json) => FiniteGroup::from_json(json).map(Arc::new).map_err(invalid),
    }
}

fn parse_elements(g: &FiniteGroup, names: &[String]) -> Result<Vec<Elem>, InputError> {
    names.iter().map(|n| g.parse_element(n).map_err(invalid)).collect()
}

pub fn load_presentation(path: &Path) -> Result<Description, InputError> {
    let base = path.parent().unwrap_or(Path::new("."));
    match read_json(path)? {
        PresentationFile::Finite { schema, a, b, h, k, phi } => {
            check_schema(path, schema)?;
            let (a, b) = (resolve_group(base, &a)?, resolve_group(base, &b)?);
            let h = subgroup_generated(&a, parse_elements(&a, &h)?);
            let k = subgroup_generated(&b, parse_elements(&b, &k)?);
            let mut map = HashMap::from([(0, 0)]);
            for (x, y) in &phi {
                map.insert(a.parse_element(x).map_err(invalid)?, b.parse_element(y).map_err(invalid)?);
            }
            build_amalgam(a, b, h, k, &map).map(Description::Finite).map_err(invalid)
        }
        PresentationFile::Free { schema, a_gens, b_gens, h, k } => {
            check_schema(path, schema)?;
            let h: Vec<&str> = h.iter().map(String::as_str).collect();
            let k: Vec<&str> = k.iter().map(String::as_str).collect();
            FreeAmalgam::parse_new(a_gens, b_gens, &h, &k).map(Description::Free).map_err(invalid)
        }
    }
}

/// An element argument: a literal word, or a path to an element file when
/// the argument ends in `.json`.
pub fn load_element(arg: &str) -> Result<String, InputError> {
    if !arg.ends_with(".json") {
        return Ok(arg.to_string());
    }
    let path = Path::new(arg);
    let file: ElementFile = read_json(path)?;
    check_schema(path, file.schema)?;
    Ok(file.word)
}

/// Comma-separated element names, generating a subgroup of the factor.
pub fn parse_subgroup(pres: &AmalgamPresentation, side: Side, gens: Option<&str>) -> Result<Subgroup, InputError> {
    let g = pres.factor(side);
    let names: Vec<String> = gens
        .map(|s| s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect())
        .unwrap_or_default();
    Ok(subgroup_generated(g, parse_elements(g, &names)?))
}

pub fn finite(desc: &Description, command: &str) -> Result<Arc<AmalgamPresentation>, InputError> {
    match desc {
        Description::Finite(p) => Ok(Arc::clone(p)),
        Description::Free(_) => Err(InputError::Invalid(format!("{command} needs a presentation with finite factors"))),
    }
}
