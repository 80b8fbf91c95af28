//! Polytope files: JSON `{"vertices": [[x,y,z], ...]}` or OFF (vertices only).

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Polytope3, Vec3};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub vertices: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<usize>>>,
}

impl PolytopeFile {
    pub fn from_polytope(p: &Polytope3) -> Self {
        PolytopeFile {
            vertices: p.vertices().iter().map(|v| v.to_array()).collect(),
            facets: Some(p.facets().iter().map(|f| f.vertices.clone()).collect()),
        }
    }
}

pub fn parse_json(text: &str) -> Result<Vec<Vec3>> {
    let f: PolytopeFile = serde_json::from_str(text)?;
    Ok(f.vertices.into_iter().map(Vec3::from).collect())
}

/// Reads the vertex block of an OFF file; faces are ignored.
pub fn parse_off(text: &str) -> Result<Vec<Vec3>> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    let head = tokens.next().ok_or_else(|| Error::Parse("empty OFF file".into()))?;
    let first_count = if head == "OFF" {
        tokens.next().ok_or_else(|| Error::Parse("missing OFF counts".into()))?
    } else if let Some(rest) = head.strip_prefix("OFF") {
        rest
    } else {
        return Err(Error::Parse(format!("not an OFF file (header {head:?})")));
    };
    let nv: usize = first_count
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex count {first_count:?}")))?;
    // face and edge counts
    tokens.next();
    tokens.next();
    let mut out = Vec::with_capacity(nv);
    for i in 0..nv {
        let mut c = [0.0; 3];
        for x in c.iter_mut() {
            let t = tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("OFF vertex {i} truncated")))?;
            *x = t.parse().map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))?;
        }
        out.push(Vec3::from(c));
    }
    Ok(out)
}

/// Loads a polytope file (OFF by extension or header, JSON otherwise) and takes its hull.
pub fn load_polytope(path: &Path) -> Result<Polytope3> {
    let text = std::fs::read_to_string(path)?;
    let is_off = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("off")) || text.trim_start().starts_with("OFF");
    let pts = if is_off { parse_off(&text)? } else { parse_json(&text)? };
    Polytope3::hull(&pts)
}

pub fn polytope_to_json(p: &Polytope3) -> Result<String> {
    Ok(serde_json::to_string_pretty(&PolytopeFile::from_polytope(p))?)
}
