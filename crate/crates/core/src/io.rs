//! Input formats: group files, declared-pair files and verification bundles.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;

use crate::algebra::AlgebraElement;
use crate::corpus;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::shoda::DeclaredPair;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

#[derive(Deserialize)]
struct CayleyFile {
    table: Vec<Vec<usize>>,
}

/// Group from text: permutation generators, or JSON `{"table": [[..]]}` / a bare table.
pub fn parse_group(text: &str, closure_cap: usize) -> Result<FiniteGroup> {
    let t = text.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        let table = if t.starts_with('{') {
            serde_json::from_str::<CayleyFile>(t).map_err(|e| Error::Parse(e.to_string()))?.table
        } else {
            serde_json::from_str::<Vec<Vec<usize>>>(t).map_err(|e| Error::Parse(e.to_string()))?
        };
        if table.len() > closure_cap {
            return Err(Error::OrderBoundExceeded(closure_cap));
        }
        return FiniteGroup::from_cayley_table(&table);
    }
    FiniteGroup::from_permutation_text(text, closure_cap)
}

/// `builtin:NAME` or a path to a group file.
pub fn load_group(source: &str, closure_cap: usize) -> Result<Arc<FiniteGroup>> {
    match source.strip_prefix("builtin:") {
        Some(name) => corpus::builtin(name),
        None => Ok(Arc::new(parse_group(&read(Path::new(source))?, closure_cap)?)),
    }
}

#[derive(Deserialize)]
struct PairsFile {
    pairs: Vec<PairEntry>,
}

#[derive(Deserialize)]
struct PairEntry {
    #[serde(rename = "H")]
    h: Vec<String>,
    #[serde(rename = "K")]
    k: Vec<String>,
    #[serde(default)]
    chain: Option<Vec<Vec<String>>>,
}

fn subgroup_from_words(group: &FiniteGroup, words: &[String]) -> Result<Subgroup> {
    let els = words.iter().map(|w| group.parse_word(w)).collect::<Result<Vec<_>>>()?;
    Ok(group.generated(&els))
}

/// `{"pairs": [{"H": [words], "K": [words], "chain": [[words], ..]}]}`; the chain is optional.
pub fn parse_pairs(group: &FiniteGroup, text: &str) -> Result<Vec<DeclaredPair>> {
    let file: PairsFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.pairs
        .iter()
        .map(|p| {
            Ok(DeclaredPair {
                h: subgroup_from_words(group, &p.h)?,
                k: subgroup_from_words(group, &p.k)?,
                tower: p
                    .chain
                    .as_ref()
                    .map(|c| c.iter().map(|ws| subgroup_from_words(group, ws)).collect::<Result<Vec<_>>>())
                    .transpose()?,
            })
        })
        .collect()
}

pub fn load_pairs(group: &FiniteGroup, path: &Path) -> Result<Vec<DeclaredPair>> {
    parse_pairs(group, &read(path)?)
}

/// Inverse of [`parse_pairs`].
pub fn pairs_to_json(group: &FiniteGroup, pairs: &[DeclaredPair]) -> Value {
    let words = |s: &Subgroup| -> Vec<String> { group.subgroup_generators(s).into_iter().map(|g| group.word(g)).collect() };
    let entries: Vec<Value> = pairs
        .iter()
        .map(|p| {
            let mut m = serde_json::Map::new();
            m.insert("H".into(), words(&p.h).into());
            m.insert("K".into(), words(&p.k).into());
            if let Some(t) = &p.tower {
                m.insert("chain".into(), t.iter().map(|s| Value::from(words(s))).collect::<Vec<_>>().into());
            }
            Value::Object(m)
        })
        .collect();
    serde_json::json!({ "pairs": entries })
}

pub fn element(group: &Arc<FiniteGroup>, v: &Value) -> Result<AlgebraElement> {
    AlgebraElement::from_json(group, v)
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CLOSURE_CAP;

    #[test]
    fn group_formats() {
        let g = parse_group("# S3\nr: (1 2 3)\ns: (1 2)\n", DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 6);
        let c3 = parse_group("{\"table\": [[0,1,2],[1,2,0],[2,0,1]]}", DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(parse_group("[[0,1],[1,1]]", DEFAULT_CLOSURE_CAP).is_err());
        assert!(matches!(parse_group("[[0,1,2],[1,2,0],[2,0,1]]", 2), Err(Error::OrderBoundExceeded(2))));
        assert_eq!(load_group("builtin:d8", DEFAULT_CLOSURE_CAP).unwrap().order(), 8);
        assert!(load_group("/nonexistent/file", DEFAULT_CLOSURE_CAP).is_err());
    }

    #[test]
    fn pairs_round_trip() {
        let g = corpus::builtin("s3").unwrap();
        let text = r#"{"pairs": [{"H": ["r"], "K": [], "chain": [["r"], ["r", "s"]]}, {"H": ["r","s"], "K": ["r"]}]}"#;
        let pairs = parse_pairs(&g, text).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].h.order(), 3);
        assert_eq!(pairs[0].tower.as_ref().unwrap()[1].order(), 6);
        let again = parse_pairs(&g, &pairs_to_json(&g, &pairs).to_string()).unwrap();
        assert_eq!(again[1].k, pairs[1].k);
        assert!(parse_pairs(&g, r#"{"pairs": [{"H": ["q"], "K": []}]}"#).is_err());
    }
}
