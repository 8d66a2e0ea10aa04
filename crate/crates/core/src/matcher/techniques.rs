//! Side-by-side verdicts of named matching techniques on chosen concept pairs.
//!
//! A technique is approximated by the structural predicates it relies on.
//! Mapping files use one technique per line:
//!
//! ```text
//! # comment
//! OWL Lite Aligner = direct_super_sim | sibling_sim
//! OnlyPath = root_path_sim
//! Strict Baseline = direct_super_sim, sibling_sim
//! ```
//!
//! Commas join predicates that must all hold; `|` separates alternatives, any
//! one of which is enough.

use std::fmt;

use serde::Serialize;

use crate::lexicon::SynonymLexicon;
use crate::ontology::{ConceptId, OntologyError};
use crate::taxonomy::ContextTable;

use super::{MatchMode, Predicate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Technique {
    pub name: String,
    /// Alternatives; each is a conjunction of predicates.
    pub clauses: Vec<Vec<Predicate>>,
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clauses: Vec<String> = self
            .clauses
            .iter()
            .map(|c| c.iter().map(|p| p.name()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "{} = {}", self.name, clauses.join(" | "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TechniqueMapping {
    pub techniques: Vec<Technique>,
}

/// Structural stand-ins for four published matchers plus the shared-ancestor
/// criterion. These approximate the cited systems' verdicts on the studied
/// concept pairs; they are not reimplementations.
pub const DEFAULT_MAPPING: &str = "\
Information Content = root_path_sim | direct_super_sim
OWL Lite Aligner = direct_super_sim | sibling_sim
Anchor Prompt = direct_super_sim | sibling_sim, root_path_sim
Similarity Flooding = direct_super_sim | sibling_sim
Proposed Technique = proposed_sim
";

impl Default for TechniqueMapping {
    fn default() -> Self {
        parse_mapping(DEFAULT_MAPPING).expect("default mapping is valid")
    }
}

impl fmt::Display for TechniqueMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.techniques {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("mapping line {line}: {message}")]
pub struct MappingError {
    pub line: usize,
    pub message: String,
}

pub fn parse_mapping(source: &str) -> Result<TechniqueMapping, MappingError> {
    let mut techniques: Vec<Technique> = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| MappingError { line, message };
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let (name, body) = text
            .split_once('=')
            .ok_or_else(|| err("expected `Technique = predicate, ...`".into()))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(err("technique name is empty".into()));
        }
        if techniques.iter().any(|t| t.name == name) {
            return Err(err(format!("technique `{name}` defined twice")));
        }
        let mut clauses = Vec::new();
        for clause in body.split('|') {
            let preds = clause
                .split(',')
                .map(|p| p.parse::<Predicate>().map_err(|e| err(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            clauses.push(preds);
        }
        techniques.push(Technique {
            name: name.to_string(),
            clauses,
        });
    }
    Ok(TechniqueMapping { techniques })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixRow {
    pub source: ConceptId,
    pub target: ConceptId,
    /// One verdict per technique, in mapping order.
    pub cells: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TechniqueMatrix {
    pub techniques: Vec<String>,
    pub rows: Vec<MatrixRow>,
}

impl TechniqueMatrix {
    pub fn cell(&self, technique: &str, source: &str, target: &str) -> Option<bool> {
        let col = self.techniques.iter().position(|t| t == technique)?;
        self.rows
            .iter()
            .find(|r| r.source.as_str() == source && r.target.as_str() == target)
            .map(|r| r.cells[col])
    }
}

/// Evaluates every technique on every requested pair, keeping the pair order.
pub fn technique_report(
    pairs: &[(String, String)],
    source: &ContextTable,
    target: &ContextTable,
    mapping: &TechniqueMapping,
    lex: &SynonymLexicon,
    tau: f64,
    mode: MatchMode,
) -> Result<TechniqueMatrix, OntologyError> {
    let mut rows = Vec::with_capacity(pairs.len());
    for (s, t) in pairs {
        let a = source.get(s)?;
        let b = target.get(t)?;
        let cells = mapping
            .techniques
            .iter()
            .map(|tech| {
                tech.clauses
                    .iter()
                    .any(|clause| clause.iter().all(|p| p.eval(a, b, lex, tau, mode)))
            })
            .collect();
        rows.push(MatrixRow {
            source: a.concept.clone(),
            target: b.concept.clone(),
            cells,
        });
    }
    Ok(TechniqueMatrix {
        techniques: mapping.techniques.iter().map(|t| t.name.clone()).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_mapping_parses() {
        let m = TechniqueMapping::default();
        let names: Vec<&str> = m.techniques.iter().map(|t| t.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "Information Content",
                "OWL Lite Aligner",
                "Anchor Prompt",
                "Similarity Flooding",
                "Proposed Technique"
            ]
        );
        assert_eq!(
            m.techniques[2].clauses,
            vec![
                vec![Predicate::DirectSuper],
                vec![Predicate::Sibling, Predicate::RootPath]
            ]
        );
        assert_eq!(m.to_string(), DEFAULT_MAPPING);
    }

    #[test]
    fn single_predicate_mapping() {
        let m = parse_mapping("OnlyPath = root_path_sim\n").unwrap();
        assert_eq!(m.techniques.len(), 1);
        assert_eq!(m.techniques[0].clauses, vec![vec![Predicate::RootPath]]);
    }

    #[test]
    fn unknown_predicate_is_a_config_error() {
        assert_eq!(
            parse_mapping("# x\nFoo = direct_super_sim, telepathy_sim"),
            Err(MappingError {
                line: 2,
                message: "unknown predicate `telepathy_sim`".into()
            })
        );
    }

    #[test]
    fn malformed_lines_rejected() {
        assert!(parse_mapping("no equals sign").is_err());
        assert!(parse_mapping(" = leaf_sim").is_err());
        assert!(parse_mapping("A = leaf_sim\nA = leaf_sim").is_err());
        assert!(parse_mapping("A = leaf_sim |").is_err());
    }
}
