//! Concept alignment by shared super-concepts.
//!
//! Two concepts are similar when at least one super-concept of each matches.
//! Sibling, sub-concept and relation agreement do not decide a match; they
//! only feed the ranking score. The six structural baselines live in
//! [`predicates`] and the named-technique comparison in [`techniques`].

mod index;
pub mod predicates;
pub mod techniques;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::lexicon::SynonymLexicon;
use crate::ontology::{ConceptId, Ontology, OntologyError};
use crate::taxonomy::{build_contexts, ConceptContext, ContextTable};

pub use predicates::{rank_score, set_similar, Predicate, ScoreWeights};

/// How candidate pairs are formed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    /// Every pair whose ancestor sets intersect, whatever the concepts are called.
    Strict,
    /// Equivalent names whose ancestor sets intersect, or two equivalent roots.
    #[default]
    Named,
}

impl fmt::Display for MatchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchMode::Strict => "strict",
            MatchMode::Named => "named",
        })
    }
}

impl FromStr for MatchMode {
    type Err = MatchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(MatchMode::Strict),
            "named" => Ok(MatchMode::Named),
            other => Err(MatchError::InvalidConfig(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MatchError {
    #[error("invalid match configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Ontology(#[from] OntologyError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchConfig {
    pub mode: MatchMode,
    /// Predicates evaluated and reported for every emitted pair.
    pub criteria: BTreeSet<Predicate>,
    /// Coverage threshold for the "all (or most)" baselines; 1.0 means all.
    pub tau: f64,
    pub lexicon: SynonymLexicon,
    pub weights: ScoreWeights,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            mode: MatchMode::Named,
            criteria: Predicate::ALL.into_iter().collect(),
            tau: 1.0,
            lexicon: SynonymLexicon::empty(),
            weights: ScoreWeights::default(),
        }
    }
}

impl MatchConfig {
    pub fn validate(&self) -> Result<(), MatchError> {
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return Err(MatchError::InvalidConfig(format!(
                "tau must be in (0, 1], got {}",
                self.tau
            )));
        }
        let w = self.weights.as_array();
        if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(MatchError::InvalidConfig(
                "score weights must be non-negative".into(),
            ));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(MatchError::InvalidConfig(format!(
                "score weights must sum to 1, got {sum}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlignmentPair {
    pub source: ConceptId,
    pub target: ConceptId,
    /// Matched (source ancestor, target ancestor) pairs.
    pub shared_ancestors: BTreeSet<(ConceptId, ConceptId)>,
    pub criteria: BTreeMap<Predicate, bool>,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    pub source_ontology: String,
    pub target_ontology: String,
    pub config: MatchConfig,
    /// Sorted by (source, target), no duplicates.
    pub pairs: Vec<AlignmentPair>,
}

impl Alignment {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, source: &str, target: &str) -> bool {
        self.pairs
            .binary_search_by(|p| (p.source.as_str(), p.target.as_str()).cmp(&(source, target)))
            .is_ok()
    }

    pub fn get(&self, source: &str, target: &str) -> Option<&AlignmentPair> {
        self.pairs
            .binary_search_by(|p| (p.source.as_str(), p.target.as_str()).cmp(&(source, target)))
            .ok()
            .map(|i| &self.pairs[i])
    }

    pub fn pair_set(&self) -> BTreeSet<(ConceptId, ConceptId)> {
        self.pairs
            .iter()
            .map(|p| (p.source.clone(), p.target.clone()))
            .collect()
    }
}

/// Every `(a, b)` with `a ∈ sup_a`, `b ∈ sup_b` and `a` equivalent to `b`.
/// The pair of concepts owning these sets is similar iff this is non-empty.
pub fn any_super_same(
    sup_a: &BTreeSet<ConceptId>,
    sup_b: &BTreeSet<ConceptId>,
    lex: &SynonymLexicon,
) -> BTreeSet<(ConceptId, ConceptId)> {
    let mut out = BTreeSet::new();
    for a in sup_a {
        for b in sup_b {
            if lex.equivalent(a.as_str(), b.as_str()) {
                out.insert((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Pairwise scan over every (source, target) concept combination.
pub fn align(
    source: &Ontology,
    target: &Ontology,
    cfg: &MatchConfig,
) -> Result<Alignment, MatchError> {
    cfg.validate()?;
    let a = build_contexts(source)?;
    let b = build_contexts(target)?;
    Ok(align_contexts(&a, &b, cfg))
}

/// Same output as [`align`], with candidates drawn from an inverted index
/// instead of the full cross product.
pub fn align_indexed(
    source: &Ontology,
    target: &Ontology,
    cfg: &MatchConfig,
) -> Result<Alignment, MatchError> {
    cfg.validate()?;
    let a = build_contexts(source)?;
    let b = build_contexts(target)?;
    Ok(align_contexts_indexed(&a, &b, cfg))
}

pub fn align_contexts(a: &ContextTable, b: &ContextTable, cfg: &MatchConfig) -> Alignment {
    let lex = &cfg.lexicon;
    let mut pairs = Vec::new();
    for ca in a.iter() {
        for cb in b.iter() {
            if cfg.mode == MatchMode::Named
                && !lex.equivalent(ca.concept.as_str(), cb.concept.as_str())
            {
                continue;
            }
            let shared = any_super_same(&ca.supc, &cb.supc, lex);
            if accepts(cfg.mode, ca, cb, &shared) {
                pairs.push(make_pair(ca, cb, shared, cfg));
            }
        }
    }
    finish(a, b, cfg, pairs)
}

pub fn align_contexts_indexed(a: &ContextTable, b: &ContextTable, cfg: &MatchConfig) -> Alignment {
    let pairs = index::candidates(a, b, cfg)
        .into_iter()
        .map(|(ca, cb, shared)| make_pair(ca, cb, shared, cfg))
        .collect();
    finish(a, b, cfg, pairs)
}

fn accepts(
    mode: MatchMode,
    a: &ConceptContext,
    b: &ConceptContext,
    shared: &BTreeSet<(ConceptId, ConceptId)>,
) -> bool {
    !shared.is_empty() || (mode == MatchMode::Named && a.is_root() && b.is_root())
}

fn make_pair(
    a: &ConceptContext,
    b: &ConceptContext,
    shared: BTreeSet<(ConceptId, ConceptId)>,
    cfg: &MatchConfig,
) -> AlignmentPair {
    let criteria = cfg
        .criteria
        .iter()
        .map(|p| (*p, p.eval(a, b, &cfg.lexicon, cfg.tau, cfg.mode)))
        .collect();
    let score = rank_score(
        a,
        b,
        &a.properties,
        &b.properties,
        &cfg.weights,
        &cfg.lexicon,
    );
    AlignmentPair {
        source: a.concept.clone(),
        target: b.concept.clone(),
        shared_ancestors: shared,
        criteria,
        score,
    }
}

fn finish(
    a: &ContextTable,
    b: &ContextTable,
    cfg: &MatchConfig,
    mut pairs: Vec<AlignmentPair>,
) -> Alignment {
    pairs.sort_by(|x, y| (&x.source, &x.target).cmp(&(&y.source, &y.target)));
    pairs.dedup_by(|x, y| x.source == y.source && x.target == y.target);
    Alignment {
        source_ontology: a.ontology_id.clone(),
        target_ontology: b.ontology_id.clone(),
        config: cfg.clone(),
        pairs,
    }
}
