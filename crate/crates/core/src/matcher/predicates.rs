//! Structural similarity predicates over pairs of concept contexts.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lexicon::SynonymLexicon;
use crate::ontology::ConceptId;
use crate::taxonomy::ConceptContext;

use super::{any_super_same, MatchMode};

/// Tolerance for comparing coverage fractions against a threshold.
const COVERAGE_EPS: f64 = 1e-12;

/// The six structural baselines plus the shared-ancestor criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Predicate {
    #[serde(rename = "direct_super_sim")]
    DirectSuper,
    #[serde(rename = "sibling_sim")]
    Sibling,
    #[serde(rename = "direct_sub_sim")]
    DirectSub,
    #[serde(rename = "descendant_sim")]
    Descendant,
    #[serde(rename = "leaf_sim")]
    Leaf,
    #[serde(rename = "root_path_sim")]
    RootPath,
    #[serde(rename = "proposed_sim")]
    Proposed,
}

impl Predicate {
    pub const ALL: [Predicate; 7] = [
        Predicate::DirectSuper,
        Predicate::Sibling,
        Predicate::DirectSub,
        Predicate::Descendant,
        Predicate::Leaf,
        Predicate::RootPath,
        Predicate::Proposed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::DirectSuper => "direct_super_sim",
            Predicate::Sibling => "sibling_sim",
            Predicate::DirectSub => "direct_sub_sim",
            Predicate::Descendant => "descendant_sim",
            Predicate::Leaf => "leaf_sim",
            Predicate::RootPath => "root_path_sim",
            Predicate::Proposed => "proposed_sim",
        }
    }

    /// The context field a baseline compares. `None` for the proposed criterion.
    pub fn field(self, ctx: &ConceptContext) -> Option<&BTreeSet<ConceptId>> {
        match self {
            Predicate::DirectSuper => Some(&ctx.direct_supers),
            Predicate::Sibling => Some(&ctx.sblc),
            Predicate::DirectSub => Some(&ctx.direct_subs),
            Predicate::Descendant => Some(&ctx.subc),
            Predicate::Leaf => Some(&ctx.leaves),
            Predicate::RootPath => Some(&ctx.root_path),
            Predicate::Proposed => None,
        }
    }

    pub fn eval(
        self,
        a: &ConceptContext,
        b: &ConceptContext,
        lex: &SynonymLexicon,
        tau: f64,
        mode: MatchMode,
    ) -> bool {
        match (self.field(a), self.field(b)) {
            (Some(fa), Some(fb)) => set_similar(fa, fb, lex, tau),
            _ => proposed_sim(a, b, lex, mode),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown predicate `{0}`")]
pub struct UnknownPredicate(pub String);

impl FromStr for Predicate {
    type Err = UnknownPredicate;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownPredicate(s.to_string()))
    }
}

/// Bidirectional coverage test: at least `tau` of each side has an
/// equivalent member on the other side. Two empty sets are similar; an
/// empty set is never similar to a non-empty one.
pub fn set_similar(
    s1: &BTreeSet<ConceptId>,
    s2: &BTreeSet<ConceptId>,
    lex: &SynonymLexicon,
    tau: f64,
) -> bool {
    match (s1.is_empty(), s2.is_empty()) {
        (true, true) => return true,
        (true, false) | (false, true) => return false,
        _ => {}
    }
    let k1: BTreeSet<String> = s1.iter().map(|c| lex.key(c.as_str())).collect();
    let k2: BTreeSet<String> = s2.iter().map(|c| lex.key(c.as_str())).collect();
    let covered = |from: &BTreeSet<ConceptId>, other: &BTreeSet<String>| {
        let hits = from
            .iter()
            .filter(|c| other.contains(&lex.key(c.as_str())))
            .count();
        hits as f64 + COVERAGE_EPS >= tau * from.len() as f64
    };
    covered(s1, &k2) && covered(s2, &k1)
}

pub fn direct_super_sim(
    a: &ConceptContext,
    b: &ConceptContext,
    lex: &SynonymLexicon,
    tau: f64,
) -> bool {
    set_similar(&a.direct_supers, &b.direct_supers, lex, tau)
}

pub fn sibling_sim(a: &ConceptContext, b: &ConceptContext, lex: &SynonymLexicon, tau: f64) -> bool {
    set_similar(&a.sblc, &b.sblc, lex, tau)
}

pub fn direct_sub_sim(
    a: &ConceptContext,
    b: &ConceptContext,
    lex: &SynonymLexicon,
    tau: f64,
) -> bool {
    set_similar(&a.direct_subs, &b.direct_subs, lex, tau)
}

pub fn descendant_sim(
    a: &ConceptContext,
    b: &ConceptContext,
    lex: &SynonymLexicon,
    tau: f64,
) -> bool {
    set_similar(&a.subc, &b.subc, lex, tau)
}

pub fn leaf_sim(a: &ConceptContext, b: &ConceptContext, lex: &SynonymLexicon, tau: f64) -> bool {
    set_similar(&a.leaves, &b.leaves, lex, tau)
}

pub fn root_path_sim(
    a: &ConceptContext,
    b: &ConceptContext,
    lex: &SynonymLexicon,
    tau: f64,
) -> bool {
    set_similar(&a.root_path, &b.root_path, lex, tau)
}

/// At least one super-concept of each side matches. In named mode two roots
/// also qualify, since they have no super-concepts to compare.
pub fn proposed_sim(
    a: &ConceptContext,
    b: &ConceptContext,
    lex: &SynonymLexicon,
    mode: MatchMode,
) -> bool {
    if mode == MatchMode::Named && a.is_root() && b.is_root() {
        return true;
    }
    !any_super_same(&a.supc, &b.supc, lex).is_empty()
}

/// Jaccard overlap of two name sets under lexicon equivalence. `J(∅, ∅) = 1`.
pub fn jaccard<'a, I, J>(a: I, b: J, lex: &SynonymLexicon) -> f64
where
    I: IntoIterator<Item = &'a str>,
    J: IntoIterator<Item = &'a str>,
{
    let ka: BTreeSet<String> = a.into_iter().map(|n| lex.key(n)).collect();
    let kb: BTreeSet<String> = b.into_iter().map(|n| lex.key(n)).collect();
    let union = ka.union(&kb).count();
    if union == 0 {
        return 1.0;
    }
    ka.intersection(&kb).count() as f64 / union as f64
}

/// Weights of the ranking score: base, siblings, sub-concepts, relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreWeights {
    pub base: f64,
    pub sibling: f64,
    pub sub: f64,
    pub relation: f64,
}

impl Default for ScoreWeights {
    fn default() -> Self {
        ScoreWeights {
            base: 0.4,
            sibling: 0.2,
            sub: 0.2,
            relation: 0.2,
        }
    }
}

impl ScoreWeights {
    pub fn as_array(&self) -> [f64; 4] {
        [self.base, self.sibling, self.sub, self.relation]
    }
}

fn names(s: &BTreeSet<ConceptId>) -> impl Iterator<Item = &str> {
    s.iter().map(ConceptId::as_str)
}

/// Ranks a pair that already satisfies the shared-ancestor criterion by how
/// much of the rest of its surroundings also agrees.
pub fn rank_score(
    a: &ConceptContext,
    b: &ConceptContext,
    rel_a: &BTreeSet<String>,
    rel_b: &BTreeSet<String>,
    weights: &ScoreWeights,
    lex: &SynonymLexicon,
) -> f64 {
    let sib = jaccard(names(&a.sblc), names(&b.sblc), lex);
    let sub = jaccard(names(&a.subc), names(&b.subc), lex);
    let rel = jaccard(
        rel_a.iter().map(String::as_str),
        rel_b.iter().map(String::as_str),
        lex,
    );
    let score = weights.base + weights.sibling * sib + weights.sub * sub + weights.relation * rel;
    score.clamp(0.0, 1.0)
}
