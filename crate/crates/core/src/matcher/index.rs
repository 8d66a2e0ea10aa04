//! Candidate generation through inverted indexes on the target side.
//!
//! Strict mode indexes every target concept under the lexicon key of each of
//! its ancestors; named mode indexes target concepts under their own key.
//! Because lexicon equivalence is an equivalence relation, two names match
//! exactly when their keys are equal, so the index never loses a pair.

use std::collections::{BTreeMap, BTreeSet};

use crate::ontology::ConceptId;
use crate::taxonomy::{ConceptContext, ContextTable};

use super::{accepts, MatchConfig, MatchMode};

type Shared = BTreeSet<(ConceptId, ConceptId)>;

/// Ancestors of one concept grouped by lexicon key.
type KeyedAncestors<'a> = BTreeMap<String, Vec<&'a ConceptId>>;

fn keyed<'a>(ctx: &'a ConceptContext, cfg: &MatchConfig) -> KeyedAncestors<'a> {
    let mut out: KeyedAncestors<'a> = BTreeMap::new();
    for s in &ctx.supc {
        out.entry(cfg.lexicon.key(s.as_str())).or_default().push(s);
    }
    out
}

fn shared(a: &KeyedAncestors<'_>, b: &KeyedAncestors<'_>) -> Shared {
    let mut out = BTreeSet::new();
    for (key, xs) in a {
        if let Some(ys) = b.get(key) {
            for x in xs {
                for y in ys {
                    out.insert(((*x).clone(), (*y).clone()));
                }
            }
        }
    }
    out
}

pub(super) fn candidates<'a>(
    a: &'a ContextTable,
    b: &'a ContextTable,
    cfg: &MatchConfig,
) -> Vec<(&'a ConceptContext, &'a ConceptContext, Shared)> {
    let lex = &cfg.lexicon;
    let b_keyed: BTreeMap<&ConceptId, KeyedAncestors<'a>> =
        b.iter().map(|cb| (&cb.concept, keyed(cb, cfg))).collect();

    let mut index: BTreeMap<String, Vec<&ConceptContext>> = BTreeMap::new();
    for cb in b.iter() {
        match cfg.mode {
            MatchMode::Named => index
                .entry(lex.key(cb.concept.as_str()))
                .or_default()
                .push(cb),
            MatchMode::Strict => {
                for key in b_keyed[&cb.concept].keys() {
                    index.entry(key.clone()).or_default().push(cb);
                }
            }
        }
    }

    let mut out = Vec::new();
    for ca in a.iter() {
        let a_keyed = keyed(ca, cfg);
        let mut hits: BTreeMap<&ConceptId, &ConceptContext> = BTreeMap::new();
        let lookup: Vec<String> = match cfg.mode {
            MatchMode::Named => vec![lex.key(ca.concept.as_str())],
            MatchMode::Strict => a_keyed.keys().cloned().collect(),
        };
        for key in &lookup {
            for cb in index.get(key).into_iter().flatten() {
                hits.insert(&cb.concept, cb);
            }
        }
        for (name, cb) in hits {
            let s = shared(&a_keyed, &b_keyed[name]);
            if accepts(cfg.mode, ca, cb, &s) {
                out.push((ca, cb, s));
            }
        }
    }
    out
}
