//! Precision, recall and F-measure of an alignment against a reference.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::matcher::Alignment;
use crate::ontology::ConceptId;

pub type PairSet = BTreeSet<(ConceptId, ConceptId)>;

/// Expected correspondences, as judged by a domain expert.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReferenceAlignment {
    pub pairs: PairSet,
}

impl ReferenceAlignment {
    pub fn new(pairs: impl IntoIterator<Item = (ConceptId, ConceptId)>) -> Self {
        ReferenceAlignment {
            pairs: pairs.into_iter().collect(),
        }
    }

    /// Every produced pair taken as correct.
    pub fn from_alignment(alignment: &Alignment) -> Self {
        ReferenceAlignment {
            pairs: alignment.pair_set(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalMetrics {
    /// Correctness: TP / (TP + FP).
    pub precision: f64,
    /// Completeness: TP / (TP + FN).
    pub recall: f64,
    /// Overall quality: harmonic mean of precision and recall.
    pub f_measure: f64,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

pub fn evaluate(produced: &Alignment, reference: &ReferenceAlignment) -> EvalMetrics {
    evaluate_pairs(&produced.pair_set(), &reference.pairs)
}

/// Set-level evaluation. Two empty sets agree perfectly.
pub fn evaluate_pairs(produced: &PairSet, reference: &PairSet) -> EvalMetrics {
    let tp = produced.intersection(reference).count();
    let fp = produced.len() - tp;
    let fn_ = reference.len() - tp;
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    let (precision, recall) = if produced.is_empty() && reference.is_empty() {
        (1.0, 1.0)
    } else {
        (ratio(tp, tp + fp), ratio(tp, tp + fn_))
    };
    let f_measure = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    EvalMetrics {
        precision,
        recall,
        f_measure,
        true_positives: tp,
        false_positives: fp,
        false_negatives: fn_,
    }
}
