//! Ontology alignment by shared super-concepts.
//!
//! The pipeline has three steps: read each ontology's concepts
//! ([`owl::parse_ontology`]), collect every concept's super-concepts and
//! other surroundings ([`taxonomy::build_contexts`]), and pair concepts
//! whose super-concept sets share a member ([`matcher::align_indexed`]).
//! Six structural baselines, a technique comparison matrix and
//! precision/recall scoring ([`eval`]) sit alongside.

pub mod eval;
pub mod fixtures;
pub mod format;
pub mod lexicon;
pub mod matcher;
pub mod ontology;
pub mod owl;
pub mod taxonomy;

pub use eval::{evaluate, EvalMetrics, ReferenceAlignment};
pub use lexicon::SynonymLexicon;
pub use matcher::{
    align, align_indexed, Alignment, AlignmentPair, MatchConfig, MatchMode, Predicate,
};
pub use ontology::{ConceptId, ObjectProperty, Ontology, OntologyBuilder, OntologyError};
pub use owl::{parse_ontology, ParseError, ParseReport};
pub use taxonomy::{build_contexts, ConceptContext, ContextTable};
