//! Bundled sample ontologies: two research-activity ontologies (A, B), two
//! student ontologies (C, D) and an unrelated travel ontology.

use crate::ontology::Ontology;
use crate::owl::{parse_ontology, ParseError};

pub const A: &str = include_str!("../fixtures/a.owl");
pub const B: &str = include_str!("../fixtures/b.owl");
pub const C: &str = include_str!("../fixtures/c.owl");
pub const D: &str = include_str!("../fixtures/d.owl");
pub const TRAVEL: &str = include_str!("../fixtures/travel.owl");
/// The published code sample of A alone; several parents are undeclared.
pub const A_SAMPLE: &str = include_str!("../fixtures/a_sample.owl");

/// `(id, source)` for every complete fixture.
pub const ALL: [(&str, &str); 5] = [("A", A), ("B", B), ("C", C), ("D", D), ("travel", TRAVEL)];

pub fn load(id: &str) -> Result<Ontology, ParseError> {
    let source = ALL
        .iter()
        .chain([("A_sample", A_SAMPLE)].iter())
        .find(|(name, _)| *name == id)
        .map(|(_, s)| *s)
        .unwrap_or_else(|| panic!("no fixture named `{id}`"));
    parse_ontology(source, id)
}
