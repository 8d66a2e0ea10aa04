//! In-memory ontology model: named concepts, a multi-parent subclass DAG and
//! object properties whose domain and range point at concepts.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::owl::ParseReport;
use crate::taxonomy;

/// Local name of a concept (the `rdf:ID` value or the fragment of an `rdf:about` IRI).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConceptId(String);

impl ConceptId {
    pub fn new(name: impl Into<String>) -> Result<Self, OntologyError> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(OntologyError::EmptyName);
        }
        Ok(ConceptId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for ConceptId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for ConceptId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectProperty {
    pub name: String,
    pub domain: BTreeSet<ConceptId>,
    /// Union ranges are flattened into this set.
    pub range: BTreeSet<ConceptId>,
    pub inverse_of: Option<String>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OntologyError {
    #[error("concept name must not be empty")]
    EmptyName,
    #[error("object property name must not be empty")]
    EmptyPropertyName,
    #[error("subclass cycle: {}", format_cycle(.0))]
    Cycle(Vec<ConceptId>),
    #[error("unknown concept `{0}`")]
    UnknownConcept(String),
}

fn format_cycle(cycle: &[ConceptId]) -> String {
    let mut names: Vec<&str> = cycle.iter().map(ConceptId::as_str).collect();
    if let Some(first) = cycle.first() {
        names.push(first.as_str());
    }
    names.join(" -> ")
}

/// An immutable, acyclic concept taxonomy.
///
/// Build one with [`OntologyBuilder`] or [`crate::owl::parse_ontology`].
#[derive(Debug, Clone)]
pub struct Ontology {
    id: String,
    concepts: BTreeSet<ConceptId>,
    parents: BTreeMap<ConceptId, BTreeSet<ConceptId>>,
    children: BTreeMap<ConceptId, BTreeSet<ConceptId>>,
    properties: BTreeMap<String, ObjectProperty>,
    report: ParseReport,
}

/// Equality compares the model only; the parse report is diagnostic.
impl PartialEq for Ontology {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.concepts == other.concepts
            && self.parents == other.parents
            && self.properties == other.properties
    }
}

impl Eq for Ontology {}

impl Ontology {
    pub fn empty(id: impl Into<String>) -> Self {
        OntologyBuilder::new(id)
            .build()
            .expect("an empty ontology is acyclic")
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn concepts(&self) -> &BTreeSet<ConceptId> {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.concepts.contains(name)
    }

    pub fn get(&self, name: &str) -> Option<&ConceptId> {
        self.concepts.get(name)
    }

    /// All `(child, parent)` subclass edges in lexicographic order.
    pub fn subclass_edges(&self) -> impl Iterator<Item = (&ConceptId, &ConceptId)> {
        self.parents
            .iter()
            .flat_map(|(child, ps)| ps.iter().map(move |p| (child, p)))
    }

    pub fn direct_supers(&self, name: &str) -> Result<&BTreeSet<ConceptId>, OntologyError> {
        self.parents
            .get(name)
            .ok_or_else(|| OntologyError::UnknownConcept(name.to_string()))
    }

    pub fn direct_subs(&self, name: &str) -> Result<&BTreeSet<ConceptId>, OntologyError> {
        self.children
            .get(name)
            .ok_or_else(|| OntologyError::UnknownConcept(name.to_string()))
    }

    pub fn is_root(&self, name: &str) -> bool {
        self.parents.get(name).is_some_and(BTreeSet::is_empty)
    }

    pub fn roots(&self) -> impl Iterator<Item = &ConceptId> {
        self.parents
            .iter()
            .filter(|(_, ps)| ps.is_empty())
            .map(|(c, _)| c)
    }

    pub fn object_properties(&self) -> impl Iterator<Item = &ObjectProperty> {
        self.properties.values()
    }

    /// Names of the object properties whose domain or range mentions `name`.
    pub fn properties_of(&self, name: &str) -> BTreeSet<String> {
        self.properties
            .values()
            .filter(|p| p.domain.contains(name) || p.range.contains(name))
            .map(|p| p.name.clone())
            .collect()
    }

    pub fn report(&self) -> &ParseReport {
        &self.report
    }

    /// A builder seeded with this ontology's content, for deriving variants.
    pub fn to_builder(&self) -> OntologyBuilder {
        let mut b = OntologyBuilder::new(self.id.clone());
        for c in &self.concepts {
            b.add_concept(c.clone());
        }
        for (child, parent) in self.subclass_edges() {
            b.add_edge(child.clone(), parent.clone());
        }
        for p in self.properties.values() {
            b.add_property(p.clone());
        }
        b
    }
}

/// Mutable staging area for an [`Ontology`]. May hold cycles until `build`.
#[derive(Debug, Clone, Default)]
pub struct OntologyBuilder {
    id: String,
    concepts: BTreeSet<ConceptId>,
    edges: BTreeSet<(ConceptId, ConceptId)>,
    properties: BTreeMap<String, ObjectProperty>,
    auto_registered: BTreeSet<ConceptId>,
    report: ParseReport,
}

impl OntologyBuilder {
    pub fn new(id: impl Into<String>) -> Self {
        OntologyBuilder {
            id: id.into(),
            ..Default::default()
        }
    }

    /// Declares a concept. Returns false if it was already declared.
    pub fn add_concept(&mut self, c: ConceptId) -> bool {
        self.auto_registered.remove(&c);
        self.concepts.insert(c)
    }

    /// Adds a `child subClassOf parent` edge. A self-edge is kept so that
    /// `build` can report it as a one-element cycle.
    pub fn add_edge(&mut self, child: ConceptId, parent: ConceptId) {
        self.reference(&child);
        self.reference(&parent);
        self.edges.insert((child, parent));
    }

    pub fn add_property(&mut self, prop: ObjectProperty) {
        for c in prop.domain.iter().chain(prop.range.iter()) {
            self.reference(c);
        }
        match self.properties.get_mut(&prop.name) {
            Some(existing) => {
                existing.domain.extend(prop.domain);
                existing.range.extend(prop.range);
                if existing.inverse_of.is_none() {
                    existing.inverse_of = prop.inverse_of;
                }
            }
            None => {
                self.properties.insert(prop.name.clone(), prop);
            }
        }
    }

    fn reference(&mut self, c: &ConceptId) {
        if !self.concepts.contains(c) {
            self.auto_registered.insert(c.clone());
        }
    }

    pub(crate) fn set_report(&mut self, report: ParseReport) {
        self.report = report;
    }

    pub fn edges(&self) -> &BTreeSet<(ConceptId, ConceptId)> {
        &self.edges
    }

    /// Concepts that were referenced by an edge or property but never declared.
    pub fn auto_registered(&self) -> &BTreeSet<ConceptId> {
        &self.auto_registered
    }

    pub fn detect_cycles(&self) -> Vec<Vec<ConceptId>> {
        taxonomy::detect_cycles(self.edges.iter().map(|(c, p)| (c, p)))
    }

    pub fn build(mut self) -> Result<Ontology, OntologyError> {
        if let Some(cycle) = self.detect_cycles().into_iter().next() {
            return Err(OntologyError::Cycle(cycle));
        }
        let auto = std::mem::take(&mut self.auto_registered);
        self.concepts.extend(auto.iter().cloned());
        self.report.auto_registered = auto.into_iter().collect();

        let mut parents: BTreeMap<ConceptId, BTreeSet<ConceptId>> = self
            .concepts
            .iter()
            .map(|c| (c.clone(), BTreeSet::new()))
            .collect();
        let mut children = parents.clone();
        for (child, parent) in self.edges {
            children
                .get_mut(&parent)
                .expect("edge endpoints are registered")
                .insert(child.clone());
            parents
                .get_mut(&child)
                .expect("edge endpoints are registered")
                .insert(parent);
        }
        Ok(Ontology {
            id: self.id,
            concepts: self.concepts,
            parents,
            children,
            properties: self.properties,
            report: self.report,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> ConceptId {
        ConceptId::new(s).unwrap()
    }

    #[test]
    fn empty_name_rejected() {
        assert_eq!(ConceptId::new("  "), Err(OntologyError::EmptyName));
    }

    #[test]
    fn referenced_concepts_are_registered() {
        let mut b = OntologyBuilder::new("t");
        b.add_concept(c("Article"));
        b.add_edge(c("Article"), c("Publication"));
        let o = b.build().unwrap();
        assert!(o.contains("Publication"));
        assert!(o.is_root("Publication"));
        assert_eq!(o.report().auto_registered, vec![c("Publication")]);
    }

    #[test]
    fn late_declaration_is_not_auto_registered() {
        let mut b = OntologyBuilder::new("t");
        b.add_edge(c("College"), c("EducationalOrganization"));
        b.add_concept(c("College"));
        b.add_concept(c("EducationalOrganization"));
        let o = b.build().unwrap();
        assert!(o.report().auto_registered.is_empty());
    }

    #[test]
    fn self_edge_is_a_cycle() {
        let mut b = OntologyBuilder::new("t");
        b.add_edge(c("A"), c("A"));
        assert_eq!(b.build(), Err(OntologyError::Cycle(vec![c("A")])));
    }

    #[test]
    fn two_cycle_rejected() {
        let mut b = OntologyBuilder::new("t");
        b.add_edge(c("A"), c("B"));
        b.add_edge(c("B"), c("A"));
        let err = b.build().unwrap_err();
        assert_eq!(err, OntologyError::Cycle(vec![c("A"), c("B")]));
        assert_eq!(err.to_string(), "subclass cycle: A -> B -> A");
    }

    #[test]
    fn properties_of_covers_domain_and_range() {
        let mut b = OntologyBuilder::new("t");
        b.add_property(ObjectProperty {
            name: "belongsTo".into(),
            domain: [c("Faculty")].into(),
            range: [c("College"), c("School")].into(),
            inverse_of: Some("hasFaculty".into()),
        });
        let o = b.build().unwrap();
        assert_eq!(o.properties_of("School"), ["belongsTo".to_string()].into());
        assert!(o.properties_of("Faculty").contains("belongsTo"));
        assert!(o.properties_of("Person").is_empty());
    }
}
