//! Reader for the RDF/XML subset of OWL that carries class taxonomies.
//!
//! Recognised constructs: `owl:Class` (by `rdf:ID` or `rdf:about`),
//! `rdfs:subClassOf` (resource attribute or nested class), `owl:ObjectProperty`
//! with `rdfs:domain`, `rdfs:range` (direct or `owl:unionOf` collection) and
//! `owl:inverseOf`. `owl:disjointWith` and `owl:equivalentClass` are read and
//! dropped. Anything else is skipped with a warning in the [`ParseReport`].
//!
//! Vocabulary names are compared case-insensitively, so `owl:CLASS` and
//! `owl:Class` are the same element. Concepts are identified by local name.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;
use serde::Serialize;

use crate::ontology::{ConceptId, ObjectProperty, Ontology, OntologyBuilder, OntologyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    fn at(source: &str, offset: usize) -> Self {
        let offset = offset.min(source.len());
        let before = &source.as_bytes()[..offset];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let line_start = before
            .iter()
            .rposition(|&b| b == b'\n')
            .map_or(0, |i| i + 1);
        let column = String::from_utf8_lossy(&before[line_start..])
            .chars()
            .count()
            + 1;
        Position { line, column }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed XML at {position}: {message}")]
    Xml { position: Position, message: String },
    #[error("element <{name}> opened at {position} is never closed")]
    Unclosed { name: String, position: Position },
    #[error(transparent)]
    Ontology(#[from] OntologyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construct {
    DisjointWith,
    EquivalentClass,
    UnionOf,
}

impl fmt::Display for Construct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construct::DisjointWith => "owl:disjointWith",
            Construct::EquivalentClass => "owl:equivalentClass",
            Construct::UnionOf => "owl:unionOf",
        })
    }
}

/// A construct that was read but not kept in the model (union ranges are
/// kept, flattened into a plain set).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Discarded {
    pub construct: Construct,
    /// Concept or property the construct was attached to.
    pub subject: String,
    pub position: Position,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningKind {
    DuplicateDeclaration,
    IgnoredElement,
    AnonymousClass,
    /// `owl:subClassOf` read as `rdfs:subClassOf`.
    SubClassOfAlias,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Warning {
    pub kind: WarningKind,
    pub detail: String,
    pub position: Position,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            WarningKind::DuplicateDeclaration => "duplicate declaration merged",
            WarningKind::IgnoredElement => "ignored element",
            WarningKind::AnonymousClass => "anonymous class skipped",
            WarningKind::SubClassOfAlias => "owl:subClassOf read as rdfs:subClassOf",
        };
        write!(f, "{}: {what}: {}", self.position, self.detail)
    }
}

/// Diagnostics gathered while parsing. All lists are sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ParseReport {
    pub discarded: Vec<Discarded>,
    /// Referenced but never declared with `owl:Class`.
    pub auto_registered: Vec<ConceptId>,
    pub warnings: Vec<Warning>,
}

impl ParseReport {
    pub fn is_empty(&self) -> bool {
        self.discarded.is_empty() && self.auto_registered.is_empty() && self.warnings.is_empty()
    }

    pub fn discarded_count(&self, construct: Construct) -> usize {
        self.discarded
            .iter()
            .filter(|d| d.construct == construct)
            .count()
    }

    pub fn warnings_of(&self, kind: WarningKind) -> impl Iterator<Item = &Warning> {
        self.warnings.iter().filter(move |w| w.kind == kind)
    }
}

/// The diagnostics recorded while `ontology` was parsed.
pub fn parse_report(ontology: &Ontology) -> &ParseReport {
    ontology.report()
}

pub fn parse_ontology(source: &str, id: &str) -> Result<Ontology, ParseError> {
    let roots = read_tree(source)?;
    let mut walker = Walker {
        source,
        builder: OntologyBuilder::new(id),
        declarations: BTreeMap::new(),
        report: ParseReport::default(),
    };
    for el in &roots {
        walker.top_level(el)?;
    }
    walker.finish()
}

#[derive(Debug)]
struct Element {
    name: String,
    attrs: Vec<(String, String)>,
    children: Vec<Element>,
    offset: usize,
}

impl Element {
    fn is(&self, qname: &str) -> bool {
        self.name.eq_ignore_ascii_case(qname)
    }

    fn attr(&self, qname: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(k, _)| k.eq_ignore_ascii_case(qname))
            .map(|(_, v)| v.as_str())
    }

    /// Local name from `rdf:ID`, else from the `rdf:about` IRI.
    fn subject(&self) -> Option<(String, bool)> {
        if let Some(id) = self.attr("rdf:ID").and_then(local_name) {
            return Some((id, true));
        }
        self.attr("rdf:about")
            .and_then(local_name)
            .map(|n| (n, false))
    }
}

/// Fragment after `#`, else the last path segment, else the text after an
/// entity reference such as `&ont;`.
fn local_name(iri: &str) -> Option<String> {
    let iri = iri.trim();
    let tail = if let Some(i) = iri.rfind('#') {
        &iri[i + 1..]
    } else if let Some(i) = iri.rfind('/') {
        &iri[i + 1..]
    } else if let (true, Some(i)) = (iri.starts_with('&'), iri.find(';')) {
        &iri[i + 1..]
    } else {
        iri
    };
    (!tail.is_empty()).then(|| tail.to_string())
}

fn read_tree(source: &str) -> Result<Vec<Element>, ParseError> {
    let mut reader = Reader::from_str(source);
    reader.config_mut().trim_text(true);
    let mut roots = Vec::new();
    let mut stack: Vec<Element> = Vec::new();
    loop {
        let before = reader.buffer_position() as usize;
        let event = reader.read_event().map_err(|e| ParseError::Xml {
            position: Position::at(source, reader.error_position() as usize),
            message: e.to_string(),
        })?;
        let tag_offset = |from: usize| source[from..].find('<').map_or(from, |i| from + i);
        match event {
            Event::Start(start) => {
                let el = element(source, &start, tag_offset(before))?;
                stack.push(el);
            }
            Event::Empty(start) => {
                let el = element(source, &start, tag_offset(before))?;
                match stack.last_mut() {
                    Some(parent) => parent.children.push(el),
                    None => roots.push(el),
                }
            }
            Event::End(_) => {
                let el = stack.pop().ok_or_else(|| ParseError::Xml {
                    position: Position::at(source, tag_offset(before)),
                    message: "closing tag without an opening tag".into(),
                })?;
                match stack.last_mut() {
                    Some(parent) => parent.children.push(el),
                    None => roots.push(el),
                }
            }
            Event::Eof => break,
            _ => {}
        }
    }
    if let Some(open) = stack.pop() {
        return Err(ParseError::Unclosed {
            position: Position::at(source, open.offset),
            name: open.name,
        });
    }
    Ok(roots)
}

fn element(source: &str, start: &BytesStart<'_>, offset: usize) -> Result<Element, ParseError> {
    let xml_err = |message: String| ParseError::Xml {
        position: Position::at(source, offset),
        message,
    };
    let name = start.name().as_ref().to_string();
    let mut attrs = Vec::new();
    for attr in start.attributes() {
        let attr = attr.map_err(|e| xml_err(e.to_string()))?;
        let key = attr.key.as_ref().to_string();
        // Unknown entities (declared in a DOCTYPE) are kept verbatim.
        let value = attr
            .normalized_value(quick_xml::XmlVersion::Implicit1_0)
            .map(|v| v.into_owned())
            .unwrap_or_else(|_| attr.value.to_string());
        attrs.push((key, value));
    }
    Ok(Element {
        name,
        attrs,
        children: Vec::new(),
        offset,
    })
}

struct Walker<'s> {
    source: &'s str,
    builder: OntologyBuilder,
    declarations: BTreeMap<ConceptId, usize>,
    report: ParseReport,
}

impl Walker<'_> {
    fn pos(&self, el: &Element) -> Position {
        Position::at(self.source, el.offset)
    }

    fn warn(&mut self, kind: WarningKind, detail: String, el: &Element) {
        let position = self.pos(el);
        self.report.warnings.push(Warning {
            kind,
            detail,
            position,
        });
    }

    fn discard(&mut self, construct: Construct, subject: &str, el: &Element) {
        let position = self.pos(el);
        self.report.discarded.push(Discarded {
            construct,
            subject: subject.to_string(),
            position,
        });
    }

    fn concept(&self, name: String) -> Result<ConceptId, ParseError> {
        Ok(ConceptId::new(name)?)
    }

    fn top_level(&mut self, el: &Element) -> Result<(), ParseError> {
        if el.is("rdf:RDF") {
            for child in &el.children {
                self.top_level(child)?;
            }
        } else if el.is("owl:Class") {
            self.class(el, true)?;
        } else if el.is("owl:ObjectProperty") {
            self.property(el)?;
        } else {
            self.warn(WarningKind::IgnoredElement, el.name.clone(), el);
        }
        Ok(())
    }

    /// Processes an `owl:Class` element and returns its concept, if named.
    ///
    /// `rdf:ID` always declares; `rdf:about` declares only at top level and is
    /// otherwise a reference.
    fn class(&mut self, el: &Element, top: bool) -> Result<Option<ConceptId>, ParseError> {
        let Some((name, by_id)) = el.subject() else {
            if top {
                self.warn(WarningKind::AnonymousClass, el.name.clone(), el);
            }
            return Ok(None);
        };
        let concept = self.concept(name)?;
        if by_id || top {
            self.builder.add_concept(concept.clone());
            let seen = self.declarations.entry(concept.clone()).or_insert(0);
            *seen += 1;
            if *seen == 2 {
                self.warn(WarningKind::DuplicateDeclaration, concept.to_string(), el);
            }
        }
        for child in &el.children {
            if child.is("rdfs:subClassOf") || child.is("owl:subClassOf") {
                if child.is("owl:subClassOf") {
                    self.warn(WarningKind::SubClassOfAlias, concept.to_string(), child);
                }
                self.superclass(&concept, child)?;
            } else if child.is("owl:disjointWith") {
                self.discard(Construct::DisjointWith, concept.as_str(), child);
            } else if child.is("owl:equivalentClass") {
                self.discard(Construct::EquivalentClass, concept.as_str(), child);
            } else {
                self.warn(WarningKind::IgnoredElement, child.name.clone(), child);
            }
        }
        Ok(Some(concept))
    }

    fn superclass(&mut self, concept: &ConceptId, el: &Element) -> Result<(), ParseError> {
        if let Some(parent) = el.attr("rdf:resource").and_then(local_name) {
            let parent = self.concept(parent)?;
            self.builder.add_edge(concept.clone(), parent);
        }
        for nested in &el.children {
            if nested.is("owl:Class") {
                match self.class(nested, false)? {
                    Some(parent) => self.builder.add_edge(concept.clone(), parent),
                    None => self.warn(
                        WarningKind::AnonymousClass,
                        format!("superclass of {concept}"),
                        nested,
                    ),
                }
            } else {
                self.warn(WarningKind::IgnoredElement, nested.name.clone(), nested);
            }
        }
        Ok(())
    }

    fn property(&mut self, el: &Element) -> Result<(), ParseError> {
        let Some((name, _)) = el.subject() else {
            self.warn(
                WarningKind::IgnoredElement,
                "unnamed owl:ObjectProperty".into(),
                el,
            );
            return Ok(());
        };
        let mut prop = ObjectProperty {
            name,
            domain: BTreeSet::new(),
            range: BTreeSet::new(),
            inverse_of: None,
        };
        for child in &el.children {
            if child.is("rdfs:domain") {
                let refs = self.class_refs(&prop.name, child)?;
                prop.domain.extend(refs);
            } else if child.is("rdfs:range") {
                let refs = self.class_refs(&prop.name, child)?;
                prop.range.extend(refs);
            } else if child.is("owl:inverseOf") {
                prop.inverse_of = child.attr("rdf:resource").and_then(local_name).or_else(|| {
                    child
                        .children
                        .iter()
                        .find_map(|p| p.subject().map(|(n, _)| n))
                });
            } else {
                self.warn(WarningKind::IgnoredElement, child.name.clone(), child);
            }
        }
        self.builder.add_property(prop);
        Ok(())
    }

    /// Concepts named by a domain/range element, flattening `owl:unionOf`.
    fn class_refs(&mut self, subject: &str, el: &Element) -> Result<Vec<ConceptId>, ParseError> {
        let mut out = Vec::new();
        if let Some(r) = el.attr("rdf:resource").and_then(local_name) {
            out.push(self.concept(r)?);
        }
        for child in &el.children {
            if child.is("owl:unionOf") {
                self.discard(Construct::UnionOf, subject, child);
                out.extend(self.class_refs(subject, child)?);
            } else if child.is("owl:Class") || child.is("rdf:Description") {
                match child.subject() {
                    Some((name, by_id)) => {
                        let c = self.concept(name)?;
                        if by_id {
                            self.class(child, false)?;
                        }
                        out.push(c);
                    }
                    None => out.extend(self.class_refs(subject, child)?),
                }
            } else {
                self.warn(WarningKind::IgnoredElement, child.name.clone(), child);
            }
        }
        Ok(out)
    }

    fn finish(mut self) -> Result<Ontology, ParseError> {
        self.report.discarded.sort();
        self.report.warnings.sort();
        self.builder.set_report(self.report);
        Ok(self.builder.build()?)
    }
}
