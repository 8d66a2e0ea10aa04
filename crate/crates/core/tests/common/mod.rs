//! Shared helpers: random DAG generation, a reachability-matrix oracle and an
//! RDF/XML writer used for round-trip checks.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use ontalign::{ConceptId, ObjectProperty, Ontology, OntologyBuilder};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn cid(s: &str) -> ConceptId {
    ConceptId::new(s).unwrap()
}

pub fn set(names: &[&str]) -> BTreeSet<ConceptId> {
    names.iter().map(|n| cid(n)).collect()
}

pub fn fixture_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(file)
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ontalign")
}

/// Names drawn from a small shared pool so two random ontologies overlap.
pub const POOL: [&str; 24] = [
    "Agent", "Person", "Student", "Staff", "Course", "Event", "Place", "City", "Thing", "Paper",
    "Venue", "Topic", "Group", "Lab", "Grant", "Award", "Tool", "Data", "Model", "Task", "Team",
    "Role", "Room", "Unit",
];

/// A random DAG: concept `i` gets up to `max_parents` parents among `0..i`.
/// With `pool` set, names come partly from [`POOL`] so separate draws share names.
pub fn random_dag(
    rng: &mut StdRng,
    id: &str,
    max_n: usize,
    max_parents: usize,
    pool: bool,
) -> Ontology {
    let n = rng.gen_range(1..=max_n);
    let mut names: Vec<String> = if pool {
        let mut p: Vec<String> = POOL.iter().map(|s| s.to_string()).collect();
        p.shuffle(rng);
        let mut extra = 0;
        while p.len() < n {
            p.push(format!("X{extra}"));
            extra += 1;
        }
        p.truncate(n);
        p
    } else {
        (0..n).map(|i| format!("C{i}")).collect()
    };
    names.shuffle(rng);
    let mut b = OntologyBuilder::new(id);
    for name in &names {
        b.add_concept(cid(name));
    }
    for i in 1..n {
        let k = rng.gen_range(0..=max_parents);
        for _ in 0..k {
            let j = rng.gen_range(0..i);
            b.add_edge(cid(&names[i]), cid(&names[j]));
        }
    }
    if n > 1 && rng.gen_bool(0.5) {
        let d = names[rng.gen_range(0..n)].clone();
        let r = names[rng.gen_range(0..n)].clone();
        b.add_property(ObjectProperty {
            name: "relatesTo".into(),
            domain: set(&[&d]),
            range: set(&[&r]),
            inverse_of: None,
        });
    }
    b.build().unwrap()
}

/// Transitive closure of the subclass edges by Warshall's algorithm.
pub struct Reach {
    pub names: Vec<ConceptId>,
    /// `m[i][j]`: `names[j]` is a strict ancestor of `names[i]`.
    pub m: Vec<Vec<bool>>,
}

impl Reach {
    pub fn new(o: &Ontology) -> Self {
        let names: Vec<ConceptId> = o.concepts().iter().cloned().collect();
        let idx = |c: &ConceptId| names.iter().position(|x| x == c).unwrap();
        let n = names.len();
        let mut m = vec![vec![false; n]; n];
        for (child, parent) in o.subclass_edges() {
            m[idx(child)][idx(parent)] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    let via = m[k].clone();
                    for (cell, reach) in m[i].iter_mut().zip(via) {
                        *cell |= reach;
                    }
                }
            }
        }
        Reach { names, m }
    }

    fn pos(&self, c: &str) -> usize {
        self.names.iter().position(|x| x.as_str() == c).unwrap()
    }

    pub fn ancestors(&self, c: &str) -> BTreeSet<ConceptId> {
        let i = self.pos(c);
        (0..self.names.len())
            .filter(|&j| self.m[i][j])
            .map(|j| self.names[j].clone())
            .collect()
    }

    pub fn descendants(&self, c: &str) -> BTreeSet<ConceptId> {
        let j = self.pos(c);
        (0..self.names.len())
            .filter(|&i| self.m[i][j])
            .map(|i| self.names[i].clone())
            .collect()
    }

    pub fn parents(&self, o: &Ontology, c: &str) -> BTreeSet<ConceptId> {
        o.subclass_edges()
            .filter(|(ch, _)| ch.as_str() == c)
            .map(|(_, p)| p.clone())
            .collect()
    }

    /// Co-children of any direct parent; parentless concepts are all siblings.
    pub fn siblings(&self, o: &Ontology, c: &str) -> BTreeSet<ConceptId> {
        let mine = self.parents(o, c);
        self.names
            .iter()
            .filter(|x| x.as_str() != c)
            .filter(|x| {
                let theirs = self.parents(o, x.as_str());
                if mine.is_empty() {
                    theirs.is_empty()
                } else {
                    !mine.is_disjoint(&theirs)
                }
            })
            .cloned()
            .collect()
    }

    /// Childless members of the concept's subtree, itself included.
    pub fn leaves(&self, o: &Ontology, c: &str) -> BTreeSet<ConceptId> {
        let mut subtree = self.descendants(c);
        subtree.insert(cid(c));
        subtree
            .into_iter()
            .filter(|x| !o.subclass_edges().any(|(_, p)| p == x))
            .collect()
    }
}

/// Writes an ontology back out as RDF/XML.
pub fn to_owl(o: &Ontology) -> String {
    let mut s = String::from(
        "<?xml version=\"1.0\"?>\n<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\"\n  \
         xmlns:rdfs=\"http://www.w3.org/2000/01/rdf-schema#\"\n  xmlns:owl=\"http://www.w3.org/2002/07/owl#\">\n",
    );
    for c in o.concepts() {
        let _ = writeln!(s, "  <owl:Class rdf:ID=\"{c}\">");
        for p in o.direct_supers(c.as_str()).unwrap() {
            let _ = writeln!(s, "    <rdfs:subClassOf rdf:resource=\"#{p}\"/>");
        }
        s.push_str("  </owl:Class>\n");
    }
    for p in o.object_properties() {
        let _ = writeln!(s, "  <owl:ObjectProperty rdf:ID=\"{}\">", p.name);
        for d in &p.domain {
            let _ = writeln!(s, "    <rdfs:domain rdf:resource=\"#{d}\"/>");
        }
        for r in &p.range {
            let _ = writeln!(s, "    <rdfs:range rdf:resource=\"#{r}\"/>");
        }
        if let Some(inv) = &p.inverse_of {
            let _ = writeln!(s, "    <owl:inverseOf rdf:resource=\"#{inv}\"/>");
        }
        s.push_str("  </owl:ObjectProperty>\n");
    }
    s.push_str("</rdf:RDF>\n");
    s
}
