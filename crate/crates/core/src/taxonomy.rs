//! Structural neighbourhoods of concepts: ancestors (SUPC), descendants
//! (SUBC), siblings (SBLC), leaves and root paths.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::ontology::{ConceptId, Ontology, OntologyError};

/// Every transitive super-concept of `name`.
pub fn ancestors(ontology: &Ontology, name: &str) -> Result<BTreeSet<ConceptId>, OntologyError> {
    closure(ontology, name, |o, c| o.direct_supers(c))
}

/// Every transitive sub-concept of `name`.
pub fn descendants(ontology: &Ontology, name: &str) -> Result<BTreeSet<ConceptId>, OntologyError> {
    closure(ontology, name, |o, c| o.direct_subs(c))
}

fn closure<'o>(
    ontology: &'o Ontology,
    name: &str,
    step: impl Fn(&'o Ontology, &str) -> Result<&'o BTreeSet<ConceptId>, OntologyError>,
) -> Result<BTreeSet<ConceptId>, OntologyError> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<&ConceptId> = step(ontology, name)?.iter().collect();
    while let Some(c) = stack.pop() {
        if seen.insert(c.clone()) {
            stack.extend(step(ontology, c.as_str())?.iter());
        }
    }
    Ok(seen)
}

/// Co-children of each direct super-concept. Roots are siblings of the other roots.
pub fn siblings(ontology: &Ontology, name: &str) -> Result<BTreeSet<ConceptId>, OntologyError> {
    let supers = ontology.direct_supers(name)?;
    let mut out: BTreeSet<ConceptId> = if supers.is_empty() {
        ontology.roots().cloned().collect()
    } else {
        let mut s = BTreeSet::new();
        for p in supers {
            s.extend(ontology.direct_subs(p.as_str())?.iter().cloned());
        }
        s
    };
    out.remove(name);
    Ok(out)
}

/// Descendants with no sub-concept, or `{name}` when `name` is itself a leaf.
pub fn leaves_under(ontology: &Ontology, name: &str) -> Result<BTreeSet<ConceptId>, OntologyError> {
    let subc = descendants(ontology, name)?;
    if subc.is_empty() {
        let c = ontology
            .get(name)
            .ok_or_else(|| OntologyError::UnknownConcept(name.to_string()))?;
        return Ok([c.clone()].into());
    }
    Ok(subc
        .into_iter()
        .filter(|c| {
            ontology
                .direct_subs(c.as_str())
                .is_ok_and(BTreeSet::is_empty)
        })
        .collect())
}

/// A concept together with its structural surroundings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConceptContext {
    pub concept: ConceptId,
    pub supc: BTreeSet<ConceptId>,
    pub subc: BTreeSet<ConceptId>,
    pub sblc: BTreeSet<ConceptId>,
    pub direct_supers: BTreeSet<ConceptId>,
    pub direct_subs: BTreeSet<ConceptId>,
    pub leaves: BTreeSet<ConceptId>,
    /// Union of every root-to-concept path, excluding the concept. Equal to `supc`.
    pub root_path: BTreeSet<ConceptId>,
    /// Object properties whose domain or range mentions the concept.
    pub properties: BTreeSet<String>,
}

impl ConceptContext {
    pub fn is_root(&self) -> bool {
        self.supc.is_empty()
    }
}

/// One [`ConceptContext`] per concept of an ontology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextTable {
    pub ontology_id: String,
    pub contexts: BTreeMap<ConceptId, ConceptContext>,
}

impl ContextTable {
    pub fn get(&self, name: &str) -> Result<&ConceptContext, OntologyError> {
        self.contexts
            .get(name)
            .ok_or_else(|| OntologyError::UnknownConcept(name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ConceptContext> {
        self.contexts.values()
    }
}

/// Builds the context of every concept.
///
/// Ancestor and descendant sets are computed once per concept in topological
/// order and shared, so the whole table costs one pass per direction instead
/// of one traversal per concept.
pub fn build_contexts(ontology: &Ontology) -> Result<ContextTable, OntologyError> {
    if let Some(cycle) = ontology_cycles(ontology).into_iter().next() {
        return Err(OntologyError::Cycle(cycle));
    }
    let order = topological_order(ontology);
    let supc = propagate(ontology, order.iter(), |o, c| o.direct_supers(c));
    let subc = propagate(ontology, order.iter().rev(), |o, c| o.direct_subs(c));

    let roots: BTreeSet<ConceptId> = ontology.roots().cloned().collect();
    let mut contexts = BTreeMap::new();
    for c in ontology.concepts() {
        let direct_supers = ontology.direct_supers(c.as_str())?.clone();
        let direct_subs = ontology.direct_subs(c.as_str())?.clone();
        let mut sblc = if direct_supers.is_empty() {
            roots.clone()
        } else {
            direct_supers
                .iter()
                .flat_map(|p| ontology.children_of(p))
                .cloned()
                .collect()
        };
        sblc.remove(c);
        let my_subc = subc[c].clone();
        let leaves = if my_subc.is_empty() {
            [c.clone()].into()
        } else {
            my_subc
                .iter()
                .filter(|d| ontology.children_of(d).is_empty())
                .cloned()
                .collect()
        };
        let my_supc = supc[c].clone();
        contexts.insert(
            c.clone(),
            ConceptContext {
                concept: c.clone(),
                root_path: my_supc.clone(),
                supc: my_supc,
                subc: my_subc,
                sblc,
                direct_supers,
                direct_subs,
                leaves,
                properties: ontology.properties_of(c.as_str()),
            },
        );
    }
    Ok(ContextTable {
        ontology_id: ontology.id().to_string(),
        contexts,
    })
}

/// Kahn order, parents before children; ties broken lexicographically.
fn topological_order(ontology: &Ontology) -> Vec<ConceptId> {
    let mut pending: BTreeMap<&ConceptId, usize> = ontology
        .concepts()
        .iter()
        .map(|c| {
            (
                c,
                ontology.direct_supers(c.as_str()).map_or(0, BTreeSet::len),
            )
        })
        .collect();
    let mut ready: VecDeque<&ConceptId> = pending
        .iter()
        .filter(|(_, n)| **n == 0)
        .map(|(c, _)| *c)
        .collect();
    let mut order = Vec::with_capacity(pending.len());
    while let Some(c) = ready.pop_front() {
        order.push(c.clone());
        for child in ontology.children_of(c) {
            let n = pending.get_mut(child).expect("child is a concept");
            *n -= 1;
            if *n == 0 {
                ready.push_back(child);
            }
        }
    }
    order
}

/// For each concept in `order`, the union of `step` neighbours and their
/// already-computed sets. `order` must visit neighbours first.
fn propagate<'o, 'a>(
    ontology: &'o Ontology,
    order: impl Iterator<Item = &'a ConceptId>,
    step: impl Fn(&'o Ontology, &str) -> Result<&'o BTreeSet<ConceptId>, OntologyError>,
) -> BTreeMap<ConceptId, BTreeSet<ConceptId>> {
    let mut out: BTreeMap<ConceptId, BTreeSet<ConceptId>> = BTreeMap::new();
    for c in order {
        let mut acc = BTreeSet::new();
        for n in step(ontology, c.as_str()).expect("concept is known") {
            acc.insert(n.clone());
            acc.extend(out[n].iter().cloned());
        }
        out.insert(c.clone(), acc);
    }
    out
}

impl Ontology {
    fn children_of(&self, c: &ConceptId) -> &BTreeSet<ConceptId> {
        self.direct_subs(c.as_str()).expect("concept is known")
    }
}

fn ontology_cycles(ontology: &Ontology) -> Vec<Vec<ConceptId>> {
    detect_cycles(ontology.subclass_edges())
}

/// Finds subclass cycles among `(child, parent)` edges.
///
/// Reports one cycle per strongly connected component that contains one,
/// starting at the component's smallest concept and following edges from
/// child to parent. The result is sorted and empty for a DAG.
pub fn detect_cycles<'a>(
    edges: impl IntoIterator<Item = (&'a ConceptId, &'a ConceptId)>,
) -> Vec<Vec<ConceptId>> {
    let mut out_adj: BTreeMap<&ConceptId, BTreeSet<&ConceptId>> = BTreeMap::new();
    let mut in_adj: BTreeMap<&ConceptId, BTreeSet<&ConceptId>> = BTreeMap::new();
    for (child, parent) in edges {
        out_adj.entry(child).or_default().insert(parent);
        out_adj.entry(parent).or_default();
        in_adj.entry(parent).or_default().insert(child);
        in_adj.entry(child).or_default();
    }

    // Kosaraju: finish order on the forward graph, then components on the reverse.
    let mut visited = BTreeSet::new();
    let mut finish = Vec::with_capacity(out_adj.len());
    for &start in out_adj.keys() {
        if !visited.insert(start) {
            continue;
        }
        let mut stack = vec![(start, out_adj[start].iter())];
        while let Some((node, iter)) = stack.last_mut() {
            match iter.next() {
                Some(&next) => {
                    if visited.insert(next) {
                        stack.push((next, out_adj[next].iter()));
                    }
                }
                None => {
                    finish.push(*node);
                    stack.pop();
                }
            }
        }
    }

    let mut component: BTreeMap<&ConceptId, usize> = BTreeMap::new();
    let mut components: Vec<Vec<&ConceptId>> = Vec::new();
    for &start in finish.iter().rev() {
        if component.contains_key(start) {
            continue;
        }
        let id = components.len();
        let mut members = vec![];
        let mut stack = vec![start];
        component.insert(start, id);
        while let Some(node) = stack.pop() {
            members.push(node);
            for &prev in &in_adj[node] {
                if !component.contains_key(prev) {
                    component.insert(prev, id);
                    stack.push(prev);
                }
            }
        }
        components.push(members);
    }

    let mut cycles = Vec::new();
    for (id, members) in components.iter().enumerate() {
        let start = *members.iter().min().expect("component is non-empty");
        if members.len() == 1 {
            if out_adj[start].contains(start) {
                cycles.push(vec![start.clone()]);
            }
            continue;
        }
        // Shortest walk start -> ... -> start inside the component.
        let mut pred: BTreeMap<&ConceptId, &ConceptId> = BTreeMap::new();
        let mut queue = VecDeque::from([start]);
        let mut closing = None;
        'bfs: while let Some(node) = queue.pop_front() {
            for &next in &out_adj[node] {
                if component[next] != id {
                    continue;
                }
                if next == start {
                    closing = Some(node);
                    break 'bfs;
                }
                if !pred.contains_key(next) {
                    pred.insert(next, node);
                    queue.push_back(next);
                }
            }
        }
        let mut node = closing.expect("a strongly connected component has a cycle");
        let mut cycle = vec![node.clone()];
        while node != start {
            node = pred[node];
            cycle.push(node.clone());
        }
        cycle.reverse();
        cycles.push(cycle);
    }
    cycles.sort();
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::OntologyBuilder;

    fn c(s: &str) -> ConceptId {
        ConceptId::new(s).unwrap()
    }

    fn set(names: &[&str]) -> BTreeSet<ConceptId> {
        names.iter().map(|n| c(n)).collect()
    }

    fn ontology(edges: &[(&str, &str)], extra: &[&str]) -> Ontology {
        let mut b = OntologyBuilder::new("t");
        for n in extra {
            b.add_concept(c(n));
        }
        for (child, parent) in edges {
            b.add_edge(c(child), c(parent));
        }
        b.build().unwrap()
    }

    #[test]
    fn root_has_no_ancestors() {
        let o = ontology(&[("B", "A")], &[]);
        assert!(ancestors(&o, "A").unwrap().is_empty());
        assert_eq!(ancestors(&o, "B").unwrap(), set(&["A"]));
    }

    #[test]
    fn unknown_concept_is_an_error() {
        let o = ontology(&[], &["A"]);
        for f in [ancestors, descendants, siblings, leaves_under] {
            assert_eq!(
                f(&o, "Nope"),
                Err(OntologyError::UnknownConcept("Nope".into()))
            );
        }
    }

    #[test]
    fn single_root_has_no_siblings() {
        let o = ontology(&[("B", "A"), ("C", "A")], &[]);
        assert!(siblings(&o, "A").unwrap().is_empty());
        assert_eq!(siblings(&o, "B").unwrap(), set(&["C"]));
    }

    #[test]
    fn roots_are_mutual_siblings() {
        let o = ontology(&[("B", "A")], &["X", "Y"]);
        assert_eq!(siblings(&o, "A").unwrap(), set(&["X", "Y"]));
        assert_eq!(siblings(&o, "X").unwrap(), set(&["A", "Y"]));
    }

    #[test]
    fn multi_parent_siblings_union() {
        let o = ontology(&[("C", "A"), ("C", "B"), ("D", "A"), ("E", "B")], &[]);
        assert_eq!(siblings(&o, "C").unwrap(), set(&["D", "E"]));
    }

    #[test]
    fn leaf_is_its_own_leaf() {
        let o = ontology(&[("B", "A")], &[]);
        assert_eq!(leaves_under(&o, "B").unwrap(), set(&["B"]));
        assert_eq!(leaves_under(&o, "A").unwrap(), set(&["B"]));
    }

    #[test]
    fn diamond_contexts() {
        let o = ontology(&[("B", "A"), ("C", "A"), ("D", "B"), ("D", "C")], &[]);
        let t = build_contexts(&o).unwrap();
        let d = t.get("D").unwrap();
        assert_eq!(d.supc, set(&["A", "B", "C"]));
        assert_eq!(d.root_path, d.supc);
        assert!(d.sblc.is_empty());
        let a = t.get("A").unwrap();
        assert_eq!(a.subc, set(&["B", "C", "D"]));
        assert_eq!(a.leaves, set(&["D"]));
        assert!(a.is_root());
    }

    #[test]
    fn empty_ontology_has_empty_table() {
        let t = build_contexts(&Ontology::empty("e")).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.ontology_id, "e");
    }

    #[test]
    fn smallest_cycle_detected() {
        let (a, b) = (c("A"), c("B"));
        let cycles = detect_cycles([(&a, &b), (&b, &a)]);
        assert_eq!(cycles, vec![vec![a, b]]);
    }

    #[test]
    fn cycle_follows_edge_direction() {
        let (a, b, x) = (c("A"), c("B"), c("X"));
        // A -> X -> B -> A plus a tail that is not on the cycle.
        let t = c("T");
        let cycles = detect_cycles([(&a, &x), (&x, &b), (&b, &a), (&t, &a)]);
        assert_eq!(cycles, vec![vec![a, x, b]]);
    }

    #[test]
    fn dag_has_no_cycles() {
        let o = ontology(&[("B", "A"), ("C", "B"), ("C", "A")], &[]);
        assert!(detect_cycles(o.subclass_edges()).is_empty());
    }
}
