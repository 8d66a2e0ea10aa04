//! Name equivalence between concept identifiers, optionally widened by a
//! synonym lexicon.
//!
//! Lexicon files hold one synonym group per line, terms separated by commas.
//! Lines starting with `#` and blank lines are skipped. Groups that share a
//! term are merged.

use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("invalid name `{0}`: nothing left after normalization")]
    InvalidName(String),
    #[error("lexicon line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Case-folds and removes whitespace and underscores.
///
/// ```
/// assert_eq!(ontalign::lexicon::normalize("HEC_Student").unwrap(), "hecstudent");
/// ```
pub fn normalize(name: &str) -> Result<String, LexiconError> {
    let out: String = name
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .flat_map(char::to_lowercase)
        .collect();
    if out.is_empty() {
        return Err(LexiconError::InvalidName(name.to_string()));
    }
    Ok(out)
}

/// Splits camel case, digits and separators into lowercase words and joins
/// the sorted word set, so word order stops mattering.
fn token_set(name: &str) -> Result<String, LexiconError> {
    let mut words = BTreeSet::new();
    let mut current = String::new();
    let mut prev: Option<char> = None;
    let chars: Vec<char> = name.chars().collect();
    for (i, &ch) in chars.iter().enumerate() {
        if ch.is_whitespace() || ch == '_' || ch == '-' {
            if !current.is_empty() {
                words.insert(std::mem::take(&mut current));
            }
            prev = None;
            continue;
        }
        let boundary = match prev {
            Some(p) if ch.is_uppercase() && p.is_lowercase() => true,
            Some(p) if ch.is_uppercase() && p.is_uppercase() => {
                // "HECStudent": the S starts a new word.
                chars.get(i + 1).is_some_and(|n| n.is_lowercase())
            }
            Some(p) => ch.is_ascii_digit() != p.is_ascii_digit(),
            None => false,
        };
        if boundary && !current.is_empty() {
            words.insert(std::mem::take(&mut current));
        }
        current.extend(ch.to_lowercase());
        prev = Some(ch);
    }
    if !current.is_empty() {
        words.insert(current);
    }
    if words.is_empty() {
        return Err(LexiconError::InvalidName(name.to_string()));
    }
    Ok(words.into_iter().collect::<Vec<_>>().join(" "))
}

/// How names are reduced before comparison.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Normalization {
    /// [`normalize`]: fold case, drop whitespace and underscores.
    #[default]
    Folded,
    /// Compare the unordered set of camel-case words.
    TokenSet,
}

impl Normalization {
    pub fn apply(self, name: &str) -> Result<String, LexiconError> {
        match self {
            Normalization::Folded => normalize(name),
            Normalization::TokenSet => token_set(name),
        }
    }
}

/// Disjoint groups of mutually equivalent normalized terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynonymLexicon {
    normalization: Normalization,
    /// term -> index into `groups`
    group_of: BTreeMap<String, usize>,
    groups: Vec<BTreeSet<String>>,
}

impl SynonymLexicon {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a lexicon from raw term groups, merging groups that share a term.
    pub fn from_groups<I, G, S>(groups: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = G>,
        G: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self::from_groups_with(Normalization::default(), groups)
    }

    pub fn from_groups_with<I, G, S>(
        normalization: Normalization,
        groups: I,
    ) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = G>,
        G: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut uf = UnionFind::default();
        for group in groups {
            let mut first = None;
            for term in group {
                let t = uf.intern(normalization.apply(term.as_ref())?);
                match first {
                    None => first = Some(t),
                    Some(f) => uf.union(f, t),
                }
            }
        }
        Ok(uf.into_lexicon(normalization))
    }

    pub fn groups(&self) -> &[BTreeSet<String>] {
        &self.groups
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Same groups, different name reduction. Terms are re-normalized.
    pub fn with_normalization(&self, normalization: Normalization) -> Result<Self, LexiconError> {
        Self::from_groups_with(normalization, self.groups.iter())
    }

    /// Canonical key for `name`: equal keys if and only if the names are
    /// equivalent. Names that normalize to nothing fall back to themselves.
    pub fn key(&self, name: &str) -> String {
        match self.normalization.apply(name) {
            Ok(n) => match self.group_of.get(&n) {
                Some(g) => format!("\u{1}{g}"),
                None => n,
            },
            Err(_) => format!("\u{2}{name}"),
        }
    }

    pub fn equivalent(&self, a: &str, b: &str) -> bool {
        self.key(a) == self.key(b)
    }
}

/// Free-function form of [`SynonymLexicon::equivalent`].
pub fn equivalent(a: &str, b: &str, lex: &SynonymLexicon) -> bool {
    lex.equivalent(a, b)
}

pub fn load_lexicon(source: &str) -> Result<SynonymLexicon, LexiconError> {
    load_lexicon_with(source, Normalization::default())
}

pub fn load_lexicon_with(
    source: &str,
    normalization: Normalization,
) -> Result<SynonymLexicon, LexiconError> {
    let mut groups = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut terms = Vec::new();
        for raw in trimmed.split(',') {
            let term = normalization.apply(raw).map_err(|_| LexiconError::Format {
                line: line_no,
                message: format!("empty term in `{trimmed}`"),
            })?;
            terms.push(term);
        }
        if terms.len() < 2 {
            return Err(LexiconError::Format {
                line: line_no,
                message: "a synonym group needs at least 2 terms".into(),
            });
        }
        groups.push(terms);
    }
    SynonymLexicon::from_groups_with(normalization, groups)
}

#[derive(Default)]
struct UnionFind {
    ids: BTreeMap<String, usize>,
    terms: Vec<String>,
    parent: Vec<usize>,
}

impl UnionFind {
    fn intern(&mut self, term: String) -> usize {
        if let Some(&i) = self.ids.get(&term) {
            return i;
        }
        let i = self.terms.len();
        self.ids.insert(term.clone(), i);
        self.terms.push(term);
        self.parent.push(i);
        i
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn into_lexicon(mut self, normalization: Normalization) -> SynonymLexicon {
        let mut by_root: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
        for i in 0..self.terms.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().insert(self.terms[i].clone());
        }
        // Single-term groups add nothing over plain normalization.
        let mut groups: Vec<BTreeSet<String>> =
            by_root.into_values().filter(|g| g.len() > 1).collect();
        groups.sort();
        let group_of = groups
            .iter()
            .enumerate()
            .flat_map(|(g, terms)| terms.iter().map(move |t| (t.clone(), g)))
            .collect();
        SynonymLexicon {
            normalization,
            group_of,
            groups,
        }
    }
}
