//! Text renderings of alignments, contexts, technique matrices and metrics,
//! plus the reader for alignment TSV files.
//!
//! Alignment TSV layout: `#`-prefixed `key=value` lines echo the run
//! configuration, then a header row, then one row per pair:
//!
//! ```text
//! source  target  shared_ancestors  score  <predicate>...
//! ```
//!
//! `shared_ancestors` is a `;`-joined list of `a=b` tokens and `score` has
//! four decimals. Predicate columns hold `true`/`false` and follow the fixed
//! predicate order. Readers only need the first two columns, so a plain
//! two-column file also works as a reference.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::eval::EvalMetrics;
use crate::matcher::techniques::TechniqueMatrix;
use crate::matcher::{Alignment, Predicate};
use crate::ontology::ConceptId;
use crate::taxonomy::{ConceptContext, ContextTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Tsv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "tsv" => Ok(OutputFormat::Tsv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!(
                "unknown format `{other}` (expected table, tsv or json)"
            )),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct TsvError {
    pub line: usize,
    pub message: String,
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

fn join(set: impl IntoIterator<Item = impl AsRef<str>>, sep: &str) -> String {
    set.into_iter()
        .map(|s| s.as_ref().to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn config_lines(alignment: &Alignment) -> Vec<(&'static str, String)> {
    let cfg = &alignment.config;
    vec![
        ("source_ontology", alignment.source_ontology.clone()),
        ("target_ontology", alignment.target_ontology.clone()),
        ("mode", cfg.mode.to_string()),
        ("tau", cfg.tau.to_string()),
        (
            "weights",
            join(cfg.weights.as_array().map(|w| w.to_string()), ","),
        ),
        ("criteria", join(cfg.criteria.iter().map(|p| p.name()), ",")),
        ("synonym_groups", cfg.lexicon.groups().len().to_string()),
    ]
}

fn shared_tokens(pair: &crate::matcher::AlignmentPair) -> String {
    join(
        pair.shared_ancestors
            .iter()
            .map(|(a, b)| format!("{a}={b}")),
        ";",
    )
}

pub fn alignment_tsv(alignment: &Alignment) -> String {
    let mut out = String::new();
    for (k, v) in config_lines(alignment) {
        writeln!(out, "# {k}={v}").unwrap();
    }
    let criteria: Vec<Predicate> = alignment.config.criteria.iter().copied().collect();
    let mut header = vec!["source", "target", "shared_ancestors", "score"];
    header.extend(criteria.iter().map(|p| p.name()));
    writeln!(out, "{}", header.join("\t")).unwrap();
    for pair in &alignment.pairs {
        let mut row = vec![
            pair.source.to_string(),
            pair.target.to_string(),
            shared_tokens(pair),
            format!("{:.4}", pair.score),
        ];
        row.extend(criteria.iter().map(|p| pair.criteria[p].to_string()));
        writeln!(out, "{}", row.join("\t")).unwrap();
    }
    out
}

#[derive(Serialize)]
struct JsonAlignment<'a> {
    source_ontology: &'a str,
    target_ontology: &'a str,
    config: JsonConfig<'a>,
    pairs: Vec<JsonPair<'a>>,
}

#[derive(Serialize)]
struct JsonConfig<'a> {
    mode: String,
    criteria: Vec<&'static str>,
    tau: f64,
    weights: [f64; 4],
    synonym_groups: Vec<&'a std::collections::BTreeSet<String>>,
}

#[derive(Serialize)]
struct JsonPair<'a> {
    source: &'a ConceptId,
    target: &'a ConceptId,
    shared_ancestors: Vec<[&'a ConceptId; 2]>,
    score: f64,
    criteria: std::collections::BTreeMap<&'static str, bool>,
}

pub fn alignment_json(alignment: &Alignment) -> String {
    let cfg = &alignment.config;
    let doc = JsonAlignment {
        source_ontology: &alignment.source_ontology,
        target_ontology: &alignment.target_ontology,
        config: JsonConfig {
            mode: cfg.mode.to_string(),
            criteria: cfg.criteria.iter().map(|p| p.name()).collect(),
            tau: cfg.tau,
            weights: cfg.weights.as_array(),
            synonym_groups: cfg.lexicon.groups().iter().collect(),
        },
        pairs: alignment
            .pairs
            .iter()
            .map(|p| JsonPair {
                source: &p.source,
                target: &p.target,
                shared_ancestors: p.shared_ancestors.iter().map(|(a, b)| [a, b]).collect(),
                score: round4(p.score),
                criteria: p.criteria.iter().map(|(k, v)| (k.name(), *v)).collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("alignment serializes");
    s.push('\n');
    s
}

fn check(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

/// Left-aligned columns separated by two spaces.
fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i + 1 == row.len() {
                line.push_str(cell);
            } else {
                let pad = widths[i] - cell.chars().count();
                line.push_str(cell);
                line.push_str(&" ".repeat(pad + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn alignment_table(alignment: &Alignment) -> String {
    let mut out = String::new();
    for (k, v) in config_lines(alignment) {
        writeln!(out, "{k}: {v}").unwrap();
    }
    writeln!(out, "pairs: {}", alignment.len()).unwrap();
    out.push('\n');
    let criteria: Vec<Predicate> = alignment.config.criteria.iter().copied().collect();
    let mut rows = Vec::new();
    let mut header: Vec<String> = ["source", "target", "score", "shared ancestors"]
        .map(String::from)
        .to_vec();
    header.extend(criteria.iter().map(|p| p.name().to_string()));
    rows.push(header);
    for pair in &alignment.pairs {
        let mut row = vec![
            pair.source.to_string(),
            pair.target.to_string(),
            format!("{:.4}", pair.score),
            if pair.shared_ancestors.is_empty() {
                "-".to_string()
            } else {
                shared_tokens(pair)
            },
        ];
        row.extend(criteria.iter().map(|p| check(pair.criteria[p]).to_string()));
        rows.push(row);
    }
    out.push_str(&grid(&rows));
    out
}

pub fn alignment(alignment: &Alignment, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => alignment_table(alignment),
        OutputFormat::Tsv => alignment_tsv(alignment),
        OutputFormat::Json => alignment_json(alignment),
    }
}

/// Reads `(source, target)` pairs from alignment TSV, in file order.
pub fn read_pairs(text: &str) -> Result<Vec<(ConceptId, ConceptId)>, TsvError> {
    let mut out = Vec::new();
    let mut seen_data = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: &str| TsvError {
            line,
            message: message.to_string(),
        };
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if !seen_data && fields.len() >= 2 && fields[0] == "source" && fields[1] == "target" {
            seen_data = true;
            continue;
        }
        seen_data = true;
        if fields.len() < 2 {
            return Err(err("expected at least two tab-separated columns"));
        }
        let source = ConceptId::new(fields[0]).map_err(|_| err("empty source concept"))?;
        let target = ConceptId::new(fields[1]).map_err(|_| err("empty target concept"))?;
        out.push((source, target));
    }
    Ok(out)
}

fn dash(set: &std::collections::BTreeSet<ConceptId>) -> String {
    if set.is_empty() {
        "---".to_string()
    } else {
        join(set.iter().map(ConceptId::as_str), ", ")
    }
}

fn context_block(out: &mut String, ctx: &ConceptContext) {
    writeln!(out, "[{}]", ctx.concept).unwrap();
    writeln!(out, "SUPC: {}", dash(&ctx.supc)).unwrap();
    writeln!(out, "SUBC: {}", dash(&ctx.subc)).unwrap();
    writeln!(out, "SBLC: {}", dash(&ctx.sblc)).unwrap();
    writeln!(out, "direct supers: {}", dash(&ctx.direct_supers)).unwrap();
    writeln!(out, "direct subs: {}", dash(&ctx.direct_subs)).unwrap();
    writeln!(out, "leaves: {}", dash(&ctx.leaves)).unwrap();
}

/// Context dump for `inspect`. Empty sets print as `---`.
pub fn contexts_text<'a>(
    table: &ContextTable,
    selected: impl IntoIterator<Item = &'a ConceptContext>,
) -> String {
    let mut out = String::new();
    writeln!(out, "ontology: {}", table.ontology_id).unwrap();
    writeln!(out, "concepts: {}", table.len()).unwrap();
    for ctx in selected {
        out.push('\n');
        context_block(&mut out, ctx);
    }
    out
}

pub fn contexts_json<'a>(
    table: &ContextTable,
    selected: impl IntoIterator<Item = &'a ConceptContext>,
) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        ontology: &'a str,
        concepts: usize,
        contexts: Vec<&'a ConceptContext>,
    }
    let doc = Doc {
        ontology: &table.ontology_id,
        concepts: table.len(),
        contexts: selected.into_iter().collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("contexts serialize");
    s.push('\n');
    s
}

pub fn matrix(m: &TechniqueMatrix, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut rows = Vec::new();
            let mut header = vec!["pair".to_string()];
            header.extend(m.techniques.iter().cloned());
            rows.push(header);
            for r in &m.rows {
                let mut row = vec![format!("({}, {})", r.source, r.target)];
                row.extend(r.cells.iter().map(|c| check(*c).to_string()));
                rows.push(row);
            }
            grid(&rows)
        }
        OutputFormat::Tsv => {
            let mut out = String::new();
            let mut header = vec!["source".to_string(), "target".to_string()];
            header.extend(m.techniques.iter().cloned());
            writeln!(out, "{}", header.join("\t")).unwrap();
            for r in &m.rows {
                let mut row = vec![r.source.to_string(), r.target.to_string()];
                row.extend(
                    r.cells
                        .iter()
                        .map(|c| if *c { "Y" } else { "N" }.to_string()),
                );
                writeln!(out, "{}", row.join("\t")).unwrap();
            }
            out
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                source: &'a ConceptId,
                target: &'a ConceptId,
                cells: Vec<&'static str>,
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                techniques: &'a [String],
                rows: Vec<Row<'a>>,
            }
            let doc = Doc {
                techniques: &m.techniques,
                rows: m
                    .rows
                    .iter()
                    .map(|r| Row {
                        source: &r.source,
                        target: &r.target,
                        cells: r.cells.iter().map(|c| if *c { "Y" } else { "N" }).collect(),
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("matrix serializes");
            s.push('\n');
            s
        }
    }
}

pub fn metrics(m: &EvalMetrics, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc {
                precision: f64,
                recall: f64,
                f_measure: f64,
                true_positives: usize,
                false_positives: usize,
                false_negatives: usize,
            }
            let doc = Doc {
                precision: round4(m.precision),
                recall: round4(m.recall),
                f_measure: round4(m.f_measure),
                true_positives: m.true_positives,
                false_positives: m.false_positives,
                false_negatives: m.false_negatives,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("metrics serialize");
            s.push('\n');
            s
        }
        OutputFormat::Tsv => format!(
            "precision\trecall\tf_measure\ttrue_positives\tfalse_positives\tfalse_negatives\n\
             {:.4}\t{:.4}\t{:.4}\t{}\t{}\t{}\n",
            m.precision, m.recall, m.f_measure, m.true_positives, m.false_positives, m.false_negatives
        ),
        OutputFormat::Table => format!(
            "precision: {:.4}\nrecall: {:.4}\nf_measure: {:.4}\ntrue_positives: {}\nfalse_positives: {}\nfalse_negatives: {}\n",
            m.precision, m.recall, m.f_measure, m.true_positives, m.false_positives, m.false_negatives
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_plain_and_headed_tsv() {
        let text = "# comment\nsource\ttarget\textra\nA\tB\tx\n\nC\tD\n";
        let pairs = read_pairs(text).unwrap();
        let names: Vec<(&str, &str)> = pairs
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        assert_eq!(names, [("A", "B"), ("C", "D")]);
        assert_eq!(read_pairs("X\tY\n").unwrap().len(), 1);
        assert!(read_pairs("").unwrap().is_empty());
    }

    #[test]
    fn rejects_single_column_rows() {
        assert_eq!(
            read_pairs("source\ttarget\nonly-one\n"),
            Err(TsvError {
                line: 2,
                message: "expected at least two tab-separated columns".into()
            })
        );
        assert!(read_pairs("A\t \n").is_err());
    }

    #[test]
    fn grid_pads_columns() {
        let rows = vec![
            vec!["a".to_string(), "bb".to_string()],
            vec!["ccc".to_string(), "d".to_string()],
        ];
        assert_eq!(grid(&rows), "a    bb\nccc  d\n");
    }
}
