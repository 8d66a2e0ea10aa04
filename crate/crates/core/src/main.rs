use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ontalign::eval::{evaluate_pairs, PairSet};
use ontalign::format::{self, OutputFormat};
use ontalign::lexicon::{load_lexicon_with, Normalization, SynonymLexicon};
use ontalign::matcher::techniques::{parse_mapping, technique_report, TechniqueMapping};
use ontalign::matcher::{
    align_contexts_indexed, MatchConfig, MatchError, MatchMode, Predicate, ScoreWeights,
};
use ontalign::ontology::{Ontology, OntologyError};
use ontalign::owl::{parse_ontology, ParseError};
use ontalign::taxonomy::{build_contexts, ContextTable};

/// Align OWL ontologies by shared super-concepts.
#[derive(Parser, Debug)]
#[command(name = "ontalign", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Align a source ontology with a target ontology.
    Align {
        source: PathBuf,
        target: PathBuf,
        #[command(flatten)]
        matching: MatchArgs,
        /// Predicates to evaluate for every pair (comma-separated; default all).
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<String>,
        /// Ranking weights: base,sibling,sub,relation.
        #[arg(long)]
        weights: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print the super-, sub- and sibling concepts of one or all concepts.
    Inspect {
        path: PathBuf,
        #[arg(long)]
        concept: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare technique verdicts on a list of concept pairs.
    Report {
        source: PathBuf,
        target: PathBuf,
        /// TSV file whose first two columns name source and target concepts.
        pairs: PathBuf,
        /// Technique mapping file (`Technique = predicate, ... | ...`).
        #[arg(long)]
        mapping: Option<PathBuf>,
        #[command(flatten)]
        matching: MatchArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Score a produced alignment against a reference alignment.
    Eval {
        produced: PathBuf,
        reference: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct MatchArgs {
    #[arg(long, default_value = "named", value_parser = ["strict", "named"])]
    mode: String,
    /// Synonym lexicon: one comma-separated group per line.
    #[arg(long)]
    synonyms: Option<PathBuf>,
    /// Coverage threshold for the "all (or most)" baselines.
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    /// Compare names as unordered camel-case word sets.
    #[arg(long)]
    camel_tokens: bool,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, default_value = "table", value_parser = ["table", "tsv", "json"])]
    format: String,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Parse(String),
    Cycle(String),
    Unknown(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Cycle(_) => 3,
            CliError::Unknown(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Cycle(m) | CliError::Unknown(m) => {
                m
            }
        }
    }
}

impl From<OntologyError> for CliError {
    fn from(e: OntologyError) -> Self {
        match e {
            OntologyError::Cycle(_) => CliError::Cycle(e.to_string()),
            OntologyError::UnknownConcept(_) => CliError::Unknown(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<MatchError> for CliError {
    fn from(e: MatchError) -> Self {
        match e {
            MatchError::InvalidConfig(m) => CliError::Usage(m),
            MatchError::Ontology(o) => o.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_ontology(path: &Path) -> Result<Ontology, CliError> {
    let text = read(path)?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_ontology(&text, &id).map_err(|e| match e {
        ParseError::Ontology(o) => match CliError::from(o) {
            CliError::Cycle(m) => CliError::Cycle(format!("{}: {m}", path.display())),
            other => CliError::Parse(format!("{}: {}", path.display(), other.message())),
        },
        other => CliError::Parse(format!("{}: {other}", path.display())),
    })
}

fn contexts(path: &Path) -> Result<ContextTable, CliError> {
    Ok(build_contexts(&load_ontology(path)?)?)
}

fn parse_format(s: &str) -> OutputFormat {
    s.parse().expect("clap restricts the format values")
}

fn lexicon(args: &MatchArgs) -> Result<SynonymLexicon, CliError> {
    let normalization = if args.camel_tokens {
        Normalization::TokenSet
    } else {
        Normalization::Folded
    };
    match &args.synonyms {
        Some(path) => load_lexicon_with(&read(path)?, normalization)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display()))),
        None => Ok(SynonymLexicon::empty()
            .with_normalization(normalization)
            .expect("empty lexicon")),
    }
}

fn parse_weights(s: &str) -> Result<ScoreWeights, CliError> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("--weights: {e}")))?;
    match parts.as_slice() {
        &[base, sibling, sub, relation] => Ok(ScoreWeights {
            base,
            sibling,
            sub,
            relation,
        }),
        _ => Err(CliError::Usage(
            "--weights takes exactly four numbers".into(),
        )),
    }
}

fn emit(out: &OutArgs, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Align {
            source,
            target,
            matching,
            criteria,
            weights,
            out,
        } => {
            let criteria: BTreeSet<Predicate> = if criteria.is_empty() {
                Predicate::ALL.into_iter().collect()
            } else {
                criteria
                    .iter()
                    .map(|c| c.parse::<Predicate>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| CliError::Usage(e.to_string()))?
            };
            let cfg = MatchConfig {
                mode: matching.mode.parse::<MatchMode>()?,
                criteria,
                tau: matching.tau,
                lexicon: lexicon(&matching)?,
                weights: weights
                    .as_deref()
                    .map(parse_weights)
                    .transpose()?
                    .unwrap_or_default(),
            };
            cfg.validate()?;
            let a = contexts(&source)?;
            let b = contexts(&target)?;
            let alignment = align_contexts_indexed(&a, &b, &cfg);
            emit(
                &out,
                &format::alignment(&alignment, parse_format(&out.format)),
            )
        }
        Command::Inspect { path, concept, out } => {
            let table = contexts(&path)?;
            let selected = match &concept {
                Some(name) => vec![table.get(name)?],
                None => table.iter().collect(),
            };
            let text = match parse_format(&out.format) {
                OutputFormat::Json => format::contexts_json(&table, selected),
                _ => format::contexts_text(&table, selected),
            };
            emit(&out, &text)
        }
        Command::Report {
            source,
            target,
            pairs,
            mapping,
            matching,
            out,
        } => {
            let mapping = match &mapping {
                Some(path) => parse_mapping(&read(path)?)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?,
                None => TechniqueMapping::default(),
            };
            let lex = lexicon(&matching)?;
            let mode = matching.mode.parse::<MatchMode>()?;
            if !(matching.tau > 0.0 && matching.tau <= 1.0) {
                return Err(CliError::Usage(format!(
                    "tau must be in (0, 1], got {}",
                    matching.tau
                )));
            }
            let requested: Vec<(String, String)> = format::read_pairs(&read(&pairs)?)
                .map_err(|e| CliError::Parse(format!("{}: {e}", pairs.display())))?
                .into_iter()
                .map(|(s, t)| (s.to_string(), t.to_string()))
                .collect();
            let a = contexts(&source)?;
            let b = contexts(&target)?;
            let matrix = technique_report(&requested, &a, &b, &mapping, &lex, matching.tau, mode)?;
            emit(&out, &format::matrix(&matrix, parse_format(&out.format)))
        }
        Command::Eval {
            produced,
            reference,
            out,
        } => {
            let load = |path: &Path| -> Result<PairSet, CliError> {
                let pairs = format::read_pairs(&read(path)?)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                Ok(pairs.into_iter().collect())
            };
            let metrics = evaluate_pairs(&load(&produced)?, &load(&reference)?);
            emit(&out, &format::metrics(&metrics, parse_format(&out.format)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
