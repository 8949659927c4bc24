//! Command-line front end: `ask`, `repl`, `batch` and `gen`.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{answer_graph, Answer, Context, EngineError, Options};
use crate::knowledge::{KnowledgeBase, KnowledgeError, RelationPriors};
use crate::oracle::{generate_question, generate_scene, oracle_answer, SceneConfig};
use crate::qgraph::{build_graph, QuestionGraph};
use crate::qparse::parse_question;
use crate::world::{DetectorProfile, Scene, SceneError};

pub const EXIT_FILE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error("{path}: {source}")]
    Knowledge { path: String, source: KnowledgeError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Question(#[from] EngineError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Question(_) => EXIT_PARSE,
            _ => EXIT_FILE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "procvqa", version, about = "Answer questions about symbolic scenes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Answer one question about a scene.
    Ask {
        #[command(flatten)]
        config: RunConfig,
        question: String,
    },
    /// Answer questions read line by line from standard input.
    Repl {
        #[command(flatten)]
        config: RunConfig,
    },
    /// Answer `scene<TAB>question[<TAB>expected]` lines and report agreement.
    Batch {
        #[command(flatten)]
        config: KnowledgeConfig,
        pairs: PathBuf,
    },
    /// Write random scenes and questions with oracle answers.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 10)]
        scenes: usize,
        #[arg(long, default_value_t = 10)]
        questions: usize,
    },
}

#[derive(Debug, Clone, Args)]
struct KnowledgeConfig {
    /// Knowledge base TSV; the bundled one by default.
    #[arg(long)]
    kb: Option<PathBuf>,
    /// Relation priors JSON; the bundled ones by default.
    #[arg(long, conflicts_with = "no_priors")]
    priors: Option<PathBuf>,
    /// Run without relation priors.
    #[arg(long)]
    no_priors: bool,
    /// Detector profile JSON; all default classes by default.
    #[arg(long)]
    profile: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct RunConfig {
    #[arg(long)]
    scene: PathBuf,
    #[command(flatten)]
    knowledge: KnowledgeConfig,
    /// Print elaborations and failure diagnostics.
    #[arg(long)]
    explain: bool,
    #[arg(long)]
    no_alternatives: bool,
    /// Print every evaluated pattern instance.
    #[arg(long)]
    trace: bool,
    /// Print the question graph before the answer.
    #[arg(long)]
    dump_graph: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl RunConfig {
    fn options(&self) -> Options {
        Options {
            alternatives: !self.no_alternatives,
            elaborations: self.explain,
            trace: self.trace,
            ..Options::default()
        }
    }
}

/// Knowledge sources shared by all questions of one run.
struct Resources {
    kb: KnowledgeBase,
    priors: RelationPriors,
    profile: DetectorProfile,
}

impl Resources {
    fn load(config: &KnowledgeConfig) -> Result<Self, CliError> {
        let knowledge = |path: &Path, e| CliError::Knowledge { path: path.display().to_string(), source: e };
        let kb = match &config.kb {
            Some(p) => KnowledgeBase::load(p).map_err(|e| knowledge(p, e))?,
            None => KnowledgeBase::builtin(),
        };
        let priors = match (&config.priors, config.no_priors) {
            (_, true) => RelationPriors::default(),
            (Some(p), _) => RelationPriors::load(p).map_err(|e| knowledge(p, e))?,
            (None, _) => RelationPriors::builtin(),
        };
        let profile = match &config.profile {
            Some(p) => DetectorProfile::load(p)?,
            None => DetectorProfile::default(),
        };
        Ok(Resources { kb, priors, profile })
    }

    fn context<'a>(&'a self, scene: &'a Scene) -> Context<'a> {
        Context { scene, kb: &self.kb, priors: &self.priors, profile: &self.profile }
    }
}

fn graph_for(question: &str) -> Result<QuestionGraph, EngineError> {
    let parsed = parse_question(question)?;
    Ok(build_graph(&parsed.ternaries, parsed.target)?)
}

fn render_answer(answer: &Answer, config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<()> {
    if config.format == Format::Json {
        return writeln!(out, "{}", serde_json::to_string_pretty(answer).expect("answers serialize"));
    }
    writeln!(out, "{}", answer.text)?;
    for line in &answer.elaborations {
        writeln!(out, "  elaboration: {line}")?;
    }
    for line in &answer.alternatives {
        writeln!(out, "  alternative: {line}")?;
    }
    for t in &answer.trace {
        writeln!(out, "  trace: {t}")?;
    }
    if config.explain {
        for d in &answer.diagnostics {
            writeln!(err, "{} '{}' at node {}: {}", d.kind, d.element, d.node, d.reason)?;
        }
    }
    Ok(())
}

fn ask_one(
    question: &str,
    scene: &Scene,
    res: &Resources,
    config: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let graph = graph_for(question)?;
    if config.dump_graph {
        let sink: &mut dyn Write = if config.format == Format::Json { &mut *err } else { &mut *out };
        write!(sink, "{graph}").map_err(stdio)?;
    }
    let answer = answer_graph(&graph, res.context(scene), config.options());
    render_answer(&answer, config, out, err).map_err(stdio)
}

fn stdio(source: std::io::Error) -> CliError {
    CliError::Io { path: "<stdio>".into(), source }
}

fn cmd_ask(config: &RunConfig, question: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let res = Resources::load(&config.knowledge)?;
    let scene = Scene::load(&config.scene)?;
    ask_one(question, &scene, &res, config, out, err)
}

fn cmd_repl(
    config: &RunConfig,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let res = Resources::load(&config.knowledge)?;
    let mut scene = Scene::load(&config.scene)?;
    for line in input.lines() {
        let line = line.map_err(stdio)?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == ":quit" {
            break;
        }
        if let Some(path) = line.strip_prefix(":scene") {
            match Scene::load(path.trim()) {
                Ok(s) => {
                    scene = s;
                    writeln!(out, "scene: {}", path.trim()).map_err(stdio)?;
                }
                Err(e) => writeln!(out, "error: {e}").map_err(stdio)?,
            }
            continue;
        }
        writeln!(out, "> {line}").map_err(stdio)?;
        if let Err(e) = ask_one(line, &scene, &res, config, out, err) {
            writeln!(out, "error: {e}").map_err(stdio)?;
        }
    }
    Ok(())
}

/// One parsed line of a batch file.
struct Pair {
    line: usize,
    scene: PathBuf,
    question: String,
    expected: Option<String>,
}

fn cmd_batch(config: &KnowledgeConfig, pairs: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let res = Resources::load(config)?;
    let text =
        std::fs::read_to_string(pairs).map_err(|source| CliError::Io { path: pairs.display().to_string(), source })?;
    let base = pairs.parent().unwrap_or(Path::new("."));
    let mut jobs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields[..] {
            [scene, question] | [scene, question, _] if !question.trim().is_empty() => jobs.push(Pair {
                line: i + 1,
                scene: base.join(scene),
                question: question.trim().to_string(),
                expected: fields.get(2).map(|e| e.trim().to_string()),
            }),
            _ => writeln!(err, "line {}: expected scene<TAB>question[<TAB>expected], skipped", i + 1).map_err(stdio)?,
        }
    }
    let results: Vec<Result<String, String>> = jobs
        .par_iter()
        .map(|p| {
            let scene = Scene::load(&p.scene).map_err(|e| e.to_string())?;
            let graph = graph_for(&p.question).map_err(|e| e.to_string())?;
            Ok(answer_graph(&graph, res.context(&scene), Options::bare()).value.to_string())
        })
        .collect();
    let (mut checked, mut agreed, mut failed) = (0, 0, 0);
    for (p, r) in jobs.iter().zip(results) {
        match r {
            Ok(value) => {
                let verdict = match &p.expected {
                    Some(e) => {
                        checked += 1;
                        if *e == value {
                            agreed += 1;
                            "\tok"
                        } else {
                            "\tMISMATCH"
                        }
                    }
                    None => "",
                };
                writeln!(out, "{}\t{}\t{value}{verdict}", p.line, p.question).map_err(stdio)?;
            }
            Err(e) => {
                failed += 1;
                writeln!(err, "line {}: {e}", p.line).map_err(stdio)?;
            }
        }
    }
    writeln!(out, "answered {} of {}, errors {failed}", jobs.len() - failed, jobs.len()).map_err(stdio)?;
    if checked > 0 {
        writeln!(out, "agreement: {agreed}/{checked}").map_err(stdio)?;
    }
    Ok(())
}

fn cmd_gen(seed: u64, out_dir: &Path, scenes: usize, questions: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let write = |path: &Path, text: &str| {
        std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
    };
    let scene_dir = out_dir.join("scenes");
    std::fs::create_dir_all(&scene_dir)
        .map_err(|source| CliError::Io { path: scene_dir.display().to_string(), source })?;
    let kb = KnowledgeBase::builtin();
    let config = SceneConfig::default();
    let mut pairs = String::new();
    for i in 0..scenes {
        let scene_seed = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        let scene = generate_scene(scene_seed, &config);
        let name = format!("scenes/scene_{i:04}.json");
        write(&out_dir.join(&name), &scene.to_json())?;
        for j in 0..questions {
            let question = generate_question(scene_seed.wrapping_mul(7919).wrapping_add(j as u64), &scene);
            let graph = graph_for(&question)?;
            match oracle_answer(&graph, &scene, &kb) {
                Ok(expected) => pairs.push_str(&format!("{name}\t{question}\t{expected}\n")),
                Err(_) => pairs.push_str(&format!("{name}\t{question}\n")),
            }
        }
    }
    write(&out_dir.join("pairs.tsv"), &pairs)?;
    writeln!(out, "wrote {} scenes and {} questions to {}", scenes, scenes * questions, out_dir.display())
        .map_err(stdio)
}

/// Runs the command line with explicit streams; returns the exit status.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_FILE } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Ask { config, question } => cmd_ask(config, question, out, err),
        Command::Repl { config } => cmd_repl(config, input, out, err),
        Command::Batch { config, pairs } => cmd_batch(config, pairs, out, err),
        Command::Gen { seed, out_dir, scenes, questions } => cmd_gen(*seed, out_dir, *scenes, *questions, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes_by_error_kind() {
        let q = CliError::Question(parse_question("zorp blorp").unwrap_err().into());
        assert_eq!(q.exit_code(), EXIT_PARSE);
        let f = CliError::Scene(Scene::load("/nonexistent/scene.json").unwrap_err());
        assert_eq!(f.exit_code(), EXIT_FILE);
    }
}
