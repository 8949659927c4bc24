//! Answers question graphs against a scene.

mod answer;
mod eval;
mod explain;
mod memory;

use thiserror::Error;

pub use answer::{Answer, AnswerValue, ElementKind, FailureRecord, Outcome, TraceEntry};
pub use memory::{HintRecord, WorkingMemory};

use crate::knowledge::{ClassResolution, KnowledgeBase, RelationPriors};
use crate::qgraph::{build_graph, plan_traversal, GraphError, QuestionGraph};
use crate::qparse::{parse_question, QParseError};
use crate::world::{DetectorProfile, Scene};
use eval::Evaluator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub alternatives: bool,
    pub elaborations: bool,
    /// Order edge traversal by detection counts.
    pub planning: bool,
    pub guided_detection: bool,
    pub trace: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { alternatives: true, elaborations: true, planning: true, guided_detection: true, trace: false }
    }
}

impl Options {
    /// Only the answer value; no explanations, planning or guided search.
    pub fn bare() -> Self {
        Options { alternatives: false, elaborations: false, planning: false, guided_detection: false, trace: false }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Parse(#[from] QParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Everything an answer is computed against.
#[derive(Debug, Clone, Copy)]
pub struct Context<'a> {
    pub scene: &'a Scene,
    pub kb: &'a KnowledgeBase,
    pub priors: &'a RelationPriors,
    pub profile: &'a DetectorProfile,
}

/// Parses `question` and answers it.
pub fn answer(question: &str, ctx: Context<'_>, options: Options) -> Result<Answer, EngineError> {
    let parsed = parse_question(question)?;
    let graph = build_graph(&parsed.ternaries, parsed.target)?;
    Ok(answer_graph(&graph, ctx, options))
}

/// Answers an already built question graph.
pub fn answer_graph(graph: &QuestionGraph, ctx: Context<'_>, options: Options) -> Answer {
    let mut ev = Evaluator::new(graph, ctx.scene, ctx.kb, ctx.priors, ctx.profile, options);
    if options.planning && ev.limitation().is_none() {
        let counts = ev.initial_counts();
        ev.set_graph(plan_traversal(graph, &counts));
    }
    let (value, results) = ev.decide();
    let text = explain::headline(&mut ev, &value, &results);
    let mut alternatives = Vec::new();
    if options.alternatives {
        alternatives = explain::alternatives(&mut ev, &value);
        if let AnswerValue::NoObject { class } = &value {
            if let Some(line) = superordinate_retry(graph, class, &ev, ctx) {
                alternatives.push(line);
            }
        }
    }
    let elaborations = if options.elaborations { explain::elaborations(&mut ev, &value, &results) } else { Vec::new() };
    Answer {
        value,
        text,
        elaborations,
        alternatives,
        diagnostics: ev.wm.failure_log.clone(),
        trace: std::mem::take(&mut ev.trace),
    }
}

/// Retries a failed person subtype as plain `person`.
fn superordinate_retry(graph: &QuestionGraph, class: &str, ev: &Evaluator<'_>, ctx: Context<'_>) -> Option<String> {
    let node = graph.nodes.iter().find(|n| n.class.as_deref() == Some(class))?;
    if !matches!(ev.res[&node.id], ClassResolution::Subordinate { .. }) {
        return None;
    }
    let mut relaxed = graph.clone();
    relaxed.nodes.iter_mut().find(|n| n.id == node.id)?.class = Some("person".into());
    let retry = answer_graph(&relaxed, ctx, Options { alternatives: false, elaborations: false, ..ev.options });
    matches!(retry.value, AnswerValue::Yes).then(|| "There is a person (superordinate class)".to_string())
}
