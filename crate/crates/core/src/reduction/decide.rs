use serde::{Deserialize, Serialize};

use super::{DropEvent, Reducer, Seeded, SelectionOrder, SmallestId, Stage};
use crate::eds::{verify_eds, EdsCertificate};
use crate::error::{EdsError, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// `c` in the polynomial work budget `c·n⁴` on droppability tests.
///
/// Each reduction over a set of `m` vertices performs at most `m(m+1)` tests,
/// at most `n` anchors are committed, and each commit probes at most `n`
/// candidates, so the total is at most `(n²+n)(n²+1) ≤ 2n⁴` for `n ≥ 1`.
pub const WORK_BUDGET_CONSTANT: u64 = 2;

pub fn work_budget(n: usize) -> u64 {
    WORK_BUDGET_CONSTANT * (n as u64).pow(4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoneReason {
    /// The initial fixpoint reduction removed every vertex.
    InitialReductionEmpty,
    /// Every probe around the first anchor came back empty.
    AllProbesEmpty,
    /// Every probe around a later anchor came back empty; earlier commits
    /// are not revisited.
    CandidatesExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancyKind {
    FinalSetNotEds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Found(EdsCertificate),
    NoneExists(NoneReason),
    Discrepancy { final_set: VertexSet, why: DiscrepancyKind },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Found(_) => "Found",
            Verdict::NoneExists(_) => "NoneExists",
            Verdict::Discrepancy { .. } => "Discrepancy",
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Verdict::Found(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceKind {
    /// A vertex was removed by the droppability rule.
    Drop,
    /// An uncommitted vertex was selected; its closed neighborhood is probed next.
    Select,
    /// A probe around `vertex` started.
    Probe,
    /// The probe around `vertex` left no survivors.
    ProbeEmpty,
    /// `vertex` was committed and the candidate set replaced by its survivors.
    Commit,
}

/// One entry of the decision trace, serialized as `{kind, vertex, witness, stage}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub kind: TraceKind,
    pub vertex: usize,
    pub witness: Option<usize>,
    pub stage: Stage,
}

impl From<DropEvent> for TraceEvent {
    fn from(d: DropEvent) -> Self {
        TraceEvent { kind: TraceKind::Drop, vertex: d.vertex, witness: Some(d.witness), stage: d.stage }
    }
}

/// A committed anchor together with the set it was probed against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commit {
    pub anchor: usize,
    pub input: VertexSet,
    pub survivors: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub trace: Vec<TraceEvent>,
    /// Number of droppability tests performed.
    pub work_counter: u64,
    pub commits: Vec<Commit>,
    /// Candidate set after the initial fixpoint reduction.
    pub initial_fixpoint: VertexSet,
}

impl Decision {
    pub fn within_budget(&self, n: usize) -> bool {
        self.work_counter <= work_budget(n)
    }

    pub fn drop_count(&self) -> usize {
        self.trace.iter().filter(|e| e.kind == TraceKind::Drop).count()
    }

    pub fn probe_count(&self) -> usize {
        self.trace.iter().filter(|e| e.kind == TraceKind::Probe).count()
    }

    pub fn empty_probe_count(&self) -> usize {
        self.trace.iter().filter(|e| e.kind == TraceKind::ProbeEmpty).count()
    }
}

/// Decides whether a connected regular graph has an efficient dominating set,
/// resolving every choice by smallest id.
pub fn decide_eds(g: &Graph) -> Result<Decision> {
    decide_with_selection(g, SmallestId)
}

/// Same procedure with drop, anchor, and candidate order shuffled by `seed`.
pub fn decide_with_order(g: &Graph, seed: u64) -> Result<Decision> {
    decide_with_selection(g, Seeded::new(seed))
}

pub fn decide_with_selection(g: &Graph, order: impl SelectionOrder) -> Result<Decision> {
    if g.n() == 0 {
        return Err(EdsError::usage("decide requires a nonempty graph"));
    }
    if g.is_regular()?.is_none() {
        return Err(EdsError::usage("decide requires a regular graph"));
    }
    if !g.is_connected()? {
        return Err(EdsError::usage("decide requires a connected graph"));
    }

    let mut reducer = Reducer::new(g, order);
    let mut trace = Vec::new();
    let mut commits = Vec::new();

    let mut current = g.vertices();
    let mut drops = Vec::new();
    reducer.reduce(&mut current, Stage::InitialReduction, &mut drops);
    trace.extend(drops.into_iter().map(TraceEvent::from));
    let initial_fixpoint = current.clone();

    let finish = |verdict, trace, reducer: Reducer<'_, _>, commits| Decision {
        verdict,
        trace,
        work_counter: reducer.tests,
        commits,
        initial_fixpoint: initial_fixpoint.clone(),
    };

    if current.is_empty() {
        return Ok(finish(Verdict::NoneExists(NoneReason::InitialReductionEmpty), trace, reducer, commits));
    }

    let mut committed = VertexSet::empty(g.n());
    loop {
        let uncommitted = current.difference(&committed).to_vec();
        if uncommitted.is_empty() {
            break;
        }
        let center = reducer.order.pick_anchor(&uncommitted);
        trace.push(TraceEvent { kind: TraceKind::Select, vertex: center, witness: None, stage: Stage::MainLoop });

        let candidates = g.closed_neighborhood(center).intersection(&current).to_vec();
        let mut accepted = None;
        for anchor in reducer.order.probe_order(center, candidates) {
            trace.push(TraceEvent { kind: TraceKind::Probe, vertex: anchor, witness: None, stage: Stage::MainLoop });
            let result = reducer.probe(&current, anchor, Stage::MainLoop);
            trace.extend(result.drops.iter().copied().map(TraceEvent::from));
            if result.survivors.is_empty() {
                trace.push(TraceEvent { kind: TraceKind::ProbeEmpty, vertex: anchor, witness: None, stage: Stage::MainLoop });
            } else {
                accepted = Some(result);
                break;
            }
        }

        let Some(result) = accepted else {
            let reason = if commits.is_empty() { NoneReason::AllProbesEmpty } else { NoneReason::CandidatesExhausted };
            return Ok(finish(Verdict::NoneExists(reason), trace, reducer, commits));
        };
        trace.push(TraceEvent { kind: TraceKind::Commit, vertex: result.anchor, witness: None, stage: Stage::MainLoop });
        committed.insert(result.anchor);
        commits.push(Commit { anchor: result.anchor, input: current, survivors: result.survivors.clone() });
        current = result.survivors;
    }

    let verdict = if verify_eds(g, &current)? {
        Verdict::Found(EdsCertificate::new(g, current)?.expect("verified above"))
    } else {
        Verdict::Discrepancy { final_set: current, why: DiscrepancyKind::FinalSetNotEds }
    };
    Ok(finish(verdict, trace, reducer, commits))
}
