//! The candidate-elimination procedure for efficient domination in regular
//! graphs.
//!
//! A vertex `v` of the candidate set `A` is *droppable* when some `c` at
//! distance two from `v` has no neighbor in `A` outside `N(v)`: if `v` were in
//! an EDS `X ⊆ A`, then `c` could only be dominated through `N(v) ∩ N(c)`,
//! which would put a neighbor of `v` into `X`. Dropping is therefore sound for
//! every EDS contained in `A`, and the same holds for every set reached by
//! repeated dropping.
//!
//! [`probe`] removes the distance-≤2 ball around an anchor and reduces to a
//! fixpoint; an empty result proves the anchor lies in no EDS inside `A`.
//! [`decide_eds`] drives probes anchor by anchor, committing to the first
//! candidate whose probe survives.

mod decide;
mod order;

use serde::{Deserialize, Serialize};

use crate::error::{EdsError, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub use decide::{
    decide_eds, decide_with_order, decide_with_selection, work_budget, Commit, Decision, DiscrepancyKind, NoneReason,
    TraceEvent, TraceKind, Verdict, WORK_BUDGET_CONSTANT,
};
pub use order::{Seeded, SelectionOrder, SmallestId};

/// Phase in which a vertex was dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    InitialReduction,
    Probe,
    MainLoop,
}

/// One application of the droppability rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropEvent {
    pub vertex: usize,
    /// A vertex at distance two from `vertex` with no other candidate coverer.
    pub witness: usize,
    pub stage: Stage,
}

/// Outcome of [`probe`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub anchor: usize,
    pub survivors: VertexSet,
    pub drops: Vec<DropEvent>,
}

impl ProbeResult {
    /// The probe left the anchor itself in place.
    pub fn anchor_survived(&self) -> bool {
        self.survivors.contains(self.anchor)
    }
}

/// Smallest qualifying witness for `v` against `a`, unchecked.
pub(crate) fn droppable_witness(g: &Graph, a: &VertexSet, v: usize) -> Option<usize> {
    let own = g.adj_set(v);
    g.distance_two(v).iter().find(|&c| {
        let mut outside = g.adj_set(c).difference(own);
        outside.intersect_with(a);
        outside.is_empty()
    })
}

fn check_member(a: &VertexSet, v: usize, what: &str) -> Result<()> {
    if a.contains(v) {
        Ok(())
    } else {
        Err(EdsError::usage(format!("{what} {v} is not in the candidate set")))
    }
}

fn check_universe(g: &Graph, a: &VertexSet) -> Result<()> {
    if a.capacity() == g.n() {
        Ok(())
    } else {
        Err(EdsError::usage(format!("candidate set over {} vertices, graph has {}", a.capacity(), g.n())))
    }
}

/// Returns a witness `c ∈ N²(v)` with `(N(c) \ N(v)) ∩ a = ∅`, if one exists.
/// The smallest such `c` is reported.
pub fn fact1_droppable(g: &Graph, a: &VertexSet, v: usize) -> Result<Option<usize>> {
    check_universe(g, a)?;
    check_member(a, v, "vertex")?;
    Ok(droppable_witness(g, a, v))
}

/// Applies the droppability rule under a [`SelectionOrder`] and counts every
/// droppability test performed.
pub(crate) struct Reducer<'g, O> {
    pub(crate) graph: &'g Graph,
    pub(crate) order: O,
    pub(crate) tests: u64,
}

impl<'g, O: SelectionOrder> Reducer<'g, O> {
    pub(crate) fn new(graph: &'g Graph, order: O) -> Self {
        Reducer { graph, order, tests: 0 }
    }

    /// Drops one vertex at a time, rescanning from the start of the order
    /// after each drop, until nothing in `a` is droppable.
    pub(crate) fn reduce(&mut self, a: &mut VertexSet, stage: Stage, log: &mut Vec<DropEvent>) {
        'scan: loop {
            for v in self.order.scan_order(a.to_vec()) {
                self.tests += 1;
                if let Some(witness) = droppable_witness(self.graph, a, v) {
                    a.remove(v);
                    log.push(DropEvent { vertex: v, witness, stage });
                    continue 'scan;
                }
            }
            return;
        }
    }

    pub(crate) fn probe(&mut self, a: &VertexSet, anchor: usize, stage: Stage) -> ProbeResult {
        let mut survivors = a.difference(&self.graph.ball_two_punctured(anchor));
        let mut drops = Vec::new();
        self.reduce(&mut survivors, stage, &mut drops);
        ProbeResult { anchor, survivors, drops }
    }
}

/// Reduces `a` to a fixpoint, always dropping the smallest droppable id.
pub fn reduce_to_fixpoint(g: &Graph, a: &VertexSet) -> Result<(VertexSet, Vec<DropEvent>)> {
    reduce_with(g, a, SmallestId)
}

/// As [`reduce_to_fixpoint`], with the scan order shuffled by `seed`.
pub fn reduce_to_fixpoint_seeded(g: &Graph, a: &VertexSet, seed: u64) -> Result<(VertexSet, Vec<DropEvent>)> {
    reduce_with(g, a, Seeded::new(seed))
}

fn reduce_with(g: &Graph, a: &VertexSet, order: impl SelectionOrder) -> Result<(VertexSet, Vec<DropEvent>)> {
    check_universe(g, a)?;
    let mut set = a.clone();
    let mut log = Vec::new();
    Reducer::new(g, order).reduce(&mut set, Stage::InitialReduction, &mut log);
    Ok((set, log))
}

/// Removes `N(anchor) ∪ N²(anchor)` from `a` and reduces to a fixpoint.
pub fn probe(g: &Graph, a: &VertexSet, anchor: usize) -> Result<ProbeResult> {
    check_universe(g, a)?;
    check_member(a, anchor, "anchor")?;
    Ok(Reducer::new(g, SmallestId).probe(a, anchor, Stage::Probe))
}
