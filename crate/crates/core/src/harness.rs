//! Record types and per-graph drivers behind the `compare`, `audit-facts`,
//! `decide` and `oracle` commands.
//!
//! The sound steps of the reduction (the droppability rule and empty probes)
//! are checked against the full EDS enumeration and any failure is a bug.
//! The unproven steps (non-empty probes implying membership, order
//! independence, the final verdict) are recorded as findings.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::eds::verify_eds;
use crate::error::Result;
use crate::format::encode_graph6;
use crate::graph::Graph;
use crate::oracle::OracleReport;
use crate::reduction::{
    droppable_witness, probe, reduce_to_fixpoint, reduce_to_fixpoint_seeded, work_budget, Decision, DropEvent,
    NoneReason, TraceEvent, Verdict,
};
use crate::registry::{EdsDecider, EdsOracle};
use crate::vertex_set::VertexSet;

/// Verdict of the reduction as written to reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperVerdict {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Verdict> for PaperVerdict {
    fn from(v: &Verdict) -> Self {
        let reason = match v {
            Verdict::Found(_) => None,
            Verdict::NoneExists(r) => Some(kebab(r)),
            Verdict::Discrepancy { why, .. } => Some(kebab(why)),
        };
        PaperVerdict { kind: v.kind().to_string(), reason }
    }
}

fn kebab<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|j| j.as_str().map(str::to_string)).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimFlag {
    /// A committed probe survived although its anchor is in no EDS of the
    /// probed set, while such EDS exist.
    Prop24ConverseViolation,
    /// Seeded drop orders reached a different initial fixpoint.
    ConfluenceViolation,
    CandidatesExhausted,
}

/// One row of the `compare` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareRecord {
    pub graph6: String,
    pub n: usize,
    pub r: usize,
    pub paper_verdict: PaperVerdict,
    pub oracle_has_eds: bool,
    pub agree: bool,
    /// `None` unless the reduction produced a final set.
    pub paper_certificate_valid: Option<bool>,
    pub claim_audit_flags: Vec<ClaimFlag>,
    pub work_counter: u64,
    pub elapsed_paper: f64,
    pub elapsed_oracle: f64,
    pub genspec: Option<String>,
}

/// Emitted instead of a [`CompareRecord`] for inputs outside the procedure's scope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkipRecord {
    pub graph6: String,
    pub n: usize,
    pub skipped: String,
    pub genspec: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CompareRow {
    Record(CompareRecord),
    Skip(SkipRecord),
}

#[derive(Debug, Clone)]
pub struct CompareOptions {
    /// Seeds for the order-independence check of the initial reduction.
    pub confluence_seeds: Vec<u64>,
    /// Zero every timing field so output is byte-stable.
    pub deterministic: bool,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { confluence_seeds: (1..=5).collect(), deterministic: false }
    }
}

pub struct CompareOutcome {
    pub row: CompareRow,
    /// Present whenever the reduction ran.
    pub decision: Option<Decision>,
}

impl CompareOutcome {
    /// Disagreement or discrepancy rows, which warrant a saved counterexample.
    pub fn is_counterexample(&self) -> bool {
        match &self.row {
            CompareRow::Record(r) => !r.agree || r.paper_verdict.kind == "Discrepancy",
            CompareRow::Skip(_) => false,
        }
    }
}

fn millis(d: Duration, deterministic: bool) -> f64 {
    if deterministic {
        0.0
    } else {
        d.as_secs_f64() * 1e3
    }
}

/// Reason a graph is outside the reduction's scope, if any.
pub fn scope_violation(g: &Graph) -> Result<Option<&'static str>> {
    if g.n() == 0 {
        return Ok(Some("empty"));
    }
    if g.is_regular()?.is_none() {
        return Ok(Some("not-regular"));
    }
    if !g.is_connected()? {
        return Ok(Some("disconnected"));
    }
    Ok(None)
}

/// Runs the decider and the oracle on one graph.
pub fn compare_graph(
    g: &Graph,
    genspec: Option<String>,
    decider: &dyn EdsDecider,
    oracle: &dyn EdsOracle,
    opts: &CompareOptions,
) -> Result<CompareOutcome> {
    let graph6 = encode_graph6(g);
    if let Some(why) = scope_violation(g)? {
        let row = CompareRow::Skip(SkipRecord { graph6, n: g.n(), skipped: why.into(), genspec });
        return Ok(CompareOutcome { row, decision: None });
    }
    let r = g.degree(0);

    let t = Instant::now();
    let decision = decider.decide(g)?;
    let elapsed_paper = t.elapsed();

    let t = Instant::now();
    let report = oracle.solve(g, true)?;
    let elapsed_oracle = t.elapsed();

    let mut flags = Vec::new();
    if converse_violations(&decision, &report.solutions).next().is_some() {
        flags.push(ClaimFlag::Prop24ConverseViolation);
    }
    let all = g.vertices();
    if opts.confluence_seeds.iter().any(|&s| {
        reduce_to_fixpoint_seeded(g, &all, s).map(|(fix, _)| fix != decision.initial_fixpoint).unwrap_or(true)
    }) {
        flags.push(ClaimFlag::ConfluenceViolation);
    }
    if decision.verdict == Verdict::NoneExists(NoneReason::CandidatesExhausted) {
        flags.push(ClaimFlag::CandidatesExhausted);
    }

    let (discrepancy, certificate_valid) = match &decision.verdict {
        Verdict::Found(c) => (false, Some(verify_eds(g, c.set())?)),
        Verdict::Discrepancy { .. } => (true, Some(false)),
        Verdict::NoneExists(_) => (false, None),
    };
    let record = CompareRecord {
        graph6,
        n: g.n(),
        r,
        paper_verdict: PaperVerdict::from(&decision.verdict),
        oracle_has_eds: report.has_eds,
        agree: decision.verdict.is_found() == report.has_eds && !discrepancy,
        paper_certificate_valid: certificate_valid,
        claim_audit_flags: flags,
        work_counter: decision.work_counter,
        elapsed_paper: millis(elapsed_paper, opts.deterministic),
        elapsed_oracle: millis(elapsed_oracle, opts.deterministic),
        genspec,
    };
    Ok(CompareOutcome { row: CompareRow::Record(record), decision: Some(decision) })
}

/// Commits whose anchor lies in no EDS of the probed set although that set
/// contains some EDS.
fn converse_violations<'a>(decision: &'a Decision, solutions: &'a [VertexSet]) -> impl Iterator<Item = usize> + 'a {
    decision.commits.iter().filter_map(move |c| {
        let mut inside = solutions.iter().filter(|s| s.is_subset(&c.input)).peekable();
        let any = inside.peek().is_some();
        (any && !inside.any(|s| s.contains(c.anchor))).then_some(c.anchor)
    })
}

/// Totals printed after a `compare` run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CompareSummary {
    pub total: usize,
    pub compared: usize,
    pub skipped: usize,
    pub agreed: usize,
    pub disagreements: usize,
    pub discrepancies: usize,
    pub agreement_rate: f64,
    pub max_work_counter: u64,
    pub work_budget_constant: u64,
    pub work_budget_violations: usize,
    pub prop24_converse_violations: usize,
    pub confluence_violations: usize,
    pub candidates_exhausted: usize,
}

impl CompareSummary {
    pub fn add(&mut self, row: &CompareRow) {
        self.total += 1;
        let r = match row {
            CompareRow::Skip(_) => {
                self.skipped += 1;
                return;
            }
            CompareRow::Record(r) => r,
        };
        self.compared += 1;
        if r.agree {
            self.agreed += 1;
        } else {
            self.disagreements += 1;
        }
        if r.paper_verdict.kind == "Discrepancy" {
            self.discrepancies += 1;
        }
        self.max_work_counter = self.max_work_counter.max(r.work_counter);
        if r.work_counter > work_budget(r.n) {
            self.work_budget_violations += 1;
        }
        for f in &r.claim_audit_flags {
            match f {
                ClaimFlag::Prop24ConverseViolation => self.prop24_converse_violations += 1,
                ClaimFlag::ConfluenceViolation => self.confluence_violations += 1,
                ClaimFlag::CandidatesExhausted => self.candidates_exhausted += 1,
            }
        }
        self.work_budget_constant = crate::reduction::WORK_BUDGET_CONSTANT;
        self.agreement_rate = self.agreed as f64 / self.compared as f64;
    }
}

/// JSON printed by `decide` for one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideReport {
    pub graph6: String,
    pub n: usize,
    pub decider: String,
    pub verdict: PaperVerdict,
    pub certificate: Option<Vec<usize>>,
    pub trace_summary: TraceSummary,
    pub work_counter: u64,
    pub work_budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub events: usize,
    pub initial_fixpoint_size: usize,
    pub drops: usize,
    pub probes: usize,
    pub empty_probes: usize,
    pub commits: Vec<usize>,
    /// Final candidate set of a discrepancy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_set: Option<Vec<usize>>,
}

/// Per-graph failure row of `decide` and `oracle`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub graph6: String,
    pub n: usize,
    pub error: String,
}

pub fn decide_report(g: &Graph, decider: &dyn EdsDecider) -> Result<(DecideReport, Decision)> {
    let d = decider.decide(g)?;
    let (certificate, final_set) = match &d.verdict {
        Verdict::Found(c) => (Some(c.set().to_vec()), None),
        Verdict::Discrepancy { final_set, .. } => (None, Some(final_set.to_vec())),
        Verdict::NoneExists(_) => (None, None),
    };
    let report = DecideReport {
        graph6: encode_graph6(g),
        n: g.n(),
        decider: decider.name(),
        verdict: PaperVerdict::from(&d.verdict),
        certificate,
        trace_summary: TraceSummary {
            events: d.trace.len(),
            initial_fixpoint_size: d.initial_fixpoint.len(),
            drops: d.drop_count(),
            probes: d.probe_count(),
            empty_probes: d.empty_probe_count(),
            commits: d.commits.iter().map(|c| c.anchor).collect(),
            final_set,
        },
        work_counter: d.work_counter,
        work_budget: work_budget(g.n()),
    };
    Ok((report, d))
}

/// JSON printed by `oracle` for one graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleRow {
    pub graph6: String,
    pub n: usize,
    pub oracle: String,
    #[serde(flatten)]
    pub report: OracleReport,
}

pub fn oracle_row(g: &Graph, oracle: &dyn EdsOracle, enumerate_all: bool, deterministic: bool) -> Result<OracleRow> {
    let mut report = oracle.solve(g, enumerate_all)?;
    if deterministic {
        report.elapsed = Duration::ZERO;
    }
    Ok(OracleRow { graph6: encode_graph6(g), n: g.n(), oracle: oracle.name().to_string(), report })
}

/// Full ordered event log saved next to counterexamples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub graph6: String,
    pub decider: String,
    pub verdict: PaperVerdict,
    pub events: Vec<TraceEvent>,
}

impl TraceDocument {
    pub fn new(g: &Graph, decider: &dyn EdsDecider, d: &Decision) -> Self {
        TraceDocument {
            graph6: encode_graph6(g),
            decider: decider.name(),
            verdict: PaperVerdict::from(&d.verdict),
            events: d.trace.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterViolation {
    /// Candidate set the rule was applied to.
    pub candidates: Vec<usize>,
    pub vertex: usize,
    pub witness: usize,
    pub solution: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeViolation {
    pub anchor: usize,
    pub solution: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseViolation {
    pub graph6: String,
    pub anchor: usize,
    pub survivors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfluenceViolation {
    pub seed: u64,
    pub fixpoint: Vec<usize>,
}

/// One row of the `audit-facts` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditRow {
    pub graph6: String,
    pub n: usize,
    pub r: Option<usize>,
    pub genspec: Option<String>,
    pub eds_count: usize,
    pub initial_fixpoint: Vec<usize>,
    pub sets_checked: usize,
    pub probes_checked: usize,
    pub filter_soundness_violations: Vec<FilterViolation>,
    pub probe_soundness_violations: Vec<ProbeViolation>,
    pub drop_log_inconsistencies: usize,
    pub prop24_converse_violations: Vec<ConverseViolation>,
    pub confluence_violations: Vec<ConfluenceViolation>,
    /// Non-empty probes whose anchor was itself dropped.
    pub anchor_dropped_probes: usize,
    /// Verdict of the smallest-id reduction, for connected regular inputs.
    pub decide_verdict: Option<PaperVerdict>,
}

impl AuditRow {
    pub fn soundness_violations(&self) -> usize {
        self.filter_soundness_violations.len() + self.probe_soundness_violations.len() + self.drop_log_inconsistencies
    }
}

struct FilterAudit<'a> {
    g: &'a Graph,
    solutions: &'a [VertexSet],
    violations: Vec<FilterViolation>,
    inconsistencies: usize,
    sets_checked: usize,
}

impl FilterAudit<'_> {
    /// No vertex of an EDS inside `a` may be droppable from `a`.
    fn check(&mut self, a: &VertexSet) {
        self.sets_checked += 1;
        for s in self.solutions.iter().filter(|s| s.is_subset(a)) {
            for v in s {
                if let Some(witness) = droppable_witness(self.g, a, v) {
                    self.violations.push(FilterViolation { candidates: a.to_vec(), vertex: v, witness, solution: s.to_vec() });
                }
            }
        }
    }

    /// Replays a drop log from `start`, re-verifying each drop and checking
    /// every intermediate set. Returns the final set.
    fn replay(&mut self, start: &VertexSet, drops: &[DropEvent]) -> VertexSet {
        let mut a = start.clone();
        self.check(&a);
        for d in drops {
            let c = d.witness;
            let valid = a.contains(d.vertex)
                && self.g.distance_two(d.vertex).contains(c)
                && !self.g.adj_set(c).difference(self.g.adj_set(d.vertex)).intersects(&a);
            if !valid {
                self.inconsistencies += 1;
            }
            a.remove(d.vertex);
            self.check(&a);
        }
        a
    }
}

/// Checks the sound steps of the reduction against the full EDS list and
/// records the unproven ones as findings.
pub fn audit_graph(g: &Graph, genspec: Option<String>, oracle: &dyn EdsOracle, seeds: &[u64]) -> Result<AuditRow> {
    let graph6 = encode_graph6(g);
    let solutions = oracle.solve(g, true)?.solutions;
    let all = g.vertices();
    let mut filter = FilterAudit { g, solutions: &solutions, violations: vec![], inconsistencies: 0, sets_checked: 0 };

    let (fixpoint, drops) = reduce_to_fixpoint(g, &all)?;
    let replayed = filter.replay(&all, &drops);
    if replayed != fixpoint {
        filter.inconsistencies += 1;
    }

    let mut confluence_violations = Vec::new();
    for &seed in seeds {
        let (other, drops) = reduce_to_fixpoint_seeded(g, &all, seed)?;
        filter.replay(&all, &drops);
        if other != fixpoint {
            confluence_violations.push(ConfluenceViolation { seed, fixpoint: other.to_vec() });
        }
    }

    let inside: Vec<&VertexSet> = solutions.iter().filter(|s| s.is_subset(&fixpoint)).collect();
    let mut probe_violations = Vec::new();
    let mut converse = Vec::new();
    let mut anchor_dropped = 0;
    let mut probes_checked = 0;
    for anchor in &fixpoint {
        let result = probe(g, &fixpoint, anchor)?;
        probes_checked += 1;
        let start = fixpoint.difference(&g.ball_two_punctured(anchor));
        if filter.replay(&start, &result.drops) != result.survivors {
            filter.inconsistencies += 1;
        }
        let containing = inside.iter().find(|s| s.contains(anchor));
        if result.survivors.is_empty() {
            if let Some(s) = containing {
                probe_violations.push(ProbeViolation { anchor, solution: s.to_vec() });
            }
        } else {
            if !result.anchor_survived() {
                anchor_dropped += 1;
            }
            if !inside.is_empty() && containing.is_none() {
                converse.push(ConverseViolation { graph6: graph6.clone(), anchor, survivors: result.survivors.to_vec() });
            }
        }
    }

    let decide_verdict = match scope_violation(g)? {
        None => Some(PaperVerdict::from(&crate::reduction::decide_eds(g)?.verdict)),
        Some(_) => None,
    };

    Ok(AuditRow {
        graph6,
        n: g.n(),
        r: g.is_regular()?,
        genspec,
        eds_count: solutions.len(),
        initial_fixpoint: fixpoint.to_vec(),
        sets_checked: filter.sets_checked,
        probes_checked,
        filter_soundness_violations: filter.violations,
        probe_soundness_violations: probe_violations,
        drop_log_inconsistencies: filter.inconsistencies,
        prop24_converse_violations: converse,
        confluence_violations,
        anchor_dropped_probes: anchor_dropped,
        decide_verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, hypercube, petersen, random_regular};
    use crate::reduction::DiscrepancyKind;
    use crate::registry::{NaiveOracle, Registry};

    fn record(o: &CompareOutcome) -> &CompareRecord {
        match &o.row {
            CompareRow::Record(r) => r,
            CompareRow::Skip(s) => panic!("unexpected skip {s:?}"),
        }
    }

    #[test]
    fn compare_cycles() {
        let reg = Registry::default();
        let dec = reg.decider("smallest-id").unwrap();
        let ora = reg.oracle("exact").unwrap();
        for n in 3..=15 {
            let out = compare_graph(&cycle(n).unwrap(), None, dec.as_ref(), ora.as_ref(), &CompareOptions::default()).unwrap();
            let r = record(&out);
            assert_eq!(r.oracle_has_eds, n % 3 == 0);
            assert!(r.agree, "C_{n}: {r:?}");
            assert_eq!(r.paper_certificate_valid, (n % 3 == 0).then_some(true));
            let json = serde_json::to_string(&out.row).unwrap();
            assert_eq!(serde_json::from_str::<CompareRow>(&json).unwrap(), out.row);
        }
    }

    #[test]
    fn skips_out_of_scope_graphs() {
        let reg = Registry::default();
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let out = compare_graph(&p3, None, reg.decider("smallest-id").unwrap().as_ref(), &NaiveOracle, &CompareOptions::default())
            .unwrap();
        assert!(matches!(&out.row, CompareRow::Skip(s) if s.skipped == "not-regular"));
        let json = serde_json::to_string(&out.row).unwrap();
        assert!(matches!(serde_json::from_str::<CompareRow>(&json).unwrap(), CompareRow::Skip(_)));
        assert!(!out.is_counterexample());
    }

    /// Pretends to have reached a final set that is not an EDS.
    struct BrokenDecider;

    impl EdsDecider for BrokenDecider {
        fn name(&self) -> String {
            "broken".into()
        }

        fn decide(&self, g: &Graph) -> Result<Decision> {
            let mut d = crate::reduction::decide_eds(g)?;
            d.verdict = Verdict::Discrepancy { final_set: g.vertices(), why: DiscrepancyKind::FinalSetNotEds };
            Ok(d)
        }
    }

    #[test]
    fn discrepancy_rows_are_counterexamples() {
        let g = cycle(6).unwrap();
        let out = compare_graph(&g, None, &BrokenDecider, &NaiveOracle, &CompareOptions::default()).unwrap();
        let r = record(&out);
        assert!(!r.agree);
        assert_eq!(r.paper_certificate_valid, Some(false));
        assert_eq!(r.paper_verdict, PaperVerdict { kind: "Discrepancy".into(), reason: Some("final-set-not-eds".into()) });
        assert!(out.is_counterexample());
        let mut summary = CompareSummary::default();
        summary.add(&out.row);
        assert_eq!((summary.discrepancies, summary.disagreements), (1, 1));
    }

    #[test]
    fn audit_is_sound_on_small_corpus() {
        let seeds: Vec<u64> = (1..=20).collect();
        let mut graphs: Vec<Graph> = (3..=12).map(|n| cycle(n).unwrap()).collect();
        graphs.push(petersen(5, 2).unwrap());
        graphs.push(hypercube(3).unwrap());
        graphs.extend((0..20).map(|s| random_regular(12, 3, s).unwrap()));
        for g in &graphs {
            let row = audit_graph(g, None, &NaiveOracle, &seeds).unwrap();
            assert_eq!(row.soundness_violations(), 0, "{row:?}");
            assert!(row.probes_checked > 0 || row.initial_fixpoint.is_empty());
        }
        let c6 = audit_graph(&cycle(6).unwrap(), None, &NaiveOracle, &seeds).unwrap();
        assert!(c6.confluence_violations.is_empty());
        assert_eq!(c6.initial_fixpoint, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(c6.eds_count, 3);
    }

    #[test]
    fn decide_report_shape() {
        let reg = Registry::default();
        let (rep, _) = decide_report(&cycle(6).unwrap(), reg.decider("smallest-id").unwrap().as_ref()).unwrap();
        assert_eq!(rep.certificate, Some(vec![0, 3]));
        assert_eq!(rep.trace_summary.commits, vec![0, 3]);
        assert_eq!(rep.verdict.kind, "Found");
        let json = serde_json::to_value(&rep).unwrap();
        assert!(json["verdict"].get("reason").is_none());
    }
}
