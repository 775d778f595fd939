//! Pass, fixpoint and pipeline drivers.
//!
//! A pass matches once against a snapshot and then applies a
//! footprint-disjoint subset of the matches, so no application can delete
//! or re-wire a node that another application in the same pass relies on.

use std::time::Instant;

use crate::diagram::{to_graph_like, Diagram, NodeId};
use crate::rules::{self, find_matches, Match, RewriteError, RuleId};

pub const DEFAULT_MAX_PASSES: usize = 10_000;
pub const DEFAULT_MAX_ROUNDS: usize = 10_000;

pub const DEFAULT_SCHEDULE: [RuleId; 7] = [
    RuleId::SpiderFusion,
    RuleId::IdentityRemoval,
    RuleId::LocalComplementation,
    RuleId::Pivot,
    RuleId::PivotGadget,
    RuleId::PivotBoundary,
    RuleId::GadgetFusion,
];

/// How concurrent applications of a rule may interact.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RuleClass {
    /// Applications never touch each other's nodes.
    Independent,
    /// Applications may change properties of nodes in other matches.
    WeaklyIndependent,
    /// Applications may delete structure other matches need.
    Dependent,
}

pub fn classify(rule: RuleId) -> RuleClass {
    match rule {
        RuleId::GadgetFusion => RuleClass::Independent,
        RuleId::LocalComplementation | RuleId::Pivot | RuleId::PivotGadget => {
            RuleClass::WeaklyIndependent
        }
        RuleId::IdentityRemoval
        | RuleId::SpiderFusion
        | RuleId::Bialgebra
        | RuleId::PivotBoundary => RuleClass::Dependent,
    }
}

/// Greedy left fold over `candidates` in order: a match is kept iff none of
/// its footprint is already marked, and keeping it marks the whole
/// footprint.
pub fn select_disjoint(candidates: Vec<Match>) -> Vec<Match> {
    let bound = candidates
        .iter()
        .flat_map(|m| m.footprint.last())
        .map(|v| v.0 + 1)
        .max()
        .unwrap_or(0);
    let mut marked = vec![false; bound];
    candidates
        .into_iter()
        .filter(|m| {
            if m.footprint.iter().any(|v| marked[v.0]) {
                return false;
            }
            for v in &m.footprint {
                marked[v.0] = true;
            }
            true
        })
        .collect()
}

/// True iff no node appears in two footprints.
pub fn pairwise_disjoint(matches: &[Match]) -> bool {
    let mut seen = std::collections::HashSet::new();
    matches
        .iter()
        .flat_map(|m| m.footprint.iter())
        .all(|v: &NodeId| seen.insert(*v))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PassReport {
    pub rule: RuleId,
    pub candidates: usize,
    pub applied: usize,
    /// Selected matches skipped because they no longer held.
    pub stale: usize,
    pub nodes_before: usize,
    pub nodes_after: usize,
    pub duration_s: f64,
    /// Set on the last report of a run that hit its pass or round limit
    /// with rewrites still available.
    pub budget_exhausted: bool,
}

impl PassReport {
    pub const CSV_HEADER: &'static str = "rule,candidates,applied,nodes_before,nodes_after,duration_s";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.9}",
            self.rule, self.candidates, self.applied, self.nodes_before, self.nodes_after, self.duration_s
        )
    }
}

/// One pass of `rule`. Returns the report and the matches that were applied.
pub fn run_pass_collect(d: &mut Diagram, rule: RuleId) -> Result<(PassReport, Vec<Match>), RewriteError> {
    let start = Instant::now();
    let nodes_before = d.num_nodes();
    let matches = find_matches(rule, d)?;
    let candidates = matches.len();
    let selected = match classify(rule) {
        RuleClass::Independent => matches,
        RuleClass::WeaklyIndependent | RuleClass::Dependent => {
            let chosen = select_disjoint(matches);
            debug_assert!(pairwise_disjoint(&chosen));
            chosen
        }
    };
    let mut applied = Vec::with_capacity(selected.len());
    let mut stale = 0;
    for m in selected {
        match rules::apply(d, &m) {
            Ok(()) => applied.push(m),
            Err(RewriteError::StaleMatch(_)) => stale += 1,
            Err(e) => return Err(e),
        }
    }
    let report = PassReport {
        rule,
        candidates,
        applied: applied.len(),
        stale,
        nodes_before,
        nodes_after: d.num_nodes(),
        duration_s: start.elapsed().as_secs_f64(),
        budget_exhausted: false,
    };
    Ok((report, applied))
}

pub fn run_pass(d: &mut Diagram, rule: RuleId) -> Result<PassReport, RewriteError> {
    run_pass_collect(d, rule).map(|(r, _)| r)
}

/// Repeats passes until one applies nothing or `max_passes` is reached.
pub fn run_to_fixpoint(
    d: &mut Diagram,
    rule: RuleId,
    max_passes: usize,
) -> Result<Vec<PassReport>, RewriteError> {
    let mut reports = Vec::new();
    for _ in 0..max_passes.max(1) {
        let r = run_pass(d, rule)?;
        let done = r.applied == 0;
        reports.push(r);
        if done {
            return Ok(reports);
        }
    }
    if !find_matches(rule, d)?.is_empty() {
        reports.last_mut().expect("at least one pass").budget_exhausted = true;
    }
    Ok(reports)
}

/// Normalizes to graph-like form once if any rule of `schedule` needs it,
/// then runs every rule to fixpoint, round after round, until a round
/// applies nothing.
///
/// Identity removal between two Hadamard edges leaves a simple edge
/// between spiders until the next fusion pass. Rules that need graph-like
/// input are skipped for the rest of such a round.
pub fn run_pipeline(
    d: &mut Diagram,
    schedule: &[RuleId],
    max_rounds: usize,
) -> Result<Vec<PassReport>, RewriteError> {
    if schedule.iter().any(|r| r.needs_graph_like()) {
        *d = to_graph_like(d);
    }
    let mut reports = Vec::new();
    for _ in 0..max_rounds.max(1) {
        let mut applied = 0;
        for &rule in schedule {
            if rule.needs_graph_like() && !crate::diagram::has_graph_like_interior(d) {
                continue;
            }
            let rs = run_to_fixpoint(d, rule, DEFAULT_MAX_PASSES)?;
            applied += rs.iter().map(|r| r.applied).sum::<usize>();
            reports.extend(rs);
        }
        if applied == 0 {
            return Ok(reports);
        }
    }
    if let Some(last) = reports.last_mut() {
        last.budget_exhausted = true;
    }
    Ok(reports)
}

/// True iff any report in a run was cut short by its budget.
pub fn budget_exhausted(reports: &[PassReport]) -> bool {
    reports.iter().any(|r| r.budget_exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::Binding;

    fn m(fp: &[usize]) -> Match {
        Match {
            rule: RuleId::IdentityRemoval,
            binding: Binding::Fusion {
                keep: NodeId(fp[0]),
                absorb: NodeId(fp[0]),
            },
            footprint: fp.iter().map(|&i| NodeId(i)).collect(),
        }
    }

    #[test]
    fn classes() {
        assert_eq!(classify(RuleId::GadgetFusion), RuleClass::Independent);
        assert_eq!(classify(RuleId::SpiderFusion), RuleClass::Dependent);
        assert_eq!(classify(RuleId::Pivot), RuleClass::WeaklyIndependent);
        assert_eq!(classify(RuleId::PivotBoundary), RuleClass::Dependent);
    }

    #[test]
    fn greedy_fold_keeps_first_of_overlap() {
        let chosen = select_disjoint(vec![m(&[1, 2, 3]), m(&[2, 3, 4]), m(&[5, 6])]);
        assert_eq!(chosen, vec![m(&[1, 2, 3]), m(&[5, 6])]);
        let all = vec![m(&[0]), m(&[1]), m(&[2])];
        assert_eq!(select_disjoint(all.clone()), all);
        assert!(select_disjoint(vec![]).is_empty());
    }

    #[test]
    fn empty_diagram_fixpoint() {
        let mut d = Diagram::new();
        let rs = run_to_fixpoint(&mut d, RuleId::IdentityRemoval, 5).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].applied, 0);
    }

    #[test]
    fn csv_row_shape() {
        let r = PassReport {
            rule: RuleId::Pivot,
            candidates: 3,
            applied: 2,
            stale: 0,
            nodes_before: 10,
            nodes_after: 6,
            duration_s: 0.5,
            budget_exhausted: false,
        };
        assert_eq!(r.csv_row(), "pivot,3,2,10,6,0.500000000");
    }
}
