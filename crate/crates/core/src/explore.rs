//! Worklist exploration.
//!
//! Nodes carry labels `(a, q, z, P)` standing for the linear set `q(z + per(P))`.
//! Processing a node accelerates `P` with vectors read off elementary cycles of
//! the system instantiated by the node's ancestors, then either marks the node
//! redundant (its set is covered by an ancestor's) or combines it with other
//! processed nodes through every rule it can feed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::accel::accelerate;
use crate::error::{Error, Resource, Result};
use crate::limits::Limits;
use crate::model::{Bvass, Configuration, InstantiatedVass, StateId};
use crate::periodic::PeriodicSet;
use crate::semilinear::{assemble, SemilinearPresentation};
use crate::IVec2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WorklistOrder {
    #[default]
    Fifo,
    Lifo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExploreConfig {
    pub worklist_order: WorklistOrder,
    pub max_nodes: u64,
    /// Cap on elementary cycles per instantiation, parallel edges counted separately.
    pub max_cycles: u64,
    /// Run [`validate_exploration`] on the finished graph.
    pub validate: bool,
    /// Let any processed node certify redundancy, not only proper ancestors.
    pub cover_by_any_processed: bool,
    pub limits: Limits,
}

impl Default for ExploreConfig {
    fn default() -> Self {
        ExploreConfig {
            worklist_order: WorklistOrder::Fifo,
            max_nodes: 100_000,
            max_cycles: 10_000_000,
            validate: false,
            cover_by_any_processed: false,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeStatus {
    Waiting,
    Processed,
    Redundant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeLabel {
    pub a: IVec2,
    pub q: StateId,
    pub z: IVec2,
    pub p: PeriodicSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationNode {
    pub id: usize,
    pub label: NodeLabel,
    /// Sorted ids of the nodes this one was built from.
    pub parents: Vec<usize>,
    pub status: NodeStatus,
    pub covered_by: Option<usize>,
    /// Index of the rule that created the node.
    pub rule: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExploreStats {
    pub nodes_created: u64,
    pub accelerations: u64,
    pub cycles_enumerated: u64,
    pub redundancy_hits: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Exploration {
    pub nodes: Vec<ExplorationNode>,
    pub worklist: VecDeque<usize>,
    pub stats: ExploreStats,
}

/// Vectors available for acceleration at a node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleVectors {
    pub e: BTreeSet<IVec2>,
    pub cbar: BTreeSet<IVec2>,
    pub i: BTreeSet<IVec2>,
    pub c_const: u64,
    pub cycles: u64,
}

/// Elementary-cycle displacements keyed by the sorted set of visited states.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElementaryCycles {
    pub by_states: BTreeMap<Vec<StateId>, BTreeSet<IVec2>>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{error}{}", node.map(|n| format!(" while processing node {n}")).unwrap_or_default())]
pub struct ExploreFailure {
    pub error: Error,
    pub stats: ExploreStats,
    pub node: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ExploreOutcome {
    pub exploration: Exploration,
    pub presentation: SemilinearPresentation,
    pub stats: ExploreStats,
    /// Present when the configuration asked for validation.
    pub validation: Option<ValidationReport>,
}

/// Runs the exploration to completion.
pub fn explore(b: &Bvass, cfg: &ExploreConfig) -> Result<ExploreOutcome, ExploreFailure> {
    let mut e = Exploration::init_nodes(b);
    let fail = |e: &Exploration, error: Error, node: Option<usize>| ExploreFailure {
        error,
        stats: e.stats.clone(),
        node,
    };
    if e.nodes.len() as u64 > cfg.max_nodes {
        return Err(fail(&e, Error::limit(Resource::Nodes, cfg.max_nodes), None));
    }
    while let Some(n) = e.pop(cfg.worklist_order) {
        e.process(b, n, cfg).map_err(|err| fail(&e, err, Some(n)))?;
    }
    let presentation = assemble(&e, b, &cfg.limits).map_err(|err| fail(&e, err, None))?;
    let validation = cfg.validate.then(|| validate_exploration(&e, b, cfg));
    log::info!(
        "exploration finished: {} nodes, {} redundant, {} entries",
        e.nodes.len(),
        e.stats.redundancy_hits,
        presentation.entries.len()
    );
    Ok(ExploreOutcome {
        stats: e.stats.clone(),
        exploration: e,
        presentation,
        validation,
    })
}

impl Exploration {
    /// One waiting root per initial rule with a nonnegative displacement.
    pub fn init_nodes(b: &Bvass) -> Exploration {
        let mut e = Exploration::default();
        for (ri, rule) in b.rules().iter().enumerate() {
            if rule.inputs.is_empty() && rule.displacement.is_nonneg() {
                let label = NodeLabel {
                    a: rule.displacement,
                    q: rule.output,
                    z: rule.displacement,
                    p: PeriodicSet::empty(),
                };
                e.push_node(label, Vec::new(), ri);
            }
        }
        e
    }

    fn push_node(&mut self, label: NodeLabel, parents: Vec<usize>, rule: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(ExplorationNode {
            id,
            label,
            parents,
            status: NodeStatus::Waiting,
            covered_by: None,
            rule,
        });
        self.worklist.push_back(id);
        self.stats.nodes_created += 1;
        id
    }

    fn pop(&mut self, order: WorklistOrder) -> Option<usize> {
        match order {
            WorklistOrder::Fifo => self.worklist.pop_front(),
            WorklistOrder::Lifo => self.worklist.pop_back(),
        }
    }

    fn process(&mut self, b: &Bvass, n: usize, cfg: &ExploreConfig) -> Result<()> {
        let cv = self.compute_cycle_vectors(b, n, cfg)?;
        self.stats.cycles_enumerated += cv.cycles;
        let i: Vec<IVec2> = cv.i.into_iter().collect();
        let p = accelerate(&i, &self.nodes[n].label.p, &cfg.limits)?;
        self.stats.accelerations += 1;
        self.nodes[n].label.p = p;
        log::debug!("node {n}: {}", self.describe(b, n));
        if let Some(m) = self.is_redundant(n, cfg)? {
            let node = &mut self.nodes[n];
            node.status = NodeStatus::Redundant;
            node.covered_by = Some(m);
            self.stats.redundancy_hits += 1;
        } else {
            self.nodes[n].status = NodeStatus::Processed;
            self.expand(b, n, cfg)?;
        }
        Ok(())
    }

    fn describe(&self, b: &Bvass, n: usize) -> String {
        let l = &self.nodes[n].label;
        format!("{}{} + {}", b.name(l.q), l.z, l.p)
    }

    pub fn node(&self, id: usize) -> &ExplorationNode {
        &self.nodes[id]
    }

    /// Nodes `m` with `m →⁺ n`, sorted by id.
    pub fn proper_ancestors(&self, n: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<usize> = self.nodes[n].parents.clone();
        let mut out = Vec::new();
        while let Some(m) = stack.pop() {
            if !std::mem::replace(&mut seen[m], true) {
                out.push(m);
                stack.extend(&self.nodes[m].parents);
            }
        }
        out.sort_unstable();
        out
    }

    /// Which nodes have at least one child.
    pub fn has_children(&self) -> Vec<bool> {
        let mut out = vec![false; self.nodes.len()];
        for node in &self.nodes {
            for &m in &node.parents {
                out[m] = true;
            }
        }
        out
    }

    fn config(&self, m: usize) -> Configuration {
        let l = &self.nodes[m].label;
        Configuration::new(l.q, l.z)
    }

    /// The system instantiated with the configurations of `n`'s proper ancestors.
    pub fn ancestor_instantiation(&self, b: &Bvass, n: usize) -> InstantiatedVass {
        let f: BTreeSet<Configuration> = self
            .proper_ancestors(n)
            .into_iter()
            .map(|m| self.config(m))
            .collect();
        b.instantiate(&f)
    }

    pub fn compute_cycle_vectors(&self, b: &Bvass, n: usize, cfg: &ExploreConfig) -> Result<CycleVectors> {
        let c = b.iteration_constant() as i64;
        let high = IVec2::new(c, c);
        let anc = self.proper_ancestors(n);
        let here = &self.nodes[n].label;

        let mut cbar = BTreeSet::from([IVec2::zero()]);
        // States of nodes s →* n sitting at or above (c, c).
        let mut high_states = BTreeSet::new();
        for &s in &anc {
            let l = &self.nodes[s].label;
            if l.q == here.q {
                cbar.insert(here.z - l.z);
            }
            if l.z.dominates(&high) {
                high_states.insert(l.q);
            }
        }
        let here_high = here.z.dominates(&high);
        if here_high {
            high_states.insert(here.q);
        }

        let mut e = BTreeSet::new();
        let mut cycles = 0;
        if !high_states.is_empty() {
            let v = self.ancestor_instantiation(b, n);
            let table = elementary_cycle_displacements(&v, cfg.max_cycles)?;
            cycles = table.count;
            for (states, disps) in &table.by_states {
                let through_here = here_high && states.contains(&here.q);
                let through_high = states.iter().any(|q| high_states.contains(q));
                for &d in disps {
                    if through_here || (through_high && d.is_nonneg()) {
                        e.insert(d);
                    }
                }
            }
        }
        let i = e.union(&cbar).copied().collect();
        Ok(CycleVectors {
            e,
            cbar,
            i,
            c_const: c as u64,
            cycles,
        })
    }

    fn covers(&self, m: usize, n: usize, limits: &Limits) -> Result<bool> {
        let (lm, ln) = (&self.nodes[m].label, &self.nodes[n].label);
        if lm.q != ln.q {
            return Ok(false);
        }
        let d = ln.z - lm.z;
        Ok(d.is_nonneg() && lm.p.contains(d, limits)? && lm.p.includes(&ln.p, limits)?)
    }

    /// Least-id node certifying that `q_n(z_n + P_n)` is already covered.
    pub fn is_redundant(&self, n: usize, cfg: &ExploreConfig) -> Result<Option<usize>> {
        let candidates: Vec<usize> = if cfg.cover_by_any_processed {
            (0..self.nodes.len())
                .filter(|&m| m != n && self.nodes[m].status == NodeStatus::Processed)
                .collect()
        } else {
            self.proper_ancestors(n)
        };
        for m in candidates {
            if self.covers(m, n, &cfg.limits)? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    fn expand(&mut self, b: &Bvass, n: usize, cfg: &ExploreConfig) -> Result<Vec<usize>> {
        let qn = self.nodes[n].label.q;
        let mut by_state: Vec<Vec<usize>> = vec![Vec::new(); b.state_count()];
        for node in &self.nodes {
            if node.status == NodeStatus::Processed {
                by_state[node.label.q.index()].push(node.id);
            }
        }
        let mut created = Vec::new();
        for (ri, rule) in b.rules().iter().enumerate() {
            if !rule.inputs.contains(&qn) {
                continue;
            }
            let slots: Vec<Vec<usize>> = rule
                .inputs
                .iter()
                .map(|&s| if s == qn { vec![n] } else { by_state[s.index()].clone() })
                .collect();
            if slots.iter().any(Vec::is_empty) {
                continue;
            }
            let mut choice = vec![0usize; slots.len()];
            loop {
                let chosen: Vec<usize> = choice.iter().zip(&slots).map(|(&k, s)| s[k]).collect();
                let mut v = rule.displacement;
                let mut g = PeriodicSet::empty();
                for &m in &chosen {
                    v = v + self.nodes[m].label.z;
                    g = g.sum(&self.nodes[m].label.p);
                }
                let mut parents = chosen;
                parents.sort_unstable();
                for z in g.basis(v, &cfg.limits)? {
                    if self.nodes.len() as u64 >= cfg.max_nodes {
                        return Err(Error::limit(Resource::Nodes, cfg.max_nodes));
                    }
                    let label = NodeLabel {
                        a: rule.displacement,
                        q: rule.output,
                        z,
                        p: g.clone(),
                    };
                    created.push(self.push_node(label, parents.clone(), ri));
                }
                if !advance(&mut choice, &slots) {
                    break;
                }
            }
        }
        Ok(created)
    }
}

/// Odometer step over the cartesian product; false once exhausted.
fn advance(choice: &mut [usize], slots: &[Vec<usize>]) -> bool {
    for k in (0..choice.len()).rev() {
        choice[k] += 1;
        if choice[k] < slots[k].len() {
            return true;
        }
        choice[k] = 0;
    }
    false
}

/// Enumerates elementary cycles by their least state, keeping per visited-state
/// set the distinct displacements. Parallel transitions yield distinct cycles.
pub fn elementary_cycle_displacements(v: &InstantiatedVass, max_cycles: u64) -> Result<ElementaryCycles> {
    struct Walk<'a> {
        adj: Vec<BTreeMap<StateId, Vec<IVec2>>>,
        start: usize,
        on_path: Vec<bool>,
        path: Vec<StateId>,
        out: &'a mut ElementaryCycles,
        max: u64,
    }

    impl Walk<'_> {
        fn step(&mut self, at: usize, sums: &BTreeSet<IVec2>, mult: u64) -> Result<()> {
            let edges: Vec<(StateId, Vec<IVec2>)> =
                self.adj[at].iter().map(|(w, d)| (*w, d.clone())).collect();
            for (w, disps) in edges {
                let mult = mult.saturating_mul(disps.len() as u64);
                let next: BTreeSet<IVec2> = sums
                    .iter()
                    .flat_map(|&s| disps.iter().map(move |&d| s + d))
                    .collect();
                if w.index() == self.start {
                    self.out.count = self.out.count.saturating_add(mult);
                    if self.out.count > self.max {
                        return Err(Error::limit(Resource::Cycles, self.max));
                    }
                    let mut key = self.path.clone();
                    key.sort_unstable();
                    self.out.by_states.entry(key).or_default().extend(next);
                } else if w.index() > self.start && !self.on_path[w.index()] {
                    self.on_path[w.index()] = true;
                    self.path.push(w);
                    self.step(w.index(), &next, mult)?;
                    self.path.pop();
                    self.on_path[w.index()] = false;
                }
            }
            Ok(())
        }
    }

    let mut out = ElementaryCycles::default();
    let mut walk = Walk {
        adj: v.adjacency(),
        start: 0,
        on_path: vec![false; v.state_count],
        path: Vec::new(),
        out: &mut out,
        max: max_cycles,
    };
    for s in 0..v.state_count {
        walk.start = s;
        walk.on_path[s] = true;
        walk.path = vec![StateId(s as u32)];
        walk.step(s, &BTreeSet::from([IVec2::zero()]), 1)?;
        walk.on_path[s] = false;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    StillWaiting,
    /// Condition 1: parent states form a set matching a rule.
    ParentStates,
    /// Condition 2: `z_n ∈ a_n + Σ (z_m + P_m)`.
    Displacement,
    /// Condition 3: `P_n = accel(I_n)(Σ P_m)`.
    Acceleration,
    RedundantNotLeaf,
    CoverCertificate,
    /// A check could not be completed within the limits.
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub node: usize,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub nodes_checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-derives every node label from its parents and checks the structural conditions.
pub fn validate_exploration(e: &Exploration, b: &Bvass, cfg: &ExploreConfig) -> ValidationReport {
    let mut report = ValidationReport::default();
    let has_children = e.has_children();
    for node in &e.nodes {
        let n = node.id;
        let mut flag = |kind, detail: String| {
            report.violations.push(Violation { node: n, kind, detail });
        };
        if node.status == NodeStatus::Waiting {
            flag(ViolationKind::StillWaiting, "node was never processed".into());
            continue;
        }
        let l = &node.label;

        let mut states: Vec<StateId> = node.parents.iter().map(|&m| e.nodes[m].label.q).collect();
        states.sort_unstable();
        let distinct = states.windows(2).all(|w| w[0] != w[1]);
        let rule_exists = b
            .rules()
            .iter()
            .any(|r| r.inputs == states && r.displacement == l.a && r.output == l.q);
        if !distinct || !rule_exists {
            flag(
                ViolationKind::ParentStates,
                format!("no rule ({:?}, {}, {}) for the parent states", states, l.a, b.name(l.q)),
            );
        }

        let mut rest = l.z - l.a;
        let mut sum_p = PeriodicSet::empty();
        for &m in &node.parents {
            rest = rest - e.nodes[m].label.z;
            sum_p = sum_p.sum(&e.nodes[m].label.p);
        }
        match sum_p.contains(rest, &cfg.limits) {
            Ok(true) => {}
            Ok(false) => flag(
                ViolationKind::Displacement,
                format!("{} - a - Σz = {rest} is not in {sum_p}", l.z),
            ),
            Err(err) => flag(ViolationKind::Unchecked, err.to_string()),
        }

        let expected = e.compute_cycle_vectors(b, n, cfg).and_then(|cv| {
            let i: Vec<IVec2> = cv.i.into_iter().collect();
            let acc = accelerate(&i, &sum_p, &cfg.limits)?;
            Ok((acc.equal_sem(&l.p, &cfg.limits)?, acc))
        });
        match expected {
            Ok((true, _)) => {}
            Ok((false, acc)) => flag(
                ViolationKind::Acceleration,
                format!("stored {} but recomputed {acc}", l.p),
            ),
            Err(err) => flag(ViolationKind::Unchecked, err.to_string()),
        }

        match (node.status, node.covered_by) {
            (NodeStatus::Redundant, Some(m)) => {
                if has_children[n] {
                    flag(ViolationKind::RedundantNotLeaf, "redundant node has children".into());
                }
                let ancestor_ok = cfg.cover_by_any_processed || e.proper_ancestors(n).contains(&m);
                let processed = e.nodes[m].status == NodeStatus::Processed;
                match e.covers(m, n, &cfg.limits) {
                    Ok(true) if ancestor_ok && processed => {}
                    Ok(_) => flag(
                        ViolationKind::CoverCertificate,
                        format!("node {m} does not certify the cover"),
                    ),
                    Err(err) => flag(ViolationKind::Unchecked, err.to_string()),
                }
            }
            (NodeStatus::Redundant, None) => flag(
                ViolationKind::CoverCertificate,
                "redundant node without a covering node".into(),
            ),
            (_, Some(m)) => flag(
                ViolationKind::CoverCertificate,
                format!("non-redundant node claims cover by {m}"),
            ),
            _ => {}
        }
        report.nodes_checked += 1;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_bvass;

    fn v(x: i64, y: i64) -> IVec2 {
        IVec2::new(x, y)
    }

    fn per(gens: &[(i64, i64)]) -> PeriodicSet {
        PeriodicSet::new(gens.iter().map(|&(x, y)| v(x, y))).unwrap()
    }

    fn self_loop() -> Bvass {
        parse_bvass("rule p <- : 0 0\nrule p <- p : 1 0\n").unwrap()
    }

    fn example() -> Bvass {
        parse_bvass("rule p <- : 4 4\nrule q <- p : -1 0\nrule r <- p,q : 0 0\n").unwrap()
    }

    fn cycles_of(b: &Bvass) -> ElementaryCycles {
        elementary_cycle_displacements(&b.instantiate(&BTreeSet::new()), 1000).unwrap()
    }

    #[test]
    fn init_examples() {
        let e = Exploration::init_nodes(&example());
        assert_eq!(e.nodes.len(), 1);
        let l = &e.nodes[0].label;
        assert_eq!((l.a, l.z, l.p.clone()), (v(4, 4), v(4, 4), PeriodicSet::empty()));
        assert!(Exploration::init_nodes(&parse_bvass("rule p <- p : 1 0").unwrap()).nodes.is_empty());
        assert!(Exploration::init_nodes(&parse_bvass("rule p <- : -1 0").unwrap()).nodes.is_empty());
    }

    #[test]
    fn cycle_examples() {
        let b = parse_bvass("rule p <- p : 1 0").unwrap();
        let c = cycles_of(&b);
        assert_eq!(c.by_states[&vec![StateId(0)]], BTreeSet::from([v(1, 0)]));

        let b = parse_bvass("rule q <- p : 1 -1\nrule p <- q : 0 1").unwrap();
        let c = cycles_of(&b);
        assert_eq!(c.by_states.len(), 1);
        assert_eq!(c.by_states[&vec![StateId(0), StateId(1)]], BTreeSet::from([v(1, 0)]));

        let b = parse_bvass("rule p <- p : 1 0\nrule p <- p : 0 1").unwrap();
        let c = cycles_of(&b);
        assert_eq!(c.by_states[&vec![StateId(0)]], BTreeSet::from([v(0, 1), v(1, 0)]));
        assert_eq!(c.count, 2);
    }

    #[test]
    fn parallel_edges_multiply() {
        let b = parse_bvass("rule q <- p : 1 0\nrule q <- p : 0 1\nrule p <- q : 0 0\nrule p <- q : 5 5").unwrap();
        let c = cycles_of(&b);
        assert_eq!(c.count, 4);
        assert_eq!(c.by_states.values().next().unwrap().len(), 4);
        assert!(elementary_cycle_displacements(&b.instantiate(&BTreeSet::new()), 3).is_err());
    }

    #[test]
    fn self_loop_root_vectors() {
        let b = self_loop();
        let e = Exploration::init_nodes(&b);
        let cv = e.compute_cycle_vectors(&b, 0, &ExploreConfig::default()).unwrap();
        assert_eq!(cv.c_const, 0);
        assert_eq!(cv.e, BTreeSet::from([v(1, 0)]));
        assert_eq!(cv.cbar, BTreeSet::from([v(0, 0)]));
        assert_eq!(cv.i, BTreeSet::from([v(0, 0), v(1, 0)]));
    }

    fn two_node(root_p: PeriodicSet) -> Exploration {
        let mut e = Exploration::default();
        let root = NodeLabel { a: v(0, 0), q: StateId(0), z: v(0, 0), p: root_p };
        e.push_node(root, vec![], 0);
        e.nodes[0].status = NodeStatus::Processed;
        let child = NodeLabel { a: v(1, 0), q: StateId(0), z: v(1, 0), p: per(&[(1, 0)]) };
        e.push_node(child, vec![0], 1);
        e
    }

    #[test]
    fn redundancy_examples() {
        let cfg = ExploreConfig::default();
        assert_eq!(two_node(per(&[(1, 0)])).is_redundant(1, &cfg).unwrap(), Some(0));
        assert_eq!(two_node(per(&[(2, 0)])).is_redundant(1, &cfg).unwrap(), None);
        assert_eq!(two_node(per(&[(1, 0)])).is_redundant(0, &cfg).unwrap(), None);
    }

    #[test]
    fn self_loop_run() {
        let b = self_loop();
        let cfg = ExploreConfig { validate: true, ..Default::default() };
        let out = explore(&b, &cfg).unwrap();
        let nodes = &out.exploration.nodes;
        assert_eq!(nodes.len(), 2);
        assert_eq!(nodes[0].status, NodeStatus::Processed);
        assert_eq!(nodes[1].status, NodeStatus::Redundant);
        assert_eq!(nodes[1].covered_by, Some(0));
        assert_eq!(nodes[1].label.z, v(1, 0));
        assert_eq!(nodes[1].label.p, per(&[(1, 0)]));
        assert!(out.validation.unwrap().is_ok());
    }

    #[test]
    fn example_run() {
        let b = example();
        let out = explore(&b, &ExploreConfig { validate: true, ..Default::default() }).unwrap();
        let l = Limits::default();
        for (s, x, y) in [("p", 4, 4), ("q", 3, 4), ("r", 7, 8)] {
            assert!(out.presentation.member_config(s, v(x, y), &l).unwrap().is_some(), "{s}");
        }
        assert!(out.validation.unwrap().is_ok());
    }

    #[test]
    fn no_initial_rule() {
        let b = parse_bvass("rule p <- p : 1 0").unwrap();
        let out = explore(&b, &ExploreConfig::default()).unwrap();
        assert!(out.exploration.nodes.is_empty());
        assert!(out.presentation.entries.is_empty());
    }

    #[test]
    fn node_cap() {
        let b = example();
        let cfg = ExploreConfig { max_nodes: 1, ..Default::default() };
        let err = explore(&b, &cfg).unwrap_err();
        assert_eq!(err.error, Error::limit(Resource::Nodes, 1));
        assert_eq!(err.node, Some(0));
    }

    #[test]
    fn validation_catches_tampering() {
        let b = self_loop();
        let cfg = ExploreConfig::default();
        let out = explore(&b, &cfg).unwrap();

        let mut bad = out.exploration.clone();
        bad.nodes[0].label.z = v(0, 1);
        bad.nodes[0].label.p = per(&[(1, 0)]);
        let r = validate_exploration(&bad, &b, &cfg);
        assert!(r.violations.iter().any(|x| x.kind == ViolationKind::Displacement && x.node == 0));

        let mut bad = out.exploration.clone();
        bad.nodes[0].label.p = PeriodicSet::empty();
        let r = validate_exploration(&bad, &b, &cfg);
        assert!(r.violations.iter().any(|x| x.kind == ViolationKind::Acceleration && x.node == 0));

        let mut bad = out.exploration;
        bad.nodes[0].status = NodeStatus::Redundant;
        bad.nodes[0].covered_by = Some(1);
        let r = validate_exploration(&bad, &b, &cfg);
        assert!(r.violations.iter().any(|x| x.kind == ViolationKind::RedundantNotLeaf));
    }

    #[test]
    fn deterministic() {
        let b = example();
        let cfg = ExploreConfig::default();
        let a = explore(&b, &cfg).unwrap();
        let c = explore(&b, &cfg).unwrap();
        assert_eq!(a.exploration, c.exploration);
    }
}
