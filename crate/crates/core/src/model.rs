//! Two-dimensional branching vector addition systems with states.
//!
//! A rule `(S, a, q)` consumes one configuration for every input state in `S`
//! and produces `q(a + Σ points)`, provided the result lies in ℕ². Rules with
//! no inputs are initial, rules with one input are unary, the rest branching.
//!
//! Text format, one directive per line, `#` to end of line is a comment:
//!
//! ```text
//! states p q r
//! rule p <- : 4 4
//! rule q <- p : -1 0
//! rule r <- p,q : 0 0
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::IVec2;

/// Displacements are bounded so that sums of points never approach `i64` limits.
pub const MAX_DISPLACEMENT: i64 = 1 << 40;

/// Index of a state inside its [`Bvass`]. States are numbered in name order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A state paired with a point of ℕ², written `q(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: StateId,
    pub point: IVec2,
}

impl Configuration {
    pub fn new(state: StateId, point: IVec2) -> Self {
        Configuration { state, point }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    /// Pairwise distinct, sorted.
    pub inputs: Vec<StateId>,
    pub displacement: IVec2,
    pub output: StateId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    Initial,
    Unary,
    Branching,
}

impl Rule {
    pub fn kind(&self) -> RuleKind {
        match self.inputs.len() {
            0 => RuleKind::Initial,
            1 => RuleKind::Unary,
            _ => RuleKind::Branching,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bvass {
    names: Vec<String>,
    rules: Vec<Rule>,
}

/// A unary transition `(source, displacement, target)` of an instantiated VASS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub source: StateId,
    pub displacement: IVec2,
    pub target: StateId,
}

/// The VASS obtained by instantiating every rule with a finite set of known
/// configurations for all inputs but one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstantiatedVass {
    pub state_count: usize,
    /// Sorted and deduplicated.
    pub transitions: Vec<Transition>,
    pub source_configs: BTreeSet<Configuration>,
}

impl Bvass {
    /// Builds a system from state names and rules given by name.
    ///
    /// States are the union of `states` and every name used in `rules`.
    pub fn from_names<S: AsRef<str>>(
        states: &[S],
        rules: &[(Vec<S>, (i64, i64), S)],
    ) -> Result<Bvass> {
        let mut names: BTreeSet<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        for (inputs, _, out) in rules {
            names.extend(inputs.iter().map(|s| s.as_ref().to_string()));
            names.insert(out.as_ref().to_string());
        }
        let names: Vec<String> = names.into_iter().collect();
        let lookup = |n: &str| StateId(names.binary_search_by(|x| x.as_str().cmp(n)).unwrap() as u32);
        let mut built = Vec::with_capacity(rules.len());
        for (i, (inputs, (dx, dy), out)) in rules.iter().enumerate() {
            let mut ids: Vec<StateId> = inputs.iter().map(|s| lookup(s.as_ref())).collect();
            ids.sort();
            if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateInput {
                    line: i + 1,
                    state: names[w[0].index()].clone(),
                });
            }
            built.push(Rule {
                inputs: ids,
                displacement: IVec2::new(*dx, *dy),
                output: lookup(out.as_ref()),
            });
        }
        let b = Bvass { names, rules: built };
        if b.names.is_empty() {
            return Err(Error::Syntax {
                line: 1,
                column: 1,
                message: "a system needs at least one state".into(),
            });
        }
        Ok(b)
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.names.len() as u32).map(StateId)
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s.index()]
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.names
            .binary_search_by(|x| x.as_str().cmp(name))
            .ok()
            .map(|i| StateId(i as u32))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// True iff no rule is branching.
    pub fn is_vass(&self) -> bool {
        self.rules.iter().all(|r| r.inputs.len() <= 1)
    }

    /// `|Q| · max(0, max over rules and coordinates of −a(i))`.
    pub fn iteration_constant(&self) -> u64 {
        let worst = self
            .rules
            .iter()
            .flat_map(|r| [-r.displacement.x, -r.displacement.y])
            .max()
            .unwrap_or(0)
            .max(0);
        self.names.len() as u64 * worst as u64
    }

    /// The initial configurations `{ q(a) | (∅, a, q) ∈ Δ, a ≥ 0 }`.
    pub fn initial_configs(&self) -> BTreeSet<Configuration> {
        self.post_step(&BTreeSet::new())
    }

    /// One application of every rule to `configs`.
    pub fn post_step(&self, configs: &BTreeSet<Configuration>) -> BTreeSet<Configuration> {
        let by_state = group_points(self.state_count(), configs.iter());
        let mut out = BTreeSet::new();
        for rule in &self.rules {
            let groups: Vec<&[IVec2]> = rule
                .inputs
                .iter()
                .map(|s| by_state[s.index()].as_slice())
                .collect();
            for_each_sum(&groups, rule.displacement, &mut |y| {
                if y.is_nonneg() {
                    out.insert(Configuration::new(rule.output, y));
                }
            });
        }
        out
    }

    /// Syntactic instantiation with the finite configuration set `f`.
    pub fn instantiate(&self, f: &BTreeSet<Configuration>) -> InstantiatedVass {
        let by_state = group_points(self.state_count(), f.iter());
        let mut transitions = BTreeSet::new();
        for rule in &self.rules {
            for (k, &p) in rule.inputs.iter().enumerate() {
                let groups: Vec<&[IVec2]> = rule
                    .inputs
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, s)| by_state[s.index()].as_slice())
                    .collect();
                for_each_sum(&groups, rule.displacement, &mut |a| {
                    transitions.insert(Transition {
                        source: p,
                        displacement: a,
                        target: rule.output,
                    });
                });
            }
        }
        InstantiatedVass {
            state_count: self.state_count(),
            transitions: transitions.into_iter().collect(),
            source_configs: f.clone(),
        }
    }
}

fn group_points<'a>(
    n: usize,
    configs: impl Iterator<Item = &'a Configuration>,
) -> Vec<Vec<IVec2>> {
    let mut by_state = vec![Vec::new(); n];
    for c in configs {
        by_state[c.state.index()].push(c.point);
    }
    by_state
}

/// Calls `f(base + Σ choice)` for every way of picking one point from each group.
pub(crate) fn for_each_sum(groups: &[&[IVec2]], base: IVec2, f: &mut impl FnMut(IVec2)) {
    match groups.split_first() {
        None => f(base),
        Some((head, rest)) => {
            for &p in *head {
                for_each_sum(rest, base + p, f);
            }
        }
    }
}

impl fmt::Display for Bvass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "states")?;
        for n in &self.names {
            write!(f, " {n}")?;
        }
        writeln!(f)?;
        for r in &self.rules {
            let inputs: Vec<&str> = r.inputs.iter().map(|&s| self.name(s)).collect();
            write!(f, "rule {} <- ", self.name(r.output))?;
            if !inputs.is_empty() {
                write!(f, "{} ", inputs.join(","))?;
            }
            writeln!(f, ": {} {}", r.displacement.x, r.displacement.y)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.text[..self.pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{token}`")))
        }
    }

    fn peek_name(&mut self) -> bool {
        self.skip_ws();
        self.text[self.pos..]
            .chars()
            .next()
            .is_some_and(is_name_char)
    }

    fn name(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !is_name_char(c)).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a state name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let sign = usize::from(rest.starts_with(['+', '-']));
        let digits = rest[sign..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len() - sign);
        if digits == 0 {
            return Err(self.err("expected an integer"));
        }
        let token = &rest[..sign + digits];
        let value = token
            .trim_start_matches('+')
            .parse::<i64>()
            .ok()
            .filter(|v| v.abs() <= MAX_DISPLACEMENT)
            .ok_or_else(|| self.err(format!("integer `{token}` out of range")))?;
        self.pos += token.len();
        Ok(value)
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Parses the line-based text format.
pub fn parse_bvass(text: &str) -> Result<Bvass> {
    let mut declared: Vec<&str> = Vec::new();
    let mut rules: Vec<(Vec<&str>, (i64, i64), &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor { line, text: content, pos: 0 };
        if cur.at_end() {
            continue;
        }
        let directive = cur.name()?;
        match directive {
            "states" => {
                while !cur.at_end() {
                    declared.push(cur.name()?);
                }
            }
            "rule" => {
                let out = cur.name()?;
                cur.expect("<-")?;
                let mut inputs = Vec::new();
                if cur.peek_name() {
                    inputs.push(cur.name()?);
                    while cur.eat(",") {
                        inputs.push(cur.name()?);
                    }
                }
                cur.expect(":")?;
                let dx = cur.integer()?;
                let dy = cur.integer()?;
                if !cur.at_end() {
                    return Err(cur.err("unexpected trailing input"));
                }
                let mut seen = BTreeSet::new();
                if let Some(dup) = inputs.iter().find(|s| !seen.insert(**s)) {
                    return Err(Error::DuplicateInput {
                        line,
                        state: dup.to_string(),
                    });
                }
                rules.push((inputs, (dx, dy), out));
            }
            other => {
                return Err(Error::UnknownDirective {
                    line,
                    directive: other.to_string(),
                })
            }
        }
    }
    if declared.is_empty() && rules.is_empty() {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "no states declared and no rules".into(),
        });
    }
    Bvass::from_names(&declared, &rules)
}

impl InstantiatedVass {
    /// Outgoing transitions grouped by source state.
    pub fn adjacency(&self) -> Vec<BTreeMap<StateId, Vec<IVec2>>> {
        let mut adj = vec![BTreeMap::<StateId, Vec<IVec2>>::new(); self.state_count];
        for t in &self.transitions {
            adj[t.source.index()]
                .entry(t.target)
                .or_default()
                .push(t.displacement);
        }
        adj
    }
}
