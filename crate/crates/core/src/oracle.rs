//! Brute-force semantics inside a box, used to cross-check presentations.
//!
//! [`bounded_reach`] is the least fixpoint of `C ↦ C ∪ post(C)` with every
//! configuration outside `[0, k]²` discarded, so derivations must stay in the
//! box. That makes it an underapproximation of `Reach ∩ [0, k]²`. Soundness of
//! a presentation is checked by looking for witnesses in growing boxes.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Resource, Result};
use crate::limits::Limits;
use crate::model::{Bvass, Configuration, Rule, StateId};
use crate::semilinear::SemilinearPresentation;
use crate::IVec2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxReachResult {
    pub configs: BTreeSet<Configuration>,
    pub box_size: u64,
    /// No derivation step ever produced a configuration of ℕ² outside the box,
    /// so `configs` is the whole reachability set.
    pub saturated: bool,
}

/// One bit per point of `[0, k]²`, row-major, rows padded to whole words.
#[derive(Clone)]
struct Grid {
    side: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Grid {
    fn new(side: usize) -> Grid {
        let words = side.div_ceil(64);
        Grid {
            side,
            words,
            bits: vec![0; words * side],
        }
    }

    fn row(&self, y: usize) -> &[u64] {
        &self.bits[y * self.words..(y + 1) * self.words]
    }

    fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.words + x / 64] >> (x % 64) & 1 == 1
    }

    fn set(&mut self, x: usize, y: usize) {
        self.bits[y * self.words + x / 64] |= 1 << (x % 64);
    }

    fn points(&self) -> Vec<IVec2> {
        let mut out = Vec::new();
        for y in 0..self.side {
            for (w, &word) in self.row(y).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    out.push(IVec2::new((w * 64 + b) as i64, y as i64));
                    word &= word - 1;
                }
            }
        }
        out
    }
}

/// Whether `row` has a bit at some position `≥ from`.
fn any_bits_from(row: &[u64], from: usize) -> bool {
    let (w0, b0) = (from / 64, from % 64);
    if w0 >= row.len() {
        return false;
    }
    row[w0] >> b0 != 0 || row[w0 + 1..].iter().any(|&w| w != 0)
}

/// Word `i` of `row` shifted by `dx` bit positions (towards higher x when positive).
fn shifted_word(row: &[u64], dx: i64, i: usize) -> u64 {
    let at = |j: i64| -> u64 {
        if j < 0 || j as usize >= row.len() {
            0
        } else {
            row[j as usize]
        }
    };
    let (ws, bs) = (dx.div_euclid(64), dx.rem_euclid(64) as u32);
    let i = i as i64;
    if bs == 0 {
        at(i - ws)
    } else {
        at(i - ws) << bs | at(i - ws - 1) >> (64 - bs)
    }
}

struct Search<'a> {
    b: &'a Bvass,
    k: i64,
    all: Vec<Grid>,
    old: Vec<Grid>,
    all_pts: Vec<Vec<IVec2>>,
    old_pts: Vec<Vec<IVec2>>,
    delta: Vec<Vec<IVec2>>,
    fresh: Vec<Grid>,
    saturated: bool,
}

impl Search<'_> {
    fn emit(&mut self, q: StateId, p: IVec2) {
        if !p.is_nonneg() {
            return;
        }
        if p.x > self.k || p.y > self.k {
            self.saturated = false;
            return;
        }
        let (x, y) = (p.x as usize, p.y as usize);
        if !self.all[q.index()].get(x, y) {
            self.fresh[q.index()].set(x, y);
        }
    }

    /// Adds `src` translated by `shift` into the fresh set of `q`.
    fn emit_grid(&mut self, q: StateId, src: &Grid, shift: IVec2) {
        let side = src.side as i64;
        for y in 0..src.side {
            let row = src.row(y);
            let ty = y as i64 + shift.y;
            if ty < 0 {
                continue;
            }
            let first_nonneg = (-shift.x).max(0) as usize;
            if ty >= side {
                if any_bits_from(row, first_nonneg) {
                    self.saturated = false;
                }
                continue;
            }
            if any_bits_from(row, (side - shift.x).max(0) as usize) {
                self.saturated = false;
            }
            let ty = ty as usize;
            for w in 0..src.words {
                let mut word = shifted_word(row, shift.x, w);
                if w == src.words - 1 && !src.side.is_multiple_of(64) {
                    word &= (1u64 << (src.side % 64)) - 1;
                }
                let seen = self.all[q.index()].row(ty)[w];
                self.fresh[q.index()].bits[ty * src.words + w] |= word & !seen;
            }
        }
    }

    /// All combinations of `rule` using at least one configuration from the last round.
    fn fire(&mut self, rule: &Rule) {
        let r = rule.inputs.len();
        if r == 0 {
            return;
        }
        for j in 0..r {
            if self.delta[rule.inputs[j].index()].is_empty() {
                continue;
            }
            // One slot other than `j` is added as a whole bitmap; the rest are enumerated.
            let grid_slot = (r > 1).then(|| if j == r - 1 { r - 2 } else { r - 1 });
            let lists: Vec<Vec<IVec2>> = (0..r)
                .filter(|&i| Some(i) != grid_slot)
                .map(|i| {
                    let s = rule.inputs[i].index();
                    match i.cmp(&j) {
                        std::cmp::Ordering::Less => self.old_pts[s].clone(),
                        std::cmp::Ordering::Equal => self.delta[s].clone(),
                        std::cmp::Ordering::Greater => self.all_pts[s].clone(),
                    }
                })
                .collect();
            let grid = grid_slot.map(|g| {
                let s = rule.inputs[g].index();
                if g < j {
                    self.old[s].clone()
                } else {
                    self.all[s].clone()
                }
            });
            let refs: Vec<&[IVec2]> = lists.iter().map(Vec::as_slice).collect();
            let mut sums = Vec::new();
            crate::model::for_each_sum(&refs, rule.displacement, &mut |p| sums.push(p));
            for p in sums {
                match &grid {
                    None => self.emit(rule.output, p),
                    Some(g) => self.emit_grid(rule.output, g, p),
                }
            }
        }
    }
}

/// Box-restricted reachability, computed semi-naively over per-state bitmaps.
pub fn bounded_reach(b: &Bvass, k: u64, max_configs: u64) -> Result<BoxReachResult> {
    let n = b.state_count();
    let side = k as usize + 1;
    let mut s = Search {
        b,
        k: k as i64,
        all: vec![Grid::new(side); n],
        old: vec![Grid::new(side); n],
        all_pts: vec![Vec::new(); n],
        old_pts: vec![Vec::new(); n],
        delta: vec![Vec::new(); n],
        fresh: vec![Grid::new(side); n],
        saturated: true,
    };
    for rule in b.rules().iter().filter(|r| r.inputs.is_empty()) {
        s.emit(rule.output, rule.displacement);
    }
    let mut total = 0u64;
    loop {
        let mut any = false;
        s.old = s.all.clone();
        s.old_pts = s.all_pts.clone();
        for q in 0..n {
            let pts = s.fresh[q].points();
            for p in &pts {
                s.all[q].set(p.x as usize, p.y as usize);
            }
            total += pts.len() as u64;
            any |= !pts.is_empty();
            s.all_pts[q].extend_from_slice(&pts);
            s.delta[q] = pts;
            s.fresh[q] = Grid::new(side);
        }
        if total > max_configs {
            return Err(Error::limit(Resource::OracleConfigs, max_configs));
        }
        if !any {
            break;
        }
        for rule in s.b.rules() {
            s.fire(rule);
        }
    }
    let configs = s
        .all_pts
        .iter()
        .enumerate()
        .flat_map(|(q, pts)| pts.iter().map(move |&p| Configuration::new(StateId(q as u32), p)))
        .collect();
    Ok(BoxReachResult {
        configs,
        box_size: k,
        saturated: s.saturated,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessStatus {
    Witnessed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessEntry {
    pub state: String,
    pub point: IVec2,
    pub status: WitnessStatus,
    /// Smallest box in which a derivation was found.
    pub witness_box: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub box_size: u64,
    pub boxes_tried: Vec<u64>,
    pub witnessed: usize,
    pub inconclusive: usize,
    pub entries: Vec<SoundnessEntry>,
    pub limit_error: Option<String>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.inconclusive == 0
    }
}

/// Looks for a derivation of every presented configuration in `[0, k]²`,
/// trying boxes `k, 2k, 4k, …` capped at `k_max`.
pub fn check_soundness(
    s: &SemilinearPresentation,
    b: &Bvass,
    k: u64,
    k_max: u64,
    max_configs: u64,
) -> SoundnessReport {
    let mut entries: Vec<SoundnessEntry> = s
        .enumerate_box(k)
        .into_iter()
        .map(|(state, point)| SoundnessEntry {
            state,
            point,
            status: WitnessStatus::Inconclusive,
            witness_box: None,
        })
        .collect();
    let mut report = SoundnessReport {
        box_size: k,
        ..Default::default()
    };
    let mut size = k;
    while entries.iter().any(|e| e.status == WitnessStatus::Inconclusive) {
        let reach = match bounded_reach(b, size, max_configs) {
            Ok(r) => r,
            Err(err) => {
                report.limit_error = Some(err.to_string());
                break;
            }
        };
        report.boxes_tried.push(size);
        for e in entries.iter_mut().filter(|e| e.status == WitnessStatus::Inconclusive) {
            let found = b
                .state(&e.state)
                .is_some_and(|q| reach.configs.contains(&Configuration::new(q, e.point)));
            if found {
                e.status = WitnessStatus::Witnessed;
                e.witness_box = Some(size);
            }
        }
        // A saturated search has found everything there is to find.
        if reach.saturated || size >= k_max {
            break;
        }
        size = (size * 2).clamp(1, k_max);
    }
    report.witnessed = entries.iter().filter(|e| e.status == WitnessStatus::Witnessed).count();
    report.inconclusive = entries.len() - report.witnessed;
    report.entries = entries;
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureViolation {
    pub rule: usize,
    pub rule_text: String,
    pub inputs: Vec<(String, IVec2)>,
    pub output: (String, IVec2),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub box_size: u64,
    pub combinations: u64,
    pub violation_count: u64,
    /// The first violations found, at most [`MAX_REPORTED`].
    pub violations: Vec<ClosureViolation>,
    pub limit_error: Option<String>,
}

impl ClosureReport {
    pub fn is_closed(&self) -> bool {
        self.violation_count == 0 && self.limit_error.is_none()
    }
}

pub const MAX_REPORTED: usize = 100;

pub fn rule_text(b: &Bvass, r: &Rule) -> String {
    let inputs: Vec<&str> = r.inputs.iter().map(|&s| b.name(s)).collect();
    let mut head = format!("rule {} <-", b.name(r.output));
    if !inputs.is_empty() {
        head.push(' ');
        head.push_str(&inputs.join(","));
    }
    format!("{head} : {} {}", r.displacement.x, r.displacement.y)
}

/// Applies every rule to every choice of presented configurations in
/// `[0, k]²` and checks that the result is presented again.
pub fn check_post_closure(s: &SemilinearPresentation, b: &Bvass, k: u64, limits: &Limits) -> ClosureReport {
    let mut report = ClosureReport {
        box_size: k,
        ..Default::default()
    };
    let mut by_state: Vec<Vec<IVec2>> = vec![Vec::new(); b.state_count()];
    for (state, p) in s.enumerate_box(k) {
        if let Some(q) = b.state(&state) {
            by_state[q.index()].push(p);
        }
    }
    let mut memo: HashMap<(StateId, IVec2), bool> = HashMap::new();
    let mut member = |q: StateId, p: IVec2| -> Result<bool> {
        if let Some(&m) = memo.get(&(q, p)) {
            return Ok(m);
        }
        let m = s.member_config(b.name(q), p, limits)?.is_some();
        memo.insert((q, p), m);
        Ok(m)
    };
    'rules: for (ri, rule) in b.rules().iter().enumerate() {
        let slots: Vec<&[IVec2]> = rule.inputs.iter().map(|q| by_state[q.index()].as_slice()).collect();
        if slots.iter().any(|s| s.is_empty()) {
            continue;
        }
        let mut choice = vec![0usize; slots.len()];
        loop {
            report.combinations += 1;
            let mut out = rule.displacement;
            for (slot, &c) in slots.iter().zip(&choice) {
                out = out + slot[c];
            }
            if out.is_nonneg() {
                match member(rule.output, out) {
                    Ok(true) => {}
                    Ok(false) => {
                        report.violation_count += 1;
                        if report.violations.len() < MAX_REPORTED {
                            report.violations.push(ClosureViolation {
                                rule: ri,
                                rule_text: rule_text(b, rule),
                                inputs: rule
                                    .inputs
                                    .iter()
                                    .zip(slots.iter().zip(&choice))
                                    .map(|(&q, (slot, &c))| (b.name(q).to_string(), slot[c]))
                                    .collect(),
                                output: (b.name(rule.output).to_string(), out),
                            });
                        }
                    }
                    Err(err) => {
                        report.limit_error = Some(err.to_string());
                        break 'rules;
                    }
                }
            }
            let mut i = choice.len();
            loop {
                if i == 0 {
                    continue 'rules;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < slots[i].len() {
                    break;
                }
                choice[i] = 0;
            }
        }
    }
    report
}

/// Points reachable from `(0, 0)` by adding elements of `z` one at a time
/// without leaving `[0, k]²`.
pub fn perp_oracle(z: &[IVec2], k: u64) -> BTreeSet<IVec2> {
    let k = k as i64;
    let mut seen = BTreeSet::from([IVec2::zero()]);
    let mut queue = VecDeque::from([IVec2::zero()]);
    while let Some(p) = queue.pop_front() {
        for &d in z {
            let y = p + d;
            if y.is_nonneg() && y.x <= k && y.y <= k && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}
