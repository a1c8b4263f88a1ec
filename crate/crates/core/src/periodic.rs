//! Finitely generated periodic subsets of ℕ².
//!
//! `per(G)` is the set of all finite sums of elements of `G`, the empty sum
//! included. Membership is decided by dynamic programming over the grid below
//! the query point. The inclusion and basis computations reduce to the finite
//! set of componentwise-minimal coefficient vectors `n` with `G·n ≥ c`; see
//! `docs/minimal-solutions.md` for the enumeration bound.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Resource, Result};
use crate::limits::Limits;
use crate::IVec2;

/// Coefficients aligned with a generator list.
pub type CoeffVector = Vec<u64>;

/// A periodic set in canonical form: generators sorted lexicographically,
/// deduplicated, nonnegative, zero vector removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<IVec2>", into = "Vec<IVec2>")]
pub struct PeriodicSet {
    generators: Vec<IVec2>,
}

impl TryFrom<Vec<IVec2>> for PeriodicSet {
    type Error = Error;

    fn try_from(gens: Vec<IVec2>) -> Result<Self> {
        PeriodicSet::new(gens)
    }
}

impl From<PeriodicSet> for Vec<IVec2> {
    fn from(p: PeriodicSet) -> Self {
        p.generators
    }
}

impl PeriodicSet {
    /// `per(∅) = {(0, 0)}`.
    pub fn empty() -> Self {
        PeriodicSet::default()
    }

    pub fn new(gens: impl IntoIterator<Item = IVec2>) -> Result<Self> {
        let mut generators = Vec::new();
        for g in gens {
            if !g.is_nonneg() {
                return Err(Error::NegativeGenerator(g.to_string()));
            }
            if !g.is_zero() {
                generators.push(g);
            }
        }
        generators.sort();
        generators.dedup();
        Ok(PeriodicSet { generators })
    }

    /// Canonicalizes generators already known to lie in ℕ².
    pub(crate) fn from_nonneg(gens: impl IntoIterator<Item = IVec2>) -> Self {
        let mut generators: Vec<IVec2> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        debug_assert!(generators.iter().all(IVec2::is_nonneg));
        generators.sort();
        generators.dedup();
        PeriodicSet { generators }
    }

    pub fn generators(&self) -> &[IVec2] {
        &self.generators
    }

    /// True for `per(∅)`.
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether `y` is a nonnegative integer combination of the generators.
    pub fn contains(&self, y: IVec2, limits: &Limits) -> Result<bool> {
        member(&self.generators, y, limits)
    }

    /// Generator union; `per(result) = per(self) + per(other)`.
    pub fn sum(&self, other: &PeriodicSet) -> PeriodicSet {
        PeriodicSet::from_nonneg(self.generators.iter().chain(&other.generators).copied())
    }

    /// `per(other) ⊆ per(self)`.
    pub fn includes(&self, other: &PeriodicSet, limits: &Limits) -> Result<bool> {
        for &g in &other.generators {
            if !self.contains(g, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Semantic equality of the spanned sets.
    pub fn equal_sem(&self, other: &PeriodicSet, limits: &Limits) -> Result<bool> {
        Ok(self.includes(other, limits)? && other.includes(self, limits)?)
    }

    /// Drops generators spanned by the others, scanning in lexicographic order.
    pub fn reduce(&self, limits: &Limits) -> Result<PeriodicSet> {
        let mut kept: Vec<IVec2> = Vec::with_capacity(self.generators.len());
        for (i, &g) in self.generators.iter().enumerate() {
            let others: Vec<IVec2> = kept
                .iter()
                .chain(&self.generators[i + 1..])
                .copied()
                .collect();
            if !member(&others, g, limits)? {
                kept.push(g);
            }
        }
        Ok(PeriodicSet { generators: kept })
    }

    /// Decides `(per(G) + z) ∩ ℕ² ⊆ per(G)`.
    ///
    /// The coefficient vectors `n` with `G·n + z ≥ 0` form an upward-closed
    /// set, and `per(G)` is closed under adding generators, so it suffices to
    /// test the minimal ones.
    pub fn shifted_inclusion(&self, z: IVec2, limits: &Limits) -> Result<bool> {
        for m in min_solutions(&self.generators, -z, limits)? {
            let y = IVec2::combination(&self.generators, &m) + z;
            if !self.contains(y, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A finite `B ⊆ ℕ²` with `B + per(G) = (v + per(G)) ∩ ℕ²`, pruned so that
    /// no element lies in another's translate.
    pub fn basis(&self, v: IVec2, limits: &Limits) -> Result<Vec<IVec2>> {
        let mut candidates: Vec<IVec2> = min_solutions(&self.generators, -v, limits)?
            .into_iter()
            .map(|m| v + IVec2::combination(&self.generators, &m))
            .collect();
        candidates.sort();
        candidates.dedup();
        let mut kept: Vec<IVec2> = Vec::with_capacity(candidates.len());
        for b in candidates {
            let mut covered = false;
            for &k in &kept {
                if b.dominates(&k) && self.contains(b - k, limits)? {
                    covered = true;
                    break;
                }
            }
            if !covered {
                kept.push(b);
            }
        }
        Ok(kept)
    }
}

impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "per{{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// Grid dynamic programming over `[0, y.x] × [0, y.y]`.
pub(crate) fn member(gens: &[IVec2], y: IVec2, limits: &Limits) -> Result<bool> {
    if !y.is_nonneg() {
        return Ok(false);
    }
    if y.is_zero() || gens.contains(&y) {
        return Ok(true);
    }
    let gens: Vec<IVec2> = gens
        .iter()
        .copied()
        .filter(|g| !g.is_zero() && y.dominates(g))
        .collect();
    match gens.as_slice() {
        [] => return Ok(false),
        [g] => return Ok(single_multiple(*g, y)),
        _ => {}
    }
    let (w, h) = (y.x as u64 + 1, y.y as u64 + 1);
    let cells = w.saturating_mul(h);
    if cells > limits.member_cells {
        return Err(Error::limit(Resource::MemberCells, limits.member_cells));
    }
    let w = w as usize;
    let mut reach = vec![false; cells as usize];
    reach[0] = true;
    for j in 0..=y.y as usize {
        for i in 0..w {
            if i == 0 && j == 0 {
                continue;
            }
            reach[j * w + i] = gens.iter().any(|g| {
                let (gx, gy) = (g.x as usize, g.y as usize);
                i >= gx && j >= gy && reach[(j - gy) * w + (i - gx)]
            });
        }
    }
    Ok(reach[cells as usize - 1])
}

fn single_multiple(g: IVec2, y: IVec2) -> bool {
    // y = t·g for some t ≥ 1, with g nonzero and nonneg.
    let t = if g.x != 0 { y.x / g.x } else { y.y / g.y };
    t >= 1 && g.x * t == y.x && g.y * t == y.y
}

/// Componentwise-minimal `n ∈ ℕᵏ` with `(G·n)(j) ≥ threshold(j)` for both coordinates.
///
/// Coordinates with a nonpositive threshold are trivially satisfied. Every
/// minimal solution has `Σ nᵢ < max(0, t.x) + max(0, t.y) + maxg.x + maxg.y`;
/// the search never leaves that bound. Zero generators never occur.
pub fn min_solutions(gens: &[IVec2], threshold: IVec2, limits: &Limits) -> Result<Vec<CoeffVector>> {
    let need = IVec2::new(threshold.x.max(0), threshold.y.max(0));
    if need.is_zero() {
        return Ok(vec![vec![0; gens.len()]]);
    }
    let maxg = gens
        .iter()
        .fold(IVec2::zero(), |m, g| IVec2::new(m.x.max(g.x), m.y.max(g.y)));
    let bound = (need.x + need.y + maxg.x + maxg.y) as u64;
    let mut search = MinSearch {
        gens,
        need,
        max_total: bound.saturating_sub(1),
        counts: vec![0; gens.len()],
        found: Vec::new(),
        visited: 0,
        cap: limits.min_solution_candidates,
    };
    search.run(0, IVec2::zero(), 0)?;
    Ok(search.found)
}

struct MinSearch<'a> {
    gens: &'a [IVec2],
    need: IVec2,
    max_total: u64,
    counts: Vec<u64>,
    found: Vec<CoeffVector>,
    visited: u64,
    cap: u64,
}

impl MinSearch<'_> {
    fn satisfied(&self, s: IVec2) -> bool {
        s.dominates(&self.need)
    }

    fn run(&mut self, i: usize, sum: IVec2, total: u64) -> Result<()> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::limit(Resource::MinSolutionCandidates, self.cap));
        }
        if self.satisfied(sum) {
            // n is minimal iff removing any single copy breaks feasibility.
            let minimal = self
                .counts
                .iter()
                .zip(self.gens)
                .all(|(&c, &g)| c == 0 || !self.satisfied(sum - g));
            if minimal {
                self.found.push(self.counts.clone());
            }
            return Ok(());
        }
        if i == self.gens.len() {
            return Ok(());
        }
        let g = self.gens[i];
        let need = self.need;
        let helps = |s: IVec2| (g.x > 0 && s.x < need.x) || (g.y > 0 && s.y < need.y);
        let mut s = sum;
        let mut t = 0u64;
        loop {
            self.counts[i] = t;
            self.run(i + 1, s, total + t)?;
            if !helps(s) || total + t >= self.max_total {
                break;
            }
            t += 1;
            s = s + g;
        }
        self.counts[i] = 0;
        Ok(())
    }
}
