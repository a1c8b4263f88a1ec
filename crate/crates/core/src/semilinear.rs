//! Semilinear presentations of reachability sets.
//!
//! A presentation is a list of linear sets `q(b + per(G))`. Two serialized
//! forms are supported: canonical JSON and a line format
//!
//! ```text
//! linear p : 0 0 ; 1 0
//! ```
//!
//! listing the state, the base, then one period per `;`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::explore::{Exploration, NodeStatus};
use crate::limits::Limits;
use crate::model::Bvass;
use crate::periodic::PeriodicSet;
use crate::IVec2;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearSetEntry {
    pub state: String,
    pub base: IVec2,
    pub periods: PeriodicSet,
}

impl LinearSetEntry {
    /// Sufficient test for `other ⊆ self`.
    pub fn covers(&self, other: &LinearSetEntry, limits: &Limits) -> Result<bool> {
        if self.state != other.state {
            return Ok(false);
        }
        let d = other.base - self.base;
        Ok(d.is_nonneg() && self.periods.contains(d, limits)? && self.periods.includes(&other.periods, limits)?)
    }

    pub fn contains(&self, point: IVec2, limits: &Limits) -> Result<bool> {
        let d = point - self.base;
        self.periods.contains(d, limits)
    }

    /// Points of this linear set in `[0, k]²`, by one grid sweep from the base.
    fn fill_box(&self, k: i64) -> Vec<IVec2> {
        if !self.base.is_nonneg() || self.base.x > k || self.base.y > k {
            return Vec::new();
        }
        let (w, h) = ((k - self.base.x + 1) as usize, (k - self.base.y + 1) as usize);
        let mut reach = vec![false; w * h];
        reach[0] = true;
        let gens = self.periods.generators();
        let mut out = Vec::new();
        for j in 0..h {
            for i in 0..w {
                let hit = (i, j) == (0, 0)
                    || gens.iter().any(|g| {
                        let (gx, gy) = (g.x as usize, g.y as usize);
                        i >= gx && j >= gy && reach[(j - gy) * w + (i - gx)]
                    });
                if hit {
                    reach[j * w + i] = true;
                    out.push(self.base + IVec2::new(i as i64, j as i64));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilinearPresentation {
    pub model_hash: String,
    #[serde(rename = "reach")]
    pub entries: Vec<LinearSetEntry>,
}

/// SHA-256 of the canonical text of `b`, hex encoded.
pub fn model_hash(b: &Bvass) -> String {
    hex::encode(Sha256::digest(b.to_string().as_bytes()))
}

/// Collects `q_n(z_n + P_n)` over all non-waiting nodes, then normalizes.
pub fn assemble(e: &Exploration, b: &Bvass, limits: &Limits) -> Result<SemilinearPresentation> {
    let entries = e
        .nodes
        .iter()
        .filter(|n| n.status != NodeStatus::Waiting)
        .map(|n| LinearSetEntry {
            state: b.name(n.label.q).to_string(),
            base: n.label.z,
            periods: n.label.p.clone(),
        })
        .collect();
    let mut s = SemilinearPresentation {
        model_hash: model_hash(b),
        entries,
    };
    s.normalize(limits)?;
    Ok(s)
}

impl SemilinearPresentation {
    /// Sorts, deduplicates, and drops entries covered by a surviving entry.
    pub fn normalize(&mut self, limits: &Limits) -> Result<()> {
        self.entries.sort();
        self.entries.dedup();
        let mut dropped = vec![false; self.entries.len()];
        for i in 0..self.entries.len() {
            for j in 0..self.entries.len() {
                if i != j && !dropped[j] && self.entries[j].covers(&self.entries[i], limits)? {
                    dropped[i] = true;
                    break;
                }
            }
        }
        let mut keep = dropped.iter().map(|d| !d);
        self.entries.retain(|_| keep.next().unwrap());
        Ok(())
    }

    /// Index of the first entry containing `state(point)`.
    pub fn member_config(&self, state: &str, point: IVec2, limits: &Limits) -> Result<Option<usize>> {
        for (i, entry) in self.entries.iter().enumerate() {
            if entry.state == state && entry.contains(point, limits)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// All configurations of the presentation inside `[0, k]²`.
    pub fn enumerate_box(&self, k: u64) -> BTreeSet<(String, IVec2)> {
        let mut out = BTreeSet::new();
        for entry in &self.entries {
            for p in entry.fill_box(k as i64) {
                out.insert((entry.state.clone(), p));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut s: SemilinearPresentation =
            serde_json::from_str(text).map_err(|e| Error::Presentation(e.to_string()))?;
        for e in &s.entries {
            if !e.base.is_nonneg() {
                return Err(Error::Presentation(format!("base {} is not in ℕ²", e.base)));
            }
        }
        s.entries.sort();
        Ok(s)
    }

    /// Parses the line format. A leading `# model <hash>` comment restores the hash.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut model_hash = String::new();
        let mut entries = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(h) = line.strip_prefix("# model ") {
                model_hash = h.trim().to_string();
                continue;
            }
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| Error::Syntax {
                line: n + 1,
                column: 1,
                message: message.to_string(),
            };
            let rest = line
                .strip_prefix("linear")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| err("expected `linear <state> : <x> <y> ; ...`"))?;
            let (state, vectors) = rest.split_once(':').ok_or_else(|| err("missing `:`"))?;
            let state = state.trim();
            if state.is_empty() || !state.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(err("bad state name"));
            }
            let mut parts = vectors.split(';').map(|p| {
                let nums: Vec<i64> = p
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| err("expected integers"))?;
                match nums.as_slice() {
                    [x, y] => Ok(IVec2::new(*x, *y)),
                    _ => Err(err("expected two integers")),
                }
            });
            let base = parts.next().unwrap()?;
            if !base.is_nonneg() {
                return Err(err("base must be nonnegative"));
            }
            let gens = parts.collect::<Result<Vec<_>>>()?;
            entries.push(LinearSetEntry {
                state: state.to_string(),
                base,
                periods: PeriodicSet::new(gens)?,
            });
        }
        entries.sort();
        Ok(SemilinearPresentation { model_hash, entries })
    }

    /// JSON when the text starts with `{`, the line format otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_text(text)
        }
    }
}

impl fmt::Display for SemilinearPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# model {}", self.model_hash)?;
        for e in &self.entries {
            write!(f, "linear {} : {} {}", e.state, e.base.x, e.base.y)?;
            for g in e.periods.generators() {
                write!(f, " ; {} {}", g.x, g.y)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
