//! Acceleration of periodic sets.
//!
//! `perP(Z)` is the set of finite sums of elements of `Z` whose prefix sums all
//! stay in ℕ². In dimension two it is a finitely generated periodic set, and a
//! generating set is found by growing `X₀ = {0}`, `Xₙ₊₁ = Xₙ ∪ (Xₙ + Z) ∩ ℕ²`
//! until `per(Xₙ)` is closed under every shift `z ∈ Z`.

use std::collections::BTreeSet;

use crate::cone2d::con_p_formula;
use crate::error::{Error, Resource, Result};
use crate::limits::Limits;
use crate::periodic::PeriodicSet;
use crate::{IVec2, QuadrantCone};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccelReport {
    pub result: PeriodicSet,
    pub rounds: u64,
    /// Largest number of points added in a single round.
    pub frontier_peak: u64,
    pub cone_check: bool,
}

pub fn per_plus(z: &[IVec2], limits: &Limits) -> Result<PeriodicSet> {
    Ok(per_plus_report(z, limits)?.result)
}

pub fn per_plus_report(z: &[IVec2], limits: &Limits) -> Result<AccelReport> {
    let shifts: Vec<IVec2> = z
        .iter()
        .copied()
        .filter(|v| !v.is_zero())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut points: BTreeSet<IVec2> = BTreeSet::from([IVec2::zero()]);
    let mut frontier: Vec<IVec2> = vec![IVec2::zero()];
    // Same periodic set as `points`, minus elements already spanned. Only the
    // stopping test sees this; `points` itself keeps growing unpruned.
    let mut spanning: Vec<IVec2> = Vec::new();
    let mut rounds = 0u64;
    let mut frontier_peak = 0u64;

    loop {
        let per = PeriodicSet::from_nonneg(spanning.iter().copied());
        if closed_under(&per, &shifts, limits)? {
            let result = per.reduce(limits)?;
            let cone_check = check_cone(z, &result);
            debug_assert!(cone_check, "cone mismatch for {z:?}: {result}");
            log::debug!("perP done after {rounds} rounds, {} points", points.len());
            return Ok(AccelReport {
                result,
                rounds,
                frontier_peak,
                cone_check,
            });
        }

        rounds += 1;
        if rounds > limits.accel_rounds {
            return Err(Error::limit(Resource::AccelRounds, limits.accel_rounds));
        }
        let mut next = Vec::new();
        for &x in &frontier {
            for &s in &shifts {
                let y = x + s;
                if y.is_nonneg() && points.insert(y) {
                    next.push(y);
                }
            }
        }
        if points.len() as u64 > limits.accel_points {
            return Err(Error::limit(Resource::AccelPoints, limits.accel_points));
        }
        next.sort();
        for &y in &next {
            if !crate::periodic::member(&spanning, y, limits)? {
                spanning.push(y);
            }
        }
        frontier_peak = frontier_peak.max(next.len() as u64);
        frontier = next;
    }
}

fn closed_under(per: &PeriodicSet, shifts: &[IVec2], limits: &Limits) -> Result<bool> {
    for &s in shifts {
        if !per.shifted_inclusion(s, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `accel_I(per(G)) = perP(I ∪ G)`.
pub fn accelerate(i: &[IVec2], p: &PeriodicSet, limits: &Limits) -> Result<PeriodicSet> {
    let mut z: Vec<IVec2> = i.to_vec();
    z.extend_from_slice(p.generators());
    per_plus(&z, limits)
}

/// Compares the quadrant cone of `result` with the closed form for `perP(z)`.
pub fn check_cone(z: &[IVec2], result: &PeriodicSet) -> bool {
    QuadrantCone::span_clipped(result.generators()) == con_p_formula(z)
}
