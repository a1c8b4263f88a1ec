/// Budgets for the arithmetic routines. Exceeding one yields
/// [`Error::ResourceLimit`](crate::Error::ResourceLimit), never a truncated answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest grid `(y.x + 1) · (y.y + 1)` a membership query may allocate.
    pub member_cells: u64,
    /// Largest number of candidates the minimal-solution search may visit.
    pub min_solution_candidates: u64,
    pub accel_rounds: u64,
    pub accel_points: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            member_cells: 100_000_000,
            min_solution_candidates: 10_000_000,
            accel_rounds: 10_000,
            accel_points: 1_000_000,
        }
    }
}
