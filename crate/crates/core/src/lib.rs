//! Reachability sets of two-dimensional branching vector addition systems
//! with states (2-BVASS), computed as explicit semilinear presentations.
//!
//! The pipeline is [`parse_bvass`] → [`explore()`] → [`SemilinearPresentation`].
//! The [`oracle`] module holds brute-force semantics used to cross-check results.
//!
//! ```
//! use bvass::{explore, parse_bvass, ExploreConfig, IVec2};
//!
//! let b = parse_bvass("rule p <- : 0 0\nrule p <- p : 1 0\n").unwrap();
//! let out = explore(&b, &ExploreConfig::default()).unwrap();
//! let limits = Default::default();
//! assert!(out.presentation.member_config("p", IVec2::new(7, 0), &limits).unwrap().is_some());
//! assert!(out.presentation.member_config("p", IVec2::new(0, 1), &limits).unwrap().is_none());
//! ```

pub mod accel;
pub mod cone2d;
mod error;
pub mod explore;
mod limits;
pub mod model;
pub mod num;
pub mod oracle;
pub mod periodic;
pub mod semilinear;

pub use accel::{accelerate, check_cone, per_plus, AccelReport};
pub use cone2d::{con_p_formula, GeneralCone2, QuadrantCone2};
pub use error::{Error, Resource, Result};
pub use explore::{explore, validate_exploration, ExploreConfig, ExploreFailure, Exploration, WorklistOrder};
pub use limits::Limits;
pub use model::{parse_bvass, Bvass, Configuration, InstantiatedVass, Rule, RuleKind, StateId, Transition};
pub use num::{Scalar, Vec2};
pub use periodic::{min_solutions, CoeffVector, PeriodicSet};
pub use semilinear::{LinearSetEntry, SemilinearPresentation};

/// Integer vector of ℤ², used for displacements.
pub type IVec2 = Vec2<i64>;
/// Points of ℕ² share the representation of [`IVec2`]; nonnegativity is checked where it matters.
pub type NVec2 = IVec2;
pub type Cone2 = GeneralCone2<i64>;
pub type QuadrantCone = QuadrantCone2<i64>;
