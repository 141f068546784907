//! Extended games over finite probability spaces.
//!
//! An extended game is a game whose player strategies are *sets* of joint
//! probability distributions over the game variables, rather than direct
//! action choices. A joint choice of strategies is played by intersecting
//! the chosen sets; the game is *proper* when every joint choice intersects
//! to exactly one distribution, *over-played* when some choice intersects
//! to nothing, and *under-played* when some choice leaves more than one
//! distribution.
//!
//! All probability and utility arithmetic is exact (arbitrary-precision
//! rationals). The classification verdicts are knife-edge decisions between
//! an empty, singleton or higher-dimensional feasible set, so floating point
//! tolerances would produce false verdicts.

pub mod game;
pub mod prob;
pub mod rational;
pub mod report;
pub mod scenarios;
pub mod solve;
pub mod strategy;

mod error;

pub use error::{Error, Result};
pub use prob::{BayesNet, Cpt, JointDistribution, Ratio, Space, VariableSpec};
pub use solve::{Certificate, IntersectionResult};
pub use strategy::{LinearConstraint, StrategyKind, StrategySet};
