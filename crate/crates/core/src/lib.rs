//! Computational dynamics over ideals on the nonnegative integers.
//!
//! The crate is organized bottom-up:
//!
//! * [`intset`]: finite-horizon integer sets and their combinatorics;
//! * [`density`]: asymptotic, Banach and logarithmic density estimators;
//! * [`ideals`]: submeasures, exhaustive norms and membership verdicts;
//! * [`dynsys`]: concrete dynamical systems and their orbits;
//! * [`analysis`]: return sets, cluster/limit structure, universality;
//! * [`harness`]: executable property checks and the verification suite.

// `!(x > y)` is used deliberately so that NaN falls on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod density;
pub mod dynsys;
pub mod error;
pub mod harness;
pub mod ideals;
pub mod intset;

pub use analysis::{ClassifyOptions, ClusterReport, Property, Schedule};
pub use density::{DensityEstimate, DensityKind};
pub use dynsys::{Ball, Expansion, Orbit, Point, State, System};
pub use error::{Error, Result};
pub use harness::{CheckCase, CheckResult, CheckStatus, SuiteConfig, SuiteReport};
pub use ideals::{MembershipVerdict, Regime, Status, Submeasure};
pub use intset::{GapProfile, IntSet, SetSpec};
