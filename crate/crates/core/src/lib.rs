//! Exact computation with conradian left-preorders.
//!
//! Groups are given by rational-series presentations (one infinite cyclic
//! factor per generator) and elements are kept in collected normal form.
//! On top of that the crate enumerates the conradian left-preorders carried
//! by the series, audits arbitrary sign functions against the positive-cone
//! and conradian clauses on finite balls, and searches ordered actions for
//! crossings.

pub mod axioms;
pub mod corpus;
pub mod dynamics;
pub mod group;
pub mod preorder_core;
pub mod report;
pub mod series_analysis;
pub mod word_core;

pub use group::{ball, Ball, Group, GroupError};
pub use preorder_core::{PreorderEvaluator, Sign, SignVectorCone};
pub use word_core::{ExponentVector, Presentation, Word};
