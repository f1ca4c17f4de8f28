//! Edge labellings distinguishing adjacent vertices by the product of their
//! incident labels.
//!
//! The crate bundles three kinds of machinery:
//!
//! * constructions ([`constructive`]) that label a graph so that each class
//!   `S_x` of equal-product vertices has a guaranteed shape,
//! * checkers ([`labelling`]) that recompute products and classify those
//!   shapes independently of how a labelling was produced,
//! * exhaustive oracles ([`oracle`]) and a small-graph enumerator
//!   ([`enumerate`]) used to corroborate conjectured bounds at desk scale.

pub mod budget;
pub mod colouring;
pub mod constructive;
pub mod enumerate;
pub mod graph;
pub mod labelling;
pub mod oracle;

pub use budget::{Budget, BudgetExceeded};
pub use graph::{Graph, GraphError, Vertex};
pub use labelling::{EdgeLabelling, Label, Requirement, TotalLabelling};
