//! Shift dynamics on a two-sided Mahavier product over a countable union of
//! intervals, its quotient fans, and a topological invariant separating them.

pub mod experiments;
pub mod impression;
pub mod invariants;
pub mod itinerary;
pub mod mahavier;
pub mod quotients;
pub mod report;
pub mod relations;
pub mod render;
pub mod xspace;
