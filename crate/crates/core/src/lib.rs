//! Dimers on planar bipartite networks in the disk, their r-fold boundary
//! measurements, and SL_r web invariants, all in exact arithmetic.

pub mod dimer;
pub mod exact;
pub mod gallery;
pub mod graph;
pub mod moves;
pub mod random;
pub mod subsets;
pub mod weblike;
pub mod tagged;
pub mod invariants;
pub mod skein;
pub mod duality;
