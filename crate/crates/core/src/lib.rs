//! Vast and syndetic sets in groups, and certified constructions of discrete
//! sequences with a single limit point in countable topological groups.
//!
//! * [`groups`]: finite groups by Cayley table, countable groups by element codes.
//! * [`largeness`]: the indices `J_M` and `I_M`, Ramsey bounds, greedy covers.
//! * [`filters`]: filter chains, neighborhood bases, nonrapidity witnesses and
//!   the partition oracle that stands in for an ultrafilter.
//! * [`constructions`]: the sequence builders and their certificates.
//! * [`verify`]: finite-depth verdicts on discreteness, limit points and disjointness.
//! * [`cli`]: the command-line front end.

pub mod groups;
pub mod largeness;
pub mod filters;
pub mod constructions;
pub mod verify;
pub mod cli;
