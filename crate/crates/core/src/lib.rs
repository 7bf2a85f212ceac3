//! Quivers, path relations, diagram formulas and their finite categorical
//! models, with a decision procedure for acyclic commutativity merges.

pub mod decide;
pub mod dsl;
pub mod formulas;
pub mod models;
pub mod paths;
pub mod quiver;
pub mod reductions;
pub mod unionfind;
