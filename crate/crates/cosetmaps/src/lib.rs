//! Coset word maps over `PSL_2(q)` and Suzuki groups, and deciders for
//! multiplicity-bounding properties of words built on them.

pub mod ff;
pub mod algebra;
pub mod words;
pub mod engine;
pub mod deciders;
pub mod oracle;
