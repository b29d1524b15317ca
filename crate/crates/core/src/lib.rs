//! Exact arithmetic, index combinatorics, relation generation and the
//! curve pipeline for abelian surfaces with real multiplication by √3.

pub mod field;
pub mod index;
pub mod pipeline;
pub mod relation;
