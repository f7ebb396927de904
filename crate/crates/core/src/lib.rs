//! Link invariants with values in Conway algebras, computed by resolving
//! trees over oriented planar diagrams.

pub mod algebra;
pub mod cli;
pub mod diagram;
pub mod poly;
pub mod zoo;
pub mod invariants;
pub mod simplify;
pub mod skein;
