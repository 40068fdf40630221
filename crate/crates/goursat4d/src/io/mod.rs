//! Field serialization (GF4 binary, CSV) and problem files.

pub mod csv;
pub mod gf4;
pub mod problem;
