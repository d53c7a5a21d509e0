//! File formats, rendering and the command-line front end for
//! `toric-additive-core`.

pub mod cli;
pub mod document;
pub mod input;
pub mod json;
pub mod render;
pub mod sweep;
