//! Command-line front end for the `sutured` crate.

pub mod app;
pub mod render;
pub mod verify;
