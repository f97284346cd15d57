//! Strongly regular graphs on the nonisotropic points of finite classical
//! polar spaces, and exhaustive verification of intriguing sets in them.

pub mod bitmatrix;
pub mod cli;
pub mod construct;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod io;
pub mod srg;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
