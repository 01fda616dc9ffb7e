#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod cli;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod frames;
pub mod numeric;
pub mod output;
pub mod surface;
pub mod trace;
pub mod vec3;

pub use error::{Error, Result};
pub use vec3::{Sym3, Vec3};
