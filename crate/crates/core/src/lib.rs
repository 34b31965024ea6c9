//! Exact computations in rational group algebras of small finite groups.

pub mod algebra;
pub mod arith;
pub mod characters;
pub mod component;
pub mod corpus;
pub mod error;
pub mod group;
pub mod idempotents;
pub mod io;
pub mod pipeline;
pub mod shoda;
pub mod units;

pub use error::{Error, ErrorClass, Result};
