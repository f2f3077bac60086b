pub mod code5;
pub mod error;
pub mod harness;
pub mod lattice;
pub mod protocols;
pub mod qcore;
pub mod stabsim;
pub mod svsim;

pub use error::{Error, Result};
