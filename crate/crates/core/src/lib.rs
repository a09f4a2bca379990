pub mod abelian;
pub mod cli;
pub mod counting;
pub mod discovery;
pub mod divmatrix;
pub mod error;
pub mod numtheory;
pub mod oeis;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
