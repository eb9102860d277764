pub mod assemble;
pub mod cli;
pub mod ermakov;
pub mod error;
pub mod jet;
pub mod nlse;
pub mod numerics;
pub mod schrodinger;
pub mod specialfn;
pub mod susy;

pub use error::{Error, Result};
