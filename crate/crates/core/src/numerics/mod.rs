//! Small numerical kernels shared by the solvers and the verifiers.

pub mod diff;
pub mod grid;
pub mod quad;
pub mod roots;
