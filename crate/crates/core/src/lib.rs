//! Exact generalized Fibonacci and Lucas numbers, the board tilings they
//! count, the structural cuts on those tilings, and a verifier for the
//! identities relating them.

pub mod cli;
pub mod decompositions;
pub mod identities;
pub mod seqcore;
pub mod tilings;

pub use seqcore::{gen_fib, gen_lucas, Natural, SequenceCache};
pub use tilings::{Piece, Tiling};
