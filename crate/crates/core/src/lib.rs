//! Free-group endomorphism analysis: reduced-word algebra, Wagner tails,
//! remnant and Wecken certification, exact density formulas, and census /
//! Monte Carlo experiments over balls of endomorphisms.

pub mod census;
pub mod classify;
pub mod formulas;
pub mod freegroup;
pub mod wagner;

pub use freegroup::{BallSpec, Letter, Rank, Word};
pub use wagner::{Endomorphism, TailPair};
