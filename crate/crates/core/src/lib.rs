//! Capture times for the game of cops and robbers, measured in ordinals.
//!
//! * [`ordinal`]: Cantor normal form arithmetic below ε₀.
//! * [`finite`]: exact solving of finite graphs (η table, dismantling, oracle).
//! * [`gen`]: finite truncations of the grid family and standard test graphs.
//! * [`symbolic`]: the infinite grid graphs with ordinal coordinates, their
//!   bound calculus, witness certificates, and pursuit strategies.
//! * [`harness`]: verification suites and reports.

pub mod finite;
pub mod gen;
pub mod harness;
pub mod ordinal;
pub mod symbolic;

pub use ordinal::{Ordinal, OrdinalError};
