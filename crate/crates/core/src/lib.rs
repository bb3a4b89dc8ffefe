//! Sequential decoding of classical-quantum channels.
//!
//! The crate computes, exactly and in small dimension, every quantity that
//! enters the analysis of a decoder which asks "is it codeword j?" one
//! codeword at a time:
//!
//! * [`linalg`]: dense complex operators, states and seeded samplers.
//! * [`dilation`]: unitary dilations of POVMs on system ⊗ probe.
//! * [`hypothesis`]: optimal tests and the hypothesis-testing relative entropy.
//! * [`decoder`]: the sequential decoder, its union bounds, random coding and
//!   one-shot capacity bounds.
//! * [`gentle`]: disturbance of measurements and their reversal.
//! * [`io`], [`sweep`] and [`cli`]: file formats, seeded bound sweeps and the
//!   command-line front end.
//!
//! The runnable programs in `examples/` are the best starting point.

pub mod cli;
pub mod decoder;
pub mod dilation;
pub mod error;
pub mod gentle;
pub mod hypothesis;
pub mod io;
pub mod linalg;
pub mod sweep;

pub use error::{Error, Result};
