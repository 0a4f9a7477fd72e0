//! Closed-form outage, spatial contention, throughput and ergodic capacity
//! for interference-limited wireless networks, plus a seeded Monte Carlo
//! oracle that samples the same networks directly.
//!
//! Every network in this crate is normalized the same way: the desired link
//! has length 1 and unit (mean) received power, Poisson networks have unit
//! intensity and regular line networks have unit spacing. Only relative
//! distances matter, so these choices lose no generality. Noise is ignored.
//!
//! The crate is `no_std` and needs only `alloc`. IO, the command line and
//! thread-parallel Monte Carlo live in the `sirnet` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod capacity;
pub mod class;
pub mod contention;
mod error;
pub mod model;
pub mod montecarlo;
pub mod optimize;
pub mod outage;
pub mod quad;
pub mod specfun;
pub mod throughput;

pub use error::{Error, Result};
