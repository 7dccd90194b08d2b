#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod cohomology;
pub mod error;
pub mod harness;
pub mod mixing;
pub mod model;
pub mod modp;
pub mod poly;
pub mod psl2;
pub mod wreath;

pub use error::{Error, Result};
pub use modp::{FpPoly, PrimeRange};
pub use poly::{IntPoly, TridiagMatrix};
