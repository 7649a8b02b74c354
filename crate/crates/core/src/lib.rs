//! Lattice paths weakly above a fixed boundary path ν, the ν-Tamari and
//! ν-greedy orders on them, degree statistics with their staircase/area
//! algorithms, bijections between maximal-degree subposets and smaller path
//! families, and a small finite-poset engine used to verify all of it by
//! brute force.

pub mod degrees;
pub mod distance;
pub mod greedy;
pub mod maps;
pub mod paths;
pub mod poset;
pub mod tamari;
pub mod verify;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
