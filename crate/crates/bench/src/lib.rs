//! Monte Carlo BLER simulation, file formats and the `polar-ga` command line
//! on top of the `polar-ga` core crate.

pub mod io;
pub mod method;
pub mod sim;

pub use method::Method;
pub use sim::{run_bler, DesignSnr, PointResult, SimConfig, SimResult, StopRule};
