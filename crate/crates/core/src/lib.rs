//! Artificial fish swarm optimization with adaptive visual/step control.
//!
//! The engine in [`afsa`] scales the fish's visual range and step length by a
//! movement weight after every iteration. The weight comes from one of the
//! policies in [`schedules`]. A global-best PSO with linearly decreasing
//! inertia ([`pso`]) is included as a baseline, and [`harness`] drives
//! repeated seeded runs, parameter sweeps and algorithm comparisons over the
//! four functions in [`benchmarks`].

pub mod afsa;
pub mod benchmarks;
mod error;
pub mod harness;
pub mod pso;
pub mod record;
pub mod rng;
pub mod schedules;
pub mod space;

pub use error::{Error, Result};
pub use record::{RunRecord, TracePoint};
pub use rng::{EvalCounter, RngStream};
pub use space::{Bounds, Point};
