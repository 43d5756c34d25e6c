//! Movement-weight policies and the multiplicative visual/step update.
//!
//! Every iteration the engine asks the schedule for a weight `mw` and then
//! scales both visual and step by it, so the effect compounds over a run.

use std::fmt;
use std::str::FromStr;

use crate::rng::RngStream;
use crate::{Error, Result};

/// How the movement weight evolves over the run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MwPolicy {
    Constant(f64),
    /// Starts at `max`, reaches `min` at the last iteration.
    LinearDecreasing {
        min: f64,
        max: f64,
    },
    /// Starts at `min`, reaches `max` at the last iteration.
    LinearIncreasing {
        min: f64,
        max: f64,
    },
    /// Fresh uniform draw on `[min, max)` every iteration.
    Random {
        min: f64,
        max: f64,
    },
}

impl MwPolicy {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MwPolicy::Constant(mw) => {
                if !(mw.is_finite() && mw > 0.0) {
                    return Err(Error::InvalidSchedule(format!(
                        "constant weight must be positive, got {mw}"
                    )));
                }
            }
            MwPolicy::LinearDecreasing { min, max }
            | MwPolicy::LinearIncreasing { min, max }
            | MwPolicy::Random { min, max } => {
                if !(min.is_finite() && max.is_finite() && min > 0.0 && min <= max) {
                    return Err(Error::InvalidSchedule(format!(
                        "need 0 < min <= max, got min={min} max={max}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Parses `constant:0.96`, `lindec:0.95:0.99`, `lininc:0.95:0.99` or
/// `random:0.95:0.99`.
impl FromStr for MwPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| -> Result<f64> {
            t.parse::<f64>()
                .map_err(|_| Error::InvalidSchedule(format!("`{t}` is not a number in `{s}`")))
        };
        let policy = match parts.as_slice() {
            ["constant", mw] => MwPolicy::Constant(num(mw)?),
            ["lindec", a, b] => MwPolicy::LinearDecreasing {
                min: num(a)?,
                max: num(b)?,
            },
            ["lininc", a, b] => MwPolicy::LinearIncreasing {
                min: num(a)?,
                max: num(b)?,
            },
            ["random", a, b] => MwPolicy::Random {
                min: num(a)?,
                max: num(b)?,
            },
            _ => {
                return Err(Error::InvalidSchedule(format!(
                    "`{s}`: expected constant:<mw>, lindec:<min>:<max>, lininc:<min>:<max> or random:<min>:<max>"
                )))
            }
        };
        policy.validate()?;
        Ok(policy)
    }
}

impl fmt::Display for MwPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MwPolicy::Constant(mw) => write!(f, "constant:{mw}"),
            MwPolicy::LinearDecreasing { min, max } => write!(f, "lindec:{min}:{max}"),
            MwPolicy::LinearIncreasing { min, max } => write!(f, "lininc:{min}:{max}"),
            MwPolicy::Random { min, max } => write!(f, "random:{min}:{max}"),
        }
    }
}

/// A policy bound to the run length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MwSchedule {
    policy: MwPolicy,
    itr_max: usize,
}

impl MwSchedule {
    pub fn new(policy: MwPolicy, itr_max: usize) -> Result<Self> {
        policy.validate()?;
        if itr_max == 0 {
            return Err(Error::InvalidSchedule("itr_max must be positive".into()));
        }
        Ok(MwSchedule { policy, itr_max })
    }

    pub fn policy(&self) -> MwPolicy {
        self.policy
    }

    pub fn itr_max(&self) -> usize {
        self.itr_max
    }

    /// Weight for iteration `itr` (`0 ..= itr_max`). Only the random policy
    /// touches `rng`.
    pub fn mw_at(&self, itr: usize, rng: &mut RngStream) -> Result<f64> {
        if itr > self.itr_max {
            return Err(Error::IterationOutOfRange {
                itr,
                itr_max: self.itr_max,
            });
        }
        let remaining = (self.itr_max - itr) as f64 / self.itr_max as f64;
        Ok(match self.policy {
            MwPolicy::Constant(mw) => mw,
            MwPolicy::LinearDecreasing { min, max } => min + remaining * (max - min),
            MwPolicy::LinearIncreasing { min, max } => max - remaining * (max - min),
            MwPolicy::Random { min, max } => min + rng.uniform() * (max - min),
        })
    }
}

/// Scales visual and step by `mw`.
///
/// Results that would underflow to zero are held at the smallest positive
/// subnormal so both stay strictly positive.
pub fn apply_update(visual: f64, step: f64, mw: f64) -> Result<(f64, f64)> {
    if !(visual > 0.0 && step > 0.0 && mw > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "visual, step and mw must be positive (visual={visual}, step={step}, mw={mw})"
        )));
    }
    let tiny = f64::from_bits(1);
    Ok(((mw * visual).max(tiny), (mw * step).max(tiny)))
}
