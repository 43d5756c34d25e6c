//! Sphere, Rosenbrock, Ackley and Griewank with their search ranges and
//! acceptance thresholds.
//!
//! All four have a global minimum of 0. Evaluation is pure; counting is done
//! by [`Objective::evaluate_counted`].

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use crate::rng::EvalCounter;
use crate::space::Bounds;
use crate::{Error, Result};

pub const FUNCTION_NAMES: [&str; 4] = ["sphere", "rosenbrock", "ackley", "griewank"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Function {
    Sphere,
    Rosenbrock,
    Ackley,
    Griewank,
}

impl Function {
    pub const ALL: [Function; 4] = [
        Function::Sphere,
        Function::Rosenbrock,
        Function::Ackley,
        Function::Griewank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Sphere => "sphere",
            Function::Rosenbrock => "rosenbrock",
            Function::Ackley => "ackley",
            Function::Griewank => "griewank",
        }
    }

    pub fn bounds(self) -> Bounds {
        let (lo, hi) = match self {
            Function::Sphere => (-500.0, 500.0),
            Function::Rosenbrock => (-10.0, 10.0),
            Function::Ackley => (-32.0, 32.0),
            Function::Griewank => (-600.0, 600.0),
        };
        Bounds::new(lo, hi).expect("static bounds are valid")
    }

    /// Fitness below which a run counts as solved.
    pub fn acceptance(self) -> f64 {
        match self {
            Function::Rosenbrock => 100.0,
            _ => 0.01,
        }
    }

    pub fn min_dimension(self) -> usize {
        match self {
            Function::Rosenbrock => 2,
            _ => 1,
        }
    }

    fn eval(self, x: &[f64]) -> f64 {
        match self {
            Function::Sphere => sphere(x),
            Function::Rosenbrock => rosenbrock_unchecked(x),
            Function::Ackley => ackley(x),
            Function::Griewank => griewank(x),
        }
    }
}

impl FromStr for Function {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sphere" => Ok(Function::Sphere),
            "rosenbrock" => Ok(Function::Rosenbrock),
            // "Ackly" is the spelling used in the original results tables.
            "ackley" | "ackly" => Ok(Function::Ackley),
            "griewank" => Ok(Function::Griewank),
            _ => Err(Error::UnknownFunction {
                name: s.to_string(),
                valid: FUNCTION_NAMES.join(", "),
            }),
        }
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A benchmark function bound to a dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Objective {
    function: Function,
    dimension: usize,
}

impl Objective {
    pub fn new(function: Function, dimension: usize) -> Result<Self> {
        if dimension < function.min_dimension() {
            return Err(Error::InvalidParameter(format!(
                "{function} needs dimension >= {}, got {dimension}",
                function.min_dimension()
            )));
        }
        Ok(Objective {
            function,
            dimension,
        })
    }

    pub fn function(&self) -> Function {
        self.function
    }

    pub fn name(&self) -> &'static str {
        self.function.name()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn bounds(&self) -> Bounds {
        self.function.bounds()
    }

    pub fn acceptance(&self) -> f64 {
        self.function.acceptance()
    }

    /// Evaluates without counting. `x` must have length `dimension()`.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dimension);
        self.function.eval(x)
    }

    pub fn evaluate_counted(&self, x: &[f64], counter: &mut EvalCounter) -> f64 {
        counter.tick();
        self.evaluate(x)
    }
}

/// Resolves a benchmark by name (case-insensitive, `ackly` accepted).
pub fn lookup(name: &str, dimension: usize) -> Result<Objective> {
    Objective::new(name.parse()?, dimension)
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Canonical Rosenbrock valley, `sum 100 (x[i+1] - x[i]^2)^2 + (x[i] - 1)^2`.
pub fn rosenbrock(x: &[f64]) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "rosenbrock needs dimension >= 2, got {}",
            x.len()
        )));
    }
    Ok(rosenbrock_unchecked(x))
}

fn rosenbrock_unchecked(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let a = w[1] - w[0] * w[0];
            let b = w[0] - 1.0;
            100.0 * a * a + b * b
        })
        .sum()
}

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    20.0 + E - 20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp()
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product::<f64>();
    sum - prod + 1.0
}
