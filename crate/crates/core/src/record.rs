//! Per-run convergence traces.

/// One row of a convergence trace.
///
/// For AFSA runs `visual`, `step` and `mw` are the values in effect after
/// the iteration finished (`mw` is the weight that produced them; 1.0 at
/// iteration 0). PSO runs store the inertia weight in `mw` and zero in
/// `visual` and `step`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracePoint {
    pub iteration: usize,
    pub best_fitness: f64,
    pub visual: f64,
    pub step: f64,
    pub mw: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub run_index: u64,
    /// Best-so-far fitness per iteration, starting at iteration 0.
    pub trace: Vec<TracePoint>,
    pub final_best: f64,
    pub best_position: Vec<f64>,
    pub evaluations: u64,
}

impl RunRecord {
    pub fn is_monotone(&self) -> bool {
        self.trace
            .windows(2)
            .all(|w| w[1].best_fitness <= w[0].best_fitness)
    }
}
