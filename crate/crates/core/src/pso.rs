//! Global-best particle swarm with linearly decreasing inertia.
//!
//! Population is `5 * D`, both acceleration coefficients are 2, inertia runs
//! from 0.9 down to 0.4. Velocities start at zero and are clamped per
//! dimension to half the search range; positions are clamped to the bounds.

use crate::benchmarks::Objective;
use crate::record::{RunRecord, TracePoint};
use crate::rng::{EvalCounter, RngStream};
use crate::space::{clamp_in_place, random_point_in_bounds};
use crate::Result;

pub const W_START: f64 = 0.9;
pub const W_END: f64 = 0.4;
pub const C1: f64 = 2.0;
pub const C2: f64 = 2.0;

pub fn population_for(dimension: usize) -> usize {
    5 * dimension
}

/// Inertia weight at iteration `itr` of `itr_max`.
pub fn inertia_weight(itr: usize, itr_max: usize) -> f64 {
    if itr_max == 0 {
        return W_START;
    }
    W_START - (W_START - W_END) * itr as f64 / itr_max as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub pbest_position: Vec<f64>,
    pub pbest_fitness: f64,
}

#[derive(Clone, Debug)]
pub struct PsoState {
    pub particles: Vec<Particle>,
    pub gbest_position: Vec<f64>,
    pub gbest_fitness: f64,
    pub iteration: usize,
    vmax: f64,
}

impl PsoState {
    pub fn init(obj: &Objective, rng: &mut RngStream, counter: &mut EvalCounter) -> Result<Self> {
        let dim = obj.dimension();
        let bounds = obj.bounds();
        let mut particles = Vec::with_capacity(population_for(dim));
        for _ in 0..population_for(dim) {
            let position = random_point_in_bounds(bounds, dim, rng)?.into_vec();
            let fitness = obj.evaluate_counted(&position, counter);
            particles.push(Particle {
                velocity: vec![0.0; dim],
                pbest_position: position.clone(),
                pbest_fitness: fitness,
                position,
            });
        }
        let mut best = 0;
        for (i, p) in particles.iter().enumerate() {
            if p.pbest_fitness < particles[best].pbest_fitness {
                best = i;
            }
        }
        Ok(PsoState {
            gbest_position: particles[best].pbest_position.clone(),
            gbest_fitness: particles[best].pbest_fitness,
            particles,
            iteration: 0,
            vmax: bounds.range_length() / 2.0,
        })
    }

    pub fn vmax(&self) -> f64 {
        self.vmax
    }

    /// One synchronous velocity/position update of every particle. Returns
    /// the inertia weight used.
    pub fn step_iteration(
        &mut self,
        obj: &Objective,
        itr_max: usize,
        rng: &mut RngStream,
        counter: &mut EvalCounter,
    ) -> f64 {
        let w = inertia_weight(self.iteration + 1, itr_max);
        let bounds = obj.bounds();
        for p in &mut self.particles {
            for d in 0..p.position.len() {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                let v = w * p.velocity[d]
                    + C1 * r1 * (p.pbest_position[d] - p.position[d])
                    + C2 * r2 * (self.gbest_position[d] - p.position[d]);
                p.velocity[d] = v.clamp(-self.vmax, self.vmax);
                p.position[d] += p.velocity[d];
            }
            clamp_in_place(&mut p.position, bounds);
            let fitness = obj.evaluate_counted(&p.position, counter);
            if fitness < p.pbest_fitness {
                p.pbest_fitness = fitness;
                p.pbest_position.clone_from(&p.position);
            }
        }
        // gbest is refreshed once per iteration, after every particle moved.
        for p in &self.particles {
            if p.pbest_fitness < self.gbest_fitness {
                self.gbest_fitness = p.pbest_fitness;
                self.gbest_position.clone_from(&p.pbest_position);
            }
        }
        self.iteration += 1;
        w
    }
}

pub fn run(
    obj: &Objective,
    itr_max: usize,
    rng: &mut RngStream,
    run_index: u64,
) -> Result<RunRecord> {
    let mut counter = EvalCounter::new();
    let mut state = PsoState::init(obj, rng, &mut counter)?;
    let point = |s: &PsoState, w: f64| TracePoint {
        iteration: s.iteration,
        best_fitness: s.gbest_fitness,
        visual: 0.0,
        step: 0.0,
        mw: w,
    };
    let mut trace = Vec::with_capacity(itr_max + 1);
    trace.push(point(&state, inertia_weight(0, itr_max)));
    for _ in 0..itr_max {
        let w = state.step_iteration(obj, itr_max, rng, &mut counter);
        trace.push(point(&state, w));
    }
    Ok(RunRecord {
        run_index,
        trace,
        final_best: state.gbest_fitness,
        best_position: state.gbest_position,
        evaluations: counter.count(),
    })
}
