//! Artificial fish swarm engine.
//!
//! Each fish holds a position and its objective value (lower is better).
//! Per iteration, every fish in index order tries the swarm and follow
//! behaviors; the better of the two targets wins, and if neither offers an
//! improvement the fish preys, falling back to a free move. After all fish
//! have moved, visual and step are scaled by the schedule's movement weight.
//!
//! `visual` is the per-coordinate half-width of the box prey samples from.
//! Two fish see each other when their Euclidean distance is below the
//! radius of the ball circumscribing that box, `visual * sqrt(D)`. Swarm,
//! follow and free moves travel at most `step`.
//!
//! Evaluation accounting per fish and iteration: one evaluation for the
//! neighborhood center (only when the neighborhood is non-empty and
//! uncrowded), `try_number` prey candidates when prey runs, and one for the
//! landed position. Follow reuses the cached fitness of neighbors.

use crate::benchmarks::Objective;
use crate::record::{RunRecord, TracePoint};
use crate::rng::{EvalCounter, RngStream};
use crate::schedules::{apply_update, MwSchedule};
use crate::space::{clamp_in_place, distance_unchecked, random_point_in_bounds, Bounds, Point};
use crate::{Error, Result};

/// Targets closer than this are treated as coinciding with the fish.
const ZERO_DISTANCE: f64 = 1e-15;

#[derive(Clone, Debug, PartialEq)]
pub struct SwarmParams {
    pub population: usize,
    pub visual0: f64,
    pub step0: f64,
    pub try_number: usize,
    /// Crowd factor, `0 < delta < 1`.
    pub delta: f64,
    pub itr_max: usize,
}

impl SwarmParams {
    /// Population 30, try-number 10, crowd factor 0.5, visual 40% and step
    /// 25% of the search range.
    pub fn defaults_for(obj: &Objective, itr_max: usize) -> Self {
        let range = obj.bounds().range_length();
        SwarmParams {
            population: 30,
            visual0: 0.40 * range,
            step0: 0.25 * range,
            try_number: 10,
            delta: 0.5,
            itr_max,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.population == 0 {
            return bad("population must be positive".into());
        }
        if !(self.visual0 > 0.0 && self.visual0.is_finite()) {
            return bad(format!("visual0 must be positive, got {}", self.visual0));
        }
        if !(self.step0 > 0.0 && self.step0.is_finite()) {
            return bad(format!("step0 must be positive, got {}", self.step0));
        }
        if self.try_number == 0 {
            return bad("try_number must be positive".into());
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!(
                "crowd factor must lie in (0, 1), got {}",
                self.delta
            ));
        }
        Ok(())
    }

    /// Upper bound on evaluations spent in one call to
    /// [`SwarmState::step_iteration`].
    pub fn max_evals_per_iteration(&self) -> u64 {
        (self.population * (2 + self.try_number + 1)) as u64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fish {
    pub position: Point,
    pub fitness: f64,
}

/// Where swarm or follow would move a fish, and how good the point it is
/// heading for is.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub position: Point,
    pub target_fitness: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwarmState {
    params: SwarmParams,
    bounds: Bounds,
    pub fish: Vec<Fish>,
    pub bulletin_position: Point,
    pub bulletin_fitness: f64,
    pub visual: f64,
    pub step: f64,
    pub iteration: usize,
    /// Weight applied by the most recent iteration (1.0 before the first).
    pub last_mw: f64,
}

impl SwarmState {
    /// Places `population` fish uniformly at random and evaluates them.
    pub fn init(
        obj: &Objective,
        params: SwarmParams,
        rng: &mut RngStream,
        counter: &mut EvalCounter,
    ) -> Result<Self> {
        params.validate()?;
        let bounds = obj.bounds();
        let mut fish = Vec::with_capacity(params.population);
        for _ in 0..params.population {
            let position = random_point_in_bounds(bounds, obj.dimension(), rng)?;
            let fitness = obj.evaluate_counted(&position, counter);
            fish.push(Fish { position, fitness });
        }
        Ok(Self::from_fish(params, bounds, fish))
    }

    /// Builds a state from explicit fish; the bulletin is the best of them.
    pub fn from_fish(params: SwarmParams, bounds: Bounds, fish: Vec<Fish>) -> Self {
        assert!(!fish.is_empty(), "swarm needs at least one fish");
        let best = argmin(fish.iter().map(|f| f.fitness)).unwrap_or(0);
        SwarmState {
            visual: params.visual0,
            step: params.step0,
            bulletin_position: fish[best].position.clone(),
            bulletin_fitness: fish[best].fitness,
            fish,
            params,
            bounds,
            iteration: 0,
            last_mw: 1.0,
        }
    }

    pub fn params(&self) -> &SwarmParams {
        &self.params
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Radius of the perception ball: the ball circumscribing the prey box,
    /// `visual * sqrt(D)`.
    pub fn perception_radius(&self) -> f64 {
        self.visual * (self.fish[0].position.dim() as f64).sqrt()
    }

    /// Indices `j != i` strictly within the perception radius of fish `i`.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let xi = &self.fish[i].position;
        let radius = self.perception_radius();
        self.fish
            .iter()
            .enumerate()
            .filter(|&(j, f)| j != i && distance_unchecked(xi, &f.position) < radius)
            .map(|(j, _)| j)
            .collect()
    }

    fn crowded(&self, n_neighbors: usize) -> bool {
        n_neighbors as f64 / self.params.population as f64 >= self.params.delta
    }

    /// Moves from `from` towards `target` by `step * U(0,1)`, clamped.
    fn move_toward(&self, from: &[f64], target: &[f64], rng: &mut RngStream) -> Point {
        let diff: Vec<f64> = target.iter().zip(from).map(|(t, f)| t - f).collect();
        let norm = diff.iter().map(|d| d * d).sum::<f64>().sqrt();
        if norm < ZERO_DISTANCE {
            return Point::from_vec_unchecked(from.to_vec());
        }
        let len = self.step * rng.uniform() / norm;
        let mut next: Vec<f64> = from.iter().zip(&diff).map(|(f, d)| f + len * d).collect();
        clamp_in_place(&mut next, self.bounds);
        Point::from_vec_unchecked(next)
    }

    /// Random move of length at most `step` in a uniform direction.
    pub fn free_move(&self, i: usize, rng: &mut RngStream) -> Point {
        let xi = &self.fish[i].position;
        let dir = rng.unit_direction(xi.dim());
        let len = self.step * rng.uniform();
        let mut next: Vec<f64> = xi.iter().zip(&dir).map(|(x, d)| x + len * d).collect();
        clamp_in_place(&mut next, self.bounds);
        Point::from_vec_unchecked(next)
    }

    /// Samples `try_number` points from the box of half-width `visual`
    /// around the fish and moves onto the best of them if it beats the
    /// fish. Falls back to [`free_move`](Self::free_move).
    pub fn prey(
        &self,
        i: usize,
        obj: &Objective,
        rng: &mut RngStream,
        counter: &mut EvalCounter,
    ) -> Point {
        let Fish {
            position: xi,
            fitness: fi,
        } = &self.fish[i];
        let mut best: Option<(Vec<f64>, f64)> = None;
        for _ in 0..self.params.try_number {
            let mut candidate: Vec<f64> = xi
                .iter()
                .map(|x| x + self.visual * rng.uniform_symmetric())
                .collect();
            clamp_in_place(&mut candidate, self.bounds);
            let fv = obj.evaluate_counted(&candidate, counter);
            if fv < *fi && best.as_ref().is_none_or(|(_, fb)| fv < *fb) {
                best = Some((candidate, fv));
            }
        }
        match best {
            Some((candidate, _)) => Point::from_vec_unchecked(candidate),
            None => self.free_move(i, rng),
        }
    }

    /// Heads for the neighborhood center when it beats the fish and the
    /// neighborhood is not crowded.
    pub fn swarm_behavior(
        &self,
        i: usize,
        obj: &Objective,
        rng: &mut RngStream,
        counter: &mut EvalCounter,
    ) -> Option<Candidate> {
        let neighbors = self.neighbors(i);
        if neighbors.is_empty() || self.crowded(neighbors.len()) {
            return None;
        }
        let dim = obj.dimension();
        let mut center = vec![0.0; dim];
        for &j in &neighbors {
            for (c, x) in center.iter_mut().zip(self.fish[j].position.iter()) {
                *c += x;
            }
        }
        let n = neighbors.len() as f64;
        center.iter_mut().for_each(|c| *c /= n);

        let fc = obj.evaluate_counted(&center, counter);
        if fc < self.fish[i].fitness {
            Some(Candidate {
                position: self.move_toward(&self.fish[i].position, &center, rng),
                target_fitness: fc,
            })
        } else {
            None
        }
    }

    /// Heads for the best neighbor (lowest index on ties) when it beats the
    /// fish and the neighborhood is not crowded.
    pub fn follow_behavior(&self, i: usize, rng: &mut RngStream) -> Option<Candidate> {
        let neighbors = self.neighbors(i);
        if neighbors.is_empty() || self.crowded(neighbors.len()) {
            return None;
        }
        let k = argmin(neighbors.iter().map(|&j| self.fish[j].fitness))?;
        let best = &self.fish[neighbors[k]];
        if best.fitness < self.fish[i].fitness {
            Some(Candidate {
                position: self.move_toward(&self.fish[i].position, &best.position, rng),
                target_fitness: best.fitness,
            })
        } else {
            None
        }
    }

    /// Moves every fish once, then applies the iteration's movement weight.
    pub fn step_iteration(
        &mut self,
        obj: &Objective,
        schedule: &MwSchedule,
        rng: &mut RngStream,
        counter: &mut EvalCounter,
    ) -> Result<()> {
        if self.iteration >= schedule.itr_max() {
            return Err(Error::IterationOutOfRange {
                itr: self.iteration + 1,
                itr_max: schedule.itr_max(),
            });
        }
        for i in 0..self.fish.len() {
            let swarm = self.swarm_behavior(i, obj, rng, counter);
            let follow = self.follow_behavior(i, rng);
            let chosen = match (swarm, follow) {
                (Some(s), Some(f)) => Some(if s.target_fitness < f.target_fitness {
                    s
                } else {
                    f
                }),
                (s, f) => s.or(f),
            };
            let position = match chosen {
                Some(c) => c.position,
                None => self.prey(i, obj, rng, counter),
            };
            let fitness = obj.evaluate_counted(&position, counter);
            if fitness < self.bulletin_fitness {
                self.bulletin_fitness = fitness;
                self.bulletin_position = position.clone();
            }
            self.fish[i] = Fish { position, fitness };
        }

        let mw = schedule.mw_at(self.iteration + 1, rng)?;
        (self.visual, self.step) = apply_update(self.visual, self.step, mw)?;
        self.last_mw = mw;
        self.iteration += 1;
        Ok(())
    }

    fn trace_point(&self) -> TracePoint {
        TracePoint {
            iteration: self.iteration,
            best_fitness: self.bulletin_fitness,
            visual: self.visual,
            step: self.step,
            mw: self.last_mw,
        }
    }
}

/// Runs `params.itr_max` iterations from a fresh random swarm.
pub fn run(
    obj: &Objective,
    params: &SwarmParams,
    schedule: &MwSchedule,
    rng: &mut RngStream,
    run_index: u64,
) -> Result<RunRecord> {
    if params.itr_max > 0 && schedule.itr_max() != params.itr_max {
        return Err(Error::InvalidParameter(format!(
            "schedule horizon {} differs from itr_max {}",
            schedule.itr_max(),
            params.itr_max
        )));
    }
    let mut counter = EvalCounter::new();
    let mut state = SwarmState::init(obj, params.clone(), rng, &mut counter)?;
    let mut trace = Vec::with_capacity(params.itr_max + 1);
    trace.push(state.trace_point());
    for _ in 0..params.itr_max {
        state.step_iteration(obj, schedule, rng, &mut counter)?;
        trace.push(state.trace_point());
    }
    Ok(RunRecord {
        run_index,
        trace,
        final_best: state.bulletin_fitness,
        best_position: state.bulletin_position.into_vec(),
        evaluations: counter.count(),
    })
}

/// Index of the smallest value; the first one wins ties.
fn argmin(values: impl Iterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.enumerate() {
        if best.is_none_or(|(_, b)| v < b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}
