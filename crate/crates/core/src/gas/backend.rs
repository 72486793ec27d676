use std::collections::HashMap;

use rand::Rng;

use super::{grover_probability, GasRng};
use crate::circuits::{build_oracle, Circuit, OracleOptions};
use crate::error::{Error, Result};
use crate::model::{FeasibleSet, ModelConfig, Schedule};
use crate::simulator::{QuantumState, SparseState, StateVector, DEFAULT_MAX_QUBITS};

/// Runs Grover's search for a cost threshold and returns a measured schedule.
pub trait MeasurementBackend {
    fn n_days(&self) -> usize;

    /// Search space size `N = 16^n_days`.
    fn search_space(&self) -> u64 {
        1u64 << (4 * self.n_days())
    }

    /// Exact shop-register distribution after `j` rotations with the
    /// oracle marking feasible schedules of cost strictly below `c_max`.
    fn distribution(&mut self, c_max: i64, j: u64) -> Result<Vec<f64>>;

    fn measure(&mut self, c_max: i64, j: u64, rng: &mut GasRng) -> Result<Schedule>;
}

/// Samples from the closed-form Grover distribution of a known feasible set.
#[derive(Debug, Clone)]
pub struct AnalyticBackend {
    n_days: usize,
    n: u64,
    /// Feasible `(index, cost)` sorted by index.
    costs: Vec<(u64, i64)>,
    marked: HashMap<i64, Vec<u64>>,
}

impl AnalyticBackend {
    pub fn new(feasible: &FeasibleSet) -> Result<Self> {
        let n = feasible.total_space_size;
        let n_days = (n.trailing_zeros() / 4) as usize;
        if n == 0 || 1u64 << (4 * n_days) != n {
            return Err(Error::InvalidArgument(format!("search space {n} is not a power of 16")));
        }
        let mut costs = feasible.indexed_costs();
        costs.sort_unstable();
        Ok(AnalyticBackend { n_days, n, costs, marked: HashMap::new() })
    }

    /// Indices of feasible schedules with cost below `c_max`, ascending.
    pub fn marked(&mut self, c_max: i64) -> &[u64] {
        let costs = &self.costs;
        self.marked.entry(c_max).or_insert_with(|| costs.iter().filter(|(_, c)| *c < c_max).map(|(i, _)| *i).collect())
    }
}

/// The `k`-th index in `0..n` that is not in the ascending list `marked`.
fn nth_unmarked(marked: &[u64], k: u64) -> u64 {
    let mut idx = k;
    for &m in marked {
        if m <= idx {
            idx += 1;
        } else {
            break;
        }
    }
    idx
}

impl MeasurementBackend for AnalyticBackend {
    fn n_days(&self) -> usize {
        self.n_days
    }

    fn distribution(&mut self, c_max: i64, j: u64) -> Result<Vec<f64>> {
        let n = self.n;
        let marked = self.marked(c_max).to_vec();
        let t = marked.len() as u64;
        let p = grover_probability(t, n, j)?;
        let unmarked = if t == n { 0.0 } else { (1.0 - p) / (n - t) as f64 };
        let mut dist = vec![unmarked; n as usize];
        for &i in &marked {
            dist[i as usize] = p / t as f64;
        }
        Ok(dist)
    }

    fn measure(&mut self, c_max: i64, j: u64, rng: &mut GasRng) -> Result<Schedule> {
        let n = self.n;
        let n_days = self.n_days;
        let marked = self.marked(c_max);
        let t = marked.len() as u64;
        let p = grover_probability(t, n, j)?;
        let index = if t > 0 && (t == n || rng.gen::<f64>() < p) {
            marked[rng.gen_range(0..marked.len())]
        } else {
            nth_unmarked(marked, rng.gen_range(0..n - t))
        };
        Ok(Schedule::from_index(index, n_days))
    }
}

/// Amplitude storage used by [`StatevectorBackend`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Storage {
    /// Full `2^n` vector, subject to the qubit guard.
    #[default]
    Dense,
    /// Nonzero amplitudes only; same amplitudes, far less memory traffic
    /// because the oracle keeps the support small.
    Sparse,
}

/// Simulates the full Grover circuit and reads the shop register exactly.
///
/// Distributions are cached per `(c_max, j)`; all `j` up to the requested
/// one are recorded while simulating.
#[derive(Debug, Clone)]
pub struct StatevectorBackend {
    config: ModelConfig,
    options: OracleOptions,
    max_qubits: usize,
    storage: Storage,
    cache: HashMap<(i64, u64), Vec<f64>>,
}

impl StatevectorBackend {
    pub fn new(config: &ModelConfig) -> Result<Self> {
        config.validate()?;
        Ok(StatevectorBackend {
            config: config.clone(),
            options: OracleOptions { with_cost: true, ..Default::default() },
            max_qubits: DEFAULT_MAX_QUBITS,
            storage: Storage::Dense,
            cache: HashMap::new(),
        })
    }

    pub fn with_options(mut self, options: OracleOptions) -> Self {
        self.options = options;
        self
    }

    pub fn with_max_qubits(mut self, max_qubits: usize) -> Self {
        self.max_qubits = max_qubits;
        self
    }

    pub fn with_storage(mut self, storage: Storage) -> Self {
        self.storage = storage;
        self.cache.clear();
        self
    }

    /// Shop-register distributions for every `j` in `0..=max_j`.
    pub fn distributions(&mut self, c_max: i64, max_j: u64) -> Result<Vec<Vec<f64>>> {
        if (0..=max_j).any(|j| !self.cache.contains_key(&(c_max, j))) {
            let config = self.config.clone().with_c_max(self.options.with_cost.then_some(c_max));
            let oracle = build_oracle(&config, &self.options)?;
            let shops = oracle.layout.shop_qubits();
            let rotation = oracle.rotation();
            let snapshots = match self.storage {
                Storage::Dense => {
                    let state = StateVector::<f64>::with_limit(oracle.layout.n_qubits, self.max_qubits).map_err(
                        |e| match e {
                            Error::ResourceLimit { what, required, limit, .. } => Error::ResourceLimit {
                                what,
                                required,
                                limit,
                                hint: "use the analytic backend or sparse storage".into(),
                            },
                            other => other,
                        },
                    )?;
                    evolve(state, &oracle.prep, &rotation, &shops, max_j)?
                }
                Storage::Sparse => {
                    let state = SparseState::<f64>::new(oracle.layout.n_qubits)?;
                    evolve(state, &oracle.prep, &rotation, &shops, max_j)?
                }
            };
            for (j, d) in snapshots.into_iter().enumerate() {
                self.cache.insert((c_max, j as u64), d);
            }
        }
        Ok((0..=max_j).map(|j| self.cache[&(c_max, j)].clone()).collect())
    }
}

/// Shop marginals after `0..=max_j` rotations.
fn evolve<S: QuantumState<f64>>(
    mut state: S,
    prep: &Circuit,
    rotation: &Circuit,
    shops: &[usize],
    max_j: u64,
) -> Result<Vec<Vec<f64>>> {
    state.apply_all(prep.gates())?;
    let mut out = Vec::with_capacity(max_j as usize + 1);
    for j in 0..=max_j {
        if j > 0 {
            state.apply_all(rotation.gates())?;
        }
        out.push(state.marginal(shops)?);
    }
    Ok(out)
}

impl MeasurementBackend for StatevectorBackend {
    fn n_days(&self) -> usize {
        self.config.n_days
    }

    fn distribution(&mut self, c_max: i64, j: u64) -> Result<Vec<f64>> {
        if let Some(d) = self.cache.get(&(c_max, j)) {
            return Ok(d.clone());
        }
        Ok(self.distributions(c_max, j)?.pop().expect("j + 1 entries"))
    }

    fn measure(&mut self, c_max: i64, j: u64, rng: &mut GasRng) -> Result<Schedule> {
        let dist = self.distribution(c_max, j)?;
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut index = dist.len() - 1;
        for (i, p) in dist.iter().enumerate() {
            acc += p;
            if u < acc {
                index = i;
                break;
            }
        }
        Ok(Schedule::from_index(index as u64, self.config.n_days))
    }
}
