//! State vector simulation.
//!
//! Qubit `q` is bit `1 << q` of the amplitude index. Multi-qubit integer
//! registers are read with their first listed qubit as the most significant
//! bit; see [`register_value`].

mod dense;
mod dump;
mod gate;
mod sparse;

use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use dense::{StateVector, DEFAULT_MAX_QUBITS};
pub use dump::{read_dump, write_dump, DUMP_MAGIC};
pub use gate::{Gate, GateKind};
pub use sparse::SparseState;

use crate::error::{invalid_arg, Result};
use crate::scalar::Real;

/// Operations shared by the dense and sparse states.
pub trait QuantumState<T: Real> {
    fn n_qubits(&self) -> usize;

    fn apply(&mut self, gate: &Gate) -> Result<()>;

    /// Marginal distribution over `subset`, indexed by the subset value
    /// with `subset[0]` as the most significant bit.
    fn marginal(&self, subset: &[usize]) -> Result<Vec<T>>;

    fn norm_sqr(&self) -> T;

    fn apply_all<'a, I>(&mut self, gates: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a Gate>,
        Self: Sized,
    {
        for gate in gates {
            self.apply(gate)?;
        }
        Ok(())
    }

    /// Marginal keyed by bitstring, omitting zero-probability outcomes.
    fn probabilities(&self, subset: &[usize]) -> Result<BTreeMap<String, T>> {
        let width = subset.len();
        Ok(self
            .marginal(subset)?
            .into_iter()
            .enumerate()
            .filter(|(_, p)| *p > T::zero())
            .map(|(v, p)| (bit_string(v as u64, width), p))
            .collect())
    }

    /// Draws `shots` outcomes on `subset`; deterministic for a given seed.
    fn sample(&self, subset: &[usize], shots: usize, seed: u64) -> Result<BTreeMap<String, usize>> {
        if shots == 0 {
            return Err(invalid_arg("shots must be at least 1"));
        }
        let width = subset.len();
        let weights: Vec<f64> = self.marginal(subset)?.into_iter().map(|p| p.as_f64().max(0.0)).collect();
        let dist = WeightedIndex::new(&weights).map_err(|e| invalid_arg(format!("cannot sample: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            let v = dist.sample(&mut rng);
            *counts.entry(bit_string(v as u64, width)).or_insert(0) += 1;
        }
        Ok(counts)
    }
}

/// Value of `register` in basis index `index`, first qubit most significant.
#[inline]
pub fn register_value(index: u64, register: &[usize]) -> u64 {
    register.iter().fold(0u64, |acc, &q| (acc << 1) | ((index >> q) & 1))
}

/// Basis index with `register` set to `value` (other bits from `base`).
pub fn with_register_value(base: u64, register: &[usize], value: u64) -> u64 {
    let m = register.len();
    register.iter().enumerate().fold(base, |idx, (i, &q)| {
        let bit = (value >> (m - 1 - i)) & 1;
        (idx & !(1u64 << q)) | (bit << q)
    })
}

pub fn bit_string(value: u64, width: usize) -> String {
    (0..width).rev().map(|b| if (value >> b) & 1 == 1 { '1' } else { '0' }).collect()
}

pub(crate) fn check_subset(subset: &[usize], n_qubits: usize) -> Result<()> {
    if subset.is_empty() {
        return Err(invalid_arg("qubit subset is empty"));
    }
    if subset.len() > 63 {
        return Err(invalid_arg("qubit subset wider than 63 bits"));
    }
    for (i, &q) in subset.iter().enumerate() {
        if q >= n_qubits {
            return Err(invalid_arg(format!("qubit {q} out of range for {n_qubits} qubits")));
        }
        if subset[..i].contains(&q) {
            return Err(invalid_arg(format!("qubit {q} listed twice")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn register_round_trip() {
        let reg = [4, 1, 7];
        for v in 0..8 {
            let idx = with_register_value(0b1010_0000_0000, &reg, v);
            assert_eq!(register_value(idx, &reg), v);
        }
        assert_eq!(bit_string(5, 4), "0101");
    }
}
