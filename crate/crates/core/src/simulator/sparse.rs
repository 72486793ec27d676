use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::BuildHasherDefault;

use num_complex::Complex;

use super::dense::phase_factor;
use super::{check_subset, Gate, QuantumState};
use crate::error::{invalid_arg, Result};
use crate::scalar::Real;

type Map<T> = HashMap<u64, Complex<T>, BuildHasherDefault<DefaultHasher>>;

/// Amplitudes below this magnitude are dropped after a Hadamard.
const PRUNE: f64 = 1e-13;

/// Hash-map state holding only nonzero amplitudes, for up to 64 qubits.
///
/// Cheap when the circuit keeps the support small, as the oracle does:
/// its arithmetic is a permutation of basis states plus phases.
#[derive(Debug, Clone)]
pub struct SparseState<T: Real> {
    n_qubits: usize,
    amps: Map<T>,
}

impl<T: Real> SparseState<T> {
    pub fn new(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: u64) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 64 {
            return Err(invalid_arg(format!("sparse state supports 1..=64 qubits, got {n_qubits}")));
        }
        if n_qubits < 64 && index >> n_qubits != 0 {
            return Err(invalid_arg(format!("basis index {index} out of range")));
        }
        let mut amps = Map::default();
        amps.insert(index, Complex::new(T::one(), T::zero()));
        Ok(SparseState { n_qubits, amps })
    }

    /// Number of stored amplitudes.
    pub fn support(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, index: u64) -> Complex<T> {
        self.amps.get(&index).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Complex<T>)> + '_ {
        self.amps.iter().map(|(&i, &a)| (i, a))
    }

    fn apply_h(&mut self, t: usize) {
        let bit = 1u64 << t;
        let s = T::FRAC_1_SQRT_2();
        let zero = || Complex::new(T::zero(), T::zero());
        let mut next = Map::with_capacity_and_hasher(self.amps.len() * 2, Default::default());
        for (&i, &a) in &self.amps {
            let a = a.scale(s);
            let lo = i & !bit;
            let e = next.entry(lo).or_insert_with(zero);
            *e = *e + a;
            let hi = if i & bit == 0 { a } else { -a };
            let e = next.entry(lo | bit).or_insert_with(zero);
            *e = *e + hi;
        }
        let eps = T::of(PRUNE);
        next.retain(|_, a| a.norm() > eps);
        self.amps = next;
    }

    fn apply_x(&mut self, cmask: u64, t: usize) {
        let bit = 1u64 << t;
        let old = std::mem::take(&mut self.amps);
        self.amps = old.into_iter().map(|(i, a)| if i & cmask == cmask { (i ^ bit, a) } else { (i, a) }).collect();
    }

    fn apply_diag(&mut self, mask: u64, factor: Complex<T>) {
        for (i, a) in self.amps.iter_mut() {
            if i & mask == mask {
                *a = *a * factor;
            }
        }
    }
}

impl<T: Real> QuantumState<T> for SparseState<T> {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        let t = gate.target();
        let cmask = gate.control_mask();
        let mask = cmask | (1u64 << t);
        let minus = Complex::new(-T::one(), T::zero());
        match gate {
            Gate::H(_) => self.apply_h(t),
            Gate::X(_) | Gate::Cnot { .. } | Gate::Toffoli { .. } | Gate::Mcx { .. } => self.apply_x(cmask, t),
            Gate::Z(_) | Gate::Mcz { .. } => self.apply_diag(mask, minus),
            Gate::Phase { angle, .. } | Gate::CPhase { angle, .. } | Gate::CCPhase { angle, .. } => {
                self.apply_diag(mask, phase_factor(*angle))
            }
            Gate::Measure(_) => {}
            Gate::InitMinus(_) => {
                self.apply_x(0, t);
                self.apply_h(t);
            }
            Gate::InitMinusDagger(_) => {
                self.apply_h(t);
                self.apply_x(0, t);
            }
        }
        Ok(())
    }

    fn marginal(&self, subset: &[usize]) -> Result<Vec<T>> {
        check_subset(subset, self.n_qubits)?;
        if subset.len() > 26 {
            return Err(invalid_arg("sparse marginal limited to 26 qubits"));
        }
        let mut out = vec![T::zero(); 1usize << subset.len()];
        for (&i, a) in &self.amps {
            let v = super::register_value(i, subset) as usize;
            out[v] = out[v] + a.norm_sqr();
        }
        Ok(out)
    }

    fn norm_sqr(&self) -> T {
        self.amps.values().fold(T::zero(), |s, a| s + a.norm_sqr())
    }
}
