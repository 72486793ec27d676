use num_complex::Complex;

use super::{check_subset, Gate, QuantumState};
use crate::error::{invalid_arg, Error, Result};
use crate::scalar::Real;

/// Largest register the dense simulator allocates unless told otherwise.
pub const DEFAULT_MAX_QUBITS: usize = 28;

/// Dense vector of `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// `|0...0>` on `n_qubits`, refusing more than [`DEFAULT_MAX_QUBITS`].
    pub fn new(n_qubits: usize) -> Result<Self> {
        Self::with_limit(n_qubits, DEFAULT_MAX_QUBITS)
    }

    pub fn with_limit(n_qubits: usize, max_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(invalid_arg("state needs at least one qubit"));
        }
        if n_qubits > max_qubits || n_qubits >= usize::BITS as usize - 5 {
            let bytes = (std::mem::size_of::<Complex<T>>() as u128) << n_qubits;
            return Err(Error::ResourceLimit {
                what: format!("a {n_qubits}-qubit state vector"),
                required: format!("{bytes} bytes"),
                limit: format!("{max_qubits} qubits"),
                hint: "use the analytic backend, the sparse simulator, or raise the qubit limit".into(),
            });
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1usize << n_qubits];
        amps[0] = Complex::new(T::one(), T::zero());
        Ok(StateVector { n_qubits, amps })
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: u64) -> Result<Self> {
        let mut s = Self::new(n_qubits)?;
        if index >= s.amps.len() as u64 {
            return Err(invalid_arg(format!("basis index {index} out of range")));
        }
        s.amps[0] = Complex::new(T::zero(), T::zero());
        s.amps[index as usize] = Complex::new(T::one(), T::zero());
        Ok(s)
    }

    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(invalid_arg(format!("amplitude count {len} is not a power of two >= 2")));
        }
        Ok(StateVector { n_qubits: len.trailing_zeros() as usize, amps })
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: u64) -> Complex<T> {
        self.amps[index as usize]
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    /// Largest per-amplitude distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max)
    }

    fn apply_h(&mut self, t: usize) {
        let half = 1usize << t;
        let s = T::FRAC_1_SQRT_2();
        for chunk in self.amps.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = (x + y).scale(s);
                *b = (x - y).scale(s);
            }
        }
    }

    fn apply_x(&mut self, cmask: usize, t: usize) {
        let bit = 1usize << t;
        if cmask == 0 {
            for chunk in self.amps.chunks_exact_mut(2 * bit) {
                let (lo, hi) = chunk.split_at_mut(bit);
                lo.swap_with_slice(hi);
            }
            return;
        }
        let mask = cmask | bit;
        for_each_superset(self.amps.len(), mask, |i| self.amps.swap(i, i ^ bit));
    }

    /// Multiplies every amplitude whose index has all `mask` bits by `factor`.
    fn apply_diag(&mut self, mask: usize, factor: Complex<T>) {
        for_each_superset(self.amps.len(), mask, |i| self.amps[i] = self.amps[i] * factor);
    }

    fn apply_neg(&mut self, mask: usize) {
        for_each_superset(self.amps.len(), mask, |i| self.amps[i] = -self.amps[i]);
    }
}

impl<T: Real> QuantumState<T> for StateVector<T> {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        let t = gate.target();
        let cmask = gate.control_mask() as usize;
        let mask = cmask | (1 << t);
        match gate {
            Gate::H(_) => self.apply_h(t),
            Gate::X(_) | Gate::Cnot { .. } | Gate::Toffoli { .. } | Gate::Mcx { .. } => self.apply_x(cmask, t),
            Gate::Z(_) | Gate::Mcz { .. } => self.apply_neg(mask),
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
        let width = subset.len();
        let mut out = vec![T::zero(); 1usize << width];
        // Split the index into a low and high half so each amplitude costs two lookups.
        let low_bits = 16.min(self.n_qubits);
        let low_pos = positions_in(subset, 0, low_bits);
        let high_pos = positions_in(subset, low_bits, self.n_qubits);
        let shifts: Vec<u64> = (0..1u64 << low_bits).map(|i| super::register_value(i, &low_pos)).collect();
        let high: Vec<u64> =
            (0..1u64 << (self.n_qubits - low_bits)).map(|h| super::register_value(h << low_bits, &high_pos)).collect();
        let low_mask = (1usize << low_bits) - 1;
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p == T::zero() {
                continue;
            }
            let v = shifts[i & low_mask] | high[i >> low_bits];
            out[v as usize] = out[v as usize] + p;
        }
        Ok(out)
    }

    fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |s, a| s + a.norm_sqr())
    }
}

/// Subset qubits restricted to `[lo, hi)`; others become bit 63, which is
/// always zero in an index, so each bit keeps its significance.
fn positions_in(subset: &[usize], lo: usize, hi: usize) -> Vec<usize> {
    subset.iter().map(|&q| if (lo..hi).contains(&q) { q } else { 63 }).collect()
}

pub(crate) fn phase_factor<T: Real>(angle: f64) -> Complex<T> {
    Complex::new(T::of(angle.cos()), T::of(angle.sin()))
}

/// Calls `f` on every index below `len` that has all bits of `mask` set,
/// in increasing order.
#[inline]
fn for_each_superset(len: usize, mask: usize, mut f: impl FnMut(usize)) {
    let mut i = mask;
    while i < len {
        f(i);
        i = (i + 1) | mask;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex<f64>, b: Complex<f64>) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn ground_state() {
        let s = StateVector::<f64>::new(3).unwrap();
        assert_eq!(s.amplitudes().len(), 8);
        assert_eq!(s.amplitude(0), Complex::new(1.0, 0.0));
        assert!(s.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn guard_names_bytes() {
        let err = StateVector::<f64>::new(29).unwrap_err().to_string();
        assert!(err.contains("8589934592 bytes"), "{err}");
        assert!(StateVector::<f64>::with_limit(3, 2).is_err());
    }

    #[test]
    fn hadamard_and_phase() {
        let mut s = StateVector::<f64>::new(1).unwrap();
        s.apply(&Gate::H(0)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.amplitude(0), Complex::new(r, 0.0)));
        assert!(close(s.amplitude(1), Complex::new(r, 0.0)));

        let mut one = StateVector::<f64>::basis(1, 1).unwrap();
        one.apply(&Gate::Phase { target: 0, angle: 0.7 }).unwrap();
        assert!(close(one.amplitude(1), Complex::from_polar(1.0, 0.7)));
        let mut zero = StateVector::<f64>::new(1).unwrap();
        zero.apply(&Gate::Phase { target: 0, angle: 0.7 }).unwrap();
        assert!(close(zero.amplitude(0), Complex::new(1.0, 0.0)));
    }

    #[test]
    fn toffoli_truth_table() {
        // |110> written q2 q1 q0: controls q2, q1 set.
        let mut s = StateVector::<f64>::basis(3, 0b110).unwrap();
        s.apply(&Gate::Toffoli { controls: [2, 1], target: 0 }).unwrap();
        assert!(close(s.amplitude(0b111), Complex::new(1.0, 0.0)));
        let mut s = StateVector::<f64>::basis(3, 0b010).unwrap();
        s.apply(&Gate::Toffoli { controls: [2, 1], target: 0 }).unwrap();
        assert!(close(s.amplitude(0b010), Complex::new(1.0, 0.0)));
    }

    #[test]
    fn init_minus() {
        let mut s = StateVector::<f64>::new(1).unwrap();
        s.apply(&Gate::InitMinus(0)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.amplitude(0), Complex::new(r, 0.0)));
        assert!(close(s.amplitude(1), Complex::new(-r, 0.0)));
        s.apply(&Gate::InitMinusDagger(0)).unwrap();
        assert!(close(s.amplitude(0), Complex::new(1.0, 0.0)));
    }

    #[test]
    fn out_of_range_rejected() {
        let mut s = StateVector::<f64>::new(2).unwrap();
        assert!(s.apply(&Gate::H(2)).is_err());
        assert!(s.apply(&Gate::Cnot { control: 1, target: 1 }).is_err());
    }

    #[test]
    fn marginals_and_sampling() {
        let mut s = StateVector::<f64>::new(2).unwrap();
        s.apply(&Gate::H(0)).unwrap();
        s.apply(&Gate::H(1)).unwrap();
        let p = s.probabilities(&[0, 1]).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.values().all(|v| (v - 0.25).abs() < 1e-12));

        let det = StateVector::<f64>::basis(4, 0b1010).unwrap();
        // subset [3,2,1,0] reads q3 first: 1010 -> "1010"; [0,1,2,3] -> "0101"
        let c = det.sample(&[0, 1, 2, 3], 50, 1).unwrap();
        assert_eq!(c.get("0101"), Some(&50));
        let a = s.sample(&[0, 1], 200, 9).unwrap();
        let b = s.sample(&[0, 1], 200, 9).unwrap();
        assert_eq!(a, b);
        assert!(s.sample(&[0], 0, 0).is_err());
    }

    #[test]
    fn marginal_wide_state() {
        let mut s = StateVector::<f64>::new(18).unwrap();
        s.apply(&Gate::X(17)).unwrap();
        s.apply(&Gate::H(3)).unwrap();
        let m = s.marginal(&[17, 3]).unwrap();
        assert!((m[0b10] - 0.5).abs() < 1e-12 && (m[0b11] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn single_precision_runs() {
        let mut s = StateVector::<f32>::new(3).unwrap();
        for q in 0..3 {
            s.apply(&Gate::H(q)).unwrap();
        }
        s.apply(&Gate::Mcz { controls: vec![0, 1], target: 2 }).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-5);
    }
}
