use crate::error::{invalid_arg, Result};
use crate::scalar::Real;

/// Amplitude structure of `j` Grover rotations with `t` of `n` states marked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverSpectrum<T: Real> {
    pub t: u64,
    pub n: u64,
    /// `sin^2(theta) = t / n`.
    pub theta: T,
}

impl<T: Real> GroverSpectrum<T> {
    pub fn new(t: u64, n: u64) -> Result<Self> {
        if n == 0 || t > n {
            return Err(invalid_arg(format!("need 0 <= t <= N and N > 0, got t={t}, N={n}")));
        }
        let ratio = T::of(t as f64) / T::of(n as f64);
        Ok(GroverSpectrum { t, n, theta: ratio.sqrt().asin() })
    }

    fn angle(&self, j: u64) -> T {
        T::of((2 * j + 1) as f64) * self.theta
    }

    /// Amplitude of each marked state, `sin((2j+1) theta) / sqrt(t)`.
    pub fn marked_amplitude(&self, j: u64) -> T {
        if self.t == 0 {
            return T::zero();
        }
        self.angle(j).sin() / T::of(self.t as f64).sqrt()
    }

    /// Amplitude of each unmarked state, `cos((2j+1) theta) / sqrt(N - t)`.
    pub fn unmarked_amplitude(&self, j: u64) -> T {
        if self.t == self.n {
            return T::zero();
        }
        self.angle(j).cos() / T::of((self.n - self.t) as f64).sqrt()
    }

    /// Total probability on marked states, `t * k_j^2`.
    pub fn probability(&self, j: u64) -> T {
        if self.t == 0 {
            return T::zero();
        }
        let s = self.angle(j).sin();
        s * s
    }
}

/// `sin^2((2j+1) asin(sqrt(t/N)))`; zero when nothing is marked.
pub fn grover_probability(t: u64, n: u64, j: u64) -> Result<f64> {
    Ok(GroverSpectrum::<f64>::new(t, n)?.probability(j))
}

/// Rotation count putting `(2j+1) theta` closest to `pi/2`, i.e.
/// `round(pi/(4 theta) - 1/2)`; approximately `pi/4 * sqrt(N/t)` for small
/// `t/N`. At least 1 unless every state is marked.
pub fn optimal_rotations(t: u64, n: u64) -> Result<u64> {
    if t == 0 || t > n {
        return Err(invalid_arg(format!("need 1 <= t <= N, got t={t}, N={n}")));
    }
    if t == n {
        return Ok(0);
    }
    let theta = (t as f64 / n as f64).sqrt().asin();
    let j = (std::f64::consts::FRAC_PI_4 / theta - 0.5).round() as u64;
    Ok(j.max(1))
}
