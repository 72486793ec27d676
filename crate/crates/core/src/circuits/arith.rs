//! Fourier-basis arithmetic on integer registers (first qubit = MSB).

use std::f64::consts::PI;

use super::Circuit;
use crate::error::{invalid_arg, Result};
use crate::simulator::Gate;

/// Phase placed on `register[j]` by a constant adder of `a`:
/// `2*pi*a / 2^(m-j)`, reduced to `[0, 2*pi)` from the exact integer.
pub fn adder_angle(a: i64, m: usize, j: usize) -> f64 {
    let modulus = 1i64 << (m - j);
    2.0 * PI * a.rem_euclid(modulus) as f64 / modulus as f64
}

/// Quantum Fourier transform without terminal swaps.
pub fn qft(register: &[usize]) -> Circuit {
    let mut c = Circuit::new(0);
    for (j, &target) in register.iter().enumerate() {
        c.push(Gate::H(target));
        for (k, &control) in register.iter().enumerate().skip(j + 1) {
            c.push(Gate::CPhase { control, target, angle: PI / (1u64 << (k - j)) as f64 });
        }
    }
    c
}

pub fn iqft(register: &[usize]) -> Circuit {
    qft(register).inverse()
}

/// `U(a)`: adds `a` modulo `2^m` to a register in the Fourier basis.
pub fn add_constant(register: &[usize], a: i64) -> Circuit {
    let m = register.len();
    let mut c = Circuit::new(0);
    for (j, &target) in register.iter().enumerate() {
        c.push(Gate::Phase { target, angle: adder_angle(a, m, j) });
    }
    c
}

/// `CU(a)`: [`add_constant`] applied only when every control is 1.
pub fn controlled_add_constant(controls: &[usize], register: &[usize], a: i64) -> Result<Circuit> {
    let m = register.len();
    let mut c = Circuit::new(0);
    for (j, &target) in register.iter().enumerate() {
        if controls.contains(&target) {
            return Err(invalid_arg(format!("qubit {target} is both control and target")));
        }
        c.push(Gate::controlled_phase(controls, target, adder_angle(a, m, j))?);
    }
    Ok(c)
}

/// `S(X)`: adds `values[code]` where `code` is read from the two `shop`
/// qubits. Each block fires on `|11>`; X gates move the other codes there.
pub fn add_shift_superposition(shop: [usize; 2], register: &[usize], values: [i64; 4]) -> Result<Circuit> {
    let [msb, lsb] = shop;
    let mut c = Circuit::new(0);
    c.append(&controlled_add_constant(&shop, register, values[3])?);
    c.push(Gate::X(lsb));
    c.append(&controlled_add_constant(&shop, register, values[2])?);
    c.push(Gate::X(msb));
    c.append(&controlled_add_constant(&shop, register, values[0])?);
    c.push(Gate::X(lsb));
    c.append(&controlled_add_constant(&shop, register, values[1])?);
    c.push(Gate::X(msb));
    Ok(c)
}

/// Values of the subtracting variant: `2^m - v` for each `v`.
pub fn negated_values(values: [i64; 4], m: usize) -> [i64; 4] {
    let modulus = 1i64 << m;
    values.map(|v| (modulus - v).rem_euclid(modulus))
}

/// Two's-complement negation of a Fourier-basis register:
/// back to the computational basis, flip every bit, forward again, add 1.
pub fn negate_register(register: &[usize]) -> Circuit {
    let mut c = iqft(register);
    for &q in register {
        c.push(Gate::X(q));
    }
    c.append(&qft(register));
    c.append(&add_constant(register, 1));
    c
}

/// `MAX(0, B)` on a computational-basis two's-complement register.
///
/// With one ancilla per bit, ancilla `i` takes `sign AND bit i` and is then
/// used to clear bit `i`; the last ancilla takes the sign before the sign is
/// cleared. With one ancilla fewer the second bit is assumed to equal the
/// sign bit (value fits in `m - 1` bits) and is cleared by a CNOT instead.
pub fn max_zero(register: &[usize], ancillas: &[usize]) -> Result<Circuit> {
    let m = register.len();
    if m < 2 {
        return Err(invalid_arg("clamp needs a register of at least 2 qubits"));
    }
    let reduced = if ancillas.len() == m {
        false
    } else if ancillas.len() + 1 == m && m >= 3 {
        true
    } else {
        return Err(invalid_arg(format!("clamp of a {m}-qubit register needs {m} ancillas, got {}", ancillas.len())));
    };
    let sign = register[0];
    let first = if reduced { 2 } else { 1 };
    let mut c = Circuit::new(0);
    for (i, &anc) in (first..m).zip(ancillas) {
        c.push(Gate::Toffoli { controls: [sign, register[i]], target: anc });
        c.push(Gate::Cnot { control: anc, target: register[i] });
    }
    if reduced {
        c.push(Gate::Cnot { control: sign, target: register[1] });
    }
    let sign_anc = *ancillas.last().expect("at least one ancilla");
    c.push(Gate::Cnot { control: sign, target: sign_anc });
    c.push(Gate::Cnot { control: sign_anc, target: sign });
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::{register_value, with_register_value, GateKind, QuantumState, StateVector};

    /// Runs `body` wrapped in qft/iqft on the basis state `x` of `reg`.
    fn run_fourier(n: usize, reg: &[usize], x: u64, body: &Circuit) -> StateVector<f64> {
        let mut s = StateVector::<f64>::basis(n, with_register_value(0, reg, x)).unwrap();
        s.apply_all(qft(reg).gates()).unwrap();
        s.apply_all(body.gates()).unwrap();
        s.apply_all(iqft(reg).gates()).unwrap();
        s
    }

    fn only_index(s: &StateVector<f64>) -> u64 {
        let (i, a) =
            s.amplitudes().iter().enumerate().max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr())).unwrap();
        assert!((a.norm_sqr() - 1.0).abs() < 1e-9, "not a basis state");
        i as u64
    }

    #[test]
    fn qft_counts() {
        let c = qft(&[0, 1, 2, 3, 4]);
        assert_eq!(c.count(GateKind::H), 5);
        assert_eq!(c.count(GateKind::CPhase), 10);
    }

    #[test]
    fn u8_reads_01000() {
        let reg = [0, 1, 2, 3, 4];
        let s = run_fourier(5, &reg, 0, &add_constant(&reg, 8));
        let idx = only_index(&s);
        assert_eq!(register_value(idx, &reg), 8);
        // First listed qubit is the MSB: only reg[1] is set.
        assert_eq!(idx, 1 << 1);
    }

    #[test]
    fn minus_two_on_three_bits() {
        let reg = [2, 0, 1];
        let s = run_fourier(3, &reg, 0, &add_constant(&reg, -2));
        assert_eq!(register_value(only_index(&s), &reg), 0b110);
    }

    #[test]
    fn shift_superposition_counts() {
        let c = add_shift_superposition([0, 1], &[2, 3, 4, 5, 6], [0, 5, 8, 10]).unwrap();
        assert_eq!(c.count(GateKind::X), 4);
        assert_eq!(c.count(GateKind::CCPhase), 20);
        assert_eq!(c.len(), 24);
        assert_eq!(negated_values([0, 4, 7, 9], 5), [0, 28, 25, 23]);
    }

    #[test]
    fn clamp_counts() {
        let c = max_zero(&[0, 1, 2, 3, 4], &[5, 6, 7, 8, 9]).unwrap();
        assert_eq!(c.count(GateKind::Toffoli), 4);
        assert_eq!(c.count(GateKind::Cnot), 6);
        assert!(max_zero(&[0, 1, 2], &[3]).is_err());
    }

    #[test]
    fn controlled_adder_polarity() {
        let reg = [2, 3, 4, 5, 6];
        let cu = controlled_add_constant(&[0, 1], &reg, 9).unwrap();
        for (ctrl, expect) in [(0b11u64, 9u64), (0b01, 0), (0b10, 0), (0b00, 0)] {
            let base = ctrl;
            let mut s = StateVector::<f64>::basis(7, with_register_value(base, &reg, 3)).unwrap();
            s.apply_all(qft(&reg).gates()).unwrap();
            s.apply_all(cu.gates()).unwrap();
            s.apply_all(iqft(&reg).gates()).unwrap();
            assert_eq!(register_value(only_index(&s), &reg), 3 + expect);
        }
        assert!(controlled_add_constant(&[0, 1, 7], &reg, 1).is_err());
        assert!(controlled_add_constant(&[2], &reg, 1).is_err());
    }
}
