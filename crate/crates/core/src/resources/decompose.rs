use std::f64::consts::FRAC_PI_4;

use crate::circuits::Circuit;
use crate::simulator::Gate;

/// Rewrites CCPhase as 3 CPhase + 2 CNOT and Toffoli as 9 one-qubit gates
/// + 6 CNOT. Everything else is copied. Segments are dropped.
pub fn decompose(circuit: &Circuit) -> Circuit {
    let mut out = Circuit::new(circuit.n_qubits());
    for g in circuit.gates() {
        match *g {
            Gate::CCPhase { controls: [a, b], target, angle } => {
                let half = angle / 2.0;
                out.push(Gate::CPhase { control: b, target, angle: half });
                out.push(Gate::Cnot { control: a, target: b });
                out.push(Gate::CPhase { control: b, target, angle: -half });
                out.push(Gate::Cnot { control: a, target: b });
                out.push(Gate::CPhase { control: a, target, angle: half });
            }
            Gate::Toffoli { controls: [a, b], target: c } => {
                let t = |q| Gate::Phase { target: q, angle: FRAC_PI_4 };
                let tdg = |q| Gate::Phase { target: q, angle: -FRAC_PI_4 };
                let cx = |control, target| Gate::Cnot { control, target };
                for gate in [
                    Gate::H(c),
                    cx(b, c),
                    tdg(c),
                    cx(a, c),
                    t(c),
                    cx(b, c),
                    tdg(c),
                    cx(a, c),
                    t(b),
                    t(c),
                    Gate::H(c),
                    cx(a, b),
                    t(a),
                    tdg(b),
                    cx(a, b),
                ] {
                    out.push(gate);
                }
            }
            _ => out.push(g.clone()),
        }
    }
    out
}
