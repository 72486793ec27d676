use std::fmt;

use crate::error::{invalid_arg, Result};

/// Gate kinds, used for tallies and the text circuit format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    X,
    Z,
    Phase,
    CPhase,
    CCPhase,
    Cnot,
    Toffoli,
    Mcx,
    Mcz,
    Measure,
    InitMinus,
    InitMinusDagger,
}

impl GateKind {
    pub const ALL: [GateKind; 13] = [
        GateKind::H,
        GateKind::X,
        GateKind::Z,
        GateKind::Phase,
        GateKind::CPhase,
        GateKind::CCPhase,
        GateKind::Cnot,
        GateKind::Toffoli,
        GateKind::Mcx,
        GateKind::Mcz,
        GateKind::Measure,
        GateKind::InitMinus,
        GateKind::InitMinusDagger,
    ];

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::Phase => "P",
            GateKind::CPhase => "CP",
            GateKind::CCPhase => "CCP",
            GateKind::Cnot => "CX",
            GateKind::Toffoli => "CCX",
            GateKind::Mcx => "MCX",
            GateKind::Mcz => "MCZ",
            GateKind::Measure => "MEASURE",
            GateKind::InitMinus => "INITMINUS",
            GateKind::InitMinusDagger => "INITMINUS_DG",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.mnemonic() == s)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// One operation of a circuit. Angles are radians.
///
/// `Measure` marks a qubit for readout and does not act on the state;
/// sampling is done separately on the final amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    /// `diag(1, e^{i angle})`.
    Phase {
        target: usize,
        angle: f64,
    },
    CPhase {
        control: usize,
        target: usize,
        angle: f64,
    },
    CCPhase {
        controls: [usize; 2],
        target: usize,
        angle: f64,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    Toffoli {
        controls: [usize; 2],
        target: usize,
    },
    Mcx {
        controls: Vec<usize>,
        target: usize,
    },
    Mcz {
        controls: Vec<usize>,
        target: usize,
    },
    Measure(usize),
    /// X then H: takes |0> to |->.
    InitMinus(usize),
    /// H then X, the inverse of [`Gate::InitMinus`].
    InitMinusDagger(usize),
}

impl Gate {
    /// Phase gate with zero, one or two controls.
    pub fn controlled_phase(controls: &[usize], target: usize, angle: f64) -> Result<Gate> {
        match *controls {
            [] => Ok(Gate::Phase { target, angle }),
            [control] => Ok(Gate::CPhase { control, target, angle }),
            [a, b] => Ok(Gate::CCPhase { controls: [a, b], target, angle }),
            _ => Err(invalid_arg(format!("controlled phase supports at most 2 controls, got {}", controls.len()))),
        }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::Z(_) => GateKind::Z,
            Gate::Phase { .. } => GateKind::Phase,
            Gate::CPhase { .. } => GateKind::CPhase,
            Gate::CCPhase { .. } => GateKind::CCPhase,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Toffoli { .. } => GateKind::Toffoli,
            Gate::Mcx { .. } => GateKind::Mcx,
            Gate::Mcz { .. } => GateKind::Mcz,
            Gate::Measure(_) => GateKind::Measure,
            Gate::InitMinus(_) => GateKind::InitMinus,
            Gate::InitMinusDagger(_) => GateKind::InitMinusDagger,
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            Gate::H(t) | Gate::X(t) | Gate::Z(t) | Gate::Measure(t) | Gate::InitMinus(t) | Gate::InitMinusDagger(t) => {
                t
            }
            Gate::Phase { target, .. }
            | Gate::CPhase { target, .. }
            | Gate::CCPhase { target, .. }
            | Gate::Cnot { target, .. }
            | Gate::Toffoli { target, .. }
            | Gate::Mcx { target, .. }
            | Gate::Mcz { target, .. } => target,
        }
    }

    pub fn controls(&self) -> &[usize] {
        match self {
            Gate::CPhase { control, .. } | Gate::Cnot { control, .. } => std::slice::from_ref(control),
            Gate::CCPhase { controls, .. } | Gate::Toffoli { controls, .. } => controls,
            Gate::Mcx { controls, .. } | Gate::Mcz { controls, .. } => controls,
            _ => &[],
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Phase { angle, .. } | Gate::CPhase { angle, .. } | Gate::CCPhase { angle, .. } => Some(angle),
            _ => None,
        }
    }

    /// Rebuilds a gate from its kind and operands (text format parser).
    pub fn from_parts(kind: GateKind, target: usize, controls: &[usize], angle: Option<f64>) -> Result<Gate> {
        let need_angle = || angle.ok_or_else(|| invalid_arg(format!("{kind} needs an angle")));
        let arity = |n: usize| {
            if controls.len() == n {
                Ok(())
            } else {
                Err(invalid_arg(format!("{kind} takes {n} controls, got {}", controls.len())))
            }
        };
        let gate = match kind {
            GateKind::H => arity(0).map(|_| Gate::H(target))?,
            GateKind::X => arity(0).map(|_| Gate::X(target))?,
            GateKind::Z => arity(0).map(|_| Gate::Z(target))?,
            GateKind::Measure => arity(0).map(|_| Gate::Measure(target))?,
            GateKind::InitMinus => arity(0).map(|_| Gate::InitMinus(target))?,
            GateKind::InitMinusDagger => arity(0).map(|_| Gate::InitMinusDagger(target))?,
            GateKind::Phase => {
                arity(0)?;
                Gate::Phase { target, angle: need_angle()? }
            }
            GateKind::CPhase => {
                arity(1)?;
                Gate::CPhase { control: controls[0], target, angle: need_angle()? }
            }
            GateKind::CCPhase => {
                arity(2)?;
                Gate::CCPhase { controls: [controls[0], controls[1]], target, angle: need_angle()? }
            }
            GateKind::Cnot => {
                arity(1)?;
                Gate::Cnot { control: controls[0], target }
            }
            GateKind::Toffoli => {
                arity(2)?;
                Gate::Toffoli { controls: [controls[0], controls[1]], target }
            }
            GateKind::Mcx => Gate::Mcx { controls: controls.to_vec(), target },
            GateKind::Mcz => Gate::Mcz { controls: controls.to_vec(), target },
        };
        Ok(gate)
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Phase { target, angle } => Gate::Phase { target: *target, angle: -angle },
            Gate::CPhase { control, target, angle } => {
                Gate::CPhase { control: *control, target: *target, angle: -angle }
            }
            Gate::CCPhase { controls, target, angle } => {
                Gate::CCPhase { controls: *controls, target: *target, angle: -angle }
            }
            Gate::InitMinus(q) => Gate::InitMinusDagger(*q),
            Gate::InitMinusDagger(q) => Gate::InitMinus(*q),
            other => other.clone(),
        }
    }

    /// Diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        matches!(
            self.kind(),
            GateKind::Z | GateKind::Phase | GateKind::CPhase | GateKind::CCPhase | GateKind::Mcz | GateKind::Measure
        )
    }

    /// Checks indices against the register size and that no qubit repeats.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let target = self.target();
        let controls = self.controls();
        for &q in controls.iter().chain([&target]) {
            if q >= n_qubits {
                return Err(invalid_arg(format!("{} touches qubit {q} of a {n_qubits}-qubit state", self.kind())));
            }
        }
        for (i, &c) in controls.iter().enumerate() {
            if c == target || controls[..i].contains(&c) {
                return Err(invalid_arg(format!("{} repeats qubit {c}", self.kind())));
            }
        }
        Ok(())
    }

    pub(crate) fn control_mask(&self) -> u64 {
        self.controls().iter().fold(0u64, |m, &c| m | (1u64 << c))
    }
}
