use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::Serialize;

use crate::simulator::{Gate, GateKind};

/// Elementary gate counts by class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GateTally {
    pub one_qubit: u64,
    pub mcz_mcx: u64,
    pub cc_phase: u64,
    pub c_phase: u64,
    pub ccnot: u64,
    pub cnot: u64,
}

impl GateTally {
    pub const fn new(one_qubit: u64, mcz_mcx: u64, cc_phase: u64, c_phase: u64, ccnot: u64, cnot: u64) -> Self {
        GateTally { one_qubit, mcz_mcx, cc_phase, c_phase, ccnot, cnot }
    }

    pub fn of_gates<'a>(gates: impl IntoIterator<Item = &'a Gate>) -> Self {
        let mut t = GateTally::default();
        for g in gates {
            t.add_kind(g.kind());
        }
        t
    }

    pub fn add_kind(&mut self, kind: GateKind) {
        use GateKind::*;
        match kind {
            H | X | Z | Phase | Measure | InitMinus | InitMinusDagger => self.one_qubit += 1,
            Mcx | Mcz => self.mcz_mcx += 1,
            CCPhase => self.cc_phase += 1,
            CPhase => self.c_phase += 1,
            Toffoli => self.ccnot += 1,
            Cnot => self.cnot += 1,
        }
    }

    pub fn as_array(&self) -> [u64; 6] {
        [self.one_qubit, self.mcz_mcx, self.cc_phase, self.c_phase, self.ccnot, self.cnot]
    }

    pub fn total(&self) -> u64 {
        self.as_array().iter().sum()
    }
}

impl Add for GateTally {
    type Output = GateTally;

    fn add(self, o: GateTally) -> GateTally {
        GateTally {
            one_qubit: self.one_qubit + o.one_qubit,
            mcz_mcx: self.mcz_mcx + o.mcz_mcx,
            cc_phase: self.cc_phase + o.cc_phase,
            c_phase: self.c_phase + o.c_phase,
            ccnot: self.ccnot + o.ccnot,
            cnot: self.cnot + o.cnot,
        }
    }
}

impl AddAssign for GateTally {
    fn add_assign(&mut self, o: GateTally) {
        *self = *self + o;
    }
}

impl Sum for GateTally {
    fn sum<I: Iterator<Item = GateTally>>(iter: I) -> Self {
        iter.fold(GateTally::default(), Add::add)
    }
}
