//! Oracle, diffuser and Grover circuit assembly.

use super::arith::{add_constant, add_shift_superposition, iqft, max_zero, negated_values, qft};
use super::layout::{layout_registers, OracleOptions, RegisterLayout};
use super::Circuit;
use crate::error::{invalid_arg, Error, Result};
use crate::model::{volume_window, ModelConfig, Schedule, Shop};
use crate::simulator::{with_register_value, Gate, QuantumState, SparseState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reg {
    Buffer,
    Cost,
}

/// Appends oracle pieces, optionally deferring constant adders so that
/// consecutive ones (with only commuting shift blocks between) merge.
struct Builder<'a> {
    config: &'a ModelConfig,
    layout: &'a RegisterLayout,
    fuse: bool,
    c: Circuit,
    pending: [Option<(i64, Vec<&'static str>)>; 2],
}

impl<'a> Builder<'a> {
    fn new(config: &'a ModelConfig, layout: &'a RegisterLayout, fuse: bool) -> Self {
        Builder { config, layout, fuse, c: Circuit::new(layout.n_qubits), pending: [None, None] }
    }

    fn reg(&self, r: Reg) -> &'a [usize] {
        match r {
            Reg::Buffer => &self.layout.qb,
            Reg::Cost => &self.layout.qcost,
        }
    }

    fn add(&mut self, r: Reg, a: i64, name: &'static str) {
        let slot = self.pending[r as usize].get_or_insert_with(|| (0, Vec::new()));
        slot.0 += a;
        slot.1.push(name);
        if !self.fuse {
            self.flush(r);
        }
    }

    fn flush(&mut self, r: Reg) {
        if let Some((a, names)) = self.pending[r as usize].take() {
            let label = format!("U: {}", names.join(" "));
            self.c.append_labeled(label, &add_constant(self.reg(r), a));
        }
    }

    fn finish(mut self) -> Circuit {
        self.flush(Reg::Buffer);
        self.flush(Reg::Cost);
        self.c
    }

    fn shift(&mut self, label: String, shop: [usize; 2], r: Reg, values: [i64; 4]) -> Result<()> {
        let block = add_shift_superposition(shop, self.reg(r), values)?;
        self.c.append_labeled(label, &block);
        Ok(())
    }

    fn iqft(&mut self, r: Reg) {
        self.flush(r);
        self.c.append_labeled("IQFT", &iqft(self.reg(r)));
    }

    fn qft(&mut self, r: Reg) {
        self.c.append_labeled("QFT", &qft(self.reg(r)));
    }

    fn width(&self) -> usize {
        self.layout.qb.len()
    }

    fn buffer_day(&mut self, day: usize) -> Result<()> {
        let l = self.layout;
        let m = self.width();
        self.shift(format!("S1 day {}", day + 1), l.day_s1(day), Reg::Buffer, self.config.units_table(Shop::S1))?;
        let minus_s2 = negated_values(self.config.units_table(Shop::S2), m);
        self.shift(format!("-S2 day {}", day + 1), l.day_s2(day), Reg::Buffer, minus_s2)?;
        self.iqft(Reg::Buffer);
        self.c.append_labeled(format!("MAX day {}", day + 1), &max_zero(&l.qb, &l.anc[day])?);
        self.qft(Reg::Buffer);
        Ok(())
    }

    fn add_cost(&mut self, day: usize) -> Result<()> {
        self.require_cost()?;
        let l = self.layout;
        self.shift(format!("C1 day {}", day + 1), l.day_s1(day), Reg::Cost, self.config.cost_table(Shop::S1))?;
        self.shift(format!("C2 day {}", day + 1), l.day_s2(day), Reg::Cost, self.config.cost_table(Shop::S2))
    }

    fn check_buffer_max(&mut self, day: usize) {
        let l = self.layout;
        let limit = self.config.b_max + 1;
        self.add(Reg::Buffer, -limit, "-(B_max+1)");
        self.flush(Reg::Buffer);
        let h = self.c.open_segment(format!("c1 day {}", day + 1));
        self.iqft(Reg::Buffer);
        self.c.push(Gate::Cnot { control: l.qb[0], target: l.c1[day] });
        self.qft(Reg::Buffer);
        self.c.close_segment(h);
        self.add(Reg::Buffer, limit, "(B_max+1)");
    }

    fn compute_neg_volume(&mut self) -> Result<()> {
        let m = self.width();
        self.add(Reg::Buffer, -self.config.b_init, "-B_init");
        let minus_s1 = negated_values(self.config.units_table(Shop::S1), m);
        for day in 0..self.layout.n_days {
            self.shift(format!("-S1 day {}", day + 1), self.layout.day_s1(day), Reg::Buffer, minus_s1)?;
        }
        Ok(())
    }

    fn check_volume(&mut self) {
        let l = self.layout;
        let (v_low, v_up) = volume_window(self.config);
        self.add(Reg::Buffer, v_low - 1, "(V_low-1)");
        self.flush(Reg::Buffer);
        let h = self.c.open_segment("c2");
        self.iqft(Reg::Buffer);
        self.c.push(Gate::Cnot { control: l.qb[0], target: l.c2 });
        self.qft(Reg::Buffer);
        self.c.close_segment(h);
        self.add(Reg::Buffer, v_up - v_low + 1, "(2Delta+1)");
        self.flush(Reg::Buffer);
        let h = self.c.open_segment("c3");
        self.iqft(Reg::Buffer);
        self.c.push(Gate::X(l.c3));
        self.c.push(Gate::Cnot { control: l.qb[0], target: l.c3 });
        self.c.close_segment(h);
    }

    fn require_cost(&self) -> Result<usize> {
        match self.layout.c_cost {
            Some(flag) if !self.layout.qcost.is_empty() => Ok(flag),
            _ => Err(Error::InvalidState("layout has no cost register".into())),
        }
    }

    fn check_cost(&mut self) -> Result<()> {
        let c_max = self
            .config
            .c_max
            .ok_or_else(|| Error::InvalidState("cost check needs c_max in the configuration".into()))?;
        let flag = self.require_cost()?;
        self.add(Reg::Cost, -c_max, "-C_max");
        self.flush(Reg::Cost);
        let h = self.c.open_segment("c_cost");
        self.iqft(Reg::Cost);
        self.c.push(Gate::Cnot { control: self.layout.qcost[0], target: flag });
        self.c.close_segment(h);
        Ok(())
    }
}

/// Clamped buffer update for one day: `S1`, `-S2`, IQFT, `MAX(0, B)`, QFT.
pub fn buffer_day(layout: &RegisterLayout, day: usize, config: &ModelConfig) -> Result<Circuit> {
    let mut b = Builder::new(config, layout, false);
    b.buffer_day(day)?;
    Ok(b.finish())
}

/// Sets `c1` of `day` iff the buffer is at most `B_max`, leaving the buffer as it was.
pub fn check_buffer_max(layout: &RegisterLayout, day: usize, config: &ModelConfig) -> Result<Circuit> {
    let mut b = Builder::new(config, layout, false);
    b.check_buffer_max(day);
    Ok(b.finish())
}

/// Turns the final buffer into `-V_out = B_final - B_init - sum(S1)`.
pub fn compute_neg_volume(layout: &RegisterLayout, config: &ModelConfig) -> Result<Circuit> {
    let mut b = Builder::new(config, layout, false);
    b.compute_neg_volume()?;
    Ok(b.finish())
}

/// Sets `c2` iff `V_out >= V* - delta` and `c3` iff `V_out <= V* + delta`.
/// Leaves the buffer in the computational basis.
pub fn check_volume(layout: &RegisterLayout, config: &ModelConfig) -> Result<Circuit> {
    let mut b = Builder::new(config, layout, false);
    b.check_volume();
    Ok(b.finish())
}

/// Adds both shops' shift cost for `day` to the cost register.
pub fn add_cost(layout: &RegisterLayout, day: usize, config: &ModelConfig) -> Result<Circuit> {
    let mut b = Builder::new(config, layout, false);
    b.add_cost(day)?;
    Ok(b.finish())
}

/// Sets `c_cost` iff the accumulated cost is strictly below `c_max`.
pub fn check_cost(layout: &RegisterLayout, config: &ModelConfig) -> Result<Circuit> {
    let mut b = Builder::new(config, layout, false);
    b.check_cost()?;
    Ok(b.finish())
}

/// The oracle split into one-time state preparation and the repeated body.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub layout: RegisterLayout,
    /// H on the shop qubits and `|->` on the marking qubit.
    pub prep: Circuit,
    /// Buffer (and cost) initialization plus every constraint check.
    pub body: Circuit,
}

impl Oracle {
    /// Preparation followed by the body, the unit counted as "the oracle".
    pub fn full(&self) -> Circuit {
        let mut c = self.prep.clone();
        c.append(&self.body);
        c
    }

    pub fn set_output(&self) -> Circuit {
        let mut c = Circuit::new(self.layout.n_qubits);
        c.push(Gate::Mcx { controls: self.layout.cond(), target: self.layout.out_minus });
        c
    }

    /// Runs the body on the basis state of `schedule` (sparse simulation)
    /// and reads the condition flags in [`RegisterLayout::cond`] order.
    pub fn condition_flags(&self, schedule: &Schedule) -> Result<Vec<bool>> {
        if schedule.n_days() != self.layout.n_days {
            return Err(invalid_arg("schedule length does not match the oracle"));
        }
        let shops = self.layout.shop_qubits();
        let start = with_register_value(0, &shops, schedule.index());
        let mut state = SparseState::<f64>::basis(self.layout.n_qubits, start)?;
        state.apply_all(self.body.gates())?;
        let cond = self.layout.cond();
        let dist = state.marginal(&cond)?;
        let (value, p) = dist.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("nonempty marginal");
        if (p - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidState(format!("condition flags not deterministic (p = {p})")));
        }
        let width = cond.len();
        Ok((0..width).map(|i| (value >> (width - 1 - i)) & 1 == 1).collect())
    }

    /// One Grover rotation: body, marking, body inverse, diffuser.
    pub fn rotation(&self) -> Circuit {
        let mut c = Circuit::new(self.layout.n_qubits);
        c.append_labeled("oracle", &self.body);
        c.append_labeled("set output", &self.set_output());
        c.append_labeled("oracle^dg", &self.body.inverse());
        c.append_labeled("diffuser", &diffuser(&self.layout));
        c
    }
}

pub fn build_oracle(config: &ModelConfig, options: &OracleOptions) -> Result<Oracle> {
    config.validate()?;
    let layout = layout_registers(config, options);

    let mut prep = Circuit::new(layout.n_qubits);
    let h = prep.open_segment("init");
    for q in layout.shop_qubits() {
        prep.push(Gate::H(q));
    }
    prep.push(Gate::InitMinus(layout.out_minus));
    prep.close_segment(h);

    let mut b = Builder::new(config, &layout, options.fuse_adders);
    let h = b.c.open_segment("init");
    for &q in layout.qb.iter().chain(&layout.qcost) {
        b.c.push(Gate::H(q));
    }
    b.c.close_segment(h);
    b.add(Reg::Buffer, config.b_init, "B_init");
    for day in 0..config.n_days {
        b.buffer_day(day)?;
        if options.with_cost {
            b.add_cost(day)?;
        }
        b.check_buffer_max(day);
    }
    b.compute_neg_volume()?;
    b.check_volume();
    if options.with_cost {
        b.check_cost()?;
    }
    let body = b.finish();
    Ok(Oracle { layout, prep, body })
}

/// Reflection about the uniform superposition of the shop qubits.
pub fn diffuser(layout: &RegisterLayout) -> Circuit {
    let shops = layout.shop_qubits();
    let mut c = Circuit::new(layout.n_qubits);
    for &q in &shops {
        c.push(Gate::H(q));
        c.push(Gate::X(q));
    }
    let (&target, controls) = shops.split_last().expect("at least one day");
    c.push(Gate::Mcz { controls: controls.to_vec(), target });
    for &q in &shops {
        c.push(Gate::X(q));
        c.push(Gate::H(q));
    }
    c
}

/// A complete Grover circuit and the layout it was built on.
#[derive(Debug, Clone)]
pub struct GroverCircuit {
    pub layout: RegisterLayout,
    pub circuit: Circuit,
}

/// Preparation, `rotations` Grover iterations, then shop measurements.
pub fn grover_circuit(config: &ModelConfig, rotations: usize, options: &OracleOptions) -> Result<GroverCircuit> {
    let oracle = build_oracle(config, options)?;
    let mut circuit = Circuit::new(oracle.layout.n_qubits);
    circuit.append_labeled("state prep", &oracle.prep);
    let rotation = oracle.rotation();
    for r in 0..rotations {
        circuit.append_labeled(format!("rotation {}", r + 1), &rotation);
    }
    let mut measure = Circuit::new(oracle.layout.n_qubits);
    for q in oracle.layout.shop_qubits() {
        measure.push(Gate::Measure(q));
    }
    circuit.append_labeled("measurement", &measure);
    Ok(GroverCircuit { layout: oracle.layout, circuit })
}
