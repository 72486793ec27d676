//! Qubit and gate accounting.

mod decompose;
mod tally;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use decompose::decompose;
pub use tally::GateTally;

use crate::circuits::{
    add_constant, add_shift_superposition, build_oracle, controlled_add_constant, diffuser, iqft, layout_registers,
    max_zero, qft, Circuit, OracleOptions, RegisterLayout,
};
use crate::error::{invalid_arg, Result};
use crate::model::ModelConfig;
use crate::simulator::Gate;

/// Register sizes from the closed-form count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QubitCounts {
    pub shops: usize,
    pub buffer: usize,
    pub ancilla: usize,
    pub cost: usize,
    pub conditions: usize,
    pub marking: usize,
    pub total: usize,
}

/// `11n + 9 + ceil(log2(19n))` with the cost register (24 for one day),
/// 18 for one day without it.
pub fn qubit_counts(config: &ModelConfig, with_cost: bool) -> QubitCounts {
    let n = config.n_days;
    let max_cost = (config.max_daily_cost() * n as i64).max(2) as u64;
    let cost = if with_cost { (u64::BITS - (max_cost - 1).leading_zeros()) as usize } else { 0 };
    let buffer = if n == 1 { 5 } else { 6 };
    let ancilla = 6 * n - 1;
    let conditions = n + 2 + with_cost as usize;
    let shops = 4 * n;
    QubitCounts {
        shops,
        buffer,
        ancilla,
        cost,
        conditions,
        marking: 1,
        total: shops + buffer + ancilla + cost + conditions + 1,
    }
}

/// Register sizes of an actual layout.
pub fn layout_counts(layout: &RegisterLayout) -> QubitCounts {
    QubitCounts {
        shops: layout.qs1.len() + layout.qs2.len(),
        buffer: layout.qb.len(),
        ancilla: layout.ancilla_count(),
        cost: layout.qcost.len(),
        conditions: layout.cond().len(),
        marking: 1,
        total: layout.n_qubits,
    }
}

/// Circuit components with a per-component gate count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitiveKind {
    /// Everything initialized for one day: shops, buffer, marking qubit.
    Init,
    OutputInit,
    ShopInit,
    BufferInit,
    Cu,
    U,
    S,
    Qft,
    Iqft,
    Max,
    Diffuser,
}

impl PrimitiveKind {
    pub const ALL: [PrimitiveKind; 11] = [
        PrimitiveKind::Init,
        PrimitiveKind::OutputInit,
        PrimitiveKind::ShopInit,
        PrimitiveKind::BufferInit,
        PrimitiveKind::Cu,
        PrimitiveKind::U,
        PrimitiveKind::S,
        PrimitiveKind::Qft,
        PrimitiveKind::Iqft,
        PrimitiveKind::Max,
        PrimitiveKind::Diffuser,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrimitiveKind::Init => "init",
            PrimitiveKind::OutputInit => "output-init",
            PrimitiveKind::ShopInit => "shop-init",
            PrimitiveKind::BufferInit => "buffer-init",
            PrimitiveKind::Cu => "cu",
            PrimitiveKind::U => "u",
            PrimitiveKind::S => "s",
            PrimitiveKind::Qft => "qft",
            PrimitiveKind::Iqft => "iqft",
            PrimitiveKind::Max => "max",
            PrimitiveKind::Diffuser => "diffuser",
        }
    }

    /// The component as built for one day (5-qubit buffer register).
    pub fn circuit(self) -> Circuit {
        let reg = [0, 1, 2, 3, 4];
        let mut c = Circuit::new(0);
        match self {
            PrimitiveKind::Init => {
                for q in 0..9 {
                    c.push(Gate::H(q));
                }
                c.push(Gate::InitMinus(9));
            }
            PrimitiveKind::OutputInit => c.push(Gate::InitMinus(0)),
            PrimitiveKind::ShopInit => {
                c.push(Gate::H(0));
                c.push(Gate::H(1));
            }
            PrimitiveKind::BufferInit => reg.iter().for_each(|&q| c.push(Gate::H(q))),
            PrimitiveKind::Cu => c = controlled_add_constant(&[5, 6], &reg, 5).expect("two controls"),
            PrimitiveKind::U => c = add_constant(&reg, 5),
            PrimitiveKind::S => c = add_shift_superposition([5, 6], &reg, [0, 5, 8, 10]).expect("valid block"),
            PrimitiveKind::Qft => c = qft(&reg),
            PrimitiveKind::Iqft => c = iqft(&reg),
            PrimitiveKind::Max => c = max_zero(&reg, &[5, 6, 7, 8, 9]).expect("matching ancillas"),
            PrimitiveKind::Diffuser => {
                c = diffuser(&layout_registers(&ModelConfig::reference(1), &OracleOptions::default()))
            }
        }
        c
    }
}

impl fmt::Display for PrimitiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrimitiveKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        PrimitiveKind::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| invalid_arg(format!("unknown circuit component '{s}'")))
    }
}

/// Gate count of one component, optionally after [`decompose`].
pub fn primitive_tally(kind: PrimitiveKind, decomposed: bool) -> GateTally {
    let c = kind.circuit();
    if decomposed {
        GateTally::of_gates(decompose(&c).gates())
    } else {
        GateTally::of_gates(c.gates())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentTally {
    pub name: String,
    pub tally: GateTally,
}

/// Gate counts of one Grover iteration, broken down by component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroverTally {
    /// Oracle rows, in circuit order, with same-named rows merged.
    pub oracle_rows: Vec<ComponentTally>,
    pub oracle: GateTally,
    pub set_output: GateTally,
    pub oracle_dagger: GateTally,
    pub diffuser: GateTally,
    pub measurement: GateTally,
    pub total: GateTally,
}

/// Tallies of the outermost segments, merging rows with equal labels.
pub fn segment_rows(circuit: &Circuit) -> Vec<ComponentTally> {
    let segs = circuit.segments();
    let mut rows: Vec<ComponentTally> = Vec::new();
    let mut covered = 0;
    for (i, s) in segs.iter().enumerate() {
        let nested = segs.iter().enumerate().any(|(k, o)| {
            k != i && o.start <= s.start && s.end <= o.end && (o.end - o.start > s.end - s.start || k < i)
        });
        if nested {
            continue;
        }
        covered += s.end - s.start;
        let tally = GateTally::of_gates(&circuit.gates()[s.start..s.end]);
        match rows.iter_mut().find(|r| r.name == s.label) {
            Some(r) => r.tally += tally,
            None => rows.push(ComponentTally { name: s.label.clone(), tally }),
        }
    }
    if covered < circuit.len() {
        let all = GateTally::of_gates(circuit.gates());
        let seen: GateTally = rows.iter().map(|r| r.tally).sum();
        let rest = GateTally::new(
            all.one_qubit - seen.one_qubit,
            all.mcz_mcx - seen.mcz_mcx,
            all.cc_phase - seen.cc_phase,
            all.c_phase - seen.c_phase,
            all.ccnot - seen.ccnot,
            all.cnot - seen.cnot,
        );
        rows.push(ComponentTally { name: "other".into(), tally: rest });
    }
    rows
}

/// Counts the oracle as preparation plus body (and its inverse likewise),
/// then the marking gate, diffuser and one measurement per shop qubit.
pub fn grover_tally(config: &ModelConfig, options: &OracleOptions) -> Result<GroverTally> {
    let oracle = build_oracle(config, options)?;
    let full = oracle.full();
    let oracle_tally = GateTally::of_gates(full.gates());
    let oracle_dagger = GateTally::of_gates(full.inverse().gates());
    let set_output = GateTally::of_gates(oracle.set_output().gates());
    let diffuser = GateTally::of_gates(diffuser(&oracle.layout).gates());
    let measurement = GateTally { one_qubit: oracle.layout.shop_qubits().len() as u64, ..Default::default() };
    Ok(GroverTally {
        oracle_rows: segment_rows(&full),
        oracle: oracle_tally,
        set_output,
        oracle_dagger,
        diffuser,
        measurement,
        total: oracle_tally + set_output + oracle_dagger + diffuser + measurement,
    })
}

/// One day, no cost constraint, adders fused.
pub fn total_tally_one_day() -> GroverTally {
    grover_tally(&ModelConfig::reference(1), &OracleOptions::default()).expect("default one-day model builds")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub registers: QubitCounts,
    pub layout_registers: QubitCounts,
    pub totals: GateTally,
    pub per_component: Vec<ComponentTally>,
}

/// Register counts plus the gate breakdown of one Grover iteration.
/// The gate breakdown includes the cost check only when `c_max` is set.
pub fn resource_report(config: &ModelConfig, with_cost: bool, fuse_adders: bool) -> Result<ResourceReport> {
    let layout_opts = OracleOptions { with_cost, fuse_adders, ..Default::default() };
    let gate_opts = OracleOptions { with_cost: with_cost && config.c_max.is_some(), ..layout_opts };
    let t = grover_tally(config, &gate_opts)?;
    let mut per_component: Vec<ComponentTally> =
        t.oracle_rows.iter().map(|r| ComponentTally { name: format!("oracle/{}", r.name), tally: r.tally }).collect();
    for (name, tally) in [
        ("oracle", t.oracle),
        ("set output", t.set_output),
        ("oracle^dg", t.oracle_dagger),
        ("diffuser", t.diffuser),
        ("measurement", t.measurement),
    ] {
        per_component.push(ComponentTally { name: name.into(), tally });
    }
    Ok(ResourceReport {
        registers: qubit_counts(config, with_cost),
        layout_registers: layout_counts(&layout_registers(config, &layout_opts)),
        totals: t.total,
        per_component,
    })
}
