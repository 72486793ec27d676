//! Circuit builders for the scheduling oracle.

mod arith;
mod circuit;
mod layout;
mod oracle;

pub use arith::{
    add_constant, add_shift_superposition, adder_angle, controlled_add_constant, iqft, max_zero, negate_register,
    negated_values, qft,
};
pub use circuit::{Circuit, Segment};
pub use layout::{buffer_width, cost_width, layout_registers, OracleOptions, RegisterLayout};
pub use oracle::{
    add_cost, buffer_day, build_oracle, check_buffer_max, check_cost, check_volume, compute_neg_volume, diffuser,
    grover_circuit, GroverCircuit, Oracle,
};
