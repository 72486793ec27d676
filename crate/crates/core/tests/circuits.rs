use qiss::circuits::{
    add_constant, add_shift_superposition, build_oracle, check_buffer_max, check_cost, compute_neg_volume, diffuser,
    grover_circuit, iqft, layout_registers, max_zero, negate_register, qft, Circuit, OracleOptions,
};
use qiss::model::{brute_force, evaluate_schedule};
use qiss::simulator::{register_value, with_register_value, GateKind, QuantumState, SparseState, StateVector};
use qiss::{ModelConfig, Schedule};

const TOL: f64 = 1e-9;

fn basis_readout<S: QuantumState<f64>>(state: &S, reg: &[usize]) -> u64 {
    let m = state.marginal(reg).unwrap();
    let (v, p) = m.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    assert!((p - 1.0).abs() < TOL, "register not in a basis state: p = {p}");
    v as u64
}

fn fourier_run(n: usize, reg: &[usize], x: u64, body: &Circuit) -> StateVector<f64> {
    let mut s = StateVector::<f64>::basis(n, with_register_value(0, reg, x)).unwrap();
    s.apply_all(qft(reg).gates()).unwrap();
    s.apply_all(body.gates()).unwrap();
    s.apply_all(iqft(reg).gates()).unwrap();
    s
}

#[test]
fn qft_then_iqft_is_identity() {
    let reg = [0, 1, 2, 3, 4];
    for x in 0..32u64 {
        let start = StateVector::<f64>::basis(5, with_register_value(0, &reg, x)).unwrap();
        let mut s = start.clone();
        s.apply_all(qft(&reg).gates()).unwrap();
        s.apply_all(iqft(&reg).gates()).unwrap();
        assert!(s.max_abs_diff(&start) < 1e-10);
    }
}

#[test]
fn qft_of_zero_equals_hadamards() {
    let reg = [3, 1, 0, 2];
    let mut a = StateVector::<f64>::new(4).unwrap();
    a.apply_all(qft(&reg).gates()).unwrap();
    let mut b = StateVector::<f64>::new(4).unwrap();
    for q in 0..4 {
        b.apply(&qiss::simulator::Gate::H(q)).unwrap();
    }
    assert!(a.max_abs_diff(&b) < 1e-12);
}

#[test]
fn adders_are_modular_addition() {
    for m in 1..=6usize {
        let reg: Vec<usize> = (0..m).rev().collect();
        let modulus = 1i64 << m;
        for a in [-7i64, -1, 0, 1, 3, 8, 13, 40] {
            let u = add_constant(&reg, a);
            for x in 0..modulus as u64 {
                let s = fourier_run(m, &reg, x, &u);
                let want = (x as i64 + a).rem_euclid(modulus) as u64;
                assert_eq!(basis_readout(&s, &reg), want, "m={m} a={a} x={x}");
            }
        }
    }
}

#[test]
fn adders_compose_by_phase_addition() {
    let reg = [0, 1, 2, 3, 4];
    for (a, b) in [(3i64, 9i64), (17, 20), (-5, 2)] {
        let mut ab = add_constant(&reg, a);
        ab.append(&add_constant(&reg, b));
        let sum = add_constant(&reg, (a + b).rem_euclid(32));
        for x in 0..32 {
            let s1 = fourier_run(5, &reg, x, &ab);
            let s2 = fourier_run(5, &reg, x, &sum);
            assert!(s1.max_abs_diff(&s2) < 1e-10);
        }
    }
}

#[test]
fn negation_and_double_negation() {
    let reg = [4, 3, 2, 1, 0];
    let neg = negate_register(&reg);
    let mut twice = neg.clone();
    twice.append(&neg);
    for x in 0..32u64 {
        let s = fourier_run(5, &reg, x, &neg);
        assert_eq!(basis_readout(&s, &reg), (32 - x) % 32);
        let s = fourier_run(5, &reg, x, &twice);
        assert_eq!(basis_readout(&s, &reg), x);
    }
    assert_eq!(basis_readout(&fourier_run(5, &reg, 5, &neg), &reg), 27);
}

#[test]
fn clamp_truth_table() {
    let reg = [0, 1, 2, 3, 4];
    let anc = [5, 6, 7, 8, 9];
    let c = max_zero(&reg, &anc).unwrap();
    for x in 0..32u64 {
        let signed = if x >= 16 { x as i64 - 32 } else { x as i64 };
        let mut s = StateVector::<f64>::basis(10, with_register_value(0, &reg, x)).unwrap();
        s.apply_all(c.gates()).unwrap();
        assert_eq!(basis_readout(&s, &reg) as i64, signed.max(0), "x={signed}");
        if signed >= 0 {
            assert_eq!(basis_readout(&s, &anc), 0);
        }
    }
}

#[test]
fn reduced_clamp_on_narrow_values() {
    let reg = [0, 1, 2, 3, 4, 5];
    let anc = [6, 7, 8, 9, 10];
    let c = max_zero(&reg, &anc).unwrap();
    for signed in -16i64..16 {
        let x = signed.rem_euclid(64) as u64;
        let mut s = SparseState::<f64>::basis(11, with_register_value(0, &reg, x)).unwrap();
        s.apply_all(c.gates()).unwrap();
        assert_eq!(basis_readout(&s, &reg) as i64, signed.max(0));
    }
}

#[test]
fn shift_blocks_follow_the_code_order() {
    let shop = [0, 1];
    let reg = [2, 3, 4, 5, 6];
    let values = [0, 5, 8, 10];
    let block = add_shift_superposition(shop, &reg, values).unwrap();
    for code in 0..4u64 {
        let start = with_register_value(with_register_value(0, &shop, code), &reg, 0);
        let mut s = StateVector::<f64>::basis(7, start).unwrap();
        s.apply_all(qft(&reg).gates()).unwrap();
        s.apply_all(block.gates()).unwrap();
        s.apply_all(iqft(&reg).gates()).unwrap();
        assert_eq!(basis_readout(&s, &reg), values[code as usize] as u64);
        assert_eq!(basis_readout(&s, &shop), code);
    }
    let neg = add_shift_superposition(shop, &reg, qiss::circuits::negated_values([0, 4, 7, 9], 5)).unwrap();
    let start = with_register_value(0, &shop, 3);
    let mut s = StateVector::<f64>::basis(7, start).unwrap();
    s.apply_all(qft(&reg).gates()).unwrap();
    s.apply_all(neg.gates()).unwrap();
    s.apply_all(iqft(&reg).gates()).unwrap();
    assert_eq!(basis_readout(&s, &reg), 23);
}

#[test]
fn buffer_check_restores_buffer() {
    let config = ModelConfig::reference(1);
    let layout = layout_registers(&config, &OracleOptions::default());
    let check = check_buffer_max(&layout, 0, &config).unwrap();
    for b in 0..32u64 {
        let mut s = SparseState::<f64>::basis(layout.n_qubits, with_register_value(0, &layout.qb, b)).unwrap();
        s.apply_all(qft(&layout.qb).gates()).unwrap();
        s.apply_all(check.gates()).unwrap();
        s.apply_all(iqft(&layout.qb).gates()).unwrap();
        assert_eq!(basis_readout(&s, &layout.qb), b);
        if b < 16 {
            let c1 = basis_readout(&s, &[layout.c1[0]]);
            assert_eq!(c1 == 1, b <= 10, "b={b}");
        }
    }
}

#[test]
fn neg_volume_for_table_rows() {
    let config = ModelConfig::reference(1);
    let layout = layout_registers(&config, &OracleOptions::default());
    let nv = compute_neg_volume(&layout, &config).unwrap();
    for (codes, b_final, v_out) in [((1u8, 2u8), 3u64, 7i64), ((0, 0), 5, 0)] {
        let sched = Schedule::from_codes(&[codes]).unwrap();
        let shops = with_register_value(0, &layout.shop_qubits(), sched.index());
        let mut s =
            SparseState::<f64>::basis(layout.n_qubits, with_register_value(shops, &layout.qb, b_final)).unwrap();
        s.apply_all(qft(&layout.qb).gates()).unwrap();
        s.apply_all(nv.gates()).unwrap();
        s.apply_all(iqft(&layout.qb).gates()).unwrap();
        assert_eq!(basis_readout(&s, &layout.qb) as i64, (-v_out).rem_euclid(32));
    }
}

#[test]
fn one_day_oracle_matches_classical_flags() {
    for with_cost in [false, true] {
        let config = ModelConfig::reference(1).with_c_max(with_cost.then_some(14));
        let opts = OracleOptions { with_cost, ..Default::default() };
        let oracle = build_oracle(&config, &opts).unwrap();
        let mut valid = 0;
        for idx in 0..16 {
            let sched = Schedule::from_index(idx, 1);
            let eval = evaluate_schedule(&config, &sched).unwrap();
            let flags = oracle.condition_flags(&sched).unwrap();
            let mut want = vec![eval.c1_per_day[0], eval.c2, eval.c3];
            if with_cost {
                want.push(eval.c_cost.unwrap());
            }
            assert_eq!(flags, want, "schedule {}", sched.to_bits());
            valid += flags.iter().all(|&f| f) as usize;
        }
        assert_eq!(valid, if with_cost { 1 } else { 6 });
    }
}

#[test]
fn two_day_oracle_matches_brute_force() {
    let config = ModelConfig::reference(2);
    let oracle = build_oracle(&config, &OracleOptions::default()).unwrap();
    let feasible = brute_force(&config).unwrap();
    let mut count = 0;
    for idx in 0..256 {
        let sched = Schedule::from_index(idx, 2);
        let all = oracle.condition_flags(&sched).unwrap().iter().all(|&f| f);
        assert_eq!(all, feasible.contains(&sched), "schedule {}", sched.to_bits());
        count += all as usize;
    }
    assert_eq!(count, 22);
}

#[test]
fn unfused_oracle_agrees_and_uses_more_adders() {
    let config = ModelConfig::reference(1);
    let fused = build_oracle(&config, &OracleOptions::default()).unwrap();
    let plain = build_oracle(&config, &OracleOptions { fuse_adders: false, ..Default::default() }).unwrap();
    assert_eq!(fused.body.count(GateKind::Phase), 20);
    assert_eq!(plain.body.count(GateKind::Phase), 30);
    for idx in 0..16 {
        let s = Schedule::from_index(idx, 1);
        assert_eq!(fused.condition_flags(&s).unwrap(), plain.condition_flags(&s).unwrap());
    }
}

#[test]
fn oracle_then_inverse_is_identity() {
    let config = ModelConfig::reference(1);
    let oracle = build_oracle(&config, &OracleOptions::default()).unwrap();
    let mut s = StateVector::<f64>::new(oracle.layout.n_qubits).unwrap();
    s.apply_all(oracle.prep.gates()).unwrap();
    let start = s.clone();
    s.apply_all(oracle.body.gates()).unwrap();
    s.apply_all(oracle.body.inverse().gates()).unwrap();
    assert!(s.max_abs_diff(&start) < TOL);
}

#[test]
fn cost_check_requires_threshold() {
    let config = ModelConfig::reference(1);
    let opts = OracleOptions { with_cost: true, ..Default::default() };
    let layout = layout_registers(&config, &opts);
    assert!(matches!(check_cost(&layout, &config), Err(qiss::Error::InvalidState(_))));
    assert!(build_oracle(&config, &opts).is_err());
    let no_cost = layout_registers(&config, &OracleOptions::default());
    assert!(check_cost(&no_cost, &config.with_c_max(Some(12))).is_err());
}

#[test]
fn diffuser_fixes_uniform_state_and_squares_to_identity() {
    let config = ModelConfig::reference(1);
    let layout = layout_registers(&config, &OracleOptions::default());
    let d = diffuser(&layout);
    assert_eq!(d.count(GateKind::H) + d.count(GateKind::X), 16);
    assert_eq!(d.count(GateKind::Mcz), 1);
    let n = layout.n_qubits;
    let mut uniform = StateVector::<f64>::new(n).unwrap();
    for q in layout.shop_qubits() {
        uniform.apply(&qiss::simulator::Gate::H(q)).unwrap();
    }
    let mut s = uniform.clone();
    s.apply_all(d.gates()).unwrap();
    // Fixed up to a global phase of -1.
    let overlap: f64 = s.amplitudes().iter().zip(uniform.amplitudes()).map(|(a, b)| (a.conj() * b).re).sum();
    assert!((overlap.abs() - 1.0).abs() < TOL);
    let start = StateVector::<f64>::basis(n, 0b1011).unwrap();
    let mut t = start.clone();
    t.apply_all(d.gates()).unwrap();
    t.apply_all(d.gates()).unwrap();
    assert!(t.max_abs_diff(&start) < TOL);
}

#[test]
fn grover_one_rotation_amplifies_valid_states() {
    let config = ModelConfig::reference(1);
    let feasible = brute_force(&config).unwrap();
    for (j, total) in [(0usize, 6.0 / 16.0), (1, 0.84375)] {
        let g = grover_circuit(&config, j, &OracleOptions::default()).unwrap();
        let mut s = StateVector::<f64>::new(g.layout.n_qubits).unwrap();
        s.apply_all(g.circuit.gates()).unwrap();
        let shops = g.layout.shop_qubits();
        let dist = s.marginal(&shops).unwrap();
        let mass: f64 =
            (0..16u64).filter(|&i| feasible.contains(&Schedule::from_index(i, 1))).map(|i| dist[i as usize]).sum();
        assert!((mass - total).abs() < TOL, "j={j}: {mass}");
        assert!((s.norm_sqr() - 1.0).abs() < TOL);
    }
}

#[test]
fn readout_order_matches_schedule_index() {
    let config = ModelConfig::reference(2);
    let layout = layout_registers(&config, &OracleOptions::default());
    let sched = Schedule::from_codes(&[(1, 2), (3, 0)]).unwrap();
    let idx = with_register_value(0, &layout.shop_qubits(), sched.index());
    assert_eq!(register_value(idx, &layout.day_s1(1)), 3);
    assert_eq!(register_value(idx, &layout.day_s2(0)), 2);
}
