use crate::model::{volume_window, ModelConfig, Shop};

/// Builder switches shared by the layout and the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Allocate the cost register and the `c_cost` flag.
    pub with_cost: bool,
    /// Fuse consecutive constant adders on the same register.
    pub fuse_adders: bool,
    /// Give day one as many ancillas as later days.
    pub uniform_ancilla: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { with_cost: false, fuse_adders: true, uniform_ancilla: false }
    }
}

/// Qubit indices of every register. Integer registers list the MSB first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    pub n_days: usize,
    /// Two qubits per day, day-major.
    pub qs1: Vec<usize>,
    pub qs2: Vec<usize>,
    pub qb: Vec<usize>,
    pub anc: Vec<Vec<usize>>,
    pub qcost: Vec<usize>,
    pub c1: Vec<usize>,
    pub c2: usize,
    pub c3: usize,
    pub c_cost: Option<usize>,
    pub out_minus: usize,
    pub n_qubits: usize,
}

impl RegisterLayout {
    pub fn day_s1(&self, day: usize) -> [usize; 2] {
        [self.qs1[2 * day], self.qs1[2 * day + 1]]
    }

    pub fn day_s2(&self, day: usize) -> [usize; 2] {
        [self.qs2[2 * day], self.qs2[2 * day + 1]]
    }

    /// Shop qubits in schedule-index order (all S1 codes, then all S2 codes).
    pub fn shop_qubits(&self) -> Vec<usize> {
        self.qs1.iter().chain(&self.qs2).copied().collect()
    }

    /// Condition flags: c1 per day, c2, c3, then c_cost if present.
    pub fn cond(&self) -> Vec<usize> {
        let mut v = self.c1.clone();
        v.push(self.c2);
        v.push(self.c3);
        v.extend(self.c_cost);
        v
    }

    pub fn ancilla_count(&self) -> usize {
        self.anc.iter().map(Vec::len).sum()
    }
}

fn bits_for(x: i64) -> usize {
    (64 - (x.max(1) as u64 - 1).leading_zeros()) as usize
}

/// Smallest two's-complement width holding every value in each range.
fn signed_width(ranges: &[(i64, i64)]) -> usize {
    (2..63)
        .find(|&m| {
            let half = 1i64 << (m - 1);
            ranges.iter().all(|&(lo, hi)| lo >= -half && hi < half)
        })
        .unwrap_or(63)
}

/// Buffer width: 5 qubits for one day, 6 otherwise, widened when the
/// sign-bit comparisons would otherwise wrap for a feasible-so-far path.
pub fn buffer_width(config: &ModelConfig) -> usize {
    signed_width(&buffer_ranges(config)).max(if config.n_days == 1 { 5 } else { 6 })
}

fn buffer_ranges(config: &ModelConfig) -> Vec<(i64, i64)> {
    let up1 = *config.units_table(Shop::S1).iter().max().unwrap_or(&0);
    let up2 = *config.units_table(Shop::S2).iter().max().unwrap_or(&0);
    let (b0, bmax, n) = (config.b_init, config.b_max, config.n_days as i64);
    let (v_low, v_up) = volume_window(config);
    let v_max = b0 + n * up1;
    let mut ranges = vec![
        (b0 - up2, b0 + up1),
        (-(bmax + 1), b0 + up1 - bmax - 1),
        (v_low - 1 - v_max, v_low - 1),
        (v_up - v_max, v_up),
    ];
    if n > 1 {
        // Later days start from a buffer in [0, B_max].
        ranges.push((-up2, bmax + up1));
        ranges.push((-(bmax + 1), up1 - 1));
    }
    ranges
}

/// Signed range of day one's pre-clamp buffer.
fn day_one_range(config: &ModelConfig) -> (i64, i64) {
    let up1 = *config.units_table(Shop::S1).iter().max().unwrap_or(&0);
    let up2 = *config.units_table(Shop::S2).iter().max().unwrap_or(&0);
    (config.b_init - up2, config.b_init + up1)
}

/// Whether day one can use the clamp that skips the second buffer bit.
pub(crate) fn day_one_reduced(config: &ModelConfig, width: usize, options: &OracleOptions) -> bool {
    let (lo, hi) = day_one_range(config);
    config.n_days >= 2 && !options.uniform_ancilla && signed_width(&[(lo, hi)]) < width
}

/// Cost register width: `ceil(log2(max total cost))`, widened so that
/// `C_out - C_max` keeps the right sign for every reachable cost.
pub fn cost_width(config: &ModelConfig) -> usize {
    let max_cost = config.max_daily_cost() * config.n_days as i64;
    let base = bits_for(max_cost).max(1);
    match config.c_max {
        Some(c) => signed_width(&[(-c, max_cost - c)]).max(base),
        None => base,
    }
}

/// Assigns qubit indices in the order shops, buffer, ancillas, cost,
/// conditions, marking qubit.
pub fn layout_registers(config: &ModelConfig, options: &OracleOptions) -> RegisterLayout {
    let n = config.n_days;
    let mut next = 0usize;
    let mut take = |k: usize| {
        let v: Vec<usize> = (next..next + k).collect();
        next += k;
        v
    };
    let qs1 = take(2 * n);
    let qs2 = take(2 * n);
    let width = buffer_width(config);
    let qb = take(width);
    let reduced = day_one_reduced(config, width, options);
    let anc = (0..n).map(|d| take(if d == 0 && reduced { width - 1 } else { width })).collect();
    let qcost = if options.with_cost { take(cost_width(config)) } else { Vec::new() };
    let c1 = take(n);
    let c2 = take(1)[0];
    let c3 = take(1)[0];
    let c_cost = options.with_cost.then(|| take(1)[0]);
    let out_minus = take(1)[0];
    RegisterLayout { n_days: n, qs1, qs2, qb, anc, qcost, c1, c2, c3, c_cost, out_minus, n_qubits: next }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_cost() -> OracleOptions {
        OracleOptions { with_cost: true, ..Default::default() }
    }

    #[test]
    fn table_totals() {
        let one = ModelConfig::reference(1);
        assert_eq!(layout_registers(&one, &with_cost()).n_qubits, 24);
        assert_eq!(layout_registers(&one, &OracleOptions::default()).n_qubits, 18);
        let two = ModelConfig::reference(2);
        let l = layout_registers(&two, &with_cost());
        assert_eq!(l.n_qubits, 37);
        assert_eq!(l.ancilla_count(), 11);
        assert_eq!(l.qb.len(), 6);
        assert_eq!(l.cond().len(), 5);
    }

    #[test]
    fn registers_are_disjoint() {
        for n in 1..=4 {
            let l = layout_registers(&ModelConfig::reference(n), &with_cost());
            let mut all: Vec<usize> = l.shop_qubits();
            all.extend(&l.qb);
            all.extend(l.anc.iter().flatten());
            all.extend(&l.qcost);
            all.extend(l.cond());
            all.push(l.out_minus);
            let mut sorted = all.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
            assert_eq!(sorted, (0..l.n_qubits).collect::<Vec<_>>());
        }
    }

    #[test]
    fn widths_follow_thresholds() {
        let one = ModelConfig::reference(1);
        assert_eq!(cost_width(&one), 5);
        assert_eq!(cost_width(&one.clone().with_c_max(Some(16))), 5);
        assert_eq!(cost_width(&one.clone().with_c_max(Some(4))), 5);
        assert_eq!(cost_width(&one.clone().with_c_max(Some(18))), 6);
        assert_eq!(cost_width(&one.with_c_max(Some(3))), 6);
        assert_eq!(buffer_width(&ModelConfig::reference(3)), 6);
        assert!(buffer_width(&ModelConfig::reference(5)) > 6);
    }

    #[test]
    fn uniform_ancilla_option() {
        let opts = OracleOptions { uniform_ancilla: true, ..with_cost() };
        assert_eq!(layout_registers(&ModelConfig::reference(2), &opts).ancilla_count(), 12);
    }
}
