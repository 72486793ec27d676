use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, Result};

/// Which of the two shops a quantity belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shop {
    /// Body shop, feeds the buffer.
    S1,
    /// Paint shop, drains the buffer.
    S2,
}

/// A complete problem instance of the two-shop, one-buffer model.
///
/// Money and units are integers throughout. Serialized as a flat JSON object
/// with exactly these field names; unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub n_days: usize,
    pub shift_hours_s1: [i64; 4],
    pub shift_hours_s2: [i64; 4],
    pub cost_per_hour_s1: i64,
    pub cost_per_hour_s2: i64,
    pub units_per_hour: i64,
    pub b_init: i64,
    pub b_max: i64,
    pub v_target: i64,
    pub delta: i64,
    #[serde(default)]
    pub c_max: Option<i64>,
}

impl ModelConfig {
    /// The reference instance for `n_days` days: shifts [0,5,8,10] / [0,4,7,9],
    /// $1 and 1 unit per hour, buffer starting at 5 and capped at 10,
    /// target 8 units per day.
    pub fn reference(n_days: usize) -> Self {
        let v_target = 8 * n_days as i64;
        Self {
            n_days,
            shift_hours_s1: [0, 5, 8, 10],
            shift_hours_s2: [0, 4, 7, 9],
            cost_per_hour_s1: 1,
            cost_per_hour_s2: 1,
            units_per_hour: 1,
            b_init: 5,
            b_max: 10,
            v_target,
            delta: default_delta(v_target),
            c_max: None,
        }
    }

    pub fn with_c_max(mut self, c_max: Option<i64>) -> Self {
        self.c_max = c_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_days == 0 {
            return Err(invalid_arg("n_days must be positive"));
        }
        for (name, hours) in [("shift_hours_s1", &self.shift_hours_s1), ("shift_hours_s2", &self.shift_hours_s2)] {
            if hours[0] != 0 {
                return Err(invalid_arg(format!("{name} must start at 0")));
            }
            if hours.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid_arg(format!("{name} must be strictly increasing")));
            }
        }
        if self.cost_per_hour_s1 < 0 || self.cost_per_hour_s2 < 0 {
            return Err(invalid_arg("hourly costs must be non-negative"));
        }
        if self.units_per_hour < 1 {
            return Err(invalid_arg("units_per_hour must be at least 1"));
        }
        if self.b_init < 0 || self.b_init > self.b_max {
            return Err(invalid_arg("need 0 <= b_init <= b_max"));
        }
        if self.delta < 1 {
            return Err(invalid_arg("delta must be at least 1"));
        }
        if self.v_target < 0 {
            return Err(invalid_arg("v_target must be non-negative"));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn hours_table(&self, shop: Shop) -> &[i64; 4] {
        match shop {
            Shop::S1 => &self.shift_hours_s1,
            Shop::S2 => &self.shift_hours_s2,
        }
    }

    pub fn cost_per_hour(&self, shop: Shop) -> i64 {
        match shop {
            Shop::S1 => self.cost_per_hour_s1,
            Shop::S2 => self.cost_per_hour_s2,
        }
    }

    /// Units moved by `shop` for each of the four shift codes.
    pub fn units_table(&self, shop: Shop) -> [i64; 4] {
        self.hours_table(shop).map(|h| h * self.units_per_hour)
    }

    /// Money spent by `shop` for each of the four shift codes.
    pub fn cost_table(&self, shop: Shop) -> [i64; 4] {
        let rate = self.cost_per_hour(shop);
        self.hours_table(shop).map(|h| h * rate)
    }

    /// Largest cost any single day can incur ($19 for the reference instance).
    pub fn max_daily_cost(&self) -> i64 {
        self.cost_table(Shop::S1)[3] + self.cost_table(Shop::S2)[3]
    }

    /// Number of schedules, 16^n_days, if it fits in a u64.
    pub fn search_space_size(&self) -> Option<u64> {
        16u64.checked_pow(u32::try_from(self.n_days).ok()?)
    }
}

/// Tolerance convention: `max(1, floor(0.05 * v_target))`.
pub fn default_delta(v_target: i64) -> i64 {
    (v_target * 5 / 100).max(1)
}
