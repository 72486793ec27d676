use std::fmt;

use crate::error::{invalid_arg, Error, Result};

/// Two-bit index into a shop's shift-length table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ShiftCode(u8);

impl ShiftCode {
    pub const ALL: [ShiftCode; 4] = [ShiftCode(0), ShiftCode(1), ShiftCode(2), ShiftCode(3)];

    pub fn new(code: u8) -> Result<Self> {
        if code < 4 {
            Ok(Self(code))
        } else {
            Err(invalid_arg(format!("shift code {code} is outside 0..=3")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl TryFrom<u8> for ShiftCode {
    type Error = Error;

    fn try_from(code: u8) -> Result<Self> {
        Self::new(code)
    }
}

impl fmt::Display for ShiftCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02b}", self.0)
    }
}

/// One shift code per shop per day.
///
/// The flat index used for basis states and CSV output lays out every day's
/// shop-1 code first, then every day's shop-2 code, two bits each, most
/// significant first. For one day this is `4*s1 + s2`, i.e. `|S1>|S2>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Schedule {
    days: Vec<(ShiftCode, ShiftCode)>,
}

impl Schedule {
    pub fn new(days: Vec<(ShiftCode, ShiftCode)>) -> Self {
        Self { days }
    }

    /// Builds a schedule from raw `(s1, s2)` code pairs.
    pub fn from_codes(codes: &[(u8, u8)]) -> Result<Self> {
        codes
            .iter()
            .map(|&(a, b)| Ok((ShiftCode::new(a)?, ShiftCode::new(b)?)))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn n_days(&self) -> usize {
        self.days.len()
    }

    pub fn days(&self) -> &[(ShiftCode, ShiftCode)] {
        &self.days
    }

    pub fn day(&self, day: usize) -> (ShiftCode, ShiftCode) {
        self.days[day]
    }

    pub fn set(&mut self, day: usize, codes: (ShiftCode, ShiftCode)) {
        self.days[day] = codes;
    }

    /// Inverse of [`Schedule::index`].
    pub fn from_index(index: u64, n_days: usize) -> Self {
        let block = 2 * n_days as u32;
        let s1_block = index >> block;
        let s2_block = index & ((1u64 << block) - 1);
        let days = (0..n_days)
            .map(|d| {
                let shift = 2 * (n_days - 1 - d) as u32;
                (ShiftCode(((s1_block >> shift) & 3) as u8), ShiftCode(((s2_block >> shift) & 3) as u8))
            })
            .collect();
        Self { days }
    }

    /// Flat basis-state index; defined up to 16 days.
    pub fn index(&self) -> u64 {
        let mut s1 = 0u64;
        let mut s2 = 0u64;
        for &(a, b) in &self.days {
            s1 = (s1 << 2) | a.0 as u64;
            s2 = (s2 << 2) | b.0 as u64;
        }
        (s1 << (2 * self.days.len())) | s2
    }

    /// Bitstring in the shop-register order, e.g. `"0110"` for one day (01, 10).
    pub fn to_bits(&self) -> String {
        let s1 = self.days.iter().map(|(a, _)| format!("{a}"));
        let s2 = self.days.iter().map(|(_, b)| format!("{b}"));
        s1.chain(s2).collect()
    }

    pub fn from_bits(bits: &str) -> Result<Self> {
        if bits.is_empty() || !bits.len().is_multiple_of(4) || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(invalid_arg(format!("'{bits}' is not a 4n-bit schedule string")));
        }
        let code = |i: usize| ShiftCode(u8::from_str_radix(&bits[2 * i..2 * i + 2], 2).expect("checked binary digits"));
        let n = bits.len() / 4;
        Ok(Self { days: (0..n).map(|d| (code(d), code(n + d))).collect() })
    }

    /// Human-readable `s1 s2` codes per day, e.g. `01/10 11/00`.
    pub fn codes_string(&self) -> String {
        self.days.iter().map(|(a, b)| format!("{a}/{b}")).collect::<Vec<_>>().join(" ")
    }
}
