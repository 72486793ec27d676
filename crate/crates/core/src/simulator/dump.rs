//! Binary state dump: 16-byte header then little-endian `(re, im)` doubles.

use std::io::{Read, Write};

use num_complex::Complex;

use super::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DUMP_MAGIC: &[u8; 8] = b"QISSSTV1";

pub fn write_dump<T: Real, W: Write>(state: &StateVector<T>, mut out: W) -> Result<()> {
    use super::QuantumState;
    out.write_all(DUMP_MAGIC)?;
    out.write_all(&(state.n_qubits() as u32).to_le_bytes())?;
    out.write_all(&0u32.to_le_bytes())?;
    let mut buf = Vec::with_capacity(16 * 4096);
    for chunk in state.amplitudes().chunks(4096) {
        buf.clear();
        for a in chunk {
            buf.extend_from_slice(&a.re.as_f64().to_le_bytes());
            buf.extend_from_slice(&a.im.as_f64().to_le_bytes());
        }
        out.write_all(&buf)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_dump<T: Real, R: Read>(mut input: R) -> Result<StateVector<T>> {
    let mut header = [0u8; 16];
    input.read_exact(&mut header)?;
    if &header[..8] != DUMP_MAGIC {
        return Err(Error::InvalidState("not a state dump (bad magic)".into()));
    }
    let n = u32::from_le_bytes(header[8..12].try_into().expect("4 bytes")) as usize;
    // Validate the size before allocating.
    StateVector::<T>::new(n).map(drop)?;
    let mut raw = vec![0u8; 16 << n];
    input.read_exact(&mut raw)?;
    let amps = raw
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Complex::new(T::of(re), T::of(im))
        })
        .collect();
    StateVector::from_amplitudes(amps)
}
