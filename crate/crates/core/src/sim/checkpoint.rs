//! Binary snapshot of a spectral state.
//!
//! Layout, little-endian: magic `RHDCHK01`, `u32` grid size `n`, `f64` box
//! length, `f64` time, `u32` length of the component list followed by the
//! UTF-8 list `rho,u1,u2,u3,theta,eta`, then for each component in that order
//! the `n³` coefficients in row-major order as `(re, im)` pairs of `f64`.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::fourier::SpectralGrid;
use crate::model::{PerturbationState, COMPONENTS};
use crate::{Error, Result};

pub const MAGIC: &[u8; 8] = b"RHDCHK01";

#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub n: usize,
    pub box_len: f64,
    pub time: f64,
    pub state: PerturbationState,
}

fn io(e: std::io::Error) -> Error {
    Error::Checkpoint(e.to_string())
}

pub fn write_checkpoint<W: Write>(
    mut w: W,
    grid: &SpectralGrid,
    time: f64,
    state: &PerturbationState,
) -> Result<()> {
    state.check_grid(grid)?;
    let order = COMPONENTS.join(",");
    w.write_all(MAGIC).map_err(io)?;
    w.write_all(&(grid.n() as u32).to_le_bytes()).map_err(io)?;
    w.write_all(&grid.box_len().to_le_bytes()).map_err(io)?;
    w.write_all(&time.to_le_bytes()).map_err(io)?;
    w.write_all(&(order.len() as u32).to_le_bytes()).map_err(io)?;
    w.write_all(order.as_bytes()).map_err(io)?;
    let mut buf = Vec::with_capacity(16 * grid.len());
    for c in state.components() {
        buf.clear();
        for z in &c.coeffs {
            buf.extend_from_slice(&z.re.to_le_bytes());
            buf.extend_from_slice(&z.im.to_le_bytes());
        }
        w.write_all(&buf).map_err(io)?;
    }
    w.flush().map_err(io)
}

fn read_exact<R: Read, const N: usize>(r: &mut R) -> Result<[u8; N]> {
    let mut b = [0u8; N];
    r.read_exact(&mut b).map_err(io)?;
    Ok(b)
}

pub fn read_checkpoint<R: Read>(mut r: R) -> Result<Checkpoint> {
    let magic: [u8; 8] = read_exact(&mut r)?;
    if &magic != MAGIC {
        return Err(Error::Checkpoint("bad magic".into()));
    }
    let n = u32::from_le_bytes(read_exact(&mut r)?) as usize;
    let box_len = f64::from_le_bytes(read_exact(&mut r)?);
    let time = f64::from_le_bytes(read_exact(&mut r)?);
    let order_len = u32::from_le_bytes(read_exact(&mut r)?) as usize;
    if order_len > 256 {
        return Err(Error::Checkpoint(format!("component list of {order_len} bytes")));
    }
    let mut order = vec![0u8; order_len];
    r.read_exact(&mut order).map_err(io)?;
    if order != COMPONENTS.join(",").as_bytes() {
        return Err(Error::Checkpoint(format!(
            "unsupported component order {:?}",
            String::from_utf8_lossy(&order)
        )));
    }
    let grid = SpectralGrid::new(n, box_len).map_err(|e| Error::Checkpoint(e.to_string()))?;
    let mut state = PerturbationState::zeros(&grid);
    let mut buf = vec![0u8; 16 * grid.len()];
    for c in state.components_mut() {
        r.read_exact(&mut buf).map_err(io)?;
        for (z, chunk) in c.coeffs.iter_mut().zip(buf.chunks_exact(16)) {
            let re = f64::from_le_bytes(chunk[..8].try_into().unwrap());
            let im = f64::from_le_bytes(chunk[8..].try_into().unwrap());
            *z = Complex64::new(re, im);
        }
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest).map_err(io)? != 0 {
        return Err(Error::Checkpoint("trailing bytes".into()));
    }
    Ok(Checkpoint {
        n,
        box_len,
        time,
        state,
    })
}
