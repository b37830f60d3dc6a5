//! Periodic spectral grid and the Fourier multipliers used by the analysis.

mod cutoff;
mod field;
mod grid;
mod ops;

pub use cutoff::{CutoffPair, CutoffProfile};
pub use field::{ScalarField, VectorField};
pub use grid::SpectralGrid;
pub use ops::{
    bernstein_check, fractional_laplacian, fractional_laplacian_vec, frequency_split, h_norm,
    high_part, hodge_compressible, hodge_incompressible, hodge_reconstruct, hodge_split, low_part,
    sobolev_norm, BernsteinConstants, BernsteinEntry, BernsteinReport, FrequencySplit, HodgeSplit,
};
