//! Independent numeric check of analytic spectra: finite-difference
//! Hamiltonians, non-Hermitian eigensolvers, level matching and wavefunction
//! diagnostics.

pub mod eigen;
pub mod hamiltonian;
pub mod pipeline;
pub mod report;

pub use eigen::{eigen_nonhermitian, CMatrix, EigenDecomposition, EigenOptions};
pub use hamiltonian::{
    build_hamiltonian, try_build_hamiltonian, Boundary, Discretization, Hamiltonian,
};
pub use pipeline::{
    norm_integral, numeric_spectrum, schrodinger_residual, verify_spectrum, NumericSpectrum,
    Verification, VerifyOptions,
};
pub use report::{
    match_spectrum, LevelMatch, SpectrumReport, SplitCluster, UnmatchedLevel, DEFAULT_E_TOL,
    DEFAULT_IM_TOL,
};
