//! Noise tailoring and error mitigation for iterative quantum algorithms,
//! evaluated on a dense density-matrix simulator.
//!
//! The crate bundles the full pipeline:
//!
//! - [`pauli`]: exact signed Pauli algebra, Clifford conjugation, PTMs
//! - [`circuit`]: cycle-structured circuits, Haar sampling, KAK synthesis
//! - [`simulator`]: density matrices, configurable hard-cycle noise, shots
//! - [`rc`]: randomized compiling and the twirled-channel estimator
//! - [`cb`]: cycle benchmarking and Pauli-decay fits
//! - [`mitigation`]: Bloch-vector rescaling and McWeeny purification
//! - [`qite`]: imaginary-time evolution of the transverse-field Ising chain
//! - [`harness`]: experiment runners, configs, manifests, CSV/JSON output

pub mod circuit;
pub mod linalg;
pub mod pauli;
