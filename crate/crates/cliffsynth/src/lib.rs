//! Clifford circuit compiler built on the symplectic representation.
//!
//! An n-qubit Clifford operator is, up to global phase, a pair (S, p): a
//! 2n x 2n symplectic matrix over GF(2) describing how conjugation moves
//! Pauli operators around, and a Z_4 phase vector fixing the sign/i-factor
//! of each generator image. This crate decomposes any such pair into short
//! structured circuits:
//!
//! * a nine-segment form CX P_all CX P H_all P_all CX P H, and
//! * a seven-segment form with a single CNOT stage, CX CZ P H_all CZ P H,
//!
//! plus a trailing Pauli layer that pins the phases exactly. CNOT stages are
//! synthesized either by Gaussian elimination or by the Patel-Markov-Hayes
//! partitioned method. Stabilizer states get dedicated preparation circuits
//! whose entangling part is a single CNOT or CZ stage.
//!
//! Everything is verified on the way out: compilation re-simulates its own
//! output with a phase-exact stabilizer tableau and refuses to return
//! circuits that do not implement the requested operator.

pub mod circuit;
pub mod compiler;
pub mod error;
pub mod f2;
pub mod random;
pub mod stabilizer;
pub mod symplectic;
pub mod synth;

pub use circuit::{Circuit, Gate, GateCounts, Segment, SegmentTag};
pub use compiler::{
    build_nine_form, build_one_cnot_form, commute_cx_hall, compile, decompose, pauli_fixup,
    prep_state, rewrite_p_cx, to_one_cnot_parts, CnotSynth, CompileOptions, CompiledClifford,
    DecompositionParts, OneCnotParts, PreparedState,
};
pub use error::{Error, Result};
pub use f2::{F2Matrix, F2Vector};
pub use random::{
    default_gate_count, random_circuit, random_clifford, random_invertible, random_state_spec,
    random_symmetric, rng_from_seed,
};
pub use stabilizer::{canonical_form, complete_clifford, Pauli, StabilizerStateSpec, Tableau};
pub use symplectic::{
    cnot_block_rep, compose, gate_rep, minimal_phases, parse_symplectic_text, symplectic_dot,
    SymplecticRep,
};
pub use synth::{
    cnot_circuit_matrix, synth_cnot_gauss, synth_cnot_pmh, synth_cz, synth_h_all,
    synth_hadamard_layer, synth_p_all, synth_phase_layer,
};
