//! Adiabatic annealing on registers of spin-1 qutrits for clustering points
//! in the plane.
//!
//! A clustering instance is turned into a final Hamiltonian that is diagonal
//! in the `|m₁, …, mₙ⟩` basis ([`hamiltonian`]), the register is evolved from
//! the ground state of a transverse field `h Σ Sˣ` along a linear schedule
//! ([`anneal`]), and the final probabilities are read back as partitions of
//! the points. An exhaustive classical search ([`clustering::oracle_min`])
//! certifies the result on small instances.
//!
//! ```no_run
//! use qutrit_anneal::harness::{run, Preset};
//!
//! let result = run(&Preset::Fig1.spec(true)).unwrap();
//! assert!(result.matched);
//! println!("{}", result.top_partition);
//! ```

pub mod anneal;
pub mod clustering;
pub mod error;
pub mod expm;
pub mod hamiltonian;
pub mod harness;
pub mod qutrit;

pub use anneal::{
    anneal, decode, initial_state, step, AnnealConfig, Decoder, InstantaneousHamiltonian,
    ReadoutReport, StateVector, StepMode,
};
pub use clustering::{
    cost, distance, distance_matrix, enumerate_assignments, oracle_diag_min, oracle_min,
    DistanceMatrix, OracleResult, Partition, Point, PointSet,
};
pub use error::{Error, Result};
pub use hamiltonian::{
    assemble, build_driver, build_k2_penalty, build_kmeanspp, build_onehot_k3,
    build_onehot_k3_pinned, build_onehot_multispin, build_penalty_kmeanspp, build_penalty_onehot,
    DiagonalHamiltonian, DriverHamiltonian, EncodingScheme, Method,
};
pub use qutrit::{
    basis_index, group_projector_diagonal, projector, spin_operator, BasisIndex, Projection,
    Projector3, SpinKind, SpinMatrix,
};
