// SPDX-License-Identifier: Apache-2.0

//! Reversible logic synthesis over the NOT-CNOT-Toffoli basis.
//!
//! The pipeline takes a bijection on `n`-bit words and produces a gate list:
//!
//! 1. [`cascade::decompose`] splits the function into `n` single-target
//!    stages, each described by a toggle table (`T(q_i) = q_i ^ q_i'` over
//!    the intermediate state).
//! 2. [`qmap::build_qmap`] lays each toggle table out as a Gray-labelled map,
//!    and [`qmap::minimize_disjoint`] or [`qmap::minimize_esop`] extracts a
//!    cover.
//! 3. [`circuit::realize_stage`] turns every cube into a multi-controlled
//!    Toffoli on the stage target; [`circuit::lower_polarity`] and
//!    [`circuit::lower_mct`] bring the result into the basis.
//! 4. [`sim::verify`] checks the circuit against the function on every
//!    input.
//!
//! ```
//! use qmap_core::{gray_to_binary_function, synthesize, verify, SynthOptions, Verdict};
//!
//! let f = gray_to_binary_function(4).unwrap();
//! let circuit = synthesize(&f, &SynthOptions::default()).unwrap();
//! assert_eq!(circuit.len(), 6);
//! assert_eq!(verify(&circuit, &f).unwrap(), Verdict::Equal);
//! ```

pub mod boolfn;
pub mod cascade;
pub mod circuit;
pub mod qasm;
pub mod qmap;
pub mod render;
pub mod sim;

pub use boolfn::{
    gray_to_binary_function, identity_function, is_bijective, parse_truth_table, BitWord,
    BoolFnError, ReversibleFunction,
};
pub use cascade::{
    decompose, find_feasible_order, CascadeError, CascadeInfeasible, StageOrder, Toggle,
    ToggleTable,
};
pub use circuit::{
    cost, invert, lower_mct, lower_polarity, realize_stage, synthesize, synthesize_detailed,
    Circuit, CircuitError, Control, CostMode, CostModel, Gate, GateCensus, GateKind, Lowering,
    OrderStrategy, Polarity, SynthError, SynthOptions, Synthesis,
};
pub use qasm::{export_qasm, parse_qasm, QasmError};
pub use qmap::{
    build_qmap, cube_cells, minimize_disjoint, minimize_esop, pprm_cover, verify_cover, Cover,
    CoverMode, Cube, Literal, QMapGrid,
};
pub use render::{render_circuit, render_qmap};
pub use sim::{apply_gate, permutation_of, run, verify, SimError, SimState, Verdict};
