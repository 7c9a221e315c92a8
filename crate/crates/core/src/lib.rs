//! Quantum finite automata with classical states: simulation, constructions,
//! DFA obstruction analysis, and equivalence checking via bilinear machines.

pub mod analysis;
pub mod constructions;
pub mod equivalence;
pub mod error;
pub mod io;
pub mod linalg;
pub mod machines;
pub mod random;
pub mod words;

pub use analysis::{
    dfa_equivalent, find_f_construction, find_mm_blocker, minimize_dfa, DfaComparison,
    FConstructionWitness, MmBlockerWitness,
};
pub use equivalence::{
    bilinearize, blm_equivalent, blm_word_fn, brute_force_k_equiv, embed_qfac, qfac_equivalent,
    qfac_equivalent_all, Blm, BlockEmbedding, EquivalenceVerdict,
};
pub use error::{Error, Result};
pub use io::{load_machine, parse_machine, save_machine, to_canonical_json, Machine};
pub use linalg::{Complex64, ComplexMatrix, ComplexVector, DEFAULT_TOL};
pub use machines::{Dfa, KLetterQfa, MmQfa, MoQfa, Qfac, QfaCl, RunTrace};
