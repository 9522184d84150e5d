//! Parity invariants of orthogonal arrays and mutually orthogonal Latin
//! squares: τ- and σ-parities, their graphs, equivalence classes under
//! column relabelling and swapping, and small constructions and searches.

pub mod classes;
pub mod constructions;
pub mod ensemble;
pub mod error;
pub mod field;
pub mod graphs;
pub mod io;
pub mod latin;
pub mod oa;
pub mod order;
pub mod parity;
pub mod perm;
pub mod search;

pub use classes::{
    class_of_oa, class_of_oa_with_budget, enumerate_classes, orbit, orbit_with_budget, ClassTable, OrbitSummary,
    ParityState,
};
pub use constructions::{
    block_sigma, circulant_sigma, linear_mols, linear_squares, lower_triangular_sigma, pp_plausible_sigma,
    random_pp_plausible_sigma, residue_pattern_oa, ResiduePattern,
};
pub use ensemble::{check_equiparity_laws, ensemble_census, ensemble_census_tau, max_equiparity, EnsembleCensus};
pub use error::{Error, Result};
pub use field::{field_table, FieldTable};
pub use graphs::{sigma_graph, stack, tau_graphs, SimpleGraph, StackShape};
pub use io::{parse_catalogue, parse_parity_json, read_array, CatalogueEntry, ParityReport};
pub use latin::LatinSquare;
pub use oa::{apply_transform, mols_set_to_oa, mols_to_oa, oa_to_mols, OrthogonalArray, Transform, TransformOutcome};
pub use order::{Bit, Order, OrderClass};
pub use parity::{
    check_plausible, latin_square_parities, sigma_from_tau, sigma_parity, tau_from_sigma, tau_parity, ParityTriple,
    PlausibilityReport, PpStatus, SigmaMatrix, StandardSigma, TauVector,
};
pub use perm::{permutation_parity, Permutation};
pub use search::{
    achieved_parity_types, enumerate_latin_squares, find_oa_with_parity, SearchMode, SearchOutcome, SearchSpec,
    SearchTarget,
};
