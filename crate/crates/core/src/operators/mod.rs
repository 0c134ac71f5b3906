//! Constructors for the radial Laplacian, its symmetry, the gauge-rotated
//! Hamiltonians in every chart, and the hidden-algebra generators.

mod assembly;
mod catalog;
mod generators;
mod hamiltonian;
pub(crate) mod laplacian;
mod params;

pub use assembly::{
    assemble_hamiltonian, assemble_unchecked, delta_r_from_sl4, direct_counterpart, l1_from_sl4,
    Variant,
};
pub use catalog::{build_catalog, Catalog, CatalogEntry, GeneratorEntry};
pub use generators::{build_generators, Algebra, GeneratorSet, H3_FIRST_CLASS, H3_SECOND_CLASS};
pub use hamiltonian::{build_h_es, build_h_qes, delta_v, HamiltonianChart};
pub use laplacian::{build_delta_lb, build_delta_r, build_delta_r_masses, build_delta_r_w, build_l1};
pub use params::{parse_rational, MassTriple, ParamsF64, PotentialParams};
