//! Exact quasi-free CAR/CCR representations on finite Fock spaces, their
//! particle densities, the `𝒬` recursion and joint spectral measures.

mod operator;
mod q;
mod rep;
mod space;
mod sparse;
mod spectral;

pub use operator::{FockOperator, Ladder};
pub use q::{
    normal_ordered_product, q_apply, q_product, DensityFamily, COMMUTATION_TOLERANCE, MAX_NORMAL_ORDER,
    MAX_Q_ORDER,
};
pub use rep::{build_rep, DensityParts, FieldKind, Layout, QuasiFreeRep, DEFAULT_BOSON_CUTOFF};
pub use space::{FockSpace, Particle, MAX_BOSON_DIM, MAX_FERMION_MODES};
pub use sparse::SparseMatrix;
pub use spectral::{commutator_norm, joint_spectral_measure, operator_norm, SpectralAtom, ATOM_MERGE_TOLERANCE};
