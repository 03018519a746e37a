//! Exact modular data of quantum doubles `D(G)` of finite groups: character
//! tables, anyons, S and T matrices, fusion, trivializing algebras, and the
//! classification of chargeon-fluxion modular invariants via near-fields.

#![allow(clippy::needless_range_loop)]

pub mod chartab;
pub mod cyclo;
pub mod double;
pub mod group;
pub mod modinv;
pub mod nearfield;
pub mod trivalg;

pub use chartab::{character_table, CharacterTable};
pub use cyclo::{CycMatrix, CycNum, Rational};
pub use double::{AnyonLabel, ModularData, QuantumDouble};
pub use group::{parse_group_spec, FiniteGroup, GroupOps, GroupSpec, Subgroup};
pub use modinv::{chargeon_fluxion_pairs, classify_group, is_modular_invariant, necessary_condition_ladder};
pub use nearfield::NearField;
pub use trivalg::{theorem34_permutation, Cocycle2, EquivalenceReport};
