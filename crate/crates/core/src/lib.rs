//! Exact centralizers of finitely generated subgroups of PGL_n(ℂ).
//!
//! A class `[X]` centralizes `[A]` in PGL_n exactly when `XA = ξAX` for an
//! n-th root of unity ξ. For a generator set `A_1..A_k` the engine solves the
//! linear system for every twist tuple `(ξ_1..ξ_k)`, decides which solution
//! spaces contain an invertible matrix, and reads off the component group of
//! the centralizer as the subgroup of twist tuples that do.
//!
//! All arithmetic is exact over cyclotomic fields.

pub mod cli;
pub mod compgroup;
pub mod cyclofield;
pub mod exactla;
pub mod families;
pub mod twistcent;

pub use compgroup::{classify_label, component_group, component_group_with, ComponentGroupReport};
pub use cyclofield::{cyc_make, CycField, CycNum};
pub use exactla::{LinearSpace, Matrix};
pub use families::{build_family, FamilyId, FamilySpec};
pub use twistcent::{
    centralizer, find_invertible, solve_stratum, GeneratorSet, Stratum, StratumStatus, TwistTuple,
    WitnessSearch,
};
