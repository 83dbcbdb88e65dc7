//! Exact homological algebra for finitely generated modules over group
//! algebras `RG`, with `R` the integers or `Z/p^n` and `G` finite.
//!
//! The crate covers the `R`-split (relative) exact structure, weakly
//! projective modules, Gorenstein projective modules and the approximation
//! triangles relating the relative stable category to the stable category
//! of Gorenstein projectives. Everything is computed exactly on top of
//! Smith normal forms over arbitrary-precision integers.

pub mod algebra;
pub mod corpus;
pub mod decomposition;
pub mod error;
pub mod group;
pub mod homological;
pub mod linsolve;
pub mod matrix;
pub mod module;
pub mod ring;
pub mod snf;

pub use num_bigint;

pub use algebra::{regular_representation, AlgebraElement};
pub use decomposition::{
    certify_stable_iso, check_fpd_tensor, gproj_approximation, psi, r_split_approximation, ApproximationTriangle,
    StableIsoCertificate,
};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupFile};
pub use homological::{
    complexity_estimate, cosyzygy_selfinjective, ext_group, finite_projective_dimension, is_gorenstein_projective,
    is_projective, is_weakly_projective, minimal_resolution, relative_cosyzygy, relative_syzygy, stable_hom, syzygy,
    ComplexityReport, Pdim, ResolutionLog, StableHomReport, StableIdeal,
};
pub use linsolve::{homology_at, solve_congruence_system, CongruenceSolution, ModMap};
pub use matrix::{max_entry_bits, set_max_entry_bits, RMatrix};
pub use module::{fingerprint, Fingerprint};
pub use module::{GModule, GModuleHom};
pub use ring::CoefficientRing;
pub use snf::{smith_normal_form, SmithDecomposition};
