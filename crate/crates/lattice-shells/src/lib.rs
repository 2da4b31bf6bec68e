//! Exact-arithmetic toolkit for integral lattices: shell enumeration, root
//! system certification, theta prefixes, signed-permutation orbit
//! decompositions, and discriminant-group gluing.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there are no tolerances anywhere. The centerpiece is the two-adic chain
//!
//! ```text
//! L_Ok  =  diag(2,2,2,2,4,4,4,4) * E8      index 2^12, det 2^24
//! M     =  (1/2) L_Ok                      index 2^4,  det 2^8
//! E8    =  maximal isotropic gluing of M   index 1,    det 1
//! ```
//!
//! whose shells run from an 8-dimensional cross-polytope through a D8 root
//! polytope up to the 240-vertex Gosset configuration, with every count,
//! Cartan matrix, orbit decomposition and glue code certified exactly.
//!
//! The `examples/` directory is the guided tour; each file is a runnable
//! walkthrough of one capability:
//!
//! ```text
//! cargo run --release --example e8_from_octonions
//! cargo run --release --example classical_first_shells
//! cargo run --release --example okubo_shell_hierarchy
//! cargo run --release --example theta_series
//! cargo run --release --example cubic_orbits
//! cargo run --release --example glue_back_to_e8
//! cargo run --release --example glue_code
//! cargo run --release --example lattice_files
//! ```
//!
//! The same functionality is scriptable through the thin `lattice-audit`
//! binary (`shell`, `analyze`, `roots`, `theta`, `orbits`, `glue`,
//! `gluecode`, `table`, and `audit run` for the whole certificate battery).

// index loops mirror the matrix formulas; iterator rewrites obscure them
#![allow(clippy::needless_range_loop, clippy::manual_memcpy)]

pub mod analysis;
pub mod audit;
pub mod error;
pub mod glue;
pub mod lattice;
pub mod lattice_file;
pub mod linalg;
pub mod octonion;
pub mod orbits;
pub mod roots;
pub mod shells;

#[cfg(test)]
mod testutil;

pub use analysis::{analyze, gram_of_representatives, norm_divisibility, ShellReport};
pub use audit::{audit_all, audit_filtered, emit_table, AuditReport, Certificate, TableKind};
pub use error::{Error, Result};
pub use glue::{
    build_overlattice, discriminant, glue_code, quotient, verify_isotropic_glue, BinaryCode,
    DiscriminantGroup, GlueResult,
};
pub use lattice::{
    builtin, conductor, direct_sum, known_embedding, rescale_gram, Embedding, GramLattice,
    Registry, BUILTIN_NAMES, OKUBO_CONDUCTOR,
};
pub use lattice_file::LatticeSpec;
pub use linalg::{ldlt, smith_normal_form, IntMatrix, Ldlt, RatMatrix, SnfResult};
pub use octonion::{coxeter_dickson_basis, oct_mul, BasisSystem, Octonion};
pub use orbits::{
    build_cubic_isometry, orbit_decompose, r8_oracle, r8_prefix, CubicIsometry, OrbitDecomposition,
    OrbitSignature,
};
pub use roots::{
    cartan_permutation_equivalent, certify_root_system, classify_dynkin, reflect, simple_roots,
    DynkinComponent, DynkinType, RefusalStage, RootCertificate, RootRefusal,
};
pub use shells::{enumerate_shell, theta_prefix, Shell, ThetaPrefix};
